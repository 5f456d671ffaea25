//! Univariate polynomials over the rationals and Sturm chains.
//!
//! Used for the exact periodicity decision: after the rational
//! parametrization of the unit circle the question "does g vanish on the
//! circle" becomes "does a degree <= 4 rational polynomial have a real
//! root", which Sturm sign-variation counts answer without floating point.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Dense univariate polynomial, coefficients by ascending power.
/// No trailing zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Remainder of self divided by d (d nonzero).
    fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let dl = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let lead = r.last().unwrap().clone();
            if lead.is_zero() {
                r.pop();
                continue;
            }
            let shift = r.len() - 1 - dd;
            let q = &lead / &dl;
            for i in 0..=dd {
                let delta = &q * &d.coeffs[i];
                r[shift + i] -= delta;
            }
            // Leading term cancels exactly.
            r.pop();
        }
        UniPoly::new(r)
    }

    fn sign_at_pos_infinity(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(c) => {
                if c.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn sign_at_neg_infinity(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_infinity();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }
}

/// A Sturm chain together with its sign-variation counts at the two ends of
/// the real line. `distinct_real_roots` counts distinct real roots of the
/// original polynomial.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SturmCertificate {
    pub polynomial: String,
    pub chain_length: usize,
    pub variations_at_neg_infinity: usize,
    pub variations_at_pos_infinity: usize,
    pub distinct_real_roots: usize,
}

/// Build the canonical chain `p, p', -rem(...)...` and count distinct real
/// roots over all of R by sign variations at -inf and +inf. The generalized
/// chain handles repeated roots: common factors multiply every element and
/// do not change variation counts away from their zeros.
pub fn count_real_roots(p: &UniPoly) -> SturmCertificate {
    let mut chain = vec![p.clone()];
    if let Some(d) = p.degree() {
        if d >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(UniPoly::new(r.coeffs.iter().map(|c| -c.clone()).collect()));
            }
        }
    }
    let variations = |signs: Vec<i8>| {
        let nonzero: Vec<i8> = signs.into_iter().filter(|s| *s != 0).collect();
        nonzero.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_neg = variations(chain.iter().map(|q| q.sign_at_neg_infinity()).collect());
    let at_pos = variations(chain.iter().map(|q| q.sign_at_pos_infinity()).collect());
    SturmCertificate {
        polynomial: format_unipoly(p),
        chain_length: chain.len(),
        variations_at_neg_infinity: at_neg,
        variations_at_pos_infinity: at_pos,
        distinct_real_roots: at_neg.saturating_sub(at_pos),
    }
}

fn format_unipoly(p: &UniPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        parts.push(if var.is_empty() {
            format!("{c}")
        } else if c == &BigRational::from_integer(1.into()) {
            var
        } else if c == &BigRational::from_integer((-1).into()) {
            format!("-{var}")
        } else {
            format!("{c}*{var}")
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn u(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn quadratics() {
        // t^2 - 2: two real roots
        assert_eq!(count_real_roots(&u(&[-2, 0, 1])).distinct_real_roots, 2);
        // t^2 + 1: none
        assert_eq!(count_real_roots(&u(&[1, 0, 1])).distinct_real_roots, 0);
        // t^2: one distinct (double) root
        assert_eq!(count_real_roots(&u(&[0, 0, 1])).distinct_real_roots, 1);
    }

    #[test]
    fn quartics() {
        // (t^2-1)(t^2-4): four roots
        assert_eq!(
            count_real_roots(&u(&[4, 0, -5, 0, 1])).distinct_real_roots,
            4
        );
        // (t^2+1)^2: none
        assert_eq!(
            count_real_roots(&u(&[1, 0, 2, 0, 1])).distinct_real_roots,
            0
        );
        // (t^2+1)(t-3)^2: one distinct
        let p = UniPoly::new(vec![int(9), int(-6), int(10), int(-6), int(1)]);
        assert_eq!(count_real_roots(&p).distinct_real_roots, 1);
    }

    #[test]
    fn constants_and_linear() {
        assert_eq!(count_real_roots(&u(&[5])).distinct_real_roots, 0);
        assert_eq!(count_real_roots(&u(&[1, 2])).distinct_real_roots, 1);
        assert_eq!(count_real_roots(&UniPoly::zero()).distinct_real_roots, 0);
    }

    #[test]
    fn rational_coefficients() {
        // (t - 1/2)(t + 3/2) = t^2 + t - 3/4
        let p = UniPoly::new(vec![rat(-3, 4), int(1), int(1)]);
        assert_eq!(count_real_roots(&p).distinct_real_roots, 2);
        assert_eq!(p.eval(&rat(1, 2)), rat(0, 1));
    }
}
