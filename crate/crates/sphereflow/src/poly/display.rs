//! Canonical textual form: terms in descending graded-lex order, rational
//! coefficients as `p/q`, explicit `*` between factors. Round-trips through
//! the parser.

use super::Polynomial;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::fmt;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.space.var_names();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.total_degree() == 0;
            if !mag.is_one() || is_const {
                write_rational(f, &mag)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut need_star = false;
            for (i, name) in names.iter().enumerate() {
                let e = m.exps[i];
                if e == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                write!(f, "{}", name)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                need_star = true;
            }
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, Polynomial, VarSpace};

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(Polynomial::zero(VarSpace::Sphere).to_string(), "0");
    }

    #[test]
    fn descending_order_and_signs() {
        let p = Polynomial::parse("z - 3/2*x^2*y + x*y - 1", VarSpace::Sphere).unwrap();
        assert_eq!(p.to_string(), "-3/2*x^2*y + x*y + z - 1");
    }

    #[test]
    fn unit_coefficients_omitted() {
        let p = Polynomial::parse("x^2 - y + 2", VarSpace::Sphere).unwrap();
        assert_eq!(p.to_string(), "x^2 - y + 2");
        let c = Polynomial::constant(VarSpace::Plane, rat(-5, 3));
        assert_eq!(c.to_string(), "-5/3");
    }
}
