//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials live in one of two variable spaces: `x, y, z` (sphere space)
//! or `u, v` (plane space). Coefficients are arbitrary-precision rationals;
//! floating point appears only at evaluation boundaries. Terms are kept in
//! a map ordered by graded lexicographic order with `x > y > z` (`u > v`),
//! which fixes a canonical form: no zero coefficients are stored and the
//! printer emits terms in descending monomial order.

mod display;
mod matrix;
mod parse;

pub use matrix::PolyMatrix;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// The two variable spaces polynomials can live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum VarSpace {
    /// Three variables `x, y, z`.
    Sphere,
    /// Two variables `u, v`.
    Plane,
}

impl VarSpace {
    pub fn arity(self) -> usize {
        match self {
            VarSpace::Sphere => 3,
            VarSpace::Plane => 2,
        }
    }

    pub fn var_names(self) -> &'static [&'static str] {
        match self {
            VarSpace::Sphere => &["x", "y", "z"],
            VarSpace::Plane => &["u", "v"],
        }
    }
}

/// A named variable, carrying the space it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    U,
    V,
}

impl Var {
    pub fn space(self) -> VarSpace {
        match self {
            Var::X | Var::Y | Var::Z => VarSpace::Sphere,
            Var::U | Var::V => VarSpace::Plane,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Var::X | Var::U => 0,
            Var::Y | Var::V => 1,
            Var::Z => 2,
        }
    }
}

/// Exponent vector. Unused trailing slots stay zero for plane-space monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; 3],
}

impl Monomial {
    pub fn new(exps: [u32; 3]) -> Self {
        Monomial { exps }
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exps(&self) -> &[u32; 3] {
        &self.exps
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u32; 3];
        for i in 0..3 {
            exps[i] = self.exps[i] - other.exps[i];
        }
        Monomial { exps }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u32; 3];
        for i in 0..3 {
            exps[i] = self.exps[i] + other.exps[i];
        }
        Monomial { exps }
    }
}

/// Graded lexicographic order with x > y > z (u > v): compare total degree
/// first, then exponents left to right. `Ord::max` is the leading monomial.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Invariants: no stored coefficient is zero; every exponent vector respects
/// the arity of the variable space; the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    space: VarSpace,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(space: VarSpace) -> Self {
        Polynomial {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: VarSpace, c: BigRational) -> Self {
        let mut p = Polynomial::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::new([0, 0, 0]), c);
        }
        p
    }

    pub fn one(space: VarSpace) -> Self {
        Polynomial::constant(space, BigRational::one())
    }

    pub fn variable(v: Var) -> Self {
        let mut exps = [0u32; 3];
        exps[v.index()] = 1;
        Polynomial::monomial(v.space(), exps, BigRational::one())
    }

    pub fn monomial(space: VarSpace, exps: [u32; 3], coeff: BigRational) -> Self {
        assert!(
            exps.iter().skip(space.arity()).all(|&e| e == 0),
            "exponent vector exceeds the arity of {:?}",
            space
        );
        let mut p = Polynomial::zero(space);
        if !coeff.is_zero() {
            p.terms.insert(Monomial::new(exps), coeff);
        }
        p
    }

    /// Parse from the ASCII expression format (`3/2*x^2*y - z`).
    pub fn parse(src: &str, space: VarSpace) -> crate::Result<Self> {
        parse::parse(src, space)
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the given exponent vector (zero when absent).
    pub fn coefficient(&self, exps: [u32; 3]) -> BigRational {
        self.terms
            .get(&Monomial::new(exps))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn insert_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_space(&self, other: &Polynomial, op: &str) {
        assert!(
            self.space == other.space,
            "variable-space mismatch in {op}: {:?} vs {:?}",
            self.space,
            other.space
        );
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.space);
        }
        Polynomial {
            space: self.space,
            terms: self.terms.iter().map(|(m, q)| (*m, q * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(self.space);
        for _ in 0..n {
            result = &result * self;
        }
        result
    }

    /// Exact quotient `q` with `self = d * q`, or `None` when no polynomial
    /// quotient exists. Division runs under graded lex order; a nonzero
    /// remainder at any step means `d` does not divide `self`.
    ///
    /// Panics when `d` is the zero polynomial.
    pub fn exact_divide(&self, d: &Polynomial) -> Option<Polynomial> {
        self.assert_same_space(d, "exact_divide");
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (lead_m, lead_c) = d.leading().expect("nonzero divisor");
        let lead_m = *lead_m;
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.space);
        while let Some((rm, rc)) = rem.leading() {
            if !lead_m.divides(rm) {
                return None;
            }
            let qm = rm.div(&lead_m);
            let qc = rc / &lead_c;
            let term = Polynomial::monomial(self.space, qm.exps, qc);
            rem = &rem - &(&term * d);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Compose: replace each variable by the binding at its index. All
    /// bindings must share one target space.
    pub fn substitute(&self, bindings: &[Polynomial]) -> crate::Result<Polynomial> {
        if bindings.len() != self.space.arity() {
            return Err(crate::Error::Substitution(format!(
                "expected {} bindings, got {}",
                self.space.arity(),
                bindings.len()
            )));
        }
        let target = bindings[0].space();
        if bindings.iter().any(|b| b.space() != target) {
            return Err(crate::Error::Substitution(
                "bindings mix variable spaces".into(),
            ));
        }
        // Cache powers of each binding up to the maximum exponent used.
        let arity = self.space.arity();
        let mut max_exp = vec![0u32; arity];
        for m in self.terms.keys() {
            for (i, e) in m.exps.iter().take(arity).enumerate() {
                max_exp[i] = max_exp[i].max(*e);
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(arity);
        for (i, b) in bindings.iter().enumerate() {
            let mut ps = vec![Polynomial::one(target)];
            for e in 1..=max_exp[i] {
                let next = &ps[(e - 1) as usize] * b;
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for i in 0..arity {
                let e = m.exps[i];
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Sum of the terms of exactly the given total degree.
    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        Polynomial {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// True when every term has exactly the given total degree (the zero
    /// polynomial is homogeneous of every degree).
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == degree)
    }

    /// Formal partial derivative.
    pub fn differentiate(&self, v: Var) -> Polynomial {
        assert!(
            v.space() == self.space,
            "variable {:?} does not belong to {:?}",
            v,
            self.space
        );
        let i = v.index();
        let mut out = Polynomial::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps;
            exps[i] -= 1;
            out.insert_term(Monomial::new(exps), c * BigRational::from(BigInt::from(e)));
        }
        out
    }

    /// Floating-point evaluation with per-variable power caching.
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        assert!(
            point.len() == self.space.arity(),
            "point arity {} does not match {:?}",
            point.len(),
            self.space
        );
        let arity = self.space.arity();
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for i in 0..arity {
                let e = m.exps[i];
                if e > 0 {
                    t *= point[i].powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate_rational(&self, point: &[BigRational]) -> BigRational {
        assert!(point.len() == self.space.arity());
        let arity = self.space.arity();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..arity {
                for _ in 0..m.exps[i] {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest absolute coefficient value as `f64` (0 for the zero
    /// polynomial); used for relative numeric thresholds.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_space(rhs, "add");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_space(rhs, "sub");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            space: self.space,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_space(rhs, "mul");
        let mut out = Polynomial::zero(self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}
