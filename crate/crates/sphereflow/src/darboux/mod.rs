//! Darboux machinery: Lie derivatives, cofactors, extactic polynomials,
//! first integrals, and invariant circles.
//!
//! An algebraic set `{f = 0}` is invariant for `X` exactly when
//! `X(f) = K f` for a polynomial cofactor `K`; divisibility is decided by
//! exact polynomial division. Invariant hypersurfaces with defining
//! polynomial in a subspace `W` divide the extactic polynomial of `X`
//! associated with `W`, which is what the circle searches exploit.

mod circles;

pub use circles::{
    solve_great_circles_homogeneous, CircleForm, CircleSearch, FoundGreatCircle,
    GreatCircleFindings,
};

use crate::field::{CubicDecomposition, SphereField};
use crate::poly::{int, PolyMatrix, Polynomial, Var, VarSpace};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A plane `a x + b y + c z + d = 0` meeting the unit sphere in a circle.
/// Coefficients are unnormalized; scale-invariant comparisons use
/// `d^2 / (a^2 + b^2 + c^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleSpec {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl CircleSpec {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Self> {
        let norm = &a * &a + &b * &b + &c * &c;
        if norm.is_zero() {
            return Err(Error::InvalidCircle("(a, b, c) must be nonzero".into()));
        }
        if &d * &d >= norm {
            return Err(Error::InvalidCircle(
                "d^2/(a^2+b^2+c^2) must be < 1 for the plane to meet the sphere in a circle"
                    .into(),
            ));
        }
        Ok(CircleSpec { a, b, c, d })
    }

    pub fn great(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        CircleSpec::new(a, b, c, BigRational::zero())
    }

    pub fn is_great(&self) -> bool {
        self.d.is_zero()
    }

    /// `a x + b y + c z + d`.
    pub fn plane_polynomial(&self) -> Polynomial {
        let x = Polynomial::variable(Var::X).scale(&self.a);
        let y = Polynomial::variable(Var::Y).scale(&self.b);
        let z = Polynomial::variable(Var::Z).scale(&self.c);
        let d = Polynomial::constant(VarSpace::Sphere, self.d.clone());
        &(&(&x + &y) + &z) + &d
    }

    /// The quadratic cone through the circle, scaled by `a^2 + b^2 + c^2` to
    /// stay rational:
    /// `(a^2-d^2)x^2 + (b^2-d^2)y^2 + (c^2-d^2)z^2 + 2abxy + 2acxz + 2bcyz`
    /// for unit-normalized input; scaling does not affect invariance.
    ///
    /// Panics for great circles, whose cone is the plane itself.
    pub fn cone_polynomial(&self) -> Polynomial {
        assert!(
            !self.is_great(),
            "great circles use the plane polynomial, not a cone"
        );
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let mono = |exps: [u32; 3], coeff: BigRational| {
            Polynomial::monomial(VarSpace::Sphere, exps, coeff)
        };
        let two = int(2);
        let mut out = Polynomial::zero(VarSpace::Sphere);
        out = &out + &mono([2, 0, 0], a * a - d * d);
        out = &out + &mono([0, 2, 0], b * b - d * d);
        out = &out + &mono([0, 0, 2], c * c - d * d);
        out = &out + &mono([1, 1, 0], &two * &(a * b));
        out = &out + &mono([1, 0, 1], &two * &(a * c));
        out = &out + &mono([0, 1, 1], &two * &(b * c));
        out
    }

    /// Plane for great circles, cone otherwise: the polynomial whose
    /// invariance is equivalent to the circle's.
    pub fn defining_polynomial(&self) -> Polynomial {
        if self.is_great() {
            self.plane_polynomial()
        } else {
            self.cone_polynomial()
        }
    }
}

/// Whether an invariant set's power divides the extactic finitely often.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

/// An invariant algebraic set: `X(f) = cofactor * f` exactly.
#[derive(Debug, Clone)]
pub struct InvariantSetReport {
    pub polynomial: Polynomial,
    pub cofactor: Polynomial,
    /// Filled by [`invariant_multiplicity`]; `None` when not computed.
    pub multiplicity: Option<Multiplicity>,
}

/// `X(f) = P df/dx + Q df/dy + R df/dz`.
pub fn lie_derivative(field: &SphereField, f: &Polynomial) -> Polynomial {
    assert!(
        f.space() == VarSpace::Sphere,
        "Lie derivative needs a sphere-space polynomial"
    );
    let fx = f.differentiate(Var::X);
    let fy = f.differentiate(Var::Y);
    let fz = f.differentiate(Var::Z);
    &(&(field.p() * &fx) + &(field.q() * &fy)) + &(field.r() * &fz)
}

/// Cofactor report when `f` divides its own Lie derivative, `None` otherwise.
pub fn cofactor_of(field: &SphereField, f: &Polynomial) -> Option<InvariantSetReport> {
    assert!(!f.is_zero(), "cofactor of the zero polynomial");
    let lie = lie_derivative(field, f);
    lie.exact_divide(f).map(|cofactor| InvariantSetReport {
        polynomial: f.clone(),
        cofactor,
        multiplicity: None,
    })
}

/// True exactly when `X(H)` is the zero polynomial.
pub fn is_first_integral(field: &SphereField, h: &Polynomial) -> bool {
    lie_derivative(field, h).is_zero()
}

/// The extactic polynomial of `X` associated with the span of `basis`:
/// the determinant of the matrix whose rows are the iterated Lie
/// derivatives `(v_i, X v_i, ..., X^(l-1) v_i)`, columns indexed by `i`.
///
/// Linear independence is certified by evaluating the basis at random
/// rational points (five retries) rather than by symbolic rank.
pub fn extactic(field: &SphereField, basis: &[Polynomial]) -> Result<Polynomial> {
    let l = basis.len();
    if l < 2 {
        return Err(Error::DependentBasis);
    }
    if !certify_independent(basis) {
        return Err(Error::DependentBasis);
    }
    let mut rows: Vec<Vec<Polynomial>> = vec![basis.to_vec()];
    for j in 1..l {
        let prev = &rows[j - 1];
        rows.push(prev.iter().map(|v| lie_derivative(field, v)).collect());
    }
    let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
    Ok(PolyMatrix::new(l, l, entries).determinant())
}

fn certify_independent(basis: &[Polynomial]) -> bool {
    let l = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5f3759df);
    'retry: for _ in 0..5 {
        let points: Vec<[BigRational; 3]> = (0..l)
            .map(|_| {
                [
                    crate::poly::rat(rng.gen_range(-50..=50), rng.gen_range(1..=7)),
                    crate::poly::rat(rng.gen_range(-50..=50), rng.gen_range(1..=7)),
                    crate::poly::rat(rng.gen_range(-50..=50), rng.gen_range(1..=7)),
                ]
            })
            .collect();
        let mut m: Vec<Vec<BigRational>> = Vec::with_capacity(l);
        for pt in &points {
            let arity = basis[0].space().arity();
            let coords = &pt[..arity];
            m.push(basis.iter().map(|b| b.evaluate_rational(coords)).collect());
        }
        if rational_matrix_nonsingular(&mut m) {
            return true;
        }
        continue 'retry;
    }
    false
}

fn rational_matrix_nonsingular(m: &mut [Vec<BigRational>]) -> bool {
    let n = m.len();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero());
        let Some(pr) = pivot else {
            return false;
        };
        m.swap(k, pr);
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let factor = &m[r][k] / &m[k][k];
            for c in k..n {
                let delta = &factor * &m[k][c];
                m[r][c] -= delta;
            }
        }
    }
    true
}

/// Exact coordinates of `f` in `basis`, or `None` when not in the span.
fn coordinates_in_span(f: &Polynomial, basis: &[Polynomial]) -> Option<Vec<BigRational>> {
    // Column per basis element, row per monomial of the union of supports.
    let mut monomials: std::collections::BTreeSet<_> = f.terms().map(|(m, _)| *m).collect();
    for b in basis {
        monomials.extend(b.terms().map(|(m, _)| *m));
    }
    let monomials: Vec<_> = monomials.into_iter().collect();
    let rows = monomials.len();
    let cols = basis.len();
    let mut aug: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| b.coefficient(*monomials[r].exps()))
                .collect();
            row.push(f.coefficient(*monomials[r].exps()));
            row
        })
        .collect();
    // Gaussian elimination on the augmented system.
    let mut pivot_rows = Vec::new();
    let mut r0 = 0usize;
    for c in 0..cols {
        let Some(pr) = (r0..rows).find(|&r| !aug[r][c].is_zero()) else {
            pivot_rows.push(None);
            continue;
        };
        aug.swap(r0, pr);
        for r in 0..rows {
            if r != r0 && !aug[r][c].is_zero() {
                let factor = &aug[r][c] / &aug[r0][c];
                for k in c..=cols {
                    let delta = &factor * &aug[r0][k];
                    aug[r][k] -= delta;
                }
            }
        }
        pivot_rows.push(Some(r0));
        r0 += 1;
    }
    // Inconsistent when a zero row has nonzero rhs.
    for r in r0..rows {
        if !aug[r][cols].is_zero() {
            return None;
        }
    }
    let mut coords = vec![BigRational::zero(); cols];
    for (c, pr) in pivot_rows.iter().enumerate() {
        if let Some(r) = pr {
            coords[c] = &aug[*r][cols] / &aug[*r][c];
        }
    }
    Some(coords)
}

/// Multiplicity of the invariant hypersurface `{f = 0}` inside the span of
/// `basis`: the largest `k` with `f^k` dividing the extactic, or infinite
/// when the extactic vanishes identically.
pub fn invariant_multiplicity(
    field: &SphereField,
    f: &Polynomial,
    basis: &[Polynomial],
) -> Result<Multiplicity> {
    if coordinates_in_span(f, basis).is_none() {
        return Err(Error::NotInSpan);
    }
    let e = extactic(field, basis)?;
    if e.is_zero() {
        return Ok(Multiplicity::Infinite);
    }
    let mut k = 0u32;
    let mut rest = e;
    while let Some(q) = rest.exact_divide(f) {
        k += 1;
        rest = q;
    }
    Ok(Multiplicity::Finite(k))
}

/// The completely integrable family: given `a != 0`, the linear parts are
/// forced to `f = (c g/a) y - (b g/a) z`, `g = -(c g/a) x + g z`,
/// `h = (b g/a) x - g y` and the quadratics to `A = (c/a) C`,
/// `B = -(b/a) C`, after which both the sphere and the plane
/// `a x + b y + c z` are first integrals. Both are verified exactly at
/// construction.
pub fn build_integrable_family(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    gamma: &BigRational,
    cpoly: &Polynomial,
) -> Result<SphereField> {
    if a.is_zero() {
        return Err(Error::Parameter("a must be nonzero".into()));
    }
    if cpoly.space() != VarSpace::Sphere
        || cpoly.degree().unwrap_or(0) > 2
        || !cpoly.coefficient([0, 0, 0]).is_zero()
    {
        return Err(Error::Parameter(
            "C must have degree <= 2 and zero constant term".into(),
        ));
    }
    let x = Polynomial::variable(Var::X);
    let y = Polynomial::variable(Var::Y);
    let z = Polynomial::variable(Var::Z);
    let cg_a = &(c * gamma) / a;
    let bg_a = &(b * gamma) / a;
    let f_lin = &y.scale(&cg_a) - &z.scale(&bg_a);
    let g_lin = &z.scale(gamma) - &x.scale(&cg_a);
    let h_lin = &x.scale(&bg_a) - &y.scale(gamma);
    let a_quad = cpoly.scale(&(c / a));
    let b_quad = cpoly.scale(&(-(b / a)));
    let d = CubicDecomposition::new(f_lin, g_lin, h_lin, a_quad, b_quad, cpoly.clone())?;
    let field = SphereField::cubic(d)?;
    let plane = &(&x.scale(a) + &y.scale(b)) + &z.scale(c);
    if !is_first_integral(&field, &plane) {
        return Err(Error::Analysis(
            "constructed field does not conserve the plane".into(),
        ));
    }
    if field.tangency_cofactor().is_none() {
        return Err(Error::NotASphereField(
            "constructed field lost tangency".into(),
        ));
    }
    Ok(field)
}

/// Coefficient pattern making `{z = 0}` invariant:
/// `B = b020 y^2 + b110 xy + b010 y + B' z` and
/// `C = -b110 x^2 - b020 xy - b010 x + C' z`, i.e.
/// `b100 = b200 = c010 = c020 = 0`, `c100 = -b010`, `c110 = -b020`,
/// `c200 = -b110`. The conditions are unchanged by the `(A, B, C)`
/// normalization shift, so any representative can be tested.
pub fn great_circle_form_check(d: &CubicDecomposition) -> bool {
    let b = &d.b;
    let c = &d.c;
    b.coefficient([1, 0, 0]).is_zero()
        && b.coefficient([2, 0, 0]).is_zero()
        && c.coefficient([0, 1, 0]).is_zero()
        && c.coefficient([0, 2, 0]).is_zero()
        && c.coefficient([1, 0, 0]) == -b.coefficient([0, 1, 0])
        && c.coefficient([1, 1, 0]) == -b.coefficient([0, 2, 0])
        && c.coefficient([2, 0, 0]) == -b.coefficient([1, 1, 0])
}

/// Invariance report for a circle: the cofactor of the plane (great
/// circles) or of the cone (non-great circles).
pub fn check_invariant_circle(
    field: &SphereField,
    circle: &CircleSpec,
) -> Option<InvariantSetReport> {
    cofactor_of(field, &circle.defining_polynomial())
}

/// Exact factorization data for non-great invariant circles of
/// homogeneous fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonGreatFactors {
    pub p: BigRational,
    pub q: BigRational,
    /// `R = 0` factors trivially with `p = q = 0`.
    pub degenerate: bool,
}

/// Solve `R = (p x + q y) (-d^2 (x^2+y^2+z^2) + z^2)` for rational `p, q`:
/// the candidate values come from the `x z^2` and `y z^2` coefficients and
/// are then verified by exact multiplication.
pub fn nongreat_circle_factors(field: &SphereField, d: &BigRational) -> Option<NonGreatFactors> {
    assert!(
        d.is_positive() && d < &BigRational::one(),
        "d must lie in (0, 1)"
    );
    let r = field.r();
    if r.is_zero() {
        return Some(NonGreatFactors {
            p: BigRational::zero(),
            q: BigRational::zero(),
            degenerate: true,
        });
    }
    let d2 = d * d;
    let g = {
        // -d^2 (x^2+y^2+z^2) + z^2
        let s = Polynomial::parse("x^2 + y^2 + z^2", VarSpace::Sphere).unwrap();
        let z2 = Polynomial::parse("z^2", VarSpace::Sphere).unwrap();
        &z2 - &s.scale(&d2)
    };
    // coeff of x z^2 in (p x + q y) g is p (1 - d^2); same for y z^2 and q.
    let one_minus_d2 = BigRational::one() - &d2;
    let p = r.coefficient([1, 0, 2]) / &one_minus_d2;
    let q = r.coefficient([0, 1, 2]) / &one_minus_d2;
    let x = Polynomial::variable(Var::X);
    let y = Polynomial::variable(Var::Y);
    let lin = &x.scale(&p) + &y.scale(&q);
    if &(&lin * &g) == r {
        Some(NonGreatFactors {
            p,
            q,
            degenerate: false,
        })
    } else {
        None
    }
}

/// True when `R` admits the non-great invariant-circle factorization for
/// this `d`. Requires the homogeneous family.
pub fn homogeneous_nongreat_circle_test(field: &SphereField, d: &BigRational) -> bool {
    nongreat_circle_factors(field, d).is_some()
}
