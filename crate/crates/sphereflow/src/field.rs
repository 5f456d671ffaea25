//! Construction and decomposition of cubic vector fields on the sphere.
//!
//! A cubic field `X = (P, Q, R)` is tangent to the unit sphere exactly when
//! `2(Px + Qy + Rz) = K (x^2 + y^2 + z^2 - 1)` for some polynomial `K`, and
//! every such field arises from a decomposition
//!
//! ```text
//! P = (1 - x^2 - y^2 - z^2) f + A y + B z
//! Q = (1 - x^2 - y^2 - z^2) g - A x + C z
//! R = (1 - x^2 - y^2 - z^2) h - B x - C y
//! ```
//!
//! with `f, g, h` linear and `A, B, C` quadratic without constant term. The
//! triple `(A, B, C)` is determined only up to the relation
//! `(A, B, C) -> (A + z t, B - y t, C + x t)`; this module always returns
//! the representative in which `A` contains no monomial divisible by `z`.

use crate::poly::{int, Polynomial, Var, VarSpace};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;

/// Which construction produced (or was detected for) a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Family {
    GeneralCubic,
    Kolmogorov,
    HomogeneousCubic,
    /// Tangency has not been verified; most analyses refuse these.
    Unverified,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::GeneralCubic => "general-cubic",
            Family::Kolmogorov => "kolmogorov",
            Family::HomogeneousCubic => "homogeneous-cubic",
            Family::Unverified => "unverified",
        };
        write!(f, "{s}")
    }
}

/// The data of the general cubic form: `f, g, h` of degree <= 1 and
/// `A, B, C` of degree <= 2 with zero constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicDecomposition {
    pub f: Polynomial,
    pub g: Polynomial,
    pub h: Polynomial,
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
}

impl CubicDecomposition {
    pub fn new(
        f: Polynomial,
        g: Polynomial,
        h: Polynomial,
        a: Polynomial,
        b: Polynomial,
        c: Polynomial,
    ) -> Result<Self> {
        for (name, p, max) in [
            ("f", &f, 1),
            ("g", &g, 1),
            ("h", &h, 1),
            ("A", &a, 2),
            ("B", &b, 2),
            ("C", &c, 2),
        ] {
            if p.space() != VarSpace::Sphere {
                return Err(Error::DegreeBound(format!("{name} must be in x,y,z")));
            }
            if p.degree().unwrap_or(0) > max {
                return Err(Error::DegreeBound(format!(
                    "{name} must have degree <= {max}"
                )));
            }
        }
        for (name, p) in [("A", &a), ("B", &b), ("C", &c)] {
            if !p.coefficient([0, 0, 0]).is_zero() {
                return Err(Error::DegreeBound(format!(
                    "{name} must have zero constant term"
                )));
            }
        }
        Ok(CubicDecomposition { f, g, h, a, b, c })
    }

    pub fn zero() -> Self {
        let z = || Polynomial::zero(VarSpace::Sphere);
        CubicDecomposition {
            f: z(),
            g: z(),
            h: z(),
            a: z(),
            b: z(),
            c: z(),
        }
    }
}

/// Constants of the Kolmogorov form
/// `P = x(alpha(1-x^2-y^2-z^2) + a y^2 + b z^2)`, etc. The singular-point
/// analysis writes the quadratic-part constants `a, b, c` as `A, B, C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KolmogorovParams {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl KolmogorovParams {
    pub fn new(
        alpha: BigRational,
        beta: BigRational,
        gamma: BigRational,
        a: BigRational,
        b: BigRational,
        c: BigRational,
    ) -> Self {
        KolmogorovParams {
            alpha,
            beta,
            gamma,
            a,
            b,
            c,
        }
    }

    /// Quadratic-part constants only, with `alpha = beta = gamma = 0`.
    pub fn quadratic(a: BigRational, b: BigRational, c: BigRational) -> Self {
        let z = BigRational::zero;
        KolmogorovParams::new(z(), z(), z(), a, b, c)
    }
}

/// A polynomial triple `(P, Q, R)` tangent to the unit sphere, with the
/// construction data retained when known.
#[derive(Debug, Clone)]
pub struct SphereField {
    p: Polynomial,
    q: Polynomial,
    r: Polynomial,
    family: Family,
    cubic: Option<CubicDecomposition>,
    kolmogorov: Option<KolmogorovParams>,
}

/// `x^2 + y^2 + z^2 - 1`.
pub fn sphere_polynomial() -> Polynomial {
    Polynomial::parse("x^2 + y^2 + z^2 - 1", VarSpace::Sphere).unwrap()
}

fn one_minus_s() -> Polynomial {
    Polynomial::parse("1 - x^2 - y^2 - z^2", VarSpace::Sphere).unwrap()
}

impl SphereField {
    /// Build from a cubic decomposition. Tangency holds by construction and
    /// is still verified; the sphere cofactor is `-2(fx + gy + hz)`.
    pub fn cubic(d: CubicDecomposition) -> Result<SphereField> {
        let w = one_minus_s();
        let x = Polynomial::variable(Var::X);
        let y = Polynomial::variable(Var::Y);
        let z = Polynomial::variable(Var::Z);
        let p = &(&w * &d.f) + &(&(&d.a * &y) + &(&d.b * &z));
        let q = &(&w * &d.g) + &(&(-&(&d.a * &x)) + &(&d.c * &z));
        let r = &(&w * &d.h) + &(&(-&(&d.b * &x)) - &(&d.c * &y));
        let field = SphereField {
            p,
            q,
            r,
            family: Family::GeneralCubic,
            cubic: Some(d),
            kolmogorov: None,
        };
        let k = field.tangency_cofactor().ok_or_else(|| {
            Error::NotASphereField("tangency verification failed after construction".into())
        })?;
        debug_assert_eq!(k, field.expected_cubic_cofactor().unwrap());
        Ok(field)
    }

    /// Build the Kolmogorov family field; `x, y, z` divide `P, Q, R` by
    /// construction and tangency always holds.
    pub fn kolmogorov(k: KolmogorovParams) -> SphereField {
        let w = one_minus_s();
        let parse = |s: &str| Polynomial::parse(s, VarSpace::Sphere).unwrap();
        let x = Polynomial::variable(Var::X);
        let y = Polynomial::variable(Var::Y);
        let z = Polynomial::variable(Var::Z);
        let y2 = parse("y^2");
        let x2 = parse("x^2");
        let z2 = parse("z^2");
        let p_inner = &w.scale(&k.alpha) + &(&y2.scale(&k.a) + &z2.scale(&k.b));
        let q_inner = &w.scale(&k.beta) + &(&x2.scale(&-k.a.clone()) + &z2.scale(&k.c));
        let r_inner = &w.scale(&k.gamma) + &(&x2.scale(&-k.b.clone()) + &y2.scale(&-k.c.clone()));
        let field = SphereField {
            p: &x * &p_inner,
            q: &y * &q_inner,
            r: &z * &r_inner,
            family: Family::Kolmogorov,
            cubic: None,
            kolmogorov: Some(k),
        };
        debug_assert!(field.tangency_cofactor().is_some());
        field
    }

    /// Build the homogeneous family `P = Ay + Bz, Q = -Ax + Cz, R = -Bx - Cy`
    /// from quadratic homogeneous `A, B, C`; then `Px + Qy + Rz = 0`
    /// identically.
    pub fn homogeneous(a: Polynomial, b: Polynomial, c: Polynomial) -> Result<SphereField> {
        for (name, poly) in [("A", &a), ("B", &b), ("C", &c)] {
            if poly.space() != VarSpace::Sphere || !poly.is_homogeneous(2) {
                return Err(Error::DegreeBound(format!(
                    "{name} must be homogeneous of degree 2 (or zero)"
                )));
            }
        }
        let x = Polynomial::variable(Var::X);
        let y = Polynomial::variable(Var::Y);
        let z = Polynomial::variable(Var::Z);
        let p = &(&a * &y) + &(&b * &z);
        let q = &(-&(&a * &x)) + &(&c * &z);
        let r = &(-&(&b * &x)) - &(&c * &y);
        let tangency = &(&(&p * &x) + &(&q * &y)) + &(&r * &z);
        debug_assert!(tangency.is_zero());
        Ok(SphereField {
            p,
            q,
            r,
            family: Family::HomogeneousCubic,
            cubic: None,
            kolmogorov: None,
        })
    }

    /// Wrap raw components, detecting the family. Components that fail the
    /// exact tangency check are kept with the `Unverified` tag.
    pub fn from_components(p: Polynomial, q: Polynomial, r: Polynomial) -> Result<SphereField> {
        for (name, poly) in [("P", &p), ("Q", &q), ("R", &r)] {
            if poly.space() != VarSpace::Sphere {
                return Err(Error::NotASphereField(format!("{name} must be in x,y,z")));
            }
            if poly.degree().unwrap_or(0) > 3 {
                return Err(Error::DegreeBound(format!("{name} must have degree <= 3")));
            }
        }
        let mut field = SphereField {
            p,
            q,
            r,
            family: Family::Unverified,
            cubic: None,
            kolmogorov: None,
        };
        if field.tangency_cofactor().is_some() {
            let radial = &(&(&field.p * &Polynomial::variable(Var::X))
                + &(&field.q * &Polynomial::variable(Var::Y)))
                + &(&field.r * &Polynomial::variable(Var::Z));
            let homogeneous = radial.is_zero()
                && field.p.is_homogeneous(3)
                && field.q.is_homogeneous(3)
                && field.r.is_homogeneous(3);
            field.family = if homogeneous {
                Family::HomogeneousCubic
            } else {
                Family::GeneralCubic
            };
        }
        Ok(field)
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn r(&self) -> &Polynomial {
        &self.r
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn kolmogorov_params(&self) -> Option<&KolmogorovParams> {
        self.kolmogorov.as_ref()
    }

    pub fn stored_decomposition(&self) -> Option<&CubicDecomposition> {
        self.cubic.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    /// `K` with `2(Px + Qy + Rz) = K (x^2 + y^2 + z^2 - 1)`, or `None` when
    /// the field is not tangent to the sphere.
    pub fn tangency_cofactor(&self) -> Option<Polynomial> {
        let x = Polynomial::variable(Var::X);
        let y = Polynomial::variable(Var::Y);
        let z = Polynomial::variable(Var::Z);
        let radial = &(&(&self.p * &x) + &(&self.q * &y)) + &(&self.r * &z);
        radial.scale(&int(2)).exact_divide(&sphere_polynomial())
    }

    fn expected_cubic_cofactor(&self) -> Option<Polynomial> {
        let d = self.cubic.as_ref()?;
        let x = Polynomial::variable(Var::X);
        let y = Polynomial::variable(Var::Y);
        let z = Polynomial::variable(Var::Z);
        let s = &(&(&d.f * &x) + &(&d.g * &y)) + &(&d.h * &z);
        Some(s.scale(&int(-2)))
    }

    /// Recover the canonical cubic decomposition: `f = P^(1) + P^(0)` and so
    /// on for `g, h`, then the residuals are solved for `(A, B, C)` and the
    /// representative with no `z`-divisible monomial in `A` is returned.
    pub fn decompose_cubic(&self) -> Result<CubicDecomposition> {
        if self.tangency_cofactor().is_none() {
            return Err(Error::NotASphereField(
                "decomposition requires an exactly tangent field".into(),
            ));
        }
        let w = one_minus_s();
        let low = |p: &Polynomial| &p.homogeneous_component(1) + &p.homogeneous_component(0);
        let f = low(&self.p);
        let g = low(&self.q);
        let h = low(&self.r);
        let u = &self.p - &(&w * &f);
        let v = &self.q - &(&w * &g);
        let x = Polynomial::variable(Var::X);
        let y = Polynomial::variable(Var::Y);
        let z = Polynomial::variable(Var::Z);

        // U = Ay + Bz: every monomial of U is divisible by y or z.
        let mut a0 = Polynomial::zero(VarSpace::Sphere);
        for (m, c) in u.terms() {
            if m.exps()[1] > 0 {
                let mut exps = *m.exps();
                exps[1] -= 1;
                a0 = &a0 + &Polynomial::monomial(VarSpace::Sphere, exps, c.clone());
            }
        }
        let b0 = (&u - &(&a0 * &y)).exact_divide(&z).ok_or_else(|| {
            Error::NotASphereField("residual P - (1-S)f is not of the form Ay + Bz".into())
        })?;
        let c0 = (&v + &(&a0 * &x)).exact_divide(&z).ok_or_else(|| {
            Error::NotASphereField("residual Q - (1-S)g is not of the form -Ax + Cz".into())
        })?;

        // Canonicalize: shift by the relation (A,B,C) -> (A+zt, B-yt, C+xt)
        // so that A has no z-divisible monomial.
        let mut t = Polynomial::zero(VarSpace::Sphere);
        for (m, c) in a0.terms() {
            if m.exps()[2] > 0 {
                let mut exps = *m.exps();
                exps[2] -= 1;
                t = &t + &Polynomial::monomial(VarSpace::Sphere, exps, c.clone());
            }
        }
        let a = &a0 - &(&z * &t);
        let b = &b0 + &(&y * &t);
        let c = &c0 - &(&x * &t);
        CubicDecomposition::new(f, g, h, a, b, c)
    }

    /// The field with every component negated (time reversal).
    pub fn negated(&self) -> SphereField {
        SphereField {
            p: -&self.p,
            q: -&self.q,
            r: -&self.r,
            family: self.family,
            cubic: None,
            kolmogorov: None,
        }
    }

    /// Components composed with the antipodal map `(x,y,z) -> (-x,-y,-z)`.
    pub fn antipodal_components(&self) -> (Polynomial, Polynomial, Polynomial) {
        let bindings = [
            Polynomial::parse("-x", VarSpace::Sphere).unwrap(),
            Polynomial::parse("-y", VarSpace::Sphere).unwrap(),
            Polynomial::parse("-z", VarSpace::Sphere).unwrap(),
        ];
        (
            self.p.substitute(&bindings).unwrap(),
            self.q.substitute(&bindings).unwrap(),
            self.r.substitute(&bindings).unwrap(),
        )
    }
}
