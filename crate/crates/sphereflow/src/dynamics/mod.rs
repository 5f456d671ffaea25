//! Singular points of Kolmogorov fields, Jacobians, classification, and
//! trajectory integration.
//!
//! The six axis points `(+-1,0,0), (0,+-1,0), (0,0,+-1)` are always
//! singular; the eight interior points exist exactly under the sign
//! conditions (A, C > 0, B < 0) or (A, C < 0, B > 0), with squared
//! coordinates `x^2 = -C/(B-A-C)`, `y^2 = B/(B-A-C)`, `z^2 = -A/(B-A-C)`
//! kept as exact rationals. The planar pushforward does not depend on the
//! linear-part constants, so the planar analysis only sees (A, B, C).

pub mod hiprec;
mod ode;

pub use hiprec::{
    interior_characteristic_data, interior_characteristic_data_branch, Hemisphere,
    InteriorCondition, InteriorData,
};
pub use ode::{Controls, StopReason, Trajectory};

use crate::field::{KolmogorovParams, SphereField};
use crate::poly::{Polynomial, Var};
use crate::stereo::PlanarField;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Linearization type of a planar singular point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Classification {
    StableNode,
    UnstableNode,
    Saddle,
    StableFocus,
    UnstableFocus,
    /// Purely imaginary (within tolerance) eigenvalues: the linearization
    /// cannot separate a center from a focus.
    CenterOrFocus,
    Degenerate,
}

impl Classification {
    /// Tag under time reversal (field negation).
    pub fn time_reversed(self) -> Classification {
        match self {
            Classification::StableNode => Classification::UnstableNode,
            Classification::UnstableNode => Classification::StableNode,
            Classification::StableFocus => Classification::UnstableFocus,
            Classification::UnstableFocus => Classification::StableFocus,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::StableNode => "stable-node",
            Classification::UnstableNode => "unstable-node",
            Classification::Saddle => "saddle",
            Classification::StableFocus => "stable-focus",
            Classification::UnstableFocus => "unstable-focus",
            Classification::CenterOrFocus => "center-or-focus",
            Classification::Degenerate => "degenerate",
        }
    }
}

/// How a report's numbers were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Provenance {
    ClosedForm,
    Numeric,
}

/// A singular point with its linearization data.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub sphere_point: [f64; 3],
    /// Exact coordinates for axis points.
    pub exact_point: Option<[BigRational; 3]>,
    /// Exact squared coordinates for interior points.
    pub exact_squares: Option<[BigRational; 3]>,
    /// Stereographic image; `None` only for the south pole, which is the
    /// projection point (its linearization equals the north pole's because
    /// the planar field is odd).
    pub planar_point: Option<[f64; 2]>,
    pub jacobian: [[f64; 2]; 2],
    /// Characteristic polynomial data: trace and determinant.
    pub char_trace: f64,
    pub char_det: f64,
    /// Roots of `lambda^2 - trace lambda + det` as (re, im) pairs.
    pub eigenvalues: [(f64, f64); 2],
    pub classification: Classification,
    pub provenance: Provenance,
}

/// Classify from trace, determinant, and discriminant with relative
/// tolerances: `|trace| <= 1e-9 (1 + ||J||)` is treated as zero trace
/// (center-or-focus), `|det| <= 1e-9 (1 + ||J||^2)` as degenerate.
pub fn classify(j: &[[f64; 2]; 2]) -> Classification {
    let tau = j[0][0] + j[1][1];
    let delta = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    classify_from_char(tau, delta, matrix_norm(j))
}

fn matrix_norm(j: &[[f64; 2]; 2]) -> f64 {
    (j[0][0] * j[0][0] + j[0][1] * j[0][1] + j[1][0] * j[1][0] + j[1][1] * j[1][1]).sqrt()
}

fn classify_from_char(tau: f64, delta: f64, jnorm: f64) -> Classification {
    let eps = 1e-9;
    let det_tol = eps * (1.0 + jnorm * jnorm);
    let tau_tol = eps * (1.0 + jnorm);
    if delta.abs() <= det_tol {
        return Classification::Degenerate;
    }
    if delta < 0.0 {
        return Classification::Saddle;
    }
    let disc = tau * tau - 4.0 * delta;
    let disc_tol = eps * (1.0 + jnorm * jnorm);
    if disc < -disc_tol {
        if tau.abs() <= tau_tol {
            Classification::CenterOrFocus
        } else if tau < 0.0 {
            Classification::StableFocus
        } else {
            Classification::UnstableFocus
        }
    } else {
        // Positive or vanishing discriminant with positive determinant:
        // a node (repeated eigenvalues included).
        if tau < 0.0 {
            Classification::StableNode
        } else {
            Classification::UnstableNode
        }
    }
}

/// Eigenvalues of a 2x2 matrix by the quadratic formula, with the
/// cancellation-free branch for real roots.
pub fn eigenvalues(j: &[[f64; 2]; 2]) -> [(f64, f64); 2] {
    let tau = j[0][0] + j[1][1];
    let delta = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    eigenvalues_from_char(tau, delta)
}

fn eigenvalues_from_char(tau: f64, delta: f64) -> [(f64, f64); 2] {
    let disc = tau * tau - 4.0 * delta;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        if tau == 0.0 {
            return [(sq / 2.0, 0.0), (-sq / 2.0, 0.0)];
        }
        let r1 = (tau + tau.signum() * sq) / 2.0;
        let r2 = if r1 == 0.0 { 0.0 } else { delta / r1 };
        [(r1, 0.0), (r2, 0.0)]
    } else {
        let im = (-disc).sqrt() / 2.0;
        [(tau / 2.0, im), (tau / 2.0, -im)]
    }
}

/// The six axis points, keyed by the nonzero coordinate and its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisPoint {
    XPlus,
    XMinus,
    YPlus,
    YMinus,
    ZPlus,
    ZMinus,
}

impl AxisPoint {
    pub const ALL: [AxisPoint; 6] = [
        AxisPoint::XPlus,
        AxisPoint::XMinus,
        AxisPoint::YPlus,
        AxisPoint::YMinus,
        AxisPoint::ZPlus,
        AxisPoint::ZMinus,
    ];

    pub fn coordinates(self) -> [f64; 3] {
        match self {
            AxisPoint::XPlus => [1.0, 0.0, 0.0],
            AxisPoint::XMinus => [-1.0, 0.0, 0.0],
            AxisPoint::YPlus => [0.0, 1.0, 0.0],
            AxisPoint::YMinus => [0.0, -1.0, 0.0],
            AxisPoint::ZPlus => [0.0, 0.0, 1.0],
            AxisPoint::ZMinus => [0.0, 0.0, -1.0],
        }
    }

    /// Stereographic image; the south pole maps through its antipode (the
    /// planar field is odd, so the Jacobian there is the origin's).
    pub fn planar_image(self) -> Option<[f64; 2]> {
        match self {
            AxisPoint::XPlus => Some([1.0, 0.0]),
            AxisPoint::XMinus => Some([-1.0, 0.0]),
            AxisPoint::YPlus => Some([0.0, 1.0]),
            AxisPoint::YMinus => Some([0.0, -1.0]),
            AxisPoint::ZPlus => Some([0.0, 0.0]),
            AxisPoint::ZMinus => None,
        }
    }
}

/// Closed-form planar Jacobian at an axis point:
/// `8 diag(-B, -A)` at the x points, `8 diag(A, -C)` at the y points,
/// `2 diag(B, C)` at both poles.
pub fn jacobian_axis_closed_form(k: &KolmogorovParams, which: AxisPoint) -> [[BigRational; 2]; 2] {
    let eight = crate::poly::int(8);
    let two = crate::poly::int(2);
    let zero = BigRational::zero;
    match which {
        AxisPoint::XPlus | AxisPoint::XMinus => [
            [&eight * &-k.b.clone(), zero()],
            [zero(), &eight * &-k.a.clone()],
        ],
        AxisPoint::YPlus | AxisPoint::YMinus => [
            [&eight * &k.a, zero()],
            [zero(), &eight * &-k.c.clone()],
        ],
        AxisPoint::ZPlus | AxisPoint::ZMinus => {
            [[&two * &k.b, zero()], [zero(), &two * &k.c]]
        }
    }
}

/// Planar Jacobian by exact symbolic differentiation of the pushforward,
/// evaluated at a floating point.
pub fn jacobian_numeric(planar: &PlanarField, point: [f64; 2]) -> [[f64; 2]; 2] {
    let pu = planar.pcal().differentiate(Var::U).evaluate(&point);
    let pv = planar.pcal().differentiate(Var::V).evaluate(&point);
    let qu = planar.qcal().differentiate(Var::U).evaluate(&point);
    let qv = planar.qcal().differentiate(Var::V).evaluate(&point);
    [[pu, pv], [qu, qv]]
}

/// Verdict of the no-periodic-orbit criterion: when neither admitting sign
/// condition holds, the field has no periodic orbit. A zero quadratic-part
/// constant makes singular points non-isolated and is flagged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct NoPeriodicOrbitVerdict {
    pub no_periodic_orbit: bool,
    pub degenerate_boundary: bool,
}

pub fn no_periodic_orbit(k: &KolmogorovParams) -> NoPeriodicOrbitVerdict {
    NoPeriodicOrbitVerdict {
        no_periodic_orbit: hiprec::interior_condition(k).is_none(),
        degenerate_boundary: k.a.is_zero() || k.b.is_zero() || k.c.is_zero(),
    }
}

/// Full singular-point enumeration for a Kolmogorov field.
#[derive(Debug, Clone)]
pub struct SingularityAnalysis {
    pub reports: Vec<SingularityReport>,
    /// Some quadratic-part constant vanishes: singular points are not
    /// isolated (whole invariant circles of equilibria can appear).
    pub degenerate: bool,
    pub interior_condition: Option<InteriorCondition>,
}

#[allow(clippy::too_many_arguments)]
fn report_from_char(
    sphere_point: [f64; 3],
    exact_point: Option<[BigRational; 3]>,
    exact_squares: Option<[BigRational; 3]>,
    planar_point: Option<[f64; 2]>,
    jacobian: [[f64; 2]; 2],
    tau: f64,
    delta: f64,
    provenance: Provenance,
) -> SingularityReport {
    SingularityReport {
        sphere_point,
        exact_point,
        exact_squares,
        planar_point,
        jacobian,
        char_trace: tau,
        char_det: delta,
        eigenvalues: eigenvalues_from_char(tau, delta),
        classification: classify_from_char(tau, delta, matrix_norm(&jacobian)),
        provenance,
    }
}

/// Enumerate the axis singular points (always) and the eight interior ones
/// (exactly under the admitting sign conditions), with closed-form
/// Jacobian data.
pub fn kolmogorov_singularities(k: &KolmogorovParams) -> Result<SingularityAnalysis> {
    let mut reports = Vec::new();
    for which in AxisPoint::ALL {
        let jq = jacobian_axis_closed_form(k, which);
        let j = [
            [jq[0][0].to_f64().unwrap(), jq[0][1].to_f64().unwrap()],
            [jq[1][0].to_f64().unwrap(), jq[1][1].to_f64().unwrap()],
        ];
        let coords = which.coordinates();
        let exact = [
            BigRational::from_float(coords[0]).unwrap(),
            BigRational::from_float(coords[1]).unwrap(),
            BigRational::from_float(coords[2]).unwrap(),
        ];
        reports.push(report_from_char(
            coords,
            Some(exact),
            None,
            which.planar_image(),
            j,
            j[0][0] + j[1][1],
            j[0][0] * j[1][1],
            Provenance::ClosedForm,
        ));
    }
    let condition = hiprec::interior_condition(k);
    if let Some(_cond) = condition {
        let denom = &k.b - &k.a - &k.c;
        if denom.is_zero() {
            return Err(Error::Parameter(
                "B - A - C = 0: interior singularity coordinates are undefined".into(),
            ));
        }
        let x2 = -(&k.c / &denom);
        let y2 = &k.b / &denom;
        let z2 = -(&k.a / &denom);
        debug_assert!(!x2.is_negative() && !y2.is_negative() && !z2.is_negative());
        // The four z > 0 points and the four z < 0 points project to two
        // different planar orbits with their own D^2 values.
        let north = hiprec::interior_characteristic_data_branch(k, Hemisphere::North)?;
        let south = hiprec::interior_characteristic_data_branch(k, Hemisphere::South)?;
        let xs = x2.to_f64().unwrap().sqrt();
        let ys = y2.to_f64().unwrap().sqrt();
        let zs = z2.to_f64().unwrap().sqrt();
        for sx in [1.0, -1.0] {
            for sy in [1.0, -1.0] {
                for sz in [1.0, -1.0] {
                    let data = if sz > 0.0 { &north } else { &south };
                    let p = [sx * xs, sy * ys, sz * zs];
                    let planar = [p[0] / (1.0 + p[2]), p[1] / (1.0 + p[2])];
                    // Signs of the off-diagonal entries flip with the
                    // quadrant; trace and determinant do not.
                    let pv = data.pv * sx * sy;
                    let j = [
                        [k.b.to_f64().unwrap() * data.f_value, pv],
                        [-pv, k.c.to_f64().unwrap() * data.f_value],
                    ];
                    reports.push(report_from_char(
                        p,
                        None,
                        Some([x2.clone(), y2.clone(), z2.clone()]),
                        Some(planar),
                        j,
                        data.trace,
                        data.det,
                        Provenance::ClosedForm,
                    ));
                }
            }
        }
    }
    Ok(SingularityAnalysis {
        reports,
        degenerate: k.a.is_zero() || k.b.is_zero() || k.c.is_zero(),
        interior_condition: condition,
    })
}

fn compile(p: &Polynomial) -> Vec<(f64, [u32; 3])> {
    p.terms()
        .map(|(m, c)| (c.to_f64().unwrap_or(f64::NAN), *m.exps()))
        .collect()
}

fn eval_compiled(terms: &[(f64, [u32; 3])], pt: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (c, exps) in terms {
        let mut t = *c;
        for (i, &x) in pt.iter().enumerate() {
            if exps[i] > 0 {
                t *= x.powi(exps[i] as i32);
            }
        }
        acc += t;
    }
    acc
}

/// Integrate the planar field on the closed unit disk. Points are clipped
/// back to the disk; integration stops early near singular points.
pub fn integrate(
    planar: &PlanarField,
    start: [f64; 2],
    duration: f64,
    controls: &Controls,
) -> Result<Trajectory<2>> {
    if start[0] * start[0] + start[1] * start[1] > 1.0 + 1e-9 {
        return Err(Error::Integration(
            "start point lies outside the closed unit disk".into(),
        ));
    }
    let pc = compile(planar.pcal());
    let qc = compile(planar.qcal());
    let rhs = move |y: &[f64; 2]| [eval_compiled(&pc, y), eval_compiled(&qc, y)];
    let mut clip = |y: &mut [f64; 2]| {
        let r = (y[0] * y[0] + y[1] * y[1]).sqrt();
        if r > 1.0 {
            y[0] /= r;
            y[1] /= r;
            r - 1.0
        } else {
            0.0
        }
    };
    ode::integrate_adaptive(&rhs, start, duration, controls, &mut clip)
}

/// Integrate the 3D system with per-step renormalization to the sphere.
/// The start point must lie on the sphere to within 1e-9.
pub fn integrate_on_sphere(
    field: &SphereField,
    start: [f64; 3],
    duration: f64,
    controls: &Controls,
) -> Result<Trajectory<3>> {
    let n = (start[0] * start[0] + start[1] * start[1] + start[2] * start[2]).sqrt();
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::Integration(
            "start point must lie on the unit sphere".into(),
        ));
    }
    let pc = compile(field.p());
    let qc = compile(field.q());
    let rc = compile(field.r());
    let rhs = move |y: &[f64; 3]| {
        [
            eval_compiled(&pc, y),
            eval_compiled(&qc, y),
            eval_compiled(&rc, y),
        ]
    };
    let mut renorm = |y: &mut [f64; 3]| {
        let r = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
        let drift = (r - 1.0).abs();
        y[0] /= r;
        y[1] /= r;
        y[2] /= r;
        drift
    };
    ode::integrate_adaptive(&rhs, start, duration, controls, &mut renorm)
}
