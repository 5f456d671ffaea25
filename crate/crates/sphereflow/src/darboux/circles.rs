//! Numeric search for invariant great circles of homogeneous cubic fields,
//! with exact certification of every rational hit.
//!
//! When `{z = 0}` is invariant the field can be written
//! `P = A'y + B'z^2`, `Q = -A'x + C'z^2`, `R = -z(B'x + C'y)` and the
//! invariance of a plane `ax + by + cz = 0` with `a, b, c` all nonzero is
//! equivalent to the four residuals E1..E4 below vanishing. Directions with
//! a zero coordinate fall outside that derivation and are found separately:
//! a linear form dividing the extactic over `<y,z>`, `<x,z>`, or `<x,y>` is
//! searched as a one-parameter family on the matching coordinate circle.
//!
//! Every candidate the numeric stage produces is snapped to a nearby
//! rational direction and certified through exact cofactor division; only
//! candidates that refuse to snap are reported as numeric-only.

use super::{cofactor_of, extactic, InvariantSetReport};
use crate::field::{Family, SphereField};
use crate::poly::{Polynomial, Var, VarSpace};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Grid resolution and refinement tolerances for the circle search.
#[derive(Debug, Clone)]
pub struct CircleSearch {
    /// Fibonacci-sphere grid size for the all-nonzero direction search.
    pub grid_points: usize,
    /// Grid size for each one-parameter coordinate-circle family.
    pub axis_grid_points: usize,
    /// Angular tolerance for merging duplicate directions.
    pub merge_tol: f64,
    /// Largest denominator tried when snapping a direction to rationals.
    pub snap_denominator: i64,
    /// Normalized residual below which an unsnapped candidate is still
    /// reported (numeric-only).
    pub residual_tol: f64,
    /// Damped Gauss-Newton iteration cap per candidate.
    pub max_refine_iters: usize,
}

impl Default for CircleSearch {
    fn default() -> Self {
        CircleSearch {
            grid_points: 10_000,
            axis_grid_points: 4_096,
            merge_tol: 1e-6,
            snap_denominator: 1_000,
            residual_tol: 1e-9,
            max_refine_iters: 80,
        }
    }
}

/// Which plane coefficients vanish (exact for certified directions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CircleForm {
    /// All of a, b, c nonzero.
    General,
    /// At least one coordinate vanishes.
    Axis,
}

/// One invariant great circle found by the search.
#[derive(Debug, Clone)]
pub struct FoundGreatCircle {
    /// Unit direction of the plane normal, first nonzero coordinate positive.
    pub direction: [f64; 3],
    /// Exact direction after snapping, when certification succeeded.
    pub rational_direction: Option<[BigRational; 3]>,
    /// Exact cofactor report; `None` for numeric-only candidates.
    pub report: Option<InvariantSetReport>,
    /// Which of a, b, c are zero.
    pub zeros: [bool; 3],
    /// Final normalized search residual.
    pub residual: f64,
}

impl FoundGreatCircle {
    pub fn is_certified(&self) -> bool {
        self.report.is_some()
    }

    pub fn form(&self) -> CircleForm {
        if self.zeros.iter().any(|z| *z) {
            CircleForm::Axis
        } else {
            CircleForm::General
        }
    }
}

/// Search outcome. `infinitely_many` short-circuits enumeration whenever the
/// extactic over `<x, y, z>` vanishes identically.
#[derive(Debug, Clone)]
pub struct GreatCircleFindings {
    pub infinitely_many: bool,
    pub circles: Vec<FoundGreatCircle>,
    pub warnings: Vec<String>,
}

impl GreatCircleFindings {
    /// Certified circles whose coefficient pattern matches the filter:
    /// `filter[i] = true` requires coordinate `i` of the direction to vanish,
    /// `false` requires it nonzero.
    pub fn count_certified_matching(&self, filter: [Option<bool>; 3]) -> usize {
        self.circles
            .iter()
            .filter(|c| c.is_certified())
            .filter(|c| {
                filter
                    .iter()
                    .zip(c.zeros.iter())
                    .all(|(want, have)| want.is_none_or(|w| w == *have))
            })
            .count()
    }
}

struct NormalizedCoefficients {
    // A' = a1 x^2 + a2 y^2 + a3 z^2 + a4 xy + a5 xz + a6 yz
    a: [f64; 6],
    // B' = b1 x + b2 y + b3 z ; C' = c1 x + c2 y + c3 z
    b: [f64; 3],
    c: [f64; 3],
    scale: f64,
}

fn extract_normalized_coefficients(field: &SphereField) -> Option<NormalizedCoefficients> {
    let z = Polynomial::variable(Var::Z);
    let y = Polynomial::variable(Var::Y);
    let x = Polynomial::variable(Var::X);
    let r1 = field.r().exact_divide(&z)?;
    // R/z = -B'x - C'y up to the representative shift (B', C') ->
    // (B' + s y, C' - s x); any representative works for E1..E4.
    let mut bprime = Polynomial::zero(VarSpace::Sphere);
    for (m, coeff) in r1.terms() {
        if m.exps()[0] > 0 {
            let mut exps = *m.exps();
            exps[0] -= 1;
            bprime = &bprime + &Polynomial::monomial(VarSpace::Sphere, exps, -coeff.clone());
        }
    }
    let cprime = (&(-&r1) - &(&bprime * &x)).exact_divide(&y)?;
    let z2 = &z * &z;
    let aprime = (field.p() - &(&bprime * &z2)).exact_divide(&y)?;
    // Sanity: Q must reassemble exactly.
    let q_expect = &(-&(&aprime * &x)) + &(&cprime * &z2);
    if &q_expect != field.q() {
        return None;
    }
    let f = |p: &Polynomial, e: [u32; 3]| p.coefficient(e).to_f64().unwrap_or(f64::NAN);
    let a = [
        f(&aprime, [2, 0, 0]),
        f(&aprime, [0, 2, 0]),
        f(&aprime, [0, 0, 2]),
        f(&aprime, [1, 1, 0]),
        f(&aprime, [1, 0, 1]),
        f(&aprime, [0, 1, 1]),
    ];
    let b = [
        f(&bprime, [1, 0, 0]),
        f(&bprime, [0, 1, 0]),
        f(&bprime, [0, 0, 1]),
    ];
    let c = [
        f(&cprime, [1, 0, 0]),
        f(&cprime, [0, 1, 0]),
        f(&cprime, [0, 0, 1]),
    ];
    let scale = a
        .iter()
        .chain(b.iter())
        .chain(c.iter())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    Some(NormalizedCoefficients { a, b, c, scale })
}

impl NormalizedCoefficients {
    /// The four residuals whose simultaneous vanishing characterizes an
    /// invariant plane `ax + by + cz = 0` with `a, b, c` all nonzero.
    fn residuals(&self, dir: [f64; 3]) -> [f64; 4] {
        let [a, b, c] = dir;
        let [a1, a2, a3, a4, a5, a6] = self.a;
        let [b1, b2, b3] = self.b;
        let [c1, c2, c3] = self.c;
        let e1 = b * b * a1 + a * a * a2 - a * b * a4;
        let e2 = b * c.powi(3) * a1 + a * a * b * c * a3 - a * b * c * c * a5
            - a * c * (a * a + c * c) * b1
            + a * a * (a * a + c * c) * b3
            - a * a * b * c * c1
            + a.powi(3) * b * c3;
        let e3 = a * c.powi(3) * a2 + a * b * b * c * a3 - a * b * c * c * a6
            + a * b * b * c * b2
            - a * b.powi(3) * b3
            + b * c * (b * b + c * c) * c2
            - b * b * (b * b + c * c) * c3;
        let e4 = b * b * c * (a * a + 2.0 * b * b) * a1 - a.powi(4) * c * a2
            - a * b.powi(3) * c * a4
            - a * b * b * (a * a + b * b) * a5
            + a * a * b * (a * a + b * b) * a6
            - a * b.powi(3) * c * b1
            + a * a * b * b * c * b2
            + a * a * b * b * c * c1
            - a.powi(3) * b * c * c2;
        [
            e1 / self.scale,
            e2 / self.scale,
            e3 / self.scale,
            e4 / self.scale,
        ]
    }

    fn residual_norm2(&self, dir: [f64; 3]) -> f64 {
        self.residuals(dir).iter().map(|e| e * e).sum()
    }
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn canonical_sign(mut v: [f64; 3]) -> [f64; 3] {
    for c in v {
        if c.abs() > 1e-12 {
            if c < 0.0 {
                v = [-v[0], -v[1], -v[2]];
            }
            break;
        }
    }
    v
}

fn tangent_basis(p: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let pick = if p[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let mut e1 = [
        pick[1] * p[2] - pick[2] * p[1],
        pick[2] * p[0] - pick[0] * p[2],
        pick[0] * p[1] - pick[1] * p[0],
    ];
    e1 = normalize(e1);
    let e2 = [
        p[1] * e1[2] - p[2] * e1[1],
        p[2] * e1[0] - p[0] * e1[2],
        p[0] * e1[1] - p[1] * e1[0],
    ];
    (e1, e2)
}

/// Damped Gauss-Newton on the sphere in the 2D tangent chart.
fn refine_on_sphere(
    coeffs: &NormalizedCoefficients,
    start: [f64; 3],
    max_iters: usize,
) -> ([f64; 3], f64) {
    let mut p = start;
    let mut lambda = 1e-8;
    let mut best = coeffs.residual_norm2(p);
    for _ in 0..max_iters {
        let (e1, e2) = tangent_basis(p);
        let r0 = coeffs.residuals(p);
        let h = 1e-7;
        let step = |d: [f64; 3], s: f64| {
            normalize([p[0] + s * d[0], p[1] + s * d[1], p[2] + s * d[2]])
        };
        let r1p = coeffs.residuals(step(e1, h));
        let r1m = coeffs.residuals(step(e1, -h));
        let r2p = coeffs.residuals(step(e2, h));
        let r2m = coeffs.residuals(step(e2, -h));
        // 4x2 Jacobian by central differences.
        let mut jtj = [[0.0f64; 2]; 2];
        let mut jtr = [0.0f64; 2];
        for i in 0..4 {
            let j1 = (r1p[i] - r1m[i]) / (2.0 * h);
            let j2 = (r2p[i] - r2m[i]) / (2.0 * h);
            jtj[0][0] += j1 * j1;
            jtj[0][1] += j1 * j2;
            jtj[1][1] += j2 * j2;
            jtr[0] += j1 * r0[i];
            jtr[1] += j2 * r0[i];
        }
        jtj[1][0] = jtj[0][1];
        let mut improved = false;
        for _ in 0..12 {
            let a00 = jtj[0][0] + lambda;
            let a11 = jtj[1][1] + lambda;
            let det = a00 * a11 - jtj[0][1] * jtj[1][0];
            if det.abs() < 1e-300 {
                break;
            }
            let d0 = (-jtr[0] * a11 + jtr[1] * jtj[0][1]) / det;
            let d1 = (-jtr[1] * a00 + jtr[0] * jtj[1][0]) / det;
            let cand = normalize([
                p[0] + d0 * e1[0] + d1 * e2[0],
                p[1] + d0 * e1[1] + d1 * e2[1],
                p[2] + d0 * e1[2] + d1 * e2[2],
            ]);
            let r = coeffs.residual_norm2(cand);
            if r < best {
                p = cand;
                best = r;
                lambda = (lambda * 0.3).max(1e-14);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
        if best < 1e-30 {
            break;
        }
    }
    (p, best)
}

/// Continued-fraction rational approximation with bounded denominator.
fn approximate_rational(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    let mut frac = x - x.floor();
    for _ in 0..40 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() < 1e-12 * (1.0 + x.abs()) {
            break;
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let a = (1.0 / frac).floor();
        frac = 1.0 / frac - a;
        let a = a as i128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    let approx = p1 as f64 / q1 as f64;
    if (approx - x).abs() < 1e-7 * (1.0 + x.abs()) {
        Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)))
    } else {
        None
    }
}

/// Snap a unit direction to integer-proportional rationals and certify the
/// plane exactly. Returns the exact direction and its cofactor report.
fn snap_and_certify(
    field: &SphereField,
    dir: [f64; 3],
    max_den: i64,
) -> Option<([BigRational; 3], InvariantSetReport)> {
    let m = (0..3)
        .max_by(|&i, &j| dir[i].abs().partial_cmp(&dir[j].abs()).unwrap())
        .unwrap();
    let mut coords = [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    ];
    for i in 0..3 {
        let ratio = dir[i] / dir[m];
        let snapped = if i == m {
            BigRational::from(BigInt::from(1))
        } else if ratio.abs() < 1e-9 {
            BigRational::zero()
        } else {
            approximate_rational(ratio, max_den)?
        };
        coords[i] = snapped;
    }
    // Clear denominators to a primitive integer direction with the first
    // nonzero coordinate positive.
    let lcm = coords.iter().fold(BigInt::from(1), |acc, c| {
        num_integer::lcm(acc, c.denom().clone())
    });
    let lcm_q = BigRational::from(lcm);
    for c in coords.iter_mut() {
        *c = &*c * &lcm_q;
    }
    if coords
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        for c in coords.iter_mut() {
            *c = -c.clone();
        }
    }
    let x = Polynomial::variable(Var::X).scale(&coords[0]);
    let y = Polynomial::variable(Var::Y).scale(&coords[1]);
    let z = Polynomial::variable(Var::Z).scale(&coords[2]);
    let plane = &(&x + &y) + &z;
    if plane.is_zero() {
        return None;
    }
    let report = cofactor_of(field, &plane)?;
    Some((coords, report))
}

struct AxisFamily {
    /// Index of the coordinate forced to zero in the plane normal.
    zero_index: usize,
    /// The other two coordinate indices carrying (cos t, sin t).
    live: [usize; 2],
    extactic: Polynomial,
    scale: f64,
}

impl AxisFamily {
    fn direction(&self, theta: f64) -> [f64; 3] {
        let mut d = [0.0; 3];
        d[self.live[0]] = theta.cos();
        d[self.live[1]] = theta.sin();
        d
    }

    /// Residual for "the linear form with these coefficients divides the
    /// extactic": sample the extactic on the plane's kernel directions.
    fn residual(&self, theta: f64) -> f64 {
        let dir = self.direction(theta);
        let deg = self.extactic.degree().unwrap_or(0) as usize;
        // Plane basis: the free axis and the in-plane rotation of the live pair.
        let mut span_a = [0.0; 3];
        span_a[self.zero_index] = 1.0;
        let mut span_b = [0.0; 3];
        span_b[self.live[0]] = -dir[self.live[1]];
        span_b[self.live[1]] = dir[self.live[0]];
        let samples = deg + 1;
        let mut acc = 0.0;
        for k in 0..samples {
            let phi = std::f64::consts::PI * (k as f64 + 0.37) / samples as f64;
            let (s, t) = (phi.cos(), phi.sin());
            let pt = [
                s * span_a[0] + t * span_b[0],
                s * span_a[1] + t * span_b[1],
                s * span_a[2] + t * span_b[2],
            ];
            let v = self.extactic.evaluate(&pt) / self.scale;
            acc += v * v;
        }
        acc
    }
}

/// All invariant great circles of a homogeneous field, or the
/// infinitely-many sentinel. Directions are deduplicated antipodally and
/// certified exactly whenever they snap to a rational direction.
pub fn solve_great_circles_homogeneous(
    field: &SphereField,
    search: &CircleSearch,
) -> Result<GreatCircleFindings> {
    if field.family() != Family::HomogeneousCubic {
        return Err(Error::FamilyMismatch {
            expected: "homogeneous-cubic".into(),
            found: field.family().to_string(),
        });
    }
    let mut warnings = Vec::new();
    let x = Polynomial::variable(Var::X);
    let y = Polynomial::variable(Var::Y);
    let z = Polynomial::variable(Var::Z);
    if field.is_zero() {
        return Ok(GreatCircleFindings {
            infinitely_many: true,
            circles: Vec::new(),
            warnings,
        });
    }
    let e_xyz = extactic(field, &[x.clone(), y.clone(), z.clone()])?;
    if e_xyz.is_zero() {
        return Ok(GreatCircleFindings {
            infinitely_many: true,
            circles: Vec::new(),
            warnings,
        });
    }

    let mut candidates: Vec<([f64; 3], f64)> = Vec::new();

    // All-coordinates-nonzero directions through the E1..E4 residual.
    match extract_normalized_coefficients(field) {
        Some(coeffs) => {
            let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
            let n = search.grid_points.max(16);
            let mut graded: Vec<([f64; 3], f64)> = (0..n)
                .map(|i| {
                    let zc = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                    let rad = (1.0 - zc * zc).max(0.0).sqrt();
                    let phi = golden * i as f64;
                    let p = [rad * phi.cos(), rad * phi.sin(), zc];
                    (p, coeffs.residual_norm2(p))
                })
                .collect();
            graded.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
            // Spatially diverse refinement starts from the best grid points.
            let mut starts: Vec<[f64; 3]> = Vec::new();
            for (p, _) in graded.iter() {
                if starts.len() >= 300 {
                    break;
                }
                let pc = canonical_sign(*p);
                if starts.iter().all(|s| {
                    let dot = s[0] * pc[0] + s[1] * pc[1] + s[2] * pc[2];
                    dot.abs() < 0.9995
                }) {
                    starts.push(pc);
                }
            }
            let mut failures = 0usize;
            for s in starts {
                let (p, r2) = refine_on_sphere(&coeffs, s, search.max_refine_iters);
                if r2.sqrt() < search.residual_tol {
                    if p.iter().all(|c| c.abs() > 1e-3) {
                        candidates.push((canonical_sign(p), r2.sqrt()));
                    }
                } else {
                    failures += 1;
                }
            }
            if failures > 280 {
                warnings.push(format!(
                    "direction refinement exhausted its budget on {failures} starts"
                ));
            }
        }
        None => {
            warnings.push(
                "z does not divide R (no invariant circle at z = 0); skipping the \
                 all-nonzero direction search"
                    .into(),
            );
        }
    }

    // Axis-adjacent families via the coordinate extactics.
    let families = [
        (0usize, [1usize, 2usize], [y.clone(), z.clone()]),
        (1, [0, 2], [x.clone(), z.clone()]),
        (2, [0, 1], [x.clone(), y.clone()]),
    ];
    for (zero_index, live, basis) in families {
        let e = extactic(field, &basis)?;
        if e.is_zero() {
            warnings.push(format!(
                "extactic over <{}, {}> vanishes identically; that family is not enumerated",
                basis[0], basis[1]
            ));
            continue;
        }
        let fam = AxisFamily {
            zero_index,
            live,
            scale: e.max_abs_coefficient().max(1.0),
            extactic: e,
        };
        let n = search.axis_grid_points.max(64);
        let values: Vec<f64> = (0..n)
            .map(|i| fam.residual(std::f64::consts::PI * i as f64 / n as f64))
            .collect();
        for i in 0..n {
            let prev = values[(i + n - 1) % n];
            let next = values[(i + 1) % n];
            if values[i] <= prev && values[i] <= next {
                // Ternary-search refinement of the local minimum.
                let h = std::f64::consts::PI / n as f64;
                let mut lo = std::f64::consts::PI * i as f64 / n as f64 - h;
                let mut hi = lo + 2.0 * h;
                for _ in 0..100 {
                    let m1 = lo + (hi - lo) / 3.0;
                    let m2 = hi - (hi - lo) / 3.0;
                    if fam.residual(m1) < fam.residual(m2) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                let theta = 0.5 * (lo + hi);
                let r = fam.residual(theta).sqrt();
                if r < search.residual_tol {
                    candidates.push((canonical_sign(fam.direction(theta)), r));
                }
            }
        }
    }

    // Merge antipodally-deduplicated directions within the angular tolerance.
    candidates.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut merged: Vec<([f64; 3], f64)> = Vec::new();
    let cos_tol = 1.0 - 0.5 * search.merge_tol * search.merge_tol;
    for (dir, r) in candidates {
        match merged.iter_mut().find(|(d, _)| {
            (d[0] * dir[0] + d[1] * dir[1] + d[2] * dir[2]).abs() >= cos_tol
        }) {
            Some(slot) => {
                if r < slot.1 {
                    *slot = (dir, r);
                }
            }
            None => merged.push((dir, r)),
        }
    }

    let mut circles = Vec::new();
    for (dir, residual) in merged {
        match snap_and_certify(field, dir, search.snap_denominator) {
            Some((coords, report)) => {
                let mut unit = [
                    coords[0].to_f64().unwrap(),
                    coords[1].to_f64().unwrap(),
                    coords[2].to_f64().unwrap(),
                ];
                unit = canonical_sign(normalize(unit));
                let zeros = [
                    coords[0].is_zero(),
                    coords[1].is_zero(),
                    coords[2].is_zero(),
                ];
                circles.push(FoundGreatCircle {
                    direction: unit,
                    rational_direction: Some(coords),
                    report: Some(report),
                    zeros,
                    residual,
                });
            }
            None => {
                circles.push(FoundGreatCircle {
                    direction: dir,
                    rational_direction: None,
                    report: None,
                    zeros: [
                        dir[0].abs() < 1e-9,
                        dir[1].abs() < 1e-9,
                        dir[2].abs() < 1e-9,
                    ],
                    residual,
                });
            }
        }
    }
    // A snapped direction can collapse two nearby numeric candidates; merge
    // exact duplicates after certification.
    circles.sort_by(|a, b| a.direction.partial_cmp(&b.direction).unwrap());
    circles.dedup_by(|a, b| {
        (a.direction[0] - b.direction[0]).abs() < 1e-9
            && (a.direction[1] - b.direction[1]).abs() < 1e-9
            && (a.direction[2] - b.direction[2]).abs() < 1e-9
    });

    Ok(GreatCircleFindings {
        infinitely_many: false,
        circles,
        warnings,
    })
}
