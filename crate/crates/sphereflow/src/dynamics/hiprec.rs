//! Extended-precision evaluation of the interior singular-point data.
//!
//! The quantity `F = 8A/D^2 + 2((D^2+C-B)/D^2)^2` cancels catastrophically
//! (it is zero in exact arithmetic), so the characteristic-polynomial data
//! of the interior Jacobian is computed with rational arithmetic carrying
//! square roots approximated to 70 decimal digits, then rounded to `f64` at
//! the very end.

use crate::field::KolmogorovParams;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const DIGITS: u32 = 70;

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// Round to the nearest multiple of 10^-digits.
fn round_to(x: &BigRational, digits: u32) -> BigRational {
    let scale = pow10(digits);
    let scaled = x * BigRational::from(scale.clone());
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let mut n = floor.to_integer();
    if frac >= BigRational::new(BigInt::from(1), BigInt::from(2)) {
        n += 1;
    }
    BigRational::new(n, scale)
}

/// Square root of a non-negative rational to `digits` decimal digits, by
/// Newton iteration from the `f64` seed with per-step rounding.
pub fn sqrt_rational(r: &BigRational, digits: u32) -> BigRational {
    assert!(!r.is_negative(), "sqrt of a negative rational");
    if r.is_zero() {
        return BigRational::zero();
    }
    let seed = r.to_f64().expect("finite").sqrt();
    let mut x = round_to(
        &BigRational::from_float(seed).expect("finite seed"),
        digits + 10,
    );
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    // f64 seed carries ~15 digits; each step doubles them.
    for _ in 0..6 {
        let next = (&x + r / &x) * &half;
        x = round_to(&next, digits + 10);
    }
    x
}

/// Which sign pattern admits the extra singularities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum InteriorCondition {
    /// A, C > 0 and B < 0.
    PositiveAC,
    /// A, C < 0 and B > 0.
    NegativeAC,
}

/// The eight interior points project to two planar orbits: the four with
/// z > 0 and the four with z < 0. They differ in the sign in the
/// denominator `sqrt(B-A-C) +- sqrt(-A)` and therefore in `D^2` (the two
/// values multiply to `(B-C)^2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Hemisphere {
    North,
    South,
}

/// Characteristic data of the Jacobian at an interior singular point, from
/// the closed forms: `trace = (B+C)F`, `P_v` as below, and
/// `Delta = (C-B)^2 F^2 - 4 P_v^2`.
#[derive(Debug, Clone, Copy)]
pub struct InteriorData {
    pub condition: InteriorCondition,
    pub hemisphere: Hemisphere,
    /// `F = 8A/D^2 + 2((D^2+C-B)/D^2)^2`; zero in exact arithmetic.
    pub f_value: f64,
    /// `(B+C) F`, the trace of the interior Jacobian.
    pub trace: f64,
    /// Closed-form `P_v(u0, v0)`.
    pub pv: f64,
    /// Determinant of the characteristic polynomial's companion data:
    /// `B C F^2 + P_v^2`.
    pub det: f64,
    /// Discriminant `(C-B)^2 F^2 - 4 P_v^2`.
    pub delta: f64,
    /// Planar image of the representative singular point with positive
    /// coordinates.
    pub u0: f64,
    pub v0: f64,
}

pub fn interior_condition(k: &KolmogorovParams) -> Option<InteriorCondition> {
    let (a, b, c) = (&k.a, &k.b, &k.c);
    if a.is_positive() && c.is_positive() && b.is_negative() {
        Some(InteriorCondition::PositiveAC)
    } else if a.is_negative() && c.is_negative() && b.is_positive() {
        Some(InteriorCondition::NegativeAC)
    } else {
        None
    }
}

/// High-precision closed-form data at the interior singular points with
/// z > 0 (the representative the closed forms are usually quoted for).
/// Requires one of the two admitting sign conditions.
pub fn interior_characteristic_data(k: &KolmogorovParams) -> Result<InteriorData> {
    interior_characteristic_data_branch(k, Hemisphere::North)
}

/// High-precision closed-form data for either planar orbit of interior
/// points. The southern orbit replaces `D^2` by its conjugate value
/// `(B-C)^2 / D^2`.
pub fn interior_characteristic_data_branch(
    k: &KolmogorovParams,
    hemisphere: Hemisphere,
) -> Result<InteriorData> {
    let condition = interior_condition(k).ok_or_else(|| {
        Error::Parameter(
            "interior singularities need A, C > 0, B < 0 or A, C < 0, B > 0".into(),
        )
    })?;
    let (a, b, c) = (k.a.clone(), k.b.clone(), k.c.clone());
    let two = BigRational::from(BigInt::from(2));
    let four = BigRational::from(BigInt::from(4));
    let eight = BigRational::from(BigInt::from(8));
    let sixteen = BigRational::from(BigInt::from(16));

    // (-A)(B-A-C) = A(A+C-B) is positive under both conditions. For the
    // northern points the product sqrt(-A) sqrt(B-A-C) is the negative root
    // under (a) (both factors imaginary) and the positive root under (b)
    // (both real); the southern points take the opposite root.
    let m = &a * (&a + &c - &b);
    let s = sqrt_rational(&m, DIGITS);
    let north_sign = match condition {
        InteriorCondition::PositiveAC => -1,
        InteriorCondition::NegativeAC => 1,
    };
    let sign = match hemisphere {
        Hemisphere::North => north_sign,
        Hemisphere::South => -north_sign,
    };
    let s_signed = if sign < 0 { -s } else { s };
    let d2 = &b - &two * &a - &c + &two * &s_signed;
    let d2_pc_mb = &d2 + &c - &b; // D^2 + C - B
    let ratio = round_to(&(&d2_pc_mb / &d2), DIGITS);
    let f = round_to(&(&eight * &a / &d2), DIGITS) + &two * &ratio * &ratio;
    let sqrt_bc = sqrt_rational(&(-(&b * &c)), DIGITS);
    let pv = round_to(&(&sixteen * &a * &sqrt_bc / &d2), DIGITS)
        + round_to(&(&eight * (&c - &b) * &sqrt_bc / &d2), DIGITS) * &ratio;
    let trace = (&b + &c) * &f;
    let det = &b * &c * &f * &f + &pv * &pv;
    let delta = (&c - &b) * (&c - &b) * &f * &f - &four * &pv * &pv;

    // u0 = sqrt(|C|) / (sqrt(|B-A-C|) +- sqrt(|A|)), v0 with |B|; the
    // minus sign belongs to the southern orbit and is positive there.
    let abs_bac = (&b - &a - &c).abs();
    let sqrt_a = sqrt_rational(&a.abs(), DIGITS);
    let den = match hemisphere {
        Hemisphere::North => sqrt_rational(&abs_bac, DIGITS) + sqrt_a,
        Hemisphere::South => sqrt_rational(&abs_bac, DIGITS) - sqrt_a,
    };
    let u0 = round_to(&(sqrt_rational(&c.abs(), DIGITS) / &den), DIGITS);
    let v0 = round_to(&(sqrt_rational(&b.abs(), DIGITS) / &den), DIGITS);

    let to = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
    Ok(InteriorData {
        condition,
        hemisphere,
        f_value: to(&f),
        trace: to(&trace),
        pv: to(&pv),
        det: to(&det),
        delta: to(&delta),
        u0: to(&u0),
        v0: to(&v0),
    })
}
