//! Adaptive Dormand-Prince 5(4) integration with event detection.

use crate::{Error, Result};

/// Step-size and stopping controls.
#[derive(Debug, Clone)]
pub struct Controls {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    pub initial_step: f64,
    pub min_step: f64,
    /// Stop when the field speed falls below this (singular-point approach).
    pub speed_floor: f64,
}

impl Default for Controls {
    fn default() -> Self {
        Controls {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            max_steps: 200_000,
            initial_step: 1e-3,
            min_step: 1e-13,
            speed_floor: 1e-12,
        }
    }
}

/// Why the integrator returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum StopReason {
    Completed,
    SingularApproach,
    StepBudgetExhausted,
}

/// Sampled solution curve. `max_renormalization` and `max_drift_rate` are
/// populated by the on-sphere integrator only.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub times: Vec<f64>,
    pub points: Vec<[f64; N]>,
    pub steps: Vec<f64>,
    pub stop: StopReason,
    pub max_renormalization: f64,
    pub max_drift_rate: f64,
}

const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn axpy<const N: usize>(y: &[f64; N], h: f64, coeffs: &[f64], ks: &[[f64; N]]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in coeffs.iter().zip(ks.iter()) {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

fn norm<const N: usize>(v: &[f64; N]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// One controller-driven integration loop. `post_step` can adjust the
/// accepted state (clipping, renormalization) and report the adjustment
/// distance.
pub(crate) fn integrate_adaptive<const N: usize>(
    rhs: &dyn Fn(&[f64; N]) -> [f64; N],
    start: [f64; N],
    duration: f64,
    controls: &Controls,
    post_step: &mut dyn FnMut(&mut [f64; N]) -> f64,
) -> Result<Trajectory<N>> {
    let sign = if duration < 0.0 { -1.0 } else { 1.0 };
    let t_end = duration.abs();
    let f = move |y: &[f64; N]| {
        let mut v = rhs(y);
        if sign < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        v
    };
    let mut t = 0.0f64;
    let mut y = start;
    let mut h = controls.initial_step.min(t_end.max(1e-12));
    let mut traj = Trajectory {
        times: vec![0.0],
        points: vec![y],
        steps: vec![],
        stop: StopReason::Completed,
        max_renormalization: 0.0,
        max_drift_rate: 0.0,
    };
    if t_end == 0.0 {
        return Ok(traj);
    }
    let mut k1 = f(&y);
    if norm(&k1) < controls.speed_floor {
        traj.stop = StopReason::SingularApproach;
        return Ok(traj);
    }
    for _ in 0..controls.max_steps {
        if t >= t_end {
            traj.stop = StopReason::Completed;
            return Ok(traj);
        }
        h = h.min(t_end - t);
        let k2 = f(&axpy(&y, h, &A2, &[k1]));
        let k3 = f(&axpy(&y, h, &A3, &[k1, k2]));
        let k4 = f(&axpy(&y, h, &A4, &[k1, k2, k3]));
        let k5 = f(&axpy(&y, h, &A5, &[k1, k2, k3, k4]));
        let k6 = f(&axpy(&y, h, &A6, &[k1, k2, k3, k4, k5]));
        let ks6 = [k1, k2, k3, k4, k5, k6];
        let y5 = axpy(&y, h, &B5[..6], &ks6);
        let k7 = f(&y5);
        let ks = [k1, k2, k3, k4, k5, k6, k7];
        let y4 = axpy(&y, h, &B4, &ks);
        // Weighted RMS error against the embedded 4th-order solution.
        let mut err = 0.0f64;
        for i in 0..N {
            let scale = controls.abs_tol + controls.rel_tol * y[i].abs().max(y5[i].abs());
            let e = (y5[i] - y4[i]) / scale;
            err += e * e;
        }
        let err = (err / N as f64).sqrt();
        if err <= 1.0 {
            t += h;
            y = y5;
            let adjust = post_step(&mut y);
            traj.max_renormalization = traj.max_renormalization.max(adjust);
            if h > 0.0 {
                traj.max_drift_rate = traj.max_drift_rate.max(adjust / h);
            }
            traj.times.push(sign * t);
            traj.points.push(y);
            traj.steps.push(h);
            k1 = f(&y);
            if norm(&k1) < controls.speed_floor {
                traj.stop = StopReason::SingularApproach;
                return Ok(traj);
            }
            let grow = 0.9 * err.max(1e-10).powf(-0.2);
            h *= grow.clamp(0.2, 5.0);
        } else {
            let shrink = 0.9 * err.powf(-0.2);
            h *= shrink.clamp(0.1, 0.9);
            if h < controls.min_step {
                return Err(Error::Integration(format!(
                    "step size underflow at t = {t:.6e} (h = {h:.3e})"
                )));
            }
        }
    }
    traj.stop = StopReason::StepBudgetExhausted;
    Ok(traj)
}
