//! Embedded Dormand–Prince 5(4) stepping for two-component systems.
//!
//! The right-hand sides in this crate are C¹ in the state for exponents
//! larger than one, so a non-stiff embedded pair with standard step control
//! is sufficient everywhere.

/// One Dormand–Prince step from `(t, y)` with step `h`.
///
/// Returns the 5th-order solution, the embedded error estimate per
/// component, and the derivative at the step end (FSAL stage).
pub fn dp45_step<F>(f: &F, t: f64, y: [f64; 2], h: f64) -> ([f64; 2], [f64; 2], [f64; 2])
where
    F: Fn(f64, [f64; 2]) -> [f64; 2],
{
    const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    // b (5th order) equals the last row of A; e = b - b_hat (4th order).
    const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];

    let mut k = [[0.0f64; 2]; 7];
    k[0] = f(t, y);
    for s in 1..7 {
        let mut ys = y;
        for (j, kj) in k.iter().enumerate().take(s) {
            ys[0] += h * A[s][j] * kj[0];
            ys[1] += h * A[s][j] * kj[1];
        }
        k[s] = f(t + C[s] * h, ys);
    }
    let mut ynew = y;
    for (j, kj) in k.iter().enumerate().take(6) {
        ynew[0] += h * A[6][j] * kj[0];
        ynew[1] += h * A[6][j] * kj[1];
    }
    let mut err = [0.0f64; 2];
    for (j, kj) in k.iter().enumerate() {
        err[0] += h * E[j] * kj[0];
        err[1] += h * E[j] * kj[1];
    }
    (ynew, err, k[6])
}

/// Scaled RMS error norm used for step acceptance (`<= 1` accepts).
#[inline]
pub fn error_norm(y: [f64; 2], ynew: [f64; 2], err: [f64; 2], rel_tol: f64, abs_tol: f64) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        let sc = abs_tol + rel_tol * y[i].abs().max(ynew[i].abs());
        let e = err[i] / sc;
        s += e * e;
    }
    (s / 2.0).sqrt()
}

/// Step-size update factor for an error norm, clamped to `[0.2, 5.0]`.
#[inline]
pub fn step_factor(err_norm: f64) -> f64 {
    let fac = if err_norm == 0.0 {
        5.0
    } else {
        0.9 * err_norm.powf(-0.2)
    };
    fac.clamp(0.2, 5.0)
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OdeError {
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("step budget exhausted at t = {t}")]
    StepBudget { t: f64 },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
}

/// Adaptive integration of `y' = f(t, y)` from `t0` to exactly `t1`
/// (`t1 > t0`), returning the end state. No event handling.
pub fn integrate_to<F>(
    f: &F,
    t0: f64,
    y0: [f64; 2],
    t1: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_steps: usize,
) -> Result<[f64; 2], OdeError>
where
    F: Fn(f64, [f64; 2]) -> [f64; 2],
{
    assert!(t1 >= t0);
    let mut t = t0;
    let mut y = y0;
    let mut h = ((t1 - t0) / 100.0).clamp(1e-12, 1e-2);
    let h_floor = 1e-14 * (t1 - t0).abs().max(1.0);
    for _ in 0..max_steps {
        if t >= t1 {
            return Ok(y);
        }
        if h > t1 - t {
            h = t1 - t;
        }
        let (ynew, err, _) = dp45_step(f, t, y, h);
        if !ynew[0].is_finite() || !ynew[1].is_finite() {
            h *= 0.5;
            if h < h_floor {
                return Err(OdeError::NonFinite { t });
            }
            continue;
        }
        let en = error_norm(y, ynew, err, rel_tol, abs_tol);
        if en <= 1.0 {
            t += h;
            y = ynew;
            h *= step_factor(en);
        } else {
            h *= step_factor(en);
            if h < h_floor {
                return Err(OdeError::StepUnderflow { t });
            }
        }
    }
    if t >= t1 {
        Ok(y)
    } else {
        Err(OdeError::StepBudget { t })
    }
}
