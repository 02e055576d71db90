//! Real principal branch of the Lambert W function.

use std::f64::consts::E;

use crate::error::{Error, Result};

const MAX_ITER: usize = 50;
/// Arguments closer than this to `-1/e` are rejected.
const BRANCH_GUARD: f64 = 1e-12;

/// A Lambert W evaluation together with its certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WResult {
    pub value: f64,
    pub iterations: usize,
    /// `|w e^w - x|`.
    pub residual: f64,
}

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        // series about the branch point in p = sqrt(2 (e x + 1))
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x <= E {
        x.ln_1p()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

/// Principal-branch `W0(x)`, the solution `w >= -1` of `w e^w = x`, by
/// Halley iteration.
pub fn lambert_w0(x: f64) -> Result<WResult> {
    if !x.is_finite() {
        return Err(Error::domain(format!("lambert_w0 of non-finite {x}")));
    }
    let branch_point = -1.0 / E;
    if x < branch_point + BRANCH_GUARD {
        return Err(Error::domain(format!(
            "lambert_w0 undefined below -1/e (got {x})"
        )));
    }
    if x == 0.0 {
        return Ok(WResult {
            value: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }

    let bound = 1e-12 * x.abs().max(1.0);
    let mut w = initial_guess(x);
    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if !step.is_finite() {
            break;
        }
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(1e-300) {
            break;
        }
    }
    let residual = (w * w.exp() - x).abs();
    if residual <= bound && w >= -1.0 {
        Ok(WResult {
            value: w,
            iterations,
            residual,
        })
    } else {
        Err(Error::Convergence {
            iterations,
            residual,
        })
    }
}

/// Three-term large-argument expansion `ln n - ln ln n + ln ln n / ln n`.
pub fn lambert_w0_asymptotic(n: f64) -> Result<f64> {
    if !(n > E) {
        return Err(Error::domain(format!(
            "asymptotic W needs n > e (got {n})"
        )));
    }
    let l1 = n.ln();
    let l2 = l1.ln();
    Ok(l1 - l2 + l2 / l1)
}
