use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::{branch_index, scaled_residual, ComplexValue, ProblemInstance};

use super::RootEstimate;

/// Extra Newton steps taken after the stopping test passes, kept only while
/// they lower the residual.
const POLISH_STEPS: usize = 3;

/// Logarithm whose cut avoids the half-plane the iteration starts in: for
/// `upper` the argument lies in `(-pi/2, 3pi/2]`, otherwise in
/// `[-3pi/2, pi/2)`. On the open half-plane it agrees with the principal
/// branch, so branch indices carry over unchanged.
fn half_plane_log(z: Complex64, upper: bool) -> Complex64 {
    let mut arg = z.im.atan2(z.re);
    if upper && arg < -PI / 2.0 {
        arg += 2.0 * PI;
    } else if !upper && arg > PI / 2.0 {
        arg -= 2.0 * PI;
    }
    Complex64::new(z.norm().ln(), arg)
}

fn h_branch(n: f64, z: Complex64, upper: bool) -> Complex64 {
    (n + 1.0) * half_plane_log(z, upper) - n * half_plane_log(1.0 + z, upper)
}

fn on_pole(z: Complex64) -> bool {
    z == Complex64::new(0.0, 0.0) || z == Complex64::new(-1.0, 0.0)
}

fn validate(z0: Complex64, tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive (got {tol})")));
    }
    if !(z0.re.is_finite() && z0.im.is_finite()) || on_pole(z0) {
        return Err(Error::domain(format!("invalid starting point {z0}")));
    }
    Ok(())
}

/// Newton iteration on `h_k` with `k` either forced or frozen from `z0`.
pub(crate) fn refine_on_branch(
    inst: ProblemInstance,
    z0: ComplexValue,
    forced_k: Option<i64>,
    tol: f64,
    max_iter: usize,
) -> Result<RootEstimate> {
    validate(z0, tol)?;
    let n = f64::from(inst.n());
    // real starting points stay real, so they go with the upper side of the cut
    let upper = z0.im >= 0.0;
    let k = forced_k.unwrap_or_else(|| (h_branch(n, z0, upper).im / (2.0 * PI)).round() as i64);
    let shift = Complex64::new(0.0, 2.0 * PI * k as f64);

    let step_at = |z: Complex64| -> Option<Complex64> {
        let h = h_branch(n, z, upper) - shift;
        let d = (n + 1.0) / z - n / (1.0 + z);
        let s = h / d;
        (s.re.is_finite() && s.im.is_finite()).then_some(s)
    };

    let mut z = z0;
    let mut residual = scaled_residual(inst, z);
    let mut iterations = 0;
    while iterations < max_iter {
        let Some(step) = step_at(z) else { break };
        iterations += 1;
        z -= step;
        if on_pole(z) {
            return Err(Error::domain("Newton iteration landed on a pole"));
        }
        residual = scaled_residual(inst, z);
        if residual <= tol || step.norm() <= tol * z.norm().max(1.0) {
            for _ in 0..POLISH_STEPS {
                let Some(step) = step_at(z) else { break };
                let candidate = z - step;
                if on_pole(candidate) {
                    break;
                }
                let r = scaled_residual(inst, candidate);
                if !(r < residual) {
                    break;
                }
                z = candidate;
                residual = r;
                iterations += 1;
            }
            break;
        }
    }
    Ok(RootEstimate {
        value: z,
        residual,
        iterations,
        converged: residual <= tol,
        branch_k: branch_index(inst, z).ok(),
    })
}

/// Refine `z0` towards a root by Newton's method on the logarithmic form
/// `h_k(z) = (n+1) Log z - n Log(1+z) - 2 pi i k`, with `k` fixed from the
/// starting point.
///
/// Stops once the scaled residual drops to `tol` or the step falls below
/// `tol * max(1, |z|)`. Failure to converge within `max_iter` steps is
/// reported through `converged = false`, not as an error.
pub fn newton_refine(
    inst: ProblemInstance,
    z0: ComplexValue,
    tol: f64,
    max_iter: usize,
) -> Result<RootEstimate> {
    refine_on_branch(inst, z0, None, tol, max_iter)
}
