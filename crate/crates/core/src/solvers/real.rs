use num_complex::Complex64;

use crate::asymptotics::{approx_negative_root, approx_positive_root, approx_positive_root_lambert};
use crate::error::{Error, Result};
use crate::eval::{branch_index, scaled_residual, ProblemInstance};

use super::RootEstimate;

const MAX_ITER: usize = 200;

/// Newton's method on `g` kept inside a sign-changing bracket, falling back
/// to bisection whenever a step would leave it. `g` returns value and slope.
fn bracketed_newton(
    g: impl Fn(f64) -> (f64, f64),
    mut lo: f64,
    mut hi: f64,
    start: f64,
) -> (f64, usize) {
    let lo_negative = g(lo).0 < 0.0;
    let mut x = if start > lo && start < hi { start } else { 0.5 * (lo + hi) };
    for it in 1..=MAX_ITER {
        let (v, slope) = g(x);
        if v == 0.0 {
            return (x, it);
        }
        if (v < 0.0) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - v / slope;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let moved = (next - x).abs();
        x = next;
        if moved <= 2.0 * f64::EPSILON * x.abs() || hi - lo <= 2.0 * f64::EPSILON * x.abs() {
            return (x, it);
        }
    }
    (x, MAX_ITER)
}

fn certify(inst: ProblemInstance, x: f64, iterations: usize, tol: f64) -> Result<RootEstimate> {
    let value = Complex64::new(x, 0.0);
    let residual = scaled_residual(inst, value);
    if residual > tol {
        return Err(Error::Convergence { iterations, residual });
    }
    Ok(RootEstimate {
        value,
        residual,
        iterations,
        converged: true,
        branch_k: branch_index(inst, value).ok(),
    })
}

/// The unique positive real root, bracketed in `[1, 2n]`.
pub fn solve_positive_root(inst: ProblemInstance, tol: f64) -> Result<RootEstimate> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive (got {tol})")));
    }
    let n = f64::from(inst.n());
    let start = if inst.n() >= 2 {
        approx_positive_root(u64::from(inst.n()))?
    } else {
        approx_positive_root_lambert(1)?
    };
    // ln x - n ln(1 + 1/x) is increasing and vanishes exactly at the root
    let g = |x: f64| {
        let v = x.ln() - n * x.recip().ln_1p();
        let slope = (x + n + 1.0) / (x * (1.0 + x));
        (v, slope)
    };
    let (x, iterations) = bracketed_newton(g, 1.0, 2.0 * n, start);
    certify(inst, x, iterations, tol)
}

/// The unique root in `(-1, 0)`, present only for odd `n`; it is bracketed
/// in `[-0.99, -0.5]`.
pub fn solve_negative_root(inst: ProblemInstance, tol: f64) -> Result<RootEstimate> {
    if !inst.is_odd() {
        return Err(Error::domain(format!(
            "no negative real root exists for even n (got {})",
            inst.n()
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive (got {tol})")));
    }
    let n = f64::from(inst.n());
    // ln(-x) + n ln(-x / (1+x)), decreasing on (-1, 0)
    let g = |x: f64| {
        let v = (-x).ln() + n * ((-2.0 * x - 1.0) / (1.0 + x)).ln_1p();
        let slope = (n + 1.0) / x - n / (1.0 + x);
        (v, slope)
    };
    let start = approx_negative_root(u64::from(inst.n()))?;
    let (x, iterations) = bracketed_newton(g, -0.99, -0.5, start);
    certify(inst, x, iterations, tol)
}
