//! Evaluation of `f(z) = z^(n+1) - (1+z)^n`, its derivative, and the
//! branch-indexed logarithmic form
//! `h_k(z) = (n+1) Log z - n Log(1+z) - 2 pi i k`.
//!
//! Small instances near the origin are evaluated by direct complex powering.
//! Everywhere else the dominant term is factored out in log space, so that
//! `n` in the thousands neither overflows nor loses the difference to
//! cancellation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex plane.
pub type ComplexValue = Complex64;

/// Largest `n` evaluated by direct powering.
const DIRECT_MAX_N: u32 = 30;
/// Largest `|z|` evaluated by direct powering.
const DIRECT_MAX_MODULUS: f64 = 4.0;

/// One member of the family, identified by its degree parameter `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemInstance {
    n: u32,
}

impl ProblemInstance {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("n must be at least 1"));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.n % 2 == 1
    }

    fn uses_direct_path(self, z: Complex64) -> bool {
        self.n <= DIRECT_MAX_N && z.norm() <= DIRECT_MAX_MODULUS
    }
}

fn ensure_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("non-finite argument {z}")))
    }
}

/// Principal logarithm, with a signed-zero imaginary part read as `+0` so
/// that the negative real axis belongs to the upper side of the cut.
pub(crate) fn principal_log(z: Complex64) -> Complex64 {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    Complex64::new(z.re, im).ln()
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub(crate) fn expm1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(
        z.re.exp_m1() * c - 2.0 * half * half,
        z.re.exp() * s,
    )
}

pub(crate) fn checked_exp(log: Complex64) -> Result<Complex64> {
    if log.re > f64::MAX.ln() {
        return Err(Error::Overflow(format!(
            "result magnitude e^{:.3} exceeds double range",
            log.re
        )));
    }
    let v = log.exp();
    ensure_finite(v).map_err(|_| Error::Overflow("non-finite result".into()))?;
    Ok(v)
}

/// Log of `coef * base^power`, `None` when the term is exactly zero.
fn term_log(coef: f64, base: Complex64, power: u32) -> Option<Complex64> {
    if power == 0 {
        return Some(Complex64::new(coef.ln(), 0.0));
    }
    if base == Complex64::new(0.0, 0.0) {
        return None;
    }
    Some(coef.ln() + f64::from(power) * principal_log(base))
}

/// `ca * a^pa - cb * b^pb`.
fn diff_of_powers(
    direct: bool,
    (ca, a, pa): (f64, Complex64, u32),
    (cb, b, pb): (f64, Complex64, u32),
) -> Result<Complex64> {
    if direct {
        return Ok(a.powu(pa) * ca - b.powu(pb) * cb);
    }
    match (term_log(ca, a, pa), term_log(cb, b, pb)) {
        (None, None) => Ok(Complex64::new(0.0, 0.0)),
        (Some(la), None) => checked_exp(la),
        (None, Some(lb)) => checked_exp(lb).map(|v| -v),
        (Some(la), Some(lb)) => {
            // factor out the larger term: e^la (1 - e^(lb-la)) or e^lb (e^(la-lb) - 1)
            let (lead, factor) = if la.re >= lb.re {
                (la, -expm1(lb - la))
            } else {
                (lb, expm1(la - lb))
            };
            if factor == Complex64::new(0.0, 0.0) {
                return Ok(factor);
            }
            checked_exp(lead + factor.ln())
        }
    }
}

/// `f(z) = z^(n+1) - (1+z)^n`.
pub fn eval_f(inst: ProblemInstance, z: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(z)?;
    let n = inst.n();
    diff_of_powers(
        inst.uses_direct_path(z),
        (1.0, z, n + 1),
        (1.0, 1.0 + z, n),
    )
}

/// `f'(z) = (n+1) z^n - n (1+z)^(n-1)`.
pub fn eval_f_prime(inst: ProblemInstance, z: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(z)?;
    let n = inst.n();
    diff_of_powers(
        inst.uses_direct_path(z),
        (f64::from(n + 1), z, n),
        (f64::from(n), 1.0 + z, n - 1),
    )
}

fn ensure_off_poles(z: Complex64) -> Result<()> {
    ensure_finite(z)?;
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(-1.0, 0.0) {
        return Err(Error::domain(format!("{z} is a pole of the logarithmic form")));
    }
    Ok(())
}

/// Principal-branch `(n+1) Log z - n Log(1+z)` with no branch shift.
pub(crate) fn h_principal(inst: ProblemInstance, z: Complex64) -> Complex64 {
    let n = f64::from(inst.n());
    (n + 1.0) * principal_log(z) - n * principal_log(1.0 + z)
}

/// `h_k(z) = (n+1) Log z - n Log(1+z) - 2 pi i k` on the principal branch.
///
/// `z` is a root of `f` exactly when `h_k(z) = 0` for some integer `k`.
pub fn eval_h(inst: ProblemInstance, k: i64, z: ComplexValue) -> Result<ComplexValue> {
    ensure_off_poles(z)?;
    Ok(h_principal(inst, z) - Complex64::new(0.0, 2.0 * PI * k as f64))
}

/// `h'(z) = (n+1)/z - n/(1+z)`, the same for every branch.
pub fn eval_h_prime(inst: ProblemInstance, z: ComplexValue) -> Result<ComplexValue> {
    ensure_off_poles(z)?;
    let n = f64::from(inst.n());
    Ok((n + 1.0) / z - n / (1.0 + z))
}

/// Branch index of `z` under the principal logarithm: the integer nearest
/// to `Im h_0(z) / 2 pi`.
pub fn branch_index(inst: ProblemInstance, z: ComplexValue) -> Result<i64> {
    ensure_off_poles(z)?;
    Ok((h_principal(inst, z).im / (2.0 * PI)).round() as i64)
}

/// `Log(1 + u)` accurate for small `|u|`.
pub(crate) fn log1p(u: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    let im = u.im.atan2(1.0 + u.re);
    Complex64::new(re, im)
}

/// `|f(z)| / max(|z|^(n+1), |1+z|^n)`, computed without forming either power.
///
/// This is the residual used to certify roots. It is 1 at `z = 0` and
/// `z = -1`, and NaN for non-finite `z`.
pub fn scaled_residual(inst: ProblemInstance, z: ComplexValue) -> f64 {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return f64::NAN;
    }
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(-1.0, 0.0) {
        return 1.0;
    }
    // log((1+z)^n / z^(n+1)) = n Log(1 + 1/z) - Log z  (mod 2 pi i), which
    // avoids the cancellation between two O(n) logarithms
    let d = f64::from(inst.n()) * log1p(z.inv()) - principal_log(z);
    if d.re <= 0.0 {
        expm1(d).norm()
    } else {
        expm1(-d).norm()
    }
}

/// `|f'(z)| / max(|(n+1) z^n|, |n (1+z)^(n-1)|)`.
pub fn scaled_derivative(inst: ProblemInstance, z: ComplexValue) -> Result<f64> {
    ensure_off_poles(z)?;
    let n = inst.n();
    let la = f64::from(n + 1).ln() + f64::from(n) * principal_log(z);
    let lb = f64::from(n).ln() + f64::from(n - 1) * principal_log(1.0 + z);
    Ok(if la.re >= lb.re {
        expm1(lb - la).norm()
    } else {
        expm1(la - lb).norm()
    })
}
