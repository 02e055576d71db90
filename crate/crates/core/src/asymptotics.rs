//! Closed-form approximants for the three root sequences.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::ComplexValue;
use crate::lambertw::lambert_w0;

/// Two candidate forms of the first-order correction for the
/// non-real roots near `e^(+-2 pi i/3)`.
///
/// Both share the imaginary correction `-pi/(3n)`; they differ in the real
/// correction, `pi sqrt(3)/n` for [`Statement`](Self::Statement) and
/// `pi sqrt(3)/(3n)` for [`Derivation`](Self::Derivation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexApproxVariant {
    Statement,
    Derivation,
}

impl ComplexApproxVariant {
    pub const ALL: [ComplexApproxVariant; 2] = [Self::Statement, Self::Derivation];

    pub fn id(self) -> &'static str {
        match self {
            Self::Statement => "STATEMENT",
            Self::Derivation => "DERIVATION",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::Statement => "e^(2 pi i/3) (1 + pi sqrt(3)/n - pi i/(3n))",
            Self::Derivation => "e^(2 pi i/3) (1 + pi sqrt(3)/(3n) - pi i/(3n))",
        }
    }

    fn real_correction(self) -> f64 {
        match self {
            Self::Statement => PI * 3f64.sqrt(),
            Self::Derivation => PI * 3f64.sqrt() / 3.0,
        }
    }
}

impl fmt::Display for ComplexApproxVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// `n / (ln n - ln ln n)`.
pub fn approx_positive_root(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!(
            "positive-root approximant needs n >= 2 (got {n})"
        )));
    }
    let nf = n as f64;
    Ok(nf / (nf.ln() - nf.ln().ln()))
}

/// `n / W0(n)`.
pub fn approx_positive_root_lambert(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    let nf = n as f64;
    Ok(nf / lambert_w0(nf)?.value)
}

/// `-1/2 - ln 2 / (4n)` for odd `n`.
///
/// The correction term uses `ln 2`, not `ln n`; only the former matches the
/// computed roots.
pub fn approx_negative_root(n: u64) -> Result<f64> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::domain(format!(
            "negative roots exist for odd n only (got {n})"
        )));
    }
    Ok(-0.5 - LN_2 / (4.0 * n as f64))
}

/// First-order approximant of the non-real root near `e^(sign 2 pi i/3)`.
///
/// `sign = -1` returns the exact conjugate of `sign = +1`.
pub fn approx_complex_root(
    n: u64,
    sign: i8,
    variant: ComplexApproxVariant,
) -> Result<ComplexValue> {
    if n < 2 {
        return Err(Error::domain(format!(
            "complex-root approximant needs n >= 2 (got {n})"
        )));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::domain(format!("sign must be +1 or -1 (got {sign})")));
    }
    let nf = n as f64;
    let upper = Complex64::from_polar(1.0, 2.0 * PI / 3.0)
        * Complex64::new(1.0 + variant.real_correction() / nf, -PI / (3.0 * nf));
    Ok(if sign == 1 { upper } else { upper.conj() })
}
