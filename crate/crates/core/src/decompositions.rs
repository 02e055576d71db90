//! The equation split into real equations, and its conjugacy with the
//! trinomial family `w^(n+1) - w^n - 1 = 0` under `w = 1 + 1/z`.
//!
//! Writing `z = x + iy` and expanding both sides binomially gives two real
//! polynomial equations in `(x, y)`; writing `z = r e^(i theta)` gives two
//! trigonometric sums in `(r, theta)`. Both are evaluated term by term
//! exactly as written, and are meant as cross-checks of [`eval_f`], not as a
//! replacement for it.
//!
//! [`eval_f`]: crate::eval::eval_f

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::eval::{checked_exp, expm1, principal_log, ComplexValue, ProblemInstance};

/// Largest `n` accepted by the termwise expansions.
pub const EXPANSION_MAX_N: u32 = 30;

/// Left minus right side of the two real equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualPair {
    pub real_eq: f64,
    pub imag_eq: f64,
}

/// `C(n, 0), ..., C(n, n)`, exact for `n <= 62`.
pub(crate) fn binomial_row(n: u32) -> Vec<f64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row.into_iter().map(|c| c as f64).collect()
}

fn check_expansion_n(inst: ProblemInstance) -> Result<u32> {
    let n = inst.n();
    if n > EXPANSION_MAX_N {
        return Err(Error::domain(format!(
            "termwise expansion limited to n <= {EXPANSION_MAX_N} (got {n}); use eval_f"
        )));
    }
    Ok(n)
}

/// Real and imaginary parts of `(a + iy)^p`, summed term by term.
fn expand(p: u32, a: f64, y: f64) -> (f64, f64) {
    let c = binomial_row(p);
    let (mut re, mut im) = (0.0, 0.0);
    for (j, &coef) in c.iter().enumerate() {
        let term = coef * a.powi((p as usize - j) as i32) * y.powi(j as i32);
        // i^j cycles 1, i, -1, -i
        match j % 4 {
            0 => re += term,
            1 => im += term,
            2 => re -= term,
            _ => im -= term,
        }
    }
    (re, im)
}

/// Residuals of the Cartesian system at `(x, y)`: the real and imaginary
/// parts of `(x+iy)^(n+1)` minus those of `(1+x+iy)^n`.
pub fn cartesian_residual(inst: ProblemInstance, x: f64, y: f64) -> Result<ResidualPair> {
    let n = check_expansion_n(inst)?;
    let (lre, lim) = expand(n + 1, x, y);
    let (rre, rim) = expand(n, 1.0 + x, y);
    Ok(ResidualPair {
        real_eq: lre - rre,
        imag_eq: lim - rim,
    })
}

/// Residuals of the polar system at `(r, theta)`:
///
/// ```text
/// r^(n+1) cos((n+1) theta) - sum_{m=0}^{n} C(n,m) r^m cos(m theta)
/// r^(n+1) sin((n+1) theta) - sum_{m=1}^{n} C(n,m) r^m sin(m theta)
/// ```
///
/// Inside the unit disk the terms can exceed the sums by a factor of
/// `(1+r)^n / |1+z|^n`, so the terms are accumulated in double-double
/// arithmetic. `cos(m theta)` and `sin(m theta)` come from powers of
/// `cos theta + i sin theta`; their rounding acts as a relative
/// perturbation of `r` and `theta` of order `1e-16`, which the result is
/// insensitive to.
pub fn polar_residual(inst: ProblemInstance, r: f64, theta: f64) -> Result<ResidualPair> {
    let n = check_expansion_n(inst)?;
    if !(r > 0.0) || !r.is_finite() || !theta.is_finite() {
        return Err(Error::domain(format!(
            "polar residual needs finite r > 0 and finite theta (got r = {r}, theta = {theta})"
        )));
    }
    let (s1, c1) = theta.sin_cos();
    let one = TwoFloat::from(1.0);
    let zero = TwoFloat::from(0.0);
    let (mut rm, mut cm, mut sm) = (one, one, zero);
    let (mut cos_sum, mut sin_sum) = (zero, zero);
    for (m, &coef) in binomial_row(n).iter().enumerate() {
        let term = rm * coef;
        cos_sum += term * cm;
        if m >= 1 {
            sin_sum += term * sm;
        }
        rm = rm * r;
        (cm, sm) = (cm * c1 - sm * s1, sm * c1 + cm * s1);
    }
    // rm, cm, sm have advanced to r^(n+1), cos((n+1) theta), sin((n+1) theta)
    Ok(ResidualPair {
        real_eq: f64::from(rm * cm - cos_sum),
        imag_eq: f64::from(rm * sm - sin_sum),
    })
}

/// Number of sign changes of the real polar equation along `theta` fixed,
/// sampled at `points` evenly spaced radii in `(r_lo, r_hi]`.
pub fn polar_sign_changes(
    inst: ProblemInstance,
    theta: f64,
    r_lo: f64,
    r_hi: f64,
    points: usize,
) -> Result<usize> {
    if !(r_lo >= 0.0 && r_hi > r_lo) || points < 2 {
        return Err(Error::domain(format!(
            "need 0 <= r_lo < r_hi and at least two points (got {r_lo}, {r_hi}, {points})"
        )));
    }
    let step = (r_hi - r_lo) / points as f64;
    let mut changes = 0;
    let mut prev: Option<bool> = None;
    for j in 1..=points {
        let v = polar_residual(inst, r_lo + step * j as f64, theta)?.real_eq;
        if v == 0.0 {
            continue;
        }
        let negative = v < 0.0;
        if prev.is_some_and(|p| p != negative) {
            changes += 1;
        }
        prev = Some(negative);
    }
    Ok(changes)
}

/// `w = 1 + 1/z`.
pub fn to_w(z: ComplexValue) -> Result<ComplexValue> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("z = 0 has no image under w = 1 + 1/z"));
    }
    Ok(1.0 + z.inv())
}

/// `z = 1/(w - 1)`, the inverse of [`to_w`].
pub fn from_w(w: ComplexValue) -> Result<ComplexValue> {
    if w == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("w = 1 has no preimage under z = 1/(w - 1)"));
    }
    Ok((w - 1.0).inv())
}

/// `w^(n+1) - w^n - 1`, formed as `w^n (w - 1) - 1` in log space so that it
/// keeps full relative accuracy near roots for large `n`.
pub fn w_residual(inst: ProblemInstance, w: ComplexValue) -> Result<ComplexValue> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::domain(format!("non-finite argument {w}")));
    }
    let zero = Complex64::new(0.0, 0.0);
    if w == zero || w == Complex64::new(1.0, 0.0) {
        return Ok(Complex64::new(-1.0, 0.0));
    }
    let log = f64::from(inst.n()) * principal_log(w) + principal_log(w - 1.0);
    if log.re <= 1.0 {
        Ok(expm1(log))
    } else {
        Ok(checked_exp(log)? - 1.0)
    }
}

/// Sign of `v` with everything within `tol` of zero counted as zero.
fn sign(v: f64, tol: f64) -> i8 {
    if v > tol {
        1
    } else if v < -tol {
        -1
    } else {
        0
    }
}

const MAPPING_TOL: f64 = 1e-9;

/// Check one point against the six rows of the region correspondence.
fn check_mapping(z: Complex64) -> Result<()> {
    let w = to_w(z)?;
    // |z| vs 1 against |w - 1| vs 1: opposite sides, or both on the circle
    let s_mod = sign(z.norm() - 1.0, MAPPING_TOL);
    let s_w = sign((w - 1.0).norm() - 1.0, MAPPING_TOL);
    if s_mod != -s_w {
        let rule = match s_mod {
            0 => "|z| = 1 <=> |w-1| = 1",
            1 => "|z| > 1 <=> |w-1| < 1",
            _ => "|z| < 1 <=> |w-1| > 1",
        };
        return Err(Error::MappingViolation { z, rule: rule.into() });
    }
    // |z + 1| vs 1 against Re w vs 1/2: same side
    let s_shift = sign((z + 1.0).norm() - 1.0, MAPPING_TOL);
    let s_re = sign(w.re - 0.5, MAPPING_TOL);
    if s_shift != s_re {
        let rule = match s_shift {
            0 => "|z+1| = 1 <=> Re w = 1/2",
            1 => "|z+1| > 1 <=> Re w > 1/2",
            _ => "|z+1| < 1 <=> Re w < 1/2",
        };
        return Err(Error::MappingViolation { z, rule: rule.into() });
    }
    Ok(())
}

/// Check the six region correspondences of `w = 1 + 1/z` on `samples`
/// seeded pseudo-random points.
///
/// One point in five is placed exactly on `|z| = 1` and one in five on
/// `|z + 1| = 1`, so the equality rows are exercised; the rest are drawn
/// log-uniformly in modulus from the annulus `10^-2 <= |z| <= 10^2`.
/// Returns `Ok(true)` when every point agrees and the first counterexample
/// as [`Error::MappingViolation`] otherwise.
pub fn verify_region_mapping(samples: usize, seed: u64) -> Result<bool> {
    if samples == 0 {
        return Err(Error::domain("at least one sample is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 0..samples {
        let angle = rng.gen_range(-PI..PI);
        let z = match j % 5 {
            0 => Complex64::from_polar(1.0, angle),
            1 => Complex64::from_polar(1.0, angle) - 1.0,
            _ => Complex64::from_polar(10f64.powf(rng.gen_range(-2.0..2.0)), angle),
        };
        if z == Complex64::new(0.0, 0.0) {
            continue;
        }
        check_mapping(z)?;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_f;
    use approx::assert_abs_diff_eq;

    const PHI: f64 = 1.618_033_988_749_895;

    fn inst(n: u32) -> ProblemInstance {
        ProblemInstance::new(n).unwrap()
    }

    #[test]
    fn cartesian_examples() {
        let r = cartesian_residual(inst(1), PHI, 0.0).unwrap();
        assert_abs_diff_eq!(r.real_eq, 0.0, epsilon = 1e-14);
        assert_eq!(r.imag_eq, 0.0);

        let r = cartesian_residual(inst(4), -0.5, 3f64.sqrt() / 2.0).unwrap();
        assert_abs_diff_eq!(r.real_eq, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.imag_eq, 0.0, epsilon = 1e-14);

        // i^3 - (1+i)^2 = -i - 2i
        let r = cartesian_residual(inst(2), 0.0, 1.0).unwrap();
        assert_eq!(r.real_eq, 0.0);
        assert_eq!(r.imag_eq, -3.0);

        assert!(matches!(cartesian_residual(inst(31), 0.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn cartesian_matches_eval_f() {
        for n in 1..=20 {
            for &(x, y) in &[(0.3, -1.7), (-2.5, 3.1), (3.9, 0.2), (-0.5, 0.8)] {
                let r = cartesian_residual(inst(n), x, y).unwrap();
                let f = eval_f(inst(n), Complex64::new(x, y)).unwrap();
                let z: Complex64 = Complex64::new(x, y);
                let scale = z.norm().powi(n as i32 + 1).max((1.0 + z).norm().powi(n as i32)).max(1.0);
                assert!((r.real_eq - f.re).abs() <= 1e-9 * scale, "n = {n}");
                assert!((r.imag_eq - f.im).abs() <= 1e-9 * scale, "n = {n}");
            }
        }
    }

    #[test]
    fn polar_examples() {
        let r = polar_residual(inst(4), 1.0, 2.0 * PI / 3.0).unwrap();
        assert_abs_diff_eq!(r.real_eq, 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(r.imag_eq, 0.0, epsilon = 1e-13);

        let r = polar_residual(inst(1), PHI, 0.0).unwrap();
        assert_abs_diff_eq!(r.real_eq, 0.0, epsilon = 1e-14);
        assert_eq!(r.imag_eq, 0.0);

        let r = polar_residual(inst(2), 2.147_899_035_704_787, 0.0).unwrap();
        assert_abs_diff_eq!(r.real_eq, 0.0, epsilon = 1e-12);

        assert!(matches!(polar_residual(inst(3), 0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(polar_residual(inst(31), 1.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn polar_keeps_accuracy_where_terms_cancel() {
        // near z = -1/2 the terms are ~3^n times larger than the sums
        let n = 20;
        let z = Complex64::new(-0.490_713_062_981_976_5, -0.004_363_504_634_477_877);
        let f = eval_f(inst(n), z).unwrap();
        let p = polar_residual(inst(n), z.norm(), z.arg()).unwrap();
        let scale = (1.0 + z).norm().powi(n as i32);
        assert!((p.real_eq - f.re).abs() <= 1e-12 * scale);
        assert!((p.imag_eq - f.im).abs() <= 1e-12 * scale);
    }

    #[test]
    fn polar_sign_changes_on_the_real_axis() {
        for n in 1..=20 {
            let i = inst(n);
            assert_eq!(polar_sign_changes(i, 0.0, 1.0, 2.0 * f64::from(n), 4000).unwrap(), 1, "n = {n}");
            // along theta = pi the real equation reads (-r)^(n+1) = (1-r)^n,
            // which has a root in (0, 1) only when n is odd
            let expected = if n % 2 == 1 { 1 } else { 0 };
            assert_eq!(polar_sign_changes(i, PI, 0.0, 1.0, 4000).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn real_polar_equation_can_vanish_off_the_axis_outside_the_unit_circle() {
        // n = 4, theta = pi/2: r^5 cos(5 pi/2) = 0 and the right side is
        // 1 - 6 r^2 + r^4, which vanishes at r = 1 + sqrt 2
        let r = polar_residual(inst(4), 1.0 + 2f64.sqrt(), PI / 2.0).unwrap();
        assert_abs_diff_eq!(r.real_eq, 0.0, epsilon = 1e-12);
        assert!(polar_sign_changes(inst(4), PI / 2.0, 1.0, 50.0, 5000).unwrap() >= 1);
        // n = 1, theta = 3 pi/4, r = sqrt 2
        let r = polar_residual(inst(1), 2f64.sqrt(), 3.0 * PI / 4.0).unwrap();
        assert_abs_diff_eq!(r.real_eq, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn w_transform_examples() {
        let phi = Complex64::new(PHI, 0.0);
        assert!((to_w(phi).unwrap() - phi).norm() < 1e-15);
        let e = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((to_w(e).unwrap() - Complex64::from_polar(1.0, -PI / 3.0)).norm() < 1e-15);
        assert_eq!(to_w(Complex64::new(-0.5, 0.0)).unwrap(), Complex64::new(-1.0, 0.0));
        assert!(matches!(to_w(Complex64::new(0.0, 0.0)), Err(Error::Domain(_))));

        assert!((from_w(phi).unwrap() - phi).norm() < 1e-15);
        assert_eq!(from_w(Complex64::new(2.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(from_w(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(-1.0, 0.0));
        assert!(matches!(from_w(Complex64::new(1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let z = Complex64::from_polar(10f64.powf(rng.gen_range(-3.0..3.0)), rng.gen_range(-PI..PI));
            let back = from_w(to_w(z).unwrap()).unwrap();
            assert!((back - z).norm() <= 1e-12 * z.norm());
        }
    }

    #[test]
    fn w_residual_examples() {
        let r = w_residual(inst(1), Complex64::new(PHI, 0.0)).unwrap();
        assert!(r.norm() < 1e-15);
        let r = w_residual(inst(4), Complex64::from_polar(1.0, -PI / 3.0)).unwrap();
        assert!(r.norm() < 1e-14);
        assert_eq!(w_residual(inst(2), Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(-1.0, 0.0));
        let w = Complex64::new(1.7, -0.4);
        let direct = w.powu(6) - w.powu(5) - 1.0;
        assert!((w_residual(inst(5), w).unwrap() - direct).norm() < 1e-13 * direct.norm());
    }

    #[test]
    fn mapping_examples_and_sampling() {
        assert!(check_mapping(Complex64::new(2.0, 0.0)).is_ok());
        assert!(check_mapping(Complex64::from_polar(1.0, PI / 4.0)).is_ok());
        assert!(check_mapping(Complex64::new(-0.5, 10.0)).is_ok());
        assert!(verify_region_mapping(2000, 11).unwrap());
        assert!(matches!(verify_region_mapping(0, 1), Err(Error::Domain(_))));
    }
}
