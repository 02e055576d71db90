//! Cross-check for [`solve_all_roots`] that finds every root at once instead
//! of one branch at a time: the polynomial is expanded with exact binomial
//! coefficients and all roots are located together by Aberth-Ehrlich
//! iteration, then polished by Newton's method on the expanded coefficients.
//!
//! Near `Re z = -1/2` the monomial terms exceed the polynomial's value by a
//! factor of about `3^n`, so the expanded form alone cannot certify those
//! roots to `1e-10`. Each root therefore gets a final [`newton_refine`] pass
//! started from the Aberth position, which is kept only if it stays close to
//! that position.
//!
//! [`solve_all_roots`]: super::solve_all_roots

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::decompositions::binomial_row;
use crate::error::{Error, Result};
use crate::eval::{branch_index, scaled_residual, ProblemInstance};

use super::newton::newton_refine;
use super::{canonical_order, RootEstimate, RootSet};

/// Largest `n` whose binomial coefficients the oracle accepts.
pub const ORACLE_MAX_N: u32 = 25;

const ABERTH_MAX_ITER: usize = 500;
const POLISH_ITER: usize = 8;
const REFINE_TOL: f64 = 1e-12;
const REFINE_MAX_ITER: usize = 20;
/// A refined root further than this from its Aberth position has jumped to
/// a different root and is discarded.
const REFINE_MAX_MOVE: f64 = 1e-4;

/// Coefficients of `z^(n+1) - sum_s C(n, s) z^s`, highest degree first.
fn expanded_coefficients(n: u32) -> Vec<f64> {
    // C(n, s) = C(n, n - s), so the row can be read in either direction
    let mut coeffs = vec![1.0];
    coeffs.extend(binomial_row(n).into_iter().map(|c| -c));
    coeffs
}

/// Value and derivative by Horner's rule.
fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(coeffs[0], 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in &coeffs[1..] {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Fujiwara's bound on the moduli of the roots of a monic polynomial.
fn root_radius(coeffs: &[f64]) -> f64 {
    let degree = coeffs.len() - 1;
    (1..=degree)
        .map(|i| {
            let a = coeffs[i].abs();
            if i == degree {
                (a / 2.0).powf(1.0 / i as f64)
            } else {
                a.powf(1.0 / i as f64)
            }
        })
        .fold(0.0, f64::max)
        * 2.0
}

fn aberth(coeffs: &[f64]) -> (Vec<Complex64>, usize) {
    let degree = coeffs.len() - 1;
    let radius = 0.5 * root_radius(coeffs);
    // rotated off the real axis so no two starting points are conjugate
    let mut z: Vec<Complex64> = (0..degree)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / degree as f64 + 0.4))
        .collect();
    for it in 1..=ABERTH_MAX_ITER {
        let mut largest = 0.0f64;
        for j in 0..degree {
            let (p, dp) = horner(coeffs, z[j]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&k| k != j)
                .map(|k| (z[j] - z[k]).inv())
                .sum();
            let w = ratio / (1.0 - ratio * repulsion);
            z[j] -= w;
            largest = largest.max(w.norm() / z[j].norm().max(1.0));
        }
        if largest <= 1e-14 {
            return (z, it);
        }
    }
    (z, ABERTH_MAX_ITER)
}

fn polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..POLISH_ITER {
        let (p, dp) = horner(coeffs, z);
        if p == Complex64::new(0.0, 0.0) || dp == Complex64::new(0.0, 0.0) {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

/// All roots for `n <= 25` from the expanded polynomial.
pub fn small_n_oracle(inst: ProblemInstance) -> Result<RootSet> {
    let n = inst.n();
    if n > ORACLE_MAX_N {
        return Err(Error::domain(format!(
            "oracle limited to n <= {ORACLE_MAX_N} (got {n})"
        )));
    }
    let coeffs = expanded_coefficients(n);
    let (found, iterations) = aberth(&coeffs);
    let mut roots: Vec<RootEstimate> = found
        .into_iter()
        .map(|z| {
            let mut value = polish(&coeffs, z);
            if value.im.abs() <= 1e-14 * value.norm() {
                value.im = 0.0;
            }
            let mut residual = scaled_residual(inst, value);
            let mut steps = iterations;
            if let Ok(refined) = newton_refine(inst, value, REFINE_TOL, REFINE_MAX_ITER) {
                if (refined.value - value).norm() <= REFINE_MAX_MOVE && refined.residual < residual {
                    value = refined.value;
                    residual = refined.residual;
                    steps += refined.iterations;
                }
            }
            RootEstimate {
                value,
                residual,
                iterations: steps,
                converged: residual <= 1e-10,
                branch_k: branch_index(inst, value).ok(),
            }
        })
        .collect();
    roots.sort_by(canonical_order);
    Ok(RootSet { n, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn inst(n: u32) -> ProblemInstance {
        ProblemInstance::new(n).unwrap()
    }

    #[test]
    fn coefficients() {
        assert_eq!(expanded_coefficients(1), vec![1.0, -1.0, -1.0]);
        assert_eq!(expanded_coefficients(3), vec![1.0, -1.0, -3.0, -3.0, -1.0]);
        let c25 = expanded_coefficients(25);
        assert_eq!(c25[13], -5_200_300.0);
    }

    #[test]
    fn quadratic_matches_closed_form() {
        let rs = small_n_oracle(inst(1)).unwrap();
        let s5 = 5f64.sqrt();
        assert_abs_diff_eq!(rs.roots[0].value.re, (1.0 + s5) / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rs.roots[1].value.re, (1.0 - s5) / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn n3_real_roots_near_plotted_intersections() {
        let rs = small_n_oracle(inst(3)).unwrap();
        assert_eq!(rs.roots.len(), 4);
        assert_abs_diff_eq!(rs.roots[0].value.re, 2.6312, epsilon = 2e-3);
        assert_abs_diff_eq!(rs.roots[1].value.re, -0.5500, epsilon = 2e-3);
        assert!((rs.roots[2].value - rs.roots[3].value.conj()).norm() < 1e-12);
    }

    #[test]
    fn n4_contains_unit_roots() {
        let rs = small_n_oracle(inst(4)).unwrap();
        assert_eq!(rs.roots.len(), 5);
        let e = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!(rs.roots.iter().any(|r| (r.value - e).norm() < 1e-12));
        assert!(rs.roots.iter().any(|r| (r.value - e.conj()).norm() < 1e-12));
    }

    #[test]
    fn every_oracle_root_is_certified() {
        for n in 1..=ORACLE_MAX_N {
            let rs = small_n_oracle(inst(n)).unwrap();
            assert_eq!(rs.roots.len(), n as usize + 1);
            assert!(rs.roots.iter().all(|r| r.converged), "n = {n}");
            assert!(rs.min_pairwise_distance() > 1e-6, "n = {n}");
        }
    }

    #[test]
    fn too_large_n_rejected() {
        assert!(matches!(small_n_oracle(inst(26)), Err(Error::Domain(_))));
    }
}
