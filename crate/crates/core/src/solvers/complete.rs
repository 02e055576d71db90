use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::ProblemInstance;

use super::newton::{newton_refine, refine_on_branch};
use super::real::{solve_negative_root, solve_positive_root};
use super::{canonical_order, RootEstimate, RootKind, RootSet, PAIRING_TOL};

const MAX_ITER: usize = 100;

/// Radial and angular nudges (in units of the seed spacing) tried when a
/// branch is missing after the first pass.
const BACKFILL_SCALES: [f64; 5] = [1.0, 0.98, 1.02, 0.95, 1.05];
const BACKFILL_TURNS: [f64; 5] = [0.0, 0.25, -0.25, 0.5, -0.5];

/// Angle of the `m`-th root of `w^n (w - 1) = 1` to leading order.
fn seed_angle(n: u32, m: u32) -> f64 {
    (2.0 * PI * f64::from(m) - PI / 2.0) / (f64::from(n) + 0.5)
}

/// Starting point for the root of the original equation that corresponds,
/// under `w = 1 + 1/z`, to the `m`-th root of the trinomial
/// `w^(n+1) - w^n - 1`.
///
/// On `|w| ~ 1` the trinomial reads `w^n (w - 1) = 1`; balancing arguments
/// puts the roots at the angles of [`seed_angle`] and balancing moduli gives
/// `|w| = (2 sin(phi/2))^(-1/n)`.
fn trinomial_seed(n: u32, m: u32, scale: f64, turn: f64) -> Complex64 {
    let spacing = 2.0 * PI / (f64::from(n) + 0.5);
    let phi = seed_angle(n, m) + turn * spacing;
    let radius = (2.0 * (0.5 * phi).sin().abs()).powf(-1.0 / f64::from(n)) * scale;
    let w = Complex64::from_polar(radius, phi);
    (w - 1.0).inv()
}

/// Branch indices of the `n + 1` roots under the principal logarithm:
/// `-floor(n/2) ..= floor(n/2)`, plus `(n+1)/2` for the negative root of
/// odd `n`.
pub(crate) fn expected_branches(n: u32) -> BTreeSet<i64> {
    let half = i64::from(n / 2);
    let mut ks: BTreeSet<i64> = (-half..=half).collect();
    if n % 2 == 1 {
        ks.insert(i64::from(n).div_euclid(2) + 1);
    }
    ks
}

fn is_new(roots: &[RootEstimate], z: Complex64) -> bool {
    roots.iter().all(|r| (r.value - z).norm() > PAIRING_TOL)
}

fn accept_nonreal(roots: &mut Vec<RootEstimate>, est: RootEstimate) -> bool {
    if est.converged && est.kind() == RootKind::NonReal && is_new(roots, est.value) {
        roots.push(est);
        true
    } else {
        false
    }
}

/// Re-seed every missing branch from perturbed trinomial seeds with the
/// branch index forced.
pub(crate) fn back_fill(inst: ProblemInstance, tol: f64, roots: &mut Vec<RootEstimate>) {
    let n = inst.n();
    let found: BTreeSet<i64> = roots.iter().filter_map(|r| r.branch_k).collect();
    let missing: Vec<i64> = expected_branches(n).difference(&found).copied().collect();
    for k in missing {
        if k == 0 || (n % 2 == 1 && k == i64::from(n / 2) + 1) {
            // real roots are solved on the real line, never by seeding
            continue;
        }
        'search: for &scale in &BACKFILL_SCALES {
            for &turn in &BACKFILL_TURNS {
                for m in 1..=n {
                    let seed = trinomial_seed(n, m, scale, turn);
                    // seeds with angle in (0, pi) land in the lower half-plane
                    if (seed.im > 0.0) != (k > 0) {
                        continue;
                    }
                    let Ok(est) = refine_on_branch(inst, seed, Some(k), tol, MAX_ITER) else {
                        continue;
                    };
                    if est.branch_k == Some(k) && accept_nonreal(roots, est) {
                        break 'search;
                    }
                }
            }
        }
    }
}

/// All `n + 1` roots of `z^(n+1) = (1+z)^n`, each with scaled residual at
/// most `tol`.
///
/// The two real roots come from bracketed solves on the real line. Each
/// non-real root is seeded from the asymptotic position of the matching
/// root of the conjugate trinomial `w^(n+1) - w^n - 1` and refined by
/// Newton's method on the branch-indexed logarithmic form. Roots closer
/// than `1e-8` are merged, and branches still missing after the first pass
/// are re-seeded from perturbed positions.
pub fn solve_all_roots(inst: ProblemInstance, tol: f64) -> Result<RootSet> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive (got {tol})")));
    }
    let n = inst.n();
    let mut roots = Vec::with_capacity(n as usize + 1);
    roots.push(solve_positive_root(inst, tol)?);
    if inst.is_odd() {
        roots.push(solve_negative_root(inst, tol)?);
    }
    for m in 1..=n {
        if n % 2 == 1 && 2 * m == n + 1 {
            // angle pi: the negative real root
            continue;
        }
        let seed = trinomial_seed(n, m, 1.0, 0.0);
        if let Ok(est) = newton_refine(inst, seed, tol, MAX_ITER) {
            accept_nonreal(&mut roots, est);
        }
    }

    let expected = n as usize + 1;
    if roots.len() < expected {
        back_fill(inst, tol, &mut roots);
    }
    if roots.len() != expected {
        return Err(Error::IncompleteRootSet {
            n,
            found: roots.len(),
            expected,
        });
    }
    roots.sort_by(canonical_order);
    Ok(RootSet { n, roots })
}
