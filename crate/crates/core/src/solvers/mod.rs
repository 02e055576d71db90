//! Root computation: single-root refinement, the two real roots, the complete
//! root set, classification, and an independent small-`n` oracle.

mod complete;
mod fit;
mod matching;
mod newton;
mod oracle;
mod real;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::eval::{scaled_derivative, ComplexValue};

pub use complete::solve_all_roots;
pub use fit::{fit_complex_variant, FitReport, FitRow};
pub use matching::match_roots;
pub use newton::newton_refine;
pub use oracle::small_n_oracle;
pub use real::{solve_negative_root, solve_positive_root};

/// Roots with `|Im z|` at or below this are treated as real.
pub const REAL_AXIS_TOL: f64 = 1e-8;
/// Distance below which two refined roots are considered the same root.
pub const PAIRING_TOL: f64 = 1e-8;

/// One refined root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootEstimate {
    pub value: ComplexValue,
    /// [`scaled_residual`](crate::eval::scaled_residual) at `value`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Principal-branch index of `value`, when it lies off the poles.
    pub branch_k: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    Positive,
    Negative,
    NonReal,
}

impl RootKind {
    pub fn of(z: ComplexValue) -> Self {
        if z.im.abs() > REAL_AXIS_TOL {
            RootKind::NonReal
        } else if z.re > 0.0 {
            RootKind::Positive
        } else {
            RootKind::Negative
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RootKind::Positive => "positive",
            RootKind::Negative => "negative",
            RootKind::NonReal => "nonreal",
        }
    }
}

impl RootEstimate {
    pub fn kind(&self) -> RootKind {
        RootKind::of(self.value)
    }
}

/// Positive root first, then the negative root, then the non-real roots by
/// increasing imaginary part and then real part.
pub(crate) fn canonical_order(a: &RootEstimate, b: &RootEstimate) -> Ordering {
    a.kind()
        .cmp(&b.kind())
        .then(a.value.im.total_cmp(&b.value.im))
        .then(a.value.re.total_cmp(&b.value.re))
}

/// All `n + 1` roots of one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub n: u32,
    pub roots: Vec<RootEstimate>,
}

impl RootSet {
    pub fn values(&self) -> Vec<ComplexValue> {
        self.roots.iter().map(|r| r.value).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i + 1..] {
                best = best.min((a.value - b.value).norm());
            }
        }
        best
    }

    /// Largest distance from a non-real root to the nearest conjugate of
    /// another root; 0 for a set closed under conjugation.
    pub fn conjugation_defect(&self) -> f64 {
        self.roots
            .iter()
            .filter(|r| r.kind() == RootKind::NonReal)
            .map(|r| {
                self.roots
                    .iter()
                    .map(|s| (s.value.conj() - r.value).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    /// Smallest [`scaled_derivative`] over the set: how far every root is
    /// from being a multiple root.
    pub fn simplicity_margin(&self) -> Result<f64> {
        let inst = crate::eval::ProblemInstance::new(self.n)?;
        self.roots
            .iter()
            .map(|r| scaled_derivative(inst, r.value))
            .try_fold(f64::INFINITY, |acc, s| s.map(|s| acc.min(s)))
    }
}

/// Root counts by kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub positive_count: usize,
    pub negative_count: usize,
    pub nonreal_count: usize,
    pub conjugate_pairs: usize,
}

/// Count the roots of `rs` by kind and check the counts against the
/// counting theorems (one positive root, one negative root for odd `n`,
/// `n - (n mod 2)` non-real roots in conjugate pairs).
pub fn classify_roots(rs: &RootSet) -> Result<Classification> {
    let mut positive = 0;
    let mut negative = 0;
    let mut upper = 0;
    let mut lower = 0;
    for r in &rs.roots {
        match r.kind() {
            RootKind::Positive => positive += 1,
            RootKind::Negative => negative += 1,
            RootKind::NonReal if r.value.im > 0.0 => upper += 1,
            RootKind::NonReal => lower += 1,
        }
    }
    let n = rs.n as usize;
    let nonreal = upper + lower;
    let parity = n % 2;
    if positive != 1 || negative != parity || nonreal != n - parity || upper != lower {
        return Err(Error::ClassificationMismatch {
            n: rs.n,
            positive,
            negative,
            nonreal,
        });
    }
    Ok(Classification {
        positive_count: positive,
        negative_count: negative,
        nonreal_count: nonreal,
        conjugate_pairs: upper,
    })
}
