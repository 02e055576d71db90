use std::f64::consts::PI;

use num_complex::Complex64;

use crate::asymptotics::{approx_complex_root, ComplexApproxVariant};
use crate::error::{Error, Result};
use crate::eval::{ComplexValue, ProblemInstance};

use super::solve_all_roots;

const FIT_TOL: f64 = 1e-10;

/// One `n` of a variant fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitRow {
    pub n: u32,
    /// Computed root nearest `e^(2 pi i/3)`.
    pub nearest: ComplexValue,
    /// `|nearest - e^(2 pi i/3)|`.
    pub deviation_from_limit: f64,
    pub err_statement: f64,
    pub err_derivation: f64,
}

impl FitRow {
    pub fn error(&self, variant: ComplexApproxVariant) -> f64 {
        match variant {
            ComplexApproxVariant::Statement => self.err_statement,
            ComplexApproxVariant::Derivation => self.err_derivation,
        }
    }
}

/// Per-`n` errors of both approximants and the variant with the smaller
/// mean absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub rows: Vec<FitRow>,
    pub mean_statement: f64,
    pub mean_derivation: f64,
    pub winner: ComplexApproxVariant,
}

impl FitReport {
    pub fn mean_error(&self, variant: ComplexApproxVariant) -> f64 {
        match variant {
            ComplexApproxVariant::Statement => self.mean_statement,
            ComplexApproxVariant::Derivation => self.mean_derivation,
        }
    }
}

/// Compare both readings of the complex-root approximant against the
/// computed root nearest `e^(2 pi i/3)` for every `n` in
/// `n_min..=n_max`.
pub fn fit_complex_variant(n_min: u32, n_max: u32) -> Result<FitReport> {
    if !(10 <= n_min && n_min < n_max && n_max <= 300) {
        return Err(Error::domain(format!(
            "fit range must satisfy 10 <= n_min < n_max <= 300 (got {n_min}..{n_max})"
        )));
    }
    let limit = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut rows = Vec::with_capacity((n_max - n_min + 1) as usize);
    for n in n_min..=n_max {
        let set = solve_all_roots(ProblemInstance::new(n)?, FIT_TOL)?;
        let nearest = set
            .values()
            .into_iter()
            .min_by(|a, b| (a - limit).norm().total_cmp(&(b - limit).norm()))
            .expect("root set is never empty");
        let err = |v| approx_complex_root(u64::from(n), 1, v).map(|a| (nearest - a).norm());
        rows.push(FitRow {
            n,
            nearest,
            deviation_from_limit: (nearest - limit).norm(),
            err_statement: err(ComplexApproxVariant::Statement)?,
            err_derivation: err(ComplexApproxVariant::Derivation)?,
        });
    }
    let count = rows.len() as f64;
    let mean_statement = rows.iter().map(|r| r.err_statement).sum::<f64>() / count;
    let mean_derivation = rows.iter().map(|r| r.err_derivation).sum::<f64>() / count;
    let winner = if mean_derivation <= mean_statement {
        ComplexApproxVariant::Derivation
    } else {
        ComplexApproxVariant::Statement
    };
    Ok(FitReport {
        rows,
        mean_statement,
        mean_derivation,
        winner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifty_to_sixty() {
        let report = fit_complex_variant(50, 60).unwrap();
        assert_eq!(report.rows.len(), 11);
        assert!(report.mean_statement < 0.11);
        assert!(report.mean_derivation < 0.05);
        assert_eq!(report.winner, ComplexApproxVariant::Derivation);
    }

    #[test]
    fn deviation_at_one_hundred_is_order_one_over_n() {
        let report = fit_complex_variant(99, 101).unwrap();
        // 100 = 4 mod 6, so e^(2 pi i/3) is itself a root there
        assert!(report.rows[1].deviation_from_limit < 1e-9);
        for row in [report.rows[0], report.rows[2]] {
            assert!(row.deviation_from_limit > 0.1 / 100.0, "n = {}", row.n);
            assert!(row.deviation_from_limit < 10.0 / 100.0, "n = {}", row.n);
        }
    }

    #[test]
    fn bad_ranges() {
        for (a, b) in [(5, 40), (40, 40), (50, 20), (100, 301)] {
            assert!(matches!(fit_complex_variant(a, b), Err(Error::Domain(_))));
        }
    }
}
