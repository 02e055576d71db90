use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use rootscope_core::solvers::{RootEstimate, RootKind, RootSet};
use rootscope_core::{
    approx_complex_root, approx_negative_root, approx_positive_root, classify_roots,
    fit_complex_variant, is_special_n, solve_all_roots, solve_negative_root, solve_positive_root,
    to_w, verify_exclusions, w_residual, ComplexApproxVariant, ProblemInstance, RegionId,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::output::{sci, write_records, Format, OutputRecord};

/// Margin used by the region checks in `verify`.
pub const REGION_MARGIN: f64 = 1e-7;
/// Smallest scaled `|f'|` accepted as a simple root.
pub const SIMPLICITY_FLOOR: f64 = 1e-6;
/// Largest `|w^(n+1) - w^n - 1|` accepted for an image root.
pub const CONJUGACY_TOL: f64 = 1e-7;
/// Variant used for the complex approximant columns of `solve`.
pub const DEFAULT_VARIANT: ComplexApproxVariant = ComplexApproxVariant::Derivation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Positive,
    Negative,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must be positive (got {tol})")))
    }
}

fn record(root: &RootEstimate, n: u32, approx: Option<Complex64>) -> OutputRecord {
    OutputRecord {
        n,
        root_re: root.value.re,
        root_im: root.value.im,
        kind: root.kind().into(),
        residual: root.residual,
        approx_value_re: approx.map(|a| a.re),
        approx_value_im: approx.map(|a| a.im),
        abs_deviation: approx.map(|a| (root.value - a).norm()),
    }
}

/// Records for a full root set. Real roots carry their approximants; of the
/// non-real roots, only the one nearest each complex approximant does.
fn set_records(set: &RootSet) -> Result<Vec<OutputRecord>> {
    let n = set.n;
    let complex: Vec<Complex64> = if n >= 2 {
        [1i8, -1]
            .iter()
            .map(|&s| approx_complex_root(u64::from(n), s, DEFAULT_VARIANT))
            .collect::<std::result::Result<_, _>>()?
    } else {
        Vec::new()
    };
    let nearest: Vec<Option<usize>> = complex
        .iter()
        .map(|a| {
            set.roots
                .iter()
                .enumerate()
                .filter(|(_, r)| r.kind() == RootKind::NonReal)
                .min_by(|(_, x), (_, y)| (x.value - a).norm().total_cmp(&(y.value - a).norm()))
                .map(|(i, _)| i)
        })
        .collect();
    set.roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let approx = match r.kind() {
                RootKind::Positive if n >= 2 => {
                    Some(Complex64::new(approx_positive_root(u64::from(n))?, 0.0))
                }
                RootKind::Negative => Some(Complex64::new(approx_negative_root(u64::from(n))?, 0.0)),
                RootKind::NonReal => nearest
                    .iter()
                    .position(|&j| j == Some(i))
                    .map(|which| complex[which]),
                _ => None,
            };
            Ok(record(r, n, approx))
        })
        .collect()
}

/// Every root of one instance, in canonical order.
pub fn solve(n: u32, tol: f64, format: Format, out: &mut dyn Write) -> Result<()> {
    check_tol(tol)?;
    let set = solve_all_roots(ProblemInstance::new(n)?, tol)?;
    write_records(&set_records(&set)?, format, out)
}

/// One real root per `n` against its closed-form approximant.
pub fn table(which: Which, ns: &[u32], tol: f64, format: Format, out: &mut dyn Write) -> Result<()> {
    check_tol(tol)?;
    if ns.is_empty() {
        return Err(CliError::Usage("--ns needs at least one value".into()));
    }
    let mut records = Vec::with_capacity(ns.len());
    for &n in ns {
        let (root, approx) = match which {
            Which::Positive => {
                if n < 2 {
                    return Err(CliError::Usage(format!(
                        "the positive-root approximant needs n >= 2 (got {n})"
                    )));
                }
                let inst = ProblemInstance::new(n)?;
                (solve_positive_root(inst, tol)?, approx_positive_root(u64::from(n))?)
            }
            Which::Negative => {
                if n % 2 == 0 {
                    return Err(CliError::Usage(format!(
                        "Negative roots exist for odd n only (got n = {n})"
                    )));
                }
                let inst = ProblemInstance::new(n)?;
                (solve_negative_root(inst, tol)?, approx_negative_root(u64::from(n))?)
            }
        };
        records.push(record(&root, n, Some(Complex64::new(approx, 0.0))));
    }
    write_records(&records, format, out)
}

/// The checks `verify` runs for every `n`, in report order.
pub const CHECKS: [&str; 11] = [
    "root set complete",
    "root count",
    "classification",
    "R1 root-free",
    "R2 root-free",
    "R3 root-free",
    "R4 no non-real roots",
    "R5 contains all but the positive root",
    "simple roots",
    "e^(2 pi i/3) root iff n = 4 mod 6",
    "w = 1 + 1/z maps roots to roots",
];
const SOLVER: usize = 0;
const COUNT: usize = 1;
const CLASSIFICATION: usize = 2;
const SIMPLE: usize = 8;
const SPECIAL: usize = 9;
const CONJUGACY: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub n: u32,
    pub check: &'static str,
    pub z_re: Option<f64>,
    pub z_im: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone)]
struct NReport {
    n: u32,
    failures: Vec<Counterexample>,
    failed: [bool; CHECKS.len()],
    boundary_roots: Vec<Complex64>,
}

fn check_one(n: u32, tol: f64) -> NReport {
    let mut rep = NReport {
        n,
        failures: Vec::new(),
        failed: [false; CHECKS.len()],
        boundary_roots: Vec::new(),
    };
    let fail = |rep: &mut NReport, idx: usize, z: Option<Complex64>, detail: String| {
        rep.failed[idx] = true;
        rep.failures.push(Counterexample {
            n,
            check: CHECKS[idx],
            z_re: z.map(|z| z.re),
            z_im: z.map(|z| z.im),
            detail,
        });
    };
    let inst = match ProblemInstance::new(n) {
        Ok(i) => i,
        Err(e) => {
            fail(&mut rep, SOLVER, None, e.to_string());
            return rep;
        }
    };
    let set = match solve_all_roots(inst, tol) {
        Ok(set) => set,
        Err(e) => {
            fail(&mut rep, SOLVER, None, e.to_string());
            return rep;
        }
    };
    let expected = n as usize + 1;
    if set.roots.len() != expected || set.min_pairwise_distance() <= 1e-8 {
        fail(
            &mut rep,
            COUNT,
            None,
            format!("{} roots, closest pair {:e}", set.roots.len(), set.min_pairwise_distance()),
        );
    }
    if let Err(e) = classify_roots(&set) {
        fail(&mut rep, CLASSIFICATION, None, e.to_string());
    }
    let report = verify_exclusions(&set, REGION_MARGIN);
    for (id, z) in &report.violations {
        let idx = match id {
            RegionId::R1 => 3,
            RegionId::R2 => 4,
            RegionId::R3 => 5,
            RegionId::R4 => 6,
            RegionId::R5 => 7,
        };
        let detail = format!("|z| = {:.9}, Re z = {:.9}", z.norm(), z.re);
        fail(&mut rep, idx, Some(*z), detail);
    }
    match set.simplicity_margin() {
        Ok(m) if m > SIMPLICITY_FLOOR => {}
        Ok(m) => fail(&mut rep, SIMPLE, None, format!("scaled |f'| = {m:e}")),
        Err(e) => fail(&mut rep, SIMPLE, None, e.to_string()),
    }
    let corner = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let has_corner = [corner, corner.conj()]
        .iter()
        .all(|c| set.roots.iter().any(|r| (r.value - c).norm() <= 1e-9));
    if has_corner != is_special_n(n) {
        fail(
            &mut rep,
            SPECIAL,
            Some(corner),
            format!("root at e^(2 pi i/3): {has_corner}, n mod 6 = {}", n % 6),
        );
    }
    for r in &set.roots {
        let res = to_w(r.value).and_then(|w| w_residual(inst, w)).map(|v| v.norm());
        match res {
            Ok(v) if v <= CONJUGACY_TOL => {}
            Ok(v) => fail(&mut rep, CONJUGACY, Some(r.value), format!("|w^(n+1) - w^n - 1| = {v:e}")),
            Err(e) => fail(&mut rep, CONJUGACY, Some(r.value), e.to_string()),
        }
    }
    rep.boundary_roots = report.boundary_roots;
    rep
}

/// Cap on worker threads from `ROOTSCOPE_THREADS`, `None` when unset.
pub fn thread_limit() -> Result<Option<usize>> {
    match std::env::var("ROOTSCOPE_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(Some(t)),
            _ => Err(CliError::Usage(format!(
                "ROOTSCOPE_THREADS must be a positive integer (got {v:?})"
            ))),
        },
    }
}

/// Run every theorem check for `n = 1..=n_max`, print the per-check pass
/// counts, and fail with the number of failed checks if any.
pub fn verify(n_max: u32, tol: f64, out: &mut dyn Write) -> Result<()> {
    check_tol(tol)?;
    if !(1..=300).contains(&n_max) {
        return Err(CliError::Usage(format!("--n-max must be in 1..=300 (got {n_max})")));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_limit()? {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    let reports: Vec<NReport> = pool.install(|| (1..=n_max).into_par_iter().map(|n| check_one(n, tol)).collect());

    writeln!(out, "verify n = 1..={n_max}, tol = {tol:e}, region margin = {REGION_MARGIN:e}")?;
    let width = CHECKS.iter().map(|c| c.len()).max().unwrap_or(0);
    for (idx, name) in CHECKS.iter().enumerate() {
        let failed: Vec<u32> = reports.iter().filter(|r| r.failed[idx]).map(|r| r.n).collect();
        let passed = reports.len() - failed.len();
        write!(out, "{name:<width$}  {passed:>3}/{} passed", reports.len())?;
        if let Some(first) = failed.first() {
            write!(out, ", first failure at n = {first}")?;
        }
        writeln!(out)?;
    }
    for r in reports.iter().filter(|r| !r.boundary_roots.is_empty()) {
        let pts: Vec<String> = r
            .boundary_roots
            .iter()
            .map(|z| {
                let sign = if z.im.is_sign_negative() { "-" } else { "+" };
                format!("{}{sign}{}i", sci(z.re), sci(z.im.abs()))
            })
            .collect();
        writeln!(out, "boundary roots at n = {}: {}", r.n, pts.join(", "))?;
    }
    let failures: Vec<&Counterexample> = reports.iter().flat_map(|r| &r.failures).collect();
    writeln!(out, "{} violations", failures.len())?;
    let Some(first) = failures.first() else {
        return Ok(());
    };
    writeln!(out, "first counterexample: {}", serde_json::to_string(first)?)?;
    if let Some(f) = failures.iter().find(|f| f.check == CHECKS[SOLVER]) {
        return Err(CliError::Solver {
            n: f.n,
            message: f.detail.clone(),
        });
    }
    Err(CliError::Violations { count: failures.len() })
}

#[derive(Debug, Serialize)]
struct FitJson<'a> {
    rows: Vec<FitRowJson>,
    mean_abs_error: BTreeMap<&'a str, f64>,
    winner: &'a str,
}

#[derive(Debug, Serialize)]
struct FitRowJson {
    n: u32,
    nearest_re: f64,
    nearest_im: f64,
    deviation_from_limit: f64,
    err_statement: f64,
    err_derivation: f64,
}

/// Both complex-root approximant readings against the computed roots.
pub fn fit(n_min: u32, n_max: u32, format: Format, out: &mut dyn Write) -> Result<()> {
    let report = fit_complex_variant(n_min, n_max)?;
    let [a, b] = ComplexApproxVariant::ALL;
    match format {
        Format::Csv => {
            writeln!(out, "n,nearest_re,nearest_im,deviation_from_limit,err_{},err_{}", a.id(), b.id())?;
            for r in &report.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.n,
                    sci(r.nearest.re),
                    sci(r.nearest.im),
                    sci(r.deviation_from_limit),
                    sci(r.error(a)),
                    sci(r.error(b))
                )?;
            }
            writeln!(out, "# mean abs error {}: {}", a.id(), sci(report.mean_error(a)))?;
            writeln!(out, "# mean abs error {}: {}", b.id(), sci(report.mean_error(b)))?;
            writeln!(out, "# winner: {} ({})", report.winner.id(), report.winner.description())?;
        }
        Format::Json => {
            let r = crate::output::rounded;
            let json = FitJson {
                rows: report
                    .rows
                    .iter()
                    .map(|row| FitRowJson {
                        n: row.n,
                        nearest_re: r(row.nearest.re),
                        nearest_im: r(row.nearest.im),
                        deviation_from_limit: r(row.deviation_from_limit),
                        err_statement: r(row.err_statement),
                        err_derivation: r(row.err_derivation),
                    })
                    .collect(),
                mean_abs_error: BTreeMap::from([
                    (a.id(), r(report.mean_error(a))),
                    (b.id(), r(report.mean_error(b))),
                ]),
                winner: report.winner.id(),
            };
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
