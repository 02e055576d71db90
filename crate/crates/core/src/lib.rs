//! Root analysis for the polynomial family `z^(n+1) = (1+z)^n`.
//!
//! The crate computes every root of one member of the family to a certified
//! residual, classifies them, evaluates closed-form approximants for the
//! positive, negative and non-real root sequences, and checks the
//! root-localization statements (exclusion regions, the lens `R5`, the
//! `w = 1 + 1/z` conjugacy) numerically.
//!
//! ```
//! use rootscope_core::{solve_all_roots, ProblemInstance};
//!
//! let inst = ProblemInstance::new(4).unwrap();
//! let set = solve_all_roots(inst, 1e-10).unwrap();
//! assert_eq!(set.roots.len(), 5);
//! ```

pub mod asymptotics;
pub mod decompositions;
mod error;
pub mod eval;
pub mod lambertw;
pub mod regions;
pub mod solvers;

pub use asymptotics::{
    approx_complex_root, approx_negative_root, approx_positive_root,
    approx_positive_root_lambert, ComplexApproxVariant,
};
pub use decompositions::{
    cartesian_residual, from_w, polar_residual, to_w, verify_region_mapping, w_residual,
    ResidualPair,
};
pub use error::{Error, Result};
pub use eval::{eval_f, eval_f_prime, eval_h, eval_h_prime, scaled_residual, ComplexValue, ProblemInstance};
pub use lambertw::{lambert_w0, lambert_w0_asymptotic, WResult};
pub use regions::{in_region, is_special_n, verify_exclusions, RegionId, RegionReport};
pub use solvers::{
    classify_roots, fit_complex_variant, newton_refine, small_n_oracle, solve_all_roots,
    solve_negative_root, solve_positive_root, Classification, FitReport, RootEstimate, RootSet,
};
