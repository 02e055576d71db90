//! Membership predicates for the five regions of the root-localization
//! theorems and a checker that runs every theorem against a root set.
//!
//! | region | definition | claim |
//! |--------|------------|-------|
//! | `R1` | `(|z| - 1)(|z+1| - 1) < 0` | root-free |
//! | `R2` | `|z+1| > 1`, `Re z < -1/2` | root-free |
//! | `R3` | `|z+1| < 1`, `Re z > -1/2` | root-free |
//! | `R4` | `|z| > 1`, `Re z > -1/2` | no non-real roots |
//! | `R5` | `|z| <= 1`, `Re z <= -1/2` (closed) | holds every root but the positive one |

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::eval::ComplexValue;
use crate::solvers::{RootKind, RootSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionId {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl RegionId {
    pub const ALL: [RegionId; 5] = [Self::R1, Self::R2, Self::R3, Self::R4, Self::R5];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::R1 => "R1",
            Self::R2 => "R2",
            Self::R3 => "R3",
            Self::R4 => "R4",
            Self::R5 => "R5",
        }
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Slack on the closed region so that boundary points such as
/// `e^(2 pi i/3)`, whose real part rounds to just above `-1/2`, stay inside.
const ROUNDING: f64 = 4.0 * f64::EPSILON;

/// Whether `z` lies in region `id`.
///
/// For the open regions every strict inequality must hold with at least
/// `margin` to spare, so points within `margin` of the boundary are
/// outside. The closed region `R5` is widened by `margin` instead, so points
/// within `margin` of it count as members. `margin = 0` gives the literal
/// predicates, up to a few ulps of slack on `R5`.
pub fn in_region(id: RegionId, z: ComplexValue, margin: f64) -> bool {
    let m = margin.max(0.0);
    let a = z.norm();
    let b = (z + 1.0).norm();
    match id {
        RegionId::R1 => (a < 1.0 - m && b > 1.0 + m) || (a > 1.0 + m && b < 1.0 - m),
        RegionId::R2 => b > 1.0 + m && z.re < -0.5 - m,
        RegionId::R3 => b < 1.0 - m && z.re > -0.5 + m,
        RegionId::R4 => a > 1.0 + m && z.re > -0.5 + m,
        RegionId::R5 => a <= 1.0 + m + ROUNDING && z.re <= -0.5 + m + ROUNDING,
    }
}

/// Theorem check results for one root set.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionReport {
    pub n: u32,
    /// Every root found where a theorem says none can be. `R5` entries are
    /// roots that should be in `R5` but are not.
    pub violations: Vec<(RegionId, ComplexValue)>,
    /// Roots other than the positive one that lie in `R5`.
    pub r5_members: usize,
    /// Roots within `margin` of `e^(+-2 pi i/3)`.
    pub boundary_roots: Vec<ComplexValue>,
}

impl RegionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_in(&self, id: RegionId) -> usize {
        self.violations.iter().filter(|(r, _)| *r == id).count()
    }
}

/// Check every root of `rs` against the five region theorems.
pub fn verify_exclusions(rs: &RootSet, margin: f64) -> RegionReport {
    let corner = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut violations = Vec::new();
    let mut r5_members = 0;
    let mut boundary_roots = Vec::new();
    for root in &rs.roots {
        let z = root.value;
        let kind = root.kind();
        for id in [RegionId::R1, RegionId::R2, RegionId::R3] {
            if in_region(id, z, margin) {
                violations.push((id, z));
            }
        }
        if kind == RootKind::NonReal && in_region(RegionId::R4, z, margin) {
            violations.push((RegionId::R4, z));
        }
        if kind != RootKind::Positive {
            if in_region(RegionId::R5, z, margin) {
                r5_members += 1;
            } else {
                violations.push((RegionId::R5, z));
            }
        }
        if (z - corner).norm() <= margin || (z - corner.conj()).norm() <= margin {
            boundary_roots.push(z);
        }
    }
    RegionReport {
        n: rs.n,
        violations,
        r5_members,
        boundary_roots,
    }
}

/// `n = 4, 10, 16, ...`: the `n` for which `e^(+-2 pi i/3)` are roots.
pub fn is_special_n(n: u32) -> bool {
    n % 6 == 4
}
