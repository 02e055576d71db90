use num_complex::Complex64;
use pathfinding::kuhn_munkres::kuhn_munkres_min;
use pathfinding::matrix::Matrix;

/// Costs are quantized to integers with this many steps per largest
/// pairwise distance, which keeps row sums well inside `i64`.
const QUANTUM: f64 = 1e12;

/// Minimum-total-distance pairing of `a` with `b`.
///
/// Returns `perm` with `a[i]` paired to `b[perm[i]]`, together with the
/// largest distance of any pair, or `None` if the lengths differ.
pub fn match_roots(a: &[Complex64], b: &[Complex64]) -> Option<(Vec<usize>, f64)> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some((Vec::new(), 0.0));
    }
    let dist = |i: usize, j: usize| (a[i] - b[j]).norm();
    let scale = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .map(|(i, j)| dist(i, j))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let costs = Matrix::from_rows((0..a.len()).map(|i| {
        (0..b.len())
            .map(|j| (dist(i, j) / scale * QUANTUM).round() as i64)
            .collect::<Vec<_>>()
    }))
    .ok()?;
    let (_, perm) = kuhn_munkres_min(&costs);
    let worst = perm
        .iter()
        .enumerate()
        .map(|(i, &j)| dist(i, j))
        .fold(0.0, f64::max);
    Some((perm, worst))
}
