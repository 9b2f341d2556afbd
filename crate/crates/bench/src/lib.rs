//! Fixtures shared by the benchmarks.

/// `m + 1` equispaced points on `[0, 1]`.
pub fn linspace(m: usize) -> Vec<f64> {
    (0..=m).map(|i| i as f64 / m as f64).collect()
}
