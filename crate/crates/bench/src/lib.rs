//! Fixtures shared by the benchmarks.

use simons_core::sampling::sample_points;
use simons_core::{build_calabi, ChartPoint, HarmonicImmersion};

pub const DEGREES: [i64; 3] = [2, 3, 4];

/// The degree-`s` immersion and `n` seeded sample points.
pub fn fixture(s: i64, n: usize) -> (HarmonicImmersion, Vec<ChartPoint>) {
    (build_calabi(s).expect("valid degree"), sample_points(n, 42))
}
