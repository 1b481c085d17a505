//! Seeded chart sampling. Every draw comes from a ChaCha8 stream, so runs
//! with the same seed are reproducible across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::descriptor::{AxisKind, IsoDescriptor};
use crate::scalar::{lit, Real};

/// Seeded generator used throughout.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn axis_value<T: Real>(kind: AxisKind, fraction: f64) -> T {
    let (a, b) = kind.range::<T>();
    a + (b - a) * lit(fraction)
}

/// Jittered tensor-product samples: each chart axis is cut into `per_dim`
/// strata and one point is drawn per cell, `per_dim^n` points in all.
pub fn stratified_chart_samples<T: Real>(d: &IsoDescriptor<T>, per_dim: usize, seed: u64) -> Vec<Vec<T>> {
    let axes = d.axes();
    let mut g = rng(seed);
    let total = per_dim.pow(axes.len() as u32);
    (0..total)
        .map(|mut k| {
            let mut u = vec![T::zero(); axes.len()];
            for (i, &kind) in axes.iter().enumerate().rev() {
                let cell = k % per_dim;
                k /= per_dim;
                let f = (cell as f64 + g.gen::<f64>()) / per_dim as f64;
                u[i] = axis_value(kind, f);
            }
            u
        })
        .collect()
}

/// `count` chart points drawn uniformly from the sampling box of each axis.
pub fn random_chart_points<T: Real>(d: &IsoDescriptor<T>, count: usize, seed: u64) -> Vec<Vec<T>> {
    let axes = d.axes();
    let mut g = rng(seed);
    (0..count)
        .map(|_| axes.iter().map(|&k| axis_value(k, g.gen::<f64>())).collect())
        .collect()
}

/// `count` times drawn uniformly from `[lo, hi)`.
pub fn random_times<T: Real>(lo: T, hi: T, count: usize, seed: u64) -> Vec<T> {
    let mut g = rng(seed);
    (0..count).map(|_| lo + (hi - lo) * lit(g.gen::<f64>())).collect()
}
