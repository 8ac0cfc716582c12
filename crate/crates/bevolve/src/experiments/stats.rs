//! Aggregation statistics used by the experiment reports.

use std::collections::BTreeMap;

use crate::theory::log_factorial;
use crate::util::Kahan;

/// Two-sided 97.5% standard-normal quantile.
pub const Z_975: f64 = 1.959963984540054;

/// Sample mean and its standard error (zero for fewer than two values).
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    assert!(!values.is_empty(), "no values to aggregate");
    let n = values.len() as f64;
    let mut sum = Kahan::new();
    for &v in values {
        sum.add(v);
    }
    let mean = sum.value() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let mut ss = Kahan::new();
    for &v in values {
        ss.add((v - mean) * (v - mean));
    }
    let variance = ss.value() / (n - 1.0);
    (mean, (variance / n).sqrt())
}

/// 95% Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_975 * Z_975;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_975 * ((p * (1.0 - p) + z2 / (4.0 * n)) / n).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Counts occurrences of each value.
pub fn histogram(values: impl IntoIterator<Item = u64>) -> BTreeMap<u64, u64> {
    let mut counts = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_insert(0) += 1;
    }
    counts
}

/// Total variation distance between an empirical histogram and a model
/// pmf. Model mass beyond the largest observed value is folded into one
/// unobserved bucket.
pub fn tv_distance_to_pmf(counts: &BTreeMap<u64, u64>, pmf: impl Fn(u64) -> f64) -> f64 {
    let n: u64 = counts.values().sum();
    assert!(n > 0, "empty histogram");
    let max_k = counts.keys().max().copied().unwrap_or(0);
    let mut acc = Kahan::new();
    let mut head_mass = Kahan::new();
    for k in 0..=max_k {
        let freq = counts.get(&k).copied().unwrap_or(0) as f64 / n as f64;
        let p = pmf(k);
        acc.add((freq - p).abs());
        head_mass.add(p);
    }
    acc.add((1.0 - head_mass.value()).max(0.0));
    acc.value() / 2.0
}

/// Total variation distance on the buckets `0, 1, ..., cutoff - 1, >= cutoff`.
pub fn tv_distance_bucketed(
    counts: &BTreeMap<u64, u64>,
    pmf: impl Fn(u64) -> f64,
    cutoff: u64,
) -> f64 {
    assert!(cutoff > 0, "need at least one regular bucket");
    let n: u64 = counts.values().sum();
    assert!(n > 0, "empty histogram");
    let mut acc = Kahan::new();
    let mut head_mass = Kahan::new();
    for k in 0..cutoff {
        let freq = counts.get(&k).copied().unwrap_or(0) as f64 / n as f64;
        let p = pmf(k);
        acc.add((freq - p).abs());
        head_mass.add(p);
    }
    let tail_count: u64 = counts.range(cutoff..).map(|(_, &c)| c).sum();
    let tail_freq = tail_count as f64 / n as f64;
    let tail_mass = (1.0 - head_mass.value()).max(0.0);
    acc.add((tail_freq - tail_mass).abs());
    acc.value() / 2.0
}

/// Poisson probability mass `e^{-lambda} lambda^k / k!`.
pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    assert!(lambda > 0.0 && lambda.is_finite(), "lambda must be positive");
    (-lambda + k as f64 * lambda.ln() - log_factorial(k)).exp()
}
