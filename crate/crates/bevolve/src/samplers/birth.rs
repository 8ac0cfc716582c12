//! Continuous-time birth embedding of a single urn.
//!
//! Give every vertex of one side an independent birth process: a vertex of
//! current degree `d` gains its next edge at rate `d + rho`. Superposing
//! the `N` processes reproduces the urn exactly — the total rate after `i`
//! births is `i + rho N` and the next birth lands on `w` with probability
//! `(deg w + rho)/(i + rho N)` — while at any fixed clock time `r` the
//! degrees are independent, each negative binomial with shape `rho` and
//! success probability `1 - e^{-r}`. Exchanging "fixed step count" for
//! "fixed clock" costs a stopping-time window, quantified by
//! [`stopping_time_bounds`].

use rand::Rng;

use crate::error::{Error, Result};
use crate::params::{Params, Side};
use crate::samplers::urn::weighted_copy_draw;

/// Degrees of one side observed at a fixed clock time.
#[derive(Clone, Debug)]
pub struct BirthEmbedding {
    degrees: Vec<u64>,
    clock: f64,
}

impl BirthEmbedding {
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Total number of births up to the observation time.
    pub fn total(&self) -> u64 {
        self.degrees.iter().sum()
    }

    /// The observation time.
    pub fn clock(&self) -> f64 {
        self.clock
    }
}

/// Runs the superposed birth process on `count` vertices of weight `rho`
/// up to clock time `horizon`.
pub fn sample_birth_embedding<R: Rng>(
    count: u32,
    rho: f64,
    horizon: f64,
    rng: &mut R,
) -> Result<BirthEmbedding> {
    if count == 0 {
        return Err(Error::invalid("need at least one vertex"));
    }
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::invalid(format!("rho must be positive, got {rho}")));
    }
    if !(horizon.is_finite() && horizon >= 0.0) {
        return Err(Error::invalid(format!(
            "horizon must be non-negative, got {horizon}"
        )));
    }
    let mut degrees = vec![0u64; count as usize];
    let mut history: Vec<u32> = Vec::new();
    let mut clock = 0.0f64;
    loop {
        let rate = history.len() as f64 + rho * f64::from(count);
        let dt = -(1.0 - rng.gen::<f64>()).ln() / rate;
        if clock + dt > horizon {
            break;
        }
        clock += dt;
        let w = weighted_copy_draw(&history, count, rho, rng);
        degrees[w as usize] += 1;
        history.push(w);
    }
    Ok(BirthEmbedding { degrees, clock: horizon })
}

/// Samples one vertex's degree at clock time `r` by running its own birth
/// process (rate `d + rho`). Marginally negative binomial with shape `rho`
/// and success probability `1 - e^{-r}`.
pub fn birth_count_at<R: Rng>(rho: f64, r: f64, rng: &mut R) -> u64 {
    let mut degree = 0u64;
    let mut clock = 0.0f64;
    loop {
        let rate = degree as f64 + rho;
        clock += -(1.0 - rng.gen::<f64>()).ln() / rate;
        if clock > r {
            return degree;
        }
        degree += 1;
    }
}

/// Window around the clock time at which one side's urn reaches `t` births.
#[derive(Clone, Copy, Debug)]
pub struct StoppingBounds {
    pub lower: f64,
    pub upper: f64,
    /// Chebyshev-style bound on the probability that the stopping time
    /// leaves `[lower, upper]`. May exceed one, in which case it is vacuous.
    pub failure_bound: f64,
}

/// Bounds the time of the `t`-th birth on `side` within slack `s` steps:
/// the stopping time lies in
/// `[ln(1 + (t - s)/(rho N)), ln(1 + (t + s)/(rho N))]`
/// except with probability at most `(4/s^2)(t^2/(rho N) + t)`.
///
/// Requires `0 < s <= t`.
pub fn stopping_time_bounds(
    params: &Params,
    side: Side,
    t: u64,
    s: f64,
) -> Result<StoppingBounds> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::invalid(format!("slack must be positive, got {s}")));
    }
    let t = t as f64;
    if s > t {
        return Err(Error::invalid(format!("slack {s} exceeds t = {t}")));
    }
    let rho_n = params.rho(side) * f64::from(params.side_count(side));
    Ok(StoppingBounds {
        lower: (1.0 + (t - s) / rho_n).ln(),
        upper: (1.0 + (t + s) / rho_n).ln(),
        failure_bound: 4.0 / (s * s) * (t * t / rho_n + t),
    })
}

/// Default slack for [`stopping_time_bounds`]: `t (L + R)^{-1/4}`, which
/// keeps the window width `o(1)` while the failure bound still vanishes in
/// the scaling regimes the experiments use.
pub fn default_stopping_slack(params: &Params, t: u64) -> f64 {
    t as f64 * (params.total_count() as f64).powf(-0.25)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::rng_from_seed;
    use crate::theory::NegBin;

    #[test]
    fn window_example_by_hand() {
        // alpha = 1, L = 100, t = 100, s = 100: the window is [ln 1, ln 3]
        // and the failure bound is (4/10^4)(10^4/100 + 100) = 0.08.
        let params = Params::new(1.0, 1.0, 100, 50).unwrap();
        let b = stopping_time_bounds(&params, Side::Left, 100, 100.0).unwrap();
        assert!(b.lower.abs() < 1e-15);
        assert!((b.upper - 3.0f64.ln()).abs() < 1e-15);
        assert!((b.failure_bound - 0.08).abs() < 1e-15);
    }

    #[test]
    fn slack_validation() {
        let params = Params::new(1.0, 1.0, 10, 10).unwrap();
        assert!(stopping_time_bounds(&params, Side::Left, 5, 0.0).is_err());
        assert!(stopping_time_bounds(&params, Side::Left, 5, -1.0).is_err());
        assert!(stopping_time_bounds(&params, Side::Left, 5, 6.0).is_err());
        assert!(stopping_time_bounds(&params, Side::Left, 5, 5.0).is_ok());
    }

    #[test]
    fn default_slack_scaling() {
        let params = Params::new(1.0, 1.0, 8, 8).unwrap();
        // (L + R)^(1/4) = 2, so the slack is t/2.
        assert!((default_stopping_slack(&params, 100) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn single_vertex_law_is_negative_binomial() {
        // rho = 1, r = ln 2: NB(1, 1/2), i.e. geometric with mean 1.
        let r = 2.0f64.ln();
        let model = NegBin::new(1.0, 0.5).unwrap();
        let mut rng = rng_from_seed(31);
        let n = 200_000u32;
        let mut sum = 0u64;
        let mut zeros = 0u32;
        for _ in 0..n {
            let d = birth_count_at(1.0, r, &mut rng);
            sum += d;
            if d == 0 {
                zeros += 1;
            }
        }
        let mean = sum as f64 / f64::from(n);
        // Variance of NB(1, 1/2) is 2.
        let mean_se = (2.0 / f64::from(n)).sqrt();
        assert!((mean - model.mean()).abs() < 3.0 * mean_se, "mean {mean}");
        let zero_freq = f64::from(zeros) / f64::from(n);
        let p0 = model.pmf(0);
        let zero_se = (p0 * (1.0 - p0) / f64::from(n)).sqrt();
        assert!((zero_freq - p0).abs() < 3.0 * zero_se, "P(0) {zero_freq}");
    }

    #[test]
    fn embedding_marginal_matches_negative_binomial() {
        // Vertex 0 of a 3-vertex side at rho = 0.5, horizon 0.7, compared
        // in total variation against NB(0.5, 1 - e^{-0.7}).
        let rho = 0.5;
        let horizon = 0.7f64;
        let model = NegBin::new(rho, 1.0 - (-horizon).exp()).unwrap();
        let mut rng = rng_from_seed(77);
        let reps = 30_000u32;
        let mut counts = std::collections::BTreeMap::new();
        for _ in 0..reps {
            let emb = sample_birth_embedding(3, rho, horizon, &mut rng).unwrap();
            *counts.entry(emb.degrees()[0]).or_insert(0u32) += 1;
        }
        let max_k = counts.keys().max().copied().unwrap_or(0);
        let mut tv = 0.0;
        let mut covered = 0.0;
        for k in 0..=max_k {
            let freq = f64::from(counts.get(&k).copied().unwrap_or(0)) / f64::from(reps);
            let p = model.pmf(k);
            covered += p;
            tv += (freq - p).abs();
        }
        tv = (tv + (1.0 - covered)) / 2.0;
        assert!(tv < 0.02, "tv = {tv}");
    }

    #[test]
    fn stopping_time_coverage() {
        // alpha = 1, L = 1000, t = 10^4, s = 5000: the failure bound is
        // (4/25e6)(1e8/1e3 + 1e4) = 0.0176. Chebyshev is loose, so the
        // empirical coverage should clear 1 - 0.0176 comfortably.
        let params = Params::new(1.0, 1.0, 1000, 1000).unwrap();
        let t = 10_000u64;
        let s = 5000.0;
        let b = stopping_time_bounds(&params, Side::Left, t, s).unwrap();
        assert!((b.failure_bound - 0.0176).abs() < 1e-12);
        let rho_n = 1000.0;
        let mut rng = rng_from_seed(13);
        let reps = 1000u32;
        let mut inside = 0u32;
        for _ in 0..reps {
            // Time of the t-th birth; assignments do not affect the clock.
            let mut clock = 0.0f64;
            for i in 0..t {
                let rate = i as f64 + rho_n;
                clock += -(1.0 - rng.gen::<f64>()).ln() / rate;
            }
            if b.lower <= clock && clock <= b.upper {
                inside += 1;
            }
        }
        let coverage = f64::from(inside) / f64::from(reps);
        assert!(coverage >= 1.0 - b.failure_bound, "coverage {coverage}");
    }

    #[test]
    fn embedding_total_is_consistent() {
        let mut rng = rng_from_seed(3);
        let emb = sample_birth_embedding(5, 2.0, 1.5, &mut rng).unwrap();
        assert_eq!(emb.total(), emb.degrees().iter().sum::<u64>());
        assert_eq!(emb.clock(), 1.5);
        assert!(sample_birth_embedding(0, 1.0, 1.0, &mut rng).is_err());
        assert!(sample_birth_embedding(5, 0.0, 1.0, &mut rng).is_err());
        assert!(sample_birth_embedding(5, 1.0, -1.0, &mut rng).is_err());
    }
}
