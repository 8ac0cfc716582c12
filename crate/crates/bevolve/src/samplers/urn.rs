//! The multigraph process as a pair of independent urns.
//!
//! In the multigraph variant the left and right endpoints of each new edge
//! are chosen independently, each side from its own weighted urn: after `i`
//! steps, vertex `w` on a side with weight `rho` and `N` vertices is picked
//! with probability `(deg w + rho) / (i + rho N)`. The implementation uses
//! the copy trick: with probability `i / (i + rho N)` repeat a uniformly
//! chosen past pick, otherwise pick a vertex uniformly at random. Both
//! branches are O(1) per step.

use rand::Rng;

use crate::error::{Error, Result};
use crate::params::{Params, Side};
use crate::samplers::rng_from_seed;
use crate::trace::Trace;

/// One weighted-urn draw via the copy trick.
///
/// Consumes exactly one `f64` (the branch) followed by one bounded integer
/// (a history slot when copying, a vertex id otherwise).
pub(crate) fn weighted_copy_draw<R: Rng>(
    history: &[u32],
    count: u32,
    rho: f64,
    rng: &mut R,
) -> u32 {
    let filled = history.len() as f64;
    let copy_probability = filled / (filled + rho * f64::from(count));
    if rng.gen::<f64>() < copy_probability {
        history[rng.gen_range(0..history.len())]
    } else {
        rng.gen_range(0..count)
    }
}

/// Running state of the multigraph process: both urn histories plus the
/// degree tallies they induce.
#[derive(Clone, Debug)]
pub struct UrnState {
    params: Params,
    left_history: Vec<u32>,
    right_history: Vec<u32>,
    left_degrees: Vec<u64>,
    right_degrees: Vec<u64>,
}

impl UrnState {
    pub fn new(params: Params) -> UrnState {
        UrnState {
            params,
            left_history: Vec::new(),
            right_history: Vec::new(),
            left_degrees: vec![0; params.left_count() as usize],
            right_degrees: vec![0; params.right_count() as usize],
        }
    }

    /// State after the given edges have already happened.
    pub fn with_history(params: Params, edges: &[(u32, u32)]) -> Result<UrnState> {
        let mut state = UrnState::new(params);
        for &(u, v) in edges {
            state.record(u, v)?;
        }
        Ok(state)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Number of edges drawn so far.
    pub fn steps(&self) -> u64 {
        self.left_history.len() as u64
    }

    pub fn left_degrees(&self) -> &[u64] {
        &self.left_degrees
    }

    pub fn right_degrees(&self) -> &[u64] {
        &self.right_degrees
    }

    /// Appends an edge without consuming randomness.
    pub fn record(&mut self, u: u32, v: u32) -> Result<()> {
        if u >= self.params.left_count() || v >= self.params.right_count() {
            return Err(Error::invalid(format!("edge ({u}, {v}) out of range")));
        }
        self.left_history.push(u);
        self.right_history.push(v);
        self.left_degrees[u as usize] += 1;
        self.right_degrees[v as usize] += 1;
        Ok(())
    }

    /// Probability that the next pick on `side` is `vertex`.
    pub(crate) fn side_law(&self, side: Side, vertex: u32) -> f64 {
        let (deg, rho, count) = match side {
            Side::Left => (
                self.left_degrees[vertex as usize],
                self.params.alpha(),
                self.params.left_count(),
            ),
            Side::Right => (
                self.right_degrees[vertex as usize],
                self.params.beta(),
                self.params.right_count(),
            ),
        };
        let i = self.steps() as f64;
        (deg as f64 + rho) / (i + rho * f64::from(count))
    }

    /// Probability that the next edge is exactly `(u, v)`.
    pub fn step_law(&self, u: u32, v: u32) -> f64 {
        self.side_law(Side::Left, u) * self.side_law(Side::Right, v)
    }

    /// Draws the next edge and records it.
    ///
    /// Randomness is consumed in a fixed order — left branch `f64`, left
    /// slot, right branch `f64`, right slot — so traces are reproducible
    /// from the seed alone.
    pub fn step<R: Rng>(&mut self, rng: &mut R) -> (u32, u32) {
        let u = weighted_copy_draw(
            &self.left_history,
            self.params.left_count(),
            self.params.alpha(),
            rng,
        );
        let v = weighted_copy_draw(
            &self.right_history,
            self.params.right_count(),
            self.params.beta(),
            rng,
        );
        self.record(u, v).expect("drawn vertices are in range");
        (u, v)
    }
}

/// Runs the multigraph process for `t` steps from the given seed.
pub fn sample_multigraph_process(params: &Params, t: u64, seed: u64) -> Trace {
    let mut rng = rng_from_seed(seed);
    let mut state = UrnState::new(*params);
    let mut edges = Vec::with_capacity(t as usize);
    for _ in 0..t {
        edges.push(state.step(&mut rng));
    }
    Trace { params: *params, edges, simple: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn copy_trick_matches_urn_weights() {
        // After one (0, 0) edge at L = 2, R = 1, alpha = 1, the next left
        // pick is vertex 0 with probability (1 + 1)/(1 + 2) = 2/3.
        let params = Params::new(1.0, 1.0, 2, 1).unwrap();
        let state = UrnState::with_history(params, &[(0, 0)]).unwrap();
        let mut rng = rng_from_seed(11);
        let n = 1_000_000u32;
        let mut hits = 0u32;
        for _ in 0..n {
            if weighted_copy_draw(&state.left_history, 2, 1.0, &mut rng) == 0 {
                hits += 1;
            }
        }
        let freq = f64::from(hits) / f64::from(n);
        let p = 2.0 / 3.0;
        let se = (p * (1.0 - p) / f64::from(n)).sqrt();
        assert!((freq - p).abs() < 3.0 * se, "freq {freq} vs {p}");
    }

    #[test]
    fn side_law_equals_copy_trick_mixture() {
        // The closed form (deg + rho)/(i + rho N) must agree with the
        // mixture the sampler actually implements:
        // i/(i + rho N) * count/i + rho N/(i + rho N) * 1/N.
        let params = Params::new(0.5, 2.0, 3, 4).unwrap();
        let state =
            UrnState::with_history(params, &[(0, 1), (0, 3), (2, 1)]).unwrap();
        let i = 3.0;
        for u in 0..3u32 {
            let count = state.left_history.iter().filter(|&&w| w == u).count() as f64;
            let rho_n = 0.5 * 3.0;
            let mixture = i / (i + rho_n) * (count / i) + rho_n / (i + rho_n) * (1.0 / 3.0);
            assert!((state.side_law(Side::Left, u) - mixture).abs() < 1e-15);
        }
        for v in 0..4u32 {
            let count = state.right_history.iter().filter(|&&w| w == v).count() as f64;
            let rho_n = 2.0 * 4.0;
            let mixture = i / (i + rho_n) * (count / i) + rho_n / (i + rho_n) * (1.0 / 4.0);
            assert!((state.side_law(Side::Right, v) - mixture).abs() < 1e-15);
        }
    }

    #[test]
    fn step_law_is_a_distribution() {
        let params = Params::new(0.5, 2.0, 3, 4).unwrap();
        let state = UrnState::with_history(params, &[(0, 1), (2, 2)]).unwrap();
        let mut total = crate::util::Kahan::new();
        for u in 0..3 {
            for v in 0..4 {
                total.add(state.step_law(u, v));
            }
        }
        assert!((total.value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empirical_trace_law_matches_step_law_products() {
        // Two steps at L = R = 2 have 16 possible traces whose exact
        // probabilities are products of step laws; compare in total
        // variation.
        let params = Params::new(0.5, 2.0, 2, 2).unwrap();
        let mut exact = std::collections::BTreeMap::new();
        for e1 in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let mut state = UrnState::new(params);
            let p1 = state.step_law(e1.0, e1.1);
            state.record(e1.0, e1.1).unwrap();
            for e2 in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                exact.insert(vec![e1, e2], p1 * state.step_law(e2.0, e2.1));
            }
        }
        let reps = 200_000u32;
        let mut counts: std::collections::BTreeMap<Vec<(u32, u32)>, u32> =
            std::collections::BTreeMap::new();
        for rep in 0..reps {
            let trace = sample_multigraph_process(&params, 2, 1000 + u64::from(rep));
            *counts.entry(trace.edges).or_default() += 1;
        }
        let tv: f64 = exact
            .iter()
            .map(|(trace, p)| {
                let freq = f64::from(counts.get(trace).copied().unwrap_or(0)) / f64::from(reps);
                (freq - p).abs()
            })
            .sum::<f64>()
            / 2.0;
        assert!(tv < 0.01, "tv = {tv}");
    }

    #[test]
    fn same_seed_same_trace() {
        let params = Params::new(1.5, 0.5, 10, 7).unwrap();
        let a = sample_multigraph_process(&params, 200, 99);
        let b = sample_multigraph_process(&params, 200, 99);
        assert_eq!(a.to_text(), b.to_text());
        let c = sample_multigraph_process(&params, 200, 100);
        assert_ne!(a.edges, c.edges);
    }

    #[test]
    fn longer_run_extends_shorter_run() {
        // Same seed, more steps: the old trace is a prefix of the new one.
        // Paired-seed monotonicity experiments rely on this.
        let params = Params::new(1.0, 2.0, 5, 5).unwrap();
        let short = sample_multigraph_process(&params, 50, 4);
        let long = sample_multigraph_process(&params, 80, 4);
        assert_eq!(&long.edges[..50], &short.edges[..]);
    }

    proptest! {
        #[test]
        fn degrees_always_conserve_steps(
            alpha in 0.1f64..4.0,
            beta in 0.1f64..4.0,
            l in 1u32..8,
            r in 1u32..8,
            t in 0u64..50,
            seed in any::<u64>(),
        ) {
            let params = Params::new(alpha, beta, l, r).unwrap();
            let trace = sample_multigraph_process(&params, t, seed);
            let g = trace.replay().unwrap();
            prop_assert_eq!(g.edge_count(), t);
            prop_assert_eq!(g.left_degrees().iter().sum::<u64>(), t);
            prop_assert_eq!(g.right_degrees().iter().sum::<u64>(), t);
        }
    }
}
