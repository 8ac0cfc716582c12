//! The simple-graph process: attachment weights restricted to non-adjacent
//! pairs.
//!
//! Each step picks a currently absent pair `(u, v)` with probability
//! proportional to `(deg u + alpha)(deg v + beta)`. Sampling proposes from
//! the unrestricted product law (the same copy trick the multigraph urn
//! uses, driven by the accepted history) and rejects proposals that are
//! already edges; conditioned on acceptance this is exactly the restricted
//! law. Rejection is cheap while the graph is sparse. When an acceptance
//! check shows the graph is nearly saturated, one exhaustive weighted draw
//! over the remaining pairs finishes the step, so termination never depends
//! on luck.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::BipartiteMultigraph;
use crate::params::Params;
use crate::samplers::rng_from_seed;
use crate::samplers::urn::weighted_copy_draw;
use crate::trace::Trace;

/// Rejections between saturation checks.
const REJECTION_CHECK_PERIOD: u32 = 32;
/// Acceptance probability below which a step falls back to the exhaustive
/// draw.
const FALLBACK_ACCEPTANCE: f64 = 1e-3;

/// Running state of the simple process.
#[derive(Clone, Debug)]
pub struct SimpleProcessState {
    params: Params,
    graph: BipartiteMultigraph,
    left_history: Vec<u32>,
    right_history: Vec<u32>,
}

impl SimpleProcessState {
    pub fn new(params: Params) -> SimpleProcessState {
        SimpleProcessState {
            params,
            graph: BipartiteMultigraph::new(params.left_count(), params.right_count()),
            left_history: Vec::new(),
            right_history: Vec::new(),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn graph(&self) -> &BipartiteMultigraph {
        &self.graph
    }

    pub fn steps(&self) -> u64 {
        self.graph.edge_count()
    }

    /// Number of distinct pairs, the hard ceiling on the step count.
    pub fn capacity(&self) -> u64 {
        u64::from(self.params.left_count()) * u64::from(self.params.right_count())
    }

    pub(crate) fn record(&mut self, u: u32, v: u32) {
        self.graph.add_edge(u, v).expect("vertices are in range");
        self.left_history.push(u);
        self.right_history.push(v);
    }

    /// Total product weight `(i + alpha L)(i + beta R)` over all pairs.
    fn total_weight(&self) -> f64 {
        let i = self.steps() as f64;
        (i + self.params.alpha() * f64::from(self.params.left_count()))
            * (i + self.params.beta() * f64::from(self.params.right_count()))
    }

    /// Product weight currently sitting on adjacent (ineligible) pairs.
    fn adjacent_weight(&self) -> f64 {
        let (alpha, beta) = (self.params.alpha(), self.params.beta());
        self.graph
            .support()
            .map(|((u, v), _)| {
                (self.graph.left_degree(u) as f64 + alpha)
                    * (self.graph.right_degree(v) as f64 + beta)
            })
            .sum()
    }

    /// Probability that a proposal from the unrestricted product law is
    /// accepted.
    pub fn acceptance_probability(&self) -> f64 {
        1.0 - self.adjacent_weight() / self.total_weight()
    }

    /// Probability that the next edge is exactly `(u, v)`: zero on adjacent
    /// pairs, otherwise the product weight normalized over absent pairs.
    pub fn step_law(&self, u: u32, v: u32) -> f64 {
        if self.graph.adjacent(u, v) {
            return 0.0;
        }
        let (alpha, beta) = (self.params.alpha(), self.params.beta());
        let w = (self.graph.left_degree(u) as f64 + alpha)
            * (self.graph.right_degree(v) as f64 + beta);
        w / (self.total_weight() - self.adjacent_weight())
    }

    /// One exhaustive weighted draw over the absent pairs. O(L R); only
    /// used near saturation.
    pub(crate) fn exhaustive_step<R: Rng>(&self, rng: &mut R) -> (u32, u32) {
        let (alpha, beta) = (self.params.alpha(), self.params.beta());
        let weight = |u: u32, v: u32| {
            (self.graph.left_degree(u) as f64 + alpha)
                * (self.graph.right_degree(v) as f64 + beta)
        };
        let mut total = 0.0;
        for u in 0..self.params.left_count() {
            for v in 0..self.params.right_count() {
                if !self.graph.adjacent(u, v) {
                    total += weight(u, v);
                }
            }
        }
        assert!(total > 0.0, "exhaustive draw on a saturated graph");
        let mut x = rng.gen::<f64>() * total;
        let mut last = None;
        for u in 0..self.params.left_count() {
            for v in 0..self.params.right_count() {
                if !self.graph.adjacent(u, v) {
                    x -= weight(u, v);
                    last = Some((u, v));
                    if x < 0.0 {
                        return (u, v);
                    }
                }
            }
        }
        // Rounding pushed x past the final weight; the last eligible pair
        // is the right answer.
        last.expect("at least one absent pair")
    }

    /// Draws the next edge and records it. Fails once every pair is present.
    pub fn step<R: Rng>(&mut self, rng: &mut R) -> Result<(u32, u32)> {
        if self.steps() == self.capacity() {
            return Err(Error::capacity(
                "simple graph is complete; no absent pair remains",
            ));
        }
        let mut rejections = 0u32;
        loop {
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
            if !self.graph.adjacent(u, v) {
                self.record(u, v);
                return Ok((u, v));
            }
            rejections += 1;
            if rejections % REJECTION_CHECK_PERIOD == 0
                && self.acceptance_probability() < FALLBACK_ACCEPTANCE
            {
                let (u, v) = self.exhaustive_step(rng);
                self.record(u, v);
                return Ok((u, v));
            }
        }
    }
}

/// Runs the simple process for `t` steps from the given seed.
///
/// `t` may not exceed `L * R`, the number of distinct pairs.
pub fn sample_simple_process(params: &Params, t: u64, seed: u64) -> Result<Trace> {
    let mut state = SimpleProcessState::new(*params);
    if t > state.capacity() {
        return Err(Error::capacity(format!(
            "t = {t} exceeds the {} distinct pairs of a {} x {} simple graph",
            state.capacity(),
            params.left_count(),
            params.right_count()
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(t as usize);
    for _ in 0..t {
        edges.push(state.step(&mut rng)?);
    }
    Ok(Trace { params: *params, edges, simple: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn saturating_run_builds_the_complete_graph() {
        let params = Params::new(0.5, 3.0, 3, 2).unwrap();
        let trace = sample_simple_process(&params, 6, 5).unwrap();
        let g = trace.replay().unwrap();
        assert!(g.is_simple());
        assert_eq!(g.support_size(), 6);
        assert!(sample_simple_process(&params, 7, 5).is_err());
    }

    #[test]
    fn step_law_is_a_distribution_over_absent_pairs() {
        let params = Params::new(0.5, 2.0, 3, 3).unwrap();
        let mut state = SimpleProcessState::new(params);
        let mut rng = rng_from_seed(8);
        for _ in 0..4 {
            state.step(&mut rng).unwrap();
        }
        let mut total = crate::util::Kahan::new();
        for u in 0..3 {
            for v in 0..3 {
                total.add(state.step_law(u, v));
            }
        }
        assert!((total.value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exhaustive_step_matches_step_law() {
        // Near-saturated 2 x 2 instance: only two pairs are absent. The
        // exhaustive draw must reproduce the conditional law.
        let params = Params::new(1.0, 1.0, 2, 2).unwrap();
        let mut state = SimpleProcessState::new(params);
        state.record(0, 0);
        state.record(1, 1);
        let p01 = state.step_law(0, 1);
        let p10 = state.step_law(1, 0);
        assert!((p01 + p10 - 1.0).abs() < 1e-12);
        let mut rng = rng_from_seed(17);
        let n = 200_000u32;
        let mut hits = 0u32;
        for _ in 0..n {
            if state.exhaustive_step(&mut rng) == (0, 1) {
                hits += 1;
            }
        }
        let freq = f64::from(hits) / f64::from(n);
        let se = (p01 * p10 / f64::from(n)).sqrt();
        assert!((freq - p01).abs() < 3.0 * se, "freq {freq} vs {p01}");
    }

    #[test]
    fn empirical_first_step_matches_law() {
        // Degree-0 start at alpha = 2, beta = 0.5, L = 2, R = 2: the first
        // edge is uniform over the four pairs.
        let params = Params::new(2.0, 0.5, 2, 2).unwrap();
        let mut counts = [0u32; 4];
        let reps = 100_000u32;
        for rep in 0..reps {
            let trace = sample_simple_process(&params, 1, 3_000 + u64::from(rep)).unwrap();
            let (u, v) = trace.edges[0];
            counts[(2 * u + v) as usize] += 1;
        }
        for c in counts {
            let freq = f64::from(c) / f64::from(reps);
            let se = (0.25 * 0.75 / f64::from(reps)).sqrt();
            assert!((freq - 0.25).abs() < 3.0 * se, "freq {freq}");
        }
    }

    #[test]
    fn same_seed_same_trace() {
        let params = Params::new(1.0, 1.0, 20, 20).unwrap();
        let a = sample_simple_process(&params, 100, 12).unwrap();
        let b = sample_simple_process(&params, 100, 12).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn longer_run_extends_shorter_run() {
        let params = Params::new(1.0, 1.0, 10, 10).unwrap();
        let short = sample_simple_process(&params, 30, 6).unwrap();
        let long = sample_simple_process(&params, 60, 6).unwrap();
        assert_eq!(&long.edges[..30], &short.edges[..]);
    }

    proptest! {
        #[test]
        fn traces_are_always_simple(
            alpha in 0.1f64..4.0,
            beta in 0.1f64..4.0,
            l in 1u32..6,
            r in 1u32..6,
            seed in any::<u64>(),
        ) {
            let params = Params::new(alpha, beta, l, r).unwrap();
            let t = u64::from(l) * u64::from(r);
            // Saturating runs exercise the exhaustive fallback too.
            let trace = sample_simple_process(&params, t, seed).unwrap();
            let g = trace.replay().unwrap();
            prop_assert!(g.is_simple());
            prop_assert_eq!(g.edge_count(), t);
        }
    }
}
