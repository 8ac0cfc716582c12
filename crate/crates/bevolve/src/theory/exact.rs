//! Exact finite-instance probability formulas, all in log space.
//!
//! The multigraph process is exchangeable: the probability of seeing a
//! particular multigraph after `t` steps factorizes into a left urn term,
//! a right urn term, and a multinomial count of the edge orderings. The
//! edge-partition formula integrates the same law over all graphs whose
//! edges split in a prescribed way across a vertex subset pair, and the
//! measure change converts multigraph trace probabilities into simple
//! ones.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::BipartiteMultigraph;
use crate::params::Params;
use crate::theory::rising::{
    log_binomial, log_factorial, log_rising_factorial, log_rising_factorial_or_zero,
};
use crate::trace::Trace;

/// `log P(multigraph process at time t = g)`:
///
/// ```text
/// prod_u (alpha)_{d_u} / (alpha L)_t  *  prod_v (beta)_{d_v} / (beta R)_t
///   * t! / prod_{(u,v)} m(u,v)!
/// ```
///
/// Requires `g.edge_count() == t` and part sizes matching `params`.
pub fn exact_multigraph_logprob(
    params: &Params,
    g: &BipartiteMultigraph,
    t: u64,
) -> Result<f64> {
    if g.left_count() != params.left_count() || g.right_count() != params.right_count() {
        return Err(Error::invalid(format!(
            "graph parts ({}, {}) do not match parameters ({}, {})",
            g.left_count(),
            g.right_count(),
            params.left_count(),
            params.right_count()
        )));
    }
    if g.edge_count() != t {
        return Err(Error::invalid(format!(
            "graph has {} edges but t = {t}",
            g.edge_count()
        )));
    }
    let mut log = log_factorial(t);
    for &d in g.left_degrees() {
        log += log_rising_factorial(params.alpha(), d)?;
    }
    for &d in g.right_degrees() {
        log += log_rising_factorial(params.beta(), d)?;
    }
    log -= log_rising_factorial(params.alpha() * f64::from(params.left_count()), t)?;
    log -= log_rising_factorial(params.beta() * f64::from(params.right_count()), t)?;
    for (_, m) in g.support() {
        log -= log_factorial(m);
    }
    Ok(log)
}

/// The event "all edges at the left set `A` stay inside the right set `B`,
/// with prescribed counts": at time `t`, the `A` vertices carry `t1` edges
/// in total, and `B` carries `t1 + y` (so `y` edges arrive at `B` from
/// outside `A`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionEvent {
    pub left_set: BTreeSet<u32>,
    pub right_set: BTreeSet<u32>,
    pub t1: u64,
    pub y: u64,
}

impl PartitionEvent {
    pub fn new(
        left_set: impl IntoIterator<Item = u32>,
        right_set: impl IntoIterator<Item = u32>,
        t1: u64,
        y: u64,
    ) -> PartitionEvent {
        PartitionEvent {
            left_set: left_set.into_iter().collect(),
            right_set: right_set.into_iter().collect(),
            t1,
            y,
        }
    }

    /// Does `g` realize the event?
    pub fn holds_for(&self, g: &BipartiteMultigraph) -> bool {
        let deg_a: u64 = self.left_set.iter().map(|&u| g.left_degree(u)).sum();
        let deg_b: u64 = self.right_set.iter().map(|&v| g.right_degree(v)).sum();
        if deg_a != self.t1 || deg_b != self.t1 + self.y {
            return false;
        }
        // Neighborhood containment: every edge at A lands in B.
        g.support()
            .all(|((u, v), _)| !self.left_set.contains(&u) || self.right_set.contains(&v))
    }
}

/// `log P(partition event)` under the multigraph law at time `t`:
///
/// ```text
/// C(t, t1) C(t - t1, y)
///   * (|A| alpha)_{t1} ((L - |A|) alpha)_{t - t1} / (alpha L)_t
///   * (|B| beta)_{t1 + y} ((R - |B|) beta)_{t - t1 - y} / (beta R)_t
/// ```
///
/// Empty-set and full-set cases follow the empty-product convention
/// `(x)_0 = 1`; a zero base with positive order makes the event impossible
/// and the result is `-inf`. Set indices out of range or `t1 + y > t` are
/// input errors.
pub fn edge_partition_logprob(params: &Params, event: &PartitionEvent, t: u64) -> Result<f64> {
    let l = params.left_count();
    let r = params.right_count();
    if event.left_set.iter().any(|&u| u >= l) {
        return Err(Error::invalid("left set contains an out-of-range vertex"));
    }
    if event.right_set.iter().any(|&v| v >= r) {
        return Err(Error::invalid("right set contains an out-of-range vertex"));
    }
    if event.t1 + event.y > t {
        return Err(Error::invalid(format!(
            "t1 + y = {} exceeds t = {t}",
            event.t1 + event.y
        )));
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let a_size = event.left_set.len() as f64;
    let b_size = event.right_set.len() as f64;
    let (t1, y) = (event.t1, event.y);

    let log = log_binomial(t, t1)?
        + log_binomial(t - t1, y)?
        + log_rising_factorial_or_zero(a_size * alpha, t1)?
        + log_rising_factorial_or_zero((f64::from(l) - a_size) * alpha, t - t1)?
        - log_rising_factorial(alpha * f64::from(l), t)?
        + log_rising_factorial_or_zero(b_size * beta, t1 + y)?
        + log_rising_factorial_or_zero((f64::from(r) - b_size) * beta, t - t1 - y)?
        - log_rising_factorial(beta * f64::from(r), t)?;
    Ok(log)
}

/// Result of [`measure_change_ratio`].
#[derive(Clone, Copy, Debug)]
pub struct MeasureChange {
    /// `P_simple(trace) / P_multi(trace)` for this edge sequence.
    pub exact_ratio: f64,
    /// Upper bound on the ratio from the cubed-degree statistic; `None`
    /// when a bound factor is non-positive and the bound degenerates.
    pub q_bound: Option<f64>,
}

/// Likelihood ratio between the simple and multigraph laws along one edge
/// sequence:
///
/// ```text
/// exact_ratio = prod_i (1 - S_i / ((i + alpha L)(i + beta R)))^(-1)
/// ```
///
/// where `S_i = sum over adjacent pairs (u, v) of prefix i` of
/// `(d_u + alpha)(d_v + beta)`, so `P_simple = exact_ratio * P_multi`
/// whenever the trace is simple. The companion bound replaces `S_i` by
/// `4 (Q(H_i) + (alpha^2 + beta^2) i)` with `Q` the cubed-degree sum.
///
/// The `alpha`/`beta`/part sizes come from `params`; the trace's own
/// parameters are ignored apart from a part-size consistency check, so a
/// trace sampled under one law can be weighted under another.
pub fn measure_change_ratio(params: &Params, trace: &Trace) -> Result<MeasureChange> {
    if trace.params.left_count() != params.left_count()
        || trace.params.right_count() != params.right_count()
    {
        return Err(Error::invalid("trace part sizes do not match parameters"));
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let al = alpha * f64::from(params.left_count());
    let br = beta * f64::from(params.right_count());
    let eta = alpha * alpha + beta * beta;

    let mut g = BipartiteMultigraph::new(params.left_count(), params.right_count());
    let mut exact_log = 0.0f64;
    let mut bound_log = Some(0.0f64);
    for (i, &(u, v)) in trace.edges.iter().enumerate() {
        let i_f = i as f64;
        let denom = (i_f + al) * (i_f + br);
        let s: f64 = g
            .support()
            .map(|((a, b), _)| {
                (g.left_degree(a) as f64 + alpha) * (g.right_degree(b) as f64 + beta)
            })
            .sum();
        let factor = 1.0 - s / denom;
        if factor <= 0.0 {
            return Err(Error::numerical(
                "prefix saturates all pairs; the simple process cannot realize it",
            ));
        }
        exact_log -= factor.ln();
        bound_log = bound_log.and_then(|acc| {
            let bf = 1.0 - 4.0 * (g.q_statistic() + eta * i_f) / denom;
            if bf <= 0.0 {
                None
            } else {
                Some(acc - bf.ln())
            }
        });
        g.add_edge(u, v)?;
    }
    Ok(MeasureChange {
        exact_ratio: exact_log.exp(),
        q_bound: bound_log.map(f64::exp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(l: u32, r: u32, edges: &[(u32, u32)]) -> BipartiteMultigraph {
        let mut g = BipartiteMultigraph::new(l, r);
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn forced_single_pair() {
        // L = R = 1: every step hits the only pair, so any t has
        // probability one.
        let params = Params::new(1.0, 1.0, 1, 1).unwrap();
        let g = graph(1, 1, &[(0, 0), (0, 0)]);
        let lp = exact_multigraph_logprob(&params, &g, 2).unwrap();
        assert!(lp.abs() < 1e-12);
    }

    #[test]
    fn one_step_two_left_vertices() {
        // L = 2, R = 1, alpha = beta = 1: each left vertex wins with
        // probability 1/2.
        let params = Params::new(1.0, 1.0, 2, 1).unwrap();
        let g = graph(2, 1, &[(0, 0)]);
        let lp = exact_multigraph_logprob(&params, &g, 1).unwrap();
        assert!((lp - 0.5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn two_steps_enumerated_by_hand() {
        // L = 2, R = 1, alpha = beta = 1, t = 2: the left degree pair is
        // (2,0), (1,1) or (0,2), each with probability 1/3.
        let params = Params::new(1.0, 1.0, 2, 1).unwrap();
        let cases = [
            (vec![(0, 0), (0, 0)], 1.0 / 3.0),
            (vec![(0, 0), (1, 0)], 1.0 / 3.0),
            (vec![(1, 0), (1, 0)], 1.0 / 3.0),
        ];
        for (edges, expected) in cases {
            let g = graph(2, 1, &edges);
            let p = exact_multigraph_logprob(&params, &g, 2).unwrap().exp();
            assert!((p - expected).abs() < 1e-12, "{edges:?}");
        }
    }

    #[test]
    fn edge_count_mismatch() {
        let params = Params::new(1.0, 1.0, 2, 1).unwrap();
        let g = graph(2, 1, &[(0, 0)]);
        assert!(exact_multigraph_logprob(&params, &g, 2).is_err());
        let wrong = graph(3, 1, &[(0, 0)]);
        assert!(exact_multigraph_logprob(&params, &wrong, 1).is_err());
    }

    #[test]
    fn vacuous_partition_events() {
        let params = Params::new(0.5, 2.0, 3, 2).unwrap();
        // Empty sets with t1 = y = 0: probability 1.
        let ev = PartitionEvent::new([], [], 0, 0);
        assert!(edge_partition_logprob(&params, &ev, 4).unwrap().abs() < 1e-12);
        // Full sets with t1 = t, y = 0: also probability 1.
        let ev = PartitionEvent::new([0, 1, 2], [0, 1], 4, 0);
        assert!(edge_partition_logprob(&params, &ev, 4).unwrap().abs() < 1e-12);
    }

    #[test]
    fn impossible_events_have_zero_mass() {
        let params = Params::new(1.0, 1.0, 2, 2).unwrap();
        // Empty left set cannot carry edges.
        let ev = PartitionEvent::new([], [0], 1, 0);
        assert_eq!(
            edge_partition_logprob(&params, &ev, 3).unwrap(),
            f64::NEG_INFINITY
        );
        // Empty right set cannot receive the boundary edges either.
        let ev = PartitionEvent::new([0], [], 0, 2);
        assert_eq!(
            edge_partition_logprob(&params, &ev, 3).unwrap(),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn isolated_vertex_probability() {
        // A = {u0}, B = everything, t1 = 0, y = t: exactly the event that
        // u0 is isolated, with probability ((L-1) alpha)_t / (alpha L)_t.
        // At L = 2, R = 1, alpha = 1, t = 3 that is (1)_3/(2)_3 = 1/4.
        let params = Params::new(1.0, 1.0, 2, 1).unwrap();
        let ev = PartitionEvent::new([0], [0], 0, 3);
        let p = edge_partition_logprob(&params, &ev, 3).unwrap().exp();
        assert!((p - 0.25).abs() < 1e-12);
    }

    #[test]
    fn partition_input_errors() {
        let params = Params::new(1.0, 1.0, 2, 2).unwrap();
        let ev = PartitionEvent::new([5], [], 0, 0);
        assert!(edge_partition_logprob(&params, &ev, 2).is_err());
        let ev = PartitionEvent::new([], [3], 0, 0);
        assert!(edge_partition_logprob(&params, &ev, 2).is_err());
        let ev = PartitionEvent::new([0], [0], 2, 1);
        assert!(edge_partition_logprob(&params, &ev, 2).is_err());
    }

    #[test]
    fn holds_for_checks_all_three_conditions() {
        let g = graph(2, 2, &[(0, 0), (1, 1)]);
        // u0's edges stay in {v0}, degree sums 1 and 1.
        assert!(PartitionEvent::new([0], [0], 1, 0).holds_for(&g));
        // Wrong t1.
        assert!(!PartitionEvent::new([0], [0], 2, 0).holds_for(&g));
        // Neighborhood escapes B.
        assert!(!PartitionEvent::new([0, 1], [0], 1, 0).holds_for(&g));
    }

    #[test]
    fn ratio_of_single_step_is_one() {
        let params = Params::new(1.0, 1.0, 2, 2).unwrap();
        let trace = Trace { params, edges: vec![(0, 0)], simple: true };
        let mc = measure_change_ratio(&params, &trace).unwrap();
        assert_eq!(mc.exact_ratio, 1.0);
        assert_eq!(mc.q_bound, Some(1.0));
    }

    #[test]
    fn two_step_ratio_by_hand() {
        // After (0,0): S_1 = (1+1)(1+1) = 4, denominator (1+2)(1+2) = 9,
        // so the ratio is (1 - 4/9)^(-1) = 9/5. The q-bound factor is
        // 1 - 4(2 + 2)/9 < 0, hence degenerate.
        let params = Params::new(1.0, 1.0, 2, 2).unwrap();
        let trace = Trace { params, edges: vec![(0, 0), (1, 1)], simple: true };
        let mc = measure_change_ratio(&params, &trace).unwrap();
        assert!((mc.exact_ratio - 1.8).abs() < 1e-12);
        assert_eq!(mc.q_bound, None);
    }

    #[test]
    fn ratio_rejects_mismatched_parts() {
        let params = Params::new(1.0, 1.0, 2, 2).unwrap();
        let other = Params::new(1.0, 1.0, 3, 2).unwrap();
        let trace = Trace { params: other, edges: vec![(0, 0)], simple: true };
        assert!(measure_change_ratio(&params, &trace).is_err());
    }
}
