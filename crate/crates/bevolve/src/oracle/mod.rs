//! Brute-force enumeration of the exact process laws on tiny instances.
//!
//! The enumerator walks every possible edge sequence, multiplying literal
//! one-step probabilities, and aggregates the mass by resulting graph.
//! Nothing here shares formulas with the [`theory`](crate::theory) module:
//! the closed forms divide out rising factorials, the enumerator never
//! forms them, so agreement between the two is a real check. The
//! [`certificates`] submodule packages those comparisons.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::BipartiteMultigraph;
use crate::params::Params;
use crate::samplers::{BiDegreeSequence, SimpleProcessState, UrnState, Variant};
use crate::theory::PartitionEvent;
use crate::trace::Trace;
use crate::util::Kahan;

pub mod certificates;

/// Largest number of edge sequences the enumerator will walk.
const ENUMERATION_BUDGET: f64 = 1e6;

/// Canonical text key for a multigraph: `u,v,m` triples of the support in
/// sorted order, joined by `;`. The empty graph encodes as the empty
/// string.
pub fn canonical_encoding(g: &BipartiteMultigraph) -> String {
    let mut parts = Vec::with_capacity(g.support_size());
    for ((u, v), m) in g.support() {
        parts.push(format!("{u},{v},{m}"));
    }
    parts.join(";")
}

/// An exact probability distribution over multigraphs, keyed by
/// [`canonical_encoding`].
#[derive(Clone, Debug)]
pub struct ExactDistribution {
    left_count: u32,
    right_count: u32,
    probabilities: BTreeMap<String, f64>,
}

impl ExactDistribution {
    fn from_accumulator(
        left_count: u32,
        right_count: u32,
        acc: BTreeMap<String, Kahan>,
    ) -> ExactDistribution {
        ExactDistribution {
            left_count,
            right_count,
            probabilities: acc.into_iter().map(|(k, v)| (k, v.value())).collect(),
        }
    }

    pub fn left_count(&self) -> u32 {
        self.left_count
    }

    pub fn right_count(&self) -> u32 {
        self.right_count
    }

    /// Graphs and their probabilities, in key order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, f64)> {
        self.probabilities.iter().map(|(k, &p)| (k.as_str(), p))
    }

    pub fn probability(&self, key: &str) -> f64 {
        self.probabilities.get(key).copied().unwrap_or(0.0)
    }

    pub fn probability_of(&self, g: &BipartiteMultigraph) -> f64 {
        self.probability(&canonical_encoding(g))
    }

    /// Total mass; 1 up to accumulation error for a full enumeration.
    pub fn total(&self) -> f64 {
        let mut k = Kahan::new();
        for &p in self.probabilities.values() {
            k.add(p);
        }
        k.value()
    }

    pub fn support_size(&self) -> usize {
        self.probabilities.len()
    }

    /// Rebuilds the graph a key stands for.
    pub fn decode(&self, key: &str) -> Result<BipartiteMultigraph> {
        let mut g = BipartiteMultigraph::new(self.left_count, self.right_count);
        if key.is_empty() {
            return Ok(g);
        }
        for part in key.split(';') {
            let fields: Vec<&str> = part.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::invalid(format!("bad key fragment '{part}'")));
            }
            let u: u32 = fields[0]
                .parse()
                .map_err(|_| Error::invalid(format!("bad vertex '{}'", fields[0])))?;
            let v: u32 = fields[1]
                .parse()
                .map_err(|_| Error::invalid(format!("bad vertex '{}'", fields[1])))?;
            let m: u64 = fields[2]
                .parse()
                .map_err(|_| Error::invalid(format!("bad multiplicity '{}'", fields[2])))?;
            for _ in 0..m {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }
}

fn check_budget(params: &Params, t: u64) -> Result<()> {
    let pairs = f64::from(params.left_count()) * f64::from(params.right_count());
    if pairs.powf(t as f64) > ENUMERATION_BUDGET {
        return Err(Error::capacity(format!(
            "enumerating {pairs}^{t} edge sequences exceeds the oracle budget"
        )));
    }
    Ok(())
}

/// One-step law of the chosen variant after the given edge history.
fn step_law_after(params: &Params, variant: Variant, edges: &[(u32, u32)]) -> Vec<Vec<f64>> {
    let l = params.left_count();
    let r = params.right_count();
    let mut law = vec![vec![0.0; r as usize]; l as usize];
    match variant {
        Variant::Multi => {
            let state = UrnState::with_history(*params, edges).expect("edges are in range");
            for u in 0..l {
                for v in 0..r {
                    law[u as usize][v as usize] = state.step_law(u, v);
                }
            }
        }
        Variant::Simple => {
            let mut state = SimpleProcessState::new(*params);
            for &(u, v) in edges {
                state.record(u, v);
            }
            for u in 0..l {
                for v in 0..r {
                    law[u as usize][v as usize] = state.step_law(u, v);
                }
            }
        }
    }
    law
}

fn visit_sequences(
    params: &Params,
    variant: Variant,
    t: u64,
    edges: &mut Vec<(u32, u32)>,
    prob: f64,
    sink: &mut dyn FnMut(&[(u32, u32)], f64),
) {
    if edges.len() as u64 == t {
        sink(edges, prob);
        return;
    }
    let law = step_law_after(params, variant, edges);
    for u in 0..params.left_count() {
        for v in 0..params.right_count() {
            let p = law[u as usize][v as usize];
            if p > 0.0 {
                edges.push((u, v));
                visit_sequences(params, variant, t, edges, prob * p, sink);
                edges.pop();
            }
        }
    }
}

/// Exact law of the graph after `t` steps of the chosen variant.
pub fn enumerate_process(
    params: &Params,
    variant: Variant,
    t: u64,
) -> Result<ExactDistribution> {
    check_budget(params, t)?;
    let mut acc: BTreeMap<String, Kahan> = BTreeMap::new();
    let mut edges = Vec::with_capacity(t as usize);
    visit_sequences(params, variant, t, &mut edges, 1.0, &mut |edges, p| {
        let mut g = BipartiteMultigraph::new(params.left_count(), params.right_count());
        for &(u, v) in edges {
            g.add_edge(u, v).expect("enumerated edges are in range");
        }
        acc.entry(canonical_encoding(&g)).or_default().add(p);
    });
    Ok(ExactDistribution::from_accumulator(
        params.left_count(),
        params.right_count(),
        acc,
    ))
}

/// Every possible `t`-step trace with its exact probability.
pub fn enumerate_traces(
    params: &Params,
    variant: Variant,
    t: u64,
) -> Result<Vec<(Trace, f64)>> {
    check_budget(params, t)?;
    let mut out = Vec::new();
    let mut edges = Vec::with_capacity(t as usize);
    visit_sequences(params, variant, t, &mut edges, 1.0, &mut |edges, p| {
        out.push((
            Trace {
                params: *params,
                edges: edges.to_vec(),
                simple: variant == Variant::Simple,
            },
            p,
        ));
    });
    Ok(out)
}

/// The multigraph law at time `t` conditioned on an exact bi-degree
/// sequence. Fails with [`Error::ZeroMass`] if no graph realizes it.
pub fn conditional_given_bidegree(
    params: &Params,
    seq: &BiDegreeSequence,
) -> Result<ExactDistribution> {
    let t = seq.total();
    let dist = enumerate_process(params, Variant::Multi, t)?;
    let mut acc: BTreeMap<String, Kahan> = BTreeMap::new();
    let mut mass = Kahan::new();
    for (key, p) in dist.entries() {
        let g = dist.decode(key)?;
        if g.left_degrees() == seq.left() && g.right_degrees() == seq.right() {
            acc.entry(key.to_string()).or_default().add(p);
            mass.add(p);
        }
    }
    if acc.is_empty() || mass.value() <= 0.0 {
        return Err(Error::ZeroMass);
    }
    let mass = mass.value();
    for k in acc.values_mut() {
        let v = k.value() / mass;
        *k = Kahan::new();
        k.add(v);
    }
    Ok(ExactDistribution::from_accumulator(
        params.left_count(),
        params.right_count(),
        acc,
    ))
}

/// Largest half-edge count [`bcm_exact_distribution`] will enumerate
/// (`total!` pairings).
const BCM_ENUMERATION_LIMIT: u64 = 6;

/// Exact law of the bipartite configuration model on `seq`: all `total!`
/// orderings of the right half-edges, each with weight `1/total!`.
pub fn bcm_exact_distribution(seq: &BiDegreeSequence) -> Result<ExactDistribution> {
    let total = seq.total();
    if total > BCM_ENUMERATION_LIMIT {
        return Err(Error::capacity(format!(
            "{total}! pairings exceed the oracle budget"
        )));
    }
    let mut left_stubs = Vec::with_capacity(total as usize);
    for (u, &d) in seq.left().iter().enumerate() {
        left_stubs.extend(std::iter::repeat(u as u32).take(d as usize));
    }
    let mut right_stubs = Vec::with_capacity(total as usize);
    for (v, &d) in seq.right().iter().enumerate() {
        right_stubs.extend(std::iter::repeat(v as u32).take(d as usize));
    }
    let mut acc: BTreeMap<String, Kahan> = BTreeMap::new();
    let mut order: Vec<usize> = (0..right_stubs.len()).collect();
    let factorial: f64 = (1..=total).map(|k| k as f64).product();
    let weight = 1.0 / factorial.max(1.0);
    permute(&mut order, 0, &mut |order| {
        let mut g =
            BipartiteMultigraph::new(seq.left().len() as u32, seq.right().len() as u32);
        for (k, &u) in left_stubs.iter().enumerate() {
            g.add_edge(u, right_stubs[order[k]])
                .expect("stub labels are in range");
        }
        acc.entry(canonical_encoding(&g)).or_default().add(weight);
    });
    Ok(ExactDistribution::from_accumulator(
        seq.left().len() as u32,
        seq.right().len() as u32,
        acc,
    ))
}

fn permute(order: &mut Vec<usize>, k: usize, sink: &mut dyn FnMut(&[usize])) {
    if k == order.len() {
        sink(order);
        return;
    }
    for i in k..order.len() {
        order.swap(k, i);
        permute(order, k + 1, sink);
        order.swap(k, i);
    }
}

/// Probability mass the distribution puts on a partition event.
pub fn event_mass(dist: &ExactDistribution, event: &PartitionEvent) -> Result<f64> {
    let mut mass = Kahan::new();
    for (key, p) in dist.entries() {
        if event.holds_for(&dist.decode(key)?) {
            mass.add(p);
        }
    }
    Ok(mass.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_step_multigraph_law_by_hand() {
        // L = 2, R = 1, alpha = beta = 1, t = 2: left degrees (2,0), (1,1),
        // (0,2) each carry probability 1/3.
        let params = Params::new(1.0, 1.0, 2, 1).unwrap();
        let dist = enumerate_process(&params, Variant::Multi, 2).unwrap();
        assert_eq!(dist.support_size(), 3);
        assert!((dist.probability("0,0,2") - 1.0 / 3.0).abs() < 1e-12);
        assert!((dist.probability("0,0,1;1,0,1") - 1.0 / 3.0).abs() < 1e-12);
        assert!((dist.probability("1,0,2") - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn enumerations_have_unit_mass() {
        for (alpha, beta, l, r, t) in [
            (1.0, 1.0, 2, 2, 3u64),
            (0.5, 2.0, 3, 2, 3),
            (2.0, 0.5, 2, 3, 4),
        ] {
            let params = Params::new(alpha, beta, l, r).unwrap();
            for variant in [Variant::Multi, Variant::Simple] {
                let dist = enumerate_process(&params, variant, t).unwrap();
                assert!(
                    (dist.total() - 1.0).abs() < 1e-10,
                    "total {} for {variant} at ({alpha}, {beta}, {l}, {r}, {t})",
                    dist.total()
                );
            }
        }
    }

    #[test]
    fn simple_enumeration_saturates() {
        let params = Params::new(1.0, 2.0, 2, 2).unwrap();
        let dist = enumerate_process(&params, Variant::Simple, 4).unwrap();
        // Only the complete graph remains.
        assert_eq!(dist.support_size(), 1);
        assert!((dist.probability("0,0,1;0,1,1;1,0,1;1,1,1") - 1.0).abs() < 1e-12);
    }

    #[test]
    fn budget_is_enforced() {
        let params = Params::new(1.0, 1.0, 3, 3).unwrap();
        assert!(enumerate_process(&params, Variant::Multi, 8).is_err());
    }

    #[test]
    fn traces_multiply_step_laws() {
        let params = Params::new(1.0, 1.0, 2, 1).unwrap();
        let traces = enumerate_traces(&params, Variant::Multi, 2).unwrap();
        assert_eq!(traces.len(), 4);
        let total: f64 = traces.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
        // The (0,0),(0,0) sequence has probability 1/2 * 2/3.
        let p = traces
            .iter()
            .find(|(tr, _)| tr.edges == vec![(0, 0), (0, 0)])
            .unwrap()
            .1;
        assert!((p - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_filters_and_renormalizes() {
        let params = Params::new(1.0, 1.0, 2, 2).unwrap();
        let seq = BiDegreeSequence::new(vec![1, 1], vec![1, 1]).unwrap();
        let cond = conditional_given_bidegree(&params, &seq).unwrap();
        assert!((cond.total() - 1.0).abs() < 1e-12);
        for (key, _) in cond.entries() {
            let g = cond.decode(key).unwrap();
            assert_eq!(g.left_degrees(), seq.left());
            assert_eq!(g.right_degrees(), seq.right());
        }
        // Both matchings realize (1,1)/(1,1); by symmetry the conditional
        // law is uniform over the two.
        assert_eq!(cond.support_size(), 2);
        assert!((cond.probability("0,0,1;1,1,1") - 0.5).abs() < 1e-12);
        assert!((cond.probability("0,1,1;1,0,1") - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bcm_two_matchings() {
        let seq = BiDegreeSequence::new(vec![1, 1], vec![1, 1]).unwrap();
        let dist = bcm_exact_distribution(&seq).unwrap();
        assert_eq!(dist.support_size(), 2);
        assert!((dist.probability("0,0,1;1,1,1") - 0.5).abs() < 1e-12);
        assert!((dist.probability("0,1,1;1,0,1") - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bcm_respects_budget() {
        let seq = BiDegreeSequence::new(vec![7], vec![7]).unwrap();
        assert!(bcm_exact_distribution(&seq).is_err());
    }

    #[test]
    fn encoding_round_trips() {
        let params = Params::new(1.0, 1.0, 3, 2).unwrap();
        let dist = enumerate_process(&params, Variant::Multi, 3).unwrap();
        for (key, _) in dist.entries() {
            let g = dist.decode(key).unwrap();
            assert_eq!(canonical_encoding(&g), key);
        }
        assert_eq!(
            canonical_encoding(&BipartiteMultigraph::new(3, 2)),
            ""
        );
    }

    #[test]
    fn event_mass_matches_direct_filter() {
        let params = Params::new(0.5, 2.0, 2, 2).unwrap();
        let dist = enumerate_process(&params, Variant::Multi, 3).unwrap();
        let ev = PartitionEvent::new([0], [0], 1, 1);
        let mass = event_mass(&dist, &ev).unwrap();
        let direct: f64 = dist
            .entries()
            .filter(|(key, _)| ev.holds_for(&dist.decode(key).unwrap()))
            .map(|(_, p)| p)
            .sum();
        assert!((mass - direct).abs() < 1e-15);
        assert!(mass > 0.0);
    }
}
