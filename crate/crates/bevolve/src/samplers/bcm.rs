//! The bipartite configuration model: uniform pairing of half-edges.
//!
//! Given a bi-degree sequence (left and right degree lists with equal
//! sums), each vertex contributes as many half-edges as its degree, and a
//! uniformly random pairing between the two half-edge lists becomes the
//! edge multiset. The multigraph process conditioned on its bi-degree
//! sequence has exactly this law, which is what the coupling certificate
//! in the oracle module verifies.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::BipartiteMultigraph;

/// A pair of degree lists with equal sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiDegreeSequence {
    left: Vec<u64>,
    right: Vec<u64>,
}

impl BiDegreeSequence {
    pub fn new(left: Vec<u64>, right: Vec<u64>) -> Result<BiDegreeSequence> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::invalid("both degree lists must be non-empty"));
        }
        let ls: u64 = left.iter().sum();
        let rs: u64 = right.iter().sum();
        if ls != rs {
            return Err(Error::invalid(format!(
                "degree sums differ: left {ls}, right {rs}"
            )));
        }
        Ok(BiDegreeSequence { left, right })
    }

    pub fn from_graph(g: &BipartiteMultigraph) -> BiDegreeSequence {
        BiDegreeSequence {
            left: g.left_degrees().to_vec(),
            right: g.right_degrees().to_vec(),
        }
    }

    pub fn left(&self) -> &[u64] {
        &self.left
    }

    pub fn right(&self) -> &[u64] {
        &self.right
    }

    /// Common degree sum, i.e. the edge count of any realization.
    pub fn total(&self) -> u64 {
        self.left.iter().sum()
    }
}

/// Draws one uniform pairing of the half-edges.
///
/// The left half-edge list is kept in vertex order and the right list is
/// shuffled; position `k` of each list forms edge `k`. Permuting one side
/// uniformly already makes the pairing uniform.
pub fn sample_bcm<R: Rng>(seq: &BiDegreeSequence, rng: &mut R) -> BipartiteMultigraph {
    let mut left_stubs = Vec::with_capacity(seq.total() as usize);
    for (u, &d) in seq.left.iter().enumerate() {
        left_stubs.extend(std::iter::repeat(u as u32).take(d as usize));
    }
    let mut right_stubs = Vec::with_capacity(seq.total() as usize);
    for (v, &d) in seq.right.iter().enumerate() {
        right_stubs.extend(std::iter::repeat(v as u32).take(d as usize));
    }
    right_stubs.shuffle(rng);
    let mut g = BipartiteMultigraph::new(seq.left.len() as u32, seq.right.len() as u32);
    for (&u, &v) in left_stubs.iter().zip(&right_stubs) {
        g.add_edge(u, v).expect("stub labels are in range");
    }
    g
}
