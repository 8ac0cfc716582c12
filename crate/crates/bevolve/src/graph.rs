//! Bipartite multigraph container and component statistics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A labelled bipartite multigraph with parts `0..left_count` and
/// `0..right_count`.
///
/// Edges carry multiplicities; degrees count multiplicities. Vertices are
/// never added or removed after construction, which keeps degree arrays
/// dense and component queries simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    left_count: u32,
    right_count: u32,
    // BTreeMap keeps support iteration deterministic, which the canonical
    // encoding and the trace tests rely on.
    multiplicity: BTreeMap<(u32, u32), u64>,
    left_degrees: Vec<u64>,
    right_degrees: Vec<u64>,
    edge_count: u64,
}

impl BipartiteMultigraph {
    pub fn new(left_count: u32, right_count: u32) -> BipartiteMultigraph {
        BipartiteMultigraph {
            left_count,
            right_count,
            multiplicity: BTreeMap::new(),
            left_degrees: vec![0; left_count as usize],
            right_degrees: vec![0; right_count as usize],
            edge_count: 0,
        }
    }

    pub fn left_count(&self) -> u32 {
        self.left_count
    }

    pub fn right_count(&self) -> u32 {
        self.right_count
    }

    /// Total number of edges, counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Number of distinct adjacent pairs.
    pub fn support_size(&self) -> usize {
        self.multiplicity.len()
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<()> {
        if u >= self.left_count || v >= self.right_count {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for parts of size {} and {}",
                self.left_count, self.right_count
            )));
        }
        *self.multiplicity.entry((u, v)).or_insert(0) += 1;
        self.left_degrees[u as usize] += 1;
        self.right_degrees[v as usize] += 1;
        self.edge_count += 1;
        Ok(())
    }

    pub fn multiplicity(&self, u: u32, v: u32) -> u64 {
        self.multiplicity.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.multiplicity.contains_key(&(u, v))
    }

    /// Distinct adjacent pairs with their multiplicities, in sorted order.
    pub fn support(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.multiplicity.iter().map(|(&pair, &m)| (pair, m))
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity.values().all(|&m| m == 1)
    }

    pub fn left_degree(&self, u: u32) -> u64 {
        self.left_degrees[u as usize]
    }

    pub fn right_degree(&self, v: u32) -> u64 {
        self.right_degrees[v as usize]
    }

    pub fn left_degrees(&self) -> &[u64] {
        &self.left_degrees
    }

    pub fn right_degrees(&self) -> &[u64] {
        &self.right_degrees
    }

    /// Sum of cubed degrees over both sides, the graph functional that
    /// bounds the simple/multigraph probability ratio.
    pub fn q_statistic(&self) -> f64 {
        let cubes = |ds: &[u64]| ds.iter().map(|&d| (d as f64).powi(3)).sum::<f64>();
        cubes(&self.left_degrees) + cubes(&self.right_degrees)
    }

    /// Connected-component statistics of the underlying simple graph.
    ///
    /// Multiplicities are ignored: a pair is either adjacent or not. The
    /// union-find structure is rebuilt on every call; callers that grow a
    /// graph edge by edge and only need connectivity can drive a
    /// [`UnionFind`] incrementally instead.
    pub fn component_summary(&self) -> ComponentSummary {
        let n = self.left_count as usize + self.right_count as usize;
        let mut uf = UnionFind::new(n);
        for (&(u, v), _) in &self.multiplicity {
            uf.union(u as usize, self.left_count as usize + v as usize);
        }
        let mut sizes = uf.component_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let isolated_left = self.left_degrees.iter().filter(|&&d| d == 0).count() as u64;
        let isolated_right = self.right_degrees.iter().filter(|&&d| d == 0).count() as u64;
        let is_connected = sizes.len() == 1;
        ComponentSummary { sizes, isolated_left, isolated_right, is_connected }
    }
}

/// Component statistics reported by [`BipartiteMultigraph::component_summary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    /// Component sizes (vertices of both parts), in non-increasing order.
    /// Isolated vertices count as singleton components, so the sizes always
    /// sum to `L + R`.
    pub sizes: Vec<u64>,
    pub isolated_left: u64,
    pub isolated_right: u64,
    pub is_connected: bool,
}

impl ComponentSummary {
    pub fn largest(&self) -> u64 {
        self.sizes[0]
    }

    pub fn second_largest(&self) -> u64 {
        self.sizes.get(1).copied().unwrap_or(0)
    }

    /// True when every component except the largest is a single vertex.
    pub fn non_giant_are_singletons(&self) -> bool {
        self.sizes.iter().skip(1).all(|&s| s == 1)
    }
}

/// Disjoint-set forest with union by rank and path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        assert!(n <= u32::MAX as usize, "vertex count exceeds u32 range");
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of disjoint sets.
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        loop {
            let p = self.parent[x] as usize;
            if p == x {
                return x;
            }
            let gp = self.parent[p];
            self.parent[x] = gp;
            x = gp as usize;
        }
    }

    /// Merges the sets containing `a` and `b`; returns false if they were
    /// already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi as u32;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        self.components -= 1;
        true
    }

    /// Sizes of all disjoint sets, in unspecified order.
    pub fn component_sizes(&mut self) -> Vec<u64> {
        let n = self.parent.len();
        let mut count: std::collections::HashMap<usize, u64> = std::collections::HashMap::new();
        for x in 0..n {
            let r = self.find(x);
            *count.entry(r).or_insert(0) += 1;
        }
        count.into_values().collect()
    }

    /// Size of the largest set and whether all other sets are singletons.
    pub fn largest_and_structure(&mut self) -> (u64, bool) {
        let mut sizes = self.component_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let largest = sizes.first().copied().unwrap_or(0);
        let structure = sizes.iter().skip(1).all(|&s| s == 1);
        (largest, structure)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities_and_degrees() {
        let mut g = BipartiteMultigraph::new(2, 2);
        g.add_edge(0, 0).unwrap();
        g.add_edge(0, 0).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.multiplicity(0, 0), 2);
        assert_eq!(g.multiplicity(1, 0), 1);
        assert_eq!(g.multiplicity(1, 1), 0);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.support_size(), 2);
        assert_eq!(g.left_degree(0), 2);
        assert_eq!(g.right_degree(0), 3);
        assert_eq!(g.right_degree(1), 0);
        assert!(!g.is_simple());
    }

    #[test]
    fn add_edge_bounds() {
        let mut g = BipartiteMultigraph::new(2, 2);
        assert!(g.add_edge(2, 0).is_err());
        assert!(g.add_edge(0, 2).is_err());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn component_summary_counts_singletons() {
        // 3 + 3 vertices, edges (0,0), (0,1), (2,2): components {u0,v0,v1},
        // {u2,v2}, {u1}. Sizes 3, 2, 1.
        let mut g = BipartiteMultigraph::new(3, 3);
        g.add_edge(0, 0).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(2, 2).unwrap();
        let cs = g.component_summary();
        assert_eq!(cs.sizes, vec![3, 2, 1]);
        assert_eq!(cs.isolated_left, 1);
        assert_eq!(cs.isolated_right, 0);
        assert!(!cs.is_connected);
        assert!(cs.non_giant_are_singletons() == false);
        assert_eq!(cs.largest(), 3);
        assert_eq!(cs.second_largest(), 2);
    }

    #[test]
    fn connectivity_ignores_multiplicity() {
        let mut g = BipartiteMultigraph::new(1, 1);
        for _ in 0..5 {
            g.add_edge(0, 0).unwrap();
        }
        let cs = g.component_summary();
        assert!(cs.is_connected);
        assert_eq!(cs.sizes, vec![2]);
    }

    #[test]
    fn empty_graph_is_all_singletons() {
        let g = BipartiteMultigraph::new(2, 3);
        let cs = g.component_summary();
        assert_eq!(cs.sizes, vec![1, 1, 1, 1, 1]);
        assert_eq!(cs.isolated_left, 2);
        assert_eq!(cs.isolated_right, 3);
        assert!(!cs.is_connected);
        assert!(cs.non_giant_are_singletons());
    }

    #[test]
    fn q_statistic_sums_cubes() {
        let mut g = BipartiteMultigraph::new(2, 2);
        g.add_edge(0, 0).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 1).unwrap();
        // left degrees [2, 1], right degrees [1, 2]: 8 + 1 + 1 + 8 = 18.
        assert_eq!(g.q_statistic(), 18.0);
    }

    #[test]
    fn union_find_components() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.components(), 5);
        assert!(uf.union(0, 1));
        assert!(uf.union(1, 2));
        assert!(!uf.union(0, 2));
        assert_eq!(uf.components(), 3);
        let mut sizes = uf.component_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 3]);
        let (largest, structure) = uf.largest_and_structure();
        assert_eq!(largest, 3);
        assert!(structure);
    }
}
