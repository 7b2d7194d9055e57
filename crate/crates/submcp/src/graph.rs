//! Weighted graphs and hypergraphs used as oracle payloads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{self, ElemSet};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub n: usize,
    /// `(u, v, weight)` triples; parallel edges are allowed and sum up on
    /// evaluation, self-loops are rejected at construction.
    pub edges: Vec<(usize, usize, Weight)>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, Weight)>) -> Result<Self> {
        if n == 0 || n >= 64 {
            return Err(Error::InvalidArgument(format!(
                "vertex count {n} out of supported range 1..64"
            )));
        }
        for &(u, v, w) in &edges {
            if u >= n || v >= n {
                return Err(Error::validation(
                    "edges",
                    format!("edge ({u},{v}) has endpoint outside 0..{n}"),
                ));
            }
            if u == v {
                return Err(Error::validation("edges", format!("self-loop at vertex {u}")));
            }
            if w.is_negative() {
                return Err(Error::validation(
                    "edges",
                    format!("edge ({u},{v}) has negative weight {w}"),
                ));
            }
        }
        Ok(WeightedGraph { n, edges })
    }

    pub fn unit(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| (u, v, Weight::int(1))).collect())
    }

    /// Total weight of edges with exactly one endpoint in `s`.
    pub fn cut(&self, s: ElemSet) -> Weight {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| set::contains(s, u) != set::contains(s, v))
            .map(|&(_, _, w)| w)
            .sum()
    }

    /// Total weight of edges with at least one endpoint in `s`.
    pub fn coverage(&self, s: ElemSet) -> Weight {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| set::contains(s, u) || set::contains(s, v))
            .map(|&(_, _, w)| w)
            .sum()
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|&(_, _, w)| w).sum()
    }

    /// Total weight of edges whose endpoints lie in different blocks.
    pub fn crossing_weight(&self, blocks: &[ElemSet]) -> Weight {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| {
                blocks
                    .iter()
                    .all(|&b| !(set::contains(b, u) && set::contains(b, v)))
            })
            .map(|&(_, _, w)| w)
            .sum()
    }

    /// Connected components induced by the edge subset `kept` (bit i = edge i),
    /// as vertex sets ordered by smallest element.
    pub fn components_with_edges(&self, kept: ElemSet) -> Vec<ElemSet> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            if set::contains(kept, i) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
        let mut comps: Vec<ElemSet> = Vec::new();
        let mut root_index = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if root_index[r] == usize::MAX {
                root_index[r] = comps.len();
                comps.push(0);
            }
            comps[root_index[r]] |= set::singleton(v);
        }
        comps
    }

    /// True when the graph is a spanning tree: connected with exactly n-1 edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.n - 1
            && self.components_with_edges(set::full_set(self.edges.len())).len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedHypergraph {
    pub n: usize,
    /// `(vertex list, weight)` pairs; hyperedges must be nonempty.
    pub edges: Vec<(Vec<usize>, Weight)>,
}

impl WeightedHypergraph {
    pub fn new(n: usize, edges: Vec<(Vec<usize>, Weight)>) -> Result<Self> {
        if n == 0 || n >= 64 {
            return Err(Error::InvalidArgument(format!(
                "vertex count {n} out of supported range 1..64"
            )));
        }
        for (verts, w) in &edges {
            if verts.is_empty() {
                return Err(Error::validation("edges", "empty hyperedge"));
            }
            if verts.iter().any(|&v| v >= n) {
                return Err(Error::validation(
                    "edges",
                    format!("hyperedge {verts:?} has vertex outside 0..{n}"),
                ));
            }
            if w.is_negative() {
                return Err(Error::validation("edges", "negative hyperedge weight"));
            }
        }
        Ok(WeightedHypergraph { n, edges })
    }

    /// Total weight of hyperedges meeting both `s` and its complement.
    pub fn cut(&self, s: ElemSet) -> Weight {
        let complement = set::full_set(self.n) & !s;
        self.edges
            .iter()
            .filter(|(verts, _)| {
                let mask = set::from_elems(verts.iter().copied());
                mask & s != 0 && mask & complement != 0
            })
            .map(|&(_, w)| w)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn cut_and_coverage_on_small_graphs() {
        let t = triangle();
        assert_eq!(t.cut(0b001), Weight::int(2));
        assert_eq!(t.cut(0b111), Weight::ZERO);
        let path = WeightedGraph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.coverage(0b010), Weight::int(2));
        assert_eq!(path.coverage(0b001), Weight::int(1));
    }

    #[test]
    fn self_loops_rejected() {
        assert!(WeightedGraph::unit(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn components_and_tree_check() {
        let path = WeightedGraph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.is_tree());
        let comps = path.components_with_edges(0b01);
        assert_eq!(comps, vec![0b011, 0b100]);
        assert!(!triangle().is_tree());
    }

    #[test]
    fn hypergraph_cut_counts_split_edges() {
        let h = WeightedHypergraph::new(
            4,
            vec![(vec![0, 1, 2], Weight::int(2)), (vec![2, 3], Weight::int(1))],
        )
        .unwrap();
        assert_eq!(h.cut(0b0001), Weight::int(2));
        assert_eq!(h.cut(0b0111), Weight::int(1));
        assert_eq!(h.cut(0b1111), Weight::ZERO);
    }
}
