//! Minimum s-t cuts of symmetric submodular functions and Gomory-Hu tree
//! construction over the submodular system.
//!
//! Graph-cut oracles route through max-flow; every other symmetric oracle is
//! minimized by exhaustive enumeration, which is exact at desk scale. The
//! tree is built by the classical contraction-based procedure, evaluating f
//! on unions of contracted super-nodes.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::set::{self, ElemSet};
use crate::submodular::{OracleKind, SubmodularOracle};
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub struct GomoryHuTree {
    n: usize,
    edges: Vec<(usize, usize, Weight)>,
    /// Hash of the defining oracle, for associating trees with instances.
    fingerprint: String,
    /// False when the oracle was too large for the exhaustive symmetry check.
    symmetry_verified: bool,
}

impl GomoryHuTree {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, Weight)] {
        &self.edges
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn symmetry_verified(&self) -> bool {
        self.symmetry_verified
    }

    /// Tree path between `s` and `t` as a list of edge indices.
    fn path_edges(&self, s: usize, t: usize) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(v, i) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    pred[v] = Some((u, i));
                    queue.push_back(v);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = t;
        while let Some((p, i)) = pred[cur] {
            path.push(i);
            cur = p;
        }
        path
    }

    /// Minimum edge weight on the s-t tree path; equals the minimum s-t cut
    /// value of the defining oracle.
    pub fn path_min(&self, s: usize, t: usize) -> Result<Weight> {
        if s == t || s >= self.n || t >= self.n {
            return Err(Error::InvalidArgument("path endpoints must be distinct vertices".into()));
        }
        Ok(self
            .path_edges(s, t)
            .into_iter()
            .map(|i| self.edges[i].2)
            .min()
            .expect("tree is connected"))
    }

    /// The s-side of the cut obtained by removing the minimum-weight edge on
    /// the s-t tree path, together with that edge's weight.
    pub fn cut_side(&self, s: usize, t: usize) -> Result<(ElemSet, Weight)> {
        if s == t || s >= self.n || t >= self.n {
            return Err(Error::InvalidArgument("cut endpoints must be distinct vertices".into()));
        }
        let path = self.path_edges(s, t);
        let min_edge = path
            .into_iter()
            .min_by_key(|&i| (self.edges[i].2, i))
            .expect("tree is connected");
        let kept = set::full_set(self.edges.len()) & !set::singleton(min_edge);
        let g = self.as_graph();
        let comps = g.components_with_edges(kept);
        let side = comps
            .into_iter()
            .find(|&c| set::contains(c, s))
            .expect("s lies in some component");
        Ok((side, self.edges[min_edge].2))
    }

    pub fn as_graph(&self) -> crate::graph::WeightedGraph {
        crate::graph::WeightedGraph {
            n: self.n,
            edges: self.edges.clone(),
        }
    }
}

/// Minimum s-t cut of a symmetric submodular oracle. Returns the minimizing
/// side containing `s` (the lattice-minimal one, which is also first in
/// ascending bitmask enumeration order) and its value.
pub fn min_st_cut(f: &SubmodularOracle, s: usize, t: usize) -> Result<(ElemSet, Weight)> {
    let n = f.ground_size();
    if s >= n || t >= n {
        return Err(Error::InvalidSubset("cut endpoint out of range".into()));
    }
    if s == t {
        return Err(Error::InvalidArgument("cut endpoints must differ".into()));
    }
    if !f.declared_symmetric() {
        return Err(Error::PropertyViolation(
            "min s-t cut requires a symmetric oracle".into(),
        ));
    }
    let blocks: Vec<ElemSet> = (0..n).map(set::singleton).collect();
    let (side_blocks, value) = min_st_cut_blocks(f, &blocks, s, t)?;
    let side = set::elems(side_blocks).fold(0u64, |a, b| a | blocks[b]);
    Ok((side, value))
}

/// Minimum s-t cut of the oracle contracted to `blocks` (each block is
/// all-or-nothing). Returns the chosen blocks as a bitmask over block indices.
fn min_st_cut_blocks(
    f: &SubmodularOracle,
    blocks: &[ElemSet],
    s_idx: usize,
    t_idx: usize,
) -> Result<(ElemSet, Weight)> {
    if let OracleKind::GraphCut(g) = f.kind() {
        // Quotient graph: one vertex per block, inter-block weights summed.
        let b = blocks.len();
        let mut cap = vec![vec![Weight::ZERO; b]; b];
        let block_of = |v: usize| blocks.iter().position(|&blk| set::contains(blk, v));
        for &(u, v, w) in &g.edges {
            let (bu, bv) = (block_of(u).unwrap(), block_of(v).unwrap());
            if bu != bv {
                cap[bu][bv] += w;
                cap[bv][bu] += w;
            }
        }
        return Ok(max_flow_min_cut(&cap, s_idx, t_idx));
    }
    if blocks.len() > 20 {
        return Err(Error::ResourceLimit(format!(
            "general submodular min-cut enumeration limited to 20 blocks, got {}",
            blocks.len()
        )));
    }
    let b = blocks.len();
    let candidates = set::full_set(b) & !set::singleton(s_idx) & !set::singleton(t_idx);
    let mut best: Option<(ElemSet, Weight)> = None;
    // Ascending bitmask order: the first strict minimum is the smallest mask,
    // which for minimizers of a symmetric submodular function is the unique
    // lattice-minimal side.
    for extra in set::submasks(candidates) {
        let side_blocks = extra | set::singleton(s_idx);
        let union = set::elems(side_blocks).fold(0u64, |a, i| a | blocks[i]);
        let value = f.eval_unchecked(union);
        if best.map_or(true, |(_, v)| value < v) {
            best = Some((side_blocks, value));
        }
    }
    Ok(best.expect("at least the singleton side exists"))
}

/// Edmonds-Karp max flow on a dense capacity matrix; returns the set of
/// vertices reachable from `s` in the final residual graph and the flow value.
fn max_flow_min_cut(cap: &[Vec<Weight>], s: usize, t: usize) -> (ElemSet, Weight) {
    let n = cap.len();
    let mut residual: Vec<Vec<Weight>> = cap.to_vec();
    let mut flow = Weight::ZERO;
    loop {
        let mut pred = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if !seen[v] && !residual[u][v].is_zero() {
                    seen[v] = true;
                    pred[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            let side = (0..n).filter(|&v| seen[v]).fold(0u64, |a, v| a | set::singleton(v));
            return (side, flow);
        }
        let mut bottleneck: Option<Weight> = None;
        let mut v = t;
        while v != s {
            let u = pred[v];
            bottleneck = Some(match bottleneck {
                None => residual[u][v],
                Some(b) => b.min(residual[u][v]),
            });
            v = u;
        }
        let push = bottleneck.unwrap();
        let mut v = t;
        while v != s {
            let u = pred[v];
            residual[u][v] -= push;
            residual[v][u] += push;
            v = u;
        }
        flow += push;
    }
}

/// Classical contraction-based Gomory-Hu construction for a symmetric
/// submodular oracle.
pub fn gomory_hu_tree(f: &SubmodularOracle) -> Result<GomoryHuTree> {
    let n = f.ground_size();
    if n < 2 {
        return Err(Error::InvalidArgument("Gomory-Hu tree needs at least 2 elements".into()));
    }
    if !f.declared_symmetric() {
        return Err(Error::PropertyViolation("oracle is not declared symmetric".into()));
    }
    let symmetry_verified = n <= 12;
    if symmetry_verified {
        let report = f.verify_properties();
        if !report.symmetric {
            return Err(Error::PropertyViolation(format!(
                "oracle declared symmetric but f(S) != f(V-S) for S = {:#b}",
                report.symmetric_witness.unwrap_or(0)
            )));
        }
    }

    // Tree over super-nodes; nodes are element sets, edges carry cut values.
    let mut nodes: Vec<ElemSet> = vec![set::full_set(n)];
    let mut edges: Vec<(usize, usize, Weight)> = Vec::new();

    loop {
        // Split the multi-element node containing the smallest element.
        let Some(xi) = nodes
            .iter()
            .enumerate()
            .filter(|(_, &m)| set::size(m) >= 2)
            .min_by_key(|(_, &m)| m.trailing_zeros())
            .map(|(i, _)| i)
        else {
            break;
        };
        // The two smallest members act as s and t (blocks 0 and 1 below).
        let members: Vec<usize> = set::elems(nodes[xi]).collect();

        // Contract each subtree hanging off xi into a single block.
        let mut adj = vec![Vec::new(); nodes.len()];
        for (ei, &(a, b, _)) in edges.iter().enumerate() {
            adj[a].push((b, ei));
            adj[b].push((a, ei));
        }
        let mut blocks: Vec<ElemSet> = members.iter().map(|&m| set::singleton(m)).collect();
        // edge index (incident to xi) -> block index of its subtree
        let mut subtree_block: Vec<(usize, usize)> = Vec::new();
        for &(nbr, ei) in &adj[xi] {
            let mut union = 0u64;
            let mut stack = vec![nbr];
            let mut visited = vec![false; nodes.len()];
            visited[xi] = true;
            visited[nbr] = true;
            while let Some(u) = stack.pop() {
                union |= nodes[u];
                for &(v, _) in &adj[u] {
                    if !visited[v] {
                        visited[v] = true;
                        stack.push(v);
                    }
                }
            }
            subtree_block.push((ei, blocks.len()));
            blocks.push(union);
        }

        let (side_blocks, w) = min_st_cut_blocks(f, &blocks, 0, 1)?;
        let x_s: ElemSet = members
            .iter()
            .enumerate()
            .filter(|&(bi, _)| set::contains(side_blocks, bi))
            .fold(0, |a, (_, &m)| a | set::singleton(m));
        let x_t = nodes[xi] & !x_s;

        nodes[xi] = x_s;
        let ti = nodes.len();
        nodes.push(x_t);
        for &(ei, bi) in &subtree_block {
            if !set::contains(side_blocks, bi) {
                // Rewire this subtree to the t-side node.
                if edges[ei].0 == xi {
                    edges[ei].0 = ti;
                } else {
                    edges[ei].1 = ti;
                }
            }
        }
        edges.push((xi, ti, w));
    }

    let mut out: Vec<(usize, usize, Weight)> = edges
        .into_iter()
        .map(|(a, b, w)| {
            let (u, v) = (
                nodes[a].trailing_zeros() as usize,
                nodes[b].trailing_zeros() as usize,
            );
            (u.min(v), u.max(v), w)
        })
        .collect();
    out.sort_by_key(|&(u, v, _)| (u, v));

    let mut hasher = Sha256::new();
    hasher.update(format!("{:?}", f.kind()).as_bytes());
    let fingerprint = hex_prefix(&hasher.finalize());

    Ok(GomoryHuTree {
        n,
        edges: out,
        fingerprint,
        symmetry_verified,
    })
}

fn hex_prefix(bytes: &[u8]) -> String {
    bytes.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Brute-force minimum s-t cut, used as the oracle in verification suites.
pub fn brute_force_min_st_cut(f: &SubmodularOracle, s: usize, t: usize) -> (ElemSet, Weight) {
    let n = f.ground_size();
    let candidates = set::full_set(n) & !set::singleton(s) & !set::singleton(t);
    let mut best: Option<(ElemSet, Weight)> = None;
    for extra in set::submasks(candidates) {
        let side = extra | set::singleton(s);
        let value = f.eval_unchecked(side);
        if best.map_or(true, |(_, v)| value < v) {
            best = Some((side, value));
        }
    }
    best.expect("nonempty candidate family")
}
