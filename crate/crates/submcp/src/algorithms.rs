//! Partitioning algorithms: Gomory-Hu greedy, greedy splitting, cheapest
//! singleton, the exact tree solvers, and the brute-force exact oracle.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gomory_hu::gomory_hu_tree;
use crate::graph::WeightedGraph;
use crate::intersection::{
    best_weight_common_independent, max_common_independent, transversal_witness,
};
use crate::matroid::{min_weight_basis, Matroid};
use crate::partition::Partition;
use crate::set::{self, ElemSet};
use crate::submodular::SubmodularOracle;
use crate::weight::Weight;

/// How ties between equal-cost greedy choices are resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreakPolicy {
    /// Smallest (block index, split mask); the default deterministic order.
    Lexicographic,
    /// Among minimum-cost splits, prefer the one whose smaller side is a
    /// singleton with the largest element index. Reproduces the worst-case
    /// greedy-splitting run deterministically.
    AdversarialSingleton,
    /// Uniform choice among minimum-cost splits, from a seeded generator.
    SeededRandom(u64),
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub description: String,
    /// Objective increase of this step; nonnegative for submodular f with
    /// f(empty) = 0.
    pub delta: Weight,
    pub candidates: usize,
}

#[derive(Clone, Debug, Default)]
pub struct AlgorithmTrace {
    pub steps: Vec<TraceStep>,
    pub final_value: Weight,
}

fn check_same_ground(f: &SubmodularOracle, m: &Matroid) -> Result<usize> {
    if f.ground_size() != m.ground_size() {
        return Err(Error::InvalidArgument(format!(
            "oracle ground size {} differs from matroid ground size {}",
            f.ground_size(),
            m.ground_size()
        )));
    }
    Ok(f.ground_size())
}

fn witnessed(n: usize, blocks: Vec<ElemSet>, m: &Matroid) -> Result<Partition> {
    let p = Partition::new(n, blocks)?;
    let witness = transversal_witness(m, p.blocks()).ok_or_else(|| {
        Error::InternalInvariant("returned partition admits no transversal basis".into())
    })?;
    p.with_witness(witness)
}

fn trivial_partition(n: usize, m: &Matroid) -> Result<Partition> {
    witnessed(n, vec![set::full_set(n)], m)
}

/// Algorithm: build the Gomory-Hu tree of `f`, then greedily pick the k-1
/// cheapest tree edges that stay independent in the tree-edge matroid.
/// Guarantee: (2 - 2/k) times the optimum for symmetric f.
pub fn gh_greedy(f: &SubmodularOracle, m: &Arc<Matroid>) -> Result<(Partition, AlgorithmTrace)> {
    let n = check_same_ground(f, m)?;
    let k = m.rank_full();
    if k == 0 {
        return Err(Error::Infeasible("constraint matroid has rank 0".into()));
    }
    let mut trace = AlgorithmTrace::default();
    if k == 1 {
        let p = trivial_partition(n, m)?;
        trace.final_value = f.partition_value(&p)?;
        return Ok((p, trace));
    }
    let tree = gomory_hu_tree(f)?;
    let h = tree.as_graph();
    let me = Matroid::tree_edge(h.clone(), m.clone())?;
    let mut order: Vec<usize> = (0..h.edges.len()).collect();
    order.sort_by_key(|&i| (h.edges[i].2, i));

    let mut chosen: ElemSet = 0;
    for _ in 0..k - 1 {
        let next = order
            .iter()
            .copied()
            .find(|&i| {
                !set::contains(chosen, i) && me.indep_unchecked(chosen | set::singleton(i))
            })
            .ok_or_else(|| {
                Error::InternalInvariant(
                    "no extendable Gomory-Hu edge although the matroid has full rank".into(),
                )
            })?;
        chosen |= set::singleton(next);
        let (u, v, w) = h.edges[next];
        trace.steps.push(TraceStep {
            description: format!("edge {u}-{v}"),
            delta: w,
            candidates: h.edges.len() - set::size(chosen) + 1,
        });
    }
    let comps = h.components_with_edges(set::full_set(h.edges.len()) & !chosen);
    let p = witnessed(n, comps, m)?;
    trace.final_value = f.partition_value(&p)?;
    Ok((p, trace))
}

/// Best split of block `w_block` separating `x` from `y`: minimizes
/// f(X) + f(W-X) - f(W) over x in X, y in W-X, ties to the smallest mask.
pub fn min_split_pair(
    f: &SubmodularOracle,
    w_block: ElemSet,
    x: usize,
    y: usize,
) -> Result<(ElemSet, Weight)> {
    if x == y {
        return Err(Error::InvalidArgument("split pair must be distinct".into()));
    }
    if !set::contains(w_block, x) || !set::contains(w_block, y) {
        return Err(Error::InvalidArgument("split pair must lie in the block".into()));
    }
    let fw = f.evaluate(w_block)?;
    let rest = w_block & !set::singleton(x) & !set::singleton(y);
    let mut best: Option<(ElemSet, Weight)> = None;
    for extra in set::submasks(rest) {
        let side = extra | set::singleton(x);
        let cost = f.eval_unchecked(side) + f.eval_unchecked(w_block & !side) - fw;
        if best.map_or(true, |(_, c)| cost < c) {
            best = Some((side, cost));
        }
    }
    Ok(best.expect("x alone is always a candidate"))
}

/// Can `x` and `y` be completed to an independent set that picks exactly one
/// element from each block of `others`? (The pair filter from the greedy
/// splitting subroutine.)
fn pair_extendable(m: &Arc<Matroid>, others: &[ElemSet], w_block: ElemSet, x: usize, y: usize) -> bool {
    let target = others.len() + 2;
    if target > m.rank_full() {
        return false;
    }
    let forbidden = w_block & !set::singleton(x) & !set::singleton(y);
    let mut classes: Vec<(ElemSet, usize)> = others.iter().map(|&b| (b, 1)).collect();
    classes.push((set::singleton(x), 1));
    classes.push((set::singleton(y), 1));
    if forbidden != 0 {
        classes.push((forbidden, 0));
    }
    let pm = Matroid::partition(m.ground_size(), classes).expect("disjoint classes");
    let mt = Matroid::truncation(m.clone(), target).expect("target <= rank");
    // The pair must be picked: force x and y by capping everything else at
    // one-per-class; a common independent set of size `target` then contains
    // one element from {x}, one from {y}, one per other block.
    let common = max_common_independent(&mt, &pm).expect("same ground set");
    set::size(common) == target
        && set::contains(common, x)
        && set::contains(common, y)
}

#[derive(Clone, Debug)]
struct SplitCandidate {
    cost: Weight,
    block_idx: usize,
    /// Canonical side: the one containing the block's smallest element.
    side: ElemSet,
    other: ElemSet,
}

impl SplitCandidate {
    fn singleton_index(&self) -> Option<usize> {
        let sides = [self.side, self.other];
        sides
            .iter()
            .filter(|&&s| set::size(s) == 1)
            .map(|&s| s.trailing_zeros() as usize)
            .max()
    }
}

fn select_candidate<'a>(
    pool: &'a [SplitCandidate],
    policy: TieBreakPolicy,
    rng: &mut ChaCha8Rng,
) -> &'a SplitCandidate {
    let min_cost = pool.iter().map(|c| c.cost).min().expect("nonempty pool");
    let ties: Vec<&SplitCandidate> = pool.iter().filter(|c| c.cost == min_cost).collect();
    match policy {
        TieBreakPolicy::Lexicographic => ties
            .iter()
            .min_by_key(|c| (c.block_idx, c.side))
            .expect("nonempty"),
        TieBreakPolicy::AdversarialSingleton => ties
            .iter()
            .filter(|c| c.singleton_index().is_some())
            .max_by_key(|c| (c.singleton_index(), std::cmp::Reverse((c.block_idx, c.side))))
            .unwrap_or_else(|| {
                ties.iter()
                    .min_by_key(|c| (c.block_idx, c.side))
                    .expect("nonempty")
            }),
        TieBreakPolicy::SeededRandom(_) => ties[rng.gen_range(0..ties.len())],
    }
}

/// Greedy splitting: k-1 refinement steps, each choosing the feasible split
/// minimizing f(X) + f(W-X) - f(W). Guarantees: (k-1) times the optimum in
/// general, (2 - 2/k) for symmetric and for monotone f.
pub fn greedy_split(
    f: &SubmodularOracle,
    m: &Arc<Matroid>,
    policy: TieBreakPolicy,
) -> Result<(Partition, AlgorithmTrace)> {
    let n = check_same_ground(f, m)?;
    let k = m.rank_full();
    if k == 0 {
        return Err(Error::Infeasible("constraint matroid has rank 0".into()));
    }
    let seed = match policy {
        TieBreakPolicy::SeededRandom(s) => s,
        _ => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks: Vec<ElemSet> = vec![set::full_set(n)];
    let mut trace = AlgorithmTrace::default();

    for _ in 1..k {
        let mut pool: Vec<SplitCandidate> = Vec::new();
        for (bi, &w_block) in blocks.iter().enumerate() {
            if set::size(w_block) < 2 {
                continue;
            }
            let others: Vec<ElemSet> = blocks
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != bi)
                .map(|(_, &b)| b)
                .collect();
            let members: Vec<usize> = set::elems(w_block).collect();
            for (xi, &x) in members.iter().enumerate() {
                for &y in &members[xi + 1..] {
                    if !pair_extendable(m, &others, w_block, x, y) {
                        continue;
                    }
                    let (side, cost) = min_split_pair(f, w_block, x, y)?;
                    let low = set::singleton(members[0]);
                    let canonical = if side & low != 0 { side } else { w_block & !side };
                    if pool
                        .iter()
                        .any(|c| c.block_idx == bi && c.side == canonical)
                    {
                        continue;
                    }
                    pool.push(SplitCandidate {
                        cost,
                        block_idx: bi,
                        side: canonical,
                        other: w_block & !canonical,
                    });
                }
            }
        }
        if pool.is_empty() {
            return Err(Error::Infeasible(
                "no feasible split exists; constraint matroid rank below target".into(),
            ));
        }
        pool.sort_by_key(|c| (c.block_idx, c.side));
        let chosen = select_candidate(&pool, policy, &mut rng).clone();
        trace.steps.push(TraceStep {
            description: format!("split block {:#b} into {:#b} | {:#b}",
                chosen.side | chosen.other, chosen.side, chosen.other),
            delta: chosen.cost,
            candidates: pool.len(),
        });
        blocks.remove(chosen.block_idx);
        blocks.push(chosen.side);
        blocks.push(chosen.other);
        blocks.sort_by_key(|&b| b.trailing_zeros());
    }

    let p = witnessed(n, blocks, m)?;
    trace.final_value = f.partition_value(&p)?;
    Ok((p, trace))
}

/// Cheapest-singleton algorithm for monotone f: pick a minimum-weight
/// independent set of size k-1 under singleton costs, return those elements
/// as singleton blocks plus the remainder. Guarantee: (2 - 1/k) approximation.
pub fn cheapest_singleton(f: &SubmodularOracle, m: &Arc<Matroid>) -> Result<Partition> {
    let n = check_same_ground(f, m)?;
    if !f.declared_monotone() {
        return Err(Error::PropertyViolation(
            "cheapest-singleton requires a monotone oracle".into(),
        ));
    }
    let k = m.rank_full();
    if k == 0 {
        return Err(Error::Infeasible("constraint matroid has rank 0".into()));
    }
    if k == 1 {
        return trivial_partition(n, m);
    }
    let weights: Vec<Weight> = (0..n)
        .map(|v| f.eval_unchecked(set::singleton(v)))
        .collect();
    let trunc = Matroid::truncation(m.clone(), k - 1)?;
    let (singles, _) = min_weight_basis(&trunc, &weights)?;
    debug_assert_eq!(set::size(singles), k - 1);
    // Extend to a basis: the k-th representative lands in the remainder block
    // by construction, so the partition is always feasible.
    let completion = (0..n)
        .find(|&e| {
            !set::contains(singles, e) && m.indep_unchecked(singles | set::singleton(e))
        })
        .ok_or_else(|| {
            Error::InternalInvariant("independent set of size k-1 cannot be completed".into())
        })?;
    let remainder = set::full_set(n) & !singles;
    let mut blocks: Vec<ElemSet> = set::elems(singles).map(set::singleton).collect();
    blocks.push(remainder);
    let p = Partition::new(n, blocks)?;
    let witness: Vec<usize> = p
        .blocks()
        .iter()
        .map(|&b| {
            if b == remainder {
                completion
            } else {
                b.trailing_zeros() as usize
            }
        })
        .collect();
    p.with_witness(witness)
}

/// Exact solver on trees: the minimum-weight basis of the tree-edge matroid
/// gives the optimal matroid-constrained multiway cut.
pub fn tree_multiway_cut(tree: &WeightedGraph, m: &Arc<Matroid>) -> Result<(Partition, Weight)> {
    if !tree.is_tree() {
        return Err(Error::InvalidArgument("input graph is not a spanning tree".into()));
    }
    let n = tree.n;
    if n != m.ground_size() {
        return Err(Error::InvalidArgument("tree and matroid ground sets differ".into()));
    }
    let k = m.rank_full();
    if k == 0 {
        return Err(Error::Infeasible("constraint matroid has rank 0".into()));
    }
    let me = Matroid::tree_edge(tree.clone(), m.clone())?;
    let edge_weights: Vec<Weight> = tree.edges.iter().map(|&(_, _, w)| w).collect();
    let (removed, _) = min_weight_basis(&me, &edge_weights)?;
    if set::size(removed) != k - 1 {
        return Err(Error::InternalInvariant(format!(
            "tree-edge matroid basis has size {}, expected {}",
            set::size(removed),
            k - 1
        )));
    }
    let comps = tree.components_with_edges(set::full_set(tree.edges.len()) & !removed);
    let p = witnessed(n, comps, m)?;
    let value = SubmodularOracle::graph_cut(tree.clone()).partition_value(&p)?;
    Ok((p, value))
}

#[derive(Clone, Debug)]
pub struct DoubleCutResult {
    /// Partition carrying the transversal basis of the first matroid.
    pub partition: Partition,
    /// Transversal basis of the second matroid, aligned with the blocks.
    pub witness2: Vec<usize>,
    pub value: Weight,
}

/// Exact solver for the two-matroid variant on trees: minimum-weight common
/// spanning set of the two tree-edge matroids, followed by the merge step
/// down to k blocks.
pub fn double_tree_multiway_cut(
    tree: &WeightedGraph,
    m1: &Arc<Matroid>,
    m2: &Arc<Matroid>,
) -> Result<DoubleCutResult> {
    if !tree.is_tree() {
        return Err(Error::InvalidArgument("input graph is not a spanning tree".into()));
    }
    let n = tree.n;
    if n != m1.ground_size() || n != m2.ground_size() {
        return Err(Error::InvalidArgument("tree and matroid ground sets differ".into()));
    }
    let k = m1.rank_full();
    if m2.rank_full() != k {
        return Err(Error::InvalidArgument(format!(
            "matroid ranks differ: {} vs {}",
            k,
            m2.rank_full()
        )));
    }
    if k == 0 {
        return Err(Error::Infeasible("constraint matroids have rank 0".into()));
    }
    let me1 = Arc::new(Matroid::tree_edge(tree.clone(), m1.clone())?);
    let me2 = Arc::new(Matroid::tree_edge(tree.clone(), m2.clone())?);
    let d1 = Matroid::dual(me1);
    let d2 = Matroid::dual(me2);
    let edge_weights: Vec<Weight> = tree.edges.iter().map(|&(_, _, w)| w).collect();
    // Min-weight common spanning set = complement of the max-weight common
    // independent set of the duals, over all cardinalities.
    let (kept, _) = best_weight_common_independent(&d1, &d2, &edge_weights)?;
    let removed = set::full_set(tree.edges.len()) & !kept;

    let mut comps = tree.components_with_edges(kept);
    let pick_basis = |m: &Arc<Matroid>, comps: &[ElemSet]| -> Result<ElemSet> {
        let classes: Vec<(ElemSet, usize)> = comps.iter().map(|&c| (c, 1)).collect();
        let pm = Matroid::partition(n, classes).expect("components are disjoint");
        let basis = max_common_independent(m, &pm)?;
        if set::size(basis) != k {
            return Err(Error::InternalInvariant(
                "common spanning set does not support a component-respecting basis".into(),
            ));
        }
        Ok(basis)
    };
    let b1 = pick_basis(m1, &comps)?;
    let b2 = pick_basis(m2, &comps)?;

    // Merge component pairs that keep at most one representative of each
    // basis until exactly k blocks remain.
    while comps.len() > k {
        let mergeable = (0..comps.len())
            .flat_map(|i| (i + 1..comps.len()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let union = comps[i] | comps[j];
                set::size(union & b1) <= 1 && set::size(union & b2) <= 1
            });
        let Some((i, j)) = mergeable else {
            return Err(Error::InternalInvariant(
                "no mergeable component pair although more than k blocks remain".into(),
            ));
        };
        comps[i] |= comps[j];
        comps.remove(j);
    }
    let _ = removed;

    let p = Partition::new(n, comps)?;
    let witness1: Vec<usize> = p
        .blocks()
        .iter()
        .map(|&b| (b & b1).trailing_zeros() as usize)
        .collect();
    let witness2: Vec<usize> = p
        .blocks()
        .iter()
        .map(|&b| (b & b2).trailing_zeros() as usize)
        .collect();
    if witness1.iter().any(|&e| e >= n) || witness2.iter().any(|&e| e >= n) {
        return Err(Error::InternalInvariant("a merged block lost its representative".into()));
    }
    let value = SubmodularOracle::graph_cut(tree.clone()).partition_value(&p)?;
    let partition = p.with_witness(witness1)?;
    Ok(DoubleCutResult { partition, witness2, value })
}

/// How brute force interprets the witnesses of a two-matroid instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    /// Each matroid gets its own transversal basis (the double variant).
    Separate,
    /// A single transversal must be a basis of both matroids simultaneously.
    Common,
}

/// Exhaustive exact oracle: enumerates every partition of the ground set into
/// exactly k nonempty blocks, keeps the feasible ones, and returns the
/// minimizer (first in restricted-growth-string order on ties).
pub fn brute_force_opt(
    f: &SubmodularOracle,
    m: &Arc<Matroid>,
    m2: Option<&Arc<Matroid>>,
    mode: WitnessMode,
) -> Result<(Partition, Weight)> {
    let n = check_same_ground(f, m)?;
    if n > 12 {
        return Err(Error::ResourceLimit(format!(
            "brute force limited to n <= 12, got {n}"
        )));
    }
    let k = m.rank_full();
    if let Some(m2) = m2 {
        if m2.rank_full() != k {
            return Err(Error::InvalidArgument("matroid ranks differ".into()));
        }
    }
    if mode == WitnessMode::Common && m2.is_none() {
        return Err(Error::InvalidArgument("common witness mode needs two matroids".into()));
    }
    let mut best: Option<(Vec<ElemSet>, Weight)> = None;
    for blocks in set::partitions_into_k(n, k) {
        let feasible = match mode {
            WitnessMode::Separate => {
                transversal_witness(m, &blocks).is_some()
                    && m2.map_or(true, |m2| transversal_witness(m2, &blocks).is_some())
            }
            WitnessMode::Common => {
                common_transversal(m, m2.unwrap(), &blocks).is_some()
            }
        };
        if !feasible {
            continue;
        }
        let value: Weight = blocks.iter().map(|&b| f.eval_unchecked(b)).sum();
        if best.as_ref().map_or(true, |&(_, v)| value < v) {
            best = Some((blocks, value));
        }
    }
    let (blocks, value) = best.ok_or_else(|| {
        Error::Infeasible("no feasible partition into k blocks exists".into())
    })?;
    let p = witnessed(n, blocks, m).or_else(|e| match mode {
        // In common mode the witness must be shared; recompute it.
        WitnessMode::Common => Err(e),
        WitnessMode::Separate => Err(e),
    })?;
    Ok((p, value))
}

/// A transversal of `blocks` that is simultaneously a basis of both matroids,
/// found by exhaustive choice enumeration with pruning.
pub fn common_transversal(m1: &Matroid, m2: &Matroid, blocks: &[ElemSet]) -> Option<Vec<usize>> {
    let k = blocks.len();
    if m1.rank_full() != k || m2.rank_full() != k {
        return None;
    }
    fn rec(
        m1: &Matroid,
        m2: &Matroid,
        blocks: &[ElemSet],
        i: usize,
        chosen: ElemSet,
        picks: &mut Vec<usize>,
    ) -> bool {
        if i == blocks.len() {
            return true;
        }
        for e in set::elems(blocks[i]) {
            let next = chosen | set::singleton(e);
            if m1.indep_unchecked(next) && m2.indep_unchecked(next) {
                picks.push(e);
                if rec(m1, m2, blocks, i + 1, next, picks) {
                    return true;
                }
                picks.pop();
            }
        }
        false
    }
    let mut picks = Vec::new();
    rec(m1, m2, blocks, 0, 0, &mut picks).then_some(picks)
}
