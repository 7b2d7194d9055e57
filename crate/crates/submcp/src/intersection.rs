//! Matroid intersection: exchange-graph augmenting paths, the weighted
//! variant, and transversal (system of distinct representatives) queries.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{self, ElemSet};
use crate::weight::Weight;

fn check_pair(m1: &Matroid, m2: &Matroid) -> Result<usize> {
    if m1.ground_size() != m2.ground_size() {
        return Err(Error::InvalidArgument(format!(
            "ground set mismatch: {} vs {}",
            m1.ground_size(),
            m2.ground_size()
        )));
    }
    Ok(m1.ground_size())
}

/// Exchange graph of the common independent set `i`:
/// arc x -> y (x in i, y not) when i - x + y is independent in m1,
/// arc y -> x when i - x + y is independent in m2. Sources are elements
/// addable w.r.t. m1, sinks addable w.r.t. m2.
struct ExchangeGraph {
    arcs: Vec<Vec<usize>>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
}

fn build_exchange_graph(m1: &Matroid, m2: &Matroid, i: ElemSet, n: usize) -> ExchangeGraph {
    let mut arcs = vec![Vec::new(); n];
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for y in 0..n {
        if set::contains(i, y) {
            continue;
        }
        let with_y = i | set::singleton(y);
        if m1.indep_unchecked(with_y) {
            sources.push(y);
        }
        if m2.indep_unchecked(with_y) {
            sinks.push(y);
        }
        for x in set::elems(i) {
            let swapped = with_y & !set::singleton(x);
            if m1.indep_unchecked(swapped) {
                arcs[x].push(y);
            }
            if m2.indep_unchecked(swapped) {
                arcs[y].push(x);
            }
        }
    }
    ExchangeGraph { arcs, sources, sinks }
}

/// One BFS augmentation step; returns the augmented set if a path exists.
fn bfs_augment(m1: &Matroid, m2: &Matroid, i: ElemSet, n: usize) -> Option<ElemSet> {
    let g = build_exchange_graph(m1, m2, i, n);
    let mut pred = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for &s in &g.sources {
        seen[s] = true;
        queue.push_back(s);
    }
    let sink_set: ElemSet = set::from_elems(g.sinks.iter().copied());
    while let Some(u) = queue.pop_front() {
        if set::contains(sink_set, u) {
            let mut cur = u;
            let mut next = i;
            loop {
                next ^= set::singleton(cur);
                if pred[cur] == usize::MAX {
                    break;
                }
                cur = pred[cur];
            }
            return Some(next);
        }
        for &v in &g.arcs[u] {
            if !seen[v] {
                seen[v] = true;
                pred[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Maximum-cardinality common independent set of two matroids on the same
/// ground set, via shortest augmenting paths in the exchange graph.
pub fn max_common_independent(m1: &Matroid, m2: &Matroid) -> Result<ElemSet> {
    let n = check_pair(m1, m2)?;
    let mut i: ElemSet = 0;
    while let Some(next) = bfs_augment(m1, m2, i, n) {
        i = next;
    }
    Ok(i)
}

/// One max-gain, min-length augmentation via Bellman-Ford on the exchange
/// graph. Starting from an extreme set (max weight at its cardinality) the
/// result is extreme again.
fn weighted_augment(
    m1: &Matroid,
    m2: &Matroid,
    weights: &[Weight],
    i: ElemSet,
    n: usize,
) -> Option<(ElemSet, Weight)> {
    let g = build_exchange_graph(m1, m2, i, n);
    if g.sources.is_empty() || g.sinks.is_empty() {
        return None;
    }
    let node_gain = |v: usize| {
        if set::contains(i, v) {
            -weights[v]
        } else {
            weights[v]
        }
    };
    // dist = (gain, path length); maximize gain, then minimize length.
    let mut dist: Vec<Option<(Weight, usize)>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    for &s in &g.sources {
        dist[s] = Some((weights[s], 1));
    }
    for _ in 0..2 * n {
        let mut changed = false;
        for u in 0..n {
            let Some((gain_u, len_u)) = dist[u] else { continue };
            for &v in &g.arcs[u] {
                let cand = (gain_u + node_gain(v), len_u + 1);
                let better = match dist[v] {
                    None => true,
                    Some((g0, l0)) => cand.0 > g0 || (cand.0 == g0 && cand.1 < l0),
                };
                if better {
                    dist[v] = Some(cand);
                    pred[v] = u;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let best = g
        .sinks
        .iter()
        .filter_map(|&t| dist[t].map(|(gain, len)| (gain, len, t)))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(b.2.cmp(&a.2)))?;
    let (gain, _, sink) = best;
    let mut next = i;
    let mut cur = sink;
    loop {
        next ^= set::singleton(cur);
        if pred[cur] == usize::MAX {
            break;
        }
        cur = pred[cur];
    }
    Some((next, gain))
}

/// Sequence of extreme common independent sets, one per cardinality from 0 up
/// to the maximum, each of maximum weight at its size.
fn extreme_sequence(m1: &Matroid, m2: &Matroid, weights: &[Weight], n: usize) -> Vec<(ElemSet, Weight)> {
    let mut out = vec![(0u64, Weight::ZERO)];
    let mut i: ElemSet = 0;
    let mut total = Weight::ZERO;
    while let Some((next, gain)) = weighted_augment(m1, m2, weights, i, n) {
        i = next;
        total += gain;
        out.push((i, total));
    }
    out
}

/// Maximum-weight set among the maximum-cardinality common independent sets.
pub fn max_weight_common_independent(
    m1: &Matroid,
    m2: &Matroid,
    weights: &[Weight],
) -> Result<(ElemSet, Weight)> {
    let n = check_pair(m1, m2)?;
    if weights.len() != n {
        return Err(Error::InvalidArgument(format!(
            "expected {n} weights, got {}",
            weights.len()
        )));
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    let seq = extreme_sequence(m1, m2, weights, n);
    let &(best, total) = seq.last().expect("sequence contains the empty set");
    #[cfg(debug_assertions)]
    if n <= 12 {
        let brute = brute_force_max_weight(m1, m2, weights, n);
        debug_assert_eq!(
            (set::size(best), total),
            (set::size(brute.0), brute.1),
            "weighted matroid intersection disagrees with brute force"
        );
    }
    Ok((best, total))
}

/// Maximum-weight common independent set over all cardinalities. Used to find
/// minimum-weight common spanning sets via complements in the dual matroids.
pub(crate) fn best_weight_common_independent(
    m1: &Matroid,
    m2: &Matroid,
    weights: &[Weight],
) -> Result<(ElemSet, Weight)> {
    let n = check_pair(m1, m2)?;
    let seq = extreme_sequence(m1, m2, weights, n);
    Ok(seq
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1))
        .expect("nonempty sequence"))
}

#[cfg(debug_assertions)]
fn brute_force_max_weight(m1: &Matroid, m2: &Matroid, weights: &[Weight], n: usize) -> (ElemSet, Weight) {
    let mut best = (0u64, Weight::ZERO);
    let mut best_size = 0usize;
    for s in 0..=set::full_set(n) {
        if m1.indep_unchecked(s) && m2.indep_unchecked(s) {
            let w: Weight = set::elems(s).map(|e| weights[e]).sum();
            let sz = set::size(s);
            if sz > best_size || (sz == best_size && w > best.1) {
                best = (s, w);
                best_size = sz;
            }
        }
    }
    best
}

/// Looks for an independent transversal of `blocks`: one element per block,
/// jointly independent in `m`. Elements outside every block are not used.
/// Returns the chosen element per block, aligned with `blocks`.
pub fn transversal_witness(m: &Matroid, blocks: &[ElemSet]) -> Option<Vec<usize>> {
    let k = blocks.len();
    if m.rank_full() < k {
        return None;
    }
    let classes: Vec<(ElemSet, usize)> = blocks
        .iter()
        .map(|&b| (b, 1))
        .chain(uncovered_class(m.ground_size(), blocks))
        .collect();
    let pm = Matroid::partition(m.ground_size(), classes).expect("valid partition matroid");
    let common = max_common_independent(m, &pm).expect("same ground set");
    if set::size(common) < k {
        return None;
    }
    let mut witness = vec![usize::MAX; k];
    for e in set::elems(common) {
        let b = blocks
            .iter()
            .position(|&blk| set::contains(blk, e))
            .expect("uncovered elements are capped at zero");
        witness[b] = e;
    }
    Some(witness)
}

/// Transversal-basis feasibility for a partition: the partition must have
/// exactly rank(M) blocks, and the returned witness picks one element per
/// block forming a basis of `m`.
pub fn has_transversal_basis(m: &Matroid, p: &crate::partition::Partition) -> Result<Option<Vec<usize>>> {
    let covered: ElemSet = p.blocks().iter().fold(0, |a, &b| a | b);
    if covered != set::full_set(m.ground_size()) {
        return Err(Error::InvalidPartition(
            "partition does not cover the matroid ground set".into(),
        ));
    }
    if m.rank_full() != p.k() {
        return Ok(None);
    }
    Ok(transversal_witness(m, p.blocks()))
}

fn uncovered_class(n: usize, blocks: &[ElemSet]) -> Option<(ElemSet, usize)> {
    let covered: ElemSet = blocks.iter().fold(0, |a, &b| a | b);
    let rest = set::full_set(n) & !covered;
    (rest != 0).then_some((rest, 0))
}
