//! Matroid oracles: explicit families, derived constructions, greedy bases.
//!
//! Every matroid answers independence queries over a ground set `0..n`. The
//! derived constructions (truncation, contraction, dual, tree-edge) wrap an
//! inner oracle behind an `Arc` so they compose freely.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::set::{self, ElemSet};
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub enum MatroidKind {
    /// U(r, n): independent iff size at most `rank`.
    Uniform { rank: usize },
    /// Disjoint classes with per-class capacities; uncovered elements are free.
    Partition { classes: Vec<(ElemSet, usize)> },
    /// Capacities over a laminar family, plus an optional global rank cap.
    Laminar {
        sets: Vec<(ElemSet, usize)>,
        rank_cap: Option<usize>,
    },
    /// Ground set = edge indices of `graph`; independent iff the edges form a forest.
    Graphic { graph: WeightedGraph },
    /// Rank-r paving matroid given by its hypergraph of forbidden near-bases.
    Paving { rank: usize, hyperedges: Vec<ElemSet> },
    /// Matroid given by an explicit list of bases.
    ExplicitBases { bases: Vec<ElemSet>, trusted: bool },
    Truncation { inner: Arc<Matroid>, k: usize },
    /// Contracted elements stay in the ground set as loops; on subsets of the
    /// remaining elements this behaves exactly like M/Z.
    Contraction {
        inner: Arc<Matroid>,
        z: ElemSet,
        /// A fixed maximum independent subset of `z`, chosen greedily by index.
        iz: ElemSet,
    },
    Dual { inner: Arc<Matroid>, inner_rank: usize },
    /// The matroid on the edges of a spanning tree where an edge set is
    /// independent iff the components it cuts out admit a transversal
    /// independent in the inner matroid.
    TreeEdge {
        tree: WeightedGraph,
        inner: Arc<Matroid>,
        inner_rank: usize,
    },
}

#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    kind: MatroidKind,
}

impl Matroid {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }

    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        check_ground(n)?;
        if rank > n {
            return Err(Error::InvalidArgument(format!("uniform rank {rank} > ground size {n}")));
        }
        Ok(Matroid { n, kind: MatroidKind::Uniform { rank } })
    }

    pub fn partition(n: usize, classes: Vec<(ElemSet, usize)>) -> Result<Self> {
        check_ground(n)?;
        let full = set::full_set(n);
        let mut seen: ElemSet = 0;
        for &(mask, _) in &classes {
            if mask & !full != 0 {
                return Err(Error::validation("classes", "class contains out-of-range element"));
            }
            if mask & seen != 0 {
                return Err(Error::validation("classes", "classes are not disjoint"));
            }
            seen |= mask;
        }
        Ok(Matroid { n, kind: MatroidKind::Partition { classes } })
    }

    pub fn laminar(n: usize, sets: Vec<(ElemSet, usize)>, rank_cap: Option<usize>) -> Result<Self> {
        check_ground(n)?;
        let full = set::full_set(n);
        for (i, &(a, _)) in sets.iter().enumerate() {
            if a & !full != 0 {
                return Err(Error::validation("sets", "set contains out-of-range element"));
            }
            for &(b, _) in &sets[i + 1..] {
                let inter = a & b;
                if inter != 0 && inter != a && inter != b {
                    return Err(Error::validation("sets", "family is not laminar"));
                }
            }
        }
        Ok(Matroid { n, kind: MatroidKind::Laminar { sets, rank_cap } })
    }

    /// Graphic matroid; the ground set is the edge index set of `graph`.
    pub fn graphic(graph: WeightedGraph) -> Result<Self> {
        let n = graph.edges.len();
        check_ground(n)?;
        Ok(Matroid { n, kind: MatroidKind::Graphic { graph } })
    }

    pub fn paving(n: usize, rank: usize, hyperedges: Vec<ElemSet>) -> Result<Self> {
        check_ground(n)?;
        if n < rank {
            return Err(Error::validation("rank", format!("ground size {n} smaller than rank {rank}")));
        }
        let full = set::full_set(n);
        for (i, &h) in hyperedges.iter().enumerate() {
            if h & !full != 0 {
                return Err(Error::validation("hyperedges", "hyperedge out of range"));
            }
            if h == full {
                return Err(Error::validation("hyperedges", "hyperedge must be a proper subset"));
            }
            if set::size(h) < rank {
                return Err(Error::validation(
                    "hyperedges",
                    format!("hyperedge of size {} is smaller than rank {rank}", set::size(h)),
                ));
            }
            for &g in &hyperedges[i + 1..] {
                if rank < 2 || set::size(h & g) > rank - 2 {
                    return Err(Error::validation(
                        "hyperedges",
                        "pairwise intersection exceeds rank - 2",
                    ));
                }
            }
        }
        Ok(Matroid { n, kind: MatroidKind::Paving { rank, hyperedges } })
    }

    /// Explicit-bases matroid. For n <= 10 the basis-exchange axiom is checked
    /// exhaustively at construction; larger ground sets are accepted trusted.
    pub fn explicit_bases(n: usize, bases: Vec<ElemSet>) -> Result<Self> {
        check_ground(n)?;
        if bases.is_empty() {
            return Err(Error::validation("bases", "basis list must be nonempty"));
        }
        let full = set::full_set(n);
        let r = set::size(bases[0]);
        for &b in &bases {
            if b & !full != 0 {
                return Err(Error::validation("bases", "basis out of range"));
            }
            if set::size(b) != r {
                return Err(Error::validation("bases", "bases have different sizes"));
            }
        }
        let trusted = n > 10;
        if !trusted {
            for &b1 in &bases {
                for &b2 in &bases {
                    for x in set::elems(b1 & !b2) {
                        let ok = set::elems(b2 & !b1)
                            .any(|y| bases.contains(&(b1 & !set::singleton(x) | set::singleton(y))));
                        if !ok {
                            return Err(Error::validation(
                                "bases",
                                format!("basis exchange fails for {b1:#b}, {b2:#b}, element {x}"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(Matroid { n, kind: MatroidKind::ExplicitBases { bases, trusted } })
    }

    pub fn truncation(inner: Arc<Matroid>, k: usize) -> Result<Self> {
        if k > inner.rank_full() {
            return Err(Error::InvalidArgument(format!(
                "truncation level {k} exceeds rank {}",
                inner.rank_full()
            )));
        }
        Ok(Matroid { n: inner.n, kind: MatroidKind::Truncation { inner, k } })
    }

    pub fn contraction(inner: Arc<Matroid>, z: ElemSet) -> Result<Self> {
        let full = set::full_set(inner.n);
        if z & !full != 0 {
            return Err(Error::InvalidSubset("contraction set out of range".into()));
        }
        let iz = inner.greedy_independent_in(z);
        Ok(Matroid { n: inner.n, kind: MatroidKind::Contraction { inner, z, iz } })
    }

    pub fn dual(inner: Arc<Matroid>) -> Self {
        let inner_rank = inner.rank_full();
        let n = inner.n;
        Matroid { n, kind: MatroidKind::Dual { inner, inner_rank } }
    }

    pub fn tree_edge(tree: WeightedGraph, inner: Arc<Matroid>) -> Result<Self> {
        if tree.n != inner.n {
            return Err(Error::InvalidArgument(
                "tree vertex set must equal the inner matroid ground set".into(),
            ));
        }
        if !tree.is_tree() {
            return Err(Error::InvalidArgument("graph is not a spanning tree".into()));
        }
        let inner_rank = inner.rank_full();
        let n = tree.edges.len();
        Ok(Matroid { n, kind: MatroidKind::TreeEdge { tree, inner, inner_rank } })
    }

    pub fn is_independent(&self, s: ElemSet) -> Result<bool> {
        if s & !set::full_set(self.n) != 0 {
            return Err(Error::InvalidSubset(format!(
                "subset {s:#b} not contained in ground set of size {}",
                self.n
            )));
        }
        Ok(self.indep_unchecked(s))
    }

    pub(crate) fn indep_unchecked(&self, s: ElemSet) -> bool {
        match &self.kind {
            MatroidKind::Uniform { rank } => set::size(s) <= *rank,
            MatroidKind::Partition { classes } => classes
                .iter()
                .all(|&(mask, cap)| set::size(s & mask) <= cap),
            MatroidKind::Laminar { sets, rank_cap } => {
                sets.iter().all(|&(mask, cap)| set::size(s & mask) <= cap)
                    && rank_cap.map_or(true, |cap| set::size(s) <= cap)
            }
            MatroidKind::Graphic { graph } => {
                let comps = graph.components_with_edges(s);
                // Forest iff every kept edge merged two components.
                graph.n - comps.len() == set::size(s)
            }
            MatroidKind::Paving { rank, hyperedges } => {
                let sz = set::size(s);
                if sz + 1 < *rank + 1 {
                    // sz <= rank - 1 (written without underflow)
                    sz < *rank
                } else if sz == *rank {
                    hyperedges.iter().all(|&h| s & !h != 0)
                } else {
                    false
                }
            }
            MatroidKind::ExplicitBases { bases, .. } => bases.iter().any(|&b| s & !b == 0),
            MatroidKind::Truncation { inner, k } => {
                set::size(s) <= *k && inner.indep_unchecked(s)
            }
            MatroidKind::Contraction { inner, z, iz } => {
                s & z == 0 && inner.indep_unchecked(s | iz)
            }
            MatroidKind::Dual { inner, inner_rank } => {
                let complement = set::full_set(self.n) & !s;
                inner.rank_unchecked(complement) == *inner_rank
            }
            MatroidKind::TreeEdge { tree, inner, inner_rank } => {
                let parts = set::size(s) + 1;
                if parts > *inner_rank {
                    return false;
                }
                let kept = set::full_set(tree.edges.len()) & !s;
                let comps = tree.components_with_edges(kept);
                debug_assert_eq!(comps.len(), parts);
                let truncated = Matroid::truncation(inner.clone(), parts)
                    .expect("parts <= inner rank");
                crate::intersection::transversal_witness(&truncated, &comps).is_some()
            }
        }
    }

    /// Rank of a subset, computed by greedy growth.
    pub fn rank(&self, s: ElemSet) -> Result<usize> {
        if s & !set::full_set(self.n) != 0 {
            return Err(Error::InvalidSubset("rank query out of range".into()));
        }
        Ok(self.rank_unchecked(s))
    }

    pub(crate) fn rank_unchecked(&self, s: ElemSet) -> usize {
        set::size(self.greedy_independent_in(s))
    }

    pub fn rank_full(&self) -> usize {
        self.rank_unchecked(set::full_set(self.n))
    }

    /// Maximum independent subset of `s`, grown greedily by ascending index.
    pub(crate) fn greedy_independent_in(&self, s: ElemSet) -> ElemSet {
        let mut cur: ElemSet = 0;
        for e in set::elems(s) {
            if self.indep_unchecked(cur | set::singleton(e)) {
                cur |= set::singleton(e);
            }
        }
        cur
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n == 0 || n >= 64 {
        Err(Error::InvalidArgument(format!(
            "ground size {n} out of supported range 1..64"
        )))
    } else {
        Ok(())
    }
}

/// Minimum-weight basis by the greedy algorithm, ascending `(weight, index)`.
pub fn min_weight_basis(m: &Matroid, weights: &[Weight]) -> Result<(ElemSet, Weight)> {
    if weights.len() != m.ground_size() {
        return Err(Error::InvalidArgument(format!(
            "expected {} weights, got {}",
            m.ground_size(),
            weights.len()
        )));
    }
    let mut order: Vec<usize> = (0..m.ground_size()).collect();
    order.sort_by_key(|&i| (weights[i], i));
    let mut basis: ElemSet = 0;
    let mut total = Weight::ZERO;
    for i in order {
        if m.indep_unchecked(basis | set::singleton(i)) {
            basis |= set::singleton(i);
            total += weights[i];
        }
    }
    Ok((basis, total))
}

/// Exhaustively check the independence axioms (I1)-(I3). Intended for desk
/// scale; refuses ground sets above 12 elements.
pub fn check_axioms(m: &Matroid) -> Result<()> {
    let n = m.ground_size();
    if n > 12 {
        return Err(Error::ResourceLimit(format!("axiom check limited to n <= 12, got {n}")));
    }
    let full = set::full_set(n);
    let table: Vec<bool> = (0..=full).map(|s| m.indep_unchecked(s)).collect();
    if !table[0] {
        return Err(Error::PropertyViolation("(I1) empty set is dependent".into()));
    }
    for s in 1..=full {
        if table[s as usize] {
            for e in set::elems(s) {
                if !table[(s & !set::singleton(e)) as usize] {
                    return Err(Error::PropertyViolation(format!(
                        "(I2) {s:#b} independent but {:#b} is not",
                        s & !set::singleton(e)
                    )));
                }
            }
        }
    }
    for x in 0..=full {
        if !table[x as usize] {
            continue;
        }
        for y in 0..=full {
            if !table[y as usize] || set::size(x) >= set::size(y) {
                continue;
            }
            let ok = set::elems(y & !x).any(|e| table[(x | set::singleton(e)) as usize]);
            if !ok {
                return Err(Error::PropertyViolation(format!(
                    "(I3) no exchange element from {y:#b} into {x:#b}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_graphic() -> Matroid {
        let g = WeightedGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        Matroid::graphic(g).unwrap()
    }

    #[test]
    fn partition_matroid_capacity_check() {
        let m = Matroid::partition(4, vec![(0b0011, 1), (0b1100, 1)]).unwrap();
        assert!(m.is_independent(0b0101).unwrap()); // {a, c}
        assert!(!m.is_independent(0b0011).unwrap()); // {a, b}
        assert_eq!(m.rank_full(), 2);
    }

    #[test]
    fn paving_basis_definition() {
        // r = 2, H = {a,b,c} on ground {a,b,c,d}
        let m = Matroid::paving(4, 2, vec![0b0111]).unwrap();
        assert!(!m.is_independent(0b0011).unwrap()); // {a,b} inside H
        assert!(m.is_independent(0b1001).unwrap()); // {a,d}
        assert_eq!(m.rank_full(), 2);
    }

    #[test]
    fn paving_validation_rejects_bad_specs() {
        // |H1 cap H2| = r - 1 violates the paving condition
        assert!(Matroid::paving(5, 3, vec![0b00111, 0b11011].into()).is_err());
        // hyperedge smaller than rank
        assert!(Matroid::paving(5, 3, vec![0b00011].into()).is_err());
    }

    #[test]
    fn graphic_triangle() {
        let m = triangle_graphic();
        assert!(m.is_independent(0b011).unwrap());
        assert!(!m.is_independent(0b111).unwrap());
        assert_eq!(m.rank_full(), 2);
    }

    #[test]
    fn rank_equals_brute_force_max() {
        let m = triangle_graphic();
        for s in 0..8u64 {
            let brute = set::submasks(s)
                .filter(|&x| m.indep_unchecked(x))
                .map(set::size)
                .max()
                .unwrap();
            assert_eq!(m.rank(s).unwrap(), brute);
        }
    }

    #[test]
    fn truncation_examples() {
        let u34 = Arc::new(Matroid::uniform(3, 4).unwrap());
        let t = Matroid::truncation(u34, 2).unwrap();
        let u24 = Matroid::uniform(2, 4).unwrap();
        for s in 0..16u64 {
            assert_eq!(t.indep_unchecked(s), u24.indep_unchecked(s));
        }
        let tri = Arc::new(triangle_graphic());
        let t1 = Matroid::truncation(tri.clone(), 1).unwrap();
        assert!(t1.is_independent(0b001).unwrap());
        assert!(!t1.is_independent(0b011).unwrap());
        assert!(Matroid::truncation(tri, 5).is_err());
    }

    #[test]
    fn contraction_examples() {
        let tri = Arc::new(triangle_graphic());
        let c = Matroid::contraction(tri.clone(), 0b001).unwrap();
        // Contracting one triangle edge leaves two parallel edges.
        assert!(c.is_independent(0b010).unwrap());
        assert!(c.is_independent(0b100).unwrap());
        assert!(!c.is_independent(0b110).unwrap());
        assert_eq!(c.rank_unchecked(0b110), 1);

        let u24 = Arc::new(Matroid::uniform(2, 4).unwrap());
        let c = Matroid::contraction(u24, 0b0001).unwrap();
        for s in set::submasks(0b1110) {
            assert_eq!(c.indep_unchecked(s), set::size(s) <= 1);
        }
        // contract(M, empty) behaves as M
        let tri2 = Matroid::contraction(tri.clone(), 0).unwrap();
        for s in 0..8u64 {
            assert_eq!(tri2.indep_unchecked(s), tri.indep_unchecked(s));
        }
    }

    #[test]
    fn contraction_matches_rank_formula() {
        let tri = Arc::new(triangle_graphic());
        for z in 0..8u64 {
            let c = Matroid::contraction(tri.clone(), z).unwrap();
            let rz = tri.rank_unchecked(z);
            for x in set::submasks(0b111 & !z) {
                assert_eq!(c.rank_unchecked(x), tri.rank_unchecked(x | z) - rz);
            }
        }
    }

    #[test]
    fn dual_examples() {
        let u13 = Arc::new(Matroid::uniform(1, 3).unwrap());
        let d = Matroid::dual(u13);
        let u23 = Matroid::uniform(2, 3).unwrap();
        for s in 0..8u64 {
            assert_eq!(d.indep_unchecked(s), u23.indep_unchecked(s));
        }
        let tri = Arc::new(triangle_graphic());
        let d = Matroid::dual(tri);
        assert!(d.is_independent(0b001).unwrap());
        assert!(!d.is_independent(0b011).unwrap());
    }

    #[test]
    fn dual_rank_formula_and_involution() {
        let m = Arc::new(Matroid::paving(5, 3, vec![0b01111]).unwrap());
        let d = Arc::new(Matroid::dual(m.clone()));
        let dd = Matroid::dual(d.clone());
        let full = set::full_set(5);
        let r = m.rank_full();
        for s in 0..=full {
            assert_eq!(
                d.rank_unchecked(s),
                set::size(s) + m.rank_unchecked(full & !s) - r
            );
            assert_eq!(dd.indep_unchecked(s), m.indep_unchecked(s));
        }
    }

    #[test]
    fn min_weight_basis_examples() {
        let m = Matroid::uniform(2, 3).unwrap();
        let w = [Weight::int(3), Weight::int(1), Weight::int(2)];
        let (basis, total) = min_weight_basis(&m, &w).unwrap();
        assert_eq!(basis, 0b110);
        assert_eq!(total, Weight::int(3));

        let tri = triangle_graphic();
        let w = [Weight::int(1), Weight::int(2), Weight::int(3)];
        let (_, total) = min_weight_basis(&tri, &w).unwrap();
        assert_eq!(total, Weight::int(3));

        let m = Matroid::partition(3, vec![(0b011, 1), (0b100, 1)]).unwrap();
        let w = [Weight::int(5), Weight::int(1), Weight::int(2)];
        let (basis, total) = min_weight_basis(&m, &w).unwrap();
        assert_eq!(basis, 0b110);
        assert_eq!(total, Weight::int(3));
    }

    #[test]
    fn axiom_suite_on_constructed_matroids() {
        let graphs = WeightedGraph::unit(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let candidates: Vec<Matroid> = vec![
            Matroid::uniform(2, 5).unwrap(),
            Matroid::partition(5, vec![(0b00011, 1), (0b11100, 2)]).unwrap(),
            Matroid::laminar(5, vec![(0b00011, 1), (0b01111, 2)], Some(3)).unwrap(),
            Matroid::graphic(graphs).unwrap(),
            Matroid::paving(5, 3, vec![0b00111, 0b11001]).unwrap(),
            Matroid::explicit_bases(4, vec![0b0011, 0b0101, 0b0110]).unwrap(),
        ];
        for m in &candidates {
            check_axioms(m).unwrap();
            check_axioms(&Matroid::dual(Arc::new(m.clone()))).unwrap();
            let half = m.rank_full().div_ceil(2);
            check_axioms(&Matroid::truncation(Arc::new(m.clone()), half).unwrap()).unwrap();
            check_axioms(&Matroid::contraction(Arc::new(m.clone()), 0b00011).unwrap()).unwrap();
        }
    }

    #[test]
    fn explicit_bases_exchange_validation() {
        // {a,b} and {c,d} alone violate basis exchange.
        assert!(Matroid::explicit_bases(4, vec![0b0011, 0b1100]).is_err());
        assert!(Matroid::explicit_bases(4, vec![]).is_err());
    }

    #[test]
    fn out_of_range_subset_is_an_error() {
        let m = Matroid::uniform(1, 3).unwrap();
        assert!(m.is_independent(0b1000).is_err());
        assert!(m.rank(0b11000).is_err());
    }
}
