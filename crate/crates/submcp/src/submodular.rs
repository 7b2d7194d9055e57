//! Submodular value oracles: concrete families, evaluation, and exhaustive
//! property verification at desk scale.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{WeightedGraph, WeightedHypergraph};
use crate::matroid::Matroid;
use crate::partition::Partition;
use crate::set::{self, ElemSet};
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub enum OracleKind {
    /// d_w(S): total weight of graph edges leaving S. Symmetric.
    GraphCut(WeightedGraph),
    /// Total weight of edges with at least one endpoint in S. Monotone.
    Coverage(WeightedGraph),
    /// Total weight of hyperedges meeting both sides. Symmetric.
    HypergraphCut(WeightedHypergraph),
    /// Rank function of a matroid. Monotone.
    MatroidRank(Arc<Matroid>),
    /// Full value table indexed by subset bitmask.
    Table(Vec<Weight>),
}

#[derive(Clone, Debug)]
pub struct SubmodularOracle {
    n: usize,
    kind: OracleKind,
    declared_symmetric: bool,
    declared_monotone: bool,
}

impl SubmodularOracle {
    pub fn graph_cut(graph: WeightedGraph) -> Self {
        SubmodularOracle {
            n: graph.n,
            kind: OracleKind::GraphCut(graph),
            declared_symmetric: true,
            declared_monotone: false,
        }
    }

    pub fn coverage(graph: WeightedGraph) -> Self {
        SubmodularOracle {
            n: graph.n,
            kind: OracleKind::Coverage(graph),
            declared_symmetric: false,
            declared_monotone: true,
        }
    }

    pub fn hypergraph_cut(hypergraph: WeightedHypergraph) -> Self {
        SubmodularOracle {
            n: hypergraph.n,
            kind: OracleKind::HypergraphCut(hypergraph),
            declared_symmetric: true,
            declared_monotone: false,
        }
    }

    pub fn matroid_rank(m: Arc<Matroid>) -> Self {
        SubmodularOracle {
            n: m.ground_size(),
            kind: OracleKind::MatroidRank(m),
            declared_symmetric: false,
            declared_monotone: true,
        }
    }

    /// Explicit table oracle. The table must have one entry per subset,
    /// value 0 on the empty set and no negative entries.
    pub fn table(n: usize, values: Vec<Weight>, symmetric: bool, monotone: bool) -> Result<Self> {
        if n == 0 || n > 20 {
            return Err(Error::InvalidArgument(format!(
                "table oracle supports 1..=20 elements, got {n}"
            )));
        }
        if values.len() != 1 << n {
            return Err(Error::validation(
                "values",
                format!("expected {} entries, got {}", 1usize << n, values.len()),
            ));
        }
        if !values[0].is_zero() {
            return Err(Error::validation("values", "f(empty) must be 0"));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::validation("values", "negative value"));
        }
        Ok(SubmodularOracle {
            n,
            kind: OracleKind::Table(values),
            declared_symmetric: symmetric,
            declared_monotone: monotone,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &OracleKind {
        &self.kind
    }

    pub fn declared_symmetric(&self) -> bool {
        self.declared_symmetric
    }

    pub fn declared_monotone(&self) -> bool {
        self.declared_monotone
    }

    pub fn evaluate(&self, s: ElemSet) -> Result<Weight> {
        if s & !set::full_set(self.n) != 0 {
            return Err(Error::InvalidSubset(format!(
                "subset {s:#b} not contained in ground set of size {}",
                self.n
            )));
        }
        Ok(self.eval_unchecked(s))
    }

    pub(crate) fn eval_unchecked(&self, s: ElemSet) -> Weight {
        match &self.kind {
            OracleKind::GraphCut(g) => g.cut(s),
            OracleKind::Coverage(g) => g.coverage(s),
            OracleKind::HypergraphCut(h) => h.cut(s),
            OracleKind::MatroidRank(m) => Weight::int(m.rank_unchecked(s) as i64),
            OracleKind::Table(values) => values[s as usize],
        }
    }

    /// Sum of f over the blocks of a partition of this oracle's ground set.
    pub fn partition_value(&self, p: &Partition) -> Result<Weight> {
        let union: ElemSet = p.blocks().iter().fold(0, |a, &b| a | b);
        if union != set::full_set(self.n) {
            return Err(Error::InvalidPartition(
                "partition does not cover the oracle ground set".into(),
            ));
        }
        Ok(p.blocks().iter().map(|&b| self.eval_unchecked(b)).sum())
    }

    /// Verifies submodularity, symmetry and monotonicity. Exhaustive up to
    /// n = 20 (full pairwise check up to n = 12, the equivalent local
    /// condition above), sampled with an explicit flag beyond that.
    pub fn verify_properties(&self) -> PropertyReport {
        if self.n <= 12 {
            self.verify_full_pairs()
        } else if self.n <= 20 {
            self.verify_local()
        } else {
            self.verify_sampled()
        }
    }

    fn value_table(&self) -> Vec<Weight> {
        (0..=set::full_set(self.n))
            .map(|s| self.eval_unchecked(s))
            .collect()
    }

    fn verify_full_pairs(&self) -> PropertyReport {
        let full = set::full_set(self.n);
        let t = self.value_table();
        let mut report = PropertyReport::clean(false);
        'outer: for a in 0..=full {
            for b in 0..=full {
                if t[a as usize] + t[b as usize] < t[(a | b) as usize] + t[(a & b) as usize] {
                    report.submodular = false;
                    report.submodular_witness = Some((a, b));
                    break 'outer;
                }
            }
        }
        self.check_symmetry_monotonicity(&t, &mut report);
        report
    }

    fn verify_local(&self) -> PropertyReport {
        // f(S+u) + f(S+v) >= f(S+u+v) + f(S) for all S and u,v not in S is
        // equivalent to pairwise submodularity.
        let full = set::full_set(self.n);
        let t = self.value_table();
        let mut report = PropertyReport::clean(false);
        'outer: for s in 0..=full {
            let outside = full & !s;
            for u in set::elems(outside) {
                for v in set::elems(outside) {
                    if v <= u {
                        continue;
                    }
                    let su = s | set::singleton(u);
                    let sv = s | set::singleton(v);
                    if t[su as usize] + t[sv as usize] < t[(su | sv) as usize] + t[s as usize] {
                        report.submodular = false;
                        report.submodular_witness = Some((su, sv));
                        break 'outer;
                    }
                }
            }
        }
        self.check_symmetry_monotonicity(&t, &mut report);
        report
    }

    fn check_symmetry_monotonicity(&self, t: &[Weight], report: &mut PropertyReport) {
        let full = set::full_set(self.n);
        for s in 0..=full {
            if report.symmetric && t[s as usize] != t[(full & !s) as usize] {
                report.symmetric = false;
                report.symmetric_witness = Some(s);
            }
            if report.monotone {
                for u in set::elems(full & !s) {
                    if t[(s | set::singleton(u)) as usize] < t[s as usize] {
                        report.monotone = false;
                        report.monotone_witness = Some((s, u));
                        break;
                    }
                }
            }
        }
    }

    fn verify_sampled(&self) -> PropertyReport {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let full = set::full_set(self.n);
        let mut report = PropertyReport::clean(true);
        for _ in 0..20_000 {
            let a = rng.gen::<u64>() & full;
            let b = rng.gen::<u64>() & full;
            let fa = self.eval_unchecked(a);
            let fb = self.eval_unchecked(b);
            if fa + fb < self.eval_unchecked(a | b) + self.eval_unchecked(a & b) {
                report.submodular = false;
                report.submodular_witness = Some((a, b));
            }
            if fa != self.eval_unchecked(full & !a) {
                report.symmetric = false;
                report.symmetric_witness = Some(a);
            }
            if a & !b == 0 && fa > fb {
                report.monotone = false;
            }
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub submodular: bool,
    pub symmetric: bool,
    pub monotone: bool,
    /// True when the ground set was too large for an exhaustive check.
    pub sampled: bool,
    pub submodular_witness: Option<(ElemSet, ElemSet)>,
    pub symmetric_witness: Option<ElemSet>,
    pub monotone_witness: Option<(ElemSet, usize)>,
}

impl PropertyReport {
    fn clean(sampled: bool) -> Self {
        PropertyReport {
            submodular: true,
            symmetric: true,
            monotone: true,
            sampled,
            submodular_witness: None,
            symmetric_witness: None,
            monotone_witness: None,
        }
    }
}
