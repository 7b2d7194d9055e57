//! Versioned JSON instance files.
//!
//! Schema (version 1):
//! - `version`: integer, must be 1.
//! - `ground`: `{ "n": usize, "labels": [string]? }`; labels, when present,
//!   name elements `0..n` in order.
//! - `function`: tagged by `kind`:
//!   - `graph_cut` / `coverage`: `{ "edges": [[u, v, w], ...] }` over the
//!     ground elements as vertices,
//!   - `hypergraph_cut`: `{ "hyperedges": [{ "elems": [..], "weight": w }] }`,
//!   - `matroid_rank`: `{ "matroid": <matroid spec> }`,
//!   - `table`: `{ "values": [w; 2^n], "symmetric": bool, "monotone": bool }`,
//!     indexed by subset bitmask.
//! - `matroids`: one or two matroid specs, tagged by `kind`:
//!   - `uniform`: `{ "rank": r }`,
//!   - `partition`: `{ "classes": [{ "elems": [..], "cap": c }] }`,
//!   - `laminar`: `{ "sets": [{ "elems": [..], "cap": c }], "rank_cap": r? }`,
//!   - `graphic`: `{ "vertices": m, "edges": [[u, v], ...] }` (the instance
//!     ground set is the edge index set),
//!   - `paving`: `{ "rank": r, "hyperedges": [[..], ...] }`,
//!   - `explicit_bases`: `{ "bases": [[..], ...] }`,
//!   - `truncation` / `contraction` / `dual`: `{ "inner": <spec>, ... }`.
//! - `k`: target part count; must equal the rank of every listed matroid.
//! - `metadata`: `{ "seed": u64?, "generator": string? }`.
//!
//! Weights are JSON integers, or two-element `[numerator, denominator]`
//! arrays for non-integral rationals.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{WeightedGraph, WeightedHypergraph};
use crate::matroid::{Matroid, MatroidKind};
use crate::set::{self, ElemSet};
use crate::submodular::{OracleKind, SubmodularOracle};
use crate::weight::Weight;

pub const SCHEMA_VERSION: u32 = 1;

/// A fully validated problem instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub n: usize,
    pub labels: Option<Vec<String>>,
    pub oracle: SubmodularOracle,
    pub matroids: Vec<Arc<Matroid>>,
    pub k: usize,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct FileRoot {
    version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    id: Option<String>,
    ground: GroundSpec,
    function: FunctionSpec,
    matroids: Vec<MatroidSpec>,
    k: usize,
    #[serde(default)]
    metadata: Metadata,
}

#[derive(Serialize, Deserialize)]
struct GroundSpec {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct EdgeSpec(usize, usize, Weight);

#[derive(Serialize, Deserialize)]
struct HyperedgeSpec {
    elems: Vec<usize>,
    weight: Weight,
}

#[derive(Serialize, Deserialize)]
struct ClassSpec {
    elems: Vec<usize>,
    cap: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FunctionSpec {
    GraphCut { edges: Vec<EdgeSpec> },
    Coverage { edges: Vec<EdgeSpec> },
    HypergraphCut { hyperedges: Vec<HyperedgeSpec> },
    MatroidRank { matroid: MatroidSpec },
    Table {
        values: Vec<Weight>,
        symmetric: bool,
        monotone: bool,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum MatroidSpec {
    Uniform { rank: usize },
    Partition { classes: Vec<ClassSpec> },
    Laminar {
        sets: Vec<ClassSpec>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        rank_cap: Option<usize>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Paving {
        rank: usize,
        hyperedges: Vec<Vec<usize>>,
    },
    ExplicitBases { bases: Vec<Vec<usize>> },
    Truncation { inner: Box<MatroidSpec>, k: usize },
    Contraction { inner: Box<MatroidSpec>, z: Vec<usize> },
    Dual { inner: Box<MatroidSpec> },
}

fn elems_to_mask(field: &str, n: usize, elems: &[usize]) -> Result<ElemSet> {
    let mut mask: ElemSet = 0;
    for &e in elems {
        if e >= n {
            return Err(Error::validation(
                field,
                format!("element {e} out of range for ground size {n}"),
            ));
        }
        if set::contains(mask, e) {
            return Err(Error::validation(field, format!("duplicate element {e}")));
        }
        mask |= set::singleton(e);
    }
    Ok(mask)
}

fn mask_to_elems(mask: ElemSet) -> Vec<usize> {
    set::elems(mask).collect()
}

fn build_graph(field: &str, n: usize, edges: &[EdgeSpec]) -> Result<WeightedGraph> {
    let edges: Vec<(usize, usize, Weight)> = edges.iter().map(|e| (e.0, e.1, e.2)).collect();
    WeightedGraph::new(n, edges).map_err(|e| Error::validation(field, e.to_string()))
}

fn build_matroid(field: &str, n: usize, spec: &MatroidSpec) -> Result<Arc<Matroid>> {
    let wrap = |e: Error| Error::validation(field, e.to_string());
    let m = match spec {
        MatroidSpec::Uniform { rank } => Matroid::uniform(*rank, n).map_err(wrap)?,
        MatroidSpec::Partition { classes } => {
            let classes = classes
                .iter()
                .map(|c| Ok((elems_to_mask(field, n, &c.elems)?, c.cap)))
                .collect::<Result<Vec<_>>>()?;
            Matroid::partition(n, classes).map_err(wrap)?
        }
        MatroidSpec::Laminar { sets, rank_cap } => {
            let sets = sets
                .iter()
                .map(|c| Ok((elems_to_mask(field, n, &c.elems)?, c.cap)))
                .collect::<Result<Vec<_>>>()?;
            Matroid::laminar(n, sets, *rank_cap).map_err(wrap)?
        }
        MatroidSpec::Graphic { vertices, edges } => {
            if edges.len() != n {
                return Err(Error::validation(
                    field,
                    format!("graphic matroid has {} edges but the ground size is {n}", edges.len()),
                ));
            }
            let g = WeightedGraph::new(
                *vertices,
                edges.iter().map(|&(u, v)| (u, v, Weight::int(1))).collect(),
            )
            .map_err(wrap)?;
            Matroid::graphic(g).map_err(wrap)?
        }
        MatroidSpec::Paving { rank, hyperedges } => {
            let hs = hyperedges
                .iter()
                .map(|h| elems_to_mask(field, n, h))
                .collect::<Result<Vec<_>>>()?;
            Matroid::paving(n, *rank, hs).map_err(wrap)?
        }
        MatroidSpec::ExplicitBases { bases } => {
            let bs = bases
                .iter()
                .map(|b| elems_to_mask(field, n, b))
                .collect::<Result<Vec<_>>>()?;
            Matroid::explicit_bases(n, bs).map_err(wrap)?
        }
        MatroidSpec::Truncation { inner, k } => {
            Matroid::truncation(build_matroid(field, n, inner)?, *k).map_err(wrap)?
        }
        MatroidSpec::Contraction { inner, z } => {
            let z = elems_to_mask(field, n, z)?;
            Matroid::contraction(build_matroid(field, n, inner)?, z).map_err(wrap)?
        }
        MatroidSpec::Dual { inner } => Matroid::dual(build_matroid(field, n, inner)?),
    };
    Ok(Arc::new(m))
}

fn matroid_to_spec(m: &Matroid) -> Result<MatroidSpec> {
    Ok(match m.kind() {
        MatroidKind::Uniform { rank } => MatroidSpec::Uniform { rank: *rank },
        MatroidKind::Partition { classes } => MatroidSpec::Partition {
            classes: classes
                .iter()
                .map(|&(mask, cap)| ClassSpec { elems: mask_to_elems(mask), cap })
                .collect(),
        },
        MatroidKind::Laminar { sets, rank_cap } => MatroidSpec::Laminar {
            sets: sets
                .iter()
                .map(|&(mask, cap)| ClassSpec { elems: mask_to_elems(mask), cap })
                .collect(),
            rank_cap: *rank_cap,
        },
        MatroidKind::Graphic { graph } => MatroidSpec::Graphic {
            vertices: graph.n,
            edges: graph.edges.iter().map(|&(u, v, _)| (u, v)).collect(),
        },
        MatroidKind::Paving { rank, hyperedges } => MatroidSpec::Paving {
            rank: *rank,
            hyperedges: hyperedges.iter().map(|&h| mask_to_elems(h)).collect(),
        },
        MatroidKind::ExplicitBases { bases, .. } => MatroidSpec::ExplicitBases {
            bases: bases.iter().map(|&b| mask_to_elems(b)).collect(),
        },
        MatroidKind::Truncation { inner, k } => MatroidSpec::Truncation {
            inner: Box::new(matroid_to_spec(inner)?),
            k: *k,
        },
        MatroidKind::Contraction { inner, z, .. } => MatroidSpec::Contraction {
            inner: Box::new(matroid_to_spec(inner)?),
            z: mask_to_elems(*z),
        },
        MatroidKind::Dual { inner, .. } => MatroidSpec::Dual {
            inner: Box::new(matroid_to_spec(inner)?),
        },
        MatroidKind::TreeEdge { .. } => {
            return Err(Error::InvalidArgument(
                "tree-edge matroids are derived at runtime and not serializable".into(),
            ))
        }
    })
}

fn function_to_spec(oracle: &SubmodularOracle) -> Result<FunctionSpec> {
    let edge_specs = |g: &WeightedGraph| {
        g.edges.iter().map(|&(u, v, w)| EdgeSpec(u, v, w)).collect()
    };
    Ok(match oracle.kind() {
        OracleKind::GraphCut(g) => FunctionSpec::GraphCut { edges: edge_specs(g) },
        OracleKind::Coverage(g) => FunctionSpec::Coverage { edges: edge_specs(g) },
        OracleKind::HypergraphCut(h) => FunctionSpec::HypergraphCut {
            hyperedges: h
                .edges
                .iter()
                .map(|(elems, w)| HyperedgeSpec { elems: elems.clone(), weight: *w })
                .collect(),
        },
        OracleKind::MatroidRank(m) => FunctionSpec::MatroidRank {
            matroid: matroid_to_spec(m)?,
        },
        OracleKind::Table(values) => FunctionSpec::Table {
            values: values.clone(),
            symmetric: oracle.declared_symmetric(),
            monotone: oracle.declared_monotone(),
        },
    })
}

fn build_function(n: usize, spec: &FunctionSpec) -> Result<SubmodularOracle> {
    Ok(match spec {
        FunctionSpec::GraphCut { edges } => {
            SubmodularOracle::graph_cut(build_graph("function.edges", n, edges)?)
        }
        FunctionSpec::Coverage { edges } => {
            SubmodularOracle::coverage(build_graph("function.edges", n, edges)?)
        }
        FunctionSpec::HypergraphCut { hyperedges } => {
            let edges: Vec<(Vec<usize>, Weight)> = hyperedges
                .iter()
                .map(|h| (h.elems.clone(), h.weight))
                .collect();
            let h = WeightedHypergraph::new(n, edges)
                .map_err(|e| Error::validation("function.hyperedges", e.to_string()))?;
            SubmodularOracle::hypergraph_cut(h)
        }
        FunctionSpec::MatroidRank { matroid } => {
            SubmodularOracle::matroid_rank(build_matroid("function.matroid", n, matroid)?)
        }
        FunctionSpec::Table { values, symmetric, monotone } => {
            SubmodularOracle::table(n, values.clone(), *symmetric, *monotone)
                .map_err(|e| Error::validation("function.values", e.to_string()))?
        }
    })
}

impl Instance {
    pub fn to_json(&self) -> Result<String> {
        let root = FileRoot {
            version: SCHEMA_VERSION,
            id: Some(self.id.clone()),
            ground: GroundSpec { n: self.n, labels: self.labels.clone() },
            function: function_to_spec(&self.oracle)?,
            matroids: self
                .matroids
                .iter()
                .map(|m| matroid_to_spec(m))
                .collect::<Result<Vec<_>>>()?,
            k: self.k,
            metadata: self.metadata.clone(),
        };
        let mut s = serde_json::to_string_pretty(&root)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str, fallback_id: &str) -> Result<Self> {
        let root: FileRoot = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid instance file: {e}")))?;
        if root.version != SCHEMA_VERSION {
            return Err(Error::validation(
                "version",
                format!("unsupported schema version {}", root.version),
            ));
        }
        let n = root.ground.n;
        if n == 0 || n > 63 {
            return Err(Error::validation("ground.n", format!("ground size {n} out of range")));
        }
        if let Some(labels) = &root.ground.labels {
            if labels.len() != n {
                return Err(Error::validation(
                    "ground.labels",
                    format!("{} labels for ground size {n}", labels.len()),
                ));
            }
        }
        let oracle = build_function(n, &root.function)?;
        if root.matroids.is_empty() || root.matroids.len() > 2 {
            return Err(Error::validation(
                "matroids",
                format!("expected one or two matroids, got {}", root.matroids.len()),
            ));
        }
        let matroids = root
            .matroids
            .iter()
            .enumerate()
            .map(|(i, spec)| build_matroid(&format!("matroids[{i}]"), n, spec))
            .collect::<Result<Vec<_>>>()?;
        for (i, m) in matroids.iter().enumerate() {
            if m.rank_full() != root.k {
                return Err(Error::validation(
                    "k",
                    format!("k = {} but matroids[{i}] has rank {}", root.k, m.rank_full()),
                ));
            }
        }
        Ok(Instance {
            id: root.id.unwrap_or_else(|| fallback_id.to_string()),
            n,
            labels: root.ground.labels,
            oracle,
            matroids,
            k: root.k,
            metadata: root.metadata,
        })
    }
}

pub fn save_instance(instance: &Instance, path: &Path) -> Result<()> {
    std::fs::write(path, instance.to_json()?)?;
    Ok(())
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let fallback = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".to_string());
    Instance::from_json(&text, &fallback)
}
