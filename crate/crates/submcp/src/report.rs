//! Experiment runner: applies algorithms to instances, optionally verifies
//! approximation ratios against brute force, and emits CSV or JSON reports.

use std::time::Instant;

use serde::Serialize;

use crate::algorithms::{
    brute_force_opt, cheapest_singleton, double_tree_multiway_cut, gh_greedy, greedy_split,
    tree_multiway_cut, TieBreakPolicy, WitnessMode,
};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::submodular::{OracleKind, SubmodularOracle};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    GhGreedy,
    GreedySplit,
    CheapestSingleton,
    TreeMultiwayCut,
    DoubleTreeMultiwayCut,
    BruteForce,
}

impl Algorithm {
    pub const ALL: &'static [Algorithm] = &[
        Algorithm::GhGreedy,
        Algorithm::GreedySplit,
        Algorithm::CheapestSingleton,
        Algorithm::TreeMultiwayCut,
        Algorithm::DoubleTreeMultiwayCut,
        Algorithm::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GhGreedy => "gh_greedy",
            Algorithm::GreedySplit => "greedy_split",
            Algorithm::CheapestSingleton => "cheapest_singleton",
            Algorithm::TreeMultiwayCut => "tree_multiway_cut",
            Algorithm::DoubleTreeMultiwayCut => "double_tree_multiway_cut",
            Algorithm::BruteForce => "brute_force",
        }
    }

    pub fn parse(name: &str) -> Result<Algorithm> {
        let normalized = name.replace('-', "_");
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.name() == normalized)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown algorithm '{name}'; known: {}",
                    Algorithm::ALL
                        .iter()
                        .map(|a| a.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub instance_id: String,
    pub algorithm: &'static str,
    pub value: Weight,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt: Option<Weight>,
    /// value / opt as a float, when opt was computed and is nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// The proven approximation factor for this algorithm on this instance.
    pub bound: Weight,
    pub verified: bool,
    pub runtime_ms: u128,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "instance_id,algorithm,value,opt,ratio,bound,verified,runtime_ms\n",
        );
        for r in &self.rows {
            let opt = r.opt.map(|o| o.to_string()).unwrap_or_default();
            let ratio = r.ratio.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.instance_id, r.algorithm, r.value, opt, ratio, r.bound, r.verified, r.runtime_ms
            ));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithms: Vec<Algorithm>,
    pub tie_break: TieBreakPolicy,
    /// Compute OPT by brute force (n <= 12) and check value <= bound * OPT
    /// exactly; a violation is an internal-invariant error.
    pub verify: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algorithms: Algorithm::ALL.to_vec(),
            tie_break: TieBreakPolicy::Lexicographic,
            verify: false,
        }
    }
}

/// Why an (instance, algorithm) cell produced no row.
fn applicability(instance: &Instance, alg: Algorithm) -> std::result::Result<(), String> {
    let two = instance.matroids.len() == 2;
    let f = &instance.oracle;
    match alg {
        Algorithm::GhGreedy => {
            if two {
                return Err("gh_greedy handles a single constraint matroid".into());
            }
            let coverage_special = matches!(f.kind(), OracleKind::Coverage(_));
            if !f.declared_symmetric() && !coverage_special {
                return Err("gh_greedy requires a symmetric oracle".into());
            }
        }
        Algorithm::GreedySplit => {
            if two {
                return Err("greedy_split handles a single constraint matroid".into());
            }
        }
        Algorithm::CheapestSingleton => {
            if two {
                return Err("cheapest_singleton handles a single constraint matroid".into());
            }
            if !f.declared_monotone() {
                return Err("cheapest_singleton requires a monotone oracle".into());
            }
        }
        Algorithm::TreeMultiwayCut => {
            if two {
                return Err("tree_multiway_cut handles a single constraint matroid".into());
            }
            if !underlying_tree(f) {
                return Err("tree_multiway_cut requires a tree cut objective".into());
            }
        }
        Algorithm::DoubleTreeMultiwayCut => {
            if !two {
                return Err("double_tree_multiway_cut needs two constraint matroids".into());
            }
            if !underlying_tree(f) {
                return Err("double_tree_multiway_cut requires a tree cut objective".into());
            }
        }
        Algorithm::BruteForce => {
            if instance.n > 12 {
                return Err("brute force limited to n <= 12".into());
            }
        }
    }
    Ok(())
}

fn underlying_tree(f: &SubmodularOracle) -> bool {
    matches!(f.kind(), OracleKind::GraphCut(g) if g.is_tree())
}

/// The proven factor for this cell, as an exact rational.
fn bound_for(instance: &Instance, alg: Algorithm) -> Weight {
    let k = instance.k as i64;
    let f = &instance.oracle;
    match alg {
        Algorithm::GhGreedy => {
            if matches!(f.kind(), OracleKind::Coverage(_)) {
                Weight::ratio(4, 3)
            } else if k <= 1 {
                Weight::int(1)
            } else {
                Weight::ratio(2 * k - 2, k)
            }
        }
        Algorithm::GreedySplit => {
            if k <= 1 {
                Weight::int(1)
            } else if f.declared_symmetric() || f.declared_monotone() {
                Weight::ratio(2 * k - 2, k)
            } else {
                Weight::int((k - 1).max(1))
            }
        }
        Algorithm::CheapestSingleton => {
            if k <= 1 {
                Weight::int(1)
            } else {
                Weight::ratio(2 * k - 1, k)
            }
        }
        Algorithm::TreeMultiwayCut
        | Algorithm::DoubleTreeMultiwayCut
        | Algorithm::BruteForce => Weight::int(1),
    }
}

fn run_cell(instance: &Instance, alg: Algorithm, tie_break: TieBreakPolicy) -> Result<Weight> {
    let f = &instance.oracle;
    let m = &instance.matroids[0];
    match alg {
        Algorithm::GhGreedy => {
            if let OracleKind::Coverage(g) = f.kind() {
                // Coverage objective: run on the underlying cut function and
                // evaluate the resulting partition under coverage.
                let cut = SubmodularOracle::graph_cut(g.clone());
                let (p, _) = gh_greedy(&cut, m)?;
                f.partition_value(&p)
            } else {
                gh_greedy(f, m).map(|(_, t)| t.final_value)
            }
        }
        Algorithm::GreedySplit => greedy_split(f, m, tie_break).map(|(_, t)| t.final_value),
        Algorithm::CheapestSingleton => {
            let p = cheapest_singleton(f, m)?;
            f.partition_value(&p)
        }
        Algorithm::TreeMultiwayCut => {
            let OracleKind::GraphCut(g) = f.kind() else {
                return Err(Error::InvalidArgument("not a graph cut oracle".into()));
            };
            tree_multiway_cut(g, m).map(|(_, v)| v)
        }
        Algorithm::DoubleTreeMultiwayCut => {
            let OracleKind::GraphCut(g) = f.kind() else {
                return Err(Error::InvalidArgument("not a graph cut oracle".into()));
            };
            double_tree_multiway_cut(g, m, &instance.matroids[1]).map(|r| r.value)
        }
        Algorithm::BruteForce => {
            let m2 = instance.matroids.get(1);
            brute_force_opt(f, m, m2, WitnessMode::Separate).map(|(_, v)| v)
        }
    }
}

pub fn run_experiment(
    instances: &[Instance],
    config: &ExperimentConfig,
) -> Result<ExperimentReport> {
    let mut rows = Vec::new();
    for instance in instances {
        if config.verify && instance.n > 12 {
            return Err(Error::InvalidArgument(format!(
                "verification needs n <= 12, instance '{}' has n = {}",
                instance.id, instance.n
            )));
        }
        let opt = if config.verify {
            let m2 = instance.matroids.get(1);
            Some(brute_force_opt(&instance.oracle, &instance.matroids[0], m2, WitnessMode::Separate)?.1)
        } else {
            None
        };
        for &alg in &config.algorithms {
            if let Err(reason) = applicability(instance, alg) {
                eprintln!("skipping {} on {}: {reason}", alg.name(), instance.id);
                continue;
            }
            let start = Instant::now();
            let value = run_cell(instance, alg, config.tie_break)?;
            let runtime_ms = start.elapsed().as_millis();
            let bound = bound_for(instance, alg);
            let mut verified = false;
            let mut ratio = None;
            if let Some(opt) = opt {
                if !opt.is_zero() {
                    ratio = Some((value / opt).to_f64());
                }
                if value > bound * opt {
                    return Err(Error::InternalInvariant(format!(
                        "{} on {}: value {} exceeds bound {} * OPT {}",
                        alg.name(),
                        instance.id,
                        value,
                        bound,
                        opt
                    )));
                }
                verified = true;
            }
            rows.push(ReportRow {
                instance_id: instance.id.clone(),
                algorithm: alg.name(),
                value,
                opt,
                ratio,
                bound,
                verified,
                runtime_ms,
            });
        }
    }
    rows.sort_by(|a, b| (&a.instance_id, a.algorithm).cmp(&(&b.instance_id, b.algorithm)));
    Ok(ExperimentReport { rows })
}
