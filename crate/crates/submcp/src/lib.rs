//! Matroid-constrained submodular partitioning: oracles, Gomory-Hu trees,
//! approximation algorithms, exact tree solvers, and an experiment harness.

pub mod algorithms;
pub mod error;
pub mod generate;
pub mod gomory_hu;
pub mod graph;
pub mod instance;
pub mod intersection;
pub mod matroid;
pub mod partition;
pub mod report;
pub mod set;
pub mod submodular;
pub mod weight;

pub use algorithms::{
    brute_force_opt, cheapest_singleton, common_transversal, double_tree_multiway_cut, gh_greedy,
    greedy_split, min_split_pair, tree_multiway_cut, AlgorithmTrace, DoubleCutResult,
    TieBreakPolicy, WitnessMode,
};
pub use error::{Error, Result};
pub use gomory_hu::{gomory_hu_tree, min_st_cut, GomoryHuTree};
pub use graph::{WeightedGraph, WeightedHypergraph};
pub use instance::{load_instance, save_instance, Instance, Metadata};
pub use intersection::{
    has_transversal_basis, max_common_independent, max_weight_common_independent,
};
pub use matroid::{check_axioms, min_weight_basis, Matroid, MatroidKind};
pub use partition::Partition;
pub use report::{run_experiment, Algorithm, ExperimentConfig, ExperimentReport};
pub use set::ElemSet;
pub use submodular::{OracleKind, PropertyReport, SubmodularOracle};
pub use weight::Weight;
