//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use submcp::algorithms::{
    brute_force_opt, cheapest_singleton, common_transversal, double_tree_multiway_cut, gh_greedy,
    greedy_split, tree_multiway_cut, TieBreakPolicy, WitnessMode,
};
use submcp::generate::{common_mc, generate, random_matroid, tightness, GenParams};
use submcp::gomory_hu::{brute_force_min_st_cut, gomory_hu_tree};
use submcp::graph::WeightedGraph;
use submcp::instance::Instance;
use submcp::intersection::{has_transversal_basis, max_common_independent, max_weight_common_independent};
use submcp::matroid::{check_axioms, Matroid};
use submcp::partition::Partition;
use submcp::set::{self, ElemSet};
use submcp::submodular::SubmodularOracle;
use submcp::weight::Weight;

struct Outcome {
    criterion: &'static str,
    pass: bool,
    detail: String,
}

fn report(outcome: Outcome) {
    let status = if outcome.pass { "pass" } else { "fail" };
    println!("acceptance {}: {status} ({})", outcome.criterion, outcome.detail);
    assert!(outcome.pass, "{}: {}", outcome.criterion, outcome.detail);
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v, Weight::int(rng.gen_range(1..=9))));
    }
    WeightedGraph::new(n, edges).unwrap()
}

/// The instance pools mirror the generator families; seeds derive from the
/// loop index so every run is identical.
fn symmetric_pool(count: usize, base_seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=9);
            let k = rng.gen_range(2..=4.min(n));
            let family = if i % 2 == 0 { "random-graph" } else { "random-hypergraph" };
            generate(family, GenParams { n, k }, base_seed.wrapping_add(i as u64)).unwrap()
        })
        .collect()
}

fn monotone_pool(count: usize, base_seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=9);
            let k = rng.gen_range(2..=4.min(n));
            let family = if i % 2 == 0 { "coverage" } else { "matroid-rank" };
            generate(family, GenParams { n, k }, base_seed.wrapping_add(i as u64)).unwrap()
        })
        .collect()
}

fn general_pool(count: usize, base_seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=8);
            let k = rng.gen_range(2..=4.min(n));
            generate("mixed-table", GenParams { n, k }, base_seed.wrapping_add(i as u64)).unwrap()
        })
        .collect()
}

fn opt_of(inst: &Instance) -> Weight {
    brute_force_opt(&inst.oracle, &inst.matroids[0], None, WitnessMode::Separate)
        .unwrap()
        .1
}

#[test]
fn criterion_1_symmetric_gh_greedy_bound() {
    let pool = symmetric_pool(300, 101);
    let mut checked = 0;
    for inst in &pool {
        let m = &inst.matroids[0];
        let (_, trace) = gh_greedy(&inst.oracle, m).unwrap();
        let opt = opt_of(inst);
        let k = inst.k as i64;
        let bound = Weight::ratio(2 * k - 2, k);
        assert!(
            trace.final_value <= bound * opt,
            "instance {}: value {} > {} * OPT {}",
            inst.id,
            trace.final_value,
            bound,
            opt
        );
        checked += 1;
    }
    report(Outcome {
        criterion: "1 symmetric gh_greedy (2-2/k) bound",
        pass: checked == 300,
        detail: format!("{checked} instances"),
    });
}

#[test]
fn criterion_2_greedy_split_bounds() {
    let sym = symmetric_pool(150, 202);
    let mono = monotone_pool(150, 203);
    let general = general_pool(100, 204);
    let mut checked = 0;
    for inst in sym.iter().chain(&mono) {
        let (_, trace) = greedy_split(&inst.oracle, &inst.matroids[0], TieBreakPolicy::Lexicographic).unwrap();
        let opt = opt_of(inst);
        let k = inst.k as i64;
        let bound = Weight::ratio(2 * k - 2, k);
        assert!(
            trace.final_value <= bound * opt,
            "instance {}: value {} > {} * OPT {}",
            inst.id,
            trace.final_value,
            bound,
            opt
        );
        checked += 1;
    }
    for inst in &general {
        let (_, trace) = greedy_split(&inst.oracle, &inst.matroids[0], TieBreakPolicy::Lexicographic).unwrap();
        let opt = opt_of(inst);
        let bound = Weight::int(inst.k as i64 - 1);
        assert!(
            trace.final_value <= bound * opt,
            "instance {}: value {} > {} * OPT {}",
            inst.id,
            trace.final_value,
            bound,
            opt
        );
        checked += 1;
    }
    report(Outcome {
        criterion: "2 greedy_split bounds (sym/mono 2-2/k, general k-1)",
        pass: checked == 400,
        detail: format!("{checked} instances"),
    });
}

#[test]
fn criterion_3_coverage_four_thirds() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut checked = 0;
    for i in 0..200 {
        let n = rng.gen_range(4..=9);
        let k = rng.gen_range(2..=4.min(n));
        let inst = generate("coverage", GenParams { n, k }, 303 + i).unwrap();
        let submcp::submodular::OracleKind::Coverage(g) = inst.oracle.kind() else {
            panic!("coverage generator returned a different oracle");
        };
        let cut = SubmodularOracle::graph_cut(g.clone());
        let (p, _) = gh_greedy(&cut, &inst.matroids[0]).unwrap();
        let value = inst.oracle.partition_value(&p).unwrap();
        let opt = opt_of(&inst);
        assert!(
            value * Weight::int(3) <= opt * Weight::int(4),
            "instance {}: coverage value {value} > 4/3 * OPT {opt}",
            inst.id
        );
        checked += 1;
    }
    report(Outcome {
        criterion: "3 graph-coverage 4/3 bound",
        pass: checked == 200,
        detail: format!("{checked} instances"),
    });
}

#[test]
fn criterion_4_tree_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut checked = 0;
    for _ in 0..200 {
        let n = rng.gen_range(3..=10);
        let k = rng.gen_range(1..=4.min(n));
        let tree = random_tree(&mut rng, n);
        let m = random_matroid(&mut rng, n, k);
        let f = SubmodularOracle::graph_cut(tree.clone());
        let (_, value) = tree_multiway_cut(&tree, &m).unwrap();
        let (_, opt) = brute_force_opt(&f, &m, None, WitnessMode::Separate).unwrap();
        assert_eq!(value, opt, "tree_multiway_cut mismatch at n={n} k={k}");

        let m2 = random_matroid(&mut rng, n, k);
        let double = double_tree_multiway_cut(&tree, &m, &m2).unwrap();
        let (_, opt2) = brute_force_opt(&f, &m, Some(&m2), WitnessMode::Separate).unwrap();
        assert_eq!(double.value, opt2, "double_tree mismatch at n={n} k={k}");
        checked += 1;
    }
    report(Outcome {
        criterion: "4 tree solvers exact",
        pass: checked == 200,
        detail: format!("{checked} trees, single and double matroids"),
    });
}

#[test]
fn criterion_5_tightness_reproduction() {
    let mut ok = true;
    let mut detail = String::new();
    for k in [3usize, 4, 5] {
        let inst = tightness(k, 0).unwrap();
        let (_, trace) =
            greedy_split(&inst.oracle, &inst.matroids[0], TieBreakPolicy::AdversarialSingleton)
                .unwrap();
        let opt = opt_of(&inst);
        let expect_val = Weight::int(2 * k as i64 - 2);
        let expect_opt = Weight::int(k as i64);
        if trace.final_value != expect_val || opt != expect_opt {
            ok = false;
        }
        detail.push_str(&format!("k={k}: {}/{} ", trace.final_value, opt));
    }
    report(Outcome {
        criterion: "5 tightness ratio exactly 2-2/k",
        pass: ok,
        detail: detail.trim_end().to_string(),
    });
}

#[test]
fn criterion_6_gomory_hu_all_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut checked = 0;
    for i in 0..100 {
        let n = rng.gen_range(3..=8);
        let family = if i % 2 == 0 { "random-graph" } else { "random-hypergraph" };
        let inst = generate(family, GenParams { n, k: 1 }, 606 + i).unwrap();
        let f = &inst.oracle;
        let tree = gomory_hu_tree(f).unwrap();
        for s in 0..n {
            for t in s + 1..n {
                let (_, expect) = brute_force_min_st_cut(f, s, t);
                assert_eq!(
                    tree.path_min(s, t).unwrap(),
                    expect,
                    "path-min mismatch for ({s},{t}) on {}",
                    inst.id
                );
                let (side, value) = tree.cut_side(s, t).unwrap();
                assert!(set::contains(side, s) && !set::contains(side, t));
                assert_eq!(value, expect);
                assert_eq!(f.evaluate(side).unwrap(), expect);
            }
        }
        checked += 1;
    }
    report(Outcome {
        criterion: "6 Gomory-Hu all-pairs min cut",
        pass: checked == 100,
        detail: format!("{checked} symmetric oracles"),
    });
}

#[test]
fn criterion_7_tree_edge_matroid_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut checked = 0;
    for _ in 0..200 {
        let n = rng.gen_range(3..=8);
        let k = rng.gen_range(1..=3.min(n));
        let tree = random_tree(&mut rng, n);
        let inner = random_matroid(&mut rng, n, k);
        let me = Matroid::tree_edge(tree, inner).unwrap();
        check_axioms(&me).unwrap();
        assert_eq!(me.rank_full(), k - 1, "tree-edge rank at n={n} k={k}");
        checked += 1;
    }
    report(Outcome {
        criterion: "7 tree-edge matroid axioms and rank",
        pass: checked == 200,
        detail: format!("{checked} (tree, matroid) pairs"),
    });
}

fn brute_force_common(m1: &Matroid, m2: &Matroid) -> (usize, Weight, ElemSet) {
    // Max cardinality first, then max weight under unit weights here; the
    // weighted caller passes explicit weights below.
    let n = m1.ground_size();
    let mut best = (0usize, Weight::ZERO, 0u64);
    for s in 0..=set::full_set(n) {
        if m1.is_independent(s).unwrap() && m2.is_independent(s).unwrap() {
            let card = set::size(s);
            if card > best.0 {
                best = (card, Weight::ZERO, s);
            }
        }
    }
    best
}

fn brute_force_weighted_common(m1: &Matroid, m2: &Matroid, weights: &[Weight]) -> (usize, Weight) {
    let n = m1.ground_size();
    let mut best: Option<(usize, Weight)> = None;
    for s in 0..=set::full_set(n) {
        if m1.is_independent(s).unwrap() && m2.is_independent(s).unwrap() {
            let card = set::size(s);
            let w: Weight = set::elems(s).map(|e| weights[e]).sum();
            if best.map_or(true, |(c, bw)| card > c || (card == c && w > bw)) {
                best = Some((card, w));
            }
        }
    }
    best.unwrap()
}

#[test]
fn criterion_8_matroid_intersection() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut checked = 0;
    for i in 0..200 {
        let n = if i % 4 == 0 { rng.gen_range(10..=12) } else { rng.gen_range(3..=10) };
        let k1 = rng.gen_range(1..=n.min(5));
        let k2 = rng.gen_range(1..=n.min(5));
        let m1 = random_matroid(&mut rng, n, k1);
        let m2 = random_matroid(&mut rng, n, k2);
        let common = max_common_independent(&m1, &m2).unwrap();
        let (expect_card, _, _) = brute_force_common(&m1, &m2);
        assert_eq!(set::size(common), expect_card, "cardinality mismatch at n={n}");

        let weights: Vec<Weight> = (0..n).map(|_| Weight::int(rng.gen_range(0..=9))).collect();
        let (wset, wval) = max_weight_common_independent(&m1, &m2, &weights).unwrap();
        let (expect_card_w, expect_w) = brute_force_weighted_common(&m1, &m2, &weights);
        assert_eq!(set::size(wset), expect_card_w);
        assert_eq!(wval, expect_w, "weighted mismatch at n={n}");
        checked += 1;
    }
    report(Outcome {
        criterion: "8 matroid intersection vs brute force",
        pass: checked == 200,
        detail: format!("{checked} pairs, cardinality and weighted"),
    });
}

#[test]
fn criterion_9_paving_transversal_feasibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut checked = 0;
    while checked < 200 {
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k + 1..=9);
        // Rejection-sample a valid forbidden-hyperedge family directly.
        let want = rng.gen_range(1..=3);
        let mut hyperedges: Vec<ElemSet> = Vec::new();
        for _ in 0..30 {
            if hyperedges.len() == want {
                break;
            }
            let mut elems: Vec<usize> = (0..n).collect();
            for j in (1..elems.len()).rev() {
                elems.swap(j, rng.gen_range(0..=j));
            }
            let size = rng.gen_range(k..=(k + 1).min(n - 1));
            let h = set::from_elems(elems[..size].iter().copied());
            if hyperedges.iter().all(|&o| set::size(h & o) <= k - 2) {
                hyperedges.push(h);
            }
        }
        if hyperedges.is_empty() {
            continue;
        }
        let Ok(m) = Matroid::paving(n, k, hyperedges) else { continue };
        if m.rank_full() != k {
            continue;
        }
        // Random partition into exactly k nonempty blocks.
        let mut owner: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        for class in 0..k {
            if !owner.contains(&class) {
                let idx = rng.gen_range(0..n);
                owner[idx] = class;
            }
        }
        let mut blocks = vec![0u64; k];
        for (e, &c) in owner.iter().enumerate() {
            blocks[c] |= set::singleton(e);
        }
        if blocks.iter().any(|&b| b == 0) {
            continue;
        }
        let p = Partition::new(n, blocks).unwrap();
        let witness = has_transversal_basis(&m, &p).unwrap();
        let Some(w) = witness else {
            panic!("paving matroid with no transversal basis at n={n} k={k}");
        };
        let mask = set::from_elems(w.iter().copied());
        assert!(m.is_independent(mask).unwrap() && set::size(mask) == k);
        checked += 1;
    }
    report(Outcome {
        criterion: "9 paving matroids always admit a transversal basis",
        pass: checked == 200,
        detail: format!("{checked} (paving matroid, partition) pairs"),
    });
}

#[test]
fn criterion_10_hardness_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut checked = 0;
    let mut zeros = 0;
    for i in 0..50 {
        let s = rng.gen_range(3..=6);
        let r = rng.gen_range(2..=3.min(s));
        let mut sample = |n: usize| -> Vec<ElemSet> {
            // The first r shuffled elements seed distinct classes so none
            // ends up empty; the rest land anywhere.
            let mut elems: Vec<usize> = (0..n).collect();
            for j in (1..elems.len()).rev() {
                elems.swap(j, rng.gen_range(0..=j));
            }
            let mut masks = vec![0u64; r];
            for (i, &e) in elems.iter().enumerate() {
                let class = if i < r { i } else { rng.gen_range(0..r) };
                masks[class] |= set::singleton(e);
            }
            masks
        };
        let p1 = sample(s);
        let p2 = sample(s);
        let p3 = sample(s);
        let inst = common_mc(&p1, &p2, &p3, 1010 + i).unwrap();
        // When P1 and P2 share no common basis at all the encoded instance
        // is infeasible, which also certifies a nonzero (non-)optimum.
        let opt_is_zero = match brute_force_opt(
            &inst.oracle,
            &inst.matroids[0],
            Some(&inst.matroids[1]),
            WitnessMode::Common,
        ) {
            Ok((_, opt)) => opt.is_zero(),
            Err(submcp::Error::Infeasible(_)) => false,
            Err(e) => panic!("unexpected error at s={s} r={r}: {e}"),
        };

        // Direct search for a common basis of the three partition matroids.
        let pm = |classes: &[ElemSet]| {
            Arc::new(
                Matroid::partition(s, classes.iter().map(|&c| (c, 1)).collect()).unwrap(),
            )
        };
        let (m1, m2, m3) = (pm(&p1), pm(&p2), pm(&p3));
        let has_common = (0..=set::full_set(s)).any(|b| {
            set::size(b) == r
                && m1.is_independent(b).unwrap()
                && m2.is_independent(b).unwrap()
                && m3.is_independent(b).unwrap()
        });
        assert_eq!(opt_is_zero, has_common, "reduction mismatch at s={s} r={r}");
        if opt_is_zero {
            zeros += 1;
        }
        checked += 1;
    }
    report(Outcome {
        criterion: "10 common-mc optimum 0 iff common basis",
        pass: checked == 50 && zeros > 0 && zeros < 50,
        detail: format!("{checked} triples, {zeros} with a common basis"),
    });
}

#[test]
fn criterion_11_cheapest_singleton_bound() {
    let pool = monotone_pool(150, 1111);
    let mut checked = 0;
    for inst in &pool {
        let p = cheapest_singleton(&inst.oracle, &inst.matroids[0]).unwrap();
        let value = inst.oracle.partition_value(&p).unwrap();
        let opt = opt_of(inst);
        let k = inst.k as i64;
        let bound = Weight::ratio(2 * k - 1, k);
        assert!(
            value <= bound * opt,
            "instance {}: value {value} > {bound} * OPT {opt}",
            inst.id
        );
        checked += 1;
    }
    report(Outcome {
        criterion: "11 cheapest_singleton (2-1/k) bound",
        pass: checked == 150,
        detail: format!("{checked} monotone instances"),
    });
}

#[test]
fn criterion_10_common_witness_sanity() {
    // The shared-transversal search agrees with independent checks on a
    // hand-built example: blocks {0,1}, {2}; both matroids U(2,3).
    let m = Matroid::uniform(2, 3).unwrap();
    let w = common_transversal(&m, &m, &[0b011, 0b100]).unwrap();
    assert_eq!(w.len(), 2);
}
