//! Acceptance checks A1-A9. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::{index, SliceRandom};
use rand::Rng as _;
use ssc_core::augmentation::{
    clique_chain, dpea_brute_force, dpea_solve, forbidden_nonedge_upper_bound, intersection_augment,
    randomized_augment, success_probability_bound, AugmentationResult, DpeaInstance, LevelPartition,
};
use ssc_core::controllability::{
    is_pmi, kirchhoff_index, leader_distance_table, pmi_exact, pmi_greedy, validate_pmi, validate_ssc_bound,
    LeaderSet, PmiSequence,
};
use ssc_core::generate::{erdos_renyi, GenSpec, Model};
use ssc_core::harness::{run_experiment, ExperimentConfig};
use ssc_core::rng::{self, Rng};
use ssc_core::{Edge, Graph};

type Check = Result<String, String>;

const KIRCHHOFF_MARGIN: f64 = 1e-9;

fn connected_er(n: usize, p: f64, rng: &mut Rng) -> Graph {
    let spec = GenSpec { model: Model::ErdosRenyi { p }, n, seed: 0 };
    loop {
        let g = spec.sample(rng).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn random_leaders(n: usize, m: usize, rng: &mut Rng) -> LeaderSet {
    LeaderSet::new(index::sample(rng, n, m).into_vec(), n).unwrap()
}

struct Instance {
    g: Graph,
    leaders: LeaderSet,
    pmi: PmiSequence,
    runs: Vec<AugmentationResult>,
}

fn a1_corpus() -> Vec<Instance> {
    let mut rng = rng::seeded(0xA1);
    (0..50)
        .map(|i| {
            let g = connected_er(30, 0.2, &mut rng);
            let leaders = random_leaders(30, 3, &mut rng);
            let pmi = pmi_greedy(&g, &leaders).unwrap();
            let runs = vec![
                intersection_augment(&g, &leaders, &pmi).unwrap(),
                randomized_augment(&g, &leaders, &pmi, i, 30).unwrap(),
            ];
            Instance { g, leaders, pmi, runs }
        })
        .collect()
}

fn a1(corpus: &[Instance]) -> Check {
    for (i, inst) in corpus.iter().enumerate() {
        let before = leader_distance_table(&inst.g, &inst.leaders).unwrap();
        for run in &inst.runs {
            let after = leader_distance_table(&run.augmented, &inst.leaders).unwrap();
            for (l, _) in inst.leaders.as_slice().iter().enumerate() {
                for v in inst.pmi.nodes() {
                    if before[l][v] != after[l][v] {
                        return Err(format!("instance {i} {}: leader #{l} to {v} changed", run.algorithm));
                    }
                }
            }
            validate_pmi(&run.augmented, &inst.leaders, &inst.pmi)
                .map_err(|e| format!("instance {i} {}: {e}", run.algorithm))?;
            let vectors: Vec<Vec<usize>> =
                inst.pmi.nodes().map(|v| after.iter().map(|row| row[v]).collect()).collect();
            if !is_pmi(&vectors).unwrap().is_valid() {
                return Err(format!("instance {i} {}: output vectors not PMI", run.algorithm));
            }
        }
    }
    Ok(format!("{} instances x 2 algorithms", corpus.len()))
}

fn a6(corpus: &[Instance]) -> Check {
    let mut checked = 0;
    for (i, inst) in corpus.iter().enumerate() {
        let k0 = kirchhoff_index(&inst.g).unwrap();
        for run in inst.runs.iter().filter(|r| !r.added.is_empty()) {
            let k1 = kirchhoff_index(&run.augmented).unwrap();
            if k0 - k1 <= KIRCHHOFF_MARGIN {
                return Err(format!("instance {i} {}: {k0} -> {k1}", run.algorithm));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} augmented graphs, margin > {KIRCHHOFF_MARGIN:e}"))
}

fn connected_graphs_up_to_6() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p))
                .unwrap();
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

/// `(graph, a, b)` with `a`, `b` non-adjacent: up to 3 pairs per graph.
fn dpea_corpus() -> Vec<(Graph, usize, usize)> {
    let mut rng = rng::seeded(0xA2);
    let mut graphs = connected_graphs_up_to_6();
    graphs.extend((0..200).map(|_| connected_er(7, 0.35, &mut rng)));
    let mut out = Vec::new();
    for g in graphs {
        let mut non_adjacent: Vec<Edge> = g.complement_edges().into_iter().collect();
        non_adjacent.shuffle(&mut rng);
        for e in non_adjacent.into_iter().take(3) {
            out.push((g.clone(), e.u(), e.v()));
        }
    }
    out
}

fn a2(corpus: &[(Graph, usize, usize)]) -> Check {
    for (g, a, b) in corpus {
        let inst = DpeaInstance::new(g, *a, *b).unwrap();
        let opt = dpea_brute_force(&inst).unwrap();
        let h = Graph::from_edges(g.n(), opt.edges.iter().map(|e| (e.u(), e.v()))).unwrap();
        let from_a = h.bfs_distances(*a).unwrap();
        let from_b = h.bfs_distances(*b).unwrap();
        let k = from_a[*b].unwrap();
        for v in 0..g.n() {
            if from_a[v].unwrap() + from_b[v].unwrap() != k {
                return Err(format!("n={} pair ({a},{b}): node {v} off every geodesic", g.n()));
            }
        }
        let levels = LevelPartition::from_levels(from_a.iter().map(|d| d.unwrap()).collect()).unwrap();
        if clique_chain(levels).edges != opt.edges {
            return Err(format!("n={} pair ({a},{b}): optimum is not its clique chain", g.n()));
        }
    }
    Ok(format!("{} (graph, pair) instances, n <= 7", corpus.len()))
}

fn a3(corpus: &[(Graph, usize, usize)]) -> Check {
    let mut gaps = 0usize;
    let mut max_gap = 0usize;
    for (g, a, b) in corpus {
        let inst = DpeaInstance::new(g, *a, *b).unwrap();
        let k = g.bfs_distances(*a).unwrap()[*b];
        let r = dpea_solve(&inst).unwrap();
        let h = &r.augmented;
        if h.bfs_distances(*a).unwrap()[*b] != k {
            return Err(format!("n={} pair ({a},{b}): distance changed", g.n()));
        }
        for e in h.complement_edges() {
            let mut probe = h.clone();
            probe.add_edge(e.u(), e.v()).unwrap();
            if probe.bfs_distances(*a).unwrap()[*b] == k {
                return Err(format!("n={} pair ({a},{b}): edge {e:?} still addable", g.n()));
            }
        }
        let opt = dpea_brute_force(&inst).unwrap().edge_count;
        if opt < h.edge_count() {
            return Err(format!("n={} pair ({a},{b}): brute force below dpea", g.n()));
        }
        let gap = opt - h.edge_count();
        gaps += usize::from(gap > 0);
        max_gap = max_gap.max(gap);
    }
    Ok(format!("{} instances, brute-force gap > 0 on {gaps}, max gap {max_gap}", corpus.len()))
}

fn a4() -> Check {
    let p = success_probability_bound(100, 92, 0.75, 500).map_err(|e| e.to_string())?;
    if (0.79..=0.81).contains(&p) {
        Ok(format!("probability {p:.4}"))
    } else {
        Err(format!("probability {p:.4} outside [0.79, 0.81]"))
    }
}

fn a5() -> Check {
    let mut rng = rng::seeded(0xA5);
    let mut validations = 0;
    for i in 0..20u64 {
        let n = rng.gen_range(4..=12);
        let g = connected_er(n, 0.3, &mut rng);
        let leaders = random_leaders(n, rng.gen_range(1..=3), &mut rng);
        let pmi = pmi_greedy(&g, &leaders).unwrap();
        let graphs = [
            g.clone(),
            intersection_augment(&g, &leaders, &pmi).unwrap().augmented,
            randomized_augment(&g, &leaders, &pmi, i, 30).unwrap().augmented,
        ];
        for (stage, h) in ["original", "intersect", "randomized"].iter().zip(&graphs) {
            let report = validate_ssc_bound(h, &leaders, pmi.len(), 25, rng::derive_seed(i, stage)).unwrap();
            if !report.pass {
                return Err(format!(
                    "graph {i} ({stage}, n={n}): rank {} < {} in trial {:?}",
                    report.min_rank,
                    pmi.len(),
                    report.failing_trial
                ));
            }
            validations += 1;
        }
    }
    Ok(format!("{validations} validations x 25 weight samples"))
}

fn a7(corpus: &[Instance]) -> Check {
    for (i, inst) in corpus.iter().enumerate() {
        let bound = forbidden_nonedge_upper_bound(&inst.g, &inst.leaders, &inst.pmi).unwrap();
        if let Some(run) = inst.runs.iter().find(|r| r.added.len() > bound) {
            return Err(format!("A1 instance {i} {}: {} added > bound {bound}", run.algorithm, run.added.len()));
        }
    }
    let cfg = ExperimentConfig::from_json(
        r#"{"model":"erdos-renyi","parameters":[0.2],"n":50,"leader_counts":[2,5,8],"instances":20,"c":30,"seed":7}"#,
    )
    .unwrap();
    let outcome = run_experiment(&cfg).map_err(|e| e.to_string())?;
    for r in &outcome.records {
        for after in [r.edges_after_alg1, r.edges_after_alg2] {
            if after > r.edges_before + r.upper_bound {
                return Err(format!("leaders={} trial {}: {after} edges exceeds bound", r.num_leaders, r.trial));
            }
        }
    }
    let mut means = Vec::new();
    for s in &outcome.summary {
        if s.edges_after_alg2 < s.edges_after_alg1 - 2.0 {
            return Err(format!(
                "leaders={}: alg2 mean {:.1} < alg1 mean {:.1} - 2",
                s.num_leaders, s.edges_after_alg2, s.edges_after_alg1
            ));
        }
        means.push(format!("m={}: {:.1}/{:.1}", s.num_leaders, s.edges_after_alg1, s.edges_after_alg2));
    }
    Ok(format!("bound holds; mean edges alg1/alg2 {}", means.join(", ")))
}

fn a8() -> Check {
    let mut rng = rng::seeded(0xA8);
    for i in 0..100 {
        let n = rng.gen_range(2..=15);
        let g = connected_er(n, rng.gen_range(0.15..0.6), &mut rng);
        let leaders = random_leaders(n, 1, &mut rng);
        let mut distinct = leader_distance_table(&g, &leaders).unwrap().remove(0);
        distinct.sort_unstable();
        distinct.dedup();
        let greedy = pmi_greedy(&g, &leaders).unwrap().len();
        let exact = pmi_exact(&g, &leaders).unwrap().len();
        if greedy != distinct.len() || exact != distinct.len() {
            return Err(format!("graph {i}: greedy {greedy}, exact {exact}, distinct {}", distinct.len()));
        }
    }
    Ok("100 graphs, greedy = exact = distinct distances".into())
}

fn a9() -> Check {
    fn outputs() -> Vec<(&'static str, Vec<u8>)> {
        let g = erdos_renyi(25, 0.2, 11).unwrap();
        let g = if g.is_connected() { g } else { Graph::complete(25).unwrap() };
        let leaders = LeaderSet::new(vec![0, 7, 19], 25).unwrap();
        let pmi = pmi_greedy(&g, &leaders).unwrap();
        let cfg = ExperimentConfig::from_json(
            r#"{"model":"barabasi-albert","parameters":[2],"n":20,"leader_counts":[1,3],"instances":3,"c":5,"seed":99}"#,
        )
        .unwrap();
        vec![
            ("gen", g.to_edge_list().into_bytes()),
            ("pmi", pmi.to_json().into_bytes()),
            ("pmi-exact", pmi_exact(&g, &leaders).unwrap().to_json().into_bytes()),
            ("augment-intersect", intersection_augment(&g, &leaders, &pmi).unwrap().to_json(false).into_bytes()),
            ("augment-randomized", randomized_augment(&g, &leaders, &pmi, 5, 12).unwrap().to_json(false).into_bytes()),
            ("validate", validate_ssc_bound(&g, &leaders, pmi.len(), 5, 3).unwrap().to_json().into_bytes()),
            ("experiment", run_experiment(&cfg).unwrap().to_csv().unwrap().into_bytes()),
        ]
    }
    let first = outputs();
    let second = outputs();
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        if a != b {
            return Err(format!("{name} differs between runs"));
        }
    }
    Ok(format!("{} entry points byte-identical", first.len()))
}

fn report(id: &str, limit: Option<Duration>, check: impl FnOnce() -> Check) -> bool {
    let started = Instant::now();
    let outcome = check();
    let elapsed = started.elapsed();
    let (ok, detail) = match (outcome, limit) {
        (Ok(_), Some(l)) if elapsed > l => (false, format!("exceeded {l:?}")),
        (Ok(d), _) => (true, d),
        (Err(d), _) => (false, d),
    };
    println!("{id} {} {detail} [{:.2}s]", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut all = true;
    let mut corpus = Vec::new();
    all &= report("A1", Some(secs(60)), || {
        corpus = a1_corpus();
        a1(&corpus)
    });
    let dpea = dpea_corpus();
    all &= report("A2", Some(secs(600)), || a2(&dpea));
    all &= report("A3", None, || a3(&dpea));
    all &= report("A4", Some(secs(1)), a4);
    all &= report("A5", Some(secs(120)), a5);
    all &= report("A6", None, || a6(&corpus));
    all &= report("A7", Some(secs(600)), || a7(&corpus));
    all &= report("A8", None, a8);
    all &= report("A9", None, a9);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
