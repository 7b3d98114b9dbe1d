//! One test per shipped guarantee. Each prints a single harness line, so a
//! failing guarantee is visible at a glance in the test output.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use evencycle::exploration::{audit_min_degree, explore, ExploreParams};
use evencycle::graph::{verify_cycle, CycleCert, Graph};
use evencycle::oracle::{
    complete_bipartite, contains_cycle, ex_brute, ex_brute_naive, gen_min_degree_bipartite,
    gen_planted_well_placed, gen_random_trilayered, polarity_graph,
};
use evencycle::pipeline::{bound, extract_cycle, LevelCert};
use evencycle::theta::{find_theta_min_degree, verify_theta};
use evencycle::trilayered::{
    check_degree_spec, find_well_placed_exhaustive, prune_to_min_degree, rat_frac, rat_usize,
    DegreeSpec, PruneOutcome, Trilayered,
};

#[test]
fn c1_theta_found_and_verified_on_every_seeded_min_degree_host() {
    let start = Instant::now();
    for k in [3usize, 4] {
        for seed in 0..200u64 {
            let l = 6 + (seed % 7) as usize; // sides range over 6..=12
            let r = 12 - (seed % 5) as usize;
            let g = gen_min_degree_bipartite(l, r, k, 1000 * k as u64 + seed);
            assert!(g.min_degree() >= k);
            let theta = find_theta_min_degree(&g, k)
                .unwrap_or_else(|e| panic!("k = {}, seed = {}: {}", k, seed, e));
            verify_theta(&g, &theta, k)
                .unwrap_or_else(|e| panic!("k = {}, seed = {}: bad certificate {}", k, seed, e));
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "400 searches took {:?}", elapsed);
}

#[test]
fn c2_planted_instances_extract_cycles_of_exactly_the_target_length() {
    for k in [2usize, 3, 4, 5] {
        for seed in 0..100u64 {
            let inst = gen_planted_well_placed(k, seed);
            let ex = explore(
                &inst.graph,
                inst.root,
                &ExploreParams::new(k, inst.d),
                inst.mid_level + 1,
            );
            let cert = LevelCert::WellPlaced { cert: inst.cert.clone(), level: inst.mid_level };
            let cycle = extract_cycle(&inst.graph, &ex, &cert, k)
                .unwrap_or_else(|e| panic!("k = {}, seed = {}: {}", k, seed, e));
            assert_eq!(cycle.vertices.len(), 2 * k, "k = {}, seed = {}", k, seed);
            verify_cycle(&inst.graph, &cycle, 2 * k).unwrap();
        }
    }
}

#[test]
fn c3_both_extremal_strategies_agree_and_witnesses_are_clean() {
    let entries = ex_brute(8, 2).unwrap();
    for e in &entries[..6] {
        assert_eq!(
            e.max_edges,
            ex_brute_naive(e.n, 2),
            "strategies disagree at n = {}",
            e.n
        );
    }
    let table: Vec<usize> = entries.iter().map(|e| e.max_edges).collect();
    for win in table.windows(2) {
        assert!(win[0] <= win[1], "extremal counts must be monotone: {:?}", table);
    }
    for e in &entries {
        assert_eq!(e.witness.m(), e.max_edges);
        assert!(
            contains_cycle(&e.witness, 4).is_none(),
            "witness for n = {} has a square",
            e.n
        );
    }
}

#[test]
fn c4_every_free_graph_in_the_corpus_sits_under_the_bound() {
    let mut corpus: Vec<(Graph, usize, &str)> = Vec::new();
    for q in [2u64, 3, 5] {
        let pg = polarity_graph(q);
        assert_eq!(2 * pg.graph.m(), (q * (q + 1) * (q + 1)) as usize);
        corpus.push((pg.graph, 2, "polarity"));
    }
    for k in [2usize, 3] {
        for e in ex_brute(8, k).unwrap() {
            corpus.push((e.witness, k, "extremal witness"));
        }
    }
    // trees and an odd cycle have no even cycle at all
    let path = Graph::from_edges(10, &(0..9).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
    let star = Graph::from_edges(8, &(1..8).map(|i| (0, i)).collect::<Vec<_>>()).unwrap();
    let heptagon =
        Graph::from_edges(7, &(0..7).map(|i| (i, (i + 1) % 7)).collect::<Vec<_>>()).unwrap();
    for k in [2usize, 3, 4] {
        corpus.push((path.clone(), k, "path"));
        corpus.push((star.clone(), k, "star"));
        corpus.push((heptagon.clone(), k, "odd cycle"));
    }

    for (g, k, kind) in &corpus {
        assert!(g.n() <= 31);
        assert!(
            contains_cycle(g, 2 * k).is_none(),
            "{} on {} vertices is not free for k = {}",
            kind,
            g.n(),
            k
        );
        let b = bound(g.n(), *k);
        assert!(
            (g.m() as f64) <= b,
            "{} on {} vertices: {} edges over the bound {}",
            kind,
            g.n(),
            g.m(),
            b
        );
    }
}

#[test]
fn c5_exploration_audits_are_clean_across_seeded_hosts() {
    let mut audited = 0u32;
    for k in [2usize, 3] {
        for seed in 0..250u64 {
            let l = 8 + (seed % 9) as usize;
            let r = 8 + (seed % 7) as usize;
            let delta_target = k + (seed % 3) as usize;
            let g = gen_min_degree_bipartite(l, r, delta_target, 7000 * k as u64 + seed);
            let params = ExploreParams::new(k, 1);
            let ex = explore(&g, (seed % l as u64) as usize, &params, k + 1);

            let delta = g.min_degree().min(params.cap());
            audit_min_degree(&g, &ex, delta)
                .unwrap_or_else(|v| panic!("k = {}, seed = {}: {}", k, seed, v));

            // levels partition the explored vertices
            let mut seen = BTreeSet::new();
            for level in &ex.levels {
                for &v in &level.chosen {
                    assert!(seen.insert(v), "vertex {} chosen on two levels", v);
                }
                assert!(
                    g.is_independent_set(&level.chosen),
                    "level {} not independent",
                    level.index
                );
            }
            audited += 1;
        }
    }
    assert_eq!(audited, 500);
}

#[test]
fn c6_pruning_always_lands_in_a_verified_alternative() {
    let mut ran = 0u32;
    let (mut subgraphs, mut thetas, mut shrunk) = (0u32, 0u32, 0u32);

    let mut run = |t: &Trilayered, s: &DegreeSpec, a_num: usize, a_den: usize, k: usize, d: usize| {
        let a = rat_frac(a_num, a_den);
        // the edge-count hypothesis is part of instance construction
        let lhs = &a * rat_usize(t.e12());
        let rhs = (&s.a + rat_usize(k + 1)) * rat_usize(t.layer(1).len())
            + &s.b * rat_usize(t.layer(2).len());
        assert!(lhs >= rhs, "instance misses the hypothesis: {} < {}", lhs, rhs);

        match prune_to_min_degree(t, s, &a, k, d).unwrap() {
            PruneOutcome::Subgraph(sub) => {
                check_degree_spec(&sub, s).unwrap();
                for layer in 1..=3 {
                    assert!(!sub.layer(layer).is_empty());
                }
                subgraphs += 1;
            }
            PruneOutcome::Theta { theta, .. } => {
                verify_theta(&t.layer_graph(), &theta, k).unwrap();
                thetas += 1;
            }
            PruneOutcome::Shrunken { v2 } => {
                // kept edge mass and the size cap, recomputed from scratch
                let kept = t.host().edges_between(t.layer(1), &v2);
                assert!(
                    rat_usize(kept) >= (rat_usize(1) - &a) * rat_usize(t.e12()),
                    "shrunken set dropped too many edges"
                );
                assert!(
                    rat_usize(v2.len()) <= &s.d * rat_usize(t.layer(3).len()) / rat_usize(d),
                    "shrunken set too large"
                );
                shrunk += 1;
            }
        }
        ran += 1;
    };

    // dense blocks survive whole
    for seed in 0..40usize {
        let n1 = 18 + seed % 9;
        let n2 = 8 + seed % 4;
        let n3 = 3 + seed % 4;
        let c = 1 + seed % 3;
        let t = layered_block(n1, n2, n3, c);
        let s = DegreeSpec::from_ints(1 + (seed % 2) as i64, 1, c as i64, 1);
        run(&t, &s, 3, 4, 2, 1);
    }
    // starved third layers force a theta in the dense layer-1/2 block
    for seed in 0..30usize {
        let n2 = 6 + seed % 2;
        let t = layered_block(17, n2, 4, 1);
        let s = DegreeSpec::from_ints(1, 1, 1, 3);
        run(&t, &s, 3, 4, 2, 1);
    }
    // sparse middles at k = 3 shrink: the rich threshold is out of reach
    for seed in 0..30usize {
        let n2 = 18 + seed % 7;
        let t = layered_block(35, n2, 5, 4);
        let s = DegreeSpec::from_ints(1, 1, 2, 20);
        run(&t, &s, 1, 2, 3, 1);
    }

    assert_eq!(ran, 100);
    assert!(
        subgraphs > 0 && thetas > 0 && shrunk > 0,
        "all three alternatives must occur: {} / {} / {}",
        subgraphs,
        thetas,
        shrunk
    );
}

/// Layer 1 complete to the middle, each middle vertex with `c` spread edges
/// into layer 3.
fn layered_block(n1: usize, n2: usize, n3: usize, c: usize) -> Trilayered {
    let mut edges = Vec::new();
    for v in 0..n2 {
        for u in 0..n1 {
            edges.push((n1 + v, u));
        }
        for j in 0..c {
            edges.push((n1 + v, n1 + n2 + (c * v + j) % n3));
        }
    }
    let host = Graph::from_edges(n1 + n2 + n3, &edges).unwrap();
    Trilayered::new(
        host,
        (0..n1).collect(),
        (n1..n1 + n2).collect(),
        (n1 + n2..n1 + n2 + n3).collect(),
    )
    .unwrap()
}

#[test]
fn c7_exhaustive_search_verdict_matches_a_naive_enumeration() {
    let mut corpus: Vec<Trilayered> = Vec::new();
    for seed in 0..20u64 {
        for (p12, p23) in [(0.35, 0.5), (0.5, 0.5), (0.65, 0.4)] {
            let n1 = 3 + (seed % 3) as usize;
            let n2 = 3 + (seed % 2) as usize;
            let n3 = 2 + (seed % 3) as usize;
            corpus.push(gen_random_trilayered(n1, n2, n3, p12, p23, 31 * seed + 1));
        }
    }
    for seed in [5u64, 6, 7] {
        corpus.push(gen_planted_well_placed(2, seed).trilayer());
    }
    corpus.push(gen_random_trilayered(5, 4, 5, 0.5, 0.5, 99));

    let mut positives = 0u32;
    for (i, t) in corpus.iter().enumerate() {
        assert!(t.vertex_count() <= 14);
        let fast = find_well_placed_exhaustive(t, 2);
        let slow = naive_well_placed_exists(t, 2);
        assert_eq!(fast.is_some(), slow, "instance {} disagrees", i);
        if let Some(cert) = fast {
            evencycle::trilayered::verify_well_placed(t, &cert, 2).unwrap();
            positives += 1;
        }
    }
    assert!(positives >= 3, "corpus must include positive instances");
}

/// Ground truth for c7, written against the definition and nothing else:
/// enumerate every simple cycle of the layer graph, ask for a chord, and ask
/// every middle-layer cycle vertex for an off-cycle layer-1 neighbor.
fn naive_well_placed_exists(t: &Trilayered, k: usize) -> bool {
    let lg = t.layer_graph();
    let need = (2 * k).max(4);
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; lg.n()];
    for start in 0..lg.n() {
        path.push(start);
        on_path[start] = true;
        if cycle_dfs(t, &lg, need, start, &mut path, &mut on_path) {
            return true;
        }
        on_path[start] = false;
        path.pop();
    }
    false
}

fn cycle_dfs(
    t: &Trilayered,
    lg: &Graph,
    need: usize,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
) -> bool {
    let last = *path.last().unwrap();
    for &nb in lg.neighbors(last) {
        if nb == start
            && path.len() >= need
            && path.len() % 2 == 0
            && path[1] < *path.last().unwrap()
            && cycle_is_well_placed(t, lg, path)
        {
            return true;
        }
        if nb > start && !on_path[nb] {
            path.push(nb);
            on_path[nb] = true;
            if cycle_dfs(t, lg, need, start, path, on_path) {
                return true;
            }
            on_path[nb] = false;
            path.pop();
        }
    }
    false
}

fn cycle_is_well_placed(t: &Trilayered, lg: &Graph, cycle: &[usize]) -> bool {
    let len = cycle.len();
    let has_chord = (0..len).any(|i| {
        (0..len).any(|j| {
            let gap = (j + len - i) % len;
            gap > 1 && gap < len - 1 && lg.has_edge(cycle[i], cycle[j])
        })
    });
    if !has_chord {
        return false;
    }
    cycle.iter().filter(|&&v| t.layer_of(v) == 2).all(|&v| {
        t.host()
            .neighbors(v)
            .iter()
            .any(|&u| t.layer_of(u) == 1 && !cycle.contains(&u))
    })
}

#[test]
fn c8_command_line_pipeline_honors_the_exit_code_contract() {
    let bin = env!("CARGO_BIN_EXE_evencycle");
    let dir = tempfile::tempdir().unwrap();

    for k in [2usize, 3, 4] {
        let g = complete_bipartite(k, k);
        let input = dir.path().join(format!("complete_{}.txt", k));
        let json = dir.path().join(format!("complete_{}.json", k));
        std::fs::write(&input, g.to_text()).unwrap();
        let out = Command::new(bin)
            .args(["find-cycle", "--input"])
            .arg(&input)
            .args(["-k", &k.to_string(), "--json"])
            .arg(&json)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "k = {}: {:?}", k, out);
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(report["result"], "found");
        let cycle: Vec<usize> = report["cycle"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap() as usize)
            .collect();
        assert_eq!(cycle.len(), 2 * k);
        verify_cycle(&g, &CycleCert { vertices: cycle }, 2 * k).unwrap();
    }

    // a square-free host answers "none" for k = 2, through the generator
    let polarity = dir.path().join("polarity.txt");
    let status = Command::new(bin)
        .args(["gen", "--kind", "polarity", "--q", "3", "--out"])
        .arg(&polarity)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = Command::new(bin)
        .args(["find-cycle", "--input"])
        .arg(&polarity)
        .args(["-k", "2"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));

    // forests have no cycles at all
    let forest = dir.path().join("forest.txt");
    let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, i + 1)).collect();
    edges.extend([(8, 9), (8, 10), (8, 11)]);
    std::fs::write(&forest, Graph::from_edges(12, &edges).unwrap().to_text()).unwrap();
    for k in [2usize, 3] {
        let status = Command::new(bin)
            .args(["find-cycle", "--input"])
            .arg(&forest)
            .args(["-k", &k.to_string()])
            .output()
            .unwrap();
        assert_eq!(status.status.code(), Some(3), "forest must give exit 3 for k = {}", k);
    }

    // usage problems exit 2, blown budgets exit 4
    let status = Command::new(bin)
        .args(["find-cycle", "--input", "/definitely/not/there", "-k", "2"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin).args(["ex", "-n", "12", "-k", "2"]).output().unwrap();
    assert_eq!(status.status.code(), Some(4));
}
