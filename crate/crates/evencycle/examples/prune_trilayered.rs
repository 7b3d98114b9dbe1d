//! One pruning pass on three-layer graphs, hitting all three outcomes:
//! a surviving subgraph with the demanded minimum degrees, a forced theta
//! graph, and a shrunken middle layer that keeps most of the edges.

use evencycle::graph::Graph;
use evencycle::theta::verify_theta;
use evencycle::trilayered::{
    check_density_gates, prune_to_min_degree, rat_frac, DegreeSpec, PruneOutcome, PruneParams,
    Trilayered,
};

fn block(n1: usize, n2: usize, n3: usize) -> Trilayered {
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in 0..n2 {
            edges.push((u, n1 + v));
        }
    }
    for v in 0..n2 {
        for w in 0..n3 {
            edges.push((n1 + v, n1 + n2 + w));
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

fn main() {
    // dense block: every vertex clears its floor, the whole graph survives
    let t = block(20, 6, 4);
    let s = DegreeSpec::from_ints(1, 1, 1, 1);
    match prune_to_min_degree(&t, &s, &rat_frac(3, 4), 2, 1).unwrap() {
        PruneOutcome::Subgraph(sub) => println!(
            "dense block survives whole: layers {}/{}/{}",
            sub.layer(1).len(),
            sub.layer(2).len(),
            sub.layer(3).len()
        ),
        other => panic!("unexpected outcome {:?}", other),
    }

    // starved third layer: the middle empties, but every middle vertex is
    // rich toward layer 1, so the counting forces a theta graph there
    let n1 = 17;
    let (n2, n3) = (7, 4);
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in 0..n2 {
            edges.push((u, n1 + v));
        }
    }
    for v in 0..n2 {
        edges.push((n1 + v, n1 + n2 + v % n3));
    }
    let host = Graph::from_edges(n1 + n2 + n3, &edges).unwrap();
    let t = Trilayered::new(
        host,
        (0..n1).collect(),
        (n1..n1 + n2).collect(),
        (n1 + n2..n1 + n2 + n3).collect(),
    )
    .unwrap();
    let s = DegreeSpec::from_ints(1, 1, 1, 3);
    match prune_to_min_degree(&t, &s, &rat_frac(3, 4), 2, 1).unwrap() {
        PruneOutcome::Theta { theta, .. } => {
            verify_theta(&t.layer_graph(), &theta, 2).unwrap();
            println!(
                "starved third layer: theta with {}-cycle {:?}, chord {:?}, verified",
                theta.len(),
                theta.cycle,
                theta.chord
            );
        }
        other => panic!("unexpected outcome {:?}", other),
    }

    // sparse middle at k = 3: nobody reaches the rich threshold, so the
    // removed middle vertices form a shrunken set holding most of the edges
    let (n1, n2, n3) = (35, 20, 5);
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in 0..n2 {
            edges.push((u, n1 + v));
        }
    }
    for v in 0..n2 {
        for j in 0..4 {
            edges.push((n1 + v, n1 + n2 + (4 * v + j) % n3));
        }
    }
    let host = Graph::from_edges(n1 + n2 + n3, &edges).unwrap();
    let t = Trilayered::new(
        host,
        (0..n1).collect(),
        (n1..n1 + n2).collect(),
        (n1 + n2..n1 + n2 + n3).collect(),
    )
    .unwrap();
    let e_start = t.e12();
    let s = DegreeSpec::from_ints(1, 1, 2, 20);
    match prune_to_min_degree(&t, &s, &rat_frac(1, 2), 3, 1).unwrap() {
        PruneOutcome::Shrunken { v2 } => {
            let kept = t.host().edges_between(t.layer(1), &v2);
            println!(
                "sparse middle shrinks to {} of {} vertices, keeping {} of {} edges",
                v2.len(),
                n2,
                kept,
                e_start
            );
        }
        other => panic!("unexpected outcome {:?}", other),
    }

    // the iterated version guards itself with density gates that only very
    // large middles can clear; here the first one fires and says which
    let p = PruneParams::new(2, 1, 2);
    match check_density_gates(&block(20, 6, 4), &p) {
        Err(e) => println!("density gates on a small block: {}", e),
        Ok(f) => println!("density gates pass with f = {}", f),
    }
}
