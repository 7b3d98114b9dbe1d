//! A theta graph is well placed in a three-layer graph when every cycle
//! vertex on the middle layer has a neighbor in layer 1 off the theta.
//! This runs the exhaustive and the constructive searches on the same
//! instances and verifies both certificates.

use evencycle::graph::Graph;
use evencycle::oracle::gen_planted_well_placed;
use evencycle::trilayered::{
    find_well_placed_constructive, find_well_placed_exhaustive, verify_well_placed, DegreeSpec,
    Trilayered,
};

fn main() {
    // planted instances hide a well-placed theta behind a relabeling
    for k in [2, 3, 4] {
        let inst = gen_planted_well_placed(k, 42);
        let t = inst.trilayer();
        let cert = find_well_placed_exhaustive(&t, k).expect("the planted theta is there");
        verify_well_placed(&t, &cert, k).unwrap();
        println!(
            "k = {}: exhaustive finds a {}-cycle theta with {} witnesses in the {}-vertex instance",
            k,
            cert.theta.len(),
            cert.witnesses.len(),
            inst.graph.n()
        );
    }

    // complete layers make the strong degree spec easy to meet, so the
    // constructive search applies; both searches must agree on success
    let (n1, n2, n3) = (6, 4, 4);
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
    let t = Trilayered::new(
        host,
        (0..n1).collect(),
        (n1..n1 + n2).collect(),
        (n1 + n2..n1 + n2 + n3).collect(),
    )
    .unwrap();
    let s = DegreeSpec::from_ints(4, 6, 3, 1);
    let built = find_well_placed_constructive(&t, &s, 2, 1, 8, None).unwrap();
    verify_well_placed(&t, &built, 2).unwrap();
    let found = find_well_placed_exhaustive(&t, 2).unwrap();
    verify_well_placed(&t, &found, 2).unwrap();
    println!(
        "complete block: constructive gives cycle {:?}, exhaustive gives cycle {:?}",
        built.theta.cycle, found.theta.cycle
    );

    // with a one-step budget the constructive search reports how far it got
    match find_well_placed_constructive(&t, &s, 2, 1, 8, Some(1)) {
        Err(e) => println!("budget of one step: {}", e),
        Ok(_) => println!("budget of one step: already done"),
    }
}
