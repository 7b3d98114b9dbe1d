//! Finds theta graphs (a cycle of length at least 2k with a chord) three
//! ways and verifies each certificate against its host.

use evencycle::oracle::{complete_bipartite, gen_min_degree_bipartite};
use evencycle::theta::{
    find_theta_avg_degree, find_theta_exhaustive, find_theta_min_degree, verify_theta,
};

fn main() {
    let k = 3;

    let g = complete_bipartite(4, 4);
    if let Some(theta) = find_theta_exhaustive(&g, k) {
        verify_theta(&g, &theta, k).unwrap();
        println!(
            "exhaustive on K(4,4): cycle {:?}, chord {:?}, verified",
            theta.cycle, theta.chord
        );
    }

    let h = gen_min_degree_bipartite(30, 30, k, 11);
    let theta = find_theta_min_degree(&h, k).unwrap();
    verify_theta(&h, &theta, k).unwrap();
    println!(
        "min-degree route on a random host ({} edges): {}-cycle with chord {:?}, verified",
        h.m(),
        theta.len(),
        theta.chord
    );

    // the average-degree route peels to a k-core first, so a few stray
    // low-degree vertices do not matter
    let dense = gen_min_degree_bipartite(24, 24, 2 * k, 13);
    let theta = find_theta_avg_degree(&dense, k).unwrap();
    verify_theta(&dense, &theta, k).unwrap();
    println!(
        "average-degree route ({} edges on {} vertices): {}-cycle, verified",
        dense.m(),
        dense.n(),
        theta.len()
    );

    // a plain cycle has no chord, so the exhaustive search reports nothing
    let plain = evencycle::graph::Graph::from_edges(
        6,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)],
    )
    .unwrap();
    assert!(find_theta_exhaustive(&plain, k).is_none());
    println!("plain 6-cycle: no theta, as it should be");
}
