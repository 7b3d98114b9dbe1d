//! Polarity graphs of finite projective planes: n = q^2 + q + 1 vertices,
//! about half n^(3/2) edges, and not a single 4-cycle. They witness that the
//! analytic bound for k = 2 has the right order of growth.

use evencycle::oracle::{contains_cycle, polarity_graph};
use evencycle::pipeline::bound;

fn main() {
    println!("  q    n     edges   degree range   bound for k = 2");
    for q in [2, 3, 5, 7, 11, 13] {
        let pg = polarity_graph(q);
        let g = &pg.graph;
        assert_eq!(g.n(), (q * q + q + 1) as usize);
        assert_eq!(2 * g.m(), (q * (q + 1) * (q + 1)) as usize);
        println!(
            "  {:2}  {:4}   {:6}   {} to {}       {:9.1}",
            q,
            g.n(),
            g.m(),
            g.min_degree(),
            g.max_degree(),
            bound(g.n(), 2)
        );
    }

    // checking freeness exhaustively is cheap at these sizes
    for q in [2, 3, 5] {
        let pg = polarity_graph(q);
        assert!(contains_cycle(&pg.graph, 4).is_none());
        println!("q = {}: no 4-cycle anywhere in the {} edges", q, pg.graph.m());
    }

    // exactly q + 1 self-conjugate points fall one short of degree q + 1
    let pg = polarity_graph(5);
    let low = (0..pg.graph.n()).filter(|&v| pg.graph.degree(v) == 5).count();
    println!("q = 5: {} points of degree q, the rest have degree q + 1", low);
}
