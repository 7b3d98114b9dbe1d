//! Runs the degree-capped exploration on a random bipartite host and prints
//! every level together with the growth and minimum-degree audits.

use evencycle::exploration::{audit_growth, audit_min_degree, explore, ExploreParams};
use evencycle::oracle::gen_min_degree_bipartite;

fn main() {
    let k = 3;
    let g = gen_min_degree_bipartite(60, 60, 5, 7);
    println!(
        "host: {} vertices, {} edges, min degree {}",
        g.n(),
        g.m(),
        g.min_degree()
    );

    let params = ExploreParams::new(k, 1);
    println!("degree cap: {}", params.cap());
    let ex = explore(&g, 0, &params, k);

    for level in &ex.levels {
        println!(
            "level {}: {:4} chosen / {:4} candidates, {:2} over the cap, {:?}",
            level.index,
            level.chosen.len(),
            level.candidates.len(),
            level.big_set.len(),
            level.tag
        );
    }

    // every audited vertex keeps its degree in the adjacent levels
    let delta = g.min_degree().min(params.cap());
    match audit_min_degree(&g, &ex, delta) {
        Ok(()) => println!("min-degree audit (delta = {}): clean", delta),
        Err(v) => println!("min-degree audit: {}", v),
    }

    let audit = audit_growth(&g, &ex, k, 1);
    for r in &audit.inequalities {
        let mark = if r.holds { "ok" } else { "BREAKS" };
        println!("  {} at level {}: {:.1} vs {:.1} {}", r.id, r.i, r.lhs, r.rhs, mark);
    }
    println!(
        "growth audit: {}",
        if audit.all_hold() { "all inequalities hold" } else { "violations above" }
    );
}
