//! Turns a leveled theta certificate into a cycle on exactly 2k vertices.
//! The escape paths of the cycle vertices on the middle level form a tree
//! toward the root; the two branches below their deepest common vertex plus
//! a path across the theta close up to the right length.

use evencycle::exploration::{explore, ExploreParams};
use evencycle::graph::verify_cycle;
use evencycle::oracle::gen_planted_well_placed;
use evencycle::pipeline::{extract_cycle, LevelCert};

fn main() {
    for k in [2, 3, 5] {
        let inst = gen_planted_well_placed(k, 9);
        println!(
            "k = {}: planted host on {} vertices, theta middle on level {}",
            k,
            inst.graph.n(),
            inst.mid_level
        );

        let ex = explore(
            &inst.graph,
            inst.root,
            &ExploreParams::new(k, inst.d),
            inst.mid_level + 1,
        );
        for level in &ex.levels {
            println!("  level {}: {} vertices", level.index, level.chosen.len());
        }

        let theta_len = inst.cert.theta.len();
        let cert = LevelCert::WellPlaced { cert: inst.cert.clone(), level: inst.mid_level };
        let cycle = extract_cycle(&inst.graph, &ex, &cert, k).unwrap();
        verify_cycle(&inst.graph, &cycle, 2 * k).unwrap();
        println!(
            "  theta cycle had {} vertices, extracted cycle has {}: {:?}",
            theta_len,
            cycle.vertices.len(),
            cycle.vertices
        );
    }

    // a certificate pointing at the wrong level is rejected, not mangled
    let inst = gen_planted_well_placed(3, 9);
    let ex = explore(&inst.graph, inst.root, &ExploreParams::new(3, inst.d), inst.mid_level + 1);
    let wrong = LevelCert::WellPlaced { cert: inst.cert.clone(), level: inst.mid_level + 1 };
    match extract_cycle(&inst.graph, &ex, &wrong, 3) {
        Err(e) => println!("off-by-one level: {}", e),
        Ok(_) => unreachable!("validation lets nothing through from the wrong level"),
    }
}
