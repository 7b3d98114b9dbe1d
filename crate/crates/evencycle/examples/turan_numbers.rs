//! Exact extremal edge counts from the brute-force oracle, next to the
//! analytic bound they must stay under.

use evencycle::oracle::{contains_cycle, ex_brute};
use evencycle::pipeline::bound;

fn main() {
    for k in [2, 3] {
        let cap = if k == 2 { 9 } else { 8 };
        let entries = ex_brute(cap, k).unwrap();
        println!("most edges with no cycle on {} vertices:", 2 * k);
        println!("  n   exact   bound");
        for e in &entries {
            // the witness really is extremal and really is free of the cycle
            assert_eq!(e.witness.m(), e.max_edges);
            assert!(contains_cycle(&e.witness, 2 * k).is_none());
            println!("  {}   {:5}   {:7.1}", e.n, e.max_edges, bound(e.n, k));
        }
        let last = entries.last().unwrap();
        println!(
            "  witness for n = {}: {:?}",
            last.n,
            last.witness.edges()
        );
    }

    // the bound grows like n^(1 + 1/k), so doubling n scales it predictably
    for k in [2, 3, 4, 5] {
        let ratio = bound(2000, k) / bound(1000, k);
        println!(
            "k = {}: bound(2000)/bound(1000) = {:.4}, pure power law would give {:.4}",
            k,
            ratio,
            f64::powf(2.0, 1.0 + 1.0 / k as f64)
        );
    }
}
