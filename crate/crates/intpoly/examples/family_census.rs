//! Counts the exhaustive small-graph families used by the verification
//! suites and times the two interior-polynomial pipelines across them.

use std::time::Instant;

use intpoly::ehrhart::interior_polynomial_via_ehrhart;
use intpoly::family::connected_bigraphs;
use intpoly::interior::interior_recursive;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let t0 = Instant::now();
    let family = connected_bigraphs(max);
    println!("family up to {max} edges: {} graphs ({:?})", family.len(), t0.elapsed());
    let mut by_edges = vec![0usize; max + 1];
    for g in &family {
        by_edges[g.n_edges()] += 1;
    }
    for (m, count) in by_edges.iter().enumerate().skip(1) {
        println!("  {m} edges: {count}");
    }
    let t1 = Instant::now();
    let mut mismatches = 0;
    for g in &family {
        let a = interior_recursive(g).unwrap();
        let b = interior_polynomial_via_ehrhart(g);
        if a != b {
            mismatches += 1;
            println!("MISMATCH on {}", g.to_format_string());
        }
    }
    println!("pipeline comparison over {} graphs: {:?} ({mismatches} mismatches)",
        family.len(), t1.elapsed());
}
