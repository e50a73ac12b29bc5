//! Signed interior polynomials: the subset expansion over negative edges,
//! the symmetric variant over positive edges, and the edge-resolving
//! pipeline, all agreeing exactly.
//!
//! ```bash
//! cargo run --example signed_interior
//! ```

use intpoly::bigraph::parse_graph;
use intpoly::ehrhart::interior_signed_via_ehrhart;
use intpoly::interior::{interior_signed, interior_signed_minus, interior_signed_skein};

fn main() {
    let text = "\
E: e1 e2
V: v1 v2
edge: e1 v1 +
edge: e1 v2 -
edge: e2 v1 +
edge: e2 v2 +
";
    let g = parse_graph(text).expect("valid graph file");
    println!(
        "square with {} positive and {} negative edges",
        g.n_positive(),
        g.n_negative()
    );

    let plus = interior_signed(&g);
    println!("I+ (subset expansion):  {plus}");
    println!("I+ (edge resolution):   {}", interior_signed_skein(&g));
    println!("I+ (lattice counting):  {}", interior_signed_via_ehrhart(&g));
    println!("I- (positive subsets):  {}", interior_signed_minus(&g));

    // I- is I+ of the sign-flipped graph.
    assert_eq!(interior_signed_minus(&g), interior_signed(&g.negate()));

    // A single negative edge is already interesting: I+ = x.
    let lonely = parse_graph("E: e\nV: v\nedge: e v -\n").unwrap();
    println!("single negative edge: I+ = {}", interior_signed(&lonely));
}
