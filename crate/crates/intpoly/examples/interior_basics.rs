//! Parse a bipartite graph and compute its interior polynomial by both
//! pipelines: the cycle-deletion recursion and exact lattice-point
//! counting on the root polytope.
//!
//! ```bash
//! cargo run --example interior_basics
//! ```

use intpoly::bigraph::{find_cycle, parse_graph};
use intpoly::ehrhart::interior_polynomial_via_ehrhart;
use intpoly::interior::interior_recursive;

fn main() {
    let text = "\
# A hexagon: three nodes per class, six edges around.
E: a b c
V: x y z
edge: a x
edge: b x
edge: b y
edge: c y
edge: c z
edge: a z
";
    let g = parse_graph(text).expect("valid graph file");
    println!("graph: {} E-nodes, {} V-nodes, {} edges", g.n_e(), g.n_v(), g.n_edges());

    if let Some(cycle) = find_cycle(&g) {
        let names: Vec<&str> = cycle.nodes.iter().map(|&n| g.node_name(n)).collect();
        println!("shortest cycle through: {}", names.join(" - "));
    }

    let by_recursion = interior_recursive(&g).expect("within the edge cap");
    let by_counting = interior_polynomial_via_ehrhart(&g);
    println!("interior polynomial (recursion): {by_recursion}");
    println!("interior polynomial (counting):  {by_counting}");
    assert_eq!(by_recursion, by_counting);

    // Removing one edge leaves a tree; every tree has interior polynomial 1.
    let path = g.delete_edges(&[0usize].into_iter().collect()).unwrap();
    println!("after deleting one edge: {}", interior_recursive(&path).unwrap());
}
