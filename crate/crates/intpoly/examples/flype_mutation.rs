//! Graph flyping and mutation: two-attachment surgeries that preserve the
//! signed interior polynomial.
//!
//! ```bash
//! cargo run --example flype_mutation
//! ```

use intpoly::bigraph::{flype, mutate, NodeRef, SignedBipartiteGraph};
use intpoly::family::{random_flype_instances, random_mutation_instances};
use intpoly::interior::interior_signed;

fn main() {
    // A hexagon flyped around a three-node subgraph comes back isomorphic.
    let hexagon = SignedBipartiteGraph::unsigned(
        3,
        3,
        &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)],
    );
    let fd = intpoly::bigraph::FlypeDecomposition {
        r_nodes: [NodeRef::V(0), NodeRef::E(1), NodeRef::V(1)].into_iter().collect(),
        hinge: NodeRef::V(1),
        e0: 0,
        a: NodeRef::E(0),
        b: NodeRef::V(0),
    };
    let flyped = flype(&hexagon, &fd).unwrap();
    println!("hexagon: I+ = {}", interior_signed(&hexagon));
    println!("flyped:  I+ = {}", interior_signed(&flyped));

    // A theta graph mutated between its two hubs.
    let theta = SignedBipartiteGraph::unsigned(
        3,
        2,
        &[(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)],
    );
    let md = intpoly::bigraph::MutationDecomposition {
        r_edges: [0usize, 1].into_iter().collect(),
        v1: NodeRef::V(0),
        v2: NodeRef::V(1),
    };
    let mutated = mutate(&theta, &md).unwrap();
    println!("theta:   I+ = {}", interior_signed(&theta));
    println!("mutated: I+ = {}", interior_signed(&mutated));

    // Randomly planted sites, both operations, mixed signs.
    let mut checked = 0usize;
    for (g, fd) in random_flype_instances(25, 42) {
        assert_eq!(interior_signed(&g), interior_signed(&flype(&g, &fd).unwrap()));
        checked += 1;
    }
    for same_color in [true, false] {
        for (g, md) in random_mutation_instances(25, same_color, 42) {
            assert_eq!(interior_signed(&g), interior_signed(&mutate(&g, &md).unwrap()));
            checked += 1;
        }
    }
    println!("invariance verified on {checked} random surgeries");
}
