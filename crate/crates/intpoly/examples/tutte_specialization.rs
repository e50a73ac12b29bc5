//! The interior polynomial of an incidence subdivision against the
//! classical Tutte polynomial evaluation x^(|V|-1) T(1/x, 1).
//!
//! ```bash
//! cargo run --example tutte_specialization
//! ```

use intpoly::family::connected_classical_graphs;
use intpoly::interior::{interior_recursive, subdivision_bigraph, tutte_specialization_check};
use intpoly::tutte::{tutte_at_y1, tutte_polynomial, ClassicalGraph};

fn main() {
    let triangle = ClassicalGraph::new(3, &[(0, 1), (1, 2), (2, 0)]);
    let t = tutte_polynomial(&triangle);
    let at_y1 = tutte_at_y1(&t);
    let coeffs: Vec<String> = at_y1.iter().enumerate().map(|(i, c)| format!("{c}x^{i}")).collect();
    println!("T(triangle)(x, 1) = {}", coeffs.join(" + "));

    let sub = subdivision_bigraph(&triangle);
    println!(
        "subdivision: {} + {} nodes, {} edges; interior polynomial {}",
        sub.n_e(),
        sub.n_v(),
        sub.n_edges(),
        interior_recursive(&sub).unwrap()
    );
    assert!(tutte_specialization_check(&triangle).unwrap());

    // Loops and parallel edges are fine: the subdivision doubles them away.
    let with_loop = ClassicalGraph::new(2, &[(0, 1), (1, 1)]);
    assert!(tutte_specialization_check(&with_loop).unwrap());

    let family = connected_classical_graphs(5);
    for h in &family {
        assert!(tutte_specialization_check(h).unwrap(), "fails on {h:?}");
    }
    println!("specialization verified on {} classical multigraphs", family.len());
}
