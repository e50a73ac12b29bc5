//! Root-polytope geometry, exactly: lattice points of dilations, the
//! Ehrhart polynomial, interior points, and reciprocity.
//!
//! ```bash
//! cargo run --example root_polytope
//! ```

use intpoly::bigraph::parse_graph;
use intpoly::ehrhart::{
    count_interior_points, count_points, count_points_by_membership, dilation_membership,
    ehrhart_polynomial, LatticePoint, RootPolytope,
};

fn main() {
    let g = parse_graph(
        "E: e1 e2\nV: v1 v2\nedge: e1 v1\nedge: e1 v2\nedge: e2 v1\nedge: e2 v2\n",
    )
    .unwrap();
    let q = RootPolytope::new(&g);
    println!(
        "root polytope of the square: {} vertices, dimension {}",
        q.vertices().len(),
        q.dim().unwrap()
    );

    for s in 0..=3 {
        println!(
            "dilation {s}: {} lattice points ({} interior)",
            count_points(&g, s),
            if s == 0 { 0 } else { count_interior_points(&g, s).unwrap() }
        );
    }

    // Two counting routes: direct marginal enumeration, and the literal
    // filter of every candidate through the flow membership oracle.
    for s in 0..=3 {
        assert_eq!(count_points(&g, s), count_points_by_membership(&g, s));
    }

    // Membership of a single point: a feasible transportation marginal.
    let p = LatticePoint::from_blocks(&[2, 0], &[1, 1]);
    println!(
        "point (2,0|1,1) in the 2-fold dilation: {}",
        dilation_membership(&g, &p, 2).unwrap()
    );

    let eps = ehrhart_polynomial(&g);
    println!("Ehrhart polynomial: {eps}");

    // Reciprocity: up to sign, the polynomial at -s counts interior points.
    let dim = q.dim().unwrap();
    for s in 1..=3i64 {
        let value = eps.eval_i64(-s);
        let signed = if dim.is_multiple_of(2) { value } else { -value };
        println!(
            "eps(-{s}) with sign: {signed} = interior count {}",
            count_interior_points(&g, s).unwrap()
        );
    }
}
