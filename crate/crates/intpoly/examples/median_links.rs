//! The median construction and the knot-theory side: a plane bipartite
//! graph becomes a special link diagram whose HOMFLY top coefficient is
//! the signed interior polynomial in disguise.
//!
//! ```bash
//! cargo run --example median_links
//! ```

use intpoly::bigraph::SignedBipartiteGraph;
use intpoly::homfly::{
    homfly, median_diagram, median_top_check, seifert_analyze, top_coefficient, PlaneEmbedding,
};
use intpoly::interior::interior_signed;

fn show(label: &str, pe: &PlaneEmbedding) {
    let d = median_diagram(pe).unwrap();
    let data = seifert_analyze(&d);
    println!("{label}:");
    println!("  crossings {}, circles {}, writhe {}", d.n_crossings(), data.circles, data.writhe);
    println!("  homfly: {}", homfly(&d).unwrap());
    println!("  top:    {}", top_coefficient(&d).unwrap());
    println!("  interior route: I+ = {}", interior_signed(pe.graph()));
    assert!(median_top_check(pe).unwrap());
}

fn main() {
    // One positive edge: the one-crossing unknot.
    let k2 = SignedBipartiteGraph::unsigned(1, 1, &[(0, 0)]);
    show("single edge (unknot)", &PlaneEmbedding::new(k2, vec![vec![0], vec![0]]).unwrap());

    // A doubled positive edge: the positive Hopf link.
    let double = SignedBipartiteGraph::unsigned(1, 1, &[(0, 0), (0, 0)]);
    show(
        "doubled edge (Hopf link)",
        &PlaneEmbedding::new(double, vec![vec![0, 1], vec![0, 1]]).unwrap(),
    );

    // A four-cycle with one doubled edge: the five-crossing twist knot,
    // with its four Seifert circles.
    let twist = SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1), (0, 0)]);
    let rot = vec![vec![0, 1, 4], vec![2, 3], vec![0, 4, 2], vec![3, 1]];
    let pe = PlaneEmbedding::new(twist, rot).unwrap();
    show("four-cycle with doubled edge (twist knot)", &pe);

    // The mirror image swaps v for -1/v.
    let d = median_diagram(&pe).unwrap();
    let p = homfly(&d).unwrap();
    let pm = homfly(&d.mirror()).unwrap();
    println!("mirror homfly: {pm}");
    assert_eq!(pm, p.subst_v_neg_inv());
}
