//! The alternating convex-hull indicator identity, evaluated pointwise
//! over a deterministic sample set with an exact rational simplex.
//!
//! ```bash
//! cargo run --example hull_identity
//! ```

use intpoly::hull::{
    affine_dim, conv_contains, generate_samples, indicator_sides, relint_contains, RatPoint,
};

fn main() {
    // A deliberately degenerate configuration: a segment with an interior
    // point listed twice.
    let x = vec![
        RatPoint::from_integers(&[0]),
        RatPoint::from_integers(&[2]),
        RatPoint::from_integers(&[1]),
        RatPoint::from_integers(&[1]),
    ];
    println!("affine dimension: {}", affine_dim(&x).unwrap());

    let q = RatPoint::from_integers(&[1]);
    println!("q in hull: {}", conv_contains(&x, &q).unwrap());
    println!("q in relative interior: {}", relint_contains(&x, &q).unwrap());

    let (lhs, rhs) = indicator_sides(&x, &q).unwrap();
    println!("indicator identity at q: signed interior {lhs} = subset sum {rhs}");

    let samples = generate_samples(&x);
    println!("checking {} deterministic sample points...", samples.len());
    for q in &samples {
        let (lhs, rhs) = indicator_sides(&x, q).unwrap();
        assert_eq!(lhs, rhs, "identity fails at {q:?}");
    }
    println!("identity holds at every sample");
}
