//! Rough timing of the skein evaluator across the median diagrams of the
//! small-graph family.

use std::time::Instant;

use intpoly::family::{connected_bigraphs, planar_rotation, with_sign_pattern};
use intpoly::homfly::{homfly, median_diagram, PlaneEmbedding};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let family = connected_bigraphs(max);
    let mut worst = std::time::Duration::ZERO;
    let mut worst_name = String::new();
    let t0 = Instant::now();
    let mut count = 0;
    for g in &family {
        let rot = planar_rotation(g).unwrap();
        for pattern in [0u64, (1 << g.n_edges()) - 1] {
            let signed = with_sign_pattern(g, pattern);
            let pe = PlaneEmbedding::new(signed.clone(), rot.clone()).unwrap();
            let d = median_diagram(&pe).unwrap();
            let t1 = Instant::now();
            let _ = homfly(&d).unwrap();
            let dt = t1.elapsed();
            count += 1;
            if dt > worst {
                worst = dt;
                worst_name = format!("{} pattern {pattern:b}", g.to_format_string().replace('\n', "; "));
            }
        }
    }
    println!("{count} diagrams in {:?}; worst {worst:?} on {worst_name}", t0.elapsed());
}
