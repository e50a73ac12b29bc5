//! Named verification suites over exhaustive small-graph families and
//! seeded random instances, with machine-checkable reports.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::bigraph::SignedBipartiteGraph;
use crate::ehrhart::{
    dilation_membership, relint_membership, signed_ehr_check, reciprocity_check, LatticePoint,
    RootPolytope,
};
use crate::family::{
    connected_bigraphs, connected_classical_graphs, planar_rotation, random_flype_instances,
    random_mutation_instances, random_signs, with_sign_pattern,
};
use crate::homfly::{
    homfly, homfly_seeded, median_diagram, median_top_check, morton_exponent, seifert_analyze,
    LinkDiagram, PlaneEmbedding,
};
use crate::hull::{conv_contains, generate_samples, indicator_identity_check, RatPoint};
use crate::interior::{interior_signed, invariance_suite, tutte_specialization_check, Surgery};
use crate::poly::LaurentPoly2;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub millis: u128,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub checks: Vec<CheckResult>,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        let digest = Sha256::digest(command.as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        RunReport { command: command.to_string(), input_digest: hex, checks: Vec::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "run {} digest {}", self.command, self.input_digest);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "check {} {} ({}ms)", c.name, status, c.millis);
            if let Some(w) = &c.witness {
                for line in w.lines() {
                    let _ = writeln!(out, "  witness: {line}");
                }
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "summary {}/{} passed", passed, self.checks.len());
        out
    }
}

fn timed_check(name: &str, outcome: Result<(), String>, start: Instant) -> CheckResult {
    match outcome {
        Ok(()) => CheckResult {
            name: name.to_string(),
            passed: true,
            witness: None,
            millis: start.elapsed().as_millis(),
        },
        Err(witness) => CheckResult {
            name: name.to_string(),
            passed: false,
            witness: Some(witness),
            millis: start.elapsed().as_millis(),
        },
    }
}

fn sign_patterns_for(g: &SignedBipartiteGraph, all_signs_max: usize, seed: u64) -> Vec<u64> {
    let m = g.n_edges();
    if m <= all_signs_max {
        (0..(1u64 << m)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ m as u64);
        let mut patterns = vec![0u64, (1u64 << m) - 1];
        for _ in 0..3 {
            patterns.push(rng.gen::<u64>() & ((1u64 << m) - 1));
        }
        patterns
    }
}

/// All-sign mirroring: the reversal prediction must equal I+ of the
/// sign-flipped graph.
pub fn mirror_suite(max_edges: usize, all_signs_max: usize, seed: u64) -> Vec<CheckResult> {
    let family = connected_bigraphs(max_edges);
    family
        .par_iter()
        .map(|g| {
            let start = Instant::now();
            let outcome = mirror_outcome(g, all_signs_max, seed);
            timed_check(&format!("mirror/{}e/{}", g.n_edges(), short_id(g)), outcome, start)
        })
        .collect()
}

fn mirror_outcome(
    g: &SignedBipartiteGraph,
    all_signs_max: usize,
    seed: u64,
) -> Result<(), String> {
    for pattern in sign_patterns_for(g, all_signs_max, seed) {
        let signed = with_sign_pattern(g, pattern);
        let predicted = crate::interior::mirror_transform(&signed)
            .map_err(|e| format!("{e}\n{}", signed.to_format_string()))?;
        let actual = interior_signed(&signed.negate());
        if predicted != actual {
            return Err(format!(
                "pattern {pattern:b}: predicted {predicted}, got {actual}\n{}",
                signed.to_format_string()
            ));
        }
    }
    Ok(())
}

/// Ehrhart reciprocity plus the signed series identity.
pub fn reciprocity_suite(max_edges: usize, s_max: i64, seed: u64) -> Vec<CheckResult> {
    let family = connected_bigraphs(max_edges);
    let mut checks: Vec<CheckResult> = family
        .par_iter()
        .map(|g| {
            let start = Instant::now();
            let outcome = match reciprocity_check(g, s_max) {
                Ok(true) => Ok(()),
                Ok(false) => Err(g.to_format_string()),
                Err(e) => Err(format!("{e}\n{}", g.to_format_string())),
            };
            timed_check(&format!("reciprocity/{}e/{}", g.n_edges(), short_id(g)), outcome, start)
        })
        .collect();
    // Signed Ehrhart series truncations at x = 1/2.
    let small: Vec<&SignedBipartiteGraph> =
        family.iter().filter(|g| g.n_edges() <= 5).collect();
    let x0 = BigRational::new(BigInt::from(1), BigInt::from(2));
    checks.par_extend(small.par_iter().map(|g| {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut outcome = Ok(());
        for _ in 0..3 {
            let signed = random_signs(g, &mut rng);
            let t = signed.n_nodes() + 2;
            match signed_ehr_check(&signed, &x0, t) {
                Ok((lhs, rhs)) if lhs == rhs => {}
                Ok((lhs, rhs)) => {
                    outcome = Err(format!(
                        "series mismatch {lhs} vs {rhs}\n{}",
                        signed.to_format_string()
                    ));
                    break;
                }
                Err(e) => {
                    outcome = Err(format!("{e}\n{}", signed.to_format_string()));
                    break;
                }
            }
        }
        timed_check(&format!("signed-series/{}e/{}", g.n_edges(), short_id(g)), outcome, start)
    }));
    checks
}

/// Alternating-subgraph expansion of the reversed interior polynomial.
pub fn subgraph_suite(max_edges: usize) -> Vec<CheckResult> {
    let family = connected_bigraphs(max_edges);
    family
        .par_iter()
        .map(|g| {
            let start = Instant::now();
            let outcome = match crate::interior::subgraph_expansion_check(g) {
                Ok(true) => Ok(()),
                Ok(false) => Err(g.to_format_string()),
                Err(e) => Err(format!("{e}\n{}", g.to_format_string())),
            };
            timed_check(&format!("subgraph/{}e/{}", g.n_edges(), short_id(g)), outcome, start)
        })
        .collect()
}

fn rp(coords: &[i64]) -> RatPoint {
    RatPoint::from_integers(coords)
}

fn rp_frac(coords: &[(i64, i64)]) -> RatPoint {
    RatPoint(
        coords
            .iter()
            .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect(),
    )
}

/// The fixed pool of rational configurations for the indicator identity:
/// dimensions up to three, at most six points, with collinear, duplicated
/// and all-equal degeneracies represented.
pub fn hull_pool() -> Vec<(&'static str, Vec<RatPoint>)> {
    vec![
        ("point", vec![rp(&[2])]),
        ("segment", vec![rp(&[0]), rp(&[1])]),
        ("segment-dup-ends", vec![rp(&[0]), rp(&[0]), rp(&[1]), rp(&[1])]),
        ("collinear-triple", vec![rp(&[0]), rp(&[1]), rp_frac(&[(1, 2)])]),
        ("collinear-four", vec![rp(&[0]), rp(&[3]), rp(&[1]), rp(&[2])]),
        ("all-equal", vec![rp(&[1, 1]), rp(&[1, 1]), rp(&[1, 1])]),
        ("triangle", vec![rp(&[0, 0]), rp(&[2, 0]), rp(&[0, 2])]),
        (
            "triangle-centroid",
            vec![rp(&[0, 0]), rp(&[3, 0]), rp(&[0, 3]), rp(&[1, 1])],
        ),
        (
            "square",
            vec![rp(&[0, 0]), rp(&[1, 0]), rp(&[0, 1]), rp(&[1, 1])],
        ),
        (
            "square-dup-corner",
            vec![rp(&[0, 0]), rp(&[1, 0]), rp(&[0, 1]), rp(&[1, 1]), rp(&[0, 0])],
        ),
        (
            "planar-in-3d",
            vec![rp(&[0, 0, 0]), rp(&[1, 0, 0]), rp(&[0, 1, 0]), rp(&[1, 1, 0])],
        ),
        (
            "tetrahedron",
            vec![rp(&[0, 0, 0]), rp(&[1, 0, 0]), rp(&[0, 1, 0]), rp(&[0, 0, 1])],
        ),
        (
            "tetra-face-mid",
            vec![
                rp(&[0, 0, 0]),
                rp(&[2, 0, 0]),
                rp(&[0, 2, 0]),
                rp(&[0, 0, 2]),
                rp_frac(&[(1, 2), (1, 2), (0, 1)]),
            ],
        ),
        (
            "prism",
            vec![
                rp(&[0, 0, 0]),
                rp(&[1, 0, 0]),
                rp(&[0, 1, 0]),
                rp(&[0, 0, 1]),
                rp(&[1, 0, 1]),
                rp(&[0, 1, 1]),
            ],
        ),
    ]
}

fn dedup_points(x: &[RatPoint]) -> Vec<RatPoint> {
    let mut out: Vec<RatPoint> = Vec::new();
    for p in x {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

/// The indicator identity over the pool, in the indexed-family reading and
/// the deduplicated reading, plus the root-polytope specialization and the
/// cross-check of the two membership oracles.
pub fn hull_suite(poly_max_edges: usize) -> Vec<CheckResult> {
    let mut checks: Vec<CheckResult> = hull_pool()
        .par_iter()
        .map(|(name, x)| {
            let start = Instant::now();
            let samples = generate_samples(x);
            let outcome = match indicator_identity_check(x, &samples) {
                Ok(true) => {
                    let d = dedup_points(x);
                    match indicator_identity_check(&d, &generate_samples(&d)) {
                        Ok(true) => Ok(()),
                        Ok(false) => Err(format!("{name}: deduplicated reading fails")),
                        Err(e) => Err(format!("{name}: {e}")),
                    }
                }
                Ok(false) => Err(format!("{name}: indexed reading fails")),
                Err(e) => Err(format!("{name}: {e}")),
            };
            timed_check(&format!("hull/indicator/{name}"), outcome, start)
        })
        .collect();

    // Root-polytope specialization: pointwise over all candidate block
    // pairs, the signed relative-interior indicator equals the alternating
    // sum of subgraph dilation memberships.
    let family: Vec<SignedBipartiteGraph> = connected_bigraphs(poly_max_edges);
    checks.par_extend(family.par_iter().map(|g| {
        let start = Instant::now();
        let outcome = root_polytope_indicator_outcome(g, 2);
        timed_check(&format!("hull/root-polytope/{}e/{}", g.n_edges(), short_id(g)), outcome, start)
    }));

    // Membership oracle agreement: exact simplex versus transportation flow.
    let small: Vec<&SignedBipartiteGraph> =
        family.iter().filter(|g| g.n_edges() <= 4).collect();
    checks.par_extend(small.par_iter().map(|g| {
        let start = Instant::now();
        let outcome = cross_oracle_outcome(g, 2);
        timed_check(&format!("hull/cross-oracle/{}e/{}", g.n_edges(), short_id(g)), outcome, start)
    }));
    checks
}

fn all_block_pairs(g: &SignedBipartiteGraph, s: i64) -> Vec<LatticePoint> {
    fn comps(total: i64, slots: usize) -> Vec<Vec<i64>> {
        if slots == 0 {
            return if total == 0 { vec![vec![]] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for w in 0..=total {
            for mut rest in comps(total - w, slots - 1) {
                rest.insert(0, w);
                out.push(rest);
            }
        }
        out
    }
    let mut points = Vec::new();
    for eb in comps(s, g.n_e()) {
        for vb in comps(s, g.n_v()) {
            points.push(LatticePoint::from_blocks(&eb, &vb));
        }
    }
    points
}

fn root_polytope_indicator_outcome(g: &SignedBipartiteGraph, s_max: i64) -> Result<(), String> {
    let dim = RootPolytope::new(g).dim().expect("family graphs have edges");
    let sign = if dim.is_multiple_of(2) { 1i64 } else { -1 };
    let m = g.n_edges();
    let mut subgraphs = Vec::with_capacity(1 << m);
    for kept in 0u64..(1 << m) {
        let del: std::collections::BTreeSet<usize> =
            (0..m).filter(|i| kept & (1 << i) == 0).collect();
        subgraphs.push((kept.count_ones(), g.delete_edges(&del).unwrap()));
    }
    for s in 1..=s_max {
        for p in all_block_pairs(g, s) {
            let lhs = if relint_membership(g, &p, s).map_err(|e| e.to_string())? {
                sign
            } else {
                0
            };
            let mut rhs = 0i64;
            for (size, sub) in &subgraphs {
                if *size == 0 {
                    continue;
                }
                if dilation_membership(sub, &p, s).map_err(|e| e.to_string())? {
                    rhs += if size % 2 == 1 { 1 } else { -1 };
                }
            }
            if lhs != rhs {
                return Err(format!(
                    "point {:?} at s={s}: lhs {lhs} rhs {rhs}\n{}",
                    p.0,
                    g.to_format_string()
                ));
            }
        }
    }
    Ok(())
}

fn cross_oracle_outcome(g: &SignedBipartiteGraph, s_max: i64) -> Result<(), String> {
    let q = RootPolytope::new(g);
    for s in 1..=s_max {
        let scaled: Vec<RatPoint> =
            q.vertices().iter().map(|v| v.to_rat_point().scale_int(s)).collect();
        for p in all_block_pairs(g, s) {
            let flow = dilation_membership(g, &p, s).map_err(|e| e.to_string())?;
            let simplex = conv_contains(&scaled, &p.to_rat_point()).map_err(|e| e.to_string())?;
            if flow != simplex {
                return Err(format!(
                    "oracles disagree at {:?}, s={s}: flow {flow}, simplex {simplex}\n{}",
                    p.0,
                    g.to_format_string()
                ));
            }
        }
    }
    Ok(())
}

/// Interior polynomial invariance under planted flypes.
pub fn flype_suite(count: usize, seed: u64) -> Vec<CheckResult> {
    random_flype_instances(count, seed)
        .par_iter()
        .enumerate()
        .map(|(i, (g, fd))| {
            let start = Instant::now();
            let outcome = match invariance_suite(g, &Surgery::Flype(fd.clone())) {
                Ok(true) => Ok(()),
                Ok(false) => Err(g.to_format_string()),
                Err(e) => Err(format!("{e}\n{}", g.to_format_string())),
            };
            timed_check(&format!("flype/{i}"), outcome, start)
        })
        .collect()
}

/// Interior polynomial invariance under planted mutations, both color
/// cases.
pub fn mutation_suite(count: usize, seed: u64) -> Vec<CheckResult> {
    let half = count.div_ceil(2);
    let mut instances = random_mutation_instances(half, true, seed);
    instances.extend(random_mutation_instances(count - half, false, seed.wrapping_add(1)));
    instances
        .par_iter()
        .enumerate()
        .map(|(i, (g, md))| {
            let start = Instant::now();
            let kind = if md.v1.same_class(md.v2) { "same" } else { "cross" };
            let outcome = match invariance_suite(g, &Surgery::Mutation(md.clone())) {
                Ok(true) => Ok(()),
                Ok(false) => Err(g.to_format_string()),
                Err(e) => Err(format!("{e}\n{}", g.to_format_string())),
            };
            timed_check(&format!("mutation/{kind}/{i}"), outcome, start)
        })
        .collect()
}

/// The knot-theoretic side: pinned link fixtures, the top-coefficient
/// formula on plane graphs, the Morton bound, the mirror substitution, and
/// traversal-choice independence.
pub fn homfly_suite(max_edges: usize, all_signs_max: usize, seed: u64) -> Vec<CheckResult> {
    let mut checks = vec![five_two_fixture_check()];
    let family = connected_bigraphs(max_edges);
    checks.par_extend(family.par_iter().map(|g| {
        let start = Instant::now();
        let outcome = homfly_graph_outcome(g, all_signs_max, seed);
        timed_check(&format!("homfly/median/{}e/{}", g.n_edges(), short_id(g)), outcome, start)
    }));
    checks
}

/// The per-diagram laws every produced diagram must satisfy: the z-degree
/// stays within the circle bound, the mirror value is the v -> -1/v
/// substitution, and the value is independent of the traversal choice.
/// Returns the polynomial for further use.
pub fn diagram_laws(d: &LinkDiagram, seed: u64) -> Result<LaurentPoly2, String> {
    let p = homfly(d).map_err(|e| e.to_string())?;
    if let Some(z) = p.max_z_exp() {
        if z > morton_exponent(d) {
            return Err(format!("z-degree {z} above the circle bound {}", morton_exponent(d)));
        }
    }
    let mirrored = homfly(&d.mirror()).map_err(|e| e.to_string())?;
    if mirrored != p.subst_v_neg_inv() {
        return Err(format!("mirror value {mirrored} is not the substitution of {p}"));
    }
    let replay = homfly_seeded(d, seed).map_err(|e| e.to_string())?;
    if replay != p {
        return Err("value depends on the traversal choice".to_string());
    }
    Ok(p)
}

fn homfly_graph_outcome(
    g: &SignedBipartiteGraph,
    all_signs_max: usize,
    seed: u64,
) -> Result<(), String> {
    let Some(rot) = planar_rotation(g) else {
        return Err(format!("no planar rotation found\n{}", g.to_format_string()));
    };
    for pattern in sign_patterns_for(g, all_signs_max, seed) {
        let signed = with_sign_pattern(g, pattern);
        let pe = PlaneEmbedding::new(signed.clone(), rot.clone())
            .map_err(|e| format!("{e}\n{}", signed.to_format_string()))?;
        let d = median_diagram(&pe).map_err(|e| e.to_string())?;
        let data = seifert_analyze(&d);
        if data.circles != signed.n_nodes() || d.n_crossings() != signed.n_edges() {
            return Err(format!(
                "median has {} circles / {} crossings\n{}",
                data.circles,
                d.n_crossings(),
                signed.to_format_string()
            ));
        }
        let back = data.graph.ok_or_else(|| "circle graph is not bipartite".to_string())?;
        let round_trip = crate::bigraph::isomorphic(&back, &signed).map_err(|e| e.to_string())?
            || crate::bigraph::isomorphic(&back, &signed.swap_classes()).map_err(|e| e.to_string())?;
        if !round_trip {
            return Err(format!("circle graph differs\n{}", signed.to_format_string()));
        }
        diagram_laws(&d, seed).map_err(|e| format!("{e}\n{}", signed.to_format_string()))?;
        if !median_top_check(&pe).map_err(|e| e.to_string())? {
            return Err(format!(
                "top coefficient differs from the interior route\n{}",
                signed.to_format_string()
            ));
        }
    }
    Ok(())
}

fn five_two_fixture_check() -> CheckResult {
    let start = Instant::now();
    let outcome = (|| -> Result<(), String> {
        let g =
            SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1), (0, 0)]);
        let rot = vec![vec![0, 1, 4], vec![2, 3], vec![0, 4, 2], vec![3, 1]];
        let pe = PlaneEmbedding::new(g, rot).map_err(|e| e.to_string())?;
        let d = median_diagram(&pe).map_err(|e| e.to_string())?;
        let p = homfly(&d).map_err(|e| e.to_string())?;
        let mut expected = LaurentPoly2::zero();
        for (c, v, z) in [(1, 2, 2), (1, 4, 2), (1, 2, 0), (1, 4, 0), (-1, 6, 0)] {
            expected.add_term(BigInt::from(c), v, z);
        }
        if p != expected {
            return Err(format!("five-crossing twist knot value {p}"));
        }
        let pm = homfly(&d.mirror()).map_err(|e| e.to_string())?;
        if pm != expected.subst_v_neg_inv() {
            return Err(format!("mirror value {pm}"));
        }
        Ok(())
    })();
    timed_check("homfly/five-crossing-fixture", outcome, start)
}

/// The Tutte specialization against deletion-contraction.
pub fn tutte_suite(max_edges: usize) -> Vec<CheckResult> {
    connected_classical_graphs(max_edges)
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let start = Instant::now();
            let outcome = match tutte_specialization_check(h) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("{h:?}")),
                Err(e) => Err(format!("{e}\n{h:?}")),
            };
            timed_check(&format!("tutte/{}e/{i}", h.edges.len()), outcome, start)
        })
        .collect()
}

fn short_id(g: &SignedBipartiteGraph) -> String {
    let canon = crate::bigraph::canonical_form(g).unwrap_or_default();
    let digest = Sha256::digest(&canon);
    digest.iter().take(4).map(|b| format!("{b:02x}")).collect()
}

/// Named suite selector used by the command-line front end.
pub fn run_suite(name: &str, max_edges: usize, seed: u64) -> Option<RunReport> {
    let mut report = RunReport::new(&format!("verify {name} --max-edges {max_edges} --seed {seed}"));
    let checks = match name {
        "mirror" => mirror_suite(max_edges.min(7), 5, seed),
        "reciprocity" => reciprocity_suite(max_edges.min(7), 3, seed),
        "subgraph" => subgraph_suite(max_edges.min(6)),
        "hull" => hull_suite(max_edges.min(5)),
        "flype" => flype_suite(50, seed),
        "mutation" => mutation_suite(50, seed),
        "homfly" => homfly_suite(max_edges.min(8), 5, seed),
        "tutte" => tutte_suite(max_edges.min(6)),
        "all" => {
            let mut all = Vec::new();
            for suite in ["mirror", "reciprocity", "subgraph", "hull", "flype", "mutation", "homfly", "tutte"] {
                all.extend(run_suite(suite, max_edges, seed)?.checks);
            }
            all
        }
        _ => return None,
    };
    report.checks = checks;
    Some(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for (name, report) in [
            ("mirror", run_suite("mirror", 4, 1).unwrap()),
            ("reciprocity", run_suite("reciprocity", 4, 1).unwrap()),
            ("subgraph", run_suite("subgraph", 4, 1).unwrap()),
            ("tutte", run_suite("tutte", 3, 1).unwrap()),
        ] {
            let failed: Vec<&CheckResult> = report.checks.iter().filter(|c| !c.passed).collect();
            assert!(failed.is_empty(), "{name}: {:?}", failed);
        }
    }

    #[test]
    fn flype_mutation_suites_pass() {
        assert!(flype_suite(8, 3).iter().all(|c| c.passed));
        assert!(mutation_suite(8, 3).iter().all(|c| c.passed));
    }

    #[test]
    fn hull_suite_passes() {
        let checks = hull_suite(3);
        for c in &checks {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn homfly_suite_small_passes() {
        let checks = homfly_suite(4, 3, 5);
        for c in &checks {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn failed_checks_carry_witnesses() {
        let r = timed_check("demo", Err("boom".to_string()), Instant::now());
        assert!(!r.passed);
        assert!(r.witness.is_some());
        let mut report = RunReport::new("demo");
        report.checks.push(r);
        assert!(!report.all_passed());
        assert!(report.render().contains("witness: boom"));
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("bogus", 4, 0).is_none());
    }
}
