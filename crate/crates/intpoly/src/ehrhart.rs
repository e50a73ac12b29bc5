//! Root polytopes of bipartite graphs and exact lattice-point counting.
//!
//! The root polytope of a bipartite graph is the convex hull of the points
//! e + v over its edges ev, inside the space indexed by the disjoint union
//! of the two node classes. A lattice point lies in the s-fold dilation
//! exactly when it is a feasible marginal vector of a nonnegative edge
//! weighting with total weight s, so membership reduces to transportation
//! feasibility, decided exactly by integral maximum flow. Counting walks
//! the integer edge weightings directly and collects distinct marginals;
//! the two routes agree because transportation polytopes with integer
//! marginals always contain integer points.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bigraph::SignedBipartiteGraph;
use crate::hull::{affine_dim, RatPoint};
use crate::poly::{binomial, hstar_from_counts, interpolate, IntPoly, RatPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EhrhartError {
    #[error("operation requires at least one edge")]
    Edgeless,
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("series comparison undefined at x = 1")]
    PoleAtOne,
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
}

/// Integer coordinate vector indexed by the disjoint union of the node
/// classes: E-block first, then V-block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn from_blocks(e_block: &[i64], v_block: &[i64]) -> LatticePoint {
        let mut c = e_block.to_vec();
        c.extend_from_slice(v_block);
        LatticePoint(c)
    }

    pub fn to_rat_point(&self) -> RatPoint {
        RatPoint::from_integers(&self.0)
    }
}

/// The root polytope: vertex set {e + v : ev an edge}, with the underlying
/// graph and the exact affine dimension cached (`None` for the empty
/// polytope of an edgeless graph).
#[derive(Debug, Clone)]
pub struct RootPolytope {
    graph: SignedBipartiteGraph,
    vertices: Vec<LatticePoint>,
    dim: Option<usize>,
}

impl RootPolytope {
    pub fn new(g: &SignedBipartiteGraph) -> RootPolytope {
        let ne = g.n_e();
        let n = g.n_nodes();
        let mut seen = BTreeSet::new();
        let mut vertices = Vec::new();
        for e in g.edges() {
            if seen.insert((e.e, e.v)) {
                let mut coords = vec![0i64; n];
                coords[e.e] = 1;
                coords[ne + e.v] = 1;
                vertices.push(LatticePoint(coords));
            }
        }
        let dim = if vertices.is_empty() {
            None
        } else {
            let pts: Vec<RatPoint> = vertices.iter().map(|p| p.to_rat_point()).collect();
            Some(affine_dim(&pts).expect("nonempty point set"))
        };
        RootPolytope { graph: g.clone(), vertices, dim }
    }

    pub fn graph(&self) -> &SignedBipartiteGraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }
}

/// Distinct (e, v) adjacency pairs, in first-appearance order.
fn distinct_pairs(g: &SignedBipartiteGraph) -> Vec<(usize, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in g.edges() {
        if seen.insert((e.e, e.v)) {
            out.push((e.e, e.v));
        }
    }
    out
}

/// Transportation feasibility by augmenting-path max flow: is there a
/// nonnegative edge weighting with the given node marginals? Exact because
/// every capacity is an integer.
fn transport_feasible(
    n_e: usize,
    n_v: usize,
    pairs: &[(usize, usize)],
    supply: &[i64],
    demand: &[i64],
) -> bool {
    let total: i64 = supply.iter().sum();
    if total != demand.iter().sum::<i64>() {
        return false;
    }
    if supply.iter().any(|&x| x < 0) || demand.iter().any(|&x| x < 0) {
        return false;
    }
    if total == 0 {
        return true;
    }
    // Nodes: 0 = source, 1..=n_e, n_e+1..=n_e+n_v, last = sink.
    let n = n_e + n_v + 2;
    let src = 0;
    let sink = n - 1;
    let mut to: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n]; // (dest, rev index, cap)
    let add = |to: &mut Vec<Vec<(usize, usize, i64)>>, a: usize, b: usize, cap: i64| {
        let (la, lb) = (to[a].len(), to[b].len());
        to[a].push((b, lb, cap));
        to[b].push((a, la, 0));
    };
    for (i, &s) in supply.iter().enumerate() {
        if s > 0 {
            add(&mut to, src, 1 + i, s);
        }
    }
    for (j, &d) in demand.iter().enumerate() {
        if d > 0 {
            add(&mut to, 1 + n_e + j, sink, d);
        }
    }
    for &(e, v) in pairs {
        add(&mut to, 1 + e, 1 + n_e + v, total);
    }
    let mut flow = 0i64;
    let mut seen = vec![false; n];
    loop {
        seen.fill(false);
        let pushed = augment(&mut to, src, sink, i64::MAX, &mut seen);
        if pushed == 0 {
            break;
        }
        flow += pushed;
        if flow >= total {
            break;
        }
    }
    flow == total
}

fn augment(
    to: &mut Vec<Vec<(usize, usize, i64)>>,
    at: usize,
    sink: usize,
    limit: i64,
    seen: &mut [bool],
) -> i64 {
    if at == sink {
        return limit;
    }
    seen[at] = true;
    for k in 0..to[at].len() {
        let (next, rev, cap) = to[at][k];
        if cap <= 0 || seen[next] {
            continue;
        }
        let pushed = augment(to, next, sink, limit.min(cap), seen);
        if pushed > 0 {
            to[at][k].2 -= pushed;
            to[next][rev].2 += pushed;
            return pushed;
        }
    }
    0
}

/// Is `p` a lattice point of the s-fold dilation of the root polytope?
///
/// Membership holds exactly when p is coordinatewise nonnegative, each
/// block sums to s, and the marginal transportation problem on the edges
/// is feasible.
pub fn dilation_membership(
    g: &SignedBipartiteGraph,
    p: &LatticePoint,
    s: i64,
) -> Result<bool, EhrhartError> {
    let n = g.n_nodes();
    if p.0.len() != n {
        return Err(EhrhartError::PointLength { expected: n, got: p.0.len() });
    }
    if p.0.iter().any(|&x| x < 0) {
        return Ok(false);
    }
    let (eb, vb) = p.0.split_at(g.n_e());
    if eb.iter().sum::<i64>() != s || vb.iter().sum::<i64>() != s {
        return Ok(false);
    }
    Ok(transport_feasible(g.n_e(), g.n_v(), &distinct_pairs(g), eb, vb))
}

/// Enumerate the distinct marginal vectors of nonnegative integer edge
/// weightings with total weight `s`. These are exactly the lattice points
/// of the dilation.
fn marginal_points(g: &SignedBipartiteGraph, s: i64) -> Vec<LatticePoint> {
    let n = g.n_nodes();
    if s == 0 {
        return vec![LatticePoint(vec![0; n])];
    }
    let pairs = distinct_pairs(g);
    if pairs.is_empty() {
        return Vec::new();
    }
    let ne = g.n_e();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut margins = vec![0i64; n];
    fn rec(
        pairs: &[(usize, usize)],
        k: usize,
        left: i64,
        ne: usize,
        margins: &mut Vec<i64>,
        seen: &mut HashSet<Vec<i64>>,
        out: &mut Vec<LatticePoint>,
    ) {
        if k + 1 == pairs.len() {
            let (e, v) = pairs[k];
            margins[e] += left;
            margins[ne + v] += left;
            if seen.insert(margins.clone()) {
                out.push(LatticePoint(margins.clone()));
            }
            margins[e] -= left;
            margins[ne + v] -= left;
            return;
        }
        let (e, v) = pairs[k];
        for w in 0..=left {
            margins[e] += w;
            margins[ne + v] += w;
            rec(pairs, k + 1, left - w, ne, margins, seen, out);
            margins[e] -= w;
            margins[ne + v] -= w;
        }
    }
    rec(&pairs, 0, s, ne, &mut margins, &mut seen, &mut out);
    out
}

/// Number of lattice points in the s-fold dilation of the root polytope.
/// By convention the count at s = 0 is 1 (the origin), also for edgeless
/// graphs.
pub fn count_points(g: &SignedBipartiteGraph, s: i64) -> u64 {
    if s == 0 {
        return 1;
    }
    marginal_points(g, s).len() as u64
}

/// Independent counting route: enumerate every candidate block pair
/// (compositions of s over each node class, nodes without incident edges
/// pinned to zero) and filter by [`dilation_membership`]. Slower than
/// [`count_points`] but follows the membership contract literally; the two
/// are cross-checked in the test suite.
pub fn count_points_by_membership(g: &SignedBipartiteGraph, s: i64) -> u64 {
    if s == 0 {
        return 1;
    }
    let pairs = distinct_pairs(g);
    if pairs.is_empty() {
        return 0;
    }
    let mut e_deg = vec![false; g.n_e()];
    let mut v_deg = vec![false; g.n_v()];
    for &(e, v) in &pairs {
        e_deg[e] = true;
        v_deg[v] = true;
    }
    let e_blocks = compositions(s, &e_deg);
    let v_blocks = compositions(s, &v_deg);
    let mut count = 0u64;
    for eb in &e_blocks {
        for vb in &v_blocks {
            if transport_feasible(g.n_e(), g.n_v(), &pairs, eb, vb) {
                count += 1;
            }
        }
    }
    count
}

/// Compositions of s into one part per slot, with unsupported slots pinned
/// to zero.
fn compositions(s: i64, supported: &[bool]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; supported.len()];
    fn rec(s: i64, k: usize, supported: &[bool], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == supported.len() {
            if s == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if !supported[k] {
            rec(s, k + 1, supported, cur, out);
            return;
        }
        let rest_supported = supported[k + 1..].iter().any(|&b| b);
        if !rest_supported {
            cur[k] = s;
            out.push(cur.clone());
            cur[k] = 0;
            return;
        }
        for w in 0..=s {
            cur[k] = w;
            rec(s - w, k + 1, supported, cur, out);
        }
        cur[k] = 0;
    }
    rec(s, 0, supported, &mut cur, &mut out);
    out
}

/// Is `p` in the relative interior of the s-fold dilation? True exactly
/// when p is in the dilation and, for every adjacency pair, some feasible
/// weighting puts positive weight on that pair; averaging the per-pair
/// witnesses then gives a single everywhere-positive weighting.
pub fn relint_membership(
    g: &SignedBipartiteGraph,
    p: &LatticePoint,
    s: i64,
) -> Result<bool, EhrhartError> {
    if g.n_edges() == 0 {
        return Err(EhrhartError::Edgeless);
    }
    if !dilation_membership(g, p, s)? {
        return Ok(false);
    }
    let pairs = distinct_pairs(g);
    let ne = g.n_e();
    let (eb, vb) = p.0.split_at(ne);
    for &(e, v) in &pairs {
        // Route one unit on (e, v); the rest must still be feasible.
        if eb[e] < 1 || vb[v] < 1 {
            return Ok(false);
        }
        let mut supply = eb.to_vec();
        let mut demand = vb.to_vec();
        supply[e] -= 1;
        demand[v] -= 1;
        if !transport_feasible(ne, g.n_v(), &pairs, &supply, &demand) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of lattice points in the relative interior of the s-fold
/// dilation.
pub fn count_interior_points(g: &SignedBipartiteGraph, s: i64) -> Result<u64, EhrhartError> {
    if g.n_edges() == 0 {
        return Err(EhrhartError::Edgeless);
    }
    let mut count = 0u64;
    for p in marginal_points(g, s) {
        if relint_membership(g, &p, s)? {
            count += 1;
        }
    }
    Ok(count)
}

/// The Ehrhart polynomial of the root polytope, interpolated exactly from
/// the counts at s = 0..dim. Edgeless graphs get the constant 1 (their
/// Ehrhart series is 1).
pub fn ehrhart_polynomial(g: &SignedBipartiteGraph) -> RatPoly {
    let q = RootPolytope::new(g);
    let Some(dim) = q.dim() else {
        return RatPoly::one();
    };
    let points: Vec<(i64, BigInt)> = (0..=dim as i64)
        .map(|s| (s, BigInt::from(count_points(g, s))))
        .collect();
    interpolate(&points).expect("distinct abscissae")
}

/// The interior polynomial computed through the Ehrhart series: the
/// numerator of the series over (1-x)^(|E|+|V|-1), from the counts at
/// s = 0..|E|+|V|-2. For edgeless graphs the series is 1, so the result is
/// (1-x)^(|E|+|V|-1) itself.
pub fn interior_polynomial_via_ehrhart(g: &SignedBipartiteGraph) -> IntPoly {
    let n = g.n_nodes();
    if g.n_edges() == 0 {
        if n == 0 {
            return IntPoly::one();
        }
        return IntPoly::one_minus_x_pow(n - 1);
    }
    let d = n - 2;
    let counts: Vec<BigInt> = (0..=d as i64).map(|s| BigInt::from(count_points(g, s))).collect();
    hstar_from_counts(&counts, d).expect("counts start at 1")
}

/// The signed interior polynomial computed entirely through lattice-point
/// counting: the alternating sum over deletions of negative-edge subsets
/// of [`interior_polynomial_via_ehrhart`].
pub fn interior_signed_via_ehrhart(g: &SignedBipartiteGraph) -> IntPoly {
    let neg = g.negative_edge_indices();
    let mut acc = IntPoly::zero();
    for mask in 0u64..(1 << neg.len()) {
        let del: BTreeSet<usize> = neg
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let sub = g.delete_edges(&del).expect("indices in range");
        let term = interior_polynomial_via_ehrhart(&sub);
        if mask.count_ones() % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// Both sides of the signed Ehrhart series identity, truncated at order
/// `t` and evaluated at `x0`:
///
/// * the alternating sum over subsets of the negative edges of the
///   truncated Ehrhart series of the deletions, and
/// * the truncated expansion of I+ / (1-x)^(|E|+|V|-1).
pub fn signed_ehr_check(
    g: &SignedBipartiteGraph,
    x0: &BigRational,
    t: usize,
) -> Result<(BigRational, BigRational), EhrhartError> {
    if x0.is_one() {
        return Err(EhrhartError::PoleAtOne);
    }
    let neg = g.negative_edge_indices();
    let mut lhs = BigRational::zero();
    for mask in 0u64..(1 << neg.len()) {
        let del: BTreeSet<usize> = neg
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let sub = g.delete_edges(&del).expect("indices in range");
        let mut series = BigRational::one(); // count at s = 0
        let mut xp = BigRational::one();
        for s in 1..=t as i64 {
            xp *= x0;
            let c = BigInt::from(count_points(&sub, s));
            series += BigRational::from_integer(c) * &xp;
        }
        if mask.count_ones() % 2 == 0 {
            lhs += series;
        } else {
            lhs -= series;
        }
    }

    let iplus = crate::interior::interior_signed(g);
    let n = g.n_nodes();
    let denom_pow = n.saturating_sub(1) as u64;
    let mut rhs = BigRational::zero();
    let mut xp = BigRational::one();
    for s in 0..=t as u64 {
        // Coefficient of x^s in I+ / (1-x)^(n-1).
        let mut c = BigInt::zero();
        for j in 0..=s {
            let a = iplus.coeff(j as usize);
            if a.is_zero() {
                continue;
            }
            if denom_pow == 0 {
                if j == s {
                    c += a;
                }
            } else {
                c += a * binomial(s - j + denom_pow - 1, denom_pow - 1);
            }
        }
        rhs += BigRational::from_integer(c) * &xp;
        xp *= x0;
    }
    Ok((lhs, rhs))
}

/// Ehrhart reciprocity at the polynomial level, on a connected graph with
/// at least one edge: for 1 <= s <= s_max, (-1)^dim times the Ehrhart
/// polynomial at -s must equal the directly enumerated interior count.
pub fn reciprocity_check(g: &SignedBipartiteGraph, s_max: i64) -> Result<bool, EhrhartError> {
    if g.n_edges() == 0 {
        return Err(EhrhartError::Edgeless);
    }
    if g.n_components() != 1 {
        return Err(EhrhartError::Disconnected);
    }
    let q = RootPolytope::new(g);
    let dim = q.dim().expect("graph has edges");
    let poly = ehrhart_polynomial(g);
    for s in 1..=s_max {
        let val = poly.eval_i64(-s);
        let signed = if dim.is_multiple_of(2) { val } else { -val };
        let interior = BigRational::from_integer(BigInt::from(count_interior_points(g, s)?));
        if signed != interior {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::Sign;

    fn c4() -> SignedBipartiteGraph {
        SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)])
    }

    fn k2() -> SignedBipartiteGraph {
        SignedBipartiteGraph::unsigned(1, 1, &[(0, 0)])
    }

    #[test]
    fn membership_examples() {
        let g = c4();
        let vertex = LatticePoint::from_blocks(&[1, 0], &[1, 0]);
        assert!(dilation_membership(&g, &vertex, 1).unwrap());
        let p = LatticePoint::from_blocks(&[2, 0], &[1, 1]);
        assert!(dilation_membership(&g, &p, 2).unwrap());
        // Mass on a node with no incident edges is infeasible.
        let h = SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1)]);
        let bad = LatticePoint::from_blocks(&[0, 2], &[1, 1]);
        assert!(!dilation_membership(&h, &bad, 2).unwrap());
        let ok = LatticePoint::from_blocks(&[2, 0], &[1, 1]);
        assert!(dilation_membership(&h, &ok, 2).unwrap());
        // Wrong block sums and negative coordinates are rejected.
        assert!(!dilation_membership(&g, &vertex, 2).unwrap());
        let neg = LatticePoint::from_blocks(&[2, -1], &[1, 0]);
        assert!(!dilation_membership(&g, &neg, 1).unwrap());
        assert!(dilation_membership(&g, &LatticePoint(vec![0; 3]), 1).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_points(&c4(), 0), 1);
        assert_eq!(count_points(&c4(), 1), 4);
        assert_eq!(count_points(&c4(), 2), 9);
        for s in 0..5 {
            assert_eq!(count_points(&k2(), s), 1);
        }
        let edgeless = SignedBipartiteGraph::unsigned(1, 2, &[]);
        assert_eq!(count_points(&edgeless, 0), 1);
        assert_eq!(count_points(&edgeless, 3), 0);
    }

    #[test]
    fn counting_routes_agree() {
        let graphs = vec![
            k2(),
            c4(),
            SignedBipartiteGraph::unsigned(1, 1, &[(0, 0), (0, 0)]),
            SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1), (1, 1)]),
            SignedBipartiteGraph::unsigned(1, 3, &[(0, 0), (0, 1), (0, 2)]),
            SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (1, 1)]),
            SignedBipartiteGraph::unsigned(3, 3, &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]),
        ];
        for g in &graphs {
            for s in 0..=3 {
                assert_eq!(
                    count_points(g, s),
                    count_points_by_membership(g, s),
                    "graph {g:?} at s = {s}"
                );
            }
        }
    }

    #[test]
    fn interior_count_examples() {
        assert_eq!(count_interior_points(&c4(), 1).unwrap(), 0);
        assert_eq!(count_interior_points(&c4(), 2).unwrap(), 1);
        assert_eq!(count_interior_points(&c4(), 3).unwrap(), 4);
        for s in 1..=4 {
            assert_eq!(count_interior_points(&k2(), s).unwrap(), 1);
        }
        let edgeless = SignedBipartiteGraph::unsigned(1, 1, &[]);
        assert!(count_interior_points(&edgeless, 1).is_err());
    }

    #[test]
    fn ehrhart_polynomial_examples() {
        let p = ehrhart_polynomial(&c4());
        assert_eq!(p.degree(), Some(2));
        for s in 0..6 {
            assert_eq!(p.eval_i64(s), BigRational::from_integer(((s + 1) * (s + 1)).into()));
        }
        assert_eq!(ehrhart_polynomial(&k2()), RatPoly::one());
        let double = SignedBipartiteGraph::unsigned(1, 1, &[(0, 0), (0, 0)]);
        assert_eq!(ehrhart_polynomial(&double), RatPoly::one());
    }

    #[test]
    fn interior_via_ehrhart_examples() {
        assert_eq!(interior_polynomial_via_ehrhart(&c4()), IntPoly::from_i64(&[1, 1]));
        let tree = SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(interior_polynomial_via_ehrhart(&tree), IntPoly::one());
        let edgeless = SignedBipartiteGraph::unsigned(1, 1, &[]);
        assert_eq!(interior_polynomial_via_ehrhart(&edgeless), IntPoly::from_i64(&[1, -1]));
    }

    #[test]
    fn root_polytope_structure() {
        let q = RootPolytope::new(&c4());
        assert_eq!(q.vertices().len(), 4);
        assert_eq!(q.dim(), Some(2));
        for v in q.vertices() {
            assert_eq!(v.0.iter().sum::<i64>(), 2);
            assert!(v.0.iter().all(|&c| c == 0 || c == 1));
        }
        // Parallel edges collapse to one vertex.
        let double = SignedBipartiteGraph::unsigned(1, 1, &[(0, 0), (0, 0)]);
        assert_eq!(RootPolytope::new(&double).vertices().len(), 1);
        assert_eq!(RootPolytope::new(&double).dim(), Some(0));
    }

    #[test]
    fn reciprocity_examples() {
        assert!(reciprocity_check(&c4(), 3).unwrap());
        assert!(reciprocity_check(&k2(), 3).unwrap());
        let path2 = SignedBipartiteGraph::unsigned(2, 1, &[(0, 0), (1, 0)]);
        assert!(reciprocity_check(&path2, 3).unwrap());
        // The segment: counts s+1, interior counts s-1.
        assert_eq!(count_points(&path2, 3), 4);
        assert_eq!(count_interior_points(&path2, 3).unwrap(), 2);
    }

    #[test]
    fn signed_series_identity_examples() {
        let x0 = BigRational::new(BigInt::one(), BigInt::from(2));
        // All positive: both sides are the plain truncated series.
        let (l, r) = signed_ehr_check(&c4(), &x0, 6).unwrap();
        assert_eq!(l, r);
        let k2_neg = SignedBipartiteGraph::from_indices(1, 1, &[(0, 0, Sign::Minus)]);
        let (l, r) = signed_ehr_check(&k2_neg, &x0, 5).unwrap();
        assert_eq!(l, r);
        // Known closed form: x / (1 - x) truncated at 5, evaluated at 1/2.
        let expected: BigRational =
            (1..=5i32).map(|s| BigRational::new(BigInt::one(), BigInt::from(2)).pow(s)).sum();
        assert_eq!(l, expected);
        let mut c4_mixed = c4();
        c4_mixed = c4_mixed.with_edge_sign(2, Sign::Minus).unwrap();
        let (l, r) = signed_ehr_check(&c4_mixed, &x0, 6).unwrap();
        assert_eq!(l, r);
        assert!(signed_ehr_check(&c4(), &BigRational::one(), 6).is_err());
    }

    #[test]
    fn counts_invariant_under_swap_and_relabeling() {
        use crate::family::connected_bigraphs;
        for g in connected_bigraphs(4) {
            for s in 0..=2 {
                assert_eq!(count_points(&g, s), count_points(&g.swap_classes(), s));
            }
            // Relabel: reverse both node orders and the edge list.
            let relabeled = SignedBipartiteGraph::new(
                g.e_names().iter().rev().cloned().collect(),
                g.v_names().iter().rev().cloned().collect(),
                g.edges()
                    .iter()
                    .rev()
                    .map(|e| (g.n_e() - 1 - e.e, g.n_v() - 1 - e.v, e.sign))
                    .collect(),
            )
            .unwrap();
            for s in 0..=2 {
                assert_eq!(count_points(&g, s), count_points(&relabeled, s));
            }
        }
    }

    #[test]
    fn ehrhart_degree_and_hstar_shape_on_family() {
        use crate::family::connected_bigraphs;
        use num_traits::Signed as _;
        for g in connected_bigraphs(5) {
            let n = g.n_nodes();
            let poly = ehrhart_polynomial(&g);
            assert_eq!(poly.degree(), Some(n - 2), "{}", g.to_format_string());
            assert!(poly.coeff(n - 2).is_positive());
            let h = interior_polynomial_via_ehrhart(&g);
            assert_eq!(h.coeff(0), BigInt::from(1));
            assert!(
                h.coeffs().iter().all(|c| !c.is_negative()),
                "negative h-coefficient for {}",
                g.to_format_string()
            );
        }
    }

    #[test]
    fn signed_pipelines_agree_via_counting() {
        use crate::interior::interior_signed;
        let mut g = c4().with_edge_sign(1, Sign::Minus).unwrap();
        g = g.with_edge_sign(2, Sign::Minus).unwrap();
        assert_eq!(interior_signed_via_ehrhart(&g), interior_signed(&g));
        let k2_neg = SignedBipartiteGraph::from_indices(1, 1, &[(0, 0, Sign::Minus)]);
        assert_eq!(interior_signed_via_ehrhart(&k2_neg), IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn cross_oracle_membership_agrees_with_hull() {
        use crate::hull::conv_contains;
        let graphs = vec![c4(), SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1), (1, 1)])];
        for g in &graphs {
            let q = RootPolytope::new(g);
            for s in 1..=2i64 {
                let scaled: Vec<RatPoint> =
                    q.vertices().iter().map(|v| v.to_rat_point().scale_int(s)).collect();
                // All candidate block pairs, not only members.
                let n = g.n_nodes();
                let mut stack = vec![vec![]];
                let mut candidates: Vec<Vec<i64>> = Vec::new();
                while let Some(prefix) = stack.pop() {
                    if prefix.len() == n {
                        candidates.push(prefix);
                        continue;
                    }
                    for w in 0..=s {
                        let mut next = prefix.clone();
                        next.push(w);
                        stack.push(next);
                    }
                }
                for cand in candidates {
                    let p = LatticePoint(cand);
                    let flow = dilation_membership(g, &p, s).unwrap();
                    let hull = conv_contains(&scaled, &p.to_rat_point()).unwrap();
                    assert_eq!(flow, hull, "graph {g:?} s {s} point {p:?}");
                }
            }
        }
    }
}
