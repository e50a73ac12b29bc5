//! Oriented link diagrams, the median construction from plane bipartite
//! graphs, HOMFLY polynomials by skein recursion, and top-coefficient
//! extraction.
//!
//! A diagram is a list of crossings over abstract numbered arcs. Each
//! crossing stores its four oriented ports and a sign; the sign is the one
//! the planar picture determines, carried as data so the abstract skein
//! can use it. Every arc occurs exactly once as an in-port and once as an
//! out-port; crossing-free circles are tracked by a separate counter.
//!
//! The skein evaluator walks the components in order from a basepoint; the
//! first crossing first reached on its under-strand is resolved by the
//! skein relation (switch + smooth). A diagram with no such crossing is
//! descending, hence an unlink: its value is ((1/v - v)/z)^(k-1).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bigraph::{Sign, SignedBipartiteGraph};
use crate::interior::interior_signed;
use crate::poly::LaurentPoly2;

pub const MAX_CROSSINGS: usize = 14;

/// Which band side passes over at a positive edge of the median
/// construction. The other choice would build the global mirror; this one
/// reproduces the pinned link fixtures.
const POSITIVE_EDGE_E_SIDE_OVER: bool = true;

pub type Arc = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("arc {0} occurs {1} times as an in-port (expected once)")]
    ArcInCount(Arc, usize),
    #[error("arc {0} occurs {1} times as an out-port (expected once)")]
    ArcOutCount(Arc, usize),
    #[error("diagram has {got} crossings, cap is {cap}")]
    TooManyCrossings { got: usize, cap: usize },
    #[error("empty diagram has no link components")]
    EmptyDiagram,
    #[error("crossing index {0} out of range")]
    CrossingIndex(usize),
    #[error("orientation is inconsistent at crossing {0}")]
    InconsistentOrientation(usize),
    #[error("orientation underdetermined; add an `orient:` seed for arc {0}")]
    AmbiguousOrientation(Arc),
    #[error("pd parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("rotation system fails the Euler check: {faces} faces, expected {expected}")]
    NotPlanar { faces: usize, expected: usize },
    #[error("median construction requires a connected graph with at least one edge")]
    MedianInput,
    #[error("rotation of node {0:?} does not list its incident edges")]
    BadRotation(String),
}

/// One crossing: the four oriented ports plus the sign of the planar
/// picture it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over_in: Arc,
    pub over_out: Arc,
    pub under_in: Arc,
    pub under_out: Arc,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<LinkDiagram, DiagramError> {
        let d = LinkDiagram { crossings, free_loops };
        d.validate()?;
        Ok(d)
    }

    /// k crossing-free circles.
    pub fn unlink(k: usize) -> LinkDiagram {
        LinkDiagram { crossings: Vec::new(), free_loops: k }
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut ins: BTreeMap<Arc, usize> = BTreeMap::new();
        let mut outs: BTreeMap<Arc, usize> = BTreeMap::new();
        for c in &self.crossings {
            *ins.entry(c.under_in).or_default() += 1;
            *ins.entry(c.over_in).or_default() += 1;
            *outs.entry(c.under_out).or_default() += 1;
            *outs.entry(c.over_out).or_default() += 1;
        }
        for (&arc, &n) in &ins {
            if n != 1 {
                return Err(DiagramError::ArcInCount(arc, n));
            }
            if outs.get(&arc).copied().unwrap_or(0) != 1 {
                return Err(DiagramError::ArcOutCount(arc, outs.get(&arc).copied().unwrap_or(0)));
            }
        }
        for (&arc, &n) in &outs {
            if n != 1 {
                return Err(DiagramError::ArcOutCount(arc, n));
            }
            if !ins.contains_key(&arc) {
                return Err(DiagramError::ArcInCount(arc, 0));
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.as_i64()).sum()
    }

    /// Strand successor map: in-arc to out-arc through its head crossing.
    fn successors(&self) -> HashMap<Arc, Arc> {
        let mut next = HashMap::new();
        for c in &self.crossings {
            next.insert(c.under_in, c.under_out);
            next.insert(c.over_in, c.over_out);
        }
        next
    }

    /// Link components that pass through crossings, each listed in strand
    /// order starting from its smallest arc; components themselves sorted
    /// by that arc. Crossing-free circles are not included.
    pub fn strand_components(&self) -> Vec<Vec<Arc>> {
        let next = self.successors();
        let mut seen: BTreeSet<Arc> = BTreeSet::new();
        let mut comps = Vec::new();
        let mut arcs: Vec<Arc> = next.keys().copied().collect();
        arcs.sort_unstable();
        for &start in &arcs {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = start;
            loop {
                comp.push(cur);
                seen.insert(cur);
                cur = next[&cur];
                if cur == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Total number of link components, crossing-free circles included.
    pub fn n_components(&self) -> usize {
        self.strand_components().len() + self.free_loops
    }

    /// Switch one crossing: over and under strands trade places and the
    /// sign flips.
    pub fn switch_crossing(&self, i: usize) -> Result<LinkDiagram, DiagramError> {
        let mut d = self.clone();
        let c = d.crossings.get_mut(i).ok_or(DiagramError::CrossingIndex(i))?;
        *c = Crossing {
            over_in: c.under_in,
            over_out: c.under_out,
            under_in: c.over_in,
            under_out: c.over_out,
            sign: c.sign.flip(),
        };
        Ok(d)
    }

    /// The mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let mut d = self.clone();
        for c in &mut d.crossings {
            *c = Crossing {
                over_in: c.under_in,
                over_out: c.under_out,
                under_in: c.over_in,
                under_out: c.over_out,
                sign: c.sign.flip(),
            };
        }
        d
    }

    /// Oriented smoothing of one crossing: the under-in strand continues to
    /// the over-out arc and the over-in strand to the under-out arc. Newly
    /// closed crossing-free circles are added to the loop counter.
    pub fn smooth_crossing(&self, i: usize) -> Result<LinkDiagram, DiagramError> {
        let c = *self.crossings.get(i).ok_or(DiagramError::CrossingIndex(i))?;
        let mut rep: HashMap<Arc, Arc> = HashMap::new();
        fn find(rep: &mut HashMap<Arc, Arc>, a: Arc) -> Arc {
            let p = *rep.get(&a).unwrap_or(&a);
            if p == a {
                return a;
            }
            let r = find(rep, p);
            rep.insert(a, r);
            r
        }
        let union = |rep: &mut HashMap<Arc, Arc>, a: Arc, b: Arc| {
            let (ra, rb) = (find(rep, a), find(rep, b));
            if ra != rb {
                rep.insert(ra.max(rb), ra.min(rb));
            }
        };
        union(&mut rep, c.under_in, c.over_out);
        union(&mut rep, c.over_in, c.under_out);
        let mut crossings = Vec::with_capacity(self.crossings.len() - 1);
        let mut present: BTreeSet<Arc> = BTreeSet::new();
        for (j, x) in self.crossings.iter().enumerate() {
            if j == i {
                continue;
            }
            let mapped = Crossing {
                over_in: find(&mut rep, x.over_in),
                over_out: find(&mut rep, x.over_out),
                under_in: find(&mut rep, x.under_in),
                under_out: find(&mut rep, x.under_out),
                sign: x.sign,
            };
            present.extend([mapped.over_in, mapped.over_out, mapped.under_in, mapped.under_out]);
            crossings.push(mapped);
        }
        let ports = [c.under_in, c.over_out, c.over_in, c.under_out];
        let classes: BTreeSet<Arc> = ports.iter().map(|&a| find(&mut rep, a)).collect();
        let new_loops = classes.iter().filter(|&&cl| !present.contains(&cl)).count();
        Ok(LinkDiagram { crossings, free_loops: self.free_loops + new_loops })
    }
}

/// Traversal plan: component arc lists in visit order, each starting at
/// its basepoint arc.
fn plan_default(d: &LinkDiagram) -> Vec<Vec<Arc>> {
    d.strand_components()
}

fn plan_random(d: &LinkDiagram, rng: &mut ChaCha8Rng) -> Vec<Vec<Arc>> {
    let mut comps = d.strand_components();
    for comp in &mut comps {
        let k = rng.gen_range(0..comp.len());
        comp.rotate_left(k);
    }
    for k in (1..comps.len()).rev() {
        comps.swap(k, rng.gen_range(0..=k));
    }
    comps
}

/// The first crossing first reached on its under-strand along the plan,
/// or `None` for a descending diagram.
fn first_bad_crossing(d: &LinkDiagram, plan: &[Vec<Arc>]) -> Option<usize> {
    let mut head: HashMap<Arc, (usize, bool)> = HashMap::new(); // arc -> (crossing, arrives under)
    for (ci, c) in d.crossings.iter().enumerate() {
        head.insert(c.under_in, (ci, true));
        head.insert(c.over_in, (ci, false));
    }
    let mut visited = vec![false; d.crossings.len()];
    for comp in plan {
        for &arc in comp {
            let (ci, under) = head[&arc];
            if !visited[ci] {
                visited[ci] = true;
                if under {
                    return Some(ci);
                }
            }
        }
    }
    None
}

enum Policy<'a> {
    Deterministic,
    Random(&'a mut ChaCha8Rng),
}

impl Policy<'_> {
    fn plan_for(&mut self, d: &LinkDiagram) -> Vec<Vec<Arc>> {
        match self {
            Policy::Deterministic => plan_default(d),
            Policy::Random(rng) => plan_random(d, rng),
        }
    }
}

fn eval(d: &LinkDiagram, policy: &mut Policy) -> LaurentPoly2 {
    let plan = policy.plan_for(d);
    eval_with_plan(d, plan, policy)
}

/// Resolve the first bad crossing of the plan. Switching a crossing keeps
/// the strand successor map, so the switched branch keeps the parent's
/// plan and its bad count drops by one; the smoothed branch has one
/// crossing fewer and gets a fresh plan. Together these make the
/// recursion terminate for any plan source.
fn eval_with_plan(d: &LinkDiagram, plan: Vec<Vec<Arc>>, policy: &mut Policy) -> LaurentPoly2 {
    match first_bad_crossing(d, &plan) {
        None => {
            let k = plan.len() + d.free_loops;
            LaurentPoly2::delta_pow(k - 1)
        }
        Some(i) => {
            let sign = d.crossings[i].sign;
            let switched = d.switch_crossing(i).expect("index in range");
            let smoothed = d.smooth_crossing(i).expect("index in range");
            let a = eval_with_plan(&switched, plan, policy);
            let b = eval(&smoothed, policy);
            match sign {
                // P+ = v^2 P- + v z P0.
                Sign::Plus => a
                    .mul_term(&BigInt::one(), 2, 0)
                    .add(&b.mul_term(&BigInt::one(), 1, 1)),
                // P- = v^-2 P+ - v^-1 z P0.
                Sign::Minus => a
                    .mul_term(&BigInt::one(), -2, 0)
                    .sub(&b.mul_term(&BigInt::one(), -1, 1)),
            }
        }
    }
}

fn check_evaluable(d: &LinkDiagram) -> Result<(), DiagramError> {
    if d.n_crossings() > MAX_CROSSINGS {
        return Err(DiagramError::TooManyCrossings { got: d.n_crossings(), cap: MAX_CROSSINGS });
    }
    if d.n_crossings() == 0 && d.free_loops == 0 {
        return Err(DiagramError::EmptyDiagram);
    }
    Ok(())
}

/// The HOMFLY polynomial, by skein recursion over descending diagrams.
pub fn homfly(d: &LinkDiagram) -> Result<LaurentPoly2, DiagramError> {
    check_evaluable(d)?;
    Ok(eval(d, &mut Policy::Deterministic))
}

/// Same value as [`homfly`], computed with seeded random basepoints and
/// component order. The result must not depend on these choices.
pub fn homfly_seeded(d: &LinkDiagram, seed: u64) -> Result<LaurentPoly2, DiagramError> {
    check_evaluable(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(eval(d, &mut Policy::Random(&mut rng)))
}

/// Seifert circle data and the Seifert graph (circles as nodes, crossings
/// as signed edges) when that graph is bipartite.
#[derive(Debug, Clone)]
pub struct SeifertData {
    pub circles: usize,
    pub writhe: i64,
    pub graph: Option<SignedBipartiteGraph>,
}

/// Smooth every crossing and read off the circle structure.
pub fn seifert_analyze(d: &LinkDiagram) -> SeifertData {
    let mut rep: HashMap<Arc, Arc> = HashMap::new();
    fn find(rep: &mut HashMap<Arc, Arc>, a: Arc) -> Arc {
        let p = *rep.get(&a).unwrap_or(&a);
        if p == a {
            return a;
        }
        let r = find(rep, p);
        rep.insert(a, r);
        r
    }
    let union = |rep: &mut HashMap<Arc, Arc>, a: Arc, b: Arc| {
        let (ra, rb) = (find(rep, a), find(rep, b));
        if ra != rb {
            rep.insert(ra.max(rb), ra.min(rb));
        }
    };
    for c in &d.crossings {
        union(&mut rep, c.under_in, c.over_out);
        union(&mut rep, c.over_in, c.under_out);
    }
    let mut arcs: BTreeSet<Arc> = BTreeSet::new();
    for c in &d.crossings {
        arcs.extend([c.under_in, c.under_out, c.over_in, c.over_out]);
    }
    let classes: BTreeSet<Arc> = arcs.iter().map(|&a| find(&mut rep, a)).collect();
    let circle_index: BTreeMap<Arc, usize> =
        classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let circles = classes.len() + d.free_loops;

    // Circle adjacency: one edge per crossing between the two strand
    // classes it joins.
    let adjacency: Vec<(usize, usize, Sign)> = d
        .crossings
        .iter()
        .map(|c| {
            let a = circle_index[&find(&mut rep, c.under_in)];
            let b = circle_index[&find(&mut rep, c.over_in)];
            (a, b, c.sign)
        })
        .collect();

    // Two-color the circles; the smallest circle of each component lands
    // in class E.
    let n = classes.len();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b, _) in &adjacency {
        neighbors[a].push(b);
        neighbors[b].push(a);
    }
    let mut bipartite = true;
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(true);
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            let cu = color[u].unwrap();
            for &w in &neighbors[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push(w);
                    }
                    Some(cw) => {
                        if cw == cu {
                            bipartite = false;
                        }
                    }
                }
            }
        }
    }
    let graph = if bipartite {
        let mut e_ids: Vec<usize> = Vec::new();
        let mut v_ids: Vec<usize> = Vec::new();
        for (i, c) in color.iter().enumerate() {
            if c.unwrap_or(true) {
                e_ids.push(i);
            } else {
                v_ids.push(i);
            }
        }
        let e_pos: BTreeMap<usize, usize> = e_ids.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let v_pos: BTreeMap<usize, usize> = v_ids.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut edges = Vec::new();
        let mut ok = true;
        for &(a, b, sign) in &adjacency {
            let (e, v) = if e_pos.contains_key(&a) { (a, b) } else { (b, a) };
            match (e_pos.get(&e), v_pos.get(&v)) {
                (Some(&ei), Some(&vi)) => edges.push((ei, vi, sign)),
                _ => ok = false, // self-adjacent circle; not bipartite
            }
        }
        if ok {
            // Free loops become isolated nodes in class E.
            let names_e: Vec<String> = (0..e_ids.len() + d.free_loops)
                .map(|i| format!("c{}", i))
                .collect();
            let names_v: Vec<String> = (0..v_ids.len()).map(|i| format!("d{}", i)).collect();
            SignedBipartiteGraph::new(names_e, names_v, edges).ok()
        } else {
            None
        }
    } else {
        None
    };
    SeifertData { circles, writhe: d.writhe(), graph }
}

/// Maximal z-exponent allowed for the diagram: crossings - circles + 1.
pub fn morton_exponent(d: &LinkDiagram) -> i64 {
    d.n_crossings() as i64 - seifert_analyze(d).circles as i64 + 1
}

/// Coefficient of the maximal allowed z-power, as a z-free Laurent
/// polynomial in v. May be zero.
pub fn top_coefficient(d: &LinkDiagram) -> Result<LaurentPoly2, DiagramError> {
    let p = homfly(d)?;
    Ok(p.z_coefficient(morton_exponent(d)))
}

/// A plane-embedded signed bipartite graph: the graph plus a rotation
/// system (cyclic edge order per node, E-block then V-block) that passes
/// the genus-zero Euler check.
#[derive(Debug, Clone)]
pub struct PlaneEmbedding {
    graph: SignedBipartiteGraph,
    rotations: Vec<Vec<usize>>,
}

/// Number of faces traced by a rotation system.
pub fn face_count(g: &SignedBipartiteGraph, rot: &[Vec<usize>]) -> usize {
    let ne = g.n_e();
    let m = g.n_edges();
    let mut visited = vec![[false; 2]; m];
    let next_in_rotation = |node: usize, edge: usize| -> usize {
        let ring = &rot[node];
        let pos = ring.iter().position(|&x| x == edge).expect("edge in rotation");
        ring[(pos + 1) % ring.len()]
    };
    let mut faces = 0;
    for start_edge in 0..m {
        for start_dir in 0..2 {
            if visited[start_edge][start_dir] {
                continue;
            }
            faces += 1;
            let (mut edge, mut dir) = (start_edge, start_dir);
            loop {
                visited[edge][dir] = true;
                let target = if dir == 0 { ne + g.edges()[edge].v } else { g.edges()[edge].e };
                edge = next_in_rotation(target, edge);
                dir = if target < ne { 0 } else { 1 };
                if edge == start_edge && dir == start_dir {
                    break;
                }
            }
        }
    }
    faces
}

impl PlaneEmbedding {
    pub fn new(
        graph: SignedBipartiteGraph,
        rotations: Vec<Vec<usize>>,
    ) -> Result<PlaneEmbedding, DiagramError> {
        if graph.n_edges() == 0 || graph.n_components() != 1 {
            return Err(DiagramError::MedianInput);
        }
        let inc = graph.incidence();
        if rotations.len() != graph.n_nodes() {
            return Err(DiagramError::BadRotation("wrong node count".to_string()));
        }
        for (u, ring) in rotations.iter().enumerate() {
            let mut want = inc[u].clone();
            let mut got = ring.clone();
            want.sort_unstable();
            got.sort_unstable();
            if want != got {
                let name = if u < graph.n_e() {
                    graph.e_names()[u].clone()
                } else {
                    graph.v_names()[u - graph.n_e()].clone()
                };
                return Err(DiagramError::BadRotation(name));
            }
        }
        let faces = face_count(&graph, &rotations);
        let expected = 2 + graph.n_edges() - graph.n_nodes();
        if faces != expected {
            return Err(DiagramError::NotPlanar { faces, expected });
        }
        Ok(PlaneEmbedding { graph, rotations })
    }

    pub fn graph(&self) -> &SignedBipartiteGraph {
        &self.graph
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }
}

/// The median diagram of a plane bipartite graph: one Seifert circle per
/// node, one crossing per edge with the edge's sign. E-circles run with
/// the rotation order, V-circles against it; each edge's band sides cross,
/// the side leaving the E-circle passing over at positive edges.
pub fn median_diagram(pe: &PlaneEmbedding) -> Result<LinkDiagram, DiagramError> {
    let g = &pe.graph;
    let ne = g.n_e();
    // Circle traversal order per node; arc (u, i) runs from ring[i] to
    // ring[i+1].
    let rings: Vec<Vec<usize>> = pe
        .rotations
        .iter()
        .enumerate()
        .map(|(u, ring)| {
            if u < ne {
                ring.clone()
            } else {
                ring.iter().rev().copied().collect()
            }
        })
        .collect();
    let mut arc_base = vec![0u32; rings.len() + 1];
    for (u, ring) in rings.iter().enumerate() {
        arc_base[u + 1] = arc_base[u] + ring.len() as u32;
    }
    let arc_id = |u: usize, i: usize| -> Arc { arc_base[u] + i as u32 };
    let pos = |u: usize, edge: usize| -> usize {
        rings[u].iter().position(|&x| x == edge).expect("edge in ring")
    };
    let mut crossings = Vec::with_capacity(g.n_edges());
    for (idx, e) in g.edges().iter().enumerate() {
        let (u, w) = (e.e, ne + e.v);
        let (pu, pw) = (pos(u, idx), pos(w, idx));
        let deg_u = rings[u].len();
        let deg_w = rings[w].len();
        let u_in = arc_id(u, (pu + deg_u - 1) % deg_u);
        let u_out = arc_id(u, pu);
        let w_in = arc_id(w, (pw + deg_w - 1) % deg_w);
        let w_out = arc_id(w, pw);
        let e_side_over = match e.sign {
            Sign::Plus => POSITIVE_EDGE_E_SIDE_OVER,
            Sign::Minus => !POSITIVE_EDGE_E_SIDE_OVER,
        };
        let crossing = if e_side_over {
            Crossing { over_in: u_in, over_out: w_out, under_in: w_in, under_out: u_out, sign: e.sign }
        } else {
            Crossing { over_in: w_in, over_out: u_out, under_in: u_in, under_out: w_out, sign: e.sign }
        };
        crossings.push(crossing);
    }
    LinkDiagram::new(crossings, 0)
}

/// Does the top coefficient of the median diagram match the signed
/// interior polynomial pushed through v -> v^2 at the grading shift
/// (#positive - #negative - #nodes + 1)?
pub fn median_top_check(pe: &PlaneEmbedding) -> Result<bool, DiagramError> {
    let d = median_diagram(pe)?;
    let top = top_coefficient(&d)?;
    let g = pe.graph();
    let shift = g.n_positive() as i64 - g.n_negative() as i64 - g.n_nodes() as i64 + 1;
    let expected = interior_signed(g).substitute_v_squared(shift);
    Ok(top == expected)
}

/// Parse the PD text format:
///
/// ```text
/// X[1,5,2,4]        # four arcs counterclockwise, under-in first
/// orient: 3         # arc 3 leaves its first over-slot occurrence
/// loops: 1          # crossing-free circles
/// ```
///
/// For `X[a,b,c,d]` the under-strand runs a -> c; whether the over-strand
/// runs d -> b (positive) or b -> d (negative) is inferred from global
/// orientation consistency, with `orient:` seeds breaking ties for
/// components that never pass under.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut quads: Vec<[Arc; 4]> = Vec::new();
    let mut seeds: Vec<Arc> = Vec::new();
    let mut free_loops = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| DiagramError::Parse { line, msg };
        if let Some(rest) = body.strip_prefix("orient:") {
            for tok in rest.split_whitespace() {
                seeds.push(tok.parse().map_err(|_| err(format!("bad arc {tok:?}")))?);
            }
        } else if let Some(rest) = body.strip_prefix("loops:") {
            free_loops = rest.trim().parse().map_err(|_| err("bad loop count".to_string()))?;
        } else if let Some(rest) = body.strip_prefix('X') {
            let inner = rest
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| err("expected X[a,b,c,d]".to_string()))?;
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(err("expected four arcs".to_string()));
            }
            let mut quad = [0 as Arc; 4];
            for (slot, tok) in quad.iter_mut().zip(&parts) {
                *slot = tok.parse().map_err(|_| err(format!("bad arc {tok:?}")))?;
            }
            quads.push(quad);
        } else {
            return Err(err(format!("unrecognized line {body:?}")));
        }
    }
    diagram_from_quads(&quads, &seeds, free_loops)
}

/// Occurrence of an arc in a quad: fixed in/out (under slots) or an
/// over-slot whose direction depends on the crossing's orientation bit.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Occ {
    FixedIn(usize),
    FixedOut(usize),
    // (crossing, arc-is-in iff bit equals this value)
    OverB(usize),
    OverD(usize),
}

fn diagram_from_quads(
    quads: &[[Arc; 4]],
    seeds: &[Arc],
    free_loops: usize,
) -> Result<LinkDiagram, DiagramError> {
    // Orientation bit per crossing: true means the over-strand runs d -> b
    // (a positive crossing), false means b -> d (negative).
    let mut occs: BTreeMap<Arc, Vec<Occ>> = BTreeMap::new();
    for (ci, q) in quads.iter().enumerate() {
        let [a, b, c, d] = *q;
        occs.entry(a).or_default().push(Occ::FixedIn(ci));
        occs.entry(c).or_default().push(Occ::FixedOut(ci));
        occs.entry(b).or_default().push(Occ::OverB(ci));
        occs.entry(d).or_default().push(Occ::OverD(ci));
    }
    for (&arc, list) in &occs {
        if list.len() != 2 {
            return Err(DiagramError::ArcInCount(arc, list.len()));
        }
    }
    // Propagate orientation constraints. in(b-slot) = !bit, in(d-slot) = bit.
    fn assign(bit: &mut [Option<bool>], ci: usize, val: bool) -> Result<(), DiagramError> {
        match bit[ci] {
            None => {
                bit[ci] = Some(val);
                Ok(())
            }
            Some(old) if old == val => Ok(()),
            Some(_) => Err(DiagramError::InconsistentOrientation(ci)),
        }
    }
    fn occ_is_in(o: Occ, bit: &[Option<bool>]) -> Option<bool> {
        match o {
            Occ::FixedIn(_) => Some(true),
            Occ::FixedOut(_) => Some(false),
            Occ::OverB(ci) => bit[ci].map(|t| !t),
            Occ::OverD(ci) => bit[ci],
        }
    }
    fn occ_crossing(o: Occ) -> usize {
        match o {
            Occ::FixedIn(ci) | Occ::FixedOut(ci) | Occ::OverB(ci) | Occ::OverD(ci) => ci,
        }
    }
    fn force(bit: &mut [Option<bool>], o: Occ, want_in: bool) -> Result<(), DiagramError> {
        match o {
            Occ::OverB(ci) => assign(bit, ci, !want_in),
            Occ::OverD(ci) => assign(bit, ci, want_in),
            _ => unreachable!("fixed occurrences are never forced"),
        }
    }
    let mut bit: Vec<Option<bool>> = vec![None; quads.len()];
    // Seeds first: the arc leaves its first over-slot occurrence.
    for &arc in seeds {
        let list = occs.get(&arc).ok_or(DiagramError::ArcInCount(arc, 0))?;
        let over = list.iter().copied().find(|o| matches!(o, Occ::OverB(_) | Occ::OverD(_)));
        match over {
            Some(o) => force(&mut bit, o, false)?,
            None => return Err(DiagramError::AmbiguousOrientation(arc)),
        }
    }
    // Fixed-point loop over the pairing constraints: each arc is in at
    // exactly one of its two occurrences.
    loop {
        let mut progress = false;
        for list in occs.values() {
            let (x, y) = (list[0], list[1]);
            match (occ_is_in(x, &bit), occ_is_in(y, &bit)) {
                (Some(ix), Some(iy)) => {
                    if ix == iy {
                        return Err(DiagramError::InconsistentOrientation(occ_crossing(x)));
                    }
                }
                (Some(ix), None) => {
                    force(&mut bit, y, !ix)?;
                    progress = true;
                }
                (None, Some(iy)) => {
                    force(&mut bit, x, !iy)?;
                    progress = true;
                }
                (None, None) => {}
            }
        }
        if !progress {
            break;
        }
    }
    if let Some(ci) = bit.iter().position(|b| b.is_none()) {
        // Report an arc of the undetermined crossing so the user can seed it.
        return Err(DiagramError::AmbiguousOrientation(quads[ci][1]));
    }
    let crossings: Vec<Crossing> = quads
        .iter()
        .zip(&bit)
        .map(|(q, b)| {
            let [a, bq, c, d] = *q;
            if b.unwrap() {
                Crossing { over_in: d, over_out: bq, under_in: a, under_out: c, sign: Sign::Plus }
            } else {
                Crossing { over_in: bq, over_out: d, under_in: a, under_out: c, sign: Sign::Minus }
            }
        })
        .collect();
    LinkDiagram::new(crossings, free_loops)
}

/// Parse a graph file extended with `rot:` lines into a plane embedding:
/// `rot: <node-name> <edge-index>...` gives the cyclic edge order at one
/// node; nodes of degree at most two may omit theirs.
pub fn parse_embedded_graph(text: &str) -> Result<PlaneEmbedding, DiagramError> {
    let mut graph_lines = String::new();
    let mut rot_lines: Vec<(usize, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if let Some(rest) = body.strip_prefix("rot:") {
            rot_lines.push((lineno + 1, rest.to_string()));
        } else {
            graph_lines.push_str(raw);
            graph_lines.push('\n');
        }
    }
    let graph = crate::bigraph::parse_graph(&graph_lines)
        .map_err(|e| DiagramError::Parse { line: 0, msg: e.to_string() })?;
    let mut rotations = graph.incidence();
    for (line, body) in rot_lines {
        let err = |msg: String| DiagramError::Parse { line, msg };
        let mut toks = body.split_whitespace();
        let name = toks.next().ok_or_else(|| err("rot: needs a node name".to_string()))?;
        let node = graph
            .node_by_name(name)
            .ok_or_else(|| err(format!("unknown node {name:?}")))?;
        let ring: Vec<usize> = toks
            .map(|t| t.parse().map_err(|_| err(format!("bad edge index {t:?}"))))
            .collect::<Result<_, _>>()?;
        let idx = match node {
            crate::bigraph::NodeRef::E(i) => i,
            crate::bigraph::NodeRef::V(i) => graph.n_e() + i,
        };
        rotations[idx] = ring;
    }
    PlaneEmbedding::new(graph, rotations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;

    fn laurent(terms: &[(i64, i64, i64)]) -> LaurentPoly2 {
        let mut p = LaurentPoly2::zero();
        for &(c, v, z) in terms {
            p.add_term(BigInt::from(c), v, z);
        }
        p
    }

    fn hopf_positive() -> LinkDiagram {
        let double = SignedBipartiteGraph::unsigned(1, 1, &[(0, 0), (0, 0)]);
        let pe = PlaneEmbedding::new(double, vec![vec![0, 1], vec![0, 1]]).unwrap();
        median_diagram(&pe).unwrap()
    }

    fn k2_embedding(sign: Sign) -> PlaneEmbedding {
        let g = SignedBipartiteGraph::from_indices(1, 1, &[(0, 0, sign)]);
        PlaneEmbedding::new(g, vec![vec![0], vec![0]]).unwrap()
    }

    #[test]
    fn unknot_values() {
        assert_eq!(homfly(&LinkDiagram::unlink(1)).unwrap(), LaurentPoly2::one());
        assert_eq!(homfly(&LinkDiagram::unlink(3)).unwrap(), LaurentPoly2::delta_pow(2));
        assert!(homfly(&LinkDiagram::unlink(0)).is_err());
    }

    #[test]
    fn one_crossing_unknot() {
        let d = median_diagram(&k2_embedding(Sign::Plus)).unwrap();
        assert_eq!(d.n_crossings(), 1);
        let data = seifert_analyze(&d);
        assert_eq!((data.circles, data.writhe), (2, 1));
        assert_eq!(homfly(&d).unwrap(), LaurentPoly2::one());
        assert_eq!(top_coefficient(&d).unwrap(), LaurentPoly2::one());
        let neg = median_diagram(&k2_embedding(Sign::Minus)).unwrap();
        assert_eq!(homfly(&neg).unwrap(), LaurentPoly2::one());
        assert_eq!(seifert_analyze(&neg).writhe, -1);
    }

    #[test]
    fn hopf_link_fixture() {
        let d = hopf_positive();
        let data = seifert_analyze(&d);
        assert_eq!((d.n_crossings(), data.circles, data.writhe), (2, 2, 2));
        assert_eq!(d.n_components(), 2);
        // v z + (v - v^3) z^-1.
        let expected = laurent(&[(1, 1, 1), (1, 1, -1), (-1, 3, -1)]);
        assert_eq!(homfly(&d).unwrap(), expected);
        assert_eq!(top_coefficient(&d).unwrap(), laurent(&[(1, 1, 0)]));
    }

    #[test]
    fn seifert_round_trip() {
        let g = SignedBipartiteGraph::from_indices(
            2,
            2,
            &[(0, 0, Sign::Plus), (0, 1, Sign::Minus), (1, 0, Sign::Plus), (1, 1, Sign::Plus)],
        );
        let rot = crate::family::planar_rotation(&g).unwrap();
        let pe = PlaneEmbedding::new(g.clone(), rot).unwrap();
        let d = median_diagram(&pe).unwrap();
        let data = seifert_analyze(&d);
        assert_eq!(data.circles, g.n_nodes());
        assert_eq!(data.writhe, 2);
        let back = data.graph.expect("median diagrams have bipartite circle graphs");
        let same = crate::bigraph::isomorphic(&back, &g).unwrap()
            || crate::bigraph::isomorphic(&back, &g.swap_classes()).unwrap();
        assert!(same, "round trip lost the graph: {}", back.to_format_string());
    }

    #[test]
    fn mirror_is_involution_and_substitution() {
        let d = hopf_positive();
        assert_eq!(d.mirror().mirror(), d);
        let mirrored = homfly(&d.mirror()).unwrap();
        assert_eq!(mirrored, homfly(&d).unwrap().subst_v_neg_inv());
        // The negative Hopf link value, for the record.
        assert_eq!(mirrored, laurent(&[(-1, -1, 1), (-1, -1, -1), (1, -3, -1)]));
    }

    #[test]
    fn basepoint_choice_does_not_matter() {
        let d = hopf_positive();
        let reference = homfly(&d).unwrap();
        for seed in 0..10 {
            assert_eq!(homfly_seeded(&d, seed).unwrap(), reference);
        }
    }

    #[test]
    fn morton_bound_on_small_diagrams() {
        for d in [hopf_positive(), median_diagram(&k2_embedding(Sign::Plus)).unwrap()] {
            let p = homfly(&d).unwrap();
            assert!(p.max_z_exp().unwrap() <= morton_exponent(&d));
        }
    }

    #[test]
    fn five_two_fixture() {
        // The Seifert graph of the 5_2 diagram: a four-cycle with one
        // doubled edge, all positive.
        let g = SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1), (0, 0)]);
        let rot = vec![
            vec![0, 1, 4], // e1
            vec![2, 3],    // e2
            vec![0, 4, 2], // v1
            vec![3, 1],    // v2
        ];
        let pe = PlaneEmbedding::new(g.clone(), rot).unwrap();
        let d = median_diagram(&pe).unwrap();
        assert_eq!(d.n_crossings(), 5);
        assert_eq!(seifert_analyze(&d).circles, 4);
        assert_eq!(d.n_components(), 1);
        let p = homfly(&d).unwrap();
        let expected = laurent(&[(1, 2, 2), (1, 4, 2), (1, 2, 0), (1, 4, 0), (-1, 6, 0)]);
        assert_eq!(p, expected, "got {p}");
        assert_eq!(top_coefficient(&d).unwrap(), laurent(&[(1, 2, 0), (1, 4, 0)]));

        let mirror = d.mirror();
        let pm = homfly(&mirror).unwrap();
        let expected_mirror =
            laurent(&[(1, -4, 2), (1, -2, 2), (-1, -6, 0), (1, -4, 0), (1, -2, 0)]);
        assert_eq!(pm, expected_mirror);
        assert_eq!(
            top_coefficient(&mirror).unwrap(),
            laurent(&[(1, -4, 0), (1, -2, 0)])
        );
        // Matches the interior polynomial route: I+ = 1 + x at shift 2.
        assert_eq!(interior_signed(&g), IntPoly::from_i64(&[1, 1]));
        assert!(median_top_check(&pe).unwrap());
    }

    #[test]
    fn median_top_check_small_cases() {
        assert!(median_top_check(&k2_embedding(Sign::Plus)).unwrap());
        assert!(median_top_check(&k2_embedding(Sign::Minus)).unwrap());
        let double = SignedBipartiteGraph::unsigned(1, 1, &[(0, 0), (0, 0)]);
        let pe = PlaneEmbedding::new(double, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(median_top_check(&pe).unwrap());
    }

    #[test]
    fn mirrored_median_top_matches_reversal_prediction() {
        use crate::interior::mirror_transform;
        // The mirror of a median diagram is the median of the sign-flipped
        // graph, so its top coefficient must match the coefficient-reversal
        // prediction pushed through the grading shift of the flipped graph.
        let graphs = vec![
            SignedBipartiteGraph::unsigned(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1), (0, 0)]),
            SignedBipartiteGraph::from_indices(
                2,
                2,
                &[(0, 0, Sign::Plus), (0, 1, Sign::Minus), (1, 0, Sign::Plus), (1, 1, Sign::Plus)],
            ),
            SignedBipartiteGraph::unsigned(1, 1, &[(0, 0), (0, 0)]),
        ];
        for g in graphs {
            let rot = crate::family::planar_rotation(&g).unwrap();
            let pe = PlaneEmbedding::new(g.clone(), rot).unwrap();
            let mirrored = median_diagram(&pe).unwrap().mirror();
            let shift = g.n_negative() as i64 - g.n_positive() as i64 - g.n_nodes() as i64 + 1;
            let predicted = mirror_transform(&g).unwrap().substitute_v_squared(shift);
            assert_eq!(
                top_coefficient(&mirrored).unwrap(),
                predicted,
                "chain fails for {}",
                g.to_format_string()
            );
        }
    }

    #[test]
    fn signed_pipelines_sweep() {
        use crate::family::{connected_bigraphs, with_sign_pattern};
        use crate::interior::{interior_signed, interior_signed_skein};
        for g in connected_bigraphs(4) {
            for pattern in 0..(1u64 << g.n_edges()) {
                let signed = with_sign_pattern(&g, pattern);
                assert_eq!(interior_signed(&signed), interior_signed_skein(&signed));
            }
        }
    }

    #[test]
    fn pd_parse_round_trip_values() {
        // A standard trefoil PD code; orientation propagation makes every
        // crossing negative, so this is the left-handed trefoil.
        let text = "X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.writhe(), -3);
        let p = homfly(&d).unwrap();
        // P(left trefoil) = 2v^-2 - v^-4 + v^-2 z^2.
        let expected = laurent(&[(2, -2, 0), (-1, -4, 0), (1, -2, 2)]);
        assert_eq!(p, expected, "got {p}");
        // The mirror is the right-handed trefoil.
        let pm = homfly(&d.mirror()).unwrap();
        assert_eq!(pm, laurent(&[(2, 2, 0), (-1, 4, 0), (1, 2, 2)]));
        assert_eq!(pm, p.subst_v_neg_inv());
    }

    #[test]
    fn pd_parse_errors() {
        assert!(parse_diagram("X[1,2,3]\n").is_err());
        assert!(parse_diagram("Y[1,2,3,4]\n").is_err());
        // Arc appearing once.
        assert!(matches!(
            parse_diagram("X[1,2,3,4]\n"),
            Err(DiagramError::ArcInCount(_, 1))
        ));
    }

    #[test]
    fn embedded_graph_parsing() {
        let text = "E: e1 e2\nV: v1 v2\nedge: e1 v1\nedge: e1 v2\nedge: e2 v1\nedge: e2 v2\n\
                    rot: e1 0 1\nrot: v1 0 2\n";
        let pe = parse_embedded_graph(text).unwrap();
        let d = median_diagram(&pe).unwrap();
        assert_eq!(d.n_crossings(), 4);
        assert_eq!(seifert_analyze(&d).circles, 4);
    }
}
