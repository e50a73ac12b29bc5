//! The interior polynomial and its signed variants.
//!
//! The unsigned interior polynomial of a forest on k components is
//! (1-x)^(k-1); a graph with a cycle expands by inclusion-exclusion over
//! deletions of one alternation class of the cycle. All recursive calls
//! are spanning subgraphs of the original node set, so memoization is
//! keyed by the alive-edge bitmask.
//!
//! The signed polynomial I+ is the alternating sum of unsigned interior
//! polynomials over deletions of negative-edge subsets; I- mirrors it over
//! the positive edges. A second pipeline computes I+ by resolving one
//! negative edge at a time (make it positive, or delete it).

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bigraph::{
    find_cycle_masked, find_cycle_masked_random, flype, mutate, CycleWitness,
    FlypeDecomposition, GraphError, MutationDecomposition, SignedBipartiteGraph,
};
use crate::poly::{IntPoly, PolyError};
use crate::tutte::{tutte_at_y1, tutte_polynomial, ClassicalGraph};

const EDGE_CAP: usize = 62;
const EXPANSION_EDGE_CAP: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InteriorError {
    #[error("graph has {got} edges, recursion cap is {cap}")]
    TooManyEdges { got: usize, cap: usize },
    #[error("signed interior polynomial degree exceeds |E|+|V|-1")]
    DegreeBound,
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Memo table for one top-level computation: alive-edge bitmask of a
/// spanning subgraph, mapped to its interior polynomial.
pub struct MemoTable {
    map: HashMap<u64, IntPoly>,
}

impl MemoTable {
    pub fn new() -> MemoTable {
        MemoTable { map: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl Default for MemoTable {
    fn default() -> Self {
        MemoTable::new()
    }
}

fn full_mask(g: &SignedBipartiteGraph) -> u64 {
    if g.n_edges() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n_edges()) - 1
    }
}

fn check_cap(g: &SignedBipartiteGraph) -> Result<(), InteriorError> {
    if g.n_edges() > EDGE_CAP {
        return Err(InteriorError::TooManyEdges { got: g.n_edges(), cap: EDGE_CAP });
    }
    Ok(())
}

/// Components of the spanning subgraph with the alive edges.
fn masked_components(g: &SignedBipartiteGraph, mask: u64) -> usize {
    let n = g.n_nodes();
    let ne = g.n_e();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for (i, e) in g.edges().iter().enumerate() {
        if mask & (1 << i) != 0 {
            let (a, b) = (find(&mut parent, e.e), find(&mut parent, ne + e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Interior polynomial of the spanning subgraph selected by `mask`, with
/// the cycle supplied by `chooser`.
fn interior_masked<F>(
    g: &SignedBipartiteGraph,
    mask: u64,
    memo: &mut MemoTable,
    chooser: &mut F,
) -> IntPoly
where
    F: FnMut(&SignedBipartiteGraph, u64) -> Option<CycleWitness>,
{
    if let Some(p) = memo.map.get(&mask) {
        return p.clone();
    }
    let result = match chooser(g, mask) {
        None => {
            let k = masked_components(g, mask);
            if g.n_nodes() == 0 {
                IntPoly::one()
            } else {
                IntPoly::one_minus_x_pow(k - 1)
            }
        }
        Some(witness) => {
            let class = witness.alternation_class();
            let mut acc = IntPoly::zero();
            for sub in 1u64..(1 << class.len()) {
                let mut removed = 0u64;
                for (i, &edge) in class.iter().enumerate() {
                    if sub & (1 << i) != 0 {
                        removed |= 1 << edge;
                    }
                }
                let term = interior_masked(g, mask & !removed, memo, chooser);
                if sub.count_ones() % 2 == 1 {
                    acc = acc.add(&term);
                } else {
                    acc = acc.sub(&term);
                }
            }
            acc
        }
    };
    memo.map.insert(mask, result.clone());
    result
}

/// The interior polynomial of an unsigned bipartite graph (signs are
/// ignored). Forests on k components give (1-x)^(k-1).
pub fn interior_recursive(g: &SignedBipartiteGraph) -> Result<IntPoly, InteriorError> {
    check_cap(g)?;
    let mut memo = MemoTable::new();
    Ok(interior_masked(g, full_mask(g), &mut memo, &mut |g, m| find_cycle_masked(g, m)))
}

/// Same value as [`interior_recursive`], computed with a seeded random
/// cycle chooser. The result must not depend on which cycle is picked.
pub fn interior_recursive_seeded(
    g: &SignedBipartiteGraph,
    seed: u64,
) -> Result<IntPoly, InteriorError> {
    check_cap(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut memo = MemoTable::new();
    Ok(interior_masked(g, full_mask(g), &mut memo, &mut |g, m| {
        find_cycle_masked_random(g, m, &mut rng)
    }))
}

/// I+ by the subset expansion: the alternating sum over deletions of
/// negative-edge subsets of the unsigned interior polynomial.
pub fn interior_signed(g: &SignedBipartiteGraph) -> IntPoly {
    check_cap(g).expect("edge count within recursion cap");
    let neg = g.negative_edge_indices();
    let full = full_mask(g);
    let mut memo = MemoTable::new();
    let mut chooser = |g: &SignedBipartiteGraph, m: u64| find_cycle_masked(g, m);
    let mut acc = IntPoly::zero();
    for sub in 0u64..(1 << neg.len()) {
        let mut removed = 0u64;
        for (i, &edge) in neg.iter().enumerate() {
            if sub & (1 << i) != 0 {
                removed |= 1 << edge;
            }
        }
        let term = interior_masked(g, full & !removed, &mut memo, &mut chooser);
        if sub.count_ones() % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// I-: the alternating sum over deletions of positive-edge subsets. By
/// symmetry this equals I+ of the sign-flipped graph; both routes are
/// computed independently and compared in the tests.
pub fn interior_signed_minus(g: &SignedBipartiteGraph) -> IntPoly {
    check_cap(g).expect("edge count within recursion cap");
    let pos = g.positive_edge_indices();
    let full = full_mask(g);
    let mut memo = MemoTable::new();
    let mut chooser = |g: &SignedBipartiteGraph, m: u64| find_cycle_masked(g, m);
    let mut acc = IntPoly::zero();
    for sub in 0u64..(1 << pos.len()) {
        let mut removed = 0u64;
        for (i, &edge) in pos.iter().enumerate() {
            if sub & (1 << i) != 0 {
                removed |= 1 << edge;
            }
        }
        let term = interior_masked(g, full & !removed, &mut memo, &mut chooser);
        if sub.count_ones() % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// I+ by the skein pipeline: resolve the lowest-index negative edge, either
/// making it positive or deleting it, until no negative edges remain.
pub fn interior_signed_skein(g: &SignedBipartiteGraph) -> IntPoly {
    check_cap(g).expect("edge count within recursion cap");
    let mut neg_mask = 0u64;
    for i in g.negative_edge_indices() {
        neg_mask |= 1 << i;
    }
    let mut memo = MemoTable::new();
    let mut chooser = |g: &SignedBipartiteGraph, m: u64| find_cycle_masked(g, m);
    fn rec(
        g: &SignedBipartiteGraph,
        alive: u64,
        neg: u64,
        memo: &mut MemoTable,
        chooser: &mut impl FnMut(&SignedBipartiteGraph, u64) -> Option<CycleWitness>,
    ) -> IntPoly {
        let live_neg = alive & neg;
        if live_neg == 0 {
            return interior_masked(g, alive, memo, chooser);
        }
        let eps = 1u64 << live_neg.trailing_zeros();
        let made_positive = rec(g, alive, neg & !eps, memo, chooser);
        let deleted = rec(g, alive & !eps, neg & !eps, memo, chooser);
        made_positive.sub(&deleted)
    }
    rec(g, full_mask(g), neg_mask, &mut memo, &mut chooser)
}

/// The sign-reversal prediction for I+ of the all-signs-flipped graph:
/// (-1)^(|edges| + |nodes| - 1) x^(|nodes|-1) I+(1/x).
pub fn mirror_transform(g: &SignedBipartiteGraph) -> Result<IntPoly, InteriorError> {
    let n = g.n_nodes();
    let iplus = interior_signed(g);
    if n == 0 {
        return Ok(iplus);
    }
    let bound = n - 1;
    let sign = if (g.n_edges() + n - 1).is_multiple_of(2) { 1 } else { -1 };
    iplus.reverse_with_sign(bound, sign).map_err(|e| match e {
        PolyError::DegreeAboveBound { .. } => InteriorError::DegreeBound,
        _ => InteriorError::DegreeBound,
    })
}

/// Does (-x)^(|nodes|-1) I'(1/x) equal the alternating sum over all
/// spanning subgraphs of their interior polynomials?
pub fn subgraph_expansion_check(g: &SignedBipartiteGraph) -> Result<bool, InteriorError> {
    let m = g.n_edges();
    if m > EXPANSION_EDGE_CAP {
        return Err(InteriorError::TooManyEdges { got: m, cap: EXPANSION_EDGE_CAP });
    }
    let n = g.n_nodes();
    if n == 0 {
        return Ok(true);
    }
    let mut memo = MemoTable::new();
    let mut chooser = |g: &SignedBipartiteGraph, mk: u64| find_cycle_masked(g, mk);
    let full = full_mask(g);
    let whole = interior_masked(g, full, &mut memo, &mut chooser);
    let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    let lhs = whole
        .reverse_with_sign(n - 1, sign)
        .map_err(|_| InteriorError::DegreeBound)?;
    let mut rhs = IntPoly::zero();
    for kept in 0u64..=full {
        let term = interior_masked(g, kept, &mut memo, &mut chooser);
        if kept.count_ones() % 2 == 0 {
            rhs = rhs.add(&term);
        } else {
            rhs = rhs.sub(&term);
        }
        if kept == full {
            break;
        }
    }
    Ok(lhs == rhs)
}

/// Bipartite incidence subdivision of a classical multigraph: one E-node
/// per classical edge, joined to the classical endpoints (twice, for a
/// loop).
pub fn subdivision_bigraph(h: &ClassicalGraph) -> SignedBipartiteGraph {
    let mut pairs = Vec::with_capacity(2 * h.edges.len());
    for (i, &(u, v)) in h.edges.iter().enumerate() {
        pairs.push((i, u));
        pairs.push((i, v));
    }
    SignedBipartiteGraph::unsigned(h.edges.len(), h.n, &pairs)
}

/// Does the interior polynomial of the incidence subdivision equal
/// x^(|V|-1) T(1/x, 1), with T computed by deletion-contraction?
pub fn tutte_specialization_check(h: &ClassicalGraph) -> Result<bool, InteriorError> {
    if !h.is_connected() {
        return Err(InteriorError::Disconnected);
    }
    let sub = subdivision_bigraph(h);
    let interior = interior_recursive(&sub)?;
    let t1 = tutte_at_y1(&tutte_polynomial(h));
    // x^(n-1) T(1/x, 1): the x^i coefficient of T lands at exponent n-1-i.
    let mut coeffs = vec![BigInt::from(0); h.n.max(1)];
    for (i, c) in t1.iter().enumerate() {
        coeffs[h.n - 1 - i] = c.clone();
    }
    Ok(interior == IntPoly::from_coeffs(coeffs))
}

/// A two-attachment surgery on a signed bipartite graph.
#[derive(Debug, Clone)]
pub enum Surgery {
    Flype(FlypeDecomposition),
    Mutation(MutationDecomposition),
}

/// Does I+ survive the surgery unchanged?
pub fn invariance_suite(g: &SignedBipartiteGraph, surgery: &Surgery) -> Result<bool, InteriorError> {
    let after = match surgery {
        Surgery::Flype(fd) => flype(g, fd)?,
        Surgery::Mutation(md) => mutate(g, md)?,
    };
    Ok(interior_signed(g) == interior_signed(&after))
}
