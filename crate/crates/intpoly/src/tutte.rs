//! Classical multigraphs and a textbook deletion-contraction Tutte
//! polynomial, used as an independent oracle for the specialization
//! x^(|V|-1) T(1/x, 1).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Multigraph on vertices 0..n with an edge multiset; loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ClassicalGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> ClassicalGraph {
        assert!(edges.iter().all(|&(u, v)| u < n && v < n));
        ClassicalGraph { n, edges: edges.to_vec() }
    }

    pub fn n_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        (0..self.n).filter(|&i| find(&mut parent, i) == i).count()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.n_components() == 1
    }

    fn delete(&self, idx: usize) -> ClassicalGraph {
        let mut edges = self.edges.clone();
        edges.remove(idx);
        ClassicalGraph { n: self.n, edges }
    }

    /// Contract edge idx: merge its endpoints; parallel edges stay, and
    /// other edges between the endpoints become loops.
    fn contract(&self, idx: usize) -> ClassicalGraph {
        let (a, b) = self.edges[idx];
        let (keep, gone) = (a.min(b), a.max(b));
        let map = |x: usize| {
            if x == gone {
                keep
            } else if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, &(u, v))| (map(u), map(v)))
            .collect();
        ClassicalGraph { n: self.n - 1, edges }
    }
}

/// Two-variable polynomial with integer coefficients, keyed by (x-exp, y-exp).
pub type TuttePoly = BTreeMap<(usize, usize), BigInt>;

fn tp_add(a: &mut TuttePoly, b: TuttePoly) {
    for (k, c) in b {
        let slot = a.entry(k).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            a.remove(&k);
        }
    }
}

fn tp_shift(p: TuttePoly, dx: usize, dy: usize) -> TuttePoly {
    p.into_iter().map(|((i, j), c)| ((i + dx, j + dy), c)).collect()
}

/// Tutte polynomial by deletion-contraction: loops contribute y, bridges x.
pub fn tutte_polynomial(g: &ClassicalGraph) -> TuttePoly {
    if g.edges.is_empty() {
        return [((0, 0), BigInt::one())].into_iter().collect();
    }
    let idx = g.edges.len() - 1;
    let (u, v) = g.edges[idx];
    if u == v {
        return tp_shift(tutte_polynomial(&g.delete(idx)), 0, 1);
    }
    let deleted = g.delete(idx);
    if deleted.n_components() > g.n_components() {
        return tp_shift(tutte_polynomial(&g.contract(idx)), 1, 0);
    }
    let mut acc = tutte_polynomial(&deleted);
    tp_add(&mut acc, tutte_polynomial(&g.contract(idx)));
    acc
}

/// Coefficients of T(x, 1) by ascending x-exponent.
pub fn tutte_at_y1(t: &TuttePoly) -> Vec<BigInt> {
    let deg = t.keys().map(|&(i, _)| i).max().unwrap_or(0);
    let mut out = vec![BigInt::zero(); deg + 1];
    for (&(i, _), c) in t {
        out[i] += c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(t: &TuttePoly, i: usize, j: usize) -> BigInt {
        t.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    #[test]
    fn triangle() {
        let g = ClassicalGraph::new(3, &[(0, 1), (1, 2), (2, 0)]);
        let t = tutte_polynomial(&g);
        // T(K3) = x^2 + x + y.
        assert_eq!(coeff(&t, 2, 0), BigInt::one());
        assert_eq!(coeff(&t, 1, 0), BigInt::one());
        assert_eq!(coeff(&t, 0, 1), BigInt::one());
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn small_cases() {
        let single = ClassicalGraph::new(2, &[(0, 1)]);
        assert_eq!(tutte_polynomial(&single), [((1, 0), BigInt::one())].into_iter().collect());
        let parallel = ClassicalGraph::new(2, &[(0, 1), (0, 1)]);
        let t = tutte_polynomial(&parallel);
        // T = x + y.
        assert_eq!(coeff(&t, 1, 0), BigInt::one());
        assert_eq!(coeff(&t, 0, 1), BigInt::one());
        let loop_graph = ClassicalGraph::new(1, &[(0, 0)]);
        assert_eq!(tutte_polynomial(&loop_graph), [((0, 1), BigInt::one())].into_iter().collect());
    }

    #[test]
    fn connectivity() {
        assert!(ClassicalGraph::new(3, &[(0, 1), (1, 2)]).is_connected());
        assert!(!ClassicalGraph::new(3, &[(0, 1)]).is_connected());
        assert!(ClassicalGraph::new(1, &[]).is_connected());
    }
}
