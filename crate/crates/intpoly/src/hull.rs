//! Exact convex-hull membership and relative-interior tests over rational
//! point sets, and the alternating indicator identity
//!
//! ```text
//! (-1)^dim(Conv X) [relint(Conv X)] = sum over nonempty S of X of (-1)^(|S|-1) [Conv S]
//! ```
//!
//! verified pointwise on deterministic sample sets. Everything runs on an
//! exact rational phase-one/phase-two simplex with Bland's rule, so there
//! are no tolerances anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HullError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty point set")]
    EmptyPointSet,
    #[error("point set of size {size} exceeds subset-sum cap {cap}")]
    SizeCap { size: usize, cap: usize },
}

pub type Rat = BigRational;

/// Point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatPoint(pub Vec<Rat>);

impl RatPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn from_integers(coords: &[i64]) -> RatPoint {
        RatPoint(coords.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect())
    }

    pub fn scale_int(&self, s: i64) -> RatPoint {
        let s = Rat::from_integer(BigInt::from(s));
        RatPoint(self.0.iter().map(|c| c * &s).collect())
    }
}

fn check_dims(points: &[RatPoint], q: &RatPoint) -> Result<(), HullError> {
    if points.is_empty() {
        return Err(HullError::EmptyPointSet);
    }
    let d = q.dim();
    for p in points {
        if p.dim() != d {
            return Err(HullError::DimensionMismatch { expected: d, got: p.dim() });
        }
    }
    Ok(())
}

/// Outcome of an exact LP solve in standard form (min c.y, A y = b, y >= 0).
#[derive(Debug, Clone, PartialEq)]
enum LpOutcome {
    Infeasible,
    Optimal { value: Rat },
    Unbounded,
}

/// Dense exact simplex. Row-reduced tableau with explicit basis; Bland's
/// rule in both phases guarantees termination.
struct Tableau {
    // rows x (cols + 1); last column is the rhs.
    rows: Vec<Vec<Rat>>,
    cols: usize,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(a: &[Vec<Rat>], b: &[Rat]) -> Tableau {
        let m = a.len();
        let n = if m == 0 { 0 } else { a[0].len() };
        // Append artificial variables; flip rows to make the rhs nonnegative.
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let flip = b[i].is_negative();
            let mut row: Vec<Rat> = Vec::with_capacity(n + m + 1);
            for j in 0..n {
                row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rat::one() } else { Rat::zero() });
            }
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            rows.push(row);
        }
        Tableau { rows, cols: n + m, basis: (n..n + m).collect() }
    }

    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &piv;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..=self.cols {
                let delta = &f * &self.rows[r][j];
                self.rows[i][j] -= delta;
            }
        }
        self.basis[r] = c;
    }

    /// Minimize c.y over the current feasible basis. Only columns below
    /// `enter_below` may enter the basis.
    fn optimize(&mut self, cost: &[Rat], enter_below: usize) -> LpOutcome {
        loop {
            // Reduced costs via the basic solution: z_j = c_j - c_B . col_j.
            let mut entering = None;
            for j in 0..enter_below {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (i, &bj) in self.basis.iter().enumerate() {
                    red -= &cost[bj] * &self.rows[i][j];
                }
                if red.is_negative() {
                    entering = Some(j);
                    break; // Bland: smallest index.
                }
            }
            let Some(j) = entering else {
                let mut value = Rat::zero();
                for (i, &bj) in self.basis.iter().enumerate() {
                    value += &cost[bj] * self.rhs(i);
                }
                return LpOutcome::Optimal { value };
            };
            // Ratio test, Bland ties by smallest basis variable.
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][j].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][j];
                    let better = match &leaving {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leaving else {
                return LpOutcome::Unbounded;
            };
            self.pivot(r, j);
        }
    }
}

/// Solve min c.y subject to A y = b, y >= 0 (two-phase, exact).
fn solve_lp(a: &[Vec<Rat>], b: &[Rat], cost: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut t = Tableau::new(a, b);
    // Phase one: minimize the sum of artificials.
    let mut phase1 = vec![Rat::zero(); n + m];
    for c in phase1.iter_mut().skip(n) {
        *c = Rat::one();
    }
    match t.optimize(&phase1, n + m) {
        LpOutcome::Optimal { value } if value.is_zero() => {}
        LpOutcome::Optimal { .. } => return LpOutcome::Infeasible,
        other => return other,
    }
    // Drive lingering artificials out of the basis where possible; rows
    // that stay artificial are redundant and harmless (their rhs is zero).
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(c) = (0..n).find(|&c| !t.rows[i][c].is_zero()) {
                t.pivot(i, c);
            }
        }
    }
    // Phase two: only original columns may enter; artificials left basic
    // sit at zero with zero cost.
    let mut phase2 = cost.to_vec();
    phase2.extend(std::iter::repeat_n(Rat::zero(), m));
    t.optimize(&phase2, n)
}

/// Is q a convex combination of the points of `s`?
pub fn conv_contains(s: &[RatPoint], q: &RatPoint) -> Result<bool, HullError> {
    check_dims(s, q)?;
    let d = q.dim();
    let n = s.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        a.push(s.iter().map(|p| p.0[coord].clone()).collect());
    }
    a.push(vec![Rat::one(); n]);
    let mut b: Vec<Rat> = q.0.clone();
    b.push(Rat::one());
    let cost = vec![Rat::zero(); n];
    Ok(matches!(solve_lp(&a, &b, &cost), LpOutcome::Optimal { .. }))
}

/// Is q a strictly positive convex combination of ALL points of `x`?
/// For a finite point set this is membership in relint(Conv X). Decided by
/// maximizing t subject to lambda_i >= t, sum lambda = 1, sum lambda_i x_i = q.
pub fn relint_contains(x: &[RatPoint], q: &RatPoint) -> Result<bool, HullError> {
    check_dims(x, q)?;
    let d = q.dim();
    let n = x.len();
    // Variables: mu_0..mu_{n-1} (= lambda_i - t), t+, t-.
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        let mut row: Vec<Rat> = x.iter().map(|p| p.0[coord].clone()).collect();
        let colsum: Rat = x.iter().map(|p| p.0[coord].clone()).sum();
        row.push(colsum.clone());
        row.push(-colsum);
        a.push(row);
    }
    let mut last = vec![Rat::one(); n];
    last.push(Rat::from_integer(BigInt::from(n as i64)));
    last.push(-Rat::from_integer(BigInt::from(n as i64)));
    a.push(last);
    let mut b: Vec<Rat> = q.0.clone();
    b.push(Rat::one());
    let mut cost = vec![Rat::zero(); n + 2];
    cost[n] = -Rat::one();
    cost[n + 1] = Rat::one();
    match solve_lp(&a, &b, &cost) {
        LpOutcome::Infeasible => Ok(false),
        LpOutcome::Optimal { value } => Ok(value.is_negative()),
        // max t is bounded above by 1/n, so the objective cannot be unbounded.
        LpOutcome::Unbounded => unreachable!("relint objective is bounded"),
    }
}

/// Affine dimension of the hull of a point set: the rank of {x_i - x_0}
/// by exact Gaussian elimination.
pub fn affine_dim(points: &[RatPoint]) -> Result<usize, HullError> {
    let Some(first) = points.first() else {
        return Err(HullError::EmptyPointSet);
    };
    let d = first.dim();
    for p in points {
        if p.dim() != d {
            return Err(HullError::DimensionMismatch { expected: d, got: p.dim() });
        }
    }
    let mut rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.0.iter().zip(&first.0).map(|(a, b)| a - b).collect())
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x /= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..d {
                    let delta = &f * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Point set with its precomputed affine dimension.
#[derive(Debug, Clone)]
pub struct HullProblem {
    pub points: Vec<RatPoint>,
    pub dim: usize,
}

impl HullProblem {
    pub fn new(points: Vec<RatPoint>) -> Result<HullProblem, HullError> {
        let dim = affine_dim(&points)?;
        Ok(HullProblem { points, dim })
    }
}

const INDICATOR_CAP: usize = 9;

/// Check the alternating indicator identity at one sample point. Returns
/// the pair (lhs, rhs) so failures carry their witness values.
pub fn indicator_sides(x: &[RatPoint], q: &RatPoint) -> Result<(i64, i64), HullError> {
    if x.len() > INDICATOR_CAP {
        return Err(HullError::SizeCap { size: x.len(), cap: INDICATOR_CAP });
    }
    let dim = affine_dim(x)?;
    let lhs = if relint_contains(x, q)? {
        if dim % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    };
    let mut rhs: i64 = 0;
    for mask in 1u32..(1 << x.len()) {
        let subset: Vec<RatPoint> = (0..x.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| x[i].clone())
            .collect();
        if conv_contains(&subset, q)? {
            if mask.count_ones() % 2 == 1 {
                rhs += 1;
            } else {
                rhs -= 1;
            }
        }
    }
    Ok((lhs, rhs))
}

/// Does the indicator identity hold at every sample point?
pub fn indicator_identity_check(x: &[RatPoint], samples: &[RatPoint]) -> Result<bool, HullError> {
    for q in samples {
        let (lhs, rhs) = indicator_sides(x, q)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

const SAMPLE_SEED: u64 = 0x1d6a_91e5;
const RANDOM_SAMPLES: usize = 20;

/// Deterministic sample set for indicator checks: the points themselves,
/// barycenters of every nonempty subset (midpoints of pairs included), and
/// a fixed-seed batch of random rational points from the bounding box,
/// which exercise the outside-the-hull branch.
pub fn generate_samples(x: &[RatPoint]) -> Vec<RatPoint> {
    let mut out: BTreeSet<RatPoint> = BTreeSet::new();
    if x.is_empty() {
        return Vec::new();
    }
    let d = x[0].dim();
    for mask in 1u32..(1 << x.len()) {
        let k = mask.count_ones() as i64;
        let mut bary = vec![Rat::zero(); d];
        for (i, p) in x.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (b, c) in bary.iter_mut().zip(&p.0) {
                    *b += c;
                }
            }
        }
        let k = Rat::from_integer(BigInt::from(k));
        for b in bary.iter_mut() {
            *b /= &k;
        }
        out.insert(RatPoint(bary));
    }
    let lo: Vec<Rat> = (0..d)
        .map(|c| x.iter().map(|p| p.0[c].clone()).min().unwrap() - Rat::one())
        .collect();
    let hi: Vec<Rat> = (0..d)
        .map(|c| x.iter().map(|p| p.0[c].clone()).max().unwrap() + Rat::one())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let denom = BigInt::from(8);
    for _ in 0..RANDOM_SAMPLES {
        let mut coords = Vec::with_capacity(d);
        for c in 0..d {
            // Random multiple of 1/8 in [lo, hi].
            let span = (&hi[c] - &lo[c]) * Rat::from_integer(denom.clone());
            let span_num = span.to_integer();
            let steps: i64 = i64::try_from(&span_num).unwrap_or(i64::MAX).max(1);
            let k = rng.gen_range(0..=steps);
            coords.push(&lo[c] + Rat::new(BigInt::from(k), denom.clone()));
        }
        out.insert(RatPoint(coords));
    }
    out.into_iter().collect()
}
