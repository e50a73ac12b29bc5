//! Exact polynomial arithmetic: dense univariate polynomials over
//! arbitrary-precision integers and rationals, and sparse two-variable
//! Laurent polynomials in `(v, z)`.
//!
//! All arithmetic is exact; there is no floating point anywhere in this
//! crate.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("degree {degree} exceeds reversal bound {bound}")]
    DegreeAboveBound { degree: usize, bound: usize },
    #[error("duplicate abscissa {0} in interpolation input")]
    DuplicateAbscissa(i64),
    #[error("count sequence must start with 1, got {0}")]
    BadLeadingCount(BigInt),
    #[error("expected {expected} counts, got {got}")]
    CountLength { expected: usize, got: usize },
    #[error("malformed machine polynomial: {0}")]
    Machine(String),
}

/// Binomial coefficient C(n, k) over arbitrary-precision integers.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Dense univariate polynomial with integer coefficients, ascending degree.
///
/// Invariant: no trailing zero coefficient; the zero polynomial is the
/// empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// Monomial c * x^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// (1 - x)^k.
    pub fn one_minus_x_pow(k: usize) -> IntPoly {
        let base = IntPoly::from_i64(&[1, -1]);
        let mut acc = IntPoly::one();
        for _ in 0..k {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// s * x^n * p(1/x): coefficient k of the output is s times coefficient
    /// n-k of p. Requires deg p <= n.
    pub fn reverse_with_sign(&self, n: usize, sign: i8) -> Result<IntPoly, PolyError> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(PolyError::DegreeAboveBound { degree: d, bound: n });
            }
        }
        let mut out = vec![BigInt::zero(); n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let c = self.coeff(n - k);
            *slot = if sign >= 0 { c } else { -c };
        }
        Ok(IntPoly::from_coeffs(out))
    }

    /// v^shift * p(v^2) as a z-free two-variable Laurent polynomial.
    pub fn substitute_v_squared(&self, shift: i64) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out.add_term(c.clone(), 2 * k as i64 + shift, 0);
        }
        out
    }

    /// Machine rendering: `int-poly <coeff>@<exp> ...` with zero terms omitted.
    pub fn to_machine(&self) -> String {
        let mut s = String::from("int-poly");
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                s.push_str(&format!(" {}@{}", c, k));
            }
        }
        s
    }

    pub fn parse_machine(text: &str) -> Result<IntPoly, PolyError> {
        let mut parts = text.split_whitespace();
        match parts.next() {
            Some("int-poly") => {}
            _ => return Err(PolyError::Machine("missing int-poly header".into())),
        }
        let mut p = IntPoly::zero();
        for tok in parts {
            let (c, k) = tok
                .split_once('@')
                .ok_or_else(|| PolyError::Machine(format!("bad term {tok:?}")))?;
            let c: BigInt = c
                .parse()
                .map_err(|_| PolyError::Machine(format!("bad coefficient {c:?}")))?;
            let k: usize = k
                .parse()
                .map_err(|_| PolyError::Machine(format!("bad exponent {k:?}")))?;
            p = p.add(&IntPoly::monomial(c, k));
        }
        Ok(p)
    }
}

impl fmt::Display for IntPoly {
    /// Canonical text: `c0 + c1*x + c2*x^2`, zero terms omitted, unit
    /// coefficients of nonconstant terms suppressed; the zero polynomial
    /// renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", var_pow("x", k as i64))?;
            } else {
                write!(f, "{}*{}", mag, var_pow("x", k as i64))?;
            }
        }
        Ok(())
    }
}

fn var_pow(var: &str, k: i64) -> String {
    if k == 1 {
        var.to_string()
    } else {
        format!("{var}^{k}")
    }
}

/// Dense univariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::from_coeffs(vec![BigRational::one()])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// `true` iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", var_pow("s", k as i64))?;
            } else {
                write!(f, "{}*{}", mag, var_pow("s", k as i64))?;
            }
        }
        Ok(())
    }
}

/// Exact Lagrange interpolation through integer-valued sample points.
///
/// Returns the unique polynomial of degree below the number of points.
pub fn interpolate(points: &[(i64, BigInt)]) -> Result<RatPoly, PolyError> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(PolyError::DuplicateAbscissa(*x));
        }
    }
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Basis polynomial prod_{j != i} (s - xj) / (xi - xj).
        let mut basis = RatPoly::one();
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&RatPoly::from_coeffs(vec![
                BigRational::from_integer(BigInt::from(-xj)),
                BigRational::one(),
            ]));
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let w = BigRational::from_integer(yi.clone()) / denom;
        acc = acc.add(&basis.scale(&w));
    }
    Ok(acc)
}

/// Numerator of the Ehrhart series over (1-x)^(d+1), computed from the
/// lattice counts eps(0..d).
///
/// Coefficient h_k = sum_{j=0..k} (-1)^j C(d+1, j) eps(k-j), for k = 0..d.
pub fn hstar_from_counts(counts: &[BigInt], d: usize) -> Result<IntPoly, PolyError> {
    if counts.len() != d + 1 {
        return Err(PolyError::CountLength { expected: d + 1, got: counts.len() });
    }
    if !counts[0].is_one() {
        return Err(PolyError::BadLeadingCount(counts[0].clone()));
    }
    let mut h = vec![BigInt::zero(); d + 1];
    for (k, slot) in h.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for j in 0..=k {
            let term = binomial(d as u64 + 1, j as u64) * &counts[k - j];
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        *slot = acc;
    }
    Ok(IntPoly::from_coeffs(h))
}

/// Sparse two-variable Laurent polynomial in `(v, z)` with integer
/// coefficients. Exponents may be negative; zero coefficients are never
/// stored. Terms are kept sorted by (z-exponent, v-exponent).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly2 {
    // key: (z-exponent, v-exponent)
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        LaurentPoly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly2::term(BigInt::one(), 0, 0)
    }

    /// c * v^a * z^b.
    pub fn term(c: BigInt, v_exp: i64, z_exp: i64) -> Self {
        let mut p = LaurentPoly2::zero();
        p.add_term(c, v_exp, z_exp);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: BigInt, v_exp: i64, z_exp: i64) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((z_exp, v_exp)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(z_exp, v_exp));
        }
    }

    pub fn coeff(&self, v_exp: i64, z_exp: i64) -> BigInt {
        self.terms.get(&(z_exp, v_exp)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms as (coefficient, v-exponent, z-exponent), sorted by
    /// (z-exponent, v-exponent).
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, i64, i64)> {
        self.terms.iter().map(|(&(z, v), c)| (c, v, z))
    }

    pub fn add(&self, other: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (c, v, z) in other.terms() {
            out.add_term(c.clone(), v, z);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (c, v, z) in other.terms() {
            out.add_term(-c.clone(), v, z);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (a, va, za) in self.terms() {
            for (b, vb, zb) in other.terms() {
                out.add_term(a * b, va + vb, za + zb);
            }
        }
        out
    }

    pub fn mul_term(&self, c: &BigInt, v_exp: i64, z_exp: i64) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (a, v, z) in self.terms() {
            out.add_term(a * c, v + v_exp, z + z_exp);
        }
        out
    }

    /// (v^-1 - v)^k z^-k, the value of a (k+1)-component unlink.
    pub fn delta_pow(k: usize) -> LaurentPoly2 {
        let delta = {
            let mut d = LaurentPoly2::term(BigInt::one(), -1, -1);
            d.add_term(-BigInt::one(), 1, -1);
            d
        };
        let mut acc = LaurentPoly2::one();
        for _ in 0..k {
            acc = acc.mul(&delta);
        }
        acc
    }

    /// Substitute v -> -v^-1: c v^a z^b becomes (-1)^a c v^-a z^b.
    pub fn subst_v_neg_inv(&self) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (c, v, z) in self.terms() {
            let c = if v.rem_euclid(2) == 0 { c.clone() } else { -c.clone() };
            out.add_term(c, -v, z);
        }
        out
    }

    /// Maximal z-exponent over the support, or `None` when zero.
    pub fn max_z_exp(&self) -> Option<i64> {
        self.terms.keys().map(|&(z, _)| z).max()
    }

    /// Coefficient of z^k as a z-free Laurent polynomial in v.
    pub fn z_coefficient(&self, k: i64) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (c, v, z) in self.terms() {
            if z == k {
                out.add_term(c.clone(), v, 0);
            }
        }
        out
    }

    /// Machine rendering: `laurent <coeff>@<v-exp>,<z-exp> ...` in term order.
    pub fn to_machine(&self) -> String {
        let mut s = String::from("laurent");
        for (c, v, z) in self.terms() {
            s.push_str(&format!(" {}@{},{}", c, v, z));
        }
        s
    }

    pub fn parse_machine(text: &str) -> Result<LaurentPoly2, PolyError> {
        let mut parts = text.split_whitespace();
        match parts.next() {
            Some("laurent") => {}
            _ => return Err(PolyError::Machine("missing laurent header".into())),
        }
        let mut p = LaurentPoly2::zero();
        for tok in parts {
            let (c, exps) = tok
                .split_once('@')
                .ok_or_else(|| PolyError::Machine(format!("bad term {tok:?}")))?;
            let (v, z) = exps
                .split_once(',')
                .ok_or_else(|| PolyError::Machine(format!("bad exponents {exps:?}")))?;
            let c: BigInt = c
                .parse()
                .map_err(|_| PolyError::Machine(format!("bad coefficient {c:?}")))?;
            let v: i64 = v
                .parse()
                .map_err(|_| PolyError::Machine(format!("bad v-exponent {v:?}")))?;
            let z: i64 = z
                .parse()
                .map_err(|_| PolyError::Machine(format!("bad z-exponent {z:?}")))?;
            p.add_term(c, v, z);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly2 {
    /// Canonical text: `c*v^a*z^b` terms sorted by (z-exp, v-exp).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, v, z) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            if v != 0 {
                factors.push(var_pow("v", v));
            }
            if z != 0 {
                factors.push(var_pow("z", z));
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
