//! Real root isolation (Sturm sequences) and exact real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factor;
use super::matrix::parse_rational;
use super::poly::qp_divrem;
use super::IntPolynomial;
use crate::Q;

/// Sturm chain of a polynomial; counts distinct real roots in half-open intervals.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(f: &IntPolynomial) -> Self {
        let mut seq = vec![f.clone()];
        if f.degree().unwrap_or(0) == 0 {
            return Self { seq };
        }
        seq.push(f.derivative());
        loop {
            let n = seq.len();
            let (_, r) = qp_divrem(&seq[n - 2].to_q(), &seq[n - 1].to_q());
            if r.is_empty() {
                break;
            }
            let neg: Vec<Q> = r.into_iter().map(|c| -c).collect();
            seq.push(signed_primitive(&neg));
        }
        Self { seq }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    fn variations_at(&self, x: &Q) -> usize {
        Self::variations(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = if p.lc().is_negative() { -1 } else { 1 };
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &Q, hi: &Q) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots in `(lo, +inf)`.
    pub fn count_above(&self, lo: &Q) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at_infinity(true))
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

fn sign(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Integer polynomial proportional to `v` by a positive factor.
fn signed_primitive(v: &[Q]) -> IntPolynomial {
    let p = IntPolynomial::from_q(v);
    let lc = v.iter().rev().find(|c| !c.is_zero());
    match lc {
        Some(c) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// Cauchy bound: every complex root has modulus strictly below it.
pub fn root_bound(f: &IntPolynomial) -> Q {
    let lc = f.lc().abs();
    let m = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    Q::from_integer(m.div_ceil(&lc) + BigInt::from(1))
}

/// Disjoint isolating intervals `(lo, hi]`, ascending, one per distinct real root.
pub fn isolate_real_roots(f: &IntPolynomial) -> Vec<(Q, Q)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let f = f.squarefree_part();
    let chain = SturmChain::new(&f);
    let b = root_bound(&f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_in(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Q::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Internal refinement target for every constructed value.
fn default_width() -> Q {
    Q::new(BigInt::one(), BigInt::from(10u64).pow(9))
}

/// A real algebraic number: an irreducible primitive polynomial with positive
/// leading coefficient together with an interval `(lo, hi]` containing
/// exactly one of its roots.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "AlgebraicRealRepr", try_from = "AlgebraicRealRepr")]
pub struct AlgebraicReal {
    min_poly: IntPolynomial,
    lo: Q,
    hi: Q,
}

impl AlgebraicReal {
    /// Builds from an irreducible polynomial and an interval isolating one of its roots.
    pub fn new(min_poly: IntPolynomial, lo: Q, hi: Q) -> crate::Result<Self> {
        let min_poly = min_poly.primitive();
        if min_poly.degree().unwrap_or(0) == 0 {
            return Err(crate::Error::Shape("minimal polynomial must have positive degree".into()));
        }
        if SturmChain::new(&min_poly).count_in(&lo, &hi) != 1 {
            return Err(crate::Error::Shape(
                "interval does not isolate exactly one root".into(),
            ));
        }
        let mut a = Self { min_poly, lo, hi };
        a.refine_to(&default_width());
        Ok(a)
    }

    pub fn from_rational(q: Q) -> Self {
        let min_poly = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]);
        let lo = &q - Q::one();
        Self { min_poly, lo, hi: q }
    }

    pub fn zero() -> Self {
        Self::from_rational(Q::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Q::one())
    }

    /// The real root of `f` (any integer polynomial) lying in `(lo, hi]`,
    /// which must be its only root there.
    pub fn root_of(f: &IntPolynomial, lo: Q, hi: Q) -> crate::Result<Self> {
        for (g, _) in factor(f) {
            let chain = SturmChain::new(&g);
            if chain.count_in(&lo, &hi) == 1 {
                return Self::new(g, lo, hi);
            }
        }
        Err(crate::Error::Shape("no root in the given interval".into()))
    }

    /// Largest real root of `f`, if any.
    pub fn max_real_root(f: &IntPolynomial) -> Option<Self> {
        let (lo, hi) = isolate_real_roots(f).pop()?;
        Self::root_of(f, lo, hi).ok()
    }

    pub fn minimal_polynomial(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn interval(&self) -> (&Q, &Q) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap_or(0)
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.degree() == 1 {
            let c = self.min_poly.coeffs();
            Some(Q::new(-c[0].clone(), c[1].clone()))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Shrinks the isolating interval to width at most `width`.
    pub fn refine_to(&mut self, width: &Q) {
        if let Some(q) = self.as_rational() {
            self.lo = &q - width;
            self.hi = q;
            return;
        }
        let chain = SturmChain::new(&self.min_poly);
        let two = Q::from_integer(2.into());
        while &(&self.hi - &self.lo) > width {
            let mid = (&self.lo + &self.hi) / &two;
            if chain.count_in(&self.lo, &mid) == 1 {
                self.hi = mid;
            } else {
                self.lo = mid;
            }
        }
    }

    pub fn refined(&self, width: &Q) -> Self {
        let mut a = self.clone();
        a.refine_to(width);
        a
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return q_to_f64(&q);
        }
        let mid = (&self.lo + &self.hi) / Q::from_integer(2.into());
        q_to_f64(&mid)
    }

    /// Natural logarithm approximation (for display; the value must be positive).
    pub fn ln(&self) -> f64 {
        self.to_f64().ln()
    }

    /// Decimal approximation with an absolute error below `10^-digits`.
    pub fn approximation(&self, digits: u32) -> String {
        if let Some(q) = self.as_rational() {
            return fmt_decimal(&q, digits);
        }
        let w = Q::new(BigInt::one(), BigInt::from(10u64).pow(digits + 1));
        let r = self.refined(&w);
        fmt_decimal(&((&r.lo + &r.hi) / Q::from_integer(2.into())), digits)
    }

    /// The positive square root of a positive algebraic number.
    pub fn positive_sqrt(&self) -> crate::Result<Self> {
        if let Some(q) = self.as_rational() {
            if let (Some(n), Some(d)) = (exact_isqrt(q.numer()), exact_isqrt(q.denom())) {
                return Ok(Self::from_rational(Q::new(n, d)));
            }
        }
        let mut a = self.clone();
        let q = Q::new(BigInt::one(), BigInt::from(1000));
        while !a.lo.is_positive() {
            let w = (&a.hi - &a.lo) * &q;
            a.refine_to(&w);
        }
        let f = self.min_poly.compose_square();
        let whole = SturmChain::new(&f.squarefree_part());
        let factors = factor(&f);
        let mut width = &a.hi - &a.lo;
        loop {
            let lo = q_sqrt_floor(&a.lo);
            let hi = q_sqrt_ceil(&a.hi);
            if whole.count_in(&lo, &hi) == 1 {
                for (g, _) in &factors {
                    if SturmChain::new(g).count_in(&lo, &hi) == 1 {
                        return Self::new(g.clone(), lo, hi);
                    }
                }
            }
            width = width / Q::from_integer(16.into());
            a.refine_to(&width);
        }
    }

    fn disjoint_cmp(&self, other: &Self) -> Option<Ordering> {
        // values lie in (lo, hi]
        if self.hi <= other.lo {
            Some(Ordering::Less)
        } else if other.hi <= self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if self.min_poly == other.min_poly {
            // each interval holds exactly one root, so a root in the overlap is shared
            let lo = (&self.lo).max(&other.lo);
            let hi = (&self.hi).min(&other.hi);
            if lo < hi && SturmChain::new(&self.min_poly).count_in(lo, hi) == 1 {
                return Ordering::Equal;
            }
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(&b);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if let Some(o) = a.disjoint_cmp(&b) {
                return o;
            }
            let wa = (&a.hi - &a.lo) / Q::from_integer(4.into());
            let wb = (&b.hi - &b.lo) / Q::from_integer(4.into());
            a.refine_to(&wa);
            b.refine_to(&wb);
        }
    }

    /// Rational upper bound for the value.
    pub fn upper(&self) -> &Q {
        &self.hi
    }

    pub fn lower(&self) -> &Q {
        &self.lo
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "root of {} near {}", self.min_poly, self.approximation(6)),
        }
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicReal({} in ({}, {}])", self.min_poly, self.lo, self.hi)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraicRealRepr {
    minimal_polynomial: IntPolynomial,
    isolating_interval: [String; 2],
    approximation: String,
    error_bound: String,
}

impl From<AlgebraicReal> for AlgebraicRealRepr {
    fn from(a: AlgebraicReal) -> Self {
        Self {
            approximation: a.approximation(6),
            error_bound: "1e-6".into(),
            isolating_interval: [a.lo.to_string(), a.hi.to_string()],
            minimal_polynomial: a.min_poly,
        }
    }
}

impl TryFrom<AlgebraicRealRepr> for AlgebraicReal {
    type Error = String;
    fn try_from(r: AlgebraicRealRepr) -> Result<Self, String> {
        let lo = parse_rational(&r.isolating_interval[0])?;
        let hi = parse_rational(&r.isolating_interval[1])?;
        Ok(Self {
            min_poly: r.minimal_polynomial,
            lo,
            hi,
        })
    }
}

pub(crate) fn q_to_f64(q: &Q) -> f64 {
    use super::poly::bigint_to_f64;
    let (n, d) = (q.numer(), q.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    bigint_to_f64(&(n >> shift)) / bigint_to_f64(&(d >> shift))
}

/// Rounded decimal rendering with `digits` fractional digits.
pub fn fmt_decimal(q: &Q, digits: u32) -> String {
    let scale = BigInt::from(10u64).pow(digits);
    let scaled = (q * Q::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let a = scaled.abs();
    let (int, frac) = a.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

// floor/ceil of sqrt for positive rationals, to 1/2^k resolution relative to size
fn q_sqrt_floor(q: &Q) -> Q {
    let scale = BigInt::one() << 64u32;
    let num = q.numer() * &scale * &scale;
    let v = (num / q.denom()).sqrt();
    Q::new(v, scale)
}

fn q_sqrt_ceil(q: &Q) -> Q {
    q_sqrt_floor(q) + Q::new(BigInt::one(), BigInt::one() << 64u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn sturm_counts_roots() {
        // (x-1)(x-2)(x+3)
        let f = poly(&[-1, 1]).mul(&poly(&[-2, 1])).mul(&poly(&[3, 1]));
        let c = SturmChain::new(&f);
        assert_eq!(c.count_real(), 3);
        assert_eq!(c.count_in(&Q::from_integer(0.into()), &Q::from_integer(2.into())), 2);
        assert_eq!(c.count_above(&Q::from_integer(1.into())), 1);
        assert_eq!(SturmChain::new(&poly(&[1, 0, 1])).count_real(), 0);
    }

    #[test]
    fn golden_ratio_square() {
        let f = poly(&[1, -7, 1]);
        let r = AlgebraicReal::max_real_root(&f).unwrap();
        let expect = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
        assert!((r.to_f64() - expect).abs() < 1e-8);
        assert_eq!(r.minimal_polynomial(), &f);
        let s = r.positive_sqrt().unwrap();
        // sqrt((7+3√5)/2) = (3+√5)/2, minimal polynomial x^2 - 3x + 1
        assert_eq!(s.minimal_polynomial(), &poly(&[1, -3, 1]));
    }

    #[test]
    fn exact_comparisons() {
        let a = AlgebraicReal::max_real_root(&poly(&[-2, 0, 1])).unwrap();
        let b = AlgebraicReal::max_real_root(&poly(&[-2, 0, 1])).unwrap().refined(&Q::new(1.into(), 1000000000000i64.into()));
        assert_eq!(a, b);
        let c = AlgebraicReal::from_rational(Q::new(3.into(), 2.into()));
        assert!(c > a);
        assert!(AlgebraicReal::one() < a);
        assert_eq!(AlgebraicReal::from_rational(Q::new(9.into(), 4.into())).positive_sqrt().unwrap(), c);
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(fmt_decimal(&Q::new((-1).into(), 3.into()), 4), "-0.3333");
        assert_eq!(fmt_decimal(&Q::new(2.into(), 3.into()), 2), "0.67");
    }

    #[test]
    fn json_round_trip() {
        let r = AlgebraicReal::max_real_root(&poly(&[1, -7, 1])).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: AlgebraicReal = serde_json::from_str(&s).unwrap();
        assert_eq!(r, back);
    }
}
