use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ExactMatrix;
use crate::Q;

/// Univariate polynomial with integer coefficients, ascending degree.
///
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// has an empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - c`
    pub fn linear(c: BigInt) -> Self {
        Self::new(vec![-c, BigInt::one()])
    }

    pub fn x_pow(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^deg · f(1/x)`: coefficient reversal.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `f(-x)`
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `f(x^2)`
    pub fn compose_square(&self) -> Self {
        let mut c = vec![BigInt::zero(); self.coeffs.len() * 2];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[2 * i] = a.clone();
        }
        Self::new(c)
    }

    /// Trailing power of `x` dividing the polynomial (0 for a nonzero constant term).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + Q::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    /// Evaluates at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        let mut acc = ExactMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            let cq = Q::from_integer(c.clone());
            for i in 0..n {
                acc[(i, i)] += &cq;
            }
        }
        acc
    }

    pub fn to_q(&self) -> Vec<Q> {
        self.coeffs.iter().cloned().map(Q::from_integer).collect()
    }

    /// Primitive integer polynomial proportional to a rational one.
    pub fn from_q(c: &[Q]) -> Self {
        let l = c
            .iter()
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        Self::new(c.iter().map(|q| (q * Q::from_integer(l.clone())).to_integer()).collect()).primitive()
    }

    /// Exact quotient `self / d` over the integers, if `d` divides `self` in `Z[x]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (quo, rem) = qp_divrem(&self.to_q(), &d.to_q());
        if !rem.is_empty() || quo.iter().any(|q| !q.is_integer()) {
            return None;
        }
        Some(Self::new(quo.into_iter().map(|q| q.to_integer()).collect()))
    }

    pub fn divides(&self, f: &Self) -> bool {
        let (_, rem) = qp_divrem(&f.to_q(), &self.to_q());
        rem.is_empty()
    }

    /// Primitive gcd over the rationals.
    pub fn gcd(&self, o: &Self) -> Self {
        Self::from_q(&qp_gcd(&self.to_q(), &o.to_q()))
    }

    /// Square-free decomposition `f = c · ∏ g_k^k` (Yun), primitive factors of
    /// positive degree only.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let f = self.primitive();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let fq = f.to_q();
        let dfq = qp_derivative(&fq);
        let a = qp_gcd(&fq, &dfq);
        let mut b = qp_divrem(&fq, &a).0;
        let mut c = qp_divrem(&dfq, &a).0;
        let mut out = Vec::new();
        let mut k = 1;
        while b.len() > 1 {
            let d = qp_sub(&c, &qp_derivative(&b));
            let a = qp_gcd(&b, &d);
            if a.len() > 1 {
                out.push((Self::from_q(&a), k));
            }
            b = qp_divrem(&b, &a).0;
            c = qp_divrem(&d, &a).0;
            k += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors (primitive).
    pub fn squarefree_part(&self) -> Self {
        let f = self.primitive();
        if f.degree().unwrap_or(0) == 0 {
            return f;
        }
        f.div_exact_q(&f.gcd(&f.derivative())).primitive()
    }

    // Division over Q where the result is rescaled to a primitive integer
    // polynomial; intended for exact divisions up to a constant.
    fn div_exact_q(&self, d: &Self) -> Self {
        let (quo, rem) = qp_divrem(&self.to_q(), &d.to_q());
        debug_assert!(rem.is_empty());
        if quo.is_empty() {
            return Self::zero();
        }
        Self::from_q(&quo)
    }

    pub fn bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, String> {
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

pub(crate) fn bigint_to_f64(b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(if b.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Natural log of |b| for arbitrarily large integers; `-inf` for zero.
pub fn ln_bigint(b: &BigInt) -> f64 {
    let a = b.abs();
    if a.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = a.bits();
    if bits < 1000 {
        return bigint_to_f64(&a).ln();
    }
    let shift = bits - 64;
    let top: BigInt = &a >> shift;
    bigint_to_f64(&top).ln() + (shift as f64) * std::f64::consts::LN_2
}

// ---- rational polynomial helpers (ascending coefficient vectors) ----

pub(crate) fn qp_trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub(crate) fn qp_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = qp_trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = qp_trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = b.last().unwrap().clone();
    let mut quo = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            if !c.is_zero() {
                r[shift + i] -= &f * c;
            }
        }
        quo[shift] = f;
        r.pop();
        r = qp_trim(r);
    }
    (qp_trim(quo), r)
}

pub(crate) fn qp_derivative(a: &[Q]) -> Vec<Q> {
    qp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub(crate) fn qp_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let z = Q::zero();
    qp_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub(crate) fn qp_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = qp_trim(a.to_vec());
    let mut y = qp_trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = qp_divrem(&x, &y);
        // keep coefficients small
        x = y;
        y = if r.is_empty() {
            r
        } else {
            IntPolynomial::from_q(&r).to_q()
        };
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_convention() {
        assert_eq!(IntPolynomial::from_i64(&[1, -7, 1]).to_string(), "x^2 - 7x + 1");
        assert_eq!(IntPolynomial::from_i64(&[1, 1, 1]).to_string(), "x^2 + x + 1");
        assert_eq!(IntPolynomial::from_i64(&[-1]).to_string(), "-1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn squarefree_decomposition_of_repeated_roots() {
        // (x-1)^2 (x+2)
        let f = IntPolynomial::from_i64(&[-1, 1]).pow(2).mul(&IntPolynomial::from_i64(&[2, 1]));
        let d = f.squarefree_decomposition();
        assert_eq!(
            d,
            vec![
                (IntPolynomial::from_i64(&[2, 1]), 1),
                (IntPolynomial::from_i64(&[-1, 1]), 2)
            ]
        );
        assert_eq!(
            f.squarefree_part(),
            IntPolynomial::from_i64(&[-2, 1, 1])
        );
    }

    #[test]
    fn exact_division() {
        let f = IntPolynomial::from_i64(&[-1, 0, 1]);
        let g = IntPolynomial::from_i64(&[1, 1]);
        assert_eq!(f.div_exact(&g), Some(IntPolynomial::from_i64(&[-1, 1])));
        assert_eq!(f.div_exact(&IntPolynomial::from_i64(&[1, 2])), None);
    }

    #[test]
    fn ln_of_huge_integer() {
        let b = BigInt::from(3).pow(2000u32);
        let expect = 2000.0 * 3f64.ln();
        assert!((ln_bigint(&b) - expect).abs() < 1e-9 * expect);
    }
}
