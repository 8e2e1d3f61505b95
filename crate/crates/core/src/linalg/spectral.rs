//! Characteristic polynomials, exact spectral radii and Jordan growth rates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factor;
use super::poly::ln_bigint;
use super::roots::{AlgebraicReal, SturmChain};
use super::{ExactMatrix, IntPolynomial};
use crate::{Error, Result, Q};

/// `det(xI - M)` for an integer matrix (Berkowitz, division-free).
pub fn char_poly(m: &ExactMatrix) -> Result<IntPolynomial> {
    m.require_square()?;
    m.require_integral()?;
    let c = char_poly_q(m);
    Ok(IntPolynomial::new(c.into_iter().map(|q| q.to_integer()).collect()))
}

/// Berkowitz over the rationals; ascending coefficients of `det(xI - M)`.
pub(crate) fn char_poly_q(m: &ExactMatrix) -> Vec<Q> {
    let n = m.rows();
    if n == 0 {
        return vec![Q::one()];
    }
    // descending coefficients
    let mut v = vec![Q::one(), -m[(0, 0)].clone()];
    for r in 1..n {
        // t = (1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C)
        let mut t = Vec::with_capacity(r + 2);
        t.push(Q::one());
        t.push(-m[(r, r)].clone());
        let mut col: Vec<Q> = (0..r).map(|i| m[(i, r)].clone()).collect();
        for k in 0..r {
            let dot = (0..r).fold(Q::zero(), |acc, j| acc + &m[(r, j)] * &col[j]);
            t.push(-dot);
            if k + 1 < r {
                col = (0..r)
                    .map(|i| (0..r).fold(Q::zero(), |acc, j| acc + &m[(i, j)] * &col[j]))
                    .collect();
            }
        }
        let mut next = vec![Q::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                if !vj.is_zero() {
                    *slot += &t[i - j] * vj;
                }
            }
        }
        v = next;
    }
    v.reverse();
    v
}

fn companion(g: &IntPolynomial) -> ExactMatrix {
    let m = g.degree().unwrap();
    let lc = Q::from_integer(g.lc());
    let mut c = ExactMatrix::zeros(m, m);
    for i in 1..m {
        c[(i, i - 1)] = Q::one();
    }
    for i in 0..m {
        c[(i, m - 1)] = -Q::from_integer(g.coeffs()[i].clone()) / &lc;
    }
    c
}

/// Whether an irreducible integer polynomial is a cyclotomic polynomial.
pub fn is_cyclotomic(g: &IntPolynomial) -> bool {
    let g = g.primitive();
    let Some(m) = g.degree() else { return false };
    if m == 0 || !g.lc().is_one() || !g.coeffs()[0].abs().is_one() {
        return false;
    }
    // phi(k) >= sqrt(k/2), so k <= 2 m^2
    (1..=2 * m * m + 2).any(|k| {
        let xk = IntPolynomial::x_pow(k).sub(&IntPolynomial::one());
        g.divides(&xk)
    })
}

/// Largest modulus among the complex roots of an irreducible polynomial.
pub fn factor_modulus(g: &IntPolynomial) -> AlgebraicReal {
    let g = g.primitive();
    if g.degree() == Some(1) && g.coeffs()[0].is_zero() {
        return AlgebraicReal::zero();
    }
    if is_cyclotomic(&g) {
        return AlgebraicReal::one();
    }
    if g.degree() == Some(1) {
        let c = g.coeffs();
        return AlgebraicReal::from_rational(Q::new(c[0].abs(), c[1].clone()));
    }
    let c = companion(&g);
    let r = IntPolynomial::from_q(&char_poly_q(&c.kron(&c))).squarefree_part();

    let pos = AlgebraicReal::max_real_root(&g);
    let neg = AlgebraicReal::max_real_root(&g.negate_variable());
    let real = match (pos, neg) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    };
    if let Some(mut rho) = real {
        let chain = SturmChain::new(&r);
        loop {
            let (lo, hi) = rho.interval();
            if lo.is_positive() {
                let (lo2, hi2) = (lo * lo, hi * hi);
                if chain.count_in(&lo2, &hi2) == 1 {
                    if chain.count_above(&hi2) == 0 {
                        return rho;
                    }
                    break;
                }
            }
            let w = (hi - lo) / Q::from_integer(8.into());
            rho.refine_to(&w);
        }
    }
    // a non-real root dominates: rho^2 is the largest real root of the product polynomial
    let rho2 = AlgebraicReal::max_real_root(&r).expect("|z|^2 is always a real root");
    rho2.positive_sqrt().expect("positive")
}

/// Spectral radius as an exact real algebraic number (0 for nilpotent input).
pub fn spectral_radius(m: &ExactMatrix) -> Result<AlgebraicReal> {
    if m.rows() == 0 {
        return Err(Error::Shape("spectral radius of the empty matrix".into()));
    }
    let p = char_poly(m)?;
    Ok(factor(&p)
        .iter()
        .map(|(g, _)| factor_modulus(g))
        .max()
        .unwrap_or_else(AlgebraicReal::zero))
}

/// One eigenvalue class: the roots of one irreducible factor of the
/// characteristic polynomial. Galois-conjugate roots share Jordan structure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenClass {
    pub factor: IntPolynomial,
    pub multiplicity: usize,
    /// `(block size, number of blocks)` per root of the factor, ascending size.
    pub blocks: Vec<(usize, usize)>,
    /// Largest modulus among the roots of `factor`.
    pub modulus: AlgebraicReal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenstructureReport {
    pub classes: Vec<EigenClass>,
    pub spectral_radius: AlgebraicReal,
}

impl EigenstructureReport {
    /// `s(M)`: largest block size at maximal modulus minus one.
    pub fn growth_rate(&self) -> Result<usize> {
        if self.spectral_radius.is_zero() {
            return Err(Error::UndefinedGrowth);
        }
        Ok(self
            .classes
            .iter()
            .filter(|c| c.modulus == self.spectral_radius)
            .flat_map(|c| c.blocks.iter().map(|b| b.0))
            .max()
            .unwrap_or(1)
            - 1)
    }

    /// Sum of size × count × factor degree over all classes.
    pub fn total_dimension(&self) -> usize {
        self.classes
            .iter()
            .map(|c| {
                let d = c.factor.degree().unwrap_or(0);
                c.blocks.iter().map(|(s, k)| s * k * d).sum::<usize>()
            })
            .sum()
    }
}

/// Jordan block structure of every eigenvalue class, computed over the
/// rationals from the ranks of `g(M)^k`.
pub fn eigenstructure(m: &ExactMatrix) -> Result<EigenstructureReport> {
    let p = char_poly(m)?;
    let n = m.rows();
    let mut classes = Vec::new();
    for (g, mult) in factor(&p) {
        let d = g.degree().unwrap();
        let gm = g.eval_matrix(m);
        // nullity of g(M)^k = d * sum over blocks of min(size, k)
        let mut nullities = vec![0usize];
        let mut pw = ExactMatrix::identity(n);
        loop {
            pw = pw.mul(&gm);
            let nu = n - pw.rank();
            if nu == *nullities.last().unwrap() || nu == mult * d {
                if nu != *nullities.last().unwrap() {
                    nullities.push(nu);
                }
                break;
            }
            nullities.push(nu);
        }
        // at_least[k] = number of blocks of size >= k+1
        let at_least: Vec<usize> = nullities.windows(2).map(|w| (w[1] - w[0]) / d).collect();
        let mut blocks = Vec::new();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            let exact = at_least[k] - next;
            if exact > 0 {
                blocks.push((k + 1, exact));
            }
        }
        classes.push(EigenClass {
            modulus: factor_modulus(&g),
            factor: g,
            multiplicity: mult,
            blocks,
        });
    }
    let spectral_radius = classes
        .iter()
        .map(|c| c.modulus.clone())
        .max()
        .ok_or_else(|| Error::Shape("spectral data of the empty matrix".into()))?;
    Ok(EigenstructureReport {
        classes,
        spectral_radius,
    })
}

/// `s(M)` = (largest Jordan block at eigenvalues of maximal modulus) − 1.
pub fn jordan_growth_rate(m: &ExactMatrix) -> Result<usize> {
    eigenstructure(m)?.growth_rate()
}

/// `Some((ε, σ))` when `M = ε P_σ` for a single global sign and a permutation matrix.
pub fn is_signed_permutation(m: &ExactMatrix) -> Option<(i8, Vec<usize>)> {
    if !m.is_square() {
        return None;
    }
    if let Some(p) = m.as_permutation() {
        return Some((1, p));
    }
    m.neg().as_permutation().map(|p| (-1, p))
}

/// Exact `tr(M^n)` for `n = 1..=count`.
pub fn trace_power_sequence(m: &ExactMatrix, count: usize) -> Result<Vec<BigInt>> {
    m.require_square()?;
    m.require_integral()?;
    let mut out = Vec::with_capacity(count);
    let mut pw = m.clone();
    for k in 0..count {
        if k > 0 {
            pw = pw.mul(m);
        }
        out.push(pw.trace().to_integer());
    }
    Ok(out)
}

/// `|tr(M^n)|^{1/n}` approximations for a trace sequence starting at `n = 1`.
pub fn trace_roots(traces: &[BigInt]) -> Vec<f64> {
    traces
        .iter()
        .enumerate()
        .map(|(i, t)| {
            if t.is_zero() {
                0.0
            } else {
                (ln_bigint(t) / (i + 1) as f64).exp()
            }
        })
        .collect()
}
