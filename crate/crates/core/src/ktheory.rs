//! Grothendieck-group invariants: Coxeter matrices, the Euler form, entropy
//! closed forms, trace growth and K-theoretic Calabi-Yau candidates.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{ext_dims, BoundQuiverAlgebra, Representation};
use crate::linalg::factor::factor;
use crate::linalg::spectral::is_cyclotomic;
use crate::linalg::{char_poly, is_signed_permutation, jordan_growth_rate, spectral_radius, trace_power_sequence, trace_roots};
use crate::linalg::{AlgebraicReal, ExactMatrix};
use crate::{Error, Result, Q};

pub const DEFAULT_P_MAX: usize = 24;

/// `C⁻¹`, provided `det C = ±1`.
pub fn unimodular_inverse(c: &ExactMatrix) -> Result<ExactMatrix> {
    c.require_square()?;
    c.require_integral()?;
    let det = c.det()?;
    if det.abs() != Q::one() {
        return Err(Error::NotUnimodular { det: det.to_string() });
    }
    Ok(c.inverse().expect("unimodular matrix is invertible"))
}

fn same_shape(x: &ExactMatrix, y: &ExactMatrix) -> Result<()> {
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::Shape(format!(
            "{}x{} and {}x{} matrices",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(())
}

/// `Φ = −Cᵀ C⁻¹`.
pub fn coxeter_matrix(c: &ExactMatrix) -> Result<ExactMatrix> {
    let inv = unimodular_inverse(c)?;
    Ok(c.transpose().mul(&inv).neg())
}

/// `Ψ_M = −C_M C_A⁻¹`. With `C_M = C_Aᵀ` (the bimodule `A*`) this is `Φ`.
pub fn dual_coxeter_matrix(c_m: &ExactMatrix, c_a: &ExactMatrix) -> Result<ExactMatrix> {
    let inv = unimodular_inverse(c_a)?;
    same_shape(c_m, c_a)?;
    Ok(c_m.mul(&inv).neg())
}

/// Ringel form `⟨x, y⟩ = xᵀ C⁻ᵀ y`.
pub fn euler_form(c: &ExactMatrix, x: &[i64], y: &[i64]) -> Result<BigInt> {
    let inv = unimodular_inverse(c)?;
    if x.len() != c.rows() || y.len() != c.rows() {
        return Err(Error::Shape(format!(
            "dimension vectors of length {} and {} for rank {}",
            x.len(),
            y.len(),
            c.rows()
        )));
    }
    let to_q = |v: &[i64]| v.iter().map(|&a| Q::from_integer(a.into())).collect::<Vec<_>>();
    let w = inv.transpose().mul_vec(&to_q(y));
    let s: Q = to_q(x).iter().zip(&w).map(|(a, b)| a * b).sum();
    Ok(s.to_integer())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SerreBasis {
    Simples,
    Projectives,
}

/// Matrix of `[S]` on `K_0`: `Cᵀ C⁻¹` on simples, `C⁻¹ Cᵀ` on projectives.
pub fn serre_matrix(c: &ExactMatrix, basis: SerreBasis) -> Result<ExactMatrix> {
    let inv = unimodular_inverse(c)?;
    Ok(match basis {
        SerreBasis::Simples => c.transpose().mul(&inv),
        SerreBasis::Projectives => inv.mul(&c.transpose()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CyStatus {
    KTheoreticCandidate,
    DerivedConfirmed,
}

/// `(C⁻¹Cᵀ)^p = sign · P_σ`. The shift `q` is only known once the derived
/// statement `ν^p(A) ≅ A[q]` has been checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyCandidate {
    pub p: usize,
    pub sign: i8,
    pub permutation: Vec<usize>,
    pub q: Option<i64>,
    pub status: CyStatus,
}

impl CyCandidate {
    pub fn is_confirmed(&self) -> bool {
        self.status == CyStatus::DerivedConfirmed && self.q.is_some()
    }

    pub fn confirmed(mut self, q: i64) -> Self {
        self.q = Some(q);
        self.status = CyStatus::DerivedConfirmed;
        self
    }
}

/// Least `p ≤ p_max` with `(C⁻¹Cᵀ)^p` a signed permutation matrix.
pub fn detect_twisted_cy(c: &ExactMatrix, p_max: usize) -> Result<Option<CyCandidate>> {
    let s = serre_matrix(c, SerreBasis::Projectives)?;
    let mut pw = s.clone();
    for p in 1..=p_max {
        if p > 1 {
            pw = pw.mul(&s);
        }
        if let Some((sign, permutation)) = is_signed_permutation(&pw) {
            return Ok(Some(CyCandidate {
                p,
                sign,
                permutation,
                q: None,
                status: CyStatus::KTheoreticCandidate,
            }));
        }
    }
    Ok(None)
}

/// Whether every eigenvalue of `[S]` is a root of unity.
pub fn serre_eigenvalues_are_roots_of_unity(c: &ExactMatrix) -> Result<bool> {
    let p = char_poly(&serre_matrix(c, SerreBasis::Projectives)?)?;
    Ok(factor(&p).iter().all(|(g, _)| is_cyclotomic(g)))
}

/// Affine function `h_t = slope·t + log ρ`; `ρ = 1` is the constant-zero line.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyLine {
    pub slope: Q,
    pub rho: AlgebraicReal,
}

impl EntropyLine {
    pub fn constant(&self) -> f64 {
        if self.rho.is_one() {
            0.0
        } else {
            self.rho.ln()
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        crate::linalg::roots::q_to_f64(&self.slope) * t + self.constant()
    }
}

impl Serialize for EntropyLine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EntropyLine", 3)?;
        st.serialize_field("slope", &self.slope.to_string())?;
        st.serialize_field("rho", &self.rho)?;
        st.serialize_field("log_rho", &self.constant())?;
        st.end()
    }
}

/// What is known about the Serre functor of an algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    TwistedCy(CyCandidate),
    /// `d`-representation-infinite; `window` is the verified window, if any.
    RepInfinite {
        d: usize,
        coxeter: ExactMatrix,
        window: Option<usize>,
    },
}

/// `ρ(Φ)` and `ρ(Φ⁻¹)`, checked equal through the reciprocal characteristic polynomial.
pub fn reciprocal_spectral_radii(phi: &ExactMatrix) -> Result<(AlgebraicReal, AlgebraicReal)> {
    let inv = unimodular_inverse(phi)?;
    let (f, g) = (char_poly(phi)?, char_poly(&inv)?);
    if f.reversed().primitive() != g.primitive() {
        return Err(Error::Shape("char poly of the inverse is not the reversal".into()));
    }
    let (r, s) = (spectral_radius(phi)?, spectral_radius(&inv)?);
    if r != s {
        return Err(Error::Shape(format!("ρ(Φ) = {r} differs from ρ(Φ⁻¹) = {s}")));
    }
    Ok((r, s))
}

/// `(h_t(S), h_t(S⁻¹))` from a confirmed classification.
pub fn entropy_closed_form(cl: &Classification) -> Result<(EntropyLine, EntropyLine)> {
    match cl {
        Classification::TwistedCy(c) => {
            let q = match (c.is_confirmed(), c.q) {
                (true, Some(q)) => q,
                _ => return Err(Error::Unconfirmed(format!("CY candidate with p = {} has no confirmed shift", c.p))),
            };
            let slope = Q::new(q.into(), BigInt::from(c.p));
            Ok((
                EntropyLine {
                    slope: slope.clone(),
                    rho: AlgebraicReal::one(),
                },
                EntropyLine {
                    slope: -slope,
                    rho: AlgebraicReal::one(),
                },
            ))
        }
        Classification::RepInfinite { d, coxeter, window } => {
            if window.is_none() {
                return Err(Error::Unconfirmed(format!("{d}-representation-infiniteness not verified")));
            }
            let (r, s) = reciprocal_spectral_radii(coxeter)?;
            let d = Q::from_integer((*d).into());
            Ok((EntropyLine { slope: d.clone(), rho: r }, EntropyLine { slope: -d, rho: s }))
        }
    }
}

/// `h^pol_t(S)`: 0 for twisted CY, `s(Φ)` for d-RI (checked against `s(Φ⁻¹)`).
pub fn polynomial_entropy_closed_form(cl: &Classification) -> Result<usize> {
    match cl {
        Classification::TwistedCy(c) if c.is_confirmed() => Ok(0),
        Classification::TwistedCy(c) => Err(Error::Unconfirmed(format!("CY candidate with p = {} has no confirmed shift", c.p))),
        Classification::RepInfinite { window: None, d, .. } => {
            Err(Error::Unconfirmed(format!("{d}-representation-infiniteness not verified")))
        }
        Classification::RepInfinite { coxeter, .. } => {
            let s = jordan_growth_rate(coxeter)?;
            let s_inv = jordan_growth_rate(&unimodular_inverse(coxeter)?)?;
            if s != s_inv {
                return Err(Error::Shape(format!("s(Φ) = {s} differs from s(Φ⁻¹) = {s_inv}")));
            }
            Ok(s)
        }
    }
}

/// `tr(C_A⁻¹ (C_M C_A⁻¹)^n C_M)`.
pub fn hh_superdimension_trace(c_m: &ExactMatrix, c_a: &ExactMatrix, n: u32) -> Result<BigInt> {
    let inv = unimodular_inverse(c_a)?;
    same_shape(c_m, c_a)?;
    let t = inv.mul(&c_m.mul(&inv).pow(n)).mul(c_m).trace();
    Ok(t.to_integer())
}

/// `ρ(Ψ_M)` with its logarithm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogBound {
    pub rho: AlgebraicReal,
    pub log: f64,
}

/// Lower bound `log ρ(Ψ_M)` for the Hochschild entropy of `M`.
pub fn yomdin_bound(c_m: &ExactMatrix, c_a: &ExactMatrix) -> Result<LogBound> {
    let rho = spectral_radius(&dual_coxeter_matrix(c_m, c_a)?)?;
    let log = if rho.is_zero() { f64::NEG_INFINITY } else { rho.ln() };
    Ok(LogBound { rho, log })
}

/// `|tr Mⁿ|^{1/n}` for `n = 1..=n_max`.
pub fn wimmer_profile(m: &ExactMatrix, n_max: usize) -> Result<Vec<f64>> {
    Ok(trace_roots(&trace_power_sequence(m, n_max)?))
}

/// The `n ≤ n_max` whose trace root is closest to `ρ(M)`, with the gap.
pub fn wimmer_best(m: &ExactMatrix, n_max: usize) -> Result<(usize, f64)> {
    let rho = spectral_radius(m)?.to_f64();
    let prof = wimmer_profile(m, n_max)?;
    Ok(prof
        .iter()
        .enumerate()
        .map(|(i, r)| (i + 1, (r - rho).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((0, f64::INFINITY)))
}

/// Both sides of `Σ (−1)^l dim Ext^l(X, Y) = ⟨dim X, dim Y⟩`; `None` when
/// some resolution is longer than `gl_bound`.
pub fn hrr_sides(a: &BoundQuiverAlgebra, x: &Representation, y: &Representation, gl_bound: usize) -> Result<Option<(BigInt, BigInt)>> {
    let c = a.cartan_matrix();
    let ext = ext_dims(a, x, y, gl_bound + 1);
    if ext.last().is_some_and(|&e| e != 0) {
        return Ok(None);
    }
    let lhs: BigInt = ext
        .iter()
        .enumerate()
        .map(|(l, &e)| if l % 2 == 0 { BigInt::from(e) } else { -BigInt::from(e) })
        .sum();
    let dv = |r: &Representation| r.dims().iter().map(|&d| d as i64).collect::<Vec<_>>();
    let rhs = euler_form(&c, &dv(x), &dv(y))?;
    Ok(Some((lhs, rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntPolynomial;

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(rows).unwrap()
    }

    fn kron_cartan(m: i64) -> ExactMatrix {
        mat(&[&[1, 0], &[m, 1]])
    }

    #[test]
    fn coxeter_examples() {
        assert_eq!(coxeter_matrix(&ExactMatrix::identity(3)).unwrap(), ExactMatrix::identity(3).neg());
        assert_eq!(coxeter_matrix(&kron_cartan(1)).unwrap(), mat(&[&[0, -1], &[1, -1]]));
        assert_eq!(coxeter_matrix(&kron_cartan(2)).unwrap(), mat(&[&[3, -2], &[2, -1]]));
        assert_eq!(coxeter_matrix(&kron_cartan(3)).unwrap(), mat(&[&[8, -3], &[3, -1]]));
        assert!(matches!(coxeter_matrix(&mat(&[&[2]])), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn dual_coxeter_examples() {
        let c = kron_cartan(1);
        assert_eq!(dual_coxeter_matrix(&c, &c).unwrap(), ExactMatrix::identity(2).neg());
        assert_eq!(dual_coxeter_matrix(&c.transpose(), &c).unwrap(), coxeter_matrix(&c).unwrap());
        assert_eq!(dual_coxeter_matrix(&mat(&[&[1, 1], &[1, 1]]), &c).unwrap(), mat(&[&[0, -1], &[0, -1]]));
        assert!(dual_coxeter_matrix(&ExactMatrix::identity(3), &c).is_err());
    }

    #[test]
    fn euler_form_examples() {
        let c = kron_cartan(1);
        assert_eq!(euler_form(&c, &[1, 1], &[1, 0]).unwrap(), 1.into());
        assert_eq!(euler_form(&c, &[1, 0], &[0, 1]).unwrap(), (-1).into());
        // projective columns pair to coordinates
        let c3 = kron_cartan(3);
        assert_eq!(euler_form(&c3, &[1, 3], &[5, 7]).unwrap(), 5.into());
        assert_eq!(euler_form(&c3, &[0, 1], &[5, 7]).unwrap(), 7.into());
    }

    #[test]
    fn serre_matrices() {
        let c = kron_cartan(1);
        assert_eq!(serre_matrix(&c, SerreBasis::Projectives).unwrap(), mat(&[&[1, 1], &[-1, 0]]));
        let s = serre_matrix(&c, SerreBasis::Simples).unwrap();
        assert_eq!(s, coxeter_matrix(&c).unwrap().neg());
        let p = serre_matrix(&c, SerreBasis::Projectives).unwrap();
        assert_eq!(c.mul(&p), s.mul(&c));
        assert_eq!(serre_matrix(&ExactMatrix::identity(2), SerreBasis::Simples).unwrap(), ExactMatrix::identity(2));
    }

    #[test]
    fn cy_detection() {
        let one = detect_twisted_cy(&ExactMatrix::identity(1), 24).unwrap().unwrap();
        assert_eq!((one.p, one.sign, one.permutation), (1, 1, vec![0]));
        let a2 = detect_twisted_cy(&kron_cartan(1), 24).unwrap().unwrap();
        assert_eq!((a2.p, a2.sign, a2.permutation.clone()), (3, -1, vec![0, 1]));
        assert_eq!(a2.q, None);
        assert!(detect_twisted_cy(&kron_cartan(3), 24).unwrap().is_none());
        assert!(detect_twisted_cy(&kron_cartan(2), 24).unwrap().is_none());
        assert!(serre_eigenvalues_are_roots_of_unity(&kron_cartan(1)).unwrap());
        assert!(!serre_eigenvalues_are_roots_of_unity(&kron_cartan(3)).unwrap());
    }

    #[test]
    fn entropy_lines() {
        let cand = detect_twisted_cy(&kron_cartan(1), 24).unwrap().unwrap();
        assert!(entropy_closed_form(&Classification::TwistedCy(cand.clone())).is_err());
        let cl = Classification::TwistedCy(cand.confirmed(1));
        let (h, h_inv) = entropy_closed_form(&cl).unwrap();
        assert_eq!(h.slope, Q::new(1.into(), 3.into()));
        assert_eq!(h_inv.slope, Q::new((-1).into(), 3.into()));
        assert_eq!(h.constant(), 0.0);
        assert_eq!(polynomial_entropy_closed_form(&cl).unwrap(), 0);

        let kr = Classification::RepInfinite {
            d: 1,
            coxeter: coxeter_matrix(&kron_cartan(2)).unwrap(),
            window: Some(50),
        };
        let (h, _) = entropy_closed_form(&kr).unwrap();
        assert!(h.rho.is_one());
        assert_eq!(polynomial_entropy_closed_form(&kr).unwrap(), 1);

        let k3 = Classification::RepInfinite {
            d: 1,
            coxeter: coxeter_matrix(&kron_cartan(3)).unwrap(),
            window: Some(50),
        };
        let (h, h_inv) = entropy_closed_form(&k3).unwrap();
        assert_eq!(h.rho.minimal_polynomial(), &IntPolynomial::from_i64(&[1, -7, 1]));
        assert_eq!(h.rho, h_inv.rho);
        assert!((h.constant() - ((7.0 + 3.0 * 5f64.sqrt()) / 2.0).ln()).abs() < 1e-9);
        assert!((h.eval(1.0) - 1.0 - h.constant()).abs() < 1e-12);
        assert_eq!(polynomial_entropy_closed_form(&k3).unwrap(), 0);
        let unverified = Classification::RepInfinite {
            d: 1,
            coxeter: coxeter_matrix(&kron_cartan(3)).unwrap(),
            window: None,
        };
        assert!(matches!(entropy_closed_form(&unverified), Err(Error::Unconfirmed(_))));
    }

    #[test]
    fn hh_traces_and_bounds() {
        let c = kron_cartan(1);
        assert_eq!(hh_superdimension_trace(&c.transpose(), &c, 0).unwrap(), 1.into());
        assert_eq!(hh_superdimension_trace(&ExactMatrix::zeros(2, 2), &c, 3).unwrap(), 0.into());
        let c3 = kron_cartan(3);
        // C⁻¹(CᵀC⁻¹)Cᵀ is conjugate to Φ²
        let phi = coxeter_matrix(&c3).unwrap();
        let direct = ExactMatrix::identity(2).mul(&phi.pow(2)).trace().to_integer();
        assert_eq!(hh_superdimension_trace(&c3.transpose(), &c3, 1).unwrap(), direct);
        assert_eq!(yomdin_bound(&c, &c).unwrap().log, 0.0);
        let b = yomdin_bound(&c3.transpose(), &c3).unwrap();
        assert!((b.log - ((7.0 + 3.0 * 5f64.sqrt()) / 2.0).ln()).abs() < 1e-9);
        assert_eq!(yomdin_bound(&kron_cartan(2).transpose(), &kron_cartan(2)).unwrap().log, 0.0);
    }

    #[test]
    fn wimmer_on_three_kronecker() {
        let phi = coxeter_matrix(&kron_cartan(3)).unwrap();
        let (n, gap) = wimmer_best(&phi, 40).unwrap();
        assert!(n >= 1 && gap < 0.05);
    }
}
