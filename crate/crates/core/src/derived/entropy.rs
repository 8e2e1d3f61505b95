//! Entropy and polynomial entropy of the Serre functor from the cohomology
//! of `S^n(A)`: `ε_t(n) = Σ_l dim Hom(A, S^n(A)[l]) e^{−lt} = Σ_l dim H^l(S^n A) e^{−lt}`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::ktheory::unimodular_inverse;
use crate::linalg::ExactMatrix;
use crate::{Error, Result, Q};

use super::complex::{log_sum_exp, CohomologyProfile};
use super::serre::{DerivedCategory, SerreDimensions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Computed from a minimal complex.
    Homological,
    /// Predicted from the class in K_0 and the stalk degree `−d(n−1)`,
    /// after the prediction matched every homological term.
    KShortcut,
}

/// Total cohomology dimension of `S^n(A)` per degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SerreTerm {
    pub n: usize,
    #[serde(serialize_with = "ser_degrees")]
    pub degrees: Vec<(i64, BigInt)>,
    pub source: Source,
}

impl SerreTerm {
    fn from_profile(n: usize, h: &CohomologyProfile) -> Self {
        Self {
            n,
            degrees: h.degrees.iter().map(|(l, v)| (*l, BigInt::from(v.iter().sum::<usize>()))).collect(),
            source: Source::Homological,
        }
    }

    pub fn inf(&self) -> Option<i64> {
        self.degrees.first().map(|d| d.0)
    }

    pub fn sup(&self) -> Option<i64> {
        self.degrees.last().map(|d| d.0)
    }

    /// `log ε_t`.
    pub fn log_epsilon(&self, t: f64) -> f64 {
        let terms: Vec<f64> = self.degrees.iter().map(|(l, d)| big_ln(d) - *l as f64 * t).collect();
        log_sum_exp(&terms)
    }
}

fn big_ln(x: &BigInt) -> f64 {
    match x.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let bits = x.bits();
            let shift = bits.saturating_sub(60);
            (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

fn ser_degrees<S: Serializer>(v: &[(i64, BigInt)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(l, d)| (l, d.to_string())))
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreSeries {
    pub requested: usize,
    pub terms: Vec<SerreTerm>,
    /// Size that the first homologically uncomputed power would have needed.
    pub budget_needed: Option<usize>,
}

impl SerreSeries {
    pub fn is_complete(&self) -> bool {
        self.terms.len() >= self.requested
    }

    pub fn homological_len(&self) -> usize {
        self.terms.iter().take_while(|t| t.source == Source::Homological).count()
    }

    pub fn dimensions(&self) -> SerreDimensions {
        let seq = |f: fn(&SerreTerm) -> Option<i64>| {
            self.terms
                .iter()
                .map(|t| Q::new((-f(t).unwrap_or(0)).into(), (t.n as i64).into()))
                .collect()
        };
        SerreDimensions {
            upper: seq(SerreTerm::inf),
            lower: seq(SerreTerm::sup),
            truncated: !self.is_complete(),
        }
    }
}

/// `S^n(A)` for `n = 1..=n_max`: homologically within the budget and, when
/// `shortcut_d` is given, continued through K_0 for an algebra whose powers
/// are stalks in degree `−d(n−1)`.
pub fn serre_series(dc: &DerivedCategory, n_max: usize, shortcut_d: Option<usize>) -> Result<SerreSeries> {
    let powers = dc.serre_power_profile(n_max);
    let mut terms: Vec<SerreTerm> = powers
        .profiles
        .iter()
        .enumerate()
        .map(|(i, h)| SerreTerm::from_profile(i + 1, h))
        .collect();
    if let Some(d) = shortcut_d {
        if terms.len() < n_max {
            let predicted = k_shortcut_terms(&dc.algebra().cartan_matrix(), d, n_max)?;
            let agrees = terms.iter().zip(&predicted).all(|(t, p)| t.degrees == p.degrees);
            if agrees {
                let have = terms.len();
                terms.extend(predicted.into_iter().skip(have).take_while(|p| !p.degrees.is_empty()));
            }
        }
    }
    Ok(SerreSeries {
        requested: n_max,
        terms,
        budget_needed: powers.truncated,
    })
}

/// K_0 prediction: `[S^n A] = (CᵀC⁻¹)^n C·𝟙` concentrated in degree
/// `−d(n−1)`. Terms whose predicted dimensions turn negative are empty.
pub fn k_shortcut_terms(c: &ExactMatrix, d: usize, n_max: usize) -> Result<Vec<SerreTerm>> {
    let s = c.transpose().mul(&unimodular_inverse(c)?);
    let ones = vec![Q::from_integer(1.into()); c.cols()];
    let mut class = c.mul_vec(&ones);
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        class = s.mul_vec(&class);
        let l = -((d * (n - 1)) as i64);
        let sign = if l.rem_euclid(2) == 0 { 1 } else { -1 };
        let dims: Vec<BigInt> = class.iter().map(|x| x.to_integer() * sign).collect();
        let degrees = if dims.iter().any(Signed::is_negative) {
            Vec::new()
        } else {
            let total: BigInt = dims.iter().sum();
            if total.is_zero() {
                Vec::new()
            } else {
                vec![(l, total)]
            }
        };
        out.push(SerreTerm {
            n,
            degrees,
            source: Source::KShortcut,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyEstimate {
    #[serde(serialize_with = "ser_q")]
    pub t: Vec<Q>,
    /// `values[i][n − 1] = (1/n) log ε_{t_i}(n)`.
    pub values: Vec<Vec<f64>>,
    pub sources: Vec<Source>,
}

impl EntropyEstimate {
    pub fn last(&self, i: usize) -> Option<f64> {
        self.values.get(i)?.last().copied()
    }
}

fn ser_q<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub fn q_to_f64(q: &Q) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

pub fn entropy_estimate(series: &SerreSeries, t_grid: &[Q]) -> EntropyEstimate {
    EntropyEstimate {
        t: t_grid.to_vec(),
        values: t_grid
            .iter()
            .map(|t| {
                let t = q_to_f64(t);
                series.terms.iter().map(|term| term.log_epsilon(t) / term.n as f64).collect()
            })
            .collect(),
        sources: series.terms.iter().map(|t| t.source).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyEntropyEstimate {
    /// `(n, (log ε_t(n) − n h_t) / log n)` for `n ≥ 2`.
    pub sequence: Vec<(usize, f64)>,
    /// Slope of the upper envelope of `log ε_t(n) − n h_t` against `log n`.
    pub estimate: f64,
    /// The two envelope points, one per half of the range.
    pub window: (usize, usize),
}

pub const MIN_POLY_TERMS: usize = 10;

/// The residual `r(n) = log ε_t(n) − n h_t` is maximised separately over
/// the two halves of `1..=N`; the estimate is the slope through the two
/// maxima in `log n`. Limsup semantics: bounded oscillation (twisted CY,
/// period at most `N/2`) gives 0, while `r ~ s log n` gives `s`.
pub fn polynomial_entropy_estimate(series: &SerreSeries, t: f64, h_t: f64) -> Result<PolyEntropyEstimate> {
    let n_terms = series.terms.len();
    if n_terms < MIN_POLY_TERMS {
        return Err(Error::Shape(format!("need at least {MIN_POLY_TERMS} powers, have {n_terms}")));
    }
    let residual = |term: &SerreTerm| term.log_epsilon(t) - term.n as f64 * h_t;
    let sequence = series
        .terms
        .iter()
        .filter(|term| term.n >= 2)
        .map(|term| (term.n, residual(term) / (term.n as f64).ln()))
        .collect();
    let envelope = |terms: &[SerreTerm]| {
        terms
            .iter()
            .map(|term| (term.n, residual(term)))
            .fold((0, f64::NEG_INFINITY), |best, x| if x.1 > best.1 { x } else { best })
    };
    let (first, second) = series.terms.split_at(n_terms / 2);
    let (n1, r1) = envelope(first);
    let (n2, r2) = envelope(second);
    Ok(PolyEntropyEstimate {
        sequence,
        estimate: (r2 - r1) / ((n2 as f64).ln() - (n1 as f64).ln()),
        window: (n1, n2),
    })
}

pub(crate) fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::Quiver;
    use crate::algebra::BoundQuiverAlgebra;
    use crate::derived::DEFAULT_BUDGET;

    fn algebra(v: &[&str], arrows: &[(&str, &str, &str)]) -> BoundQuiverAlgebra {
        BoundQuiverAlgebra::build("x", Quiver::from_labels(v, arrows).unwrap(), vec![], 30).unwrap()
    }

    fn kronecker(r: usize) -> BoundQuiverAlgebra {
        let names: Vec<String> = (0..r).map(|i| format!("a{i}")).collect();
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (n.as_str(), "1", "2")).collect();
        algebra(&["1", "2"], &arrows)
    }

    #[test]
    fn shortcut_matches_homological_terms() {
        for r in [2, 3] {
            let dc = DerivedCategory::new(&kronecker(r), DEFAULT_BUDGET).unwrap();
            let homological = serre_series(&dc, 4, None).unwrap();
            let predicted = k_shortcut_terms(&dc.algebra().cartan_matrix(), 1, 4).unwrap();
            assert_eq!(homological.terms.len(), 4);
            for (h, p) in homological.terms.iter().zip(&predicted) {
                assert_eq!(h.degrees, p.degrees);
            }
        }
    }

    #[test]
    fn shortcut_extends_past_the_budget() {
        let dc = DerivedCategory::new(&kronecker(3), 2_000).unwrap();
        let s = serre_series(&dc, 20, Some(1)).unwrap();
        assert!(s.is_complete());
        assert!(s.homological_len() >= 1 && s.homological_len() < 20);
        assert_eq!(s.terms[19].source, Source::KShortcut);
        let e = entropy_estimate(&s, &[Q::from_integer(0.into())]);
        let rho = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
        assert!((e.last(0).unwrap() - rho.ln()).abs() < 0.2);
    }

    #[test]
    fn one_vertex_entropy_is_zero() {
        let dc = DerivedCategory::new(&algebra(&["1"], &[]), DEFAULT_BUDGET).unwrap();
        let s = serre_series(&dc, 12, None).unwrap();
        let e = entropy_estimate(&s, &[Q::from_integer(0.into())]);
        assert!(e.values[0].iter().all(|v| v.abs() < 1e-12));
        let p = polynomial_entropy_estimate(&s, 0.0, 0.0).unwrap();
        assert!(p.estimate.abs() < 1e-12);
    }

    #[test]
    fn a2_polynomial_entropy_vanishes() {
        let dc = DerivedCategory::new(&algebra(&["1", "2"], &[("a", "1", "2")]), DEFAULT_BUDGET).unwrap();
        let s = serre_series(&dc, 30, None).unwrap();
        let p = polynomial_entropy_estimate(&s, 0.0, 0.0).unwrap();
        assert!(p.estimate.abs() < 0.2, "{}", p.estimate);
        let sd = s.dimensions();
        let third = Q::new(1.into(), 3.into());
        assert_eq!(sd.upper[29], third);
        assert_eq!(sd.lower[29], third);
    }

    #[test]
    fn big_logs() {
        let x = BigInt::from(10).pow(400);
        assert!((big_ln(&x) - 400.0 * 10f64.ln()).abs() < 1e-6);
    }
}
