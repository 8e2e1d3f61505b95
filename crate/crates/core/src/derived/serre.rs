//! Nakayama and Serre functors as tensor products with bimodule complexes:
//! `ν = − ⊗^L_A DA` and `ν⁻¹ = − ⊗^L_A RHom_{A^e}(A, A^e)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{global_dimension, BoundQuiverAlgebra, DEFAULT_GL_DIM_BOUND};
use crate::{Error, Result, Q};

use super::bimodule::Enveloping;
use super::complex::{CohomologyProfile, ProjComplex};
use super::modules::ComplexOfModules;
use super::tensor::tensor;

/// Default cap on the dimension of any complex built before minimization.
pub const DEFAULT_BUDGET: usize = 2_000_000;
pub const BUDGET_ENV: &str = "SERRE_SCOPE_BUDGET";

/// The budget from `SERRE_SCOPE_BUDGET`, falling back to the default.
pub fn budget_from_env() -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Forward,
    Inverse,
}

/// Everything needed to apply Nakayama functors over a fixed algebra.
pub struct DerivedCategory {
    a: BoundQuiverAlgebra,
    env: Enveloping,
    diagonal_res: ProjComplex,
    dual_res: ProjComplex,
    inverse_dualizing: ProjComplex,
    gl_dim: usize,
    budget: usize,
}

impl DerivedCategory {
    pub fn new(a: &BoundQuiverAlgebra, budget: usize) -> Result<Self> {
        let gl_dim = global_dimension(a, DEFAULT_GL_DIM_BOUND).ok_or(Error::InfiniteGlobalDimension {
            bound: DEFAULT_GL_DIM_BOUND,
        })?;
        let env = Enveloping::new(a)?;
        // pd_{A^e} A = gl dim A, and likewise for DA
        let diagonal_res = env.resolve(&env.diagonal(), gl_dim + 1)?;
        let dual_res = env.resolve(&env.dual(), gl_dim + 1)?;
        let inverse_dualizing = dual_complex(&env, &diagonal_res);
        Ok(Self {
            a: a.clone(),
            env,
            diagonal_res,
            dual_res,
            inverse_dualizing,
            gl_dim,
            budget,
        })
    }

    pub fn with_env_budget(a: &BoundQuiverAlgebra) -> Result<Self> {
        Self::new(a, budget_from_env())
    }

    pub fn algebra(&self) -> &BoundQuiverAlgebra {
        &self.a
    }

    pub fn enveloping(&self) -> &Enveloping {
        &self.env
    }

    pub fn gl_dim(&self) -> usize {
        self.gl_dim
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Minimal projective bimodule resolution of `A`.
    pub fn diagonal_resolution(&self) -> &ProjComplex {
        &self.diagonal_res
    }

    /// Minimal projective bimodule resolution of `DA`.
    pub fn dual_resolution(&self) -> &ProjComplex {
        &self.dual_res
    }

    /// `RHom_{A^e}(A, A^e)` as a complex of projective bimodules.
    pub fn inverse_dualizing(&self) -> &ProjComplex {
        &self.inverse_dualizing
    }

    /// `A_A` in degree 0.
    pub fn regular(&self) -> ProjComplex {
        ProjComplex::stalk((0..self.a.num_vertices()).collect(), 0)
    }

    pub fn nakayama(&self, x: &ProjComplex) -> Result<ProjComplex> {
        Ok(tensor(&self.a, x, &self.env, &self.dual_res, self.budget)?.minimize(&self.a))
    }

    pub fn nakayama_inverse(&self, x: &ProjComplex) -> Result<ProjComplex> {
        Ok(tensor(&self.a, x, &self.env, &self.inverse_dualizing, self.budget)?.minimize(&self.a))
    }

    /// `ν` on a complex of modules, after replacing it by projectives.
    pub fn nakayama_of(&self, x: &ComplexOfModules) -> Result<ProjComplex> {
        self.nakayama(&x.to_projective(&self.a, self.gl_dim + 1)?)
    }

    /// `ν^n` for any integer `n`.
    pub fn nakayama_power(&self, x: &ProjComplex, n: i64) -> Result<ProjComplex> {
        let mut y = x.clone();
        for _ in 0..n.unsigned_abs() {
            y = if n > 0 { self.nakayama(&y)? } else { self.nakayama_inverse(&y)? };
        }
        Ok(y)
    }

    /// `S_d = ν ∘ [−d]` forward, `S_d⁻¹ = ν⁻¹ ∘ [d]` inverse.
    pub fn d_serre(&self, x: &ProjComplex, d: i64, direction: Direction) -> Result<ProjComplex> {
        Ok(match direction {
            Direction::Forward => self.nakayama(x)?.shift(-d),
            Direction::Inverse => self.nakayama_inverse(x)?.shift(d),
        })
    }

    /// Cohomology of `S^n(A) = ν^n(A)` for `n = 1..=n_max`, stopping at the budget.
    pub fn serre_power_profile(&self, n_max: usize) -> SerrePowers {
        let mut profiles = Vec::with_capacity(n_max);
        let mut x = self.regular();
        let mut truncated = None;
        for _ in 0..n_max {
            match self.nakayama(&x) {
                Ok(y) => {
                    profiles.push(y.cohomology(&self.a));
                    x = y;
                }
                Err(Error::Budget { needed, .. }) => {
                    truncated = Some(needed);
                    break;
                }
                Err(e) => unreachable!("tensor only fails on the budget: {e}"),
            }
        }
        SerrePowers { profiles, truncated }
    }

    pub fn serre_dimension_sequences(&self, n_max: usize) -> SerreDimensions {
        SerreDimensions::from_powers(&self.serre_power_profile(n_max))
    }
}

/// `Hom_{A^e}(R, A^e)`: degrees negated, vertices and pair factors swapped,
/// differentials transposed.
fn dual_complex(env: &Enveloping, r: &ProjComplex) -> ProjComplex {
    if r.is_zero() {
        return ProjComplex::zero();
    }
    let swap_v = |v: usize| {
        let (h, l) = env.split_vertex(v);
        env.vertex(l, h)
    };
    let terms: Vec<Vec<usize>> = r.terms().iter().rev().map(|t| t.iter().map(|&v| swap_v(v)).collect()).collect();
    let diffs = r
        .diffs()
        .iter()
        .rev()
        .map(|d| {
            let mut t = crate::algebra::ProjMap::zero(d.from.iter().map(|&v| swap_v(v)).collect(), d.to.iter().map(|&v| swap_v(v)).collect());
            for (row, col, e) in d.entries() {
                let mut s: crate::algebra::Elem = e
                    .iter()
                    .map(|(p, c)| {
                        let (u, v) = env.split_pair(*p);
                        (env.pair(v, u), c.clone())
                    })
                    .collect();
                s.sort_by_key(|x| x.0);
                t.set(col, row, s);
            }
            t
        })
        .collect();
    ProjComplex::new(-r.hi(), terms, diffs)
}

/// Cohomology profiles of `S^n(A)`; `truncated` carries the size that
/// would have been needed for the next power.
#[derive(Clone, Debug, Serialize)]
pub struct SerrePowers {
    pub profiles: Vec<CohomologyProfile>,
    pub truncated: Option<usize>,
}

/// Upper `−inf S^n(A) / n` and lower `−sup S^n(A) / n` sequences, `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SerreDimensions {
    #[serde(serialize_with = "ser_rationals")]
    pub upper: Vec<Q>,
    #[serde(serialize_with = "ser_rationals")]
    pub lower: Vec<Q>,
    pub truncated: bool,
}

impl SerreDimensions {
    pub fn from_powers(p: &SerrePowers) -> Self {
        let seq = |f: fn(&CohomologyProfile) -> Option<i64>| {
            p.profiles
                .iter()
                .enumerate()
                .map(|(i, h)| Q::new((-f(h).unwrap_or(0)).into(), ((i + 1) as i64).into()))
                .collect()
        };
        Self {
            upper: seq(CohomologyProfile::inf),
            lower: seq(CohomologyProfile::sup),
            truncated: p.truncated.is_some(),
        }
    }

    pub fn last(&self) -> Option<(Q, Q)> {
        Some((self.upper.last()?.clone(), self.lower.last()?.clone()))
    }

    /// Change between the last two terms of each sequence.
    pub fn last_deltas(&self) -> Option<(Q, Q)> {
        let d = |s: &[Q]| match s {
            [.., x, y] => Some(y - x),
            _ => None,
        };
        Some((d(&self.upper)?, d(&self.lower)?))
    }

    pub fn is_constant_zero(&self) -> bool {
        self.upper.iter().chain(&self.lower).all(Zero::is_zero)
    }
}

fn ser_rationals<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::{Quiver, Relation};
    use crate::algebra::simple;

    fn path_algebra(name: &str, v: &[&str], arrows: &[(&str, &str, &str)]) -> BoundQuiverAlgebra {
        BoundQuiverAlgebra::build(name, Quiver::from_labels(v, arrows).unwrap(), vec![], 30).unwrap()
    }

    fn a2() -> BoundQuiverAlgebra {
        path_algebra("A2", &["1", "2"], &[("a", "1", "2")])
    }

    fn kronecker() -> BoundQuiverAlgebra {
        path_algebra("K2", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")])
    }

    fn sorted(mut v: Vec<usize>) -> Vec<usize> {
        v.sort();
        v
    }

    #[test]
    fn nakayama_on_a2() {
        let a = a2();
        let dc = DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap();
        // ν(P_2) = I_2 = P_1
        let y = dc.nakayama(&ProjComplex::stalk(vec![1], 0)).unwrap();
        assert_eq!((y.lo(), y.hi()), (0, 0));
        assert_eq!(y.term(0), &[0]);
        // ν(S_1) = S_2[1]
        let s1 = ComplexOfModules::stalk(simple(&a, 0), 0);
        let h = dc.nakayama_of(&s1).unwrap().cohomology(&a);
        assert_eq!(h.degrees, vec![(-1, vec![0, 1])]);
        // ν³(A) = A[1]
        let y = dc.nakayama_power(&dc.regular(), 3).unwrap();
        assert_eq!((y.lo(), y.hi()), (-1, -1));
        assert_eq!(sorted(y.term(-1).to_vec()), vec![0, 1]);
    }

    #[test]
    fn inverse_undoes_forward() {
        let q = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let one = Q::from_integer(1.into());
        let rel = Relation::from_labels(&q, &[(one.clone(), vec!["a", "b"]), (-one, vec!["c", "d"])]).unwrap();
        let sq = BoundQuiverAlgebra::build("square", q, vec![rel], 30).unwrap();
        for a in [a2(), kronecker(), sq] {
            let dc = DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap();
            for v in 0..a.num_vertices() {
                let p = ProjComplex::stalk(vec![v], 0);
                for d in 0..3 {
                    let there = dc.d_serre(&p, d, Direction::Forward).unwrap();
                    let back = dc.d_serre(&there, d, Direction::Inverse).unwrap();
                    assert_eq!((back.lo(), back.hi()), (0, 0), "{} vertex {v}", a.name());
                    assert_eq!(back.term(0), &[v]);
                }
            }
        }
    }

    #[test]
    fn kronecker_serre_powers() {
        let a = kronecker();
        let dc = DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap();
        let sp = dc.serre_power_profile(8);
        assert!(sp.truncated.is_none());
        for (i, h) in sp.profiles.iter().enumerate() {
            assert_eq!(h.concentrated_degree(), Some(-(i as i64)));
        }
        let sd = SerreDimensions::from_powers(&sp);
        assert_eq!(sd.upper[7], Q::new(7.into(), 8.into()));
        assert_eq!(sd.upper, sd.lower);
        // Kronecker, inverse on A: the module τ⁻¹A with dimension vector Φ⁻¹·dim A
        let y = dc.d_serre(&dc.regular(), 1, Direction::Inverse).unwrap();
        let h = y.cohomology(&a);
        assert_eq!(h.concentrated_degree(), Some(0));
        assert_eq!(h.degrees[0].1, vec![5, 7]);
    }

    #[test]
    fn one_vertex_is_fixed() {
        let a = path_algebra("k", &["1"], &[]);
        let dc = DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap();
        let sd = dc.serre_dimension_sequences(5);
        assert_eq!(sd.upper.len(), 5);
        assert!(sd.is_constant_zero());
    }

    #[test]
    fn budget_truncates() {
        let dc = DerivedCategory::new(&kronecker(), 10).unwrap();
        let sp = dc.serre_power_profile(4);
        assert!(sp.truncated.is_some());
        assert!(sp.profiles.len() < 4);
    }
}
