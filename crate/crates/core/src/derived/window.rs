//! Finite-window tests for d-representation-infinite and d-hereditary
//! algebras. Passing a window is evidence, not proof.

use num_traits::Zero;
use serde::Serialize;

use crate::ktheory::{coxeter_matrix, unimodular_inverse};
use crate::linalg::ExactMatrix;
use crate::{Error, Result, Q};

use super::complex::{CohomologyProfile, ProjComplex};
use super::serre::{DerivedCategory, Direction};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum WindowVerdict {
    Passes {
        n_max: usize,
    },
    FailsAt {
        n: i64,
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        profile: Option<CohomologyProfile>,
    },
    /// Every power before `reached` passed; the next one exceeded the budget.
    Truncated {
        reached: usize,
        needed: usize,
    },
}

impl WindowVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, WindowVerdict::Passes { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, WindowVerdict::FailsAt { .. })
    }
}

fn gl_dim_fail(dc: &DerivedCategory, d: usize) -> Option<WindowVerdict> {
    (dc.gl_dim() > d).then(|| WindowVerdict::FailsAt {
        n: 0,
        reason: format!("gl dim {} > {d}", dc.gl_dim()),
        profile: None,
    })
}

/// `ν_d^{−n}(A)` has cohomology only in degree 0 for `1 ≤ n ≤ n_max`.
pub fn is_d_rep_infinite_window(dc: &DerivedCategory, d: usize, n_max: usize) -> WindowVerdict {
    if let Some(v) = gl_dim_fail(dc, d) {
        return v;
    }
    let a = dc.algebra();
    let mut x = dc.regular();
    for n in 1..=n_max {
        x = match dc.d_serre(&x, d as i64, Direction::Inverse) {
            Ok(y) => y,
            Err(Error::Budget { needed, .. }) => return WindowVerdict::Truncated { reached: n, needed },
            Err(e) => unreachable!("{e}"),
        };
        let h = x.cohomology(a);
        if h.concentrated_degree() != Some(0) {
            return WindowVerdict::FailsAt {
                n: n as i64,
                reason: "cohomology outside degree 0".into(),
                profile: Some(h),
            };
        }
    }
    WindowVerdict::Passes { n_max }
}

/// `H^i(ν_d^n A) = 0` for `i ∉ dℤ` and `|n| ≤ n_max`, after `gl dim A ≤ d`.
pub fn is_d_hereditary_window(dc: &DerivedCategory, d: usize, n_max: usize) -> WindowVerdict {
    if let Some(v) = gl_dim_fail(dc, d) {
        return v;
    }
    let a = dc.algebra();
    let in_dz = |h: &CohomologyProfile| h.degrees.iter().all(|(i, _)| if d == 0 { *i == 0 } else { i.rem_euclid(d as i64) == 0 });
    for (direction, sign) in [(Direction::Forward, 1i64), (Direction::Inverse, -1)] {
        let mut x: ProjComplex = dc.regular();
        for n in 1..=n_max {
            x = match dc.d_serre(&x, d as i64, direction) {
                Ok(y) => y,
                Err(Error::Budget { needed, .. }) => return WindowVerdict::Truncated { reached: n, needed },
                Err(e) => unreachable!("{e}"),
            };
            let h = x.cohomology(a);
            if !in_dz(&h) {
                return WindowVerdict::FailsAt {
                    n: sign * n as i64,
                    reason: format!("cohomology outside {d}ℤ"),
                    profile: Some(h),
                };
            }
        }
    }
    WindowVerdict::Passes { n_max }
}

/// K-level shadow of the d-representation-infinite window: the classes
/// `((−1)^{d+1} Φ⁻¹)^n [P_j]` stay nonnegative for `1 ≤ n ≤ n_max`.
pub fn k_rep_infinite_window(c: &ExactMatrix, d: usize, n_max: usize) -> Result<WindowVerdict> {
    let mut m = unimodular_inverse(&coxeter_matrix(c)?)?;
    if d % 2 == 0 {
        m = m.neg();
    }
    let mut cols: Vec<Vec<Q>> = (0..c.cols()).map(|j| c.column(j)).collect();
    for n in 1..=n_max {
        for (j, v) in cols.iter_mut().enumerate() {
            *v = m.mul_vec(v);
            if v.iter().any(|x| *x < Q::zero()) {
                return Ok(WindowVerdict::FailsAt {
                    n: n as i64,
                    reason: format!(
                        "class of summand {j} has a negative entry: ({})",
                        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                    ),
                    profile: None,
                });
            }
        }
    }
    Ok(WindowVerdict::Passes { n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::{Quiver, Relation};
    use crate::algebra::BoundQuiverAlgebra;
    use crate::derived::DEFAULT_BUDGET;

    fn path_algebra(v: &[&str], arrows: &[(&str, &str, &str)]) -> BoundQuiverAlgebra {
        BoundQuiverAlgebra::build("x", Quiver::from_labels(v, arrows).unwrap(), vec![], 30).unwrap()
    }

    fn square() -> BoundQuiverAlgebra {
        let q = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let one = Q::from_integer(1.into());
        let rel = Relation::from_labels(&q, &[(one.clone(), vec!["a", "b"]), (-one, vec!["c", "d"])]).unwrap();
        BoundQuiverAlgebra::build("square", q, vec![rel], 30).unwrap()
    }

    #[test]
    fn rep_infinite_examples() {
        let k2 = path_algebra(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]);
        let dc = DerivedCategory::new(&k2, DEFAULT_BUDGET).unwrap();
        assert!(is_d_rep_infinite_window(&dc, 1, 12).passes());
        assert!(k_rep_infinite_window(&k2.cartan_matrix(), 1, 50).unwrap().passes());

        let a2 = path_algebra(&["1", "2"], &[("a", "1", "2")]);
        let dc = DerivedCategory::new(&a2, DEFAULT_BUDGET).unwrap();
        assert!(matches!(is_d_rep_infinite_window(&dc, 1, 6), WindowVerdict::FailsAt { n: 1, .. }));
        assert!(k_rep_infinite_window(&a2.cartan_matrix(), 1, 6).unwrap().fails());

        let k = path_algebra(&["1"], &[]);
        let dc = DerivedCategory::new(&k, DEFAULT_BUDGET).unwrap();
        assert!(matches!(is_d_rep_infinite_window(&dc, 1, 6), WindowVerdict::FailsAt { n: 1, .. }));
    }

    #[test]
    fn hereditary_examples() {
        let a2 = path_algebra(&["1", "2"], &[("a", "1", "2")]);
        let dc = DerivedCategory::new(&a2, DEFAULT_BUDGET).unwrap();
        assert!(is_d_hereditary_window(&dc, 1, 6).passes());

        // ν_{A⊗B} = ν_A ⊠ ν_B and ν²(A₂) = I₁ ⊕ S₂[1], so ν_2²(A₂⊗A₂) has
        // cohomology I₁⊠S₂ ⊕ S₂⊠I₁ in degree 3
        let dc = DerivedCategory::new(&square(), DEFAULT_BUDGET).unwrap();
        match is_d_hereditary_window(&dc, 2, 4) {
            WindowVerdict::FailsAt { n: 2, profile: Some(h), .. } => {
                assert_eq!(h.degrees, vec![(2, vec![0, 0, 0, 1]), (3, vec![0, 1, 1, 0]), (4, vec![1, 0, 0, 0])]);
            }
            v => panic!("unexpected verdict {v:?}"),
        }
        assert!(matches!(is_d_hereditary_window(&dc, 1, 4), WindowVerdict::FailsAt { n: 0, .. }));
    }
}
