//! Derived confirmation of K-theoretic Calabi-Yau candidates:
//! `ν^p(A) ≅ A[q]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{hom_space, proj_rep, ModuleMap};
use crate::ktheory::CyCandidate;
use crate::linalg::ExactMatrix;
use crate::{Error, Q};

use super::serre::DerivedCategory;

const RANDOM_TRIES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CyVerdict {
    Confirmed { candidate: CyCandidate },
    Refuted { reason: String },
    /// Shapes match but no invertible intertwiner was found.
    Inconclusive { reason: String },
    Truncated { needed: usize },
}

impl CyVerdict {
    pub fn confirmed(&self) -> Option<&CyCandidate> {
        match self {
            CyVerdict::Confirmed { candidate } => Some(candidate),
            _ => None,
        }
    }
}

pub fn confirm_cy(dc: &DerivedCategory, candidate: &CyCandidate) -> CyVerdict {
    let a = dc.algebra();
    let y = match dc.nakayama_power(&dc.regular(), candidate.p as i64) {
        Ok(y) => y,
        Err(Error::Budget { needed, .. }) => return CyVerdict::Truncated { needed },
        Err(e) => unreachable!("{e}"),
    };
    let h = y.cohomology(a);
    let Some(l) = h.concentrated_degree() else {
        return CyVerdict::Refuted {
            reason: format!("ν^{}(A) has cohomology in {} degrees", candidate.p, h.degrees.len()),
        };
    };
    let q = -l;
    let parity: i8 = if q.rem_euclid(2) == 0 { 1 } else { -1 };
    if parity != candidate.sign {
        return CyVerdict::Refuted {
            reason: format!("shift {q} contradicts the K-theoretic sign {}", candidate.sign),
        };
    }
    // a minimal complex with projective cohomology is that projective
    if y.lo() != y.hi() {
        return CyVerdict::Refuted {
            reason: format!("H^{l}(ν^{}(A)) is not projective", candidate.p),
        };
    }
    let mut gens = y.term(l).to_vec();
    gens.sort_unstable();
    let all: Vec<usize> = (0..a.num_vertices()).collect();
    if gens != all {
        return CyVerdict::Refuted {
            reason: format!("H^{l}(ν^{}(A)) has projective summands {gens:?}", candidate.p),
        };
    }
    let target = proj_rep(a, &gens);
    let regular = proj_rep(a, &all);
    let (dim, basis) = hom_space(a, &regular, &target);
    if dim != regular.total_dim() || regular.total_dim() != target.total_dim() {
        return CyVerdict::Refuted {
            reason: format!("dim Hom(A, H) = {dim} differs from dim A = {}", regular.total_dim()),
        };
    }
    if find_isomorphism(&basis).is_none() {
        return CyVerdict::Inconclusive {
            reason: "no invertible intertwiner found".into(),
        };
    }
    CyVerdict::Confirmed {
        candidate: candidate.clone().confirmed(q),
    }
}

/// An invertible element of the span of `basis`: seeded random integer
/// combinations first, then the basis maps themselves.
pub fn find_isomorphism(basis: &[ModuleMap]) -> Option<ModuleMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e77e);
    let first = basis.first()?;
    let combine = |coefs: &[i64]| ModuleMap {
        maps: (0..first.maps.len())
            .map(|w| {
                let m0 = &first.maps[w];
                basis.iter().zip(coefs).fold(ExactMatrix::zeros(m0.rows(), m0.cols()), |acc, (f, &c)| {
                    acc.add(&f.maps[w].scale(&Q::from_integer(c.into())))
                })
            })
            .collect(),
    };
    for _ in 0..RANDOM_TRIES {
        let coefs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-7..=7)).collect();
        let f = combine(&coefs);
        if f.is_iso() {
            return Some(f);
        }
    }
    basis.iter().find(|f| f.is_iso()).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::Quiver;
    use crate::algebra::BoundQuiverAlgebra;
    use crate::derived::DEFAULT_BUDGET;
    use crate::ktheory::{detect_twisted_cy, CyStatus};

    #[test]
    fn a2_is_confirmed_with_shift_one() {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = BoundQuiverAlgebra::build("A2", q, vec![], 30).unwrap();
        let cand = detect_twisted_cy(&a.cartan_matrix(), 24).unwrap().unwrap();
        let dc = DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap();
        let v = confirm_cy(&dc, &cand);
        let c = v.confirmed().expect("confirmed");
        assert_eq!((c.p, c.q, c.status), (3, Some(1), CyStatus::DerivedConfirmed));
    }

    #[test]
    fn wrong_period_is_refuted() {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = BoundQuiverAlgebra::build("A2", q, vec![], 30).unwrap();
        let mut cand = detect_twisted_cy(&a.cartan_matrix(), 24).unwrap().unwrap();
        cand.p = 2;
        let dc = DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap();
        assert!(matches!(confirm_cy(&dc, &cand), CyVerdict::Refuted { .. }));
    }

    #[test]
    fn identity_is_found() {
        let k = BoundQuiverAlgebra::build("k", Quiver::from_labels(&["1"], &[]).unwrap(), vec![], 30).unwrap();
        let x = proj_rep(&k, &[0, 0]);
        let (_, basis) = hom_space(&k, &x, &x);
        assert!(find_isomorphism(&basis).is_some());
    }
}
