//! Bounded complexes of finite-dimensional modules and their replacement by
//! complexes of projectives.

use crate::algebra::resolution::{kernel, top_generators};
use crate::algebra::{proj_rep, BoundQuiverAlgebra, ModuleMap, ProjLayout, ProjMap, Representation};
use crate::linalg::ExactMatrix;
use crate::{Error, Result};

use super::complex::{CohomologyProfile, ProjComplex};

/// `X^lo -> ... -> X^hi`; `diffs[k]: terms[k] -> terms[k + 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexOfModules {
    lo: i64,
    terms: Vec<Representation>,
    diffs: Vec<ModuleMap>,
}

impl ComplexOfModules {
    /// Checked constructor: differentials are homomorphisms and square to zero.
    pub fn new(a: &BoundQuiverAlgebra, lo: i64, terms: Vec<Representation>, diffs: Vec<ModuleMap>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(Error::Shape("a complex needs one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if !d.is_homomorphism(a, &terms[k], &terms[k + 1]) {
                return Err(Error::Shape(format!("differential {k} is not a module homomorphism")));
            }
        }
        if diffs.windows(2).any(|w| !w[1].compose(&w[0]).is_zero()) {
            return Err(Error::Shape("differentials do not compose to zero".into()));
        }
        Ok(Self { lo, terms, diffs })
    }

    pub fn stalk(x: Representation, degree: i64) -> Self {
        Self {
            lo: degree,
            terms: vec![x],
            diffs: Vec::new(),
        }
    }

    pub fn from_projective(a: &BoundQuiverAlgebra, p: &ProjComplex) -> Self {
        if p.is_zero() {
            return Self::stalk(Representation::zero(a), 0);
        }
        Self {
            lo: p.lo(),
            terms: p.terms().iter().map(|g| proj_rep(a, g)).collect(),
            diffs: p.diffs().iter().map(|d| d.to_module_map(a)).collect(),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, degree: i64) -> Option<&Representation> {
        usize::try_from(degree - self.lo).ok().and_then(|k| self.terms.get(k))
    }

    pub fn cohomology(&self, a: &BoundQuiverAlgebra) -> CohomologyProfile {
        let r = a.num_vertices();
        let rank = |k: usize, w: usize| {
            let m = &self.diffs[k].maps[w];
            if m.rows() == 0 || m.cols() == 0 {
                0
            } else {
                m.rank()
            }
        };
        let mut degrees = Vec::new();
        for (k, x) in self.terms.iter().enumerate() {
            let dims: Vec<usize> = (0..r)
                .map(|w| {
                    let out = if k < self.diffs.len() { rank(k, w) } else { 0 };
                    let inc = if k > 0 { rank(k - 1, w) } else { 0 };
                    x.dims()[w] - out - inc
                })
                .collect();
            if dims.iter().any(|&d| d > 0) {
                degrees.push((self.lo + k as i64, dims));
            }
        }
        CohomologyProfile { degrees }
    }

    /// A quasi-isomorphic minimal complex of projectives, built from the top
    /// degree down: `P^k` covers the cycles `{(p, x) ∈ P^{k+1} ⊕ X^k : dp = 0,
    /// π(p) = dx}` of the mapping cone, until they vanish below `lo`.
    pub fn to_projective(&self, a: &BoundQuiverAlgebra, bound: usize) -> Result<ProjComplex> {
        let r = a.num_vertices();
        let zero = Representation::zero(a);
        let x_at = |k: i64| self.term(k).unwrap_or(&zero);
        let dx_at = |k: i64| -> ModuleMap {
            match usize::try_from(k - self.lo).ok().and_then(|i| self.diffs.get(i)) {
                Some(d) => d.clone(),
                None => ModuleMap {
                    maps: (0..r).map(|w| ExactMatrix::zeros(x_at(k + 1).dims()[w], x_at(k).dims()[w])).collect(),
                },
            }
        };
        // state for degree k + 1
        let mut gens_above: Vec<usize> = Vec::new();
        let mut d_above: ModuleMap = ModuleMap {
            maps: vec![ExactMatrix::zeros(0, 0); r],
        };
        let mut pi_above: ModuleMap = ModuleMap {
            maps: (0..r).map(|w| ExactMatrix::zeros(x_at(self.hi() + 1).dims()[w], 0)).collect(),
        };
        let mut terms_desc: Vec<Vec<usize>> = Vec::new();
        let mut diffs_desc: Vec<ProjMap> = Vec::new();
        let mut k = self.hi();
        loop {
            let p_above = proj_rep(a, &gens_above);
            let xk = x_at(k);
            let ambient = Representation::direct_sum(&[&p_above, xk]);
            let dx = dx_at(k);
            let x_next = x_at(k + 1);
            // F(p, x) = (dp, π p − dx)
            let f = ModuleMap {
                maps: (0..r)
                    .map(|w| {
                        let pa = p_above.dims()[w];
                        let xa = xk.dims()[w];
                        let dp = &d_above.maps[w];
                        let mut m = ExactMatrix::zeros(dp.rows() + x_next.dims()[w], pa + xa);
                        for i in 0..dp.rows() {
                            for j in 0..pa {
                                m[(i, j)] = dp[(i, j)].clone();
                            }
                        }
                        for i in 0..x_next.dims()[w] {
                            for j in 0..pa {
                                m[(dp.rows() + i, j)] = pi_above.maps[w][(i, j)].clone();
                            }
                            for j in 0..xa {
                                m[(dp.rows() + i, pa + j)] = -dx.maps[w][(i, j)].clone();
                            }
                        }
                        m
                    })
                    .collect(),
            };
            let cycles = kernel(&f);
            if k < self.lo && cycles.iter().all(Vec::is_empty) {
                break;
            }
            if k < self.lo - bound as i64 {
                return Err(Error::ResolutionBound { bound });
            }
            let gens = top_generators(a, &ambient, &cycles);
            let new: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
            let lay_above = ProjLayout::new(a, &gens_above);
            let lay_new = ProjLayout::new(a, &new);
            let mut d = ProjMap::zero(gens_above.clone(), new.clone());
            let mut pi: Vec<ExactMatrix> = (0..r).map(|w| ExactMatrix::zeros(xk.dims()[w], lay_new.dims[w])).collect();
            for (c, (v, vec)) in gens.iter().enumerate() {
                let pa = p_above.dims()[*v];
                for (row, e) in lay_above.to_elements(a, *v, &vec[..pa]).into_iter().enumerate() {
                    if !e.is_empty() {
                        d.set(row, c, e);
                    }
                }
                let xv = &vec[pa..];
                for w in 0..r {
                    for (j, &p) in a.paths_between(*v, w).iter().enumerate() {
                        let img = xk.path_action(a.basis_path(p)).mul_vec(xv);
                        for (i, coef) in img.into_iter().enumerate() {
                            pi[w][(i, lay_new.offset(c, w) + j)] = coef;
                        }
                    }
                }
            }
            d_above = d.to_module_map(a);
            diffs_desc.push(d);
            terms_desc.push(new.clone());
            gens_above = new;
            pi_above = ModuleMap { maps: pi };
            k -= 1;
        }
        // terms_desc[0] is degree hi; diffs_desc[0] maps into the (empty) degree hi + 1
        diffs_desc.remove(0);
        let lo = k + 1;
        terms_desc.reverse();
        diffs_desc.reverse();
        Ok(ProjComplex::new(lo, terms_desc, diffs_desc).trimmed().minimize(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::Quiver;
    use crate::algebra::{injective, projective, simple};

    fn a3() -> BoundQuiverAlgebra {
        let q = Quiver::from_labels(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        BoundQuiverAlgebra::build("A3", q, vec![], 30).unwrap()
    }

    #[test]
    fn modules_are_replaced_by_their_resolutions() {
        let a = a3();
        for v in 0..3 {
            for x in [simple(&a, v), injective(&a, v), projective(&a, v)] {
                let p = ComplexOfModules::stalk(x.clone(), 2).to_projective(&a, 8).unwrap();
                assert!(p.is_complex(&a));
                let h = p.cohomology(&a);
                assert_eq!(h.degrees, vec![(2, x.dims().to_vec())]);
            }
        }
    }

    #[test]
    fn two_term_complex() {
        // P_2 -> P_1 (inclusion) is quasi-isomorphic to S_1 in degree 0
        let a = a3();
        let p = ComplexOfModules::from_projective(&a, &{
            let mut d = ProjMap::zero(vec![0], vec![1]);
            d.set(0, 0, a.reduce_path(&crate::algebra::Path::arrow(a.quiver(), 0)));
            ProjComplex::new(-1, vec![vec![1], vec![0]], vec![d])
        });
        assert_eq!(p.cohomology(&a).degrees, vec![(0, vec![1, 0, 0])]);
        let q = p.to_projective(&a, 8).unwrap();
        assert_eq!(q.cohomology(&a).degrees, vec![(0, vec![1, 0, 0])]);
        assert_eq!(q.num_generators(), 2);
    }

    #[test]
    fn rejects_non_complexes() {
        let a = a3();
        let x = simple(&a, 0);
        let id = ModuleMap {
            maps: vec![ExactMatrix::identity(1), ExactMatrix::zeros(0, 0), ExactMatrix::zeros(0, 0)],
        };
        assert!(ComplexOfModules::new(&a, 0, vec![x.clone(), x.clone(), x], vec![id.clone(), id]).is_err());
    }
}
