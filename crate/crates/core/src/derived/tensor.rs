//! Total complexes `P ⊗_A Q` of a complex of projectives `P` (right modules
//! or bimodules) with a complex of projective bimodules `Q`.
//!
//! With `P` built from `e_i A` (or `A e_h ⊗ e_i A`) and `Q` from
//! `A e_k ⊗ e_l A`, each pair of generators contributes
//! `e_i A e_k ⊗ e_l A` (or `A e_h ⊗ e_i A e_k ⊗ e_l A`): one generator at
//! vertex `l` (or `(h, l)`) per basis path of `e_i A e_k`.

use std::collections::HashMap;

use crate::algebra::element::{self, Elem};
use crate::algebra::{BoundQuiverAlgebra, FiniteAlgebra, ProjMap};
use crate::{Error, Result, Q};

use super::bimodule::Enveloping;
use super::complex::{positions, ProjComplex};

/// Algebras whose projectives carry a right `A`-action to tensor along:
/// `A` itself and `A^e` in the pair basis.
pub trait RightBase: FiniteAlgebra {
    /// `(left part, right A-vertex)` of a vertex.
    fn split_vertex_right(&self, v: usize) -> (Option<usize>, usize);
    fn join_vertex(&self, left: Option<usize>, l: usize) -> usize;
    /// `(left factor, right A-basis element)` of a basis element.
    fn split_basis(&self, b: usize) -> (Option<usize>, usize);
    fn join_basis(&self, left: Option<usize>, right: usize) -> usize;
}

impl RightBase for BoundQuiverAlgebra {
    fn split_vertex_right(&self, v: usize) -> (Option<usize>, usize) {
        (None, v)
    }
    fn join_vertex(&self, _: Option<usize>, l: usize) -> usize {
        l
    }
    fn split_basis(&self, b: usize) -> (Option<usize>, usize) {
        (None, b)
    }
    fn join_basis(&self, _: Option<usize>, right: usize) -> usize {
        right
    }
}

impl RightBase for Enveloping {
    fn split_vertex_right(&self, v: usize) -> (Option<usize>, usize) {
        let (h, l) = self.split_vertex(v);
        (Some(h), l)
    }
    fn join_vertex(&self, left: Option<usize>, l: usize) -> usize {
        self.vertex(left.expect("bimodule vertex"), l)
    }
    fn split_basis(&self, b: usize) -> (Option<usize>, usize) {
        let (u, v) = self.split_pair(b);
        (Some(u), v)
    }
    fn join_basis(&self, left: Option<usize>, right: usize) -> usize {
        self.pair(left.expect("bimodule element"), right)
    }
}

struct Layout {
    // (P index, P generator, Q index, Q generator) -> (total index, offset)
    blocks: HashMap<(usize, usize, usize, usize), (usize, usize)>,
    terms: Vec<Vec<usize>>,
}

/// Predicted total dimension of `P ⊗_A Q` before minimization.
pub fn tensor_size<B: RightBase>(b: &B, p: &ProjComplex, env: &Enveloping, q: &ProjComplex) -> usize {
    let a = env.base();
    let mut size = 0;
    for tp in p.terms() {
        for &vp in tp {
            let (left, i) = b.split_vertex_right(vp);
            for tq in q.terms() {
                for &vq in tq {
                    let (k, l) = env.split_vertex(vq);
                    size += a.paths_between(i, k).len() * b.projective_dim(b.join_vertex(left, l));
                }
            }
        }
    }
    size
}

/// `P ⊗_A Q` with differential `d_P ⊗ 1 + (−1)^{|p|} 1 ⊗ d_Q`, refusing to
/// build anything larger than `budget`.
pub fn tensor<B: RightBase>(b: &B, p: &ProjComplex, env: &Enveloping, q: &ProjComplex, budget: usize) -> Result<ProjComplex> {
    if p.is_zero() || q.is_zero() {
        return Ok(ProjComplex::zero());
    }
    let needed = tensor_size(b, p, env, q);
    if needed > budget {
        return Err(Error::Budget { budget, needed });
    }
    let a = env.base();
    let pos = positions(a);
    let lo = p.lo() + q.lo();
    let nt = (p.hi() + q.hi() - lo + 1) as usize;
    let mut layout = Layout {
        blocks: HashMap::new(),
        terms: vec![Vec::new(); nt],
    };
    for (ka, tp) in p.terms().iter().enumerate() {
        for (kb, tq) in q.terms().iter().enumerate() {
            let n = ka + kb;
            for (gp, &vp) in tp.iter().enumerate() {
                let (left, i) = b.split_vertex_right(vp);
                for (gq, &vq) in tq.iter().enumerate() {
                    let (k, l) = env.split_vertex(vq);
                    let count = a.paths_between(i, k).len();
                    if count == 0 {
                        continue;
                    }
                    let out = b.join_vertex(left, l);
                    layout.blocks.insert((ka, gp, kb, gq), (n, layout.terms[n].len()));
                    layout.terms[n].extend(std::iter::repeat_n(out, count));
                }
            }
        }
    }
    let mut entries: Vec<HashMap<(usize, usize), Elem>> = vec![HashMap::new(); nt.saturating_sub(1)];
    let mut add = |n: usize, row: usize, col: usize, basis: usize, c: Q| {
        let e = entries[n].entry((row, col)).or_default();
        *e = element::add_scaled(e, &element::basis(basis), &c);
    };

    // d_P ⊗ 1
    for (ka, d) in p.diffs().iter().enumerate() {
        for (kb, tq) in q.terms().iter().enumerate() {
            for (gq, &vq) in tq.iter().enumerate() {
                let (k, l) = env.split_vertex(vq);
                for (r, c, x) in d.entries() {
                    let (Some(&(n, src)), Some(&(_, dst))) =
                        (layout.blocks.get(&(ka, c, kb, gq)), layout.blocks.get(&(ka + 1, r, kb, gq)))
                    else {
                        continue;
                    };
                    let (_, i) = b.split_vertex_right(d.from[c]);
                    for (j, &bp) in a.paths_between(i, k).iter().enumerate() {
                        for (xb, coef) in x {
                            let (u, v) = b.split_basis(*xb);
                            for (bb, c2) in a.mul_basis(v, bp) {
                                add(n, dst + pos[*bb], src + j, b.join_basis(u, l), coef * c2);
                            }
                        }
                    }
                }
            }
        }
    }
    // (−1)^{|p|} 1 ⊗ d_Q
    for (kb, d) in q.diffs().iter().enumerate() {
        for (ka, tp) in p.terms().iter().enumerate() {
            let sign = if (p.lo() + ka as i64).rem_euclid(2) == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
            for (gp, &vp) in tp.iter().enumerate() {
                let (left, i) = b.split_vertex_right(vp);
                for (r, c, z) in d.entries() {
                    let (Some(&(n, src)), Some(&(_, dst))) =
                        (layout.blocks.get(&(ka, gp, kb, c)), layout.blocks.get(&(ka, gp, kb + 1, r)))
                    else {
                        continue;
                    };
                    let (k, _) = env.split_vertex(d.from[c]);
                    for (j, &bp) in a.paths_between(i, k).iter().enumerate() {
                        for (zb, coef) in z {
                            let (uz, vz) = env.split_pair(*zb);
                            for (bb, c2) in a.mul_basis(bp, uz) {
                                add(n, dst + pos[*bb], src + j, b.join_basis(left, vz), &sign * coef * c2);
                            }
                        }
                    }
                }
            }
        }
    }
    let diffs = entries
        .into_iter()
        .enumerate()
        .map(|(n, m)| {
            let mut d = ProjMap::zero(layout.terms[n + 1].clone(), layout.terms[n].clone());
            for ((r, c), e) in m {
                d.set(r, c, e);
            }
            d
        })
        .collect();
    Ok(ProjComplex::new(lo, layout.terms, diffs).trimmed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::Quiver;

    fn a2() -> BoundQuiverAlgebra {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        BoundQuiverAlgebra::build("A2", q, vec![], 30).unwrap()
    }

    #[test]
    fn tensoring_with_the_diagonal_is_the_identity() {
        let a = a2();
        let env = Enveloping::new(&a).unwrap();
        let r = env.resolve(&env.diagonal(), 12).unwrap();
        let p = ProjComplex::stalk(vec![0, 1], 0);
        let t = tensor(&a, &p, &env, &r, 1 << 20).unwrap();
        assert!(t.is_complex(&a));
        let m = t.minimize(&a);
        assert_eq!(m.lo(), 0);
        assert_eq!(m.hi(), 0);
        let mut gens = m.term(0).to_vec();
        gens.sort();
        assert_eq!(gens, vec![0, 1]);
        // bimodule side: R ⊗_A R ≃ R
        let rr = tensor(&env, &r, &env, &r, 1 << 20).unwrap();
        assert!(rr.is_complex(&env));
        assert_eq!(rr.minimize(&env).num_generators(), r.num_generators());
    }

    #[test]
    fn budget_is_enforced() {
        let a = a2();
        let env = Enveloping::new(&a).unwrap();
        let r = env.resolve(&env.diagonal(), 12).unwrap();
        let p = ProjComplex::stalk(vec![0, 1], 0);
        assert!(matches!(tensor(&a, &p, &env, &r, 1), Err(Error::Budget { .. })));
    }
}
