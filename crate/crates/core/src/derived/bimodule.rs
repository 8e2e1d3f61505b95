//! The enveloping algebra `A^e = A^op ⊗ A`. Bimodules are right
//! `A^e`-modules: vertex `(i, j)` (index `i·r + j`) carries `e_i M e_j`.
//!
//! Two models are kept side by side: the bound quiver algebra of the product
//! quiver, needed for module-level resolutions, and the pair basis
//! `u^op ⊗ v` (index `u·dim A + v`), in which maps between projective
//! bimodules are manipulated.

use num_traits::Zero;

use crate::algebra::element::{self, Elem};
use crate::algebra::quiver::Path;
use crate::algebra::{
    minimal_projective_resolution, tensor_algebra, tensor_arrow, BoundQuiverAlgebra, FiniteAlgebra, ProjMap,
    Representation, TensorArrow,
};
use crate::linalg::ExactMatrix;
use crate::{Error, Result, Q};

use super::complex::ProjComplex;

/// Bound quiver algebra of `A^op ⊗ A`.
pub fn enveloping_algebra(a: &BoundQuiverAlgebra) -> Result<BoundQuiverAlgebra> {
    tensor_algebra(&a.opposite(), a)
}

/// `A^e` in the pair basis, together with its bound quiver model.
#[derive(Clone, Debug)]
pub struct Enveloping {
    a: BoundQuiverAlgebra,
    quiver_model: BoundQuiverAlgebra,
    to_pair: Vec<Elem>,
    pairs: Vec<Vec<Vec<usize>>>,
}

impl Enveloping {
    pub fn new(a: &BoundQuiverAlgebra) -> Result<Self> {
        let ae = enveloping_algebra(a)?;
        let op = a.opposite();
        let (r, d) = (a.num_vertices(), a.dim());
        let to_pair = ae
            .basis()
            .iter()
            .map(|p| {
                let (h, l) = (p.source / r, p.source % r);
                let mut left = Vec::new();
                let mut right = Vec::new();
                for &k in &p.arrows {
                    match tensor_arrow(&op, a, k) {
                        TensorArrow::Left { arrow, .. } => left.push(arrow),
                        TensorArrow::Right { arrow, .. } => right.push(arrow),
                    }
                }
                let u_start = left.last().map_or(h, |&k| a.quiver().arrow(k).source);
                let u = path_elem(a, u_start, left.iter().rev().copied());
                let v = path_elem(a, l, right.iter().copied());
                let mut out: Elem = Vec::new();
                for (ub, uc) in &u {
                    for (vb, vc) in &v {
                        out.push((ub * d + vb, uc * vc));
                    }
                }
                out.sort_by_key(|x| x.0);
                out
            })
            .collect();
        let n = r * r;
        let mut pairs = vec![vec![Vec::new(); n]; n];
        for u in 0..d {
            for v in 0..d {
                let x = a.target(u) * r + a.source(v);
                let y = a.source(u) * r + a.target(v);
                pairs[x][y].push(u * d + v);
            }
        }
        Ok(Self {
            a: a.clone(),
            quiver_model: ae,
            to_pair,
            pairs,
        })
    }

    pub fn base(&self) -> &BoundQuiverAlgebra {
        &self.a
    }

    pub fn quiver_model(&self) -> &BoundQuiverAlgebra {
        &self.quiver_model
    }

    pub fn vertex(&self, h: usize, l: usize) -> usize {
        h * self.a.num_vertices() + l
    }

    /// `(h, l)` for a vertex index.
    pub fn split_vertex(&self, v: usize) -> (usize, usize) {
        let r = self.a.num_vertices();
        (v / r, v % r)
    }

    pub fn pair(&self, u: usize, v: usize) -> usize {
        u * self.a.dim() + v
    }

    /// `(u, v)` for a pair index, so that the element is `u^op ⊗ v`.
    pub fn split_pair(&self, p: usize) -> (usize, usize) {
        let d = self.a.dim();
        (p / d, p % d)
    }

    /// Converts an element of the quiver model to the pair basis.
    pub fn to_pair(&self, e: &Elem) -> Elem {
        let mut acc = Vec::new();
        for (b, c) in e {
            acc = element::add_scaled(&acc, &self.to_pair[*b], c);
        }
        acc
    }

    pub fn map_to_pair(&self, m: &ProjMap) -> ProjMap {
        let mut out = ProjMap::zero(m.to.clone(), m.from.clone());
        for (r, c, e) in m.entries() {
            out.set(r, c, self.to_pair(e));
        }
        out
    }

    /// Minimal projective bimodule resolution of `M`, as a complex in degrees `≤ 0`
    /// over the pair basis.
    pub fn resolve(&self, m: &Representation, bound: usize) -> Result<ProjComplex> {
        let res = minimal_projective_resolution(&self.quiver_model, m, bound);
        if res.truncated {
            return Err(Error::ResolutionBound { bound });
        }
        let len = res.terms.len();
        let terms: Vec<Vec<usize>> = res.terms.iter().rev().cloned().collect();
        let diffs = res.differentials.iter().rev().map(|d| self.map_to_pair(d)).collect();
        Ok(ProjComplex::new(-(len as i64 - 1), terms, diffs))
    }

    /// `A` as a bimodule.
    pub fn diagonal(&self) -> Representation {
        let a = &self.a;
        let op = a.opposite();
        let r = a.num_vertices();
        let dims: Vec<usize> = (0..r * r).map(|v| a.paths_between(v / r, v % r).len()).collect();
        let maps = self
            .quiver_model
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, arr)| {
                let (sh, sl) = (arr.source / r, arr.source % r);
                let (th, tl) = (arr.target / r, arr.target % r);
                let src = a.paths_between(sh, sl);
                let tgt = a.paths_between(th, tl);
                let mut m = ExactMatrix::zeros(tgt.len(), src.len());
                for (col, &b) in src.iter().enumerate() {
                    let img = match tensor_arrow(&op, a, k) {
                        TensorArrow::Left { arrow, .. } => a.mul(&arrow_elem(a, arrow), &element::basis(b)),
                        TensorArrow::Right { arrow, .. } => a.mul(&element::basis(b), &arrow_elem(a, arrow)),
                    };
                    for (x, c) in img {
                        let row = tgt.iter().position(|&y| y == x).expect("product lies in the target space");
                        m[(row, col)] = c;
                    }
                }
                m
            })
            .collect();
        Representation::new_unchecked(dims, maps)
    }

    /// `A* = Hom_k(A, k)` as a bimodule: `e_i A* e_j = D(e_j A e_i)`.
    pub fn dual(&self) -> Representation {
        let a = &self.a;
        let op = a.opposite();
        let r = a.num_vertices();
        let dims: Vec<usize> = (0..r * r).map(|v| a.paths_between(v % r, v / r).len()).collect();
        let maps = self
            .quiver_model
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, arr)| {
                let (sh, sl) = (arr.source / r, arr.source % r);
                let (th, tl) = (arr.target / r, arr.target % r);
                let src = a.paths_between(sl, sh);
                let tgt = a.paths_between(tl, th);
                let mut m = ExactMatrix::zeros(tgt.len(), src.len());
                // (α f)(x) = f(x α) and (f β)(x) = f(β x)
                for (row, &x) in tgt.iter().enumerate() {
                    let img = match tensor_arrow(&op, a, k) {
                        TensorArrow::Left { arrow, .. } => a.mul(&element::basis(x), &arrow_elem(a, arrow)),
                        TensorArrow::Right { arrow, .. } => a.mul(&arrow_elem(a, arrow), &element::basis(x)),
                    };
                    for (y, c) in img {
                        let col = src.iter().position(|&z| z == y).expect("product lies in the source space");
                        m[(row, col)] = c;
                    }
                }
                m
            })
            .collect();
        Representation::new_unchecked(dims, maps)
    }
}

fn arrow_elem(a: &BoundQuiverAlgebra, arrow: usize) -> Elem {
    a.reduce_path(&Path::arrow(a.quiver(), arrow))
}

fn path_elem(a: &BoundQuiverAlgebra, start: usize, arrows: impl Iterator<Item = usize>) -> Elem {
    let mut p = Path::trivial(start);
    for k in arrows {
        p = p.concat(&Path::arrow(a.quiver(), k)).expect("arrows of a path compose");
    }
    a.reduce_path(&p)
}

impl FiniteAlgebra for Enveloping {
    fn num_vertices(&self) -> usize {
        self.a.num_vertices().pow(2)
    }

    fn dim(&self) -> usize {
        self.a.dim().pow(2)
    }

    fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        &self.pairs[i][j]
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let d = self.a.dim();
        let mut acc: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (p, cp) in x {
            let (u1, v1) = (p / d, p % d);
            for (q, cq) in y {
                let (u2, v2) = (q / d, q % d);
                let us = self.a.mul_basis(u2, u1);
                if us.is_empty() {
                    continue;
                }
                let vs = self.a.mul_basis(v1, v2);
                if vs.is_empty() {
                    continue;
                }
                let s = cp * cq;
                for (u, cu) in us {
                    for (v, cv) in vs {
                        *acc.entry(u * d + v).or_insert_with(Q::zero) += &s * cu * cv;
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn idempotent(&self, v: usize) -> usize {
        let r = self.a.num_vertices();
        (v / r) * self.a.dim() + v % r
    }

    fn loewy_bound(&self) -> usize {
        2 * self.a.loewy_bound()
    }
}
