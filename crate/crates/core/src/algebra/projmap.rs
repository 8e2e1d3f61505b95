//! Maps between finite direct sums of indecomposable projectives `e_i A`,
//! stored as matrices of algebra elements.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::build::BoundQuiverAlgebra;
use super::element::{self, Elem};
use super::finite::FiniteAlgebra;
use super::rep::{ModuleMap, Representation};
use crate::linalg::ExactMatrix;
use crate::Q;

/// `f: ⊕_c e_{from[c]} A -> ⊕_r e_{to[r]} A`. Entry `(r, c)` lies in
/// `e_{to[r]} A e_{from[c]}`: the generator `e_{from[c]}` maps to
/// `Σ_r f_{rc}` and `f` acts on summand `c` by left multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjMap {
    pub to: Vec<usize>,
    pub from: Vec<usize>,
    rows: Vec<BTreeMap<usize, Elem>>,
}

impl ProjMap {
    pub fn zero(to: Vec<usize>, from: Vec<usize>) -> Self {
        let rows = vec![BTreeMap::new(); to.len()];
        Self { to, from, rows }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Elem> {
        self.rows[r].get(&c)
    }

    pub fn set(&mut self, r: usize, c: usize, e: Elem) {
        if e.is_empty() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, e);
        }
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Elem> {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BTreeMap<usize, Elem>] {
        &self.rows
    }

    /// Entries as `(row, column, element)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Elem)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, e)| (r, *c, e)))
    }

    pub fn scale(&mut self, s: &Q) {
        for row in &mut self.rows {
            for e in row.values_mut() {
                *e = element::scale(e, s);
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    /// `self ∘ first`.
    pub fn compose<B: FiniteAlgebra + ?Sized>(&self, a: &B, first: &ProjMap) -> ProjMap {
        debug_assert_eq!(self.from, first.to);
        let mut out = ProjMap::zero(self.to.clone(), first.from.clone());
        for (s, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Elem> = BTreeMap::new();
            for (r, g) in row {
                for (c, f) in &first.rows[*r] {
                    let p = a.mul(g, f);
                    if p.is_empty() {
                        continue;
                    }
                    let e = acc.entry(*c).or_default();
                    *e = element::add(e, &p);
                }
            }
            acc.retain(|_, e| !e.is_empty());
            out.rows[s] = acc;
        }
        out
    }

    /// The induced map of representations between the projective sums.
    pub fn to_module_map(&self, a: &BoundQuiverAlgebra) -> ModuleMap {
        let r = a.num_vertices();
        let dom = ProjLayout::new(a, &self.from);
        let cod = ProjLayout::new(a, &self.to);
        let mut maps: Vec<ExactMatrix> = (0..r).map(|w| ExactMatrix::zeros(cod.dims[w], dom.dims[w])).collect();
        for (row, entries) in self.rows.iter().enumerate() {
            for (c, f) in entries {
                for w in 0..r {
                    // basis path p of e_{from[c]} A e_w, image f·p in e_{to[row]} A e_w
                    for (k, &p) in a.paths_between(self.from[*c], w).iter().enumerate() {
                        let img = a.mul(f, &element::basis(p));
                        for (b, coef) in img {
                            let i = cod.index(a, row, w, b);
                            maps[w][(i, dom.offset(*c, w) + k)] += coef;
                        }
                    }
                }
            }
        }
        ModuleMap { maps }
    }

    /// Matrix of the induced map `Hom(P_to, Y) -> Hom(P_from, Y)`; `Hom(e_i A, Y) = Y e_i`.
    pub fn hom_into(&self, y: &Representation, actions: &[ExactMatrix], a: &BoundQuiverAlgebra) -> ExactMatrix {
        let yd = y.dims();
        let row_off = prefix(&self.from.iter().map(|&v| yd[v]).collect::<Vec<_>>());
        let col_off = prefix(&self.to.iter().map(|&v| yd[v]).collect::<Vec<_>>());
        let mut m = ExactMatrix::zeros(*row_off.last().unwrap(), *col_off.last().unwrap());
        for (r, entries) in self.rows.iter().enumerate() {
            for (c, f) in entries {
                let block = y.elem_action(a, actions, f, self.to[r], self.from[*c]);
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        if !block[(i, j)].is_zero() {
                            m[(row_off[*c] + i, col_off[r] + j)] = block[(i, j)].clone();
                        }
                    }
                }
            }
        }
        m
    }
}

fn prefix(sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Coordinates on `⊕_g e_{gens[g]} A`: at vertex `w` the summands are stacked
/// in generator order, each with basis `paths_between(gens[g], w)`.
pub struct ProjLayout {
    gens: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
}

impl ProjLayout {
    pub fn new(a: &BoundQuiverAlgebra, gens: &[usize]) -> Self {
        let r = a.num_vertices();
        let mut offsets = vec![Vec::with_capacity(gens.len()); r];
        let mut dims = vec![0; r];
        for &g in gens {
            for w in 0..r {
                offsets[w].push(dims[w]);
                dims[w] += a.paths_between(g, w).len();
            }
        }
        Self {
            gens: gens.to_vec(),
            offsets,
            dims,
        }
    }

    pub fn offset(&self, g: usize, w: usize) -> usize {
        self.offsets[w][g]
    }

    /// Coordinate of basis path `b` (from `gens[g]` to `w`) in summand `g`.
    pub fn index(&self, a: &BoundQuiverAlgebra, g: usize, w: usize, b: usize) -> usize {
        let pos = a
            .paths_between(self.gens[g], w)
            .iter()
            .position(|&x| x == b)
            .expect("basis path in summand");
        self.offsets[w][g] + pos
    }

    /// Splits a coordinate vector at vertex `w` into per-generator elements.
    pub fn to_elements(&self, a: &BoundQuiverAlgebra, w: usize, v: &[Q]) -> Vec<Elem> {
        self.gens
            .iter()
            .enumerate()
            .map(|(g, &src)| {
                a.paths_between(src, w)
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !v[self.offsets[w][g] + k].is_zero())
                    .map(|(k, &b)| (b, v[self.offsets[w][g] + k].clone()))
                    .collect::<Elem>()
            })
            .map(|mut e| {
                e.sort_by_key(|x| x.0);
                e
            })
            .collect()
    }
}

/// `⊕_g e_{gens[g]} A` as a representation.
pub fn proj_rep(a: &BoundQuiverAlgebra, gens: &[usize]) -> Representation {
    let layout = ProjLayout::new(a, gens);
    let maps = a
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, arr)| {
            let alpha = a.reduce_path(&super::quiver::Path::arrow(a.quiver(), k));
            let mut m = ExactMatrix::zeros(layout.dims[arr.target], layout.dims[arr.source]);
            for (g, &src) in gens.iter().enumerate() {
                for (col, &p) in a.paths_between(src, arr.source).iter().enumerate() {
                    let img = a.mul(&element::basis(p), &alpha);
                    for (b, coef) in img {
                        let i = layout.index(a, g, arr.target, b);
                        m[(i, layout.offset(g, arr.source) + col)] = coef;
                    }
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(layout.dims.clone(), maps)
}
