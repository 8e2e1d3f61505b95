//! Bounded complexes of finitely generated projective modules, their minimal
//! models and cohomology.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::element::{self, Elem};
use crate::algebra::{FiniteAlgebra, ProjMap, ProjectiveResolution};
use crate::linalg::SparseMatrix;
use crate::par::*;
use crate::Q;

/// `P^lo -> P^{lo+1} -> ...`; `terms[k]` lists the generator vertices of the
/// term in degree `lo + k` and `diffs[k]` maps term `k` to term `k + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjComplex {
    lo: i64,
    terms: Vec<Vec<usize>>,
    diffs: Vec<ProjMap>,
}

impl ProjComplex {
    pub fn new(lo: i64, terms: Vec<Vec<usize>>, diffs: Vec<ProjMap>) -> Self {
        assert_eq!(diffs.len() + 1, terms.len().max(1), "one differential between consecutive terms");
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.from, terms[k]);
            assert_eq!(d.to, terms[k + 1]);
        }
        Self { lo, terms, diffs }
    }

    /// A single term in degree `degree`.
    pub fn stalk(gens: Vec<usize>, degree: i64) -> Self {
        Self {
            lo: degree,
            terms: vec![gens],
            diffs: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::stalk(Vec::new(), 0)
    }

    /// Projective resolution `P_k` placed in degree `-k`.
    pub fn from_resolution(res: &ProjectiveResolution) -> Self {
        let terms: Vec<Vec<usize>> = res.terms.iter().rev().cloned().collect();
        let diffs = res.differentials.iter().rev().cloned().collect();
        Self::new(-(res.terms.len() as i64 - 1), terms, diffs).trimmed()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn diffs(&self) -> &[ProjMap] {
        &self.diffs
    }

    pub fn term(&self, degree: i64) -> &[usize] {
        let k = degree - self.lo;
        if k < 0 || k >= self.terms.len() as i64 {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    pub fn num_generators(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// Total dimension over the ground field.
    pub fn size<B: FiniteAlgebra + ?Sized>(&self, b: &B) -> usize {
        self.terms.iter().flatten().map(|&v| b.projective_dim(v)).sum()
    }

    /// `X[s]`: the term of degree `n` is `X^{n+s}`, differentials times `(−1)^s`.
    pub fn shift(&self, s: i64) -> Self {
        let mut out = self.clone();
        out.lo -= s;
        if s.rem_euclid(2) == 1 {
            for d in &mut out.diffs {
                d.scale(&-Q::one());
            }
        }
        out
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(mut self) -> Self {
        let Some(first) = self.terms.iter().position(|t| !t.is_empty()) else {
            return Self::zero();
        };
        let last = self.terms.iter().rposition(|t| !t.is_empty()).unwrap();
        self.terms = self.terms[first..=last].to_vec();
        self.diffs = self.diffs[first..last].to_vec();
        self.lo += first as i64;
        self
    }

    /// `d ∘ d = 0` in every degree.
    pub fn is_complex<B: FiniteAlgebra + ?Sized>(&self, b: &B) -> bool {
        self.diffs.windows(2).all(|w| w[1].compose(b, &w[0]).is_zero())
    }

    /// Removes contractible summands `e_v B --≅--> e_v B` by Gaussian
    /// elimination until no differential has an invertible entry.
    pub fn minimize<B: FiniteAlgebra + ?Sized>(self, b: &B) -> Self {
        let mut w = Work::new(&self);
        for k in 0..self.diffs.len() {
            w.eliminate_degree(b, k);
        }
        w.finish(self.lo)
    }

    /// Whether no differential has an invertible entry.
    pub fn is_minimal<B: FiniteAlgebra + ?Sized>(&self, b: &B) -> bool {
        self.diffs
            .iter()
            .all(|d| d.entries().all(|(r, c, e)| !is_unit(b, e, d.to[r], d.from[c])))
    }

    /// Dimension vectors of the cohomology modules.
    pub fn cohomology<B: FiniteAlgebra + ?Sized>(&self, b: &B) -> CohomologyProfile {
        let r = b.num_vertices();
        let pos = positions(b);
        let nd = self.diffs.len();
        // ranks[k][w] = rank of d^k at vertex w
        let jobs: Vec<(usize, usize)> = (0..nd).flat_map(|k| (0..r).map(move |w| (k, w))).collect();
        let ranks: Vec<usize> = jobs
            .par_iter()
            .map(|&(k, w)| vertex_matrix(b, &pos, &self.diffs[k], w).rank())
            .collect();
        let rank = |k: usize, w: usize| ranks[k * r + w];
        let mut degrees = Vec::new();
        for (k, term) in self.terms.iter().enumerate() {
            let dims: Vec<usize> = (0..r)
                .map(|w| {
                    let total: usize = term.iter().map(|&g| b.paths_between(g, w).len()).sum();
                    let out = if k < nd { rank(k, w) } else { 0 };
                    let inc = if k > 0 { rank(k - 1, w) } else { 0 };
                    total - out - inc
                })
                .collect();
            if dims.iter().any(|&x| x > 0) {
                degrees.push((self.lo + k as i64, dims));
            }
        }
        CohomologyProfile { degrees }
    }
}

/// Position of every basis element inside its `paths_between` list.
pub(crate) fn positions<B: FiniteAlgebra + ?Sized>(b: &B) -> Vec<usize> {
    let mut pos = vec![0; b.dim()];
    for i in 0..b.num_vertices() {
        for j in 0..b.num_vertices() {
            for (k, &x) in b.paths_between(i, j).iter().enumerate() {
                pos[x] = k;
            }
        }
    }
    pos
}

/// The linear map `P e_w -> P' e_w` induced by `d` at vertex `w`.
pub(crate) fn vertex_matrix<B: FiniteAlgebra + ?Sized>(b: &B, pos: &[usize], d: &ProjMap, w: usize) -> SparseMatrix {
    let offsets = |gens: &[usize]| {
        let mut out = Vec::with_capacity(gens.len() + 1);
        out.push(0);
        for &g in gens {
            out.push(out.last().unwrap() + b.paths_between(g, w).len());
        }
        out
    };
    let (ro, co) = (offsets(&d.to), offsets(&d.from));
    let mut m = SparseMatrix::new(*ro.last().unwrap(), *co.last().unwrap());
    for (r, c, x) in d.entries() {
        for (k, &p) in b.paths_between(d.from[c], w).iter().enumerate() {
            for (q, coef) in b.mul(x, &element::basis(p)) {
                m.add(ro[r] + pos[q], co[c] + k, coef);
            }
        }
    }
    m
}

fn is_unit<B: FiniteAlgebra + ?Sized>(b: &B, e: &Elem, to: usize, from: usize) -> bool {
    to == from && !element::coeff(e, b.idempotent(to)).is_zero()
}

/// Inverse of `λ e_v + n` with `λ ≠ 0` and `n` radical.
fn unit_inverse<B: FiniteAlgebra + ?Sized>(b: &B, e: &Elem, v: usize) -> Elem {
    let id = b.idempotent(v);
    let lambda = element::coeff(e, id);
    let inv = Q::one() / &lambda;
    let unit = element::basis(id);
    let psi = element::scale(&element::add_scaled(e, &unit, &-&lambda), &inv);
    let mut acc = unit.clone();
    let mut term = unit;
    for _ in 0..=b.loewy_bound() {
        term = element::neg(&b.mul(&term, &psi));
        if term.is_empty() {
            break;
        }
        acc = element::add(&acc, &term);
    }
    element::scale(&acc, &inv)
}

struct SparseMap {
    rows: Vec<HashMap<usize, Elem>>,
    cols: Vec<HashSet<usize>>,
}

impl SparseMap {
    fn from_map(d: &ProjMap) -> Self {
        let mut rows = vec![HashMap::new(); d.to.len()];
        let mut cols = vec![HashSet::new(); d.from.len()];
        for (r, c, e) in d.entries() {
            rows[r].insert(c, e.clone());
            cols[c].insert(r);
        }
        Self { rows, cols }
    }

    fn set(&mut self, r: usize, c: usize, e: Elem) {
        if e.is_empty() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, e);
            self.cols[c].insert(r);
        }
    }

    fn drop_row(&mut self, r: usize) {
        for c in std::mem::take(&mut self.rows[r]).into_keys() {
            self.cols[c].remove(&r);
        }
    }

    fn drop_col(&mut self, c: usize) {
        for r in std::mem::take(&mut self.cols[c]) {
            self.rows[r].remove(&c);
        }
    }
}

struct Work {
    terms: Vec<Vec<usize>>,
    alive: Vec<Vec<bool>>,
    maps: Vec<SparseMap>,
}

impl Work {
    fn new(c: &ProjComplex) -> Self {
        Self {
            terms: c.terms.clone(),
            alive: c.terms.iter().map(|t| vec![true; t.len()]).collect(),
            maps: c.diffs.iter().map(SparseMap::from_map).collect(),
        }
    }

    fn eliminate_degree<B: FiniteAlgebra + ?Sized>(&mut self, b: &B, k: usize) {
        let (from, to) = (self.terms[k].clone(), self.terms[k + 1].clone());
        let mut heap = BinaryHeap::new();
        let cost = |m: &SparseMap, r: usize, c: usize| m.rows[r].len() * m.cols[c].len();
        for (r, row) in self.maps[k].rows.iter().enumerate() {
            for (&c, e) in row {
                if is_unit(b, e, to[r], from[c]) {
                    heap.push(Reverse((cost(&self.maps[k], r, c), r, c)));
                }
            }
        }
        while let Some(Reverse((_, r, c))) = heap.pop() {
            let m = &self.maps[k];
            let Some(phi) = m.rows[r].get(&c) else { continue };
            if !self.alive[k][c] || !self.alive[k + 1][r] || !is_unit(b, phi, to[r], from[c]) {
                continue;
            }
            let phi_inv = unit_inverse(b, phi, to[r]);
            let column: Vec<(usize, Elem)> = m.cols[c]
                .iter()
                .filter(|&&x| x != r)
                .map(|&x| (x, m.rows[x][&c].clone()))
                .collect();
            let row: Vec<(usize, Elem)> = m.rows[r]
                .iter()
                .filter(|(&x, _)| x != c)
                .map(|(&x, e)| (x, e.clone()))
                .collect();
            for (r2, gamma) in &column {
                let g = b.mul(gamma, &phi_inv);
                if g.is_empty() {
                    continue;
                }
                for (c2, beta) in &row {
                    let delta = b.mul(&g, beta);
                    if delta.is_empty() {
                        continue;
                    }
                    let m = &mut self.maps[k];
                    let old = m.rows[*r2].get(c2).cloned().unwrap_or_default();
                    let new = element::add_scaled(&old, &delta, &-Q::one());
                    let unit = !new.is_empty() && is_unit(b, &new, to[*r2], from[*c2]);
                    m.set(*r2, *c2, new);
                    if unit {
                        let cst = cost(m, *r2, *c2);
                        heap.push(Reverse((cst, *r2, *c2)));
                    }
                }
            }
            self.maps[k].drop_row(r);
            self.maps[k].drop_col(c);
            if k > 0 {
                self.maps[k - 1].drop_row(c);
            }
            if k + 1 < self.maps.len() {
                self.maps[k + 1].drop_col(r);
            }
            self.alive[k][c] = false;
            self.alive[k + 1][r] = false;
        }
    }

    fn finish(self, lo: i64) -> ProjComplex {
        let index: Vec<Vec<Option<usize>>> = self
            .alive
            .iter()
            .map(|al| {
                let mut n = 0;
                al.iter()
                    .map(|&a| {
                        a.then(|| {
                            n += 1;
                            n - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let terms: Vec<Vec<usize>> = self
            .terms
            .iter()
            .zip(&self.alive)
            .map(|(t, al)| t.iter().zip(al).filter(|(_, &a)| a).map(|(&v, _)| v).collect())
            .collect();
        let diffs = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mut d = ProjMap::zero(terms[k + 1].clone(), terms[k].clone());
                for (r, row) in m.rows.iter().enumerate() {
                    let Some(nr) = index[k + 1][r] else { continue };
                    for (c, e) in row {
                        if let Some(nc) = index[k][*c] {
                            d.set(nr, nc, e.clone());
                        }
                    }
                }
                d
            })
            .collect();
        ProjComplex::new(lo, terms, diffs).trimmed()
    }
}

/// Nonzero cohomology in ascending degree, as dimension vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyProfile {
    pub degrees: Vec<(i64, Vec<usize>)>,
}

impl CohomologyProfile {
    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn inf(&self) -> Option<i64> {
        self.degrees.first().map(|d| d.0)
    }

    pub fn sup(&self) -> Option<i64> {
        self.degrees.last().map(|d| d.0)
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(|(_, v)| v.iter().sum::<usize>()).sum()
    }

    pub fn dim_in(&self, degree: i64) -> usize {
        self.degrees
            .iter()
            .find(|d| d.0 == degree)
            .map_or(0, |(_, v)| v.iter().sum())
    }

    /// The single nonzero degree, if there is exactly one.
    pub fn concentrated_degree(&self) -> Option<i64> {
        match self.degrees.as_slice() {
            [(l, _)] => Some(*l),
            _ => None,
        }
    }

    /// `Σ_l (−1)^l dim H^l` as a vector.
    pub fn euler_class(&self) -> Vec<i64> {
        let r = self.degrees.first().map_or(0, |d| d.1.len());
        let mut out = vec![0i64; r];
        for (l, v) in &self.degrees {
            let s = if l.rem_euclid(2) == 0 { 1 } else { -1 };
            for (o, x) in out.iter_mut().zip(v) {
                *o += s * *x as i64;
            }
        }
        out
    }

    /// `log Σ_l dim H^l · e^{−l t}`.
    pub fn log_epsilon(&self, t: f64) -> f64 {
        let terms: Vec<f64> = self
            .degrees
            .iter()
            .map(|(l, v)| (v.iter().sum::<usize>() as f64).ln() - *l as f64 * t)
            .collect();
        log_sum_exp(&terms)
    }
}

pub(crate) fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}
