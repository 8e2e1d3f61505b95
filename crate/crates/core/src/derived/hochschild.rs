//! Hochschild (co)homology of the derived tensor powers `M^{⊗n}` of a
//! bimodule complex: `A ⊗^L_{A^e} M^{⊗n}` and `RHom_{A^e}(A, M^{⊗n})`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{element, Elem, FiniteAlgebra};
use crate::linalg::SparseMatrix;
use crate::par::*;
use crate::{Error, Result, Q};

use super::bimodule::Enveloping;
use super::complex::{positions, ProjComplex};
use super::entropy::ls_slope;
use super::serre::DerivedCategory;
use super::tensor::tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HhVariant {
    Homology,
    Cohomology,
    Both,
}

impl HhVariant {
    fn homology(self) -> bool {
        self != HhVariant::Cohomology
    }
    fn cohomology(self) -> bool {
        self != HhVariant::Homology
    }
}

/// Nonzero `(degree, dim)` pairs.
pub type DegreeDims = Vec<(i64, usize)>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HhRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<DegreeDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<DegreeDims>,
}

fn tdim(d: &DegreeDims) -> usize {
    d.iter().map(|x| x.1).sum()
}

fn sdim(d: &DegreeDims) -> i64 {
    d.iter().map(|&(l, x)| if l.rem_euclid(2) == 0 { x as i64 } else { -(x as i64) }).sum()
}

impl HhRow {
    pub fn tdim_homology(&self) -> Option<usize> {
        self.homology.as_ref().map(tdim)
    }
    pub fn tdim_cohomology(&self) -> Option<usize> {
        self.cohomology.as_ref().map(tdim)
    }
    /// `Σ_l (−1)^l dim HH_l`; the homological grading is cohomological
    /// degree up to sign, which does not change parity.
    pub fn sdim_homology(&self) -> Option<i64> {
        self.homology.as_ref().map(sdim)
    }
    pub fn sdim_cohomology(&self) -> Option<i64> {
        self.cohomology.as_ref().map(sdim)
    }
}

/// Rows `n = 1..`; row `n` corresponds to the trace formula at index `n − 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HochschildTable {
    pub variant: HhVariant,
    pub rows: Vec<HhRow>,
    pub requested: usize,
    /// Size the first uncomputed row would have needed.
    pub budget_needed: Option<usize>,
    /// Offset between row index and the trace-formula index.
    pub trace_index_offset: i64,
}

impl HochschildTable {
    pub fn truncated(&self) -> bool {
        self.rows.len() < self.requested
    }
}

/// Table for `M = A*`, using the minimal bimodule resolution of `DA`.
pub fn hochschild_table_dual(dc: &DerivedCategory, n_max: usize, variant: HhVariant) -> HochschildTable {
    hochschild_table(dc, dc.dual_resolution(), n_max, variant)
}

/// `m` is a bounded complex of projective bimodules representing `M`.
pub fn hochschild_table(dc: &DerivedCategory, m: &ProjComplex, n_max: usize, variant: HhVariant) -> HochschildTable {
    let env = dc.enveloping();
    let budget = dc.budget();
    let mut rows = Vec::new();
    let mut budget_needed = None;
    // X_0 = R, X_n = X_{n−1} ⊗_A M
    let mut prev = dc.diagonal_resolution().clone();
    for n in 1..=n_max {
        let homology = if variant.homology() {
            match hh_homology_of_tensor(env, &prev, m, budget) {
                Ok(h) => Some(h),
                Err(Error::Budget { needed, .. }) => {
                    budget_needed = Some(needed);
                    break;
                }
                Err(e) => unreachable!("{e}"),
            }
        } else {
            None
        };
        if !variant.cohomology() && n == n_max {
            rows.push(HhRow { n, homology, cohomology: None });
            break;
        }
        let next = if n == 1 { Ok(m.clone().minimize(env)) } else { tensor(env, &prev, env, m, budget).map(|y| y.minimize(env)) };
        let x = match next {
            Ok(x) => x,
            Err(Error::Budget { needed, .. }) => {
                if !variant.cohomology() {
                    rows.push(HhRow { n, homology, cohomology: None });
                }
                budget_needed = Some(needed);
                break;
            }
            Err(e) => unreachable!("{e}"),
        };
        let cohomology = if variant.cohomology() {
            match hh_cohomology(env, dc.diagonal_resolution(), &x, budget) {
                Ok(h) => Some(h),
                Err(Error::Budget { needed, .. }) => {
                    budget_needed = Some(needed);
                    break;
                }
                Err(e) => unreachable!("{e}"),
            }
        } else {
            None
        };
        rows.push(HhRow { n, homology, cohomology });
        prev = x;
    }
    HochschildTable {
        variant,
        rows,
        requested: n_max,
        budget_needed,
        trace_index_offset: -1,
    }
}

fn dims_from_ranks(lo: i64, sizes: &[usize], ranks: &[usize]) -> DegreeDims {
    sizes
        .iter()
        .enumerate()
        .filter_map(|(k, &s)| {
            let out = ranks.get(k).copied().unwrap_or(0);
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            let h = s - out - inc;
            (h > 0).then_some((lo + k as i64, h))
        })
        .collect()
}

/// `A ⊗_{A^e} X`: a generator at `(h, l)` contributes `e_l A e_h`, and a
/// differential entry `u ⊗ v` acts by `a ↦ v a u`.
pub fn hh_homology(env: &Enveloping, x: &ProjComplex, budget: usize) -> Result<DegreeDims> {
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let a = env.base();
    let pos = positions(a);
    let block = |v: usize| {
        let (h, l) = env.split_vertex(v);
        a.paths_between(l, h)
    };
    let offsets: Vec<Vec<usize>> = x
        .terms()
        .iter()
        .map(|t| {
            let mut o = vec![0];
            for &v in t {
                o.push(o.last().unwrap() + block(v).len());
            }
            o
        })
        .collect();
    let sizes: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let needed: usize = sizes.iter().sum();
    if needed > budget {
        return Err(Error::Budget { budget, needed });
    }
    let ranks: Vec<usize> = (0..x.diffs().len())
        .into_par_iter()
        .map(|k| {
            let d = &x.diffs()[k];
            let mut m = SparseMatrix::new(sizes[k + 1], sizes[k]);
            for (r, c, z) in d.entries() {
                let (h, l) = env.split_vertex(d.from[c]);
                for (j, &b) in a.paths_between(l, h).iter().enumerate() {
                    for (p, coef) in z {
                        let (u, v) = env.split_pair(*p);
                        let vb = a.mul_basis(v, b);
                        for (w, c1) in vb {
                            for (y, c2) in a.mul_basis(*w, u) {
                                m.add(offsets[k + 1][r] + pos[*y], offsets[k][c] + j, coef * c1 * c2);
                            }
                        }
                    }
                }
            }
            m.rank()
        })
        .collect();
    Ok(dims_from_ranks(x.lo(), &sizes, &ranks))
}

/// Column-major view of each differential: `out[k][c]` lists `(row, entry)`.
fn columns(x: &ProjComplex) -> Vec<Vec<Vec<(usize, &Elem)>>> {
    x.diffs()
        .iter()
        .map(|d| {
            let mut cols = vec![Vec::new(); d.from.len()];
            for (r, c, e) in d.entries() {
                cols[c].push((r, e));
            }
            cols
        })
        .collect()
}

/// `A ⊗_{A^e} (X ⊗_A Y)` without forming `X ⊗_A Y`: generators `x` at
/// `(h, i)` and `y` at `(k, l)` contribute `e_i A e_k ⊗ e_l A e_h`.
pub fn hh_homology_of_tensor(env: &Enveloping, x: &ProjComplex, y: &ProjComplex, budget: usize) -> Result<DegreeDims> {
    if x.is_zero() || y.is_zero() {
        return Ok(Vec::new());
    }
    let a = env.base();
    let pos = positions(a);
    let lo = x.lo() + y.lo();
    let nt = (x.hi() + y.hi() - lo + 1) as usize;
    // (X index, X gen, Y index, Y gen) -> (total index, offset, width of the a-factor)
    let mut blocks: HashMap<(usize, usize, usize, usize), (usize, usize, usize)> = HashMap::new();
    let mut sizes = vec![0usize; nt];
    for (ix, tx) in x.terms().iter().enumerate() {
        for (iy, ty) in y.terms().iter().enumerate() {
            let n = ix + iy;
            for (gx, &vx) in tx.iter().enumerate() {
                let (h, i) = env.split_vertex(vx);
                for (gy, &vy) in ty.iter().enumerate() {
                    let (k, l) = env.split_vertex(vy);
                    let (nb, na) = (a.paths_between(i, k).len(), a.paths_between(l, h).len());
                    if nb * na > 0 {
                        blocks.insert((ix, gx, iy, gy), (n, sizes[n], na));
                        sizes[n] += nb * na;
                    }
                }
            }
        }
    }
    let needed: usize = sizes.iter().sum();
    if needed > budget {
        return Err(Error::Budget { budget, needed });
    }
    let mut mats: Vec<SparseMatrix> = (0..nt.saturating_sub(1)).map(|n| SparseMatrix::new(sizes[n + 1], sizes[n])).collect();
    let (x_cols, y_cols) = (columns(x), columns(y));
    for (&(ix, gx, iy, gy), &(n, off, na)) in &blocks {
        if n + 1 >= nt {
            continue;
        }
        let (h, i) = env.split_vertex(x.terms()[ix][gx]);
        let (k, l) = env.split_vertex(y.terms()[iy][gy]);
        let sign = if (x.lo() + ix as i64).rem_euclid(2) == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
        for (jb, &b) in a.paths_between(i, k).iter().enumerate() {
            for (ja, &av) in a.paths_between(l, h).iter().enumerate() {
                let col = off + jb * na + ja;
                // d_X ⊗ 1: (b, a) ↦ (v b, a u)
                if let Some(cols) = x_cols.get(ix) {
                    for &(r, e) in &cols[gx] {
                        let Some(&(_, off2, na2)) = blocks.get(&(ix + 1, r, iy, gy)) else { continue };
                        for (p, coef) in e {
                            let (u, v) = env.split_pair(*p);
                            for (b2, c1) in a.mul_basis(v, b) {
                                for (a2, c2) in a.mul_basis(av, u) {
                                    mats[n].add(off2 + pos[*b2] * na2 + pos[*a2], col, coef * c1 * c2);
                                }
                            }
                        }
                    }
                }
                // ±1 ⊗ d_Y: (b, a) ↦ (b u, v a)
                if let Some(cols) = y_cols.get(iy) {
                    for &(r, e) in &cols[gy] {
                        let Some(&(_, off2, na2)) = blocks.get(&(ix, gx, iy + 1, r)) else { continue };
                        for (p, coef) in e {
                            let (u, v) = env.split_pair(*p);
                            for (b2, c1) in a.mul_basis(b, u) {
                                for (a2, c2) in a.mul_basis(v, av) {
                                    mats[n].add(off2 + pos[*b2] * na2 + pos[*a2], col, &sign * coef * c1 * c2);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let ranks: Vec<usize> = mats.par_iter().map(SparseMatrix::rank).collect();
    Ok(dims_from_ranks(lo, &sizes, &ranks))
}

/// `Hom_{A^e}(R, X)` with `D φ = d_X φ − (−1)^n φ d_R`.
pub fn hh_cohomology(env: &Enveloping, r: &ProjComplex, x: &ProjComplex, budget: usize) -> Result<DegreeDims> {
    if x.is_zero() || r.is_zero() {
        return Ok(Vec::new());
    }
    let pos = positions(env);
    let lo = x.lo() - r.hi();
    let nt = (x.hi() - r.lo() - lo + 1) as usize;
    // (R index, R gen, X index, X gen) -> (total index, offset)
    let mut blocks: HashMap<(usize, usize, usize, usize), (usize, usize)> = HashMap::new();
    let mut sizes = vec![0usize; nt];
    for (ip, tr) in r.terms().iter().enumerate() {
        for (ix, tx) in x.terms().iter().enumerate() {
            let n = (x.lo() + ix as i64 - (r.lo() + ip as i64) - lo) as usize;
            for (c, &vr) in tr.iter().enumerate() {
                for (g, &vx) in tx.iter().enumerate() {
                    let len = env.paths_between(vx, vr).len();
                    if len > 0 {
                        blocks.insert((ip, c, ix, g), (n, sizes[n]));
                        sizes[n] += len;
                    }
                }
            }
        }
    }
    let needed: usize = sizes.iter().sum();
    if needed > budget {
        return Err(Error::Budget { budget, needed });
    }
    let mut mats: Vec<SparseMatrix> = (0..nt.saturating_sub(1)).map(|n| SparseMatrix::new(sizes[n + 1], sizes[n])).collect();
    let x_cols = columns(x);
    for (&(ip, c, ix, g), &(n, off)) in &blocks {
        if n + 1 >= nt {
            continue;
        }
        let sign = if (lo + n as i64).rem_euclid(2) == 0 { Q::from_integer((-1).into()) } else { Q::from_integer(1.into()) };
        let vr = r.terms()[ip][c];
        let vx = x.terms()[ix][g];
        for (j, &b) in env.paths_between(vx, vr).iter().enumerate() {
            let phi = element::basis(b);
            // d_X ∘ φ
            if let Some(cols) = x_cols.get(ix) {
                for &(g2, e) in &cols[g] {
                    if let Some(&(n2, off2)) = blocks.get(&(ip, c, ix + 1, g2)) {
                        debug_assert_eq!(n2, n + 1);
                        for (y, coef) in env.mul(e, &phi) {
                            mats[n].add(off2 + pos[y], off + j, coef);
                        }
                    }
                }
            }
            // −(−1)^n φ ∘ d_R
            if ip > 0 {
                let d = &r.diffs()[ip - 1];
                for (c0, e) in d.row(c) {
                    if let Some(&(n2, off2)) = blocks.get(&(ip - 1, *c0, ix, g)) {
                        debug_assert_eq!(n2, n + 1);
                        for (y, coef) in env.mul(&phi, e) {
                            mats[n].add(off2 + pos[y], off + j, &sign * coef);
                        }
                    }
                }
            }
        }
    }
    let ranks: Vec<usize> = mats.par_iter().map(SparseMatrix::rank).collect();
    Ok(dims_from_ranks(lo, &sizes, &ranks))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    /// `(n, (1/n) log tdim)`.
    pub per_n: Vec<(usize, f64)>,
    /// `(n, log(tdim_n / tdim_{n−1}))`.
    pub ratios: Vec<(usize, f64)>,
    /// Least-squares slope of `log tdim` against `n` over the second half.
    pub tail_slope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HhEntropy {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<GrowthEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<GrowthEstimate>,
}

fn growth(points: &[(usize, usize)]) -> GrowthEstimate {
    let logs: Vec<(usize, f64)> = points.iter().map(|&(n, t)| (n, (t.max(1) as f64).ln())).collect();
    let per_n = logs.iter().map(|&(n, l)| (n, l / n as f64)).collect();
    let ratios = logs.windows(2).map(|w| (w[1].0, w[1].1 - w[0].1)).collect();
    let tail: Vec<(f64, f64)> = logs[logs.len() / 2..].iter().map(|&(n, l)| (n as f64, l)).collect();
    GrowthEstimate {
        per_n,
        ratios,
        tail_slope: if tail.len() >= 2 { ls_slope(&tail) } else { 0.0 },
    }
}

pub fn hh_entropy_estimate(table: &HochschildTable) -> Result<HhEntropy> {
    if table.rows.len() < 3 {
        return Err(Error::Shape(format!("need at least 3 rows, have {}", table.rows.len())));
    }
    let collect = |f: fn(&HhRow) -> Option<usize>| -> Option<Vec<(usize, usize)>> {
        table.rows.iter().map(|r| f(r).map(|t| (r.n, t))).collect()
    };
    Ok(HhEntropy {
        homology: collect(HhRow::tdim_homology).map(|p| growth(&p)),
        cohomology: collect(HhRow::tdim_cohomology).map(|p| growth(&p)),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityRow {
    pub n: usize,
    /// `tdim RHom_{A^e}(A, M^{⊗n})`.
    pub lhs: usize,
    /// `tdim A ⊗^L_{A^e} M^{⊗(n−1)}`.
    pub rhs: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityCheck {
    pub rows: Vec<DualityRow>,
    pub requested: usize,
}

impl DualityCheck {
    pub fn passes(&self) -> bool {
        self.rows.len() + 1 >= self.requested && self.rows.iter().all(|r| r.holds)
    }
}

/// `tdim RHom_{A^e}(A, (A*)^{⊗n}) = tdim A ⊗^L_{A^e} (A*)^{⊗(n−1)}` for `2 ≤ n ≤ n_max`.
pub fn prop1_duality_check(dc: &DerivedCategory, n_max: usize) -> Result<DualityCheck> {
    if n_max < 2 {
        return Err(Error::Shape("the duality check starts at n = 2".into()));
    }
    let table = hochschild_table_dual(dc, n_max, HhVariant::Both);
    let rows = table
        .rows
        .windows(2)
        .map(|w| {
            let lhs = w[1].tdim_cohomology().unwrap_or(0);
            let rhs = w[0].tdim_homology().unwrap_or(0);
            DualityRow {
                n: w[1].n,
                lhs,
                rhs,
                holds: lhs == rhs,
            }
        })
        .collect();
    Ok(DualityCheck { rows, requested: n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::Quiver;
    use crate::algebra::BoundQuiverAlgebra;
    use crate::derived::DEFAULT_BUDGET;
    use crate::ktheory::hh_superdimension_trace;
    use num_bigint::BigInt;

    fn algebra(v: &[&str], arrows: &[(&str, &str, &str)]) -> BoundQuiverAlgebra {
        BoundQuiverAlgebra::build("x", Quiver::from_labels(v, arrows).unwrap(), vec![], 30).unwrap()
    }

    #[test]
    fn one_vertex_rows_are_one() {
        let dc = DerivedCategory::new(&algebra(&["1"], &[]), DEFAULT_BUDGET).unwrap();
        let t = hochschild_table_dual(&dc, 4, HhVariant::Both);
        for row in &t.rows {
            assert_eq!(row.tdim_homology(), Some(1));
            assert_eq!(row.tdim_cohomology(), Some(1));
        }
        assert!(prop1_duality_check(&dc, 4).unwrap().passes());
    }

    #[test]
    fn a2_and_kronecker_rows_match_traces_and_duality() {
        for a in [
            algebra(&["1", "2"], &[("a", "1", "2")]),
            algebra(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]),
        ] {
            let dc = DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap();
            let c = a.cartan_matrix();
            let t = hochschild_table_dual(&dc, 4, HhVariant::Both);
            assert_eq!(t.rows.len(), 4);
            for row in &t.rows {
                let trace = hh_superdimension_trace(&c.transpose(), &c, (row.n - 1) as u32).unwrap();
                assert_eq!(BigInt::from(row.sdim_homology().unwrap()), trace, "row {}", row.n);
            }
            let check = prop1_duality_check(&dc, 4).unwrap();
            assert!(check.passes(), "{check:?}");
        }
    }

    #[test]
    fn homology_of_tensor_agrees_with_direct_route() {
        let a = algebra(&["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3")]);
        let dc = DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap();
        let env = dc.enveloping();
        let q = dc.dual_resolution();
        let mut x = dc.diagonal_resolution().clone();
        for _ in 0..3 {
            let direct = tensor(env, &x, env, q, DEFAULT_BUDGET).unwrap();
            let h = hh_homology(env, &direct, DEFAULT_BUDGET).unwrap();
            assert_eq!(h, hh_homology(env, &direct.clone().minimize(env), DEFAULT_BUDGET).unwrap());
            assert_eq!(h, hh_homology_of_tensor(env, &x, q, DEFAULT_BUDGET).unwrap());
            x = direct.minimize(env);
        }
    }

    #[test]
    fn a2_growth_is_flat() {
        let dc = DerivedCategory::new(&algebra(&["1", "2"], &[("a", "1", "2")]), DEFAULT_BUDGET).unwrap();
        let t = hochschild_table_dual(&dc, 4, HhVariant::Homology);
        let e = hh_entropy_estimate(&t).unwrap();
        assert!(e.homology.unwrap().per_n.last().unwrap().1 <= 0.15);
        assert!(e.cohomology.is_none());
    }
}
