use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::build::BoundQuiverAlgebra;
use super::element::Elem;
use super::quiver::Path;
use crate::linalg::{Echelon, ExactMatrix};
use crate::{Error, Result, Q};

/// A finite-dimensional right module: one vector space per vertex and, for
/// each arrow `a: i -> j`, a matrix from the space at `i` to the space at `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<ExactMatrix>,
}

/// Per-vertex linear maps between two representations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleMap {
    pub maps: Vec<ExactMatrix>,
}

impl Representation {
    /// Checked constructor: shapes match the quiver and every relation vanishes.
    pub fn new(a: &BoundQuiverAlgebra, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self> {
        let x = Self::new_unchecked(dims, maps);
        let q = a.quiver();
        if x.dims.len() != q.num_vertices() || x.maps.len() != q.arrows().len() {
            return Err(Error::Shape("representation does not match the quiver".into()));
        }
        for (m, arr) in x.maps.iter().zip(q.arrows()) {
            if m.rows() != x.dims[arr.target] || m.cols() != x.dims[arr.source] {
                return Err(Error::Shape(format!("matrix for arrow `{}` has the wrong shape", arr.label)));
            }
        }
        if !x.satisfies_relations(a) {
            return Err(Error::Shape("representation violates a relation".into()));
        }
        Ok(x)
    }

    pub fn new_unchecked(dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Self {
        Self { dims, maps }
    }

    pub fn zero(a: &BoundQuiverAlgebra) -> Self {
        let r = a.num_vertices();
        let maps = a.quiver().arrows().iter().map(|_| ExactMatrix::zeros(0, 0)).collect();
        Self::new_unchecked(vec![0; r], maps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, i: usize) -> &ExactMatrix {
        &self.maps[i]
    }

    /// Action of a path: the composite of its arrow matrices.
    pub fn path_action(&self, p: &Path) -> ExactMatrix {
        let mut m = ExactMatrix::identity(self.dims[p.source]);
        for &arr in &p.arrows {
            m = self.maps[arr].mul(&m);
        }
        m
    }

    /// Action matrices of every basis element (zero-size blocks off its vertices).
    pub fn basis_actions(&self, a: &BoundQuiverAlgebra) -> Vec<ExactMatrix> {
        a.basis().iter().map(|p| self.path_action(p)).collect()
    }

    /// Action of an element of `e_i A e_j` as a map from the space at `i` to the space at `j`.
    pub fn elem_action(&self, a: &BoundQuiverAlgebra, actions: &[ExactMatrix], e: &Elem, i: usize, j: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dims[j], self.dims[i]);
        for (b, c) in e {
            debug_assert!(a.source(*b) == i && a.target(*b) == j);
            m = m.add(&actions[*b].scale(c));
        }
        m
    }

    pub fn satisfies_relations(&self, a: &BoundQuiverAlgebra) -> bool {
        a.relations().iter().all(|rel| {
            let (_, p0) = &rel.terms[0];
            let mut acc = ExactMatrix::zeros(self.dims[p0.target], self.dims[p0.source]);
            for (c, p) in &rel.terms {
                acc = acc.add(&self.path_action(p).scale(c));
            }
            acc.is_zero()
        })
    }

    pub fn direct_sum(parts: &[&Representation]) -> Self {
        let r = parts[0].dims.len();
        let arrows = parts[0].maps.len();
        let dims = (0..r).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..arrows)
            .map(|i| block_diag(&parts.iter().map(|p| &p.maps[i]).collect::<Vec<_>>()))
            .collect();
        Self { dims, maps }
    }

    /// The `k`-dual over the opposite algebra: same dimensions, transposed matrices.
    pub fn dualize(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            maps: self.maps.iter().map(ExactMatrix::transpose).collect(),
        }
    }

    /// Radical `X·J` at each vertex as an echelon basis.
    pub fn radical(&self, a: &BoundQuiverAlgebra) -> Vec<Echelon> {
        let mut rad: Vec<Echelon> = self.dims.iter().map(|&d| Echelon::new(d)).collect();
        for (m, arr) in self.maps.iter().zip(a.quiver().arrows()) {
            for c in 0..m.cols() {
                rad[arr.target].insert(&m.column(c));
            }
        }
        rad
    }

    /// Submodule spanned by the given per-vertex column bases (assumed closed
    /// under the arrows), with its inclusion.
    pub fn submodule(&self, a: &BoundQuiverAlgebra, basis: &[Vec<Vec<Q>>]) -> (Self, ModuleMap) {
        let incl: Vec<ExactMatrix> = basis
            .iter()
            .enumerate()
            .map(|(v, cols)| ExactMatrix::from_columns(self.dims[v], cols))
            .collect();
        let maps = a
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, arr)| {
                let img = self.maps[i].mul(&incl[arr.source]);
                incl[arr.target].solve(&img).expect("subspace is not a submodule")
            })
            .collect();
        let dims = basis.iter().map(Vec::len).collect();
        (Self { dims, maps }, ModuleMap { maps: incl })
    }

    /// Quotient by a submodule given by per-vertex spanning vectors, with the projection.
    pub fn quotient(&self, a: &BoundQuiverAlgebra, sub: &[Vec<Vec<Q>>]) -> (Self, ModuleMap) {
        // complement by unit vectors; projection = coordinates along the complement
        let mut proj = Vec::new();
        let mut dims = Vec::new();
        for (v, vecs) in sub.iter().enumerate() {
            let d = self.dims[v];
            let mut e = Echelon::new(d);
            for x in vecs {
                e.insert(x);
            }
            let comp = e.complement_units();
            // basis matrix [sub | comp]; projection = last rows of its inverse
            let mut cols: Vec<Vec<Q>> = e.basis();
            let k = cols.len();
            for &u in &comp {
                let mut c = vec![Q::zero(); d];
                c[u] = Q::one();
                cols.push(c);
            }
            let b = ExactMatrix::from_columns(d, &cols);
            let inv = if d == 0 { ExactMatrix::zeros(0, 0) } else { b.inverse().expect("basis") };
            let mut p = ExactMatrix::zeros(comp.len(), d);
            for i in 0..comp.len() {
                for j in 0..d {
                    p[(i, j)] = inv[(k + i, j)].clone();
                }
            }
            proj.push((p, comp));
            dims.push(d - k);
        }
        let maps = a
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, arr)| {
                let (ps, comp) = &proj[arr.source];
                let (pt, _) = &proj[arr.target];
                // image of complement unit vectors, projected
                let mut m = ExactMatrix::zeros(pt.rows(), ps.rows());
                for (c, &u) in comp.iter().enumerate() {
                    let col = self.maps[i].column(u);
                    let img = pt.mul_vec(&col);
                    for r in 0..img.len() {
                        m[(r, c)] = img[r].clone();
                    }
                }
                m
            })
            .collect();
        (
            Self { dims, maps },
            ModuleMap {
                maps: proj.into_iter().map(|(p, _)| p).collect(),
            },
        )
    }

    /// Random module: the cokernel of a random map between sums of indecomposable projectives.
    pub fn random<R: Rng>(a: &BoundQuiverAlgebra, rng: &mut R, max_generators: usize) -> Self {
        let r = a.num_vertices();
        loop {
            let ngen = rng.gen_range(1..=max_generators.max(1));
            let nrel = rng.gen_range(0..=max_generators.max(1));
            let top: Vec<usize> = (0..ngen).map(|_| rng.gen_range(0..r)).collect();
            let rel: Vec<usize> = (0..nrel).map(|_| rng.gen_range(0..r)).collect();
            let mut f = super::projmap::ProjMap::zero(top.clone(), rel.clone());
            for (row, &t) in top.iter().enumerate() {
                for (col, &s) in rel.iter().enumerate() {
                    let mut e = Vec::new();
                    for &b in a.paths_between(t, s) {
                        // keep relations inside the radical so the top survives
                        if a.basis_path(b).is_trivial() {
                            continue;
                        }
                        let c: i64 = rng.gen_range(-2..=2);
                        if c != 0 {
                            e.push((b, Q::from_integer(c.into())));
                        }
                    }
                    f.set(row, col, e);
                }
            }
            let p = super::projmap::proj_rep(a, &top);
            let fm = f.to_module_map(a);
            let image: Vec<Vec<Vec<Q>>> = fm
                .maps
                .iter()
                .map(|m| (0..m.cols()).map(|c| m.column(c)).collect())
                .collect();
            let (x, _) = p.quotient(a, &image);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

fn block_diag(blocks: &[&ExactMatrix]) -> ExactMatrix {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut m = ExactMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    m
}

impl ModuleMap {
    pub fn is_homomorphism(&self, a: &BoundQuiverAlgebra, x: &Representation, y: &Representation) -> bool {
        a.quiver().arrows().iter().enumerate().all(|(i, arr)| {
            y.maps[i].mul(&self.maps[arr.source]) == self.maps[arr.target].mul(&x.maps[i])
        })
    }

    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap {
            maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(ExactMatrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.is_square() && (m.rows() == 0 || m.rank() == m.rows()))
    }
}

/// `e_i A` as a representation: at vertex `w` the paths from `i` to `w`,
/// arrows acting by right multiplication.
pub fn projective(a: &BoundQuiverAlgebra, i: usize) -> Representation {
    super::projmap::proj_rep(a, &[i])
}

pub fn simple(a: &BoundQuiverAlgebra, i: usize) -> Representation {
    let mut dims = vec![0; a.num_vertices()];
    dims[i] = 1;
    let maps = a
        .quiver()
        .arrows()
        .iter()
        .map(|arr| ExactMatrix::zeros(dims[arr.target], dims[arr.source]))
        .collect();
    Representation::new_unchecked(dims, maps)
}

/// `D(A e_i)`: at vertex `w` the dual of the paths from `w` to `i`; an arrow
/// `a: w -> w'` acts by the transpose of left multiplication by `a`.
pub fn injective(a: &BoundQuiverAlgebra, i: usize) -> Representation {
    let r = a.num_vertices();
    let dims: Vec<usize> = (0..r).map(|w| a.paths_between(w, i).len()).collect();
    let maps = a
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, arr)| {
            let alpha = a.reduce_path(&Path::arrow(a.quiver(), k));
            let src = a.paths_between(arr.target, i);
            let dst = a.paths_between(arr.source, i);
            // left multiplication e_{w'} A e_i -> e_w A e_i
            let mut l = ExactMatrix::zeros(dst.len(), src.len());
            for (c, &x) in src.iter().enumerate() {
                let prod = a.mul(&alpha, &vec![(x, Q::one())]);
                for (b, coef) in prod {
                    let row = dst.iter().position(|&d| d == b).expect("path basis");
                    l[(row, c)] = coef;
                }
            }
            l.transpose()
        })
        .collect();
    Representation::new_unchecked(dims, maps)
}

/// Homomorphism space: dimension and an explicit basis.
pub fn hom_space(a: &BoundQuiverAlgebra, x: &Representation, y: &Representation) -> (usize, Vec<ModuleMap>) {
    let r = a.num_vertices();
    // unknowns: f_v entries, row-major per vertex
    let mut offset = vec![0usize; r + 1];
    for v in 0..r {
        offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
    }
    let n = offset[r];
    if n == 0 {
        return (0, Vec::new());
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (k, arr) in a.quiver().arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (ym, xm) = (&y.maps[k], &x.maps[k]);
        // (Y_k f_s - f_t X_k)[p][q] = 0 for p < dy_t, q < dx_s
        for p in 0..y.dims[t] {
            for qq in 0..x.dims[s] {
                let mut row = vec![Q::zero(); n];
                for m in 0..y.dims[s] {
                    let c = &ym[(p, m)];
                    if !c.is_zero() {
                        row[offset[s] + m * x.dims[s] + qq] += c;
                    }
                }
                for m in 0..x.dims[t] {
                    let c = &xm[(m, qq)];
                    if !c.is_zero() {
                        row[offset[t] + p * x.dims[t] + m] -= c;
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = if rows.is_empty() {
        ExactMatrix::zeros(0, n)
    } else {
        let k = rows.len();
        ExactMatrix::new(k, n, rows.concat()).expect("shape")
    };
    let null = sys.nullspace();
    let basis = null
        .iter()
        .map(|v| ModuleMap {
            maps: (0..r)
                .map(|w| {
                    let d = x.dims[w];
                    let data = v[offset[w]..offset[w + 1]].to_vec();
                    ExactMatrix::new(y.dims[w], d, data).expect("shape")
                })
                .collect(),
        })
        .collect();
    (null.len(), basis)
}
