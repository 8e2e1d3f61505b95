use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::element::{self, Elem};
use super::quiver::{Path, Quiver, Relation, RelationSet};
use crate::linalg::ExactMatrix;
use crate::{Error, Result, Q};

pub const DEFAULT_MAX_PATH_LENGTH: usize = 30;

/// A finite-dimensional path algebra modulo an admissible ideal, with an
/// explicit path basis and multiplication table.
///
/// Basis indices `0..r` are the vertex idempotents in vertex order; the
/// remaining basis paths follow sorted by length.
#[derive(Clone, Debug)]
pub struct BoundQuiverAlgebra {
    name: String,
    quiver: Quiver,
    relations: RelationSet,
    basis: Vec<Path>,
    table: Vec<Elem>,
    pairs: Vec<Vec<Vec<usize>>>,
    normal_forms: HashMap<Path, Elem>,
    loewy: usize,
}

impl BoundQuiverAlgebra {
    /// Builds `kQ/I`, verifying that every path of some length `N <= max_path_length`
    /// lies in the ideal.
    pub fn build(
        name: &str,
        quiver: Quiver,
        relations: RelationSet,
        max_path_length: usize,
    ) -> Result<Self> {
        let homogeneous = relations.iter().all(Relation::is_homogeneous);
        let acyclic = quiver.is_acyclic();
        let (nf, loewy) = if homogeneous {
            graded_normal_forms(&quiver, &relations, max_path_length, acyclic)?
        } else if acyclic {
            ungraded_normal_forms(&quiver, &relations)?
        } else {
            return Err(Error::Admissibility(
                "relations mixing path lengths are only supported on acyclic quivers".into(),
            ));
        };
        Ok(Self::assemble(name, quiver, relations, nf, loewy))
    }

    // `nf` maps every path of length < loewy to its normal form over basis paths.
    fn assemble(
        name: &str,
        quiver: Quiver,
        relations: RelationSet,
        nf: HashMap<Path, Vec<(Path, Q)>>,
        loewy: usize,
    ) -> Self {
        let mut basis: Vec<Path> = nf
            .iter()
            .filter(|(p, v)| v.len() == 1 && &v[0].0 == *p && v[0].1.is_one())
            .map(|(p, _)| p.clone())
            .collect();
        basis.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let normal_forms: HashMap<Path, Elem> = nf
            .iter()
            .map(|(p, v)| {
                let mut e: Elem = v.iter().map(|(b, c)| (index[b], c.clone())).collect();
                e.sort_by_key(|x| x.0);
                (p.clone(), e)
            })
            .collect();
        let r = quiver.num_vertices();
        let mut pairs = vec![vec![Vec::new(); r]; r];
        for (i, p) in basis.iter().enumerate() {
            pairs[p.source][p.target].push(i);
        }
        let dim = basis.len();
        let mut table = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                let e = match a.concat(b) {
                    Some(p) if p.len() < loewy => normal_forms.get(&p).cloned().unwrap_or_default(),
                    _ => Vec::new(),
                };
                table.push(e);
            }
        }
        Self {
            name: name.to_string(),
            quiver,
            relations,
            basis,
            table,
            pairs,
            normal_forms,
            loewy,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn basis_label(&self, i: usize) -> String {
        self.basis[i].display(&self.quiver).to_string()
    }

    /// Least `N` with every path of length `N` in the ideal.
    pub fn loewy_bound(&self) -> usize {
        self.loewy
    }

    /// Basis indices of paths from `i` to `j`, i.e. a basis of `e_i A e_j`.
    pub fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        &self.pairs[i][j]
    }

    pub fn source(&self, b: usize) -> usize {
        self.basis[b].source
    }

    pub fn target(&self, b: usize) -> usize {
        self.basis[b].target
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, a: usize, b: usize) -> &Elem {
        &self.table[a * self.dim() + b]
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let prod = self.mul_basis(*a, *b);
                if prod.is_empty() {
                    continue;
                }
                let s = ca * cb;
                for (k, c) in prod {
                    *acc.entry(*k).or_insert_with(Q::zero) += &s * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Normal form of an arbitrary path.
    pub fn reduce_path(&self, p: &Path) -> Elem {
        if p.len() >= self.loewy {
            return Vec::new();
        }
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    /// Cartan matrix, `c_ij = dim e_j A e_i`; column `j` is the dimension
    /// vector of `e_j A`.
    pub fn cartan_matrix(&self) -> ExactMatrix {
        let r = self.num_vertices();
        let mut c = ExactMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                c[(i, j)] = Q::from_integer(self.pairs[j][i].len().into());
            }
        }
        c
    }

    /// The opposite algebra on the same basis indices with reversed paths.
    pub fn opposite(&self) -> Self {
        let dim = self.dim();
        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                table.push(self.mul_basis(b, a).clone());
            }
        }
        let r = self.num_vertices();
        let pairs = (0..r)
            .map(|i| (0..r).map(|j| self.pairs[j][i].clone()).collect())
            .collect();
        Self {
            name: format!("{}^op", self.name),
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(Relation::reversed).collect(),
            basis: self.basis.iter().map(Path::reversed).collect(),
            table,
            pairs,
            normal_forms: self
                .normal_forms
                .iter()
                .map(|(p, e)| (p.reversed(), e.clone()))
                .collect(),
            loewy: self.loewy,
        }
    }

    /// `Σ e_i = 1` and associativity on all basis triples (or a deterministic sample).
    pub fn check_axioms(&self, max_triples: usize) -> bool {
        let dim = self.dim();
        let r = self.num_vertices();
        let one: Elem = (0..r).map(|i| (i, Q::one())).collect();
        for b in 0..dim {
            let e = element::basis(b);
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                return false;
            }
        }
        let total = dim * dim * dim;
        let step = (total / max_triples.max(1)).max(1);
        let mut t = 0;
        while t < total {
            let (a, b, c) = (t / (dim * dim), (t / dim) % dim, t % dim);
            let (ea, eb, ec) = (element::basis(a), element::basis(b), element::basis(c));
            if self.mul(&self.mul(&ea, &eb), &ec) != self.mul(&ea, &self.mul(&eb, &ec)) {
                return false;
            }
            t += step;
        }
        true
    }
}

type NormalForms = HashMap<Path, Vec<(Path, Q)>>;

fn relation_vector(rel: &Relation) -> Vec<(Q, Path)> {
    rel.terms.clone()
}

fn left_mul(a: &Path, v: &[(Q, Path)]) -> Option<Vec<(Q, Path)>> {
    let out: Vec<(Q, Path)> = v.iter().filter_map(|(c, p)| a.concat(p).map(|p| (c.clone(), p))).collect();
    (!out.is_empty()).then_some(out)
}

fn right_mul(v: &[(Q, Path)], a: &Path) -> Option<Vec<(Q, Path)>> {
    let out: Vec<(Q, Path)> = v.iter().filter_map(|(c, p)| p.concat(a).map(|p| (c.clone(), p))).collect();
    (!out.is_empty()).then_some(out)
}

/// Row-reduces ideal generators over an ordered list of paths; returns the
/// reduced rows (as path combinations) and normal forms of every path.
fn reduce_block(
    columns: &[Path],
    generators: &[Vec<(Q, Path)>],
    nf: &mut NormalForms,
) -> Vec<Vec<(Q, Path)>> {
    let col: HashMap<&Path, usize> = columns.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = columns.len();
    let mut rows_out = Vec::new();
    let mut pivots = Vec::new();
    let mut rref = ExactMatrix::zeros(0, n);
    if !generators.is_empty() {
        let mut data = Vec::with_capacity(generators.len() * n);
        for g in generators {
            let mut row = vec![Q::zero(); n];
            for (c, p) in g {
                // paths outside the column set already lie in the ideal
                if let Some(&j) = col.get(p) {
                    row[j] += c;
                }
            }
            data.extend(row);
        }
        let m = ExactMatrix::new(generators.len(), n, data).expect("shape");
        let (r, piv) = m.rref();
        rref = r;
        pivots = piv;
    }
    let mut is_pivot = vec![None; n];
    for (row, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(row);
        let v: Vec<(Q, Path)> = (0..n)
            .filter(|&j| !rref[(row, j)].is_zero())
            .map(|j| (rref[(row, j)].clone(), columns[j].clone()))
            .collect();
        rows_out.push(v);
    }
    for (j, p) in columns.iter().enumerate() {
        let form = match is_pivot[j] {
            None => vec![(p.clone(), Q::one())],
            Some(row) => (0..n)
                .filter(|&k| k != j && !rref[(row, k)].is_zero() && is_pivot[k].is_none())
                .map(|k| (columns[k].clone(), -rref[(row, k)].clone()))
                .collect(),
        };
        nf.insert(p.clone(), form);
    }
    rows_out
}

fn graded_normal_forms(
    q: &Quiver,
    rels: &RelationSet,
    max_len: usize,
    acyclic: bool,
) -> Result<(NormalForms, usize)> {
    let r = q.num_vertices();
    let arrows: Vec<Path> = (0..q.arrows().len()).map(|i| Path::arrow(q, i)).collect();
    let mut nf = NormalForms::new();
    let mut paths: Vec<Path> = (0..r).map(Path::trivial).collect();
    for p in &paths {
        nf.insert(p.clone(), vec![(p.clone(), Q::one())]);
    }
    // ideal rows of the previous degree, grouped by (source, target)
    let mut prev: HashMap<(usize, usize), Vec<Vec<(Q, Path)>>> = HashMap::new();
    let mut len = 0;
    loop {
        len += 1;
        let mut next = Vec::new();
        for p in &paths {
            for a in &arrows {
                if let Some(x) = p.concat(a) {
                    next.push(x);
                }
            }
        }
        paths = next;
        let mut blocks: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
        for p in &paths {
            blocks.entry((p.source, p.target)).or_default().push(p.clone());
        }
        let mut gens: HashMap<(usize, usize), Vec<Vec<(Q, Path)>>> = HashMap::new();
        for rel in rels {
            let (_, p0) = &rel.terms[0];
            if p0.len() == len {
                gens.entry((p0.source, p0.target)).or_default().push(relation_vector(rel));
            }
        }
        for ((s, t), rows) in &prev {
            for a in &arrows {
                if a.target == *s {
                    for row in rows {
                        if let Some(v) = left_mul(a, row) {
                            gens.entry((a.source, *t)).or_default().push(v);
                        }
                    }
                }
                if a.source == *t {
                    for row in rows {
                        if let Some(v) = right_mul(row, a) {
                            gens.entry((*s, a.target)).or_default().push(v);
                        }
                    }
                }
            }
        }
        let mut survivors = 0;
        let mut cur = HashMap::new();
        for (key, cols) in &blocks {
            let g = gens.remove(key).unwrap_or_default();
            let rows = reduce_block(cols, &g, &mut nf);
            survivors += cols.len() - rows.len();
            if !rows.is_empty() {
                cur.insert(*key, rows);
            }
        }
        if survivors == 0 {
            // all paths of this length lie in the ideal
            for p in &paths {
                nf.remove(p);
            }
            return Ok((nf, len));
        }
        if len >= max_len {
            return Err(if acyclic {
                Error::BoundTooSmall { bound: len }
            } else {
                Error::BoundExhausted { bound: len }
            });
        }
        // a path lying in the ideal on its own has only such extensions; drop it
        paths.retain(|p| nf.get(p).is_some_and(|f| !f.is_empty()));
        prev = cur;
    }
}

fn ungraded_normal_forms(q: &Quiver, rels: &RelationSet) -> Result<(NormalForms, usize)> {
    let r = q.num_vertices();
    let mut all: Vec<Path> = Vec::new();
    let mut len = 0;
    loop {
        let p = q.paths_of_length(len);
        if p.is_empty() {
            break;
        }
        all.extend(p);
        len += 1;
    }
    let loewy = len;
    let mut gens: HashMap<(usize, usize), Vec<Vec<(Q, Path)>>> = HashMap::new();
    for rel in rels {
        let (_, p0) = &rel.terms[0];
        for u in all.iter().filter(|u| u.target == p0.source) {
            for v in all.iter().filter(|v| v.source == p0.target) {
                let terms: Vec<(Q, Path)> = rel
                    .terms
                    .iter()
                    .map(|(c, p)| (c.clone(), u.concat(p).unwrap().concat(v).unwrap()))
                    .collect();
                gens.entry((u.source, v.target)).or_default().push(terms);
            }
        }
    }
    let mut nf = NormalForms::new();
    for s in 0..r {
        for t in 0..r {
            // longer paths first, so normal forms prefer short paths
            let mut cols: Vec<Path> = all.iter().filter(|p| p.source == s && p.target == t).cloned().collect();
            if cols.is_empty() {
                continue;
            }
            cols.sort_by(|a, b| (b.len(), a).cmp(&(a.len(), b)));
            let g = gens.remove(&(s, t)).unwrap_or_default();
            reduce_block(&cols, &g, &mut nf);
        }
    }
    Ok((nf, loewy))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Q {
        Q::one()
    }

    fn a2() -> BoundQuiverAlgebra {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        BoundQuiverAlgebra::build("A2", q, vec![], 30).unwrap()
    }

    // count paths by brute force, independent of the reduction code
    fn count_paths(q: &Quiver) -> usize {
        (0..10).map(|l| q.paths_of_length(l).len()).sum()
    }

    #[test]
    fn dimensions_of_path_algebras() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.basis_label(2), "a");
        let k = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let n = count_paths(&k);
        let kr = BoundQuiverAlgebra::build("K2", k, vec![], 30).unwrap();
        assert_eq!(kr.dim(), 4);
        assert_eq!(n, 4);
        assert!(kr.check_axioms(1000));
    }

    #[test]
    fn truncated_loop() {
        let q = Quiver::from_labels(&["1"], &[("x", "1", "1")]).unwrap();
        let rel = Relation::from_labels(&q, &[(one(), vec!["x", "x"])]).unwrap();
        let a = BoundQuiverAlgebra::build("k[x]/x2", q.clone(), vec![rel], 30).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.loewy_bound(), 2);
        assert!(matches!(
            BoundQuiverAlgebra::build("k[x]", q, vec![], 30),
            Err(Error::BoundExhausted { .. })
        ));
    }

    #[test]
    fn inhomogeneous_on_cycle_rejected() {
        let q = Quiver::from_labels(&["1"], &[("x", "1", "1")]).unwrap();
        let rel = Relation::from_labels(&q, &[(one(), vec!["x", "x"]), (-one(), vec!["x", "x", "x"])]).unwrap();
        assert!(matches!(
            BoundQuiverAlgebra::build("bad", q, vec![rel], 30),
            Err(Error::Admissibility(_))
        ));
    }

    #[test]
    fn commutative_square() {
        let q = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let rel = Relation::from_labels(&q, &[(one(), vec!["a", "b"]), (-one(), vec!["c", "d"])]).unwrap();
        let a = BoundQuiverAlgebra::build("square", q, vec![rel], 30).unwrap();
        assert_eq!(a.dim(), 9);
        assert!(a.check_axioms(5000));
        // a*b and c*d coincide
        let ab = Path { source: 0, target: 3, arrows: vec![0, 1] };
        let cd = Path { source: 0, target: 3, arrows: vec![2, 3] };
        assert_eq!(a.reduce_path(&ab), a.reduce_path(&cd));
    }

    #[test]
    fn cartan_examples() {
        let c = a2().cartan_matrix();
        assert_eq!(c, ExactMatrix::from_i64_rows(&[[1, 0], [1, 1]]).unwrap());
        let k3 = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")]).unwrap();
        let c3 = BoundQuiverAlgebra::build("K3", k3, vec![], 30).unwrap().cartan_matrix();
        assert_eq!(c3, ExactMatrix::from_i64_rows(&[[1, 0], [3, 1]]).unwrap());
        let ss = Quiver::from_labels(&["1", "2"], &[]).unwrap();
        let css = BoundQuiverAlgebra::build("kk", ss, vec![], 30).unwrap().cartan_matrix();
        assert_eq!(css, ExactMatrix::identity(2));
    }

    #[test]
    fn opposite_is_involutive_on_products() {
        let a = a2();
        let op = a.opposite();
        assert_eq!(op.cartan_matrix(), a.cartan_matrix().transpose());
        assert!(op.check_axioms(1000));
        assert_eq!(op.opposite().mul_basis(0, 2), a.mul_basis(0, 2));
    }
}
