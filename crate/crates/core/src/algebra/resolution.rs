use super::build::BoundQuiverAlgebra;
use super::projmap::{proj_rep, ProjLayout, ProjMap};
use super::rep::{simple, ModuleMap, Representation};
use crate::linalg::{Echelon, ExactMatrix};
use crate::Q;

pub const DEFAULT_GL_DIM_BOUND: usize = 12;

/// `... -> P_1 -> P_0 -> X -> 0` with covers taken from tops, hence minimal.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    /// Generator vertices of `P_k`.
    pub terms: Vec<Vec<usize>>,
    /// `d_k: P_k -> P_{k-1}` stored at index `k - 1`.
    pub differentials: Vec<ProjMap>,
    pub augmentation: ModuleMap,
    /// The bound was reached before a zero syzygy.
    pub truncated: bool,
}

impl ProjectiveResolution {
    /// Projective dimension, if the resolution terminated.
    pub fn length(&self) -> Option<usize> {
        if self.truncated {
            None
        } else {
            Some(self.terms.iter().rposition(|t| !t.is_empty()).unwrap_or(0))
        }
    }
}

// Generators of the submodule spanned by `sub` (closed under arrows) inside
// `ambient`: complement of its radical, chosen among the given basis vectors.
pub(crate) fn top_generators(a: &BoundQuiverAlgebra, ambient: &Representation, sub: &[Vec<Vec<Q>>]) -> Vec<(usize, Vec<Q>)> {
    let r = a.num_vertices();
    let mut rad: Vec<Echelon> = (0..r).map(|w| Echelon::new(ambient.dims()[w])).collect();
    for (k, arr) in a.quiver().arrows().iter().enumerate() {
        let m = ambient.arrow_map(k);
        for v in &sub[arr.source] {
            rad[arr.target].insert(&m.mul_vec(v));
        }
    }
    let mut out = Vec::new();
    for w in 0..r {
        for v in &sub[w] {
            if rad[w].insert(v) {
                out.push((w, v.clone()));
            }
        }
    }
    out
}

pub(crate) fn kernel(m: &ModuleMap) -> Vec<Vec<Vec<Q>>> {
    m.maps
        .iter()
        .map(|f| if f.cols() == 0 { Vec::new() } else { f.nullspace() })
        .collect()
}

pub fn minimal_projective_resolution(a: &BoundQuiverAlgebra, x: &Representation, length_bound: usize) -> ProjectiveResolution {
    let r = a.num_vertices();
    let whole: Vec<Vec<Vec<Q>>> = (0..r)
        .map(|w| {
            (0..x.dims()[w])
                .map(|k| {
                    let mut u = vec![Q::from_integer(0.into()); x.dims()[w]];
                    u[k] = Q::from_integer(1.into());
                    u
                })
                .collect()
        })
        .collect();
    let gens = top_generators(a, x, &whole);
    let g0: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let layout = ProjLayout::new(a, &g0);
    let mut aug: Vec<ExactMatrix> = (0..r).map(|w| ExactMatrix::zeros(x.dims()[w], layout.dims[w])).collect();
    for (g, (v, vec)) in gens.iter().enumerate() {
        for w in 0..r {
            for (k, &p) in a.paths_between(*v, w).iter().enumerate() {
                let img = x.path_action(a.basis_path(p)).mul_vec(vec);
                for (i, c) in img.into_iter().enumerate() {
                    aug[w][(i, layout.offset(g, w) + k)] = c;
                }
            }
        }
    }
    let augmentation = ModuleMap { maps: aug };
    let mut terms = vec![g0];
    let mut differentials = Vec::new();
    let mut syzygy = kernel(&augmentation);
    let mut truncated = false;
    loop {
        if syzygy.iter().all(Vec::is_empty) {
            break;
        }
        if terms.len() > length_bound {
            truncated = true;
            break;
        }
        let prev = terms.last().unwrap().clone();
        let ambient = proj_rep(a, &prev);
        let lay = ProjLayout::new(a, &prev);
        let gens = top_generators(a, &ambient, &syzygy);
        let new: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
        let mut d = ProjMap::zero(prev.clone(), new.clone());
        for (c, (w, vec)) in gens.iter().enumerate() {
            for (row, e) in lay.to_elements(a, *w, vec).into_iter().enumerate() {
                d.set(row, c, e);
            }
        }
        syzygy = kernel(&d.to_module_map(a));
        differentials.push(d);
        terms.push(new);
    }
    ProjectiveResolution {
        terms,
        differentials,
        augmentation,
        truncated,
    }
}

/// `dim Ext^l(X, Y)` for `l = 0..=up_to`.
pub fn ext_dims(a: &BoundQuiverAlgebra, x: &Representation, y: &Representation, up_to: usize) -> Vec<usize> {
    let res = minimal_projective_resolution(a, x, up_to + 1);
    let acts = y.basis_actions(a);
    let cdim = |l: usize| -> usize {
        res.terms
            .get(l)
            .map(|t| t.iter().map(|&v| y.dims()[v]).sum())
            .unwrap_or(0)
    };
    // rank of Hom(P_l, Y) -> Hom(P_{l+1}, Y)
    let ranks: Vec<usize> = (0..=up_to)
        .map(|l| {
            res.differentials
                .get(l)
                .map(|d| {
                    let m = d.hom_into(y, &acts, a);
                    if m.rows() == 0 || m.cols() == 0 {
                        0
                    } else {
                        m.rank()
                    }
                })
                .unwrap_or(0)
        })
        .collect();
    (0..=up_to)
        .map(|l| cdim(l) - ranks[l] - if l > 0 { ranks[l - 1] } else { 0 })
        .collect()
}

/// Maximal projective dimension of the simples; `None` when some resolution
/// exceeds the bound.
pub fn global_dimension(a: &BoundQuiverAlgebra, bound: usize) -> Option<usize> {
    let mut gl = 0;
    for i in 0..a.num_vertices() {
        gl = gl.max(minimal_projective_resolution(a, &simple(a, i), bound).length()?);
    }
    Some(gl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::{Quiver, Relation};
    use crate::algebra::rep::{hom_space, injective, projective};

    fn a2() -> BoundQuiverAlgebra {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        BoundQuiverAlgebra::build("A2", q, vec![], 30).unwrap()
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
    fn resolutions_of_simples() {
        let a = a2();
        let r = minimal_projective_resolution(&a, &projective(&a, 0), 5);
        assert_eq!(r.length(), Some(0));
        let r = minimal_projective_resolution(&a, &simple(&a, 0), 5);
        assert_eq!(r.length(), Some(1));
        assert_eq!(r.terms, vec![vec![0], vec![1]]);
        assert!(r.augmentation.is_homomorphism(&a, &projective(&a, 0), &simple(&a, 0)));
    }

    #[test]
    fn ext_examples() {
        let a = a2();
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        assert_eq!(ext_dims(&a, &s1, &s2, 1), vec![0, 1]);
        let y = injective(&a, 1);
        assert_eq!(ext_dims(&a, &projective(&a, 0), &y, 3), vec![y.dims()[0], 0, 0, 0]);
        assert_eq!(ext_dims(&a, &y, &y, 0)[0], hom_space(&a, &y, &y).0);
    }

    #[test]
    fn global_dimensions() {
        let ss = Quiver::from_labels(&["1", "2"], &[]).unwrap();
        assert_eq!(global_dimension(&BoundQuiverAlgebra::build("kk", ss, vec![], 30).unwrap(), 12), Some(0));
        assert_eq!(global_dimension(&a2(), 12), Some(1));
        assert_eq!(global_dimension(&square(), 12), Some(2));
        let l = Quiver::from_labels(&["1"], &[("x", "1", "1")]).unwrap();
        let one = Q::from_integer(1.into());
        let rel = Relation::from_labels(&l, &[(one, vec!["x", "x"])]).unwrap();
        let dual = BoundQuiverAlgebra::build("dual numbers", l, vec![rel], 30).unwrap();
        let res = minimal_projective_resolution(&dual, &simple(&dual, 0), 6);
        assert!(res.truncated);
        assert_eq!(global_dimension(&dual, 6), None);
    }

    #[test]
    fn consecutive_differentials_compose_to_zero() {
        let a = square();
        let res = minimal_projective_resolution(&a, &simple(&a, 0), 6);
        for w in res.differentials.windows(2) {
            assert!(w[0].compose(&a, &w[1]).is_zero());
        }
    }
}
