use num_traits::One;

use super::build::{BoundQuiverAlgebra, DEFAULT_MAX_PATH_LENGTH};
use super::quiver::{Arrow, Path, Quiver, Relation};
use crate::{Error, Result, Q};

/// `A ⊗ B` as a bound quiver algebra on the product quiver with lifted
/// relations and all commutativity squares. Vertex `(i, j)` has index
/// `i * r_B + j`, so the Cartan matrix is the Kronecker product.
pub fn tensor_algebra(a: &BoundQuiverAlgebra, b: &BoundQuiverAlgebra) -> Result<BoundQuiverAlgebra> {
    let (qa, qb) = (a.quiver(), b.quiver());
    let (ra, rb) = (qa.num_vertices(), qb.num_vertices());
    let vertices: Vec<String> = (0..ra)
        .flat_map(|i| (0..rb).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}.{}", qa.vertices()[i], qb.vertices()[j]))
        .collect();
    let v = |i: usize, j: usize| i * rb + j;

    let build_arrows = |prefixed: bool| {
        let (pa, pb) = if prefixed { ("l.", "r.") } else { ("", "") };
        let mut arrows = Vec::new();
        for x in qa.arrows() {
            for j in 0..rb {
                arrows.push(Arrow {
                    label: format!("{pa}{}.{}", x.label, qb.vertices()[j]),
                    source: v(x.source, j),
                    target: v(x.target, j),
                });
            }
        }
        for i in 0..ra {
            for y in qb.arrows() {
                arrows.push(Arrow {
                    label: format!("{pb}{}.{}", qa.vertices()[i], y.label),
                    source: v(i, y.source),
                    target: v(i, y.target),
                });
            }
        }
        arrows
    };
    let quiver = Quiver::new(vertices.clone(), build_arrows(false))
        .or_else(|_| Quiver::new(vertices, build_arrows(true)))?;
    let na = qa.arrows().len();
    // arrow indices in the product quiver
    let left = |alpha: usize, j: usize| alpha * rb + j;
    let right = |i: usize, beta: usize| na * rb + i * qb.arrows().len() + beta;
    let lift_left = |p: &Path, j: usize| Path {
        source: v(p.source, j),
        target: v(p.target, j),
        arrows: p.arrows.iter().map(|&x| left(x, j)).collect(),
    };
    let lift_right = |i: usize, p: &Path| Path {
        source: v(i, p.source),
        target: v(i, p.target),
        arrows: p.arrows.iter().map(|&y| right(i, y)).collect(),
    };

    let mut rels = Vec::new();
    for rel in a.relations() {
        for j in 0..rb {
            rels.push(Relation::new(rel.terms.iter().map(|(c, p)| (c.clone(), lift_left(p, j))).collect())?);
        }
    }
    for rel in b.relations() {
        for i in 0..ra {
            rels.push(Relation::new(rel.terms.iter().map(|(c, p)| (c.clone(), lift_right(i, p))).collect())?);
        }
    }
    for (ai, x) in qa.arrows().iter().enumerate() {
        for (bi, y) in qb.arrows().iter().enumerate() {
            let first = Path {
                source: v(x.source, y.source),
                target: v(x.target, y.target),
                arrows: vec![left(ai, y.source), right(x.target, bi)],
            };
            let second = Path {
                source: v(x.source, y.source),
                target: v(x.target, y.target),
                arrows: vec![right(x.source, bi), left(ai, y.target)],
            };
            rels.push(Relation::new(vec![(Q::one(), first), (-Q::one(), second)])?);
        }
    }
    let bound = DEFAULT_MAX_PATH_LENGTH.max(a.loewy_bound() + b.loewy_bound());
    let name = format!("{}⊗{}", a.name(), b.name());
    let t = BoundQuiverAlgebra::build(&name, quiver, rels, bound)?;
    if t.dim() != a.dim() * b.dim() {
        return Err(Error::Admissibility(format!(
            "tensor product has dimension {} instead of {}",
            t.dim(),
            a.dim() * b.dim()
        )));
    }
    Ok(t)
}

/// Origin of an arrow of the product quiver built by [`tensor_algebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorArrow {
    /// Arrow `arrow` of the first factor at vertex `vertex` of the second.
    Left { arrow: usize, vertex: usize },
    /// Arrow `arrow` of the second factor at vertex `vertex` of the first.
    Right { vertex: usize, arrow: usize },
}

pub fn tensor_arrow(a: &BoundQuiverAlgebra, b: &BoundQuiverAlgebra, k: usize) -> TensorArrow {
    let rb = b.num_vertices();
    let na = a.quiver().arrows().len();
    let nb = b.quiver().arrows().len();
    if k < na * rb {
        TensorArrow::Left {
            arrow: k / rb,
            vertex: k % rb,
        }
    } else {
        let k = k - na * rb;
        TensorArrow::Right {
            vertex: k / nb,
            arrow: k % nb,
        }
    }
}
