use super::build::BoundQuiverAlgebra;
use super::element::Elem;

/// A finite-dimensional basic algebra given by a basis adapted to the
/// vertex idempotents, as needed by maps between projectives.
pub trait FiniteAlgebra: Send + Sync {
    fn num_vertices(&self) -> usize;
    fn dim(&self) -> usize;
    /// Basis indices spanning `e_i B e_j`.
    fn paths_between(&self, i: usize, j: usize) -> &[usize];
    fn mul(&self, x: &Elem, y: &Elem) -> Elem;
    /// Basis index of the idempotent `e_i`.
    fn idempotent(&self, i: usize) -> usize;
    /// Every product of this many radical elements vanishes.
    fn loewy_bound(&self) -> usize;

    /// `dim e_i B`.
    fn projective_dim(&self, i: usize) -> usize {
        (0..self.num_vertices()).map(|w| self.paths_between(i, w).len()).sum()
    }
}

impl FiniteAlgebra for BoundQuiverAlgebra {
    fn num_vertices(&self) -> usize {
        BoundQuiverAlgebra::num_vertices(self)
    }
    fn dim(&self) -> usize {
        BoundQuiverAlgebra::dim(self)
    }
    fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        BoundQuiverAlgebra::paths_between(self, i, j)
    }
    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        BoundQuiverAlgebra::mul(self, x, y)
    }
    fn idempotent(&self, i: usize) -> usize {
        i
    }
    fn loewy_bound(&self) -> usize {
        BoundQuiverAlgebra::loewy_bound(self)
    }
}
