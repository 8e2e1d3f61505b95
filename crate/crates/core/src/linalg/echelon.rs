use num_traits::{One, Zero};

use crate::Q;

/// Incrementally maintained reduced row-echelon basis of a subspace of `Q^n`.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Self { n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    fn reduce(&self, v: &mut [Q]) {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &w[p];
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&w) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    /// Standard basis vectors completing the span to the whole space.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut e = self.clone();
        let mut out = Vec::new();
        for k in 0..self.n {
            let mut u = vec![Q::zero(); self.n];
            u[k] = Q::one();
            if e.insert(&u) {
                out.push(k);
            }
        }
        out
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| Q::from_integer(a.into())).collect()
    }

    #[test]
    fn span_and_complement() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(!e.insert(&v(&[2, 2, 0])));
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(e.contains(&v(&[1, 2, 1])));
        assert!(!e.contains(&v(&[0, 0, 1])));
        assert_eq!(e.complement_units().len(), 1);
    }
}
