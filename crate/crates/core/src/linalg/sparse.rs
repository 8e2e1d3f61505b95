use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_traits::Zero;

use crate::Q;

/// Sparse rational matrix assembled from triplets; used for ranks of the
/// large, very sparse differentials met in derived computations.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    cells: HashMap<(usize, usize), Q>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            cells: HashMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cells.len()
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, v: Q) {
        debug_assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            return;
        }
        let e = self.cells.entry((r, c)).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.cells.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.cells.get(&(r, c)).cloned().unwrap_or_else(Q::zero)
    }

    /// Exact rank by sparse elimination with Markowitz pivoting: the pivot
    /// minimizing `(row weight − 1)(column weight − 1)` is taken first, so
    /// singleton rows and columns go without fill-in.
    pub fn rank(&self) -> usize {
        if self.cells.is_empty() {
            return 0;
        }
        let mut rows: Vec<HashMap<usize, Q>> = vec![HashMap::new(); self.rows];
        let mut cols: Vec<HashSet<usize>> = vec![HashSet::new(); self.cols];
        for (&(r, c), v) in &self.cells {
            rows[r].insert(c, v.clone());
            cols[c].insert(r);
        }
        let cost = |rows: &[HashMap<usize, Q>], cols: &[HashSet<usize>], r: usize, c: usize| {
            (rows[r].len() - 1) * (cols[c].len() - 1)
        };
        let mut heap: BinaryHeap<Reverse<(usize, usize, usize)>> =
            self.cells.keys().map(|&(r, c)| Reverse((cost(&rows, &cols, r, c), r, c))).collect();
        let mut rank = 0;
        while let Some(Reverse((recorded, r, c))) = heap.pop() {
            let Some(p) = rows[r].get(&c).cloned() else { continue };
            let now = cost(&rows, &cols, r, c);
            if now > recorded {
                heap.push(Reverse((now, r, c)));
                continue;
            }
            rank += 1;
            let pivot_row: Vec<(usize, Q)> = rows[r].iter().filter(|(&j, _)| j != c).map(|(&j, v)| (j, v / &p)).collect();
            let others: Vec<usize> = cols[c].iter().copied().filter(|&x| x != r).collect();
            for r2 in others {
                let f = rows[r2].remove(&c).expect("column index in sync");
                for (j, v) in &pivot_row {
                    let e = rows[r2].entry(*j).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        rows[r2].remove(j);
                        cols[*j].remove(&r2);
                    } else if cols[*j].insert(r2) {
                        heap.push(Reverse((cost(&rows, &cols, r2, *j), r2, *j)));
                    }
                }
            }
            for j in std::mem::take(&mut rows[r]).into_keys() {
                cols[j].remove(&r);
            }
            cols[c].clear();
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ExactMatrix;
    use num_traits::One;

    #[test]
    fn agrees_with_dense_rank() {
        let rows: [&[i64]; 4] = [&[1, 2, 0, 3, 0], &[0, 0, 1, 1, 0], &[1, 2, 1, 4, 0], &[2, 4, -1, 5, 0]];
        let dense = ExactMatrix::from_i64_rows(&rows).unwrap();
        let mut s = SparseMatrix::new(4, 5);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                s.add(i, j, Q::from_integer(x.into()));
            }
        }
        assert_eq!(s.rank(), dense.rank());
        assert_eq!(s.rank(), 2);
        let mut t = SparseMatrix::new(5, 4);
        for (&(r, c), v) in &s.cells {
            t.add(c, r, v.clone());
        }
        assert_eq!(t.rank(), 2);
    }

    #[test]
    fn cancellation_and_empty() {
        let mut s = SparseMatrix::new(2, 2);
        s.add(0, 0, Q::one());
        s.add(0, 0, -Q::one());
        assert_eq!(s.nnz(), 0);
        assert_eq!(s.rank(), 0);
        assert_eq!(SparseMatrix::new(0, 3).rank(), 0);
    }
}
