//! Sparse algebra elements: sorted `(basis index, coefficient)` lists without zeros.

use num_traits::Zero;

use crate::Q;

pub type Elem = Vec<(usize, Q)>;

pub fn from_dense(v: &[Q]) -> Elem {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn to_dense(e: &Elem, dim: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    for (i, c) in e {
        v[*i] = c.clone();
    }
    v
}

pub fn basis(i: usize) -> Elem {
    vec![(i, Q::from_integer(1.into()))]
}

/// `a + s·b`
pub fn add_scaled(a: &Elem, b: &Elem, s: &Q) -> Elem {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * s));
            j += 1;
        } else {
            let c = &a[i].1 + &b[j].1 * s;
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn add(a: &Elem, b: &Elem) -> Elem {
    add_scaled(a, b, &Q::from_integer(1.into()))
}

pub fn scale(a: &Elem, s: &Q) -> Elem {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, c)| (*i, c * s)).collect()
}

pub fn neg(a: &Elem) -> Elem {
    a.iter().map(|(i, c)| (*i, -c)).collect()
}

pub fn coeff(a: &Elem, i: usize) -> Q {
    a.binary_search_by_key(&i, |(k, _)| *k)
        .map(|p| a[p].1.clone())
        .unwrap_or_else(|_| Q::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn sparse_arithmetic() {
        let a = vec![(0, q(1)), (3, q(2))];
        let b = vec![(1, q(5)), (3, q(1))];
        assert_eq!(add_scaled(&a, &b, &q(-2)), vec![(0, q(1)), (1, q(-10))]);
        assert_eq!(to_dense(&a, 4), vec![q(1), q(0), q(0), q(2)]);
        assert_eq!(from_dense(&to_dense(&b, 4)), b);
        assert_eq!(coeff(&b, 3), q(1));
        assert_eq!(coeff(&b, 2), q(0));
    }
}
