//! Built-in example algebras.

use serde::Serialize;

use crate::algebra::{tensor_algebra, BoundQuiverAlgebra};
use crate::dsl::{parse_spec, AlgebraSpec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Path algebra of a Dynkin quiver (the one-vertex `k` is `A₁`).
    Dynkin,
    /// `r`-Kronecker: tame for `r = 2`, wild for `r ≥ 3`.
    Kronecker,
    /// Tensor products of Dynkin path algebras.
    Tensor,
    /// Infinite global dimension.
    OutOfScope,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub family: Family,
    pub spec: AlgebraSpec,
}

impl CorpusEntry {
    pub fn build(&self) -> Result<BoundQuiverAlgebra> {
        self.spec.build()
    }
}

fn spec(src: String) -> AlgebraSpec {
    parse_spec(&src).unwrap_or_else(|e| panic!("corpus source does not parse: {e}\n{src}"))
}

fn labels(n: usize) -> String {
    (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

fn with_arrows(name: &str, n: usize, arrows: &[(usize, usize)]) -> AlgebraSpec {
    let arrows: Vec<String> = arrows
        .iter()
        .enumerate()
        .map(|(k, (s, t))| format!("a{}: {s} -> {t}", k + 1))
        .collect();
    spec(format!("algebra {name} {{ vertices: {}; arrows: {} }}", labels(n), arrows.join(", ")))
}

/// Linearly oriented `Aₙ`: `1 → 2 → … → n`.
pub fn linear_a(n: usize) -> AlgebraSpec {
    let arrows: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    with_arrows(&format!("A{n}"), n, &arrows)
}

/// `Dₙ` (`n ≥ 4`): `1 → 3 ← 2`, then `3 → 4 → … → n`.
pub fn dynkin_d(n: usize) -> AlgebraSpec {
    let mut arrows = vec![(1, 3), (2, 3)];
    arrows.extend((3..n).map(|i| (i, i + 1)));
    with_arrows(&format!("D{n}"), n, &arrows)
}

/// `Eₙ` (`n = 6, 7, 8`): the chain `1 → … → n−1` with `n → 3`.
pub fn dynkin_e(n: usize) -> AlgebraSpec {
    let mut arrows: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
    arrows.push((n, 3));
    with_arrows(&format!("E{n}"), n, &arrows)
}

/// `r` parallel arrows `1 → 2`.
pub fn kronecker(r: usize) -> AlgebraSpec {
    with_arrows(&format!("kronecker{r}"), 2, &vec![(1, 2); r])
}

fn tensor_spec(name: &str, a: &AlgebraSpec, b: &AlgebraSpec) -> AlgebraSpec {
    let built = tensor_algebra(&a.build().expect("corpus factor"), &b.build().expect("corpus factor")).expect("corpus tensor");
    let mut s = AlgebraSpec::from_algebra(&built);
    s.name = name.to_string();
    s
}

/// The commutative square `A₂ ⊗ A₂`.
pub fn square() -> AlgebraSpec {
    tensor_spec("square", &linear_a(2), &linear_a(2))
}

fn out_of_scope() -> Vec<AlgebraSpec> {
    vec![
        spec("algebra dual_numbers { vertices: 1; arrows: x: 1 -> 1; relations: x*x }".into()),
        spec("algebra truncated_loop3 { vertices: 1; arrows: x: 1 -> 1; relations: x*x*x }".into()),
        spec("algebra cyclic_nakayama2 { vertices: 1, 2; arrows: a: 1 -> 2, b: 2 -> 1; relations: a*b, b*a }".into()),
    ]
}

/// Every corpus entry, in a fixed order.
pub fn corpus_list() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |family, spec: AlgebraSpec| {
        out.push(CorpusEntry {
            name: spec.name.clone(),
            family,
            spec,
        })
    };
    let mut k = linear_a(1);
    k.name = "k".into();
    push(Family::Dynkin, k);
    for n in 2..=8 {
        push(Family::Dynkin, linear_a(n));
    }
    for n in 4..=6 {
        push(Family::Dynkin, dynkin_d(n));
    }
    for n in 6..=8 {
        push(Family::Dynkin, dynkin_e(n));
    }
    for r in 2..=4 {
        push(Family::Kronecker, kronecker(r));
    }
    push(Family::Tensor, square());
    push(Family::Tensor, tensor_spec("A2xA3", &linear_a(2), &linear_a(3)));
    for s in out_of_scope() {
        push(Family::OutOfScope, s);
    }
    out
}

pub fn corpus_get(name: &str) -> Result<CorpusEntry> {
    corpus_list()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCorpus(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::global_dimension;

    #[test]
    fn kronecker2_has_two_parallel_arrows() {
        let e = corpus_get("kronecker2").unwrap();
        assert_eq!(e.spec.arrows.len(), 2);
        assert!(e.spec.arrows.iter().all(|a| (a.source.as_str(), a.target.as_str()) == ("1", "2")));
    }

    #[test]
    fn square_is_the_tensor_square_of_a2() {
        let a = corpus_get("square").unwrap().build().unwrap();
        assert_eq!(a.dim(), 9);
        assert_eq!((a.num_vertices(), a.quiver().arrows().len(), a.relations().len()), (4, 4, 1));
    }

    #[test]
    fn every_entry_builds_and_round_trips() {
        for e in corpus_list() {
            let a = e.build().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(parse_spec(&e.spec.to_source()).unwrap(), e.spec, "{}", e.name);
            let finite = global_dimension(&a, 12).is_some();
            assert_eq!(finite, e.family != Family::OutOfScope, "{}", e.name);
        }
    }

    #[test]
    fn dynkin_dimensions_are_positive_root_counts() {
        // number of paths in a tree quiver; A_n has n(n+1)/2
        assert_eq!(corpus_get("A8").unwrap().build().unwrap().dim(), 36);
        assert_eq!(corpus_get("E6").unwrap().build().unwrap().num_vertices(), 6);
        assert!(corpus_get("nope").is_err());
    }
}
