use proptest::prelude::*;

use serre_scope::corpus::corpus_get;
use serre_scope::derived::{DerivedCategory, ProjComplex, DEFAULT_BUDGET};
use serre_scope::dsl::parse_spec;
use serre_scope::ktheory::coxeter_matrix;
use serre_scope::linalg::{char_poly, ExactMatrix, SparseMatrix};
use serre_scope::Q;

const SMALL: [&str; 7] = ["A2", "A3", "A4", "D4", "kronecker2", "kronecker3", "square"];

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        let cell = prop_oneof![3 => Just(0i64), 2 => -2i64..=2];
        (Just(r), Just(c), proptest::collection::vec(cell, r * c))
    })
}

fn unitriangular() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (1usize..6).prop_flat_map(|n| (Just(n), proptest::collection::vec(0i64..4, n * n)))
}

/// Source text of a random acyclic algebra with length-two relations.
fn algebra_source() -> impl Strategy<Value = String> {
    (2usize..6, proptest::collection::vec((0usize..6, 0usize..6), 1..8), proptest::collection::vec((-3i64..4, 1i64..4), 0..3)).prop_map(
        |(n, pairs, coeffs)| {
            let arrows: Vec<(usize, usize)> = pairs.into_iter().map(|(s, t)| (s % n, t % n)).filter(|(s, t)| s < t).collect();
            let arrow_text: Vec<String> = arrows.iter().enumerate().map(|(k, (s, t))| format!("x{k}: v{s} -> v{t}")).collect();
            let mut relations = Vec::new();
            for (i, (p, q)) in coeffs.iter().enumerate() {
                let composable: Vec<(usize, usize)> = (0..arrows.len())
                    .flat_map(|a| (0..arrows.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| arrows[a].1 == arrows[b].0)
                    .collect();
                if let Some(&(a, b)) = composable.get(i % composable.len().max(1)) {
                    relations.push(format!("{p}/{q}*x{a}*x{b}"));
                }
            }
            let vertices: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
            let mut src = format!("algebra gen {{ vertices: {}; arrows: {}", vertices.join(", "), arrow_text.join(", "));
            if !relations.is_empty() {
                src.push_str(&format!("; relations: {}", relations.join(", ")));
            }
            src.push_str(" }");
            src
        },
    )
}

fn derived(name: &str) -> (DerivedCategory, ExactMatrix) {
    let a = corpus_get(name).unwrap().build().unwrap();
    let c = a.cartan_matrix();
    (DerivedCategory::new(&a, DEFAULT_BUDGET).unwrap(), c)
}

fn class_of(x: &ProjComplex, dc: &DerivedCategory, r: usize) -> Vec<i64> {
    let v = x.cohomology(dc.algebra()).euler_class();
    if v.is_empty() {
        vec![0; r]
    } else {
        v
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sparse_rank_matches_dense((r, c, cells) in small_matrix()) {
        let mut sparse = SparseMatrix::new(r, c);
        for (k, &v) in cells.iter().enumerate() {
            sparse.add(k / c, k % c, Q::from_integer(v.into()));
        }
        let dense = ExactMatrix::new(r, c, cells.iter().map(|&v| Q::from_integer(v.into())).collect()).unwrap();
        prop_assert_eq!(sparse.rank(), dense.rank());
    }

    #[test]
    fn coxeter_char_poly_is_reciprocal((n, cells) in unitriangular()) {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else if i < j { cells[i * n + j] } else { 0 }).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let c = ExactMatrix::from_i64_rows(&refs).unwrap();
        let f = char_poly(&coxeter_matrix(&c).unwrap()).unwrap();
        let g = f.reversed();
        prop_assert!(g == f || g == f.neg(), "{} is not reciprocal", f);
    }

    #[test]
    fn dsl_round_trips(src in algebra_source()) {
        let spec = parse_spec(&src).unwrap();
        let printed = spec.to_source();
        let again = parse_spec(&printed).unwrap();
        prop_assert_eq!(&again, &spec);
        prop_assert_eq!(again.to_source(), printed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn serre_powers_act_on_k0_by_the_coxeter_class(name in proptest::sample::select(SMALL.to_vec()), vertex in 0usize..4, n in 1i64..4) {
        let (dc, c) = derived(name);
        let r = c.rows();
        let j = vertex % r;
        // [ν(X)] = CᵀC⁻¹ [X] on dimension vectors; [P_j] is column j of C
        let step = c.transpose().mul(&serre_scope::ktheory::unimodular_inverse(&c).unwrap());
        let mut class: Vec<Q> = (0..r).map(|i| c[(i, j)].clone()).collect();
        for _ in 0..n {
            class = step.mul_vec(&class);
        }
        let expected: Vec<i64> = class.iter().map(|x| x.to_integer().to_string().parse().unwrap()).collect();
        let image = dc.nakayama_power(&ProjComplex::stalk(vec![j], 0), n).unwrap();
        prop_assert_eq!(class_of(&image, &dc, r), expected);
    }

    #[test]
    fn serre_inverse_undoes_serre(name in proptest::sample::select(SMALL.to_vec()), vertex in 0usize..4, shift in -2i64..3) {
        let (dc, c) = derived(name);
        let j = vertex % c.rows();
        let p = ProjComplex::stalk(vec![j], shift);
        let back = dc.nakayama_inverse(&dc.nakayama(&p).unwrap()).unwrap();
        prop_assert_eq!(back.cohomology(dc.algebra()), p.cohomology(dc.algebra()));
        prop_assert!(back.num_generators() == 1 && back.term(shift) == [j]);
        let there = dc.nakayama(&dc.nakayama_inverse(&p).unwrap()).unwrap();
        prop_assert!(there.num_generators() == 1 && there.term(shift) == [j]);
    }
}
