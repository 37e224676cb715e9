mod common;

use common::*;
use ielie::ctrep::act;
use ielie::liealg::{basis_bracket, dplus};
use ielie::trees::{enumerate_forests, trees_up_to};
use ielie::verma::{
    annihilated_at, exceptional_candidates, kernel_at, pbw_sort, singular_system, transport_to_m,
    verma_character, ExceptionalOutcome, VermaEngine,
};
use ielie::{
    BasisElement, Combination, CtBasis, CtVector, Forest, LambdaPoly, Rational, RootedTree,
    VermaVector,
};
use proptest::prelude::*;

fn forest_strategy(max: usize) -> impl Strategy<Value = Forest> {
    let all: Vec<Forest> = (0..=max)
        .flat_map(|n| enumerate_forests(n, 12).unwrap())
        .collect();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn basis_strategy(max: usize) -> impl Strategy<Value = BasisElement> {
    prop_oneof![
        tree_strategy(max).prop_map(BasisElement::Plus),
        tree_strategy(max).prop_map(BasisElement::Minus),
        Just(BasisElement::Grade),
    ]
}

fn apply_combination(
    engine: &mut VermaEngine,
    x: &Combination<BasisElement, i64>,
    w: &VermaVector,
) -> Combination<Forest, LambdaPoly> {
    let mut out = Combination::zero();
    for (b, c) in x {
        out.add_scaled(engine.apply(b, w).terms(), &LambdaPoly::constant(*c));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// `x·(y·w) − y·(x·w) = [x, y]·w` with `λ` symbolic.
    #[test]
    fn verma_action_is_a_representation(
        x in basis_strategy(3),
        y in basis_strategy(3),
        f in forest_strategy(4),
    ) {
        let mut engine = VermaEngine::new();
        let w = VermaVector::monomial(f);
        let (yw, xw) = (engine.apply(&y, &w), engine.apply(&x, &w));
        let xy = engine.apply(&x, &yw);
        let yx = engine.apply(&y, &xw);
        let lhs = xy.terms().minus(yx.terms());
        let rhs = apply_combination(&mut engine, &basis_bracket(&x, &y), &w);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weights_shift_by_degree(b in basis_strategy(4), f in forest_strategy(5)) {
        let n = f.total_size() as i64;
        let image = VermaEngine::new().apply(&b, &VermaVector::monomial(f));
        let target = n + b.degree();
        if target < 0 {
            prop_assert!(image.is_zero());
        } else {
            prop_assert_eq!(image.weight_offset() as i64, target);
            prop_assert!(image.terms().keys().all(|g| g.total_size() as i64 == target));
        }
    }

    #[test]
    fn single_lowering_is_affine_in_lambda(t in tree_strategy(5), f in forest_strategy(5)) {
        let image = VermaEngine::new().apply(&BasisElement::Minus(t), &VermaVector::monomial(f));
        prop_assert!(image.terms().iter().all(|(_, p)| p.degree().unwrap_or(0) <= 1));
    }
}

fn word_strategy() -> impl Strategy<Value = Vec<RootedTree>> {
    proptest::collection::vec(tree_strategy(3), 0..5).prop_filter("total size at most 6", |w| {
        w.iter().map(RootedTree::size).sum::<usize>() <= 6
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Sorting is a projection and the sorted form acts on the tree space
    /// exactly like the word itself.
    #[test]
    fn pbw_sort_matches_the_word(word in word_strategy()) {
        let sorted = pbw_sort(&word);
        prop_assert!(sorted.terms().iter().all(|(_, p)| p.is_constant()));
        let mut direct: CtVector = CtVector::basis(CtBasis::Tree(RootedTree::single()));
        for s in word.iter().rev() {
            direct = act(&dplus::<Rational>(s.clone()), &direct);
        }
        prop_assert_eq!(transport_to_m(&sorted), direct);
        for (f, _) in sorted.terms() {
            let as_word: Vec<RootedTree> = f.trees().iter().rev().cloned().collect();
            prop_assert_eq!(pbw_sort(&as_word), VermaVector::monomial(f.clone()));
        }
    }
}

#[test]
fn pencils_are_affine_up_to_level_five() {
    for n in 1..=5 {
        let s = singular_system(n, 5).unwrap();
        assert_eq!(s.columns, enumerate_forests(n, 12).unwrap());
        let expected_rows: usize = (1..=n)
            .map(|k| {
                trees_up_to(k, 12).unwrap()[k].len() * enumerate_forests(n - k, 12).unwrap().len()
            })
            .sum();
        assert_eq!(s.rows.len(), expected_rows);
    }
}

#[test]
fn weight_space_dimensions() {
    let c = verma_character(8, 12).unwrap();
    let r = euler_tree_counts(9);
    for n in 0..=8 {
        assert_eq!(c.dims[n] as u64, r[n + 1]);
    }
    assert!(c.add_root_identity && c.product_identity);
}

#[test]
fn kernel_vectors_are_singular() {
    let points = [
        q(0),
        q(1),
        q(-1),
        q(2),
        Rational::new((-1).into(), 2.into()),
    ];
    for lam0 in &points {
        for n in 1..=4 {
            let mut engine = VermaEngine::new();
            for w in kernel_at(lam0, n, 5).unwrap() {
                assert!(annihilated_at(&mut engine, &w, lam0).unwrap());
                assert!(!w.is_zero());
            }
        }
    }
}

#[test]
fn exceptional_set_at_level_two() {
    let ExceptionalOutcome::Found(e) = exceptional_candidates(2, 5).unwrap() else {
        panic!("full generic rank expected")
    };
    assert_eq!(e.det.render(), "2*lam^2");
    assert_eq!(e.confirmed, vec![q(0)]);
    assert!(e.rejected.is_empty());
    assert!(e.residual.is_constant());
}

#[test]
fn pencil_entries_are_non_negative() {
    for n in 1..=5 {
        let s = singular_system(n, 5).unwrap();
        for m in [&s.a, &s.b] {
            assert!(m
                .to_rows()
                .iter()
                .flatten()
                .all(|x| x.sign() != num_bigint::Sign::Minus));
        }
    }
}
