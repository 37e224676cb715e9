mod common;

use std::collections::BTreeSet;

use common::*;
use ielie::trees::{add_root, branches, cuts, enumerate_forests, enumerate_trees, graft};
use ielie::{Forest, RootedTree};
use proptest::prelude::*;

#[test]
fn round_trip_up_to_size_eight() {
    for t in catalog().iter().flatten() {
        assert_eq!(RootedTree::parse(t.render()).unwrap(), *t);
    }
}

#[test]
fn counts_match_euler_recurrence() {
    let oracle = euler_tree_counts(10);
    for (n, &expected) in oracle.iter().enumerate().skip(1) {
        assert_eq!(
            enumerate_trees(n, 12).unwrap().len() as u64,
            expected,
            "n = {n}"
        );
    }
}

/// Brute force: every parent array `parent[i] < i` is a preorder-labelled
/// tree; collecting isomorphism classes counts trees without the
/// library's enumeration.
#[test]
fn counts_match_brute_force_labelled_trees() {
    fn rec(parent: &mut Vec<usize>, n: usize, out: &mut BTreeSet<RootedTree>) {
        if parent.len() == n {
            out.insert(tree_from_parents(parent));
            return;
        }
        for p in 0..parent.len() {
            parent.push(p);
            rec(parent, n, out);
            parent.pop();
        }
    }
    for n in 1..=7 {
        let mut classes = BTreeSet::new();
        rec(&mut vec![0], n, &mut classes);
        let enumerated = enumerate_trees(n, 12).unwrap();
        assert_eq!(
            classes.into_iter().collect::<Vec<_>>(),
            enumerated,
            "n = {n}"
        );
    }
}

#[test]
fn forests_correspond_to_trees() {
    for n in 0..=8 {
        let forests = enumerate_forests(n, 12).unwrap();
        let trees = enumerate_trees(n + 1, 12).unwrap();
        assert_eq!(forests.len(), trees.len());
        let images: Vec<RootedTree> = forests.iter().map(add_root).collect();
        assert_eq!(images, trees, "add_root is an order-preserving bijection");
        for (f, t) in forests.iter().zip(&trees) {
            assert_eq!(branches(t), *f);
        }
    }
}

#[test]
fn enumeration_is_sorted_and_distinct() {
    for n in 1..=8 {
        let trees = enumerate_trees(n, 12).unwrap();
        assert!(trees.windows(2).all(|w| w[0] < w[1]));
        assert!(trees.iter().all(|t| t.size() == n));
    }
    assert_eq!(enumerate_forests(0, 12).unwrap(), vec![Forest::empty()]);
}

#[test]
fn cut_counts() {
    for t in catalog().iter().flatten() {
        let cs = cuts(t);
        assert_eq!(cs.len(), t.size() - 1);
        for c in cs {
            assert_eq!(c.root_part.size() + c.pruned_part.size(), t.size());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graft_mass(s in tree_strategy(6), t in tree_strategy(6)) {
        let g = graft(&s, &t);
        let mass: i64 = g.iter().map(|(_, m)| *m).sum();
        prop_assert_eq!(mass, s.size() as i64);
        prop_assert!(g.keys().all(|u| u.size() == s.size() + t.size()));
    }

    #[test]
    fn grafting_then_cutting_recovers_the_parts(s in tree_strategy(5), t in tree_strategy(5)) {
        for u in graft(&s, &t).keys() {
            prop_assert!(cuts(u).iter().any(|c| c.root_part == s && c.pruned_part == t));
        }
    }

    #[test]
    fn parser_ignores_child_order_and_whitespace(parent in proptest::collection::vec(0usize..8, 0..7)) {
        let parent: Vec<usize> = std::iter::once(0)
            .chain(parent.iter().enumerate().map(|(i, &p)| p % (i + 1)))
            .collect();
        let t = tree_from_parents(&parent);
        let reversed: String = t.render().chars().rev()
            .map(|c| if c == '(' { ')' } else { '(' })
            .collect();
        let spaced: String = reversed.chars().flat_map(|c| [c, ' ']).collect();
        prop_assert_eq!(RootedTree::parse(&spaced).unwrap(), t);
    }
}
