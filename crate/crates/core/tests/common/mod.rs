//! Shared fixtures and independent oracles for the integration suites.

#![allow(dead_code)]

use std::sync::OnceLock;

use ielie::trees::trees_up_to;
use ielie::{Rational, RootedTree};
use proptest::prelude::*;

pub fn t(s: &str) -> RootedTree {
    RootedTree::parse(s).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Trees grouped by size, `0..=8`.
pub fn catalog() -> &'static [Vec<RootedTree>] {
    static CATALOG: OnceLock<Vec<Vec<RootedTree>>> = OnceLock::new();
    CATALOG.get_or_init(|| trees_up_to(8, 8).unwrap())
}

pub fn trees_up_to_size(max: usize) -> Vec<RootedTree> {
    catalog()[..=max].concat()
}

/// Uniformly chosen tree of size at most `max`.
pub fn tree_strategy(max: usize) -> impl Strategy<Value = RootedTree> {
    let trees = trees_up_to_size(max);
    (0..trees.len()).prop_map(move |i| trees[i].clone())
}

/// Rooted-tree counts `r_0 = 0, r_1, …, r_n` from the Euler-transform
/// recurrence `r_{n+1} = (1/n) Σ_{k=1..n} (Σ_{d|k} d·r_d)·r_{n+1−k}`.
pub fn euler_tree_counts(n: usize) -> Vec<u64> {
    let mut r = vec![0u64; n + 1];
    if n >= 1 {
        r[1] = 1;
    }
    for m in 1..n {
        let mut total = 0u64;
        for k in 1..=m {
            let s: u64 = (1..=k)
                .filter(|d| k % d == 0)
                .map(|d| d as u64 * r[d])
                .sum();
            total += s * r[m + 1 - k];
        }
        r[m + 1] = total / m as u64;
    }
    r
}

/// Tree built from a parent array in preorder (`parent[0]` is ignored),
/// canonicalized only through the public constructor.
pub fn tree_from_parents(parent: &[usize]) -> RootedTree {
    fn build(v: usize, parent: &[usize]) -> RootedTree {
        RootedTree::from_children(
            (1..parent.len())
                .filter(|&c| parent[c] == v)
                .map(|c| build(c, parent)),
        )
    }
    build(0, parent)
}
