//! Rooted trees and forests in canonical form.
//!
//! A tree is stored as its canonical parenthesis string: `()` is the single
//! vertex, and a vertex with children `c1 … ck` is `(` + `c1 … ck` + `)`
//! with the children sorted non-decreasing under [`Ord`]. Equal values are
//! exactly isomorphic trees.
//!
//! Vertices are addressed by the position of their `(` in the canonical
//! string, i.e. depth-first with the root first and children in canonical
//! order. Edges are addressed by their lower vertex.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::combination::Combination;
use crate::error::{Error, Result};

/// Default upper bound on tree sizes handed to enumeration routines.
pub const DEFAULT_MAX_TREE_SIZE: usize = 12;

/// A finite rooted tree up to isomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    repr: Arc<str>,
}

impl RootedTree {
    /// The one-vertex tree `•`.
    pub fn single() -> Self {
        Self { repr: "()".into() }
    }

    /// The unary chain on `n ≥ 1` vertices.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least one vertex");
        Self {
            repr: format!("{}{}", "(".repeat(n), ")".repeat(n)).into(),
        }
    }

    /// Parses the grammar `Tree := "(" Tree* ")"`, ignoring ASCII whitespace
    /// between tokens, and returns the canonical form.
    pub fn parse(text: &str) -> Result<Self> {
        let (tokens, offsets) = strip_whitespace(text)?;
        if tokens.is_empty() {
            return Err(Error::parse(0, "empty input is not a rooted tree"));
        }
        let end = match_tree(&tokens, 0).map_err(|at| {
            Error::parse(
                offsets.get(at).copied().unwrap_or(text.len()),
                "unbalanced parentheses",
            )
        })?;
        if end != tokens.len() {
            return Err(Error::parse(
                offsets[end],
                "trailing input after a complete tree",
            ));
        }
        Ok(Self::from_valid(&tokens))
    }

    /// Canonical form of a well-formed single-tree parenthesis string.
    fn from_valid(bytes: &[u8]) -> Self {
        Self {
            repr: canonical_string(bytes).into(),
        }
    }

    /// Root with the given subtrees attached.
    pub fn from_children<I: IntoIterator<Item = RootedTree>>(children: I) -> Self {
        let mut kids: Vec<RootedTree> = children.into_iter().collect();
        kids.sort();
        let mut s = String::with_capacity(2 + kids.iter().map(|k| k.repr.len()).sum::<usize>());
        s.push('(');
        for k in &kids {
            s.push_str(&k.repr);
        }
        s.push(')');
        Self { repr: s.into() }
    }

    /// Canonical text, e.g. `(()())`.
    pub fn render(&self) -> &str {
        &self.repr
    }

    /// Number of vertices `|t|`.
    pub fn size(&self) -> usize {
        self.repr.len() / 2
    }

    /// Subtrees hanging from the root, in canonical order.
    pub fn children(&self) -> Vec<RootedTree> {
        let b = self.repr.as_bytes();
        let mut out = Vec::new();
        let mut i = 1;
        while i + 1 < b.len() {
            let j = matching_close(b, i);
            out.push(RootedTree {
                repr: self.repr[i..=j].into(),
            });
            i = j + 1;
        }
        out
    }

    /// `|Aut(t)|`, the number of root-preserving automorphisms.
    pub fn automorphism_count(&self) -> BigInt {
        let kids = self.children();
        let mut total = BigInt::one();
        let mut i = 0;
        while i < kids.len() {
            let mut j = i;
            while j < kids.len() && kids[j] == kids[i] {
                j += 1;
            }
            let m = j - i;
            let sub = kids[i].automorphism_count();
            for k in 1..=m {
                total *= BigInt::from(k);
                total *= &sub;
            }
            i = j;
        }
        total
    }
}

impl Ord for RootedTree {
    /// Size first, then the canonical strings with `(` < `)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.repr
            .len()
            .cmp(&other.repr.len())
            .then_with(|| self.repr.as_bytes().cmp(other.repr.as_bytes()))
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.repr)
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree{}", self.repr)
    }
}

impl std::str::FromStr for RootedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub fn parse_tree(text: &str) -> Result<RootedTree> {
    RootedTree::parse(text)
}

pub fn render_tree(t: &RootedTree) -> String {
    t.render().to_string()
}

pub fn compare(t: &RootedTree, s: &RootedTree) -> Ordering {
    t.cmp(s)
}

/// Removes ASCII whitespace, rejecting anything that is not a parenthesis.
/// Returns the tokens and the byte offset of each.
fn strip_whitespace(text: &str) -> Result<(Vec<u8>, Vec<usize>)> {
    let mut tokens = Vec::new();
    let mut offsets = Vec::new();
    for (i, b) in text.bytes().enumerate() {
        match b {
            b'(' | b')' => {
                tokens.push(b);
                offsets.push(i);
            }
            b if b.is_ascii_whitespace() => {}
            _ => {
                return Err(Error::parse(
                    i,
                    format!("unexpected character {:?}", b as char),
                ))
            }
        }
    }
    Ok((tokens, offsets))
}

/// Index one past the tree starting at `start`, or the token index where
/// matching failed.
fn match_tree(tokens: &[u8], start: usize) -> std::result::Result<usize, usize> {
    if tokens.get(start) != Some(&b'(') {
        return Err(start);
    }
    let mut depth = 0usize;
    for (i, &b) in tokens.iter().enumerate().skip(start) {
        if b == b'(' {
            depth += 1;
        } else {
            depth -= 1;
            if depth == 0 {
                return Ok(i + 1);
            }
        }
    }
    Err(tokens.len())
}

fn matching_close(b: &[u8], open: usize) -> usize {
    let mut depth = 0usize;
    for (i, &c) in b.iter().enumerate().skip(open) {
        if c == b'(' {
            depth += 1;
        } else {
            depth -= 1;
            if depth == 0 {
                return i;
            }
        }
    }
    unreachable!("unbalanced canonical string")
}

fn canonical_string(b: &[u8]) -> String {
    let mut kids: Vec<String> = Vec::new();
    let mut i = 1;
    while i + 1 < b.len() {
        let j = matching_close(b, i);
        kids.push(canonical_string(&b[i..=j]));
        i = j + 1;
    }
    kids.sort_by(|x, y| {
        x.len()
            .cmp(&y.len())
            .then_with(|| x.as_bytes().cmp(y.as_bytes()))
    });
    let mut s = String::with_capacity(b.len());
    s.push('(');
    for k in &kids {
        s.push_str(k);
    }
    s.push(')');
    s
}

/// Multiset of rooted trees, stored sorted non-decreasing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Forest {
    trees: Vec<RootedTree>,
    total_size: usize,
}

impl Forest {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = RootedTree>>(trees: I) -> Self {
        let mut trees: Vec<RootedTree> = trees.into_iter().collect();
        trees.sort();
        let total_size = trees.iter().map(RootedTree::size).sum();
        Self { trees, total_size }
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    pub fn total_size(&self) -> usize {
        self.total_size
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Largest member, if any.
    pub fn last(&self) -> Option<&RootedTree> {
        self.trees.last()
    }

    /// The forest with `t` added.
    pub fn with(&self, t: RootedTree) -> Self {
        let pos = self.trees.partition_point(|x| *x <= t);
        let mut trees = self.trees.clone();
        let total_size = self.total_size + t.size();
        trees.insert(pos, t);
        Self { trees, total_size }
    }

    /// Splits off the largest member.
    pub fn split_last(&self) -> Option<(RootedTree, Forest)> {
        let (last, rest) = self.trees.split_last()?;
        Some((
            last.clone(),
            Forest {
                trees: rest.to_vec(),
                total_size: self.total_size - last.size(),
            },
        ))
    }

    /// Concatenated canonical strings, `1` for the empty forest.
    pub fn render(&self) -> String {
        if self.trees.is_empty() {
            "1".into()
        } else {
            self.trees.iter().map(|t| t.render()).collect()
        }
    }

    /// Parses the forest text (a concatenation of trees, or `1`).
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim() == "1" {
            return Ok(Self::empty());
        }
        let (tokens, offsets) = strip_whitespace(text)?;
        let mut trees = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let end = match_tree(&tokens, i).map_err(|at| {
                Error::parse(
                    offsets.get(at).copied().unwrap_or(text.len()),
                    "unbalanced parentheses",
                )
            })?;
            trees.push(RootedTree::from_valid(&tokens[i..end]));
            i = end;
        }
        Ok(Self::new(trees))
    }

    fn bytes(&self) -> impl Iterator<Item = u8> + '_ {
        self.trees.iter().flat_map(|t| t.repr.bytes())
    }
}

impl Ord for Forest {
    /// Total size, then the concatenated canonical strings. This is the
    /// order of the trees obtained by [`add_root`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_size
            .cmp(&other.total_size)
            .then_with(|| self.bytes().cmp(other.bytes()))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest[{}]", self.render())
    }
}

/// One edge cut: the part still holding the root, and the pruned subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub edge_index: usize,
    pub root_part: RootedTree,
    pub pruned_part: RootedTree,
}

/// `Σ_{v ∈ V(s)} s ∪_v t`, aggregated over isomorphic results.
pub fn graft(s: &RootedTree, t: &RootedTree) -> Combination<RootedTree, i64> {
    let b = s.repr.as_bytes();
    let mut out = Combination::zero();
    let mut buf = Vec::with_capacity(b.len() + t.repr.len());
    for (i, &c) in b.iter().enumerate() {
        if c != b'(' {
            continue;
        }
        buf.clear();
        buf.extend_from_slice(&b[..=i]);
        buf.extend_from_slice(t.repr.as_bytes());
        buf.extend_from_slice(&b[i + 1..]);
        out.add_term(RootedTree::from_valid(&buf), 1);
    }
    out
}

/// All `|t| − 1` edge cuts, ordered by the lower vertex of the edge.
pub fn cuts(t: &RootedTree) -> Vec<CutResult> {
    let b = t.repr.as_bytes();
    let mut out = Vec::with_capacity(t.size().saturating_sub(1));
    let mut buf = Vec::with_capacity(b.len());
    let mut vertex = 0;
    for (i, &c) in b.iter().enumerate() {
        if c != b'(' {
            continue;
        }
        if i > 0 {
            let j = matching_close(b, i);
            buf.clear();
            buf.extend_from_slice(&b[..i]);
            buf.extend_from_slice(&b[j + 1..]);
            out.push(CutResult {
                edge_index: vertex - 1,
                root_part: RootedTree::from_valid(&buf),
                pruned_part: RootedTree {
                    repr: t.repr[i..=j].into(),
                },
            });
        }
        vertex += 1;
    }
    out
}

/// The forest of root subtrees.
pub fn branches(t: &RootedTree) -> Forest {
    Forest::new(t.children())
}

/// Joins the members of `f` under a new root.
pub fn add_root(f: &Forest) -> RootedTree {
    RootedTree::from_children(f.trees.iter().cloned())
}

fn check_guard(n: usize, max_size: usize) -> Result<()> {
    if n > max_size {
        Err(Error::ResourceLimit {
            what: "tree size",
            requested: n,
            limit: max_size,
        })
    } else {
        Ok(())
    }
}

/// Trees of every size `0..=n` (index 0 is empty), each sorted ascending.
pub fn trees_up_to(n: usize, max_size: usize) -> Result<Vec<Vec<RootedTree>>> {
    check_guard(n, max_size)?;
    let mut by_size: Vec<Vec<RootedTree>> = vec![Vec::new()];
    for k in 1..=n {
        let mut level: Vec<RootedTree> =
            forests_from(&by_size, k - 1).iter().map(add_root).collect();
        level.sort();
        by_size.push(level);
    }
    Ok(by_size)
}

/// Forests of total size `n` built from already enumerated trees.
fn forests_from(by_size: &[Vec<RootedTree>], n: usize) -> Vec<Forest> {
    let pool: Vec<&RootedTree> = by_size.iter().take(n + 1).flatten().collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec<'a>(
        pool: &[&'a RootedTree],
        from: usize,
        remaining: usize,
        current: &mut Vec<&'a RootedTree>,
        out: &mut Vec<Forest>,
    ) {
        if remaining == 0 {
            out.push(Forest::new(current.iter().map(|t| (*t).clone())));
            return;
        }
        for (i, t) in pool.iter().enumerate().skip(from) {
            if t.size() > remaining {
                break;
            }
            current.push(t);
            rec(pool, i, remaining - t.size(), current, out);
            current.pop();
        }
    }
    rec(&pool, 0, n, &mut current, &mut out);
    out.sort();
    out
}

/// All rooted trees on `n ≥ 1` vertices, ascending.
pub fn enumerate_trees(n: usize, max_size: usize) -> Result<Vec<RootedTree>> {
    if n == 0 {
        return Err(Error::domain("trees have at least one vertex"));
    }
    Ok(trees_up_to(n, max_size)?.pop().unwrap_or_default())
}

/// All forests of total size `n`, ascending; `n = 0` gives the empty forest.
pub fn enumerate_forests(n: usize, max_size: usize) -> Result<Vec<Forest>> {
    check_guard(n, max_size)?;
    let by_size = trees_up_to(n, max_size)?;
    Ok(forests_from(&by_size, n))
}

/// Forests of every total size `0..=n`.
pub fn forests_up_to(n: usize, max_size: usize) -> Result<Vec<Vec<Forest>>> {
    let by_size = trees_up_to(n, max_size)?;
    Ok((0..=n).map(|k| forests_from(&by_size, k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RootedTree {
        RootedTree::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(t("()").size(), 1);
        assert_eq!(t("(()())").render(), "(()())");
        assert_eq!(t("((())())"), t("(()(()))"));
        assert_eq!(t("((())())").render(), "(()(()))");
        assert_eq!(t(" ( ( ) ( ) ) ").render(), "(()())");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(
            RootedTree::parse(""),
            Err(Error::Parse {
                offset: 0,
                message: "empty input is not a rooted tree".into()
            })
        );
        assert!(matches!(
            RootedTree::parse("(()"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            RootedTree::parse("()()"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            RootedTree::parse("(x)"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            RootedTree::parse(")("),
            Err(Error::Parse { offset: 0, .. })
        ));
    }

    #[test]
    fn render_examples() {
        assert_eq!(RootedTree::single().render(), "()");
        assert_eq!(RootedTree::chain(3).render(), "((()))");
        assert_eq!(render_tree(&t("(()())")), "(()())");
    }

    #[test]
    fn order_examples() {
        assert_eq!(
            compare(&RootedTree::single(), &RootedTree::chain(2)),
            Ordering::Less
        );
        assert_eq!(compare(&RootedTree::chain(3), &t("(()())")), Ordering::Less);
        assert_eq!(compare(&t("(()())"), &t("(()())")), Ordering::Equal);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_trees(1, 12).unwrap(), vec![RootedTree::single()]);
        assert_eq!(
            enumerate_trees(3, 12).unwrap(),
            vec![RootedTree::chain(3), t("(()())")]
        );
        assert_eq!(enumerate_trees(7, 12).unwrap().len(), 48);
        assert!(matches!(
            enumerate_trees(13, 12),
            Err(Error::ResourceLimit {
                requested: 13,
                limit: 12,
                ..
            })
        ));
    }

    #[test]
    fn forest_enumerations() {
        assert_eq!(enumerate_forests(0, 12).unwrap(), vec![Forest::empty()]);
        let two = enumerate_forests(2, 12).unwrap();
        assert_eq!(
            two,
            vec![
                Forest::new([RootedTree::chain(2)]),
                Forest::new([RootedTree::single(), RootedTree::single()])
            ]
        );
        assert_eq!(enumerate_forests(5, 12).unwrap().len(), 20);
    }

    #[test]
    fn graft_examples() {
        let dot = RootedTree::single();
        let cherry = t("(()())");
        assert_eq!(
            graft(&dot, &dot),
            Combination::term(RootedTree::chain(2), 1)
        );
        let g = graft(&cherry, &dot);
        assert_eq!(g.coefficient(&t("(()()())")), 1);
        assert_eq!(g.coefficient(&t("(()(()))")), 2);
        assert_eq!(g.len(), 2);
        assert_eq!(graft(&dot, &cherry), Combination::term(t("((()()))"), 1));
    }

    #[test]
    fn cut_examples() {
        assert!(cuts(&RootedTree::single()).is_empty());
        let c = cuts(&RootedTree::chain(2));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].root_part, RootedTree::single());
        assert_eq!(c[0].pruned_part, RootedTree::single());
        let c = cuts(&t("(()())"));
        assert_eq!(c.len(), 2);
        for (i, cut) in c.iter().enumerate() {
            assert_eq!(cut.edge_index, i);
            assert_eq!(cut.root_part, RootedTree::chain(2));
            assert_eq!(cut.pruned_part, RootedTree::single());
        }
    }

    #[test]
    fn branches_and_add_root() {
        assert_eq!(branches(&RootedTree::single()), Forest::empty());
        assert_eq!(
            branches(&t("(()())")),
            Forest::new([RootedTree::single(), RootedTree::single()])
        );
        assert_eq!(
            branches(&RootedTree::chain(3)),
            Forest::new([RootedTree::chain(2)])
        );
        assert_eq!(add_root(&Forest::empty()), RootedTree::single());
        let forests = enumerate_forests(2, 12).unwrap();
        let rooted: Vec<RootedTree> = forests.iter().map(add_root).collect();
        assert_eq!(rooted, enumerate_trees(3, 12).unwrap());
    }

    #[test]
    fn forest_text() {
        let f = Forest::parse("(())()").unwrap();
        assert_eq!(f.render(), "()(())");
        assert_eq!(f.total_size(), 3);
        assert_eq!(Forest::parse("1").unwrap(), Forest::empty());
        assert_eq!(Forest::empty().render(), "1");
        assert_eq!(f.split_last().unwrap().0, RootedTree::chain(2));
        assert_eq!(f.split_last().unwrap().1.with(RootedTree::chain(2)), f);
    }

    #[test]
    fn automorphisms() {
        assert_eq!(RootedTree::single().automorphism_count(), BigInt::from(1));
        assert_eq!(t("(()())").automorphism_count(), BigInt::from(2));
        assert_eq!(t("(()()())").automorphism_count(), BigInt::from(6));
        assert_eq!(t("((())(()))").automorphism_count(), BigInt::from(2));
        assert_eq!(t("((()())(()()))").automorphism_count(), BigInt::from(8));
    }
}
