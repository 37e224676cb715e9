//! The natural representation on the span of rooted trees, its quotient by
//! the empty tree, operator matrices, and the commutator oracle for the
//! bracket.

use std::fmt;

use num_bigint::BigInt;

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::liealg::{basis_bracket, homogeneous_degree, BasisElement, LieElementOver};
use crate::matrix::Matrix;
use crate::scalar::Ring;
use crate::trees::{cuts, graft, trees_up_to, RootedTree};

/// Basis of the tree space: the empty tree `1` or a rooted tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CtBasis {
    One,
    Tree(RootedTree),
}

impl CtBasis {
    pub fn degree(&self) -> usize {
        match self {
            CtBasis::One => 0,
            CtBasis::Tree(t) => t.size(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            CtBasis::One => "1".into(),
            CtBasis::Tree(t) => t.render().to_string(),
        }
    }
}

impl From<RootedTree> for CtBasis {
    fn from(t: RootedTree) -> Self {
        CtBasis::Tree(t)
    }
}

impl fmt::Display for CtBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for CtBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub type CtVectorOver<S> = Combination<CtBasis, S>;

/// Action of one basis element on one basis vector.
///
/// `D⁺_t` grafts `t` at every vertex (nothing to graft onto `1`), `D⁻_t`
/// sums root parts of cuts pruning `t` (and sends `t` itself to `1`), and
/// `d` multiplies by the size.
pub fn act_basis(b: &BasisElement, s: &CtBasis) -> Combination<CtBasis, i64> {
    let CtBasis::Tree(s) = s else {
        return Combination::zero();
    };
    match b {
        BasisElement::Plus(t) => graft(s, t)
            .into_terms()
            .into_iter()
            .map(|(u, m)| (CtBasis::Tree(u), m))
            .collect(),
        BasisElement::Minus(t) => {
            let mut out: Combination<CtBasis, i64> = cuts(s)
                .into_iter()
                .filter(|c| c.pruned_part == *t)
                .map(|c| (CtBasis::Tree(c.root_part), 1))
                .collect();
            if s == t {
                out.add_term(CtBasis::One, 1);
            }
            out
        }
        BasisElement::Grade => Combination::term(CtBasis::Tree(s.clone()), s.size() as i64),
    }
}

/// Bilinear action of Lie elements on tree vectors.
pub fn act<S: Ring>(x: &LieElementOver<S>, v: &CtVectorOver<S>) -> CtVectorOver<S> {
    let mut out = Combination::zero();
    for (b, cb) in x {
        for (s, cs) in v {
            let coeff = cb.clone() * cs.clone();
            for (u, m) in &act_basis(b, s) {
                out.add_term(u.clone(), S::from_int(*m) * coeff.clone());
            }
        }
    }
    out
}

/// Action on the quotient by `1`: the input may not involve `1`, and the
/// `1` component of the output is deleted.
pub fn act_on_m<S: Ring>(x: &LieElementOver<S>, v: &CtVectorOver<S>) -> Result<CtVectorOver<S>> {
    if v.keys().any(|k| *k == CtBasis::One) {
        return Err(Error::domain("vectors of the quotient have no 1 component"));
    }
    let mut out = act(x, v);
    out.retain(|k, _| *k != CtBasis::One);
    Ok(out)
}

/// Basis of the degree-`n` part: `[1]` for `n = 0`, otherwise the trees of
/// size `n` in ascending order.
pub fn degree_basis(n: usize, max_size: usize) -> Result<Vec<CtBasis>> {
    if n == 0 {
        return Ok(vec![CtBasis::One]);
    }
    Ok(trees_up_to(n, max_size)?
        .pop()
        .unwrap_or_default()
        .into_iter()
        .map(CtBasis::Tree)
        .collect())
}

/// Matrix of a homogeneous element from degree `n` to degree `n + k`.
pub fn operator_matrix<S: Ring>(
    x: &LieElementOver<S>,
    n: usize,
    max_size: usize,
) -> Result<Matrix<S>> {
    let k = if x.is_zero() {
        0
    } else {
        homogeneous_degree(x)
            .ok_or_else(|| Error::domain("operator matrices need a homogeneous element"))?
    };
    let target = n as i64 + k;
    if target < 0 {
        return Err(Error::domain(format!(
            "degree {k} operator maps degree {n} below zero"
        )));
    }
    let source = degree_basis(n, max_size)?;
    let dest = degree_basis(target as usize, max_size)?;
    let columns: Vec<CtVectorOver<S>> = source
        .iter()
        .map(|s| act(x, &Combination::basis(s.clone())))
        .collect();
    Ok(Matrix::from_fn(dest.len(), source.len(), |r, c| {
        columns[c].coefficient(&dest[r])
    }))
}

/// First basis vector on which `[x, y]` and `xy − yx` disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub source: CtBasis,
    pub bracket_side: CtVectorOver<BigInt>,
    pub commutator_side: CtVectorOver<BigInt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub x: BasisElement,
    pub y: BasisElement,
    pub max_degree: usize,
    pub sources_checked: usize,
    pub discrepancy: Option<Discrepancy>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.discrepancy.is_none()
    }
}

/// Compares the structure-constant bracket with the operator commutator on
/// every basis vector of degree `0..=max_degree`.
///
/// Intermediate and target degrees are not truncated, so the comparison is
/// the column-by-column form of
/// `M([x,y], n) = M(x, n + deg y)·M(y, n) − M(y, n + deg x)·M(x, n)`.
pub fn oracle_bracket_check(
    x: &BasisElement,
    y: &BasisElement,
    max_degree: usize,
    max_size: usize,
) -> Result<OracleReport> {
    let by_size = trees_up_to(max_degree, max_size)?;
    let br: LieElementOver<BigInt> = basis_bracket(x, y).map_coefficients(|c| BigInt::from(*c));
    let xe: LieElementOver<BigInt> = Combination::basis(x.clone());
    let ye: LieElementOver<BigInt> = Combination::basis(y.clone());
    let sources =
        std::iter::once(CtBasis::One).chain(by_size.into_iter().flatten().map(CtBasis::Tree));
    let mut checked = 0;
    for s in sources {
        let v = Combination::basis(s.clone());
        let lhs = act(&br, &v);
        let rhs = act(&xe, &act(&ye, &v)).minus(&act(&ye, &act(&xe, &v)));
        checked += 1;
        if lhs != rhs {
            return Ok(OracleReport {
                x: x.clone(),
                y: y.clone(),
                max_degree,
                sources_checked: checked,
                discrepancy: Some(Discrepancy {
                    source: s,
                    bracket_side: lhs,
                    commutator_side: rhs,
                }),
            });
        }
    }
    Ok(OracleReport {
        x: x.clone(),
        y: y.clone(),
        max_degree,
        sources_checked: checked,
        discrepancy: None,
    })
}

/// Dimensions `[1, r_1, …, r_N]` of the graded pieces.
pub fn ct_character(n: usize, max_size: usize) -> Result<Vec<usize>> {
    let by_size = trees_up_to(n, max_size)?;
    Ok(std::iter::once(1)
        .chain(by_size.iter().skip(1).map(Vec::len))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{dminus, dplus, grade};
    use crate::trees::DEFAULT_MAX_TREE_SIZE as MAX;

    type V = CtVectorOver<BigInt>;
    type El = LieElementOver<BigInt>;

    fn t(s: &str) -> RootedTree {
        RootedTree::parse(s).unwrap()
    }

    fn vec_of(s: &str) -> V {
        Combination::basis(CtBasis::Tree(t(s)))
    }

    fn z(n: i64) -> BigInt {
        n.into()
    }

    #[test]
    fn act_examples() {
        assert_eq!(
            act::<BigInt>(&dplus(t("()")), &vec_of("()")),
            vec_of("(())")
        );
        assert_eq!(
            act::<BigInt>(&grade(), &vec_of("(()())")),
            vec_of("(()())").scaled(&z(3))
        );
        assert_eq!(
            act::<BigInt>(&dminus(t("()")), &vec_of("(()())")),
            vec_of("(())").scaled(&z(2))
        );
    }

    #[test]
    fn empty_tree_conventions() {
        let one: V = Combination::basis(CtBasis::One);
        assert!(act::<BigInt>(&dplus(t("()")), &one).is_zero());
        assert!(act::<BigInt>(&dminus(t("()")), &one).is_zero());
        assert!(act::<BigInt>(&grade(), &one).is_zero());
        assert_eq!(act::<BigInt>(&dminus(t("()")), &vec_of("()")), one);
    }

    #[test]
    fn quotient_examples() {
        let dm: El = dminus(t("()"));
        assert!(act_on_m(&dm, &vec_of("()")).unwrap().is_zero());
        assert_eq!(act_on_m(&dm, &vec_of("(())")).unwrap(), vec_of("()"));
        assert_eq!(
            act_on_m::<BigInt>(&grade(), &vec_of("()")).unwrap(),
            vec_of("()")
        );
        let with_one: V = vec_of("()").plus(&Combination::basis(CtBasis::One));
        assert!(matches!(act_on_m(&dm, &with_one), Err(Error::Domain(_))));
    }

    #[test]
    fn operator_matrix_examples() {
        let m = operator_matrix::<BigInt>(&grade(), 3, MAX).unwrap();
        assert_eq!(
            m,
            Matrix::from_fn(2, 2, |r, c| z(if r == c { 3 } else { 0 }))
        );
        let m = operator_matrix::<BigInt>(&dminus(t("()")), 3, MAX).unwrap();
        assert_eq!(m.to_rows(), vec![vec![z(1), z(2)]]);
        for n in 1..=5 {
            let m = operator_matrix::<BigInt>(&dplus(t("(()())")), n, MAX).unwrap();
            for c in 0..m.cols() {
                let sum: BigInt = (0..m.rows()).map(|r| m.get(r, c).clone()).sum();
                assert_eq!(sum, z(n as i64));
            }
        }
        assert!(operator_matrix::<BigInt>(&dminus(t("(())")), 1, MAX).is_err());
        let mixed: El = dplus::<BigInt>(t("()")).plus(&grade());
        assert!(operator_matrix(&mixed, 1, MAX).is_err());
        assert!(matches!(
            operator_matrix::<BigInt>(&grade(), 13, MAX),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn oracle_examples() {
        use BasisElement::*;
        let dot = t("()");
        for (x, y) in [
            (Minus(dot.clone()), Plus(t("(()())"))),
            (Minus(t("(())")), Plus(t("(())"))),
            (Plus(dot.clone()), Plus(dot.clone())),
            (Minus(dot.clone()), Minus(t("(()())"))),
        ] {
            let r = oracle_bracket_check(&x, &y, 4, MAX).unwrap();
            assert!(r.passed(), "{x} {y}: {:?}", r.discrepancy);
            assert_eq!(r.sources_checked, 1 + 1 + 1 + 2 + 4);
        }
    }

    #[test]
    fn character_examples() {
        assert_eq!(ct_character(3, MAX).unwrap(), vec![1, 1, 1, 2]);
        assert_eq!(ct_character(0, MAX).unwrap(), vec![1]);
        assert_eq!(
            ct_character(7, MAX).unwrap(),
            vec![1, 1, 1, 2, 4, 9, 20, 48]
        );
    }
}
