//! The insertion-elimination Lie algebra: basis, structure constants and
//! bracket, involutions, and the degree-lowering descent.
//!
//! Brackets of basis elements:
//!
//! * `[D⁺a, D⁺b] = Σ_{v∈V(b)} D⁺(b ∪_v a) − Σ_{v∈V(a)} D⁺(a ∪_v b)`
//! * `[D⁻a, D⁻b] = Σ_u cut(u; a, b) D⁻u − Σ_u cut(u; b, a) D⁻u`, where
//!   `cut(u; r, p)` counts edges of `u` whose cut leaves root part `r` and
//!   pruned part `p`
//! * `[D⁻a, D⁺b] = Σ_s alpha(a, b; s) D⁺s + Σ_s regraft(a, b; s) D⁻s + δ_ab d`
//! * `[d, D⁺t] = |t| D⁺t`, `[d, D⁻t] = −|t| D⁻t`
//!
//! These are exactly the commutators of the operators acting on the span of
//! rooted trees (see [`crate::ctrep`]). The cut-counting `beta` differs from
//! `regraft_count` by automorphism factors:
//! `beta(a, b; s)·|Aut s|·|Aut b| = regraft_count(a, b; s)·|Aut a|`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::trees::{branches, cuts, graft, RootedTree};

/// `D⁺_t`, `D⁻_t` or the grading element `d`.
///
/// The derived order (all `D⁺` by tree order, then all `D⁻`, then `d`) is
/// the canonical term order for rendering.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Plus(RootedTree),
    Minus(RootedTree),
    Grade,
}

impl BasisElement {
    pub fn degree(&self) -> i64 {
        match self {
            BasisElement::Plus(t) => t.size() as i64,
            BasisElement::Minus(t) => -(t.size() as i64),
            BasisElement::Grade => 0,
        }
    }

    pub fn tree(&self) -> Option<&RootedTree> {
        match self {
            BasisElement::Plus(t) | BasisElement::Minus(t) => Some(t),
            BasisElement::Grade => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            BasisElement::Plus(t) => format!("Dp[{t}]"),
            BasisElement::Minus(t) => format!("Dm[{t}]"),
            BasisElement::Grade => "d".into(),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Element of the Lie algebra with coefficients in `S`.
pub type LieElementOver<S> = Combination<BasisElement, S>;

pub fn dplus<S: Ring>(t: RootedTree) -> LieElementOver<S> {
    Combination::basis(BasisElement::Plus(t))
}

pub fn dminus<S: Ring>(t: RootedTree) -> LieElementOver<S> {
    Combination::basis(BasisElement::Minus(t))
}

pub fn grade<S: Ring>() -> LieElementOver<S> {
    Combination::basis(BasisElement::Grade)
}

/// Common degree of all terms, if there is one (`None` for zero too).
pub fn homogeneous_degree<S: Ring>(x: &LieElementOver<S>) -> Option<i64> {
    let mut degrees = x.keys().map(BasisElement::degree);
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

/// `#{e ∈ E(t2) : R_e(t2) = t, P_e(t2) = t1}`
pub fn alpha(t1: &RootedTree, t2: &RootedTree, t: &RootedTree) -> usize {
    if t.size() + t1.size() != t2.size() {
        return 0;
    }
    cuts(t2)
        .iter()
        .filter(|c| c.pruned_part == *t1 && c.root_part == *t)
        .count()
}

/// `#{e ∈ E(t1) : R_e(t1) = t, P_e(t1) = t2}`
pub fn beta(t1: &RootedTree, t2: &RootedTree, t: &RootedTree) -> usize {
    if t.size() + t2.size() != t1.size() {
        return 0;
    }
    cuts(t1)
        .iter()
        .filter(|c| c.pruned_part == *t2 && c.root_part == *t)
        .count()
}

/// `#{v ∈ V(t) : t ∪_v t2 ≅ t1}`: the coefficient of `D⁻t` in
/// `[D⁻t1, D⁺t2]`.
pub fn regraft_count(t1: &RootedTree, t2: &RootedTree, t: &RootedTree) -> usize {
    if t.size() + t2.size() != t1.size() {
        return 0;
    }
    graft(t, t2).coefficient(t1) as usize
}

/// `Σ_t alpha(t1, t2; t) · t`
fn alpha_terms(t1: &RootedTree, t2: &RootedTree) -> Combination<RootedTree, i64> {
    if t1.size() >= t2.size() {
        return Combination::zero();
    }
    cuts(t2)
        .into_iter()
        .filter(|c| c.pruned_part == *t1)
        .map(|c| (c.root_part, 1))
        .collect()
}

/// `Σ_t regraft_count(t1, t2; t) · t`
fn regraft_terms(t1: &RootedTree, t2: &RootedTree) -> Combination<RootedTree, i64> {
    if t2.size() >= t1.size() {
        return Combination::zero();
    }
    let mut out = Combination::zero();
    let mut seen: Vec<RootedTree> = Vec::new();
    for c in cuts(t1) {
        if c.pruned_part != *t2 || seen.contains(&c.root_part) {
            continue;
        }
        let m = graft(&c.root_part, t2).coefficient(t1);
        out.add_term(c.root_part.clone(), m);
        seen.push(c.root_part);
    }
    out
}

/// `Σ_u cut(u; root, pruned) · u` over trees `u` of size `|root| + |pruned|`.
fn cut_terms(root: &RootedTree, pruned: &RootedTree) -> Combination<RootedTree, i64> {
    graft(root, pruned)
        .keys()
        .map(|u| (u.clone(), beta(u, pruned, root) as i64))
        .collect()
}

fn lift<F: Fn(RootedTree) -> BasisElement>(
    c: &Combination<RootedTree, i64>,
    sign: i64,
    f: F,
    out: &mut Combination<BasisElement, i64>,
) {
    for (t, m) in c {
        out.add_term(f(t.clone()), sign * m);
    }
}

/// Bracket of two basis elements with integer structure constants.
pub fn basis_bracket(x: &BasisElement, y: &BasisElement) -> Combination<BasisElement, i64> {
    use BasisElement::*;
    let mut out = Combination::zero();
    match (x, y) {
        (Grade, Grade) => {}
        (Grade, b) => out.add_term(b.clone(), b.degree()),
        (a, Grade) => out.add_term(a.clone(), -a.degree()),
        (Plus(a), Plus(b)) => {
            lift(&graft(b, a), 1, Plus, &mut out);
            lift(&graft(a, b), -1, Plus, &mut out);
        }
        (Minus(a), Minus(b)) => {
            lift(&cut_terms(a, b), 1, Minus, &mut out);
            lift(&cut_terms(b, a), -1, Minus, &mut out);
        }
        (Minus(a), Plus(b)) => {
            lift(&alpha_terms(a, b), 1, Plus, &mut out);
            lift(&regraft_terms(a, b), 1, Minus, &mut out);
            if a == b {
                out.add_term(Grade, 1);
            }
        }
        (Plus(_), Minus(_)) => return basis_bracket(y, x).negated(),
    }
    out
}

/// The Lie bracket, extended bilinearly.
pub fn bracket<S: Ring>(x: &LieElementOver<S>, y: &LieElementOver<S>) -> LieElementOver<S> {
    let mut out = Combination::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            let coeff = ca.clone() * cb.clone();
            for (k, m) in &basis_bracket(a, b) {
                out.add_term(k.clone(), S::from_int(*m) * coeff.clone());
            }
        }
    }
    out
}

/// `D⁺t ↦ D⁻t`, `D⁻t ↦ D⁺t`, `d ↦ −d`, extended linearly.
///
/// This reverses degrees and squares to the identity, but it does not
/// respect the bracket; [`chevalley_involution`] does.
pub fn involution<S: Ring>(x: &LieElementOver<S>) -> LieElementOver<S> {
    x.map_linear(|b| match b {
        BasisElement::Plus(t) => dminus(t.clone()),
        BasisElement::Minus(t) => dplus(t.clone()),
        BasisElement::Grade => grade::<S>().negated(),
    })
}

/// Degree-reversing involutive automorphism
/// `D⁺t ↦ −|Aut t|·D⁻t`, `D⁻t ↦ −D⁺t / |Aut t|`, `d ↦ −d`.
pub fn chevalley_involution(x: &LieElementOver<BigRational>) -> LieElementOver<BigRational> {
    let aut = |t: &RootedTree| BigRational::from_integer(t.automorphism_count());
    x.map_linear(|b| match b {
        BasisElement::Plus(t) => Combination::term(BasisElement::Minus(t.clone()), -aut(t)),
        BasisElement::Minus(t) => {
            Combination::term(BasisElement::Plus(t.clone()), -BigRational::one() / aut(t))
        }
        BasisElement::Grade => Combination::term(BasisElement::Grade, -BigRational::one()),
    })
}

/// One bracket with `D⁻ξ` during [`descend`].
#[derive(Debug, Clone, PartialEq)]
pub struct DescentStep {
    pub xi: RootedTree,
    pub result: LieElementOver<BigRational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DescentOutcome {
    /// The last result is `coefficient · D⁺•`.
    Reached { coefficient: BigRational },
    /// The bracket at this step index was zero.
    Vanished { step: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Descent {
    pub steps: Vec<DescentStep>,
    pub outcome: DescentOutcome,
}

/// Repeatedly brackets a homogeneous `D⁺`-combination with `D⁻ξ`, where
/// `ξ` is the largest root branch among the supporting trees (ties go to the
/// maximum in tree order), until degree 1 is reached.
pub fn descend(x: &LieElementOver<BigRational>) -> Result<Descent> {
    if x.is_zero() {
        return Err(Error::domain("descent needs a nonzero element"));
    }
    if x.keys().any(|b| !matches!(b, BasisElement::Plus(_))) {
        return Err(Error::domain(
            "descent needs an element supported on D+ terms",
        ));
    }
    let Some(degree) = homogeneous_degree(x) else {
        return Err(Error::domain("descent needs a homogeneous element"));
    };
    debug_assert!(degree >= 1);
    let mut current = x.clone();
    let mut steps = Vec::new();
    loop {
        if homogeneous_degree(&current) == Some(1) {
            let coefficient = current.coefficient(&BasisElement::Plus(RootedTree::single()));
            return Ok(Descent {
                steps,
                outcome: DescentOutcome::Reached { coefficient },
            });
        }
        let xi = current
            .keys()
            .filter_map(BasisElement::tree)
            .flat_map(|t| branches(t).trees().to_vec())
            .max()
            .expect("trees of size > 1 have branches");
        let result = bracket(&dminus(xi.clone()), &current);
        let vanished = result.is_zero();
        steps.push(DescentStep {
            xi,
            result: result.clone(),
        });
        if vanished {
            return Ok(Descent {
                outcome: DescentOutcome::Vanished {
                    step: steps.len() - 1,
                },
                steps,
            });
        }
        current = result;
    }
}

/// Integer form of a structure-constant combination.
pub fn to_rational(x: &Combination<BasisElement, i64>) -> LieElementOver<BigRational> {
    x.map_coefficients(|c| BigRational::from_integer(BigInt::from(*c)))
}
