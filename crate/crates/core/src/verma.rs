//! Verma modules `W(λ)` with symbolic lowest weight `λ`.
//!
//! A forest `{t_1 ⪯ … ⪯ t_k}` stands for the PBW monomial
//! `D⁺_{t_k} ⋯ D⁺_{t_1}·v`, so the largest tree is the leftmost operator.
//! Raising operators are normal-ordered with the `D⁺D⁺` bracket; lowering
//! operators are commuted to the right with the mixed bracket until they
//! hit `v`, which they annihilate, while `d·v = λv`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::combination::Combination;
use crate::ctrep::{act, CtBasis, CtVectorOver};
use crate::error::{Error, Result};
use crate::liealg::{basis_bracket, dplus, BasisElement, LieElementOver};
use crate::matrix::{bareiss_det, fraction_free_pivots, rank_kernel, Matrix};
use crate::poly::{rational_roots, LambdaPoly};
use crate::trees::{add_root, forests_up_to, trees_up_to, Forest, RootedTree};

/// Default bound on the weight offset for singular-vector computations.
pub const DEFAULT_MAX_LEVEL: usize = 5;

/// Vector of `W(λ)` in a single weight space `λ + n`.
#[derive(Clone, PartialEq)]
pub struct VermaVector {
    weight_offset: usize,
    terms: Combination<Forest, LambdaPoly>,
}

impl VermaVector {
    /// The lowest-weight vector `v`.
    pub fn lowest() -> Self {
        Self::monomial(Forest::empty())
    }

    pub fn zero(weight_offset: usize) -> Self {
        Self {
            weight_offset,
            terms: Combination::zero(),
        }
    }

    pub fn monomial(f: Forest) -> Self {
        Self {
            weight_offset: f.total_size(),
            terms: Combination::basis(f),
        }
    }

    /// Builds a vector from terms that must all have total size
    /// `weight_offset`.
    pub fn from_terms(
        weight_offset: usize,
        terms: Combination<Forest, LambdaPoly>,
    ) -> Result<Self> {
        if terms.keys().any(|f| f.total_size() != weight_offset) {
            return Err(Error::domain("Verma vector mixes weight spaces"));
        }
        Ok(Self {
            weight_offset,
            terms,
        })
    }

    pub fn weight_offset(&self) -> usize {
        self.weight_offset
    }

    pub fn terms(&self) -> &Combination<Forest, LambdaPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Coefficients evaluated at `λ = λ₀`.
    pub fn evaluate(&self, lam0: &BigRational) -> Combination<Forest, BigRational> {
        self.terms.map_coefficients(|p| p.eval(lam0))
    }

    /// Text form, e.g. `(2*lam + 1)*[()] + 1*[(())]`; the empty forest is
    /// `[1]`.
    pub fn render(&self) -> String {
        if self.terms.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (f, p)) in self.terms.iter().enumerate() {
            let negative =
                p.is_monomial() && p.leading_coefficient().is_some_and(|c| c.is_negative());
            let shown = if negative { -p.clone() } else { p.clone() };
            let coeff = if shown.is_monomial() {
                shown.render()
            } else {
                format!("({})", shown.render())
            };
            match (i, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&format!("{coeff}*[{f}]"));
        }
        out
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VermaVector(n={}, {})",
            self.weight_offset,
            self.render()
        )
    }
}

type IntForms = Combination<Forest, BigInt>;
type PolyForms = Combination<Forest, LambdaPoly>;

/// Memoized normal-ordering engine for basis operators on PBW monomials.
#[derive(Default)]
pub struct VermaEngine {
    raise_cache: HashMap<(RootedTree, Forest), IntForms>,
    lower_cache: HashMap<(RootedTree, Forest), PolyForms>,
}

impl VermaEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// `D⁺_s` applied to the monomial of `f`; integer coefficients.
    pub fn raise(&mut self, s: &RootedTree, f: &Forest) -> IntForms {
        let Some((b, rest)) = f.split_last() else {
            return Combination::basis(f.with(s.clone()));
        };
        if *s >= b {
            return Combination::basis(f.with(s.clone()));
        }
        let key = (s.clone(), f.clone());
        if let Some(hit) = self.raise_cache.get(&key) {
            return hit.clone();
        }
        // D⁺_s D⁺_b R = D⁺_b D⁺_s R + [D⁺_s, D⁺_b] R
        let mut out = Combination::zero();
        for (g, c) in &self.raise(s, &rest) {
            out.add_scaled(&self.raise(&b, g), c);
        }
        let commutator = basis_bracket(&BasisElement::Plus(s.clone()), &BasisElement::Plus(b));
        for (u, m) in &commutator {
            let BasisElement::Plus(u) = u else {
                unreachable!("D+ brackets stay in D+")
            };
            out.add_scaled(&self.raise(u, &rest), &BigInt::from(*m));
        }
        self.raise_cache.insert(key, out.clone());
        out
    }

    fn raise_poly(&mut self, s: &RootedTree, v: &PolyForms) -> PolyForms {
        let mut out = Combination::zero();
        for (f, p) in v {
            for (g, c) in &self.raise(s, f) {
                out.add_term(g.clone(), p.clone() * LambdaPoly::constant(c.clone()));
            }
        }
        out
    }

    /// `D⁻_a` applied to the monomial of `f`.
    pub fn lower(&mut self, a: &RootedTree, f: &Forest) -> PolyForms {
        if a.size() > f.total_size() {
            return Combination::zero();
        }
        let Some((b, rest)) = f.split_last() else {
            return Combination::zero();
        };
        let key = (a.clone(), f.clone());
        if let Some(hit) = self.lower_cache.get(&key) {
            return hit.clone();
        }
        // D⁻_a D⁺_b R = D⁺_b D⁻_a R + [D⁻_a, D⁺_b] R
        let inner = self.lower(a, &rest);
        let mut out = self.raise_poly(&b, &inner);
        let commutator = basis_bracket(&BasisElement::Minus(a.clone()), &BasisElement::Plus(b));
        for (e, m) in &commutator {
            let m = LambdaPoly::constant(*m);
            match e {
                BasisElement::Plus(s) => {
                    for (g, c) in &self.raise(s, &rest) {
                        out.add_term(g.clone(), m.clone() * LambdaPoly::constant(c.clone()));
                    }
                }
                BasisElement::Minus(s) => {
                    for (g, p) in &self.lower(s, &rest) {
                        out.add_term(g.clone(), m.clone() * p.clone());
                    }
                }
                BasisElement::Grade => {
                    let weight = LambdaPoly::lam_plus(rest.total_size() as i64);
                    out.add_term(rest.clone(), m * weight);
                }
            }
        }
        self.lower_cache.insert(key, out.clone());
        out
    }

    /// Module action of a basis element.
    pub fn apply(&mut self, b: &BasisElement, w: &VermaVector) -> VermaVector {
        let mut out = Combination::zero();
        let weight_offset = (w.weight_offset as i64 + b.degree()).max(0) as usize;
        for (f, p) in &w.terms {
            match b {
                BasisElement::Plus(t) => {
                    for (g, c) in &self.raise(t, f) {
                        out.add_term(g.clone(), p.clone() * LambdaPoly::constant(c.clone()));
                    }
                }
                BasisElement::Minus(t) => {
                    for (g, q) in &self.lower(t, f) {
                        out.add_term(g.clone(), p.clone() * q.clone());
                    }
                }
                BasisElement::Grade => {
                    let weight = LambdaPoly::lam_plus(f.total_size() as i64);
                    out.add_term(f.clone(), p.clone() * weight);
                }
            }
        }
        VermaVector {
            weight_offset,
            terms: out,
        }
    }
}

/// Rewrites `D⁺_{w_1} ⋯ D⁺_{w_m}·v` (leftmost operator first in `word`)
/// in the PBW basis.
pub fn pbw_sort(word: &[RootedTree]) -> VermaVector {
    let mut engine = VermaEngine::new();
    let mut w = VermaVector::lowest();
    for t in word.iter().rev() {
        w = engine.apply(&BasisElement::Plus(t.clone()), &w);
    }
    w
}

/// Action of a basis element on a Verma vector.
pub fn apply_basis_op(b: &BasisElement, w: &VermaVector) -> VermaVector {
    VermaEngine::new().apply(b, w)
}

fn check_level(n: usize, max_level: usize) -> Result<()> {
    if n > max_level {
        return Err(Error::ResourceLimit {
            what: "Verma level",
            requested: n,
            limit: max_level,
        });
    }
    Ok(())
}

/// The conditions `D⁻_t·w = 0` on `w ∈ W(λ)_{λ+n}` as a pencil `A + λB`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSystem {
    pub n: usize,
    pub columns: Vec<Forest>,
    /// Row `(t, J)`: coefficient of the monomial `J` in `D⁻_t·w`.
    pub rows: Vec<(RootedTree, Forest)>,
    pub a: Matrix<BigInt>,
    pub b: Matrix<BigInt>,
}

impl SingularSystem {
    pub fn pencil(&self) -> Matrix<LambdaPoly> {
        Matrix::from_fn(self.rows.len(), self.columns.len(), |r, c| {
            LambdaPoly::new(vec![self.a.get(r, c).clone(), self.b.get(r, c).clone()])
        })
    }

    pub fn evaluate(&self, lam0: &BigRational) -> Matrix<BigRational> {
        Matrix::from_fn(self.rows.len(), self.columns.len(), |r, c| {
            BigRational::from_integer(self.a.get(r, c).clone())
                + lam0 * BigRational::from_integer(self.b.get(r, c).clone())
        })
    }

    pub fn to_json(&self) -> Value {
        let grid = |m: &Matrix<BigInt>| -> Vec<Vec<Value>> {
            m.to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|x| int_json(&x)).collect())
                .collect()
        };
        json!({
            "n": self.n,
            "columns": self.columns.iter().map(Forest::render).collect::<Vec<_>>(),
            "rows": self
                .rows
                .iter()
                .map(|(t, j)| json!({"t": t.render(), "J": j.render()}))
                .collect::<Vec<_>>(),
            "A": grid(&self.a),
            "B": grid(&self.b),
        })
    }
}

/// JSON number when the integer fits in 64 bits, decimal string otherwise.
pub fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// Assembles the lowest-weight conditions at weight offset `n ≥ 1`.
///
/// Rows run over `(t, J)` with `1 ≤ |t| ≤ n` and `J` a forest of total size
/// `n − |t|`, ordered by `|t|`, then `t`, then `J`.
pub fn singular_system(n: usize, max_level: usize) -> Result<SingularSystem> {
    if n == 0 {
        return Err(Error::domain("singular systems start at weight offset 1"));
    }
    check_level(n, max_level)?;
    singular_system_with(&mut VermaEngine::new(), n)
}

fn singular_system_with(engine: &mut VermaEngine, n: usize) -> Result<SingularSystem> {
    let trees = trees_up_to(n, n)?;
    let forests = forests_up_to(n, n)?;
    let columns = forests[n].clone();
    let mut rows = Vec::new();
    for (size, level) in trees.iter().enumerate().skip(1) {
        for t in level {
            for j in &forests[n - size] {
                rows.push((t.clone(), j.clone()));
            }
        }
    }
    let mut a = Matrix::zeros(rows.len(), columns.len());
    let mut b = Matrix::zeros(rows.len(), columns.len());
    let row_of: HashMap<&(RootedTree, Forest), usize> =
        rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
    for (c, f) in columns.iter().enumerate() {
        for t in trees.iter().skip(1).flatten() {
            for (j, p) in &engine.lower(t, f) {
                if p.degree().is_some_and(|d| d > 1) {
                    return Err(Error::domain(format!(
                        "condition entry {} for D-[{t}] on [{f}] is not affine in lam",
                        p.render()
                    )));
                }
                let r = row_of[&(t.clone(), j.clone())];
                a.set(r, c, p.coefficient(0));
                b.set(r, c, p.coefficient(1));
            }
        }
    }
    Ok(SingularSystem {
        n,
        columns,
        rows,
        a,
        b,
    })
}

/// Result of the generic determinant computation.
#[derive(Debug, Clone, PartialEq)]
pub enum GenericDet {
    /// Determinant of the maximal minor on `rows × all columns`, with
    /// positive leading coefficient.
    Determinant { det: LambdaPoly, rows: Vec<usize> },
    /// The pencil has a kernel for every `λ`.
    RankDeficient { rank: usize, columns: usize },
}

/// Maximal-minor determinant of the pencil at weight offset `n`.
pub fn generic_det(n: usize, max_level: usize) -> Result<GenericDet> {
    Ok(generic_det_of(&singular_system(n, max_level)?))
}

pub fn generic_det_of(system: &SingularSystem) -> GenericDet {
    let pencil = system.pencil();
    let sel = fraction_free_pivots(&pencil);
    if sel.rank() < pencil.cols() {
        return GenericDet::RankDeficient {
            rank: sel.rank(),
            columns: pencil.cols(),
        };
    }
    let all: Vec<usize> = (0..pencil.cols()).collect();
    let det = bareiss_det(&pencil.submatrix(&sel.rows, &all))
        .expect("pivot rows and all columns form a square matrix");
    GenericDet::Determinant {
        det: det.with_positive_leading(),
        rows: sel.rows,
    }
}

/// Rational members of the exceptional set found from the generic minor.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalSet {
    pub det: LambdaPoly,
    /// Rational roots at which the full pencil has a kernel.
    pub confirmed: Vec<BigRational>,
    /// Rational roots of the minor at which the full pencil stays injective.
    pub rejected: Vec<BigRational>,
    /// Part of the minor without rational roots.
    pub residual: LambdaPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExceptionalOutcome {
    Found(ExceptionalSet),
    RankDeficient { rank: usize, columns: usize },
}

pub fn exceptional_candidates(n: usize, max_level: usize) -> Result<ExceptionalOutcome> {
    let system = singular_system(n, max_level)?;
    let det = match generic_det_of(&system) {
        GenericDet::Determinant { det, .. } => det,
        GenericDet::RankDeficient { rank, columns } => {
            return Ok(ExceptionalOutcome::RankDeficient { rank, columns })
        }
    };
    let report = rational_roots(&det)?;
    let mut confirmed = Vec::new();
    let mut rejected = Vec::new();
    for (root, _) in report.roots {
        if rank_kernel(&system.evaluate(&root)).kernel.is_empty() {
            rejected.push(root);
        } else {
            confirmed.push(root);
        }
    }
    Ok(ExceptionalOutcome::Found(ExceptionalSet {
        det,
        confirmed,
        rejected,
        residual: report.residual,
    }))
}

/// Whether every `D⁻_t` with `|t| ≤` the weight offset kills `w` at
/// `λ = λ₀`, by direct application.
pub fn annihilated_at(
    engine: &mut VermaEngine,
    w: &VermaVector,
    lam0: &BigRational,
) -> Result<bool> {
    let n = w.weight_offset;
    for t in trees_up_to(n, n)?.iter().flatten() {
        let image = engine.apply(&BasisElement::Minus(t.clone()), w);
        if !image.evaluate(lam0).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of lowest-weight vectors in `W(λ₀)_{λ₀+n}`, scaled to primitive
/// integer coefficients. Each vector is re-verified by direct application
/// of the lowering operators.
pub fn kernel_at(lam0: &BigRational, n: usize, max_level: usize) -> Result<Vec<VermaVector>> {
    if n == 0 {
        return Err(Error::domain("kernel_at starts at weight offset 1"));
    }
    check_level(n, max_level)?;
    let mut engine = VermaEngine::new();
    let system = singular_system_with(&mut engine, n)?;
    let kernel = rank_kernel(&system.evaluate(lam0)).kernel;
    let mut out = Vec::new();
    for v in kernel {
        let scale = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * &scale).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let terms = system
            .columns
            .iter()
            .zip(&ints)
            .map(|(f, x)| (f.clone(), LambdaPoly::constant(x / &g)))
            .collect();
        let w = VermaVector::from_terms(n, terms)?;
        if !annihilated_at(&mut engine, &w, lam0)? {
            return Err(Error::domain(format!(
                "kernel vector {w} is not annihilated at lam = {lam0}"
            )));
        }
        out.push(w);
    }
    Ok(out)
}

/// Weight-space dimensions of `W(λ)` and the two identities they satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct VermaCharacter {
    /// `f_0, …, f_N`: forest counts.
    pub dims: Vec<usize>,
    /// `f_n = r_{n+1}`, witnessed by `add_root` mapping the forests of size
    /// `n` onto the sorted trees of size `n + 1`.
    pub add_root_identity: bool,
    /// Coefficients of `Π_{k≥1} (1 − q^k)^{−r_k}` through `q^N`.
    pub product_series: Vec<BigInt>,
    pub product_identity: bool,
}

pub fn verma_character(n: usize, max_size: usize) -> Result<VermaCharacter> {
    let trees = trees_up_to(n + 1, max_size)?;
    let forests = forests_up_to(n, max_size)?;
    let dims: Vec<usize> = forests.iter().map(Vec::len).collect();
    let add_root_identity = forests
        .iter()
        .enumerate()
        .all(|(k, fs)| fs.iter().map(add_root).eq(trees[k + 1].iter().cloned()));
    let counts: Vec<usize> = trees.iter().map(Vec::len).collect();
    let product_series = tree_product_series(&counts[..=n], n);
    let product_identity = product_series
        .iter()
        .zip(&dims)
        .all(|(a, &b)| *a == BigInt::from(b));
    Ok(VermaCharacter {
        dims,
        add_root_identity,
        product_series,
        product_identity,
    })
}

/// Expands `Π_{k=1..} (1 − q^k)^{−r_k}` to order `n`, with `r[k]` the
/// exponent for `k ≥ 1` (`r[0]` is ignored).
pub fn tree_product_series(r: &[usize], n: usize) -> Vec<BigInt> {
    let mut series = vec![BigInt::zero(); n + 1];
    series[0] = BigInt::one();
    for (k, &rk) in r.iter().enumerate().skip(1).take_while(|(k, _)| *k <= n) {
        // (1 − q^k)^{−r} = Σ_j C(r + j − 1, j) q^{kj}
        let mut factor = vec![BigInt::zero(); n + 1];
        let mut binom = BigInt::one();
        for j in 0..=n / k {
            if j > 0 {
                binom = binom * BigInt::from(rk + j - 1) / BigInt::from(j);
            }
            factor[k * j] = binom.clone();
        }
        let mut next = vec![BigInt::zero(); n + 1];
        for (i, a) in series.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in factor.iter().enumerate().take(n + 1 - i) {
                next[i + j] += a * b;
            }
        }
        series = next;
    }
    series
}

/// Image of a Verma vector at `λ = 1` in the quotient of the tree space:
/// the monomial `{t_1 ⪯ … ⪯ t_m}` goes to `D⁺_{t_m} ⋯ D⁺_{t_1}(•)`.
pub fn transport_to_m(w: &VermaVector) -> CtVectorOver<BigRational> {
    let one = BigRational::one();
    let mut out = Combination::zero();
    for (f, p) in w.terms() {
        out.add_scaled(&forest_image(f), &p.eval(&one));
    }
    out
}

fn forest_image(f: &Forest) -> CtVectorOver<BigRational> {
    let mut v: CtVectorOver<BigRational> = Combination::basis(CtBasis::Tree(RootedTree::single()));
    for t in f.trees() {
        let op: LieElementOver<BigRational> = dplus(t.clone());
        v = act(&op, &v);
    }
    v
}

/// Matrix of `W(1)_{n} → M_n` and its checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Z1Report {
    pub n: usize,
    /// Columns: forests of size `n − 1`; rows: trees of size `n`.
    pub matrix: Matrix<BigInt>,
    pub determinant: Option<BigInt>,
    pub square: bool,
    pub invertible: bool,
    /// `φ(D⁻_t·w) = D⁻_t·φ(w)` at `λ = 1` for every monomial `w` and every
    /// `t` of size at most `n − 1`.
    pub intertwining: bool,
}

pub fn z1_isomorphism_check(n: usize, max_level: usize) -> Result<Z1Report> {
    if n == 0 {
        return Err(Error::domain("the isomorphism check starts at n = 1"));
    }
    check_level(n - 1, max_level)?;
    let trees = trees_up_to(n, n)?;
    let forests = forests_up_to(n - 1, n)?;
    let columns = &forests[n - 1];
    let targets = &trees[n];
    let images: Vec<CtVectorOver<BigRational>> = columns.iter().map(forest_image).collect();
    let matrix = Matrix::from_fn(targets.len(), columns.len(), |r, c| {
        images[c]
            .coefficient(&CtBasis::Tree(targets[r].clone()))
            .to_integer()
    });
    let square = matrix.is_square();
    let determinant = square.then(|| bareiss_det(&matrix).expect("square"));
    let invertible = determinant.as_ref().is_some_and(|d| !d.is_zero());

    let mut engine = VermaEngine::new();
    let mut intertwining = true;
    'outer: for (f, image) in columns.iter().zip(&images) {
        for t in trees.iter().take(n).flatten() {
            let w = VermaVector::monomial(f.clone());
            let lowered = engine.apply(&BasisElement::Minus(t.clone()), &w);
            let lhs = transport_to_m(&lowered);
            let op: LieElementOver<BigRational> =
                Combination::basis(BasisElement::Minus(t.clone()));
            let mut rhs = act(&op, image);
            rhs.retain(|k, _| *k != CtBasis::One);
            if lhs != rhs {
                intertwining = false;
                break 'outer;
            }
        }
    }
    Ok(Z1Report {
        n,
        matrix,
        determinant,
        square,
        invertible,
        intertwining,
    })
}
