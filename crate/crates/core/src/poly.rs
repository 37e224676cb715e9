//! Integer-coefficient polynomials in the lowest weight `lam`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::ExactDiv;

/// Polynomial in `lam` with arbitrary-precision integer coefficients,
/// constant term first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: Vec<BigInt>,
}

impl LambdaPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `lam`.
    pub fn lam() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `lam + shift`
    pub fn lam_plus(shift: i64) -> Self {
        Self::from_i64s(&[shift, 1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `lam^k` (zero beyond the degree).
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * at + BigRational::from_integer(c.clone())
            })
    }

    pub fn eval_int(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let Some(lc) = self.leading_coefficient() else {
            return Self::zero();
        };
        let mut g = self.content();
        if lc.is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Flips the sign if needed so the leading coefficient is positive.
    pub fn with_positive_leading(self) -> Self {
        match self.leading_coefficient() {
            Some(lc) if lc.is_negative() => -self,
            _ => self,
        }
    }

    /// Quotient and remainder by a divisor whose leading coefficient divides
    /// every intermediate leading term; `None` if that fails.
    fn div_rem_exact_lc(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lc = divisor.leading_coefficient()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Renders with the variable `lam`, e.g. `2*lam^2`, `3*lam + 1`, `0`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let monomial = match k {
                0 => String::new(),
                1 => "lam".to_string(),
                _ => format!("lam^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&monomial);
            } else {
                out.push_str(&format!("{mag}*{monomial}"));
            }
        }
        out
    }

    /// True when the rendering is a single term (no top-level `+`/`-`).
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaPoly({})", self.render())
    }
}

impl Zero for LambdaPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LambdaPoly {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl FromPrimitive for LambdaPoly {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::constant(n))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::constant(n))
    }
}

impl Add for LambdaPoly {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a LambdaPoly> for &'a LambdaPoly {
    type Output = LambdaPoly;

    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LambdaPoly::new(
            (0..n)
                .map(|k| self.coefficient(k) + rhs.coefficient(k))
                .collect(),
        )
    }
}

impl Sub for LambdaPoly {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Sub<&'a LambdaPoly> for &'a LambdaPoly {
    type Output = LambdaPoly;

    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LambdaPoly::new(
            (0..n)
                .map(|k| self.coefficient(k) - rhs.coefficient(k))
                .collect(),
        )
    }
}

impl Neg for LambdaPoly {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for LambdaPoly {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a LambdaPoly> for &'a LambdaPoly {
    type Output = LambdaPoly;

    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LambdaPoly::new(out)
    }
}

impl ExactDiv for LambdaPoly {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_exact_lc(divisor)?;
        r.is_zero().then_some(q)
    }
}

/// Rational roots of a polynomial with multiplicities, and what is left.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    /// Distinct rational roots in increasing order, with multiplicity.
    pub roots: Vec<(BigRational, usize)>,
    /// `p / Π (q·lam − p)^m` for each root `p/q`; it has no rational roots.
    pub residual: LambdaPoly,
}

/// Extracts every rational root of `p` with its multiplicity.
///
/// Roots of a primitive `p` with leading coefficient `a` are `y / a` for the
/// integer roots `y` of the monic `a^(d-1) · p(y / a)`; those are isolated
/// by Sturm sequences and integer bisection, so no integer factoring is
/// needed. Each root is then deflated out exactly.
pub fn rational_roots(p: &LambdaPoly) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::domain("rational_roots of the zero polynomial"));
    }
    let mut candidates = Vec::new();
    let mut rest = p.primitive_part();
    let mut zero_mult = 0;
    while rest.coefficient(0).is_zero() {
        rest = divide_by_lam(&rest);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        candidates.push(BigRational::zero());
    }
    let squarefree = squarefree_part(&rest);
    if squarefree.degree().unwrap_or(0) >= 1 {
        let lc = squarefree.leading_coefficient().unwrap().clone();
        let monic = monic_transform(&squarefree);
        for y in integer_roots(&monic) {
            candidates.push(BigRational::new(y, lc.clone()));
        }
    }
    candidates.sort();

    let mut residual = p.clone();
    let mut roots = Vec::new();
    for r in candidates {
        // (q·lam − p) is primitive, so exact division over the integers works.
        let factor = LambdaPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        let mut mult = 0;
        while let Some(q) = residual.exact_div(&factor) {
            residual = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        roots.push((r, mult));
    }
    Ok(RootReport { roots, residual })
}

fn divide_by_lam(p: &LambdaPoly) -> LambdaPoly {
    LambdaPoly::new(p.coeffs[1..].to_vec())
}

/// Monic integer polynomial whose integer roots are `a·r` for the rational
/// roots `r` of `p` (leading coefficient `a`).
fn monic_transform(p: &LambdaPoly) -> LambdaPoly {
    let d = p.degree().expect("nonzero");
    let a = p.leading_coefficient().unwrap().clone();
    // coefficient k of a^(d-1) p(y/a) is c_k a^(d-1-k)
    let mut coeffs = Vec::with_capacity(d + 1);
    for (k, c) in p.coeffs.iter().enumerate() {
        if k == d {
            coeffs.push(BigInt::one());
        } else {
            coeffs.push(c * num_traits::pow(a.clone(), d - 1 - k));
        }
    }
    LambdaPoly::new(coeffs)
}

/// Rational-coefficient polynomial used internally for gcds and Sturm chains.
type QPoly = Vec<BigRational>;

fn to_q(p: &LambdaPoly) -> QPoly {
    p.coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn q_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        if !top.is_zero() {
            let q = top / &lb;
            for (j, bc) in b.iter().enumerate() {
                r[shift + j] = r[shift + j].clone() - &q * bc;
            }
        }
        r.pop();
        r = q_trim(r);
    }
    q_trim(r)
}

fn q_div(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    for k in (0..quot.len()).rev() {
        let q = r[k + db].clone() / &b[db];
        for (j, bc) in b.iter().enumerate() {
            r[k + j] = r[k + j].clone() - &q * bc;
        }
        quot[k] = q;
    }
    q_trim(quot)
}

fn q_to_primitive_int(p: &QPoly) -> LambdaPoly {
    let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    LambdaPoly::new(
        p.iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect(),
    )
    .primitive_part()
}

fn squarefree_part(p: &LambdaPoly) -> LambdaPoly {
    if p.degree().unwrap_or(0) < 1 {
        return p.clone();
    }
    let mut a = to_q(p);
    let mut b = to_q(&p.derivative());
    while !b.is_empty() {
        let r = q_rem(&a, &b);
        a = b;
        b = r;
    }
    q_to_primitive_int(&q_div(&to_q(p), &a))
}

/// Sign changes of the Sturm chain evaluated at `x`.
fn sign_variations(chain: &[QPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = p
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn sturm_chain(p: &LambdaPoly) -> Vec<QPoly> {
    let mut chain = vec![to_q(p), to_q(&p.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = q_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

/// Integer roots of a square-free monic integer polynomial.
fn integer_roots(p: &LambdaPoly) -> Vec<BigInt> {
    let chain = sturm_chain(p);
    // Cauchy bound: every root satisfies |y| < 1 + max |c_k|.
    let bound = p.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default() + BigInt::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let count_between = |lo: &BigInt, hi: &BigInt| {
        // roots in [lo, hi]; half-integers are never roots of a monic integer polynomial
        let a = BigRational::from_integer(lo.clone()) - &half;
        let b = BigRational::from_integer(hi.clone()) + &half;
        sign_variations(&chain, &a) - sign_variations(&chain, &b)
    };
    let mut found = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        if count_between(&lo, &hi) == 0 {
            continue;
        }
        if lo == hi {
            if p.eval_int(&lo).is_zero() {
                found.push(lo);
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((&mid + BigInt::one(), hi));
        stack.push((lo, mid));
    }
    found.sort();
    found
}
