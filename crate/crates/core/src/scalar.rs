//! Scalar traits shared by the generic algebra code.
//!
//! Everything downstream is written against [`Ring`] (or [`Field`] where
//! division is needed). Exact arithmetic is the intended use; the crate root
//! fixes the concrete instantiations.

use std::fmt::Debug;
use std::ops::{Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

/// Commutative ring with an embedding of the integers.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + FromPrimitive
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("ring must embed i64")
    }
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + FromPrimitive
{
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Division that is known to be exact, as needed by fraction-free elimination.
pub trait ExactDiv: Sized {
    /// Returns `self / divisor`, or `None` when the quotient does not exist
    /// in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        (!divisor.is_zero()).then(|| self / divisor)
    }
}

impl ExactDiv for i64 {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if *divisor == 0 || self % divisor != 0 {
            None
        } else {
            Some(self / divisor)
        }
    }
}

/// Renders a rational as `p/q`, omitting `q` when it is one.
pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed) into a reduced rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}
