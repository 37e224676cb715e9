//! Exact arithmetic for the insertion-elimination Lie algebra on rooted
//! trees, its natural representation on the span of rooted trees, and its
//! Verma modules.
//!
//! The algorithms are generic over the exact scalar traits in [`scalar`]:
//! [`Combination`], the bracket, the tree action and the elimination
//! routines of [`matrix`] accept any ring or field satisfying them. The
//! aliases below fix the concrete scalars used by the CLI.

pub mod combination;
pub mod ctrep;
pub mod error;
pub mod liealg;
pub mod matrix;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod text;
pub mod trees;
pub mod verma;

pub use combination::Combination;
pub use ctrep::{act, act_on_m, CtBasis, CtVectorOver};
pub use error::{Error, Result};
pub use liealg::{bracket, descend, BasisElement, LieElementOver};
pub use poly::LambdaPoly;
pub use trees::{Forest, RootedTree, DEFAULT_MAX_TREE_SIZE};
pub use verma::{VermaVector, DEFAULT_MAX_LEVEL};

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

/// Lie algebra element with rational coefficients.
pub type LieElement = LieElementOver<Rational>;

/// Vector of the tree space with rational coefficients.
pub type CtVector = CtVectorOver<Rational>;

/// Dense rational matrix.
pub type RationalMatrix = matrix::Matrix<Rational>;

/// Dense matrix over `Z[λ]`.
pub type PolyMatrix = matrix::Matrix<LambdaPoly>;
