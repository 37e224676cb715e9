//! Seeded random sampling of basis elements and homogeneous elements, with
//! the Jacobi/antisymmetry and descent sweeps built on top.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combination::Combination;
use crate::error::Result;
use crate::liealg::{
    bracket, descend, homogeneous_degree, BasisElement, DescentOutcome, LieElementOver,
};
use crate::trees::{trees_up_to, RootedTree};

/// Seed used by the CLI when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform choice among `D⁺_t`, `D⁻_t` (for the given trees) and `d`.
pub fn random_basis_element<R: Rng>(rng: &mut R, trees: &[RootedTree]) -> BasisElement {
    let k = rng.gen_range(0..2 * trees.len() + 1);
    match k.checked_sub(trees.len()) {
        None => BasisElement::Plus(trees[k].clone()),
        Some(i) if i < trees.len() => BasisElement::Minus(trees[i].clone()),
        Some(_) => BasisElement::Grade,
    }
}

/// Random nonzero element of degree `degree` supported on `D⁺` terms:
/// up to three distinct trees of that size with nonzero coefficients in
/// `-5..=5`.
pub fn random_positive_element<R: Rng>(
    rng: &mut R,
    trees_of_degree: &[RootedTree],
) -> LieElementOver<BigRational> {
    let terms = rng.gen_range(1..=3.min(trees_of_degree.len()));
    let mut out = Combination::zero();
    for t in trees_of_degree.choose_multiple(rng, terms) {
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-5..=5);
        }
        out.add_term(
            BasisElement::Plus(t.clone()),
            BigRational::from_integer(BigInt::from(c)),
        );
    }
    out
}

/// A sampled identity that did not hold.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityFailure {
    pub sample: usize,
    pub elements: Vec<BasisElement>,
    pub value: LieElementOver<BigInt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiReport {
    pub seed: u64,
    pub samples: usize,
    pub max_size: usize,
    pub antisymmetry_failures: usize,
    pub jacobi_failures: usize,
    pub first_failure: Option<IdentityFailure>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_failures == 0 && self.jacobi_failures == 0
    }
}

/// Checks antisymmetry on `samples` random pairs and the Jacobi identity on
/// `samples` random triples of basis elements with trees of size at most
/// `max_size`.
pub fn jacobi_sample(seed: u64, samples: usize, max_size: usize) -> Result<JacobiReport> {
    let trees: Vec<RootedTree> = trees_up_to(max_size, max_size)?
        .into_iter()
        .flatten()
        .collect();
    let mut rng = rng(seed);
    let mut report = JacobiReport {
        seed,
        samples,
        max_size,
        antisymmetry_failures: 0,
        jacobi_failures: 0,
        first_failure: None,
    };
    let el = |b: &BasisElement| -> LieElementOver<BigInt> { Combination::basis(b.clone()) };
    for i in 0..samples {
        let (x, y) = (
            random_basis_element(&mut rng, &trees),
            random_basis_element(&mut rng, &trees),
        );
        let sum = bracket(&el(&x), &el(&y)).plus(&bracket(&el(&y), &el(&x)));
        if !sum.is_zero() {
            report.antisymmetry_failures += 1;
            report.first_failure.get_or_insert(IdentityFailure {
                sample: i,
                elements: vec![x, y],
                value: sum,
            });
        }
    }
    for i in 0..samples {
        let (x, y, z) = (
            random_basis_element(&mut rng, &trees),
            random_basis_element(&mut rng, &trees),
            random_basis_element(&mut rng, &trees),
        );
        let (ex, ey, ez) = (el(&x), el(&y), el(&z));
        let sum = bracket(&ex, &bracket(&ey, &ez))
            .plus(&bracket(&ey, &bracket(&ez, &ex)))
            .plus(&bracket(&ez, &bracket(&ex, &ey)));
        if !sum.is_zero() {
            report.jacobi_failures += 1;
            report.first_failure.get_or_insert(IdentityFailure {
                sample: i,
                elements: vec![x, y, z],
                value: sum,
            });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentSampleReport {
    pub seed: u64,
    pub samples: usize,
    pub max_degree: usize,
    pub reached: usize,
    /// Elements whose descent hit a zero bracket, with the step index.
    pub vanished: Vec<(LieElementOver<BigRational>, usize)>,
}

/// Runs the descent on `samples` random homogeneous `D⁺`-elements of degree
/// `1..=max_degree`.
pub fn descent_sample(seed: u64, samples: usize, max_degree: usize) -> Result<DescentSampleReport> {
    let by_size = trees_up_to(max_degree, max_degree)?;
    let mut rng = rng(seed);
    let mut report = DescentSampleReport {
        seed,
        samples,
        max_degree,
        reached: 0,
        vanished: Vec::new(),
    };
    for _ in 0..samples {
        let degree = rng.gen_range(1..=max_degree);
        let x = random_positive_element(&mut rng, &by_size[degree]);
        debug_assert_eq!(homogeneous_degree(&x), Some(degree as i64));
        match descend(&x)?.outcome {
            DescentOutcome::Reached { .. } => report.reached += 1,
            DescentOutcome::Vanished { step } => report.vanished.push((x, step)),
        }
    }
    Ok(report)
}
