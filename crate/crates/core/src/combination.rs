//! Finite-support linear combinations over an ordered index set.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::scalar::Ring;

/// `Σ c_k · k` with no zero coefficients stored.
///
/// Iteration follows the order of `K`, which keeps every rendering and
/// serialization deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Combination<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord, S> Default for Combination<K, S> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + fmt::Debug, S: fmt::Debug> fmt::Debug for Combination<K, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Ord + Clone, S: Ring> Combination<K, S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, S::one())
    }

    pub fn term(key: K, coefficient: S) -> Self {
        let mut c = Self::zero();
        c.add_term(key, coefficient);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &K) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, S> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, S> {
        self.terms.keys()
    }

    /// Adds `coefficient · key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coefficient: S) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + coefficient;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// `self += factor · other`
    pub fn add_scaled(&mut self, other: &Self, factor: &S) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone() * factor.clone());
        }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &(-S::one()));
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&(-S::one()))
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<K2, F>(&self, mut f: F) -> Combination<K2, S>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Combination<K2, S>,
    {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Changes scalars term by term (terms mapping to zero are dropped).
    pub fn map_coefficients<T: Ring, F: FnMut(&S) -> T>(&self, mut f: F) -> Combination<K, T> {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn retain<F: FnMut(&K, &S) -> bool>(&mut self, mut f: F) {
        self.terms.retain(|k, c| f(k, c));
    }

    pub fn into_terms(self) -> BTreeMap<K, S> {
        self.terms
    }
}

impl<K: Ord + Clone, S: Ring> FromIterator<(K, S)> for Combination<K, S> {
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        let mut c = Self::zero();
        for (k, s) in iter {
            c.add_term(k, s);
        }
        c
    }
}

impl<'a, K: Ord, S> IntoIterator for &'a Combination<K, S> {
    type Item = (&'a K, &'a S);
    type IntoIter = btree_map::Iter<'a, K, S>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
