//! Minimal and associated primes.
//!
//! Prime sets are canonical: each prime is stored through its reduced Gröbner
//! basis, so two runs with different seeds produce identical sets even though
//! the random choices made along the way differ.

mod ass;
pub mod factor;
mod primes;

use std::fmt;

use crate::groebner::{Dimension, Ideal};

pub use ass::{associated_primes, associated_primes_seeded, ehv_candidates, is_associated_oracle};
pub use factor::{factor, univar_factor, Factorization};
pub use primes::{minimal_primes, minimal_primes_seeded};

/// Seed used when a caller does not supply one.
pub const DEFAULT_SEED: u64 = 42;

/// A prime ideal with the Krull dimension of its residue ring.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub ideal: Ideal,
    pub verified: bool,
    pub dim: Dimension,
}

impl PrimeIdeal {
    pub(crate) fn certified(ideal: Ideal) -> PrimeIdeal {
        let dim = ideal.dim();
        PrimeIdeal {
            ideal,
            verified: true,
            dim,
        }
    }

    pub fn gens(&self) -> Vec<String> {
        self.ideal.canonical_gens()
    }

    /// Contained in the maximal ideal of the origin.
    pub fn is_local(&self) -> bool {
        self.ideal.is_local()
    }

    /// `p ∈ V(I)`, i.e. `I ⊆ p`.
    pub fn contains_ideal(&self, i: &Ideal) -> bool {
        i.is_subset(&self.ideal)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
    }
}

impl Eq for PrimeIdeal {}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

/// A finite set of primes, kept sorted by canonical generator lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssSet {
    primes: Vec<PrimeIdeal>,
}

impl AssSet {
    pub fn new(primes: impl IntoIterator<Item = PrimeIdeal>) -> AssSet {
        let mut keyed: Vec<(Vec<String>, PrimeIdeal)> =
            primes.into_iter().map(|p| (p.gens(), p)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        AssSet {
            primes: keyed.into_iter().map(|(_, p)| p).collect(),
        }
    }

    pub fn empty() -> AssSet {
        AssSet::default()
    }

    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.primes
    }

    pub fn iter(&self) -> impl Iterator<Item = &PrimeIdeal> {
        self.primes.iter()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: &PrimeIdeal) -> bool {
        self.primes.iter().any(|q| q == p)
    }

    pub fn union(&self, other: &AssSet) -> AssSet {
        AssSet::new(self.primes.iter().chain(other.primes.iter()).cloned())
    }

    pub fn is_subset(&self, other: &AssSet) -> bool {
        self.primes.iter().all(|p| other.contains(p))
    }

    /// Members containing `i`, i.e. the intersection with `V(i)`.
    pub fn in_variety(&self, i: &Ideal) -> AssSet {
        AssSet {
            primes: self
                .primes
                .iter()
                .filter(|p| p.contains_ideal(i))
                .cloned()
                .collect(),
        }
    }

    /// Members with residue dimension `≥ k` (or `> k` when `strict`).
    pub fn with_dim(&self, k: i32, strict: bool) -> AssSet {
        let keep = |d: Dimension| if strict { d > k } else { d >= k };
        AssSet {
            primes: self
                .primes
                .iter()
                .filter(|p| keep(p.dim))
                .cloned()
                .collect(),
        }
    }

    /// Members contained in the maximal ideal of the origin.
    pub fn local(&self) -> AssSet {
        AssSet {
            primes: self
                .primes
                .iter()
                .filter(|p| p.is_local())
                .cloned()
                .collect(),
        }
    }

    /// `(generators, dim)` pairs in canonical order.
    pub fn canonical(&self) -> Vec<(Vec<String>, Dimension)> {
        self.primes.iter().map(|p| (p.gens(), p.dim)).collect()
    }
}

impl fmt::Display for AssSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl FromIterator<PrimeIdeal> for AssSet {
    fn from_iter<T: IntoIterator<Item = PrimeIdeal>>(iter: T) -> Self {
        AssSet::new(iter)
    }
}

#[cfg(test)]
mod tests;
