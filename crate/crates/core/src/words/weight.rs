use std::collections::BTreeMap;

use num_integer::Integer;
use thiserror::Error;

use super::word::{gen, Gen, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("generator {0} is outside the domain of the weight map")]
    UnknownGenerator(String),
}

/// A homomorphism from the free group on an alphabet to ℤ, given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightMap(BTreeMap<Gen, i64>);

impl WeightMap {
    pub fn new() -> Self {
        WeightMap(BTreeMap::new())
    }

    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, i64)>>(pairs: I) -> Self {
        WeightMap(pairs.into_iter().map(|(g, k)| (gen(g), k)).collect())
    }

    pub fn all_ones<'a, I: IntoIterator<Item = &'a Gen>>(alphabet: I) -> Self {
        WeightMap(alphabet.into_iter().map(|g| (g.clone(), 1)).collect())
    }

    pub fn insert(&mut self, g: Gen, k: i64) {
        self.0.insert(g, k);
    }

    pub fn get(&self, g: &str) -> Option<i64> {
        self.0.get(g).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Gen, i64)> {
        self.0.iter().map(|(g, &k)| (g, k))
    }

    pub fn domain(&self) -> impl Iterator<Item = &Gen> {
        self.0.keys()
    }

    /// gcd of all weights; the map is onto ℤ iff this is 1.
    pub fn gcd(&self) -> i64 {
        self.0.values().fold(0i64, |acc, &k| acc.gcd(&k))
    }

    pub fn is_surjective(&self) -> bool {
        self.gcd() == 1
    }
}

pub fn exponent_sum(w: &Word, f: &WeightMap) -> Result<i64, WeightError> {
    w.letters().iter().try_fold(0i64, |acc, l| {
        let k = f.get(&l.gen).ok_or_else(|| WeightError::UnknownGenerator(l.gen.to_string()))?;
        Ok(acc + l.sign() * k)
    })
}
