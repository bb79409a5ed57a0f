//! Finite linear combinations with exact radical coefficients.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::radical::Radical;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Radical>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut out = Self::zero();
        out.terms.insert(k, Radical::one());
        out
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

    pub fn get(&self, k: &K) -> Option<&Radical> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Radical)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, v: &Radical) {
        if v.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(c) => {
                *c += v;
                if c.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, v.clone());
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Radical) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v);
        }
    }

    pub fn scaled(&self, c: &Radical) -> LinComb<K> {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(other, &Radical::from_integer(-1));
        out
    }

    /// Real inner product in the orthonormal basis of keys.
    pub fn inner(&self, other: &LinComb<K>) -> Radical {
        let mut acc = Radical::zero();
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (k, v) in &small.terms {
            if let Some(w) = big.terms.get(k) {
                acc += &(v * w);
            }
        }
        acc
    }

    pub fn norm_squared(&self) -> Radical {
        self.inner(self)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Radical)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Radical)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (k, v) in iter {
            out.add_term(k, &v);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct Term<K> {
    pattern: K,
    coef: Radical,
}

impl<K: Ord + Clone + Serialize> Serialize for LinComb<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term<&K>> = self
            .terms
            .iter()
            .map(|(k, v)| Term {
                pattern: k,
                coef: v.clone(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de, K: Ord + Clone + DeserializeOwned> Deserialize<'de> for LinComb<K> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms: Vec<Term<K>> = Vec::deserialize(deserializer)?;
        Ok(terms.into_iter().map(|t| (t.pattern, t.coef)).collect())
    }
}
