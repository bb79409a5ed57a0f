//! Vacuum expectation values computed purely from the defining relations:
//! `⟦c_k^-, c_j^+⟧ = −(−1)^{deg j·deg k}·2E_{jk}`, `⟦E_{jk}, c_l^+⟧ = δ_{kl}c_j^+`,
//! `c^-|0⟩ = 0` and `E_{jj}|0⟩ = ∓(p/2)|0⟩`.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::fock::{Letter, Sign};
use crate::gz::degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Create(i32),
    Annihilate(i32),
    /// `E_{jk} = ½⟦c_j^+, c_k^-⟧`.
    Gl(i32, i32),
}

impl Symbol {
    fn degree(self) -> u8 {
        match self {
            Symbol::Create(i) | Symbol::Annihilate(i) => degree(i),
            Symbol::Gl(j, k) => (degree(j) + degree(k)) % 2,
        }
    }
}

impl From<Letter> for Symbol {
    fn from(l: Letter) -> Symbol {
        match l.sign {
            Sign::Plus => Symbol::Create(l.index),
            Sign::Minus => Symbol::Annihilate(l.index),
        }
    }
}

fn weight_balanced(word: &[Symbol]) -> bool {
    let mut w: BTreeMap<i32, i64> = BTreeMap::new();
    for s in word {
        match *s {
            Symbol::Create(i) => *w.entry(i).or_default() += 1,
            Symbol::Annihilate(i) => *w.entry(i).or_default() -= 1,
            Symbol::Gl(j, k) => {
                *w.entry(j).or_default() += 1;
                *w.entry(k).or_default() -= 1;
            }
        }
    }
    w.values().all(|&x| x == 0)
}

/// Evaluator of `⟨0|word|0⟩` in V(p), memoized on words.
pub struct Oracle {
    p: u32,
    memo: RwLock<HashMap<Vec<Symbol>, BigRational>>,
}

impl Oracle {
    pub fn new(p: u32) -> Oracle {
        Oracle {
            p,
            memo: Default::default(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `⟨0|word|0⟩` with the rightmost symbol acting first.
    pub fn vev(&self, word: &[Symbol]) -> BigRational {
        if !weight_balanced(word) {
            return BigRational::zero();
        }
        if let Some(v) = self.memo.read().unwrap().get(word) {
            return v.clone();
        }
        let v = self.reduce(word);
        self.memo.write().unwrap().insert(word.to_vec(), v.clone());
        v
    }

    fn reduce(&self, word: &[Symbol]) -> BigRational {
        let Some(x) = word.iter().rposition(|s| !matches!(s, Symbol::Create(_))) else {
            return if word.is_empty() {
                BigRational::one()
            } else {
                BigRational::zero()
            };
        };
        let sym = word[x];
        if x == word.len() - 1 {
            return match sym {
                Symbol::Annihilate(_) => BigRational::zero(),
                Symbol::Gl(j, k) if j == k => {
                    let half = BigRational::new(BigInt::from(self.p), BigInt::from(2));
                    let e = if j < 0 { -half } else { half };
                    e * self.vev(&word[..x])
                }
                _ => BigRational::zero(),
            };
        }
        let Symbol::Create(l) = word[x + 1] else {
            unreachable!("creators right of the last non-creator")
        };
        let s = if sym.degree() * degree(l) == 1 { -1 } else { 1 };
        let sq = BigRational::from_integer(BigInt::from(s));
        let mut swapped = word.to_vec();
        swapped.swap(x, x + 1);
        let mut total = &sq * self.vev(&swapped);
        let splice = |mid: Option<Symbol>| {
            let mut w = word[..x].to_vec();
            w.extend(mid);
            w.extend_from_slice(&word[x + 2..]);
            w
        };
        match sym {
            Symbol::Annihilate(k) => {
                let two = BigRational::from_integer(BigInt::from(2));
                total -= sq * two * self.vev(&splice(Some(Symbol::Gl(l, k))));
            }
            Symbol::Gl(j, k) => {
                if k == l {
                    total += self.vev(&splice(Some(Symbol::Create(j))));
                }
            }
            Symbol::Create(_) => unreachable!(),
        }
        total
    }

    /// `⟨0|adjoint(a)·b|0⟩` for creation words `a`, `b`.
    pub fn overlap(&self, a: &[Letter], b: &[Letter]) -> BigRational {
        let mut word: Vec<Symbol> = a.iter().rev().map(|l| Symbol::from(l.adjoint())).collect();
        word.extend(b.iter().map(|&l| Symbol::from(l)));
        self.vev(&word)
    }

    pub fn gram_matrix(&self, words: &[Vec<Letter>]) -> Vec<Vec<BigRational>> {
        words
            .iter()
            .map(|a| words.iter().map(|b| self.overlap(a, b)).collect())
            .collect()
    }
}

/// All creation words of exactly `len` letters over indices `[−n,n]*`.
pub fn creation_words(n: usize, len: usize) -> Vec<Vec<Letter>> {
    let idx: Vec<i32> = (-(n as i32)..=n as i32).filter(|&i| i != 0).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                idx.iter().map(move |&i| {
                    let mut w2 = w.clone();
                    w2.push(Letter::plus(i));
                    w2
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn two_point_functions() {
        for p in 1..=3 {
            let o = Oracle::new(p);
            for j in [-2, -1, 1, 2] {
                for k in [-2, -1, 1, 2] {
                    let v = o.vev(&[Symbol::Annihilate(j), Symbol::Create(k)]);
                    assert_eq!(v, if j == k { q(p as i64) } else { q(0) });
                }
            }
        }
    }

    #[test]
    fn paraboson_level_two() {
        for p in 1..=4 {
            let o = Oracle::new(p);
            let w = [
                Symbol::Annihilate(1),
                Symbol::Annihilate(1),
                Symbol::Create(1),
                Symbol::Create(1),
            ];
            assert_eq!(o.vev(&w), q(2 * p as i64));
        }
    }

    #[test]
    fn parafermion_pair() {
        let o = Oracle::new(2);
        let a = [Letter::plus(-3), Letter::plus(-2)];
        assert_eq!(o.overlap(&a, &a), q(4));
    }

    #[test]
    fn unbalanced_words_vanish() {
        let o = Oracle::new(3);
        assert_eq!(o.vev(&[Symbol::Annihilate(1), Symbol::Create(2)]), q(0));
        assert_eq!(o.vev(&[Symbol::Create(1)]), q(0));
        assert_eq!(o.vev(&[]), q(1));
    }
}
