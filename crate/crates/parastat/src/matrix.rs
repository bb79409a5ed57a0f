//! Sparse graded matrices realizing B(n,n) and B(∞,∞).
//!
//! Indices run over `−2n..2n` (or all of ℤ); an index is odd iff it is
//! positive. Entries are rational and share one scalar `√d` (`d` squarefree).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::Sign;
use crate::gz::degree;
use crate::linalg;
use crate::radical::Radical;

fn index_parity(a: i64) -> u8 {
    u8::from(a > 0)
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSuperMatrix {
    entries: BTreeMap<(i64, i64), BigRational>,
    /// Squarefree `d`; the matrix is `√d · entries`.
    root: BigUint,
}

#[derive(Serialize)]
pub struct MatrixEntry {
    pub row: i64,
    pub col: i64,
    pub value: Radical,
}

impl SparseSuperMatrix {
    pub fn zero() -> Self {
        SparseSuperMatrix {
            entries: BTreeMap::new(),
            root: BigUint::one(),
        }
    }

    /// Matrix unit `e_{ab}`.
    pub fn unit(a: i64, b: i64) -> Self {
        let mut m = Self::zero();
        m.entries.insert((a, b), BigRational::one());
        m
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((i64, i64), BigRational)>) -> Self {
        let mut m = Self::zero();
        for (k, v) in entries {
            m.add_entry(k, v);
        }
        m
    }

    fn add_entry(&mut self, k: (i64, i64), v: BigRational) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry(k).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: i64, b: i64) -> Radical {
        match self.entries.get(&(a, b)) {
            Some(v) => Radical::from_term(v.clone(), &self.root),
            None => Radical::zero(),
        }
    }

    pub fn entries(&self) -> Vec<MatrixEntry> {
        self.entries
            .keys()
            .map(|&(row, col)| MatrixEntry {
                row,
                col,
                value: self.get(row, col),
            })
            .collect()
    }

    /// `Some(0)` or `Some(1)` for homogeneous matrices (zero counts as even).
    pub fn parity(&self) -> Option<u8> {
        let mut it = self
            .entries
            .keys()
            .map(|&(a, b)| (index_parity(a) + index_parity(b)) % 2);
        let first = it.next().unwrap_or(0);
        it.all(|x| x == first).then_some(first)
    }

    fn homogeneous(&self) -> Result<u8> {
        self.parity()
            .ok_or_else(|| Error::Domain("matrix of mixed parity".into()))
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.entries = self
            .entries
            .iter()
            .filter(|_| !c.is_zero())
            .map(|(k, v)| (*k, v * c))
            .collect();
        out
    }

    /// Multiplies by `√r` for a positive integer `r`.
    pub fn scale_sqrt(&self, r: u64) -> Self {
        let (s, d) = crate::radical::squarefree_split(&BigUint::from(r));
        let g = self.root.gcd(&d);
        let root = (&self.root / &g) * (&d / &g);
        let f = BigRational::from_integer(BigInt::from(s * g));
        SparseSuperMatrix {
            entries: self.entries.iter().map(|(k, v)| (*k, v * &f)).collect(),
            root,
        }
    }

    fn align(&self, other: &Self) -> Result<BigUint> {
        if self.is_zero() {
            return Ok(other.root.clone());
        }
        if other.is_zero() || self.root == other.root {
            return Ok(self.root.clone());
        }
        Err(Error::Domain(format!(
            "cannot add multiples of √{} and √{}",
            self.root, other.root
        )))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let root = self.align(other)?;
        let mut out = SparseSuperMatrix {
            entries: self.entries.clone(),
            root,
        };
        for (k, v) in &other.entries {
            out.add_entry(*k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_rational(&q(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut by_row: BTreeMap<i64, Vec<(i64, &BigRational)>> = BTreeMap::new();
        for ((a, b), v) in &other.entries {
            by_row.entry(*a).or_default().push((*b, v));
        }
        let g = self.root.gcd(&other.root);
        let root = (&self.root / &g) * (&other.root / &g);
        let f = BigRational::from_integer(BigInt::from(g));
        let mut out = SparseSuperMatrix {
            entries: BTreeMap::new(),
            root,
        };
        for ((a, b), v) in &self.entries {
            if let Some(row) = by_row.get(b) {
                for (c, w) in row {
                    out.add_entry((*a, *c), v * *w * &f);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        SparseSuperMatrix {
            entries: self
                .entries
                .iter()
                .map(|(&(a, b), v)| ((b, a), v.clone()))
                .collect(),
            root: self.root.clone(),
        }
    }

    /// Supertranspose of an odd matrix `[[0,U],[V,0]] ↦ [[0,Vᵀ],[−Uᵀ,0]]`.
    pub fn supertranspose(&self) -> Self {
        let entries = self.entries.iter().map(|(&(a, b), v)| {
            // entry (b,a) of the result comes from (a,b)
            let v = if index_parity(b) == 1 && index_parity(a) == 0 {
                -v
            } else {
                v.clone()
            };
            ((b, a), v)
        });
        SparseSuperMatrix {
            entries: entries.collect(),
            root: self.root.clone(),
        }
    }

    /// `⟦X, Y⟧ = XY − (−1)^{deg X·deg Y} YX`.
    pub fn super_bracket(&self, other: &Self) -> Result<Self> {
        let (dx, dy) = (self.homogeneous()?, other.homogeneous()?);
        let yx = other.mul(self);
        let yx = if dx * dy == 1 {
            yx.scale_rational(&q(-1))
        } else {
            yx
        };
        self.mul(other).sub(&yx)
    }
}

impl fmt::Display for SparseSuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .entries
            .keys()
            .map(|&(a, b)| format!("({a},{b}): {}", self.get(a, b)))
            .collect();
        write!(f, "{}", terms.join(", "))
    }
}

/// Rank bound: finite `n` or unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankBound {
    Finite(usize),
    Infinite,
}

/// Bilinear form `I ⊕ … ⊕ I ⊕ 1 ⊕ J ⊕ … ⊕ J`.
pub fn build_b(n: usize) -> SparseSuperMatrix {
    let mut m = SparseSuperMatrix::unit(0, 0);
    for i in 1..=n as i64 {
        m.add_entry((-2 * i, -2 * i + 1), q(1));
        m.add_entry((-2 * i + 1, -2 * i), q(1));
        m.add_entry((2 * i - 1, 2 * i), q(1));
        m.add_entry((2 * i, 2 * i - 1), q(-1));
    }
    m
}

fn support_rank(x: &SparseSuperMatrix) -> usize {
    x.entries
        .keys()
        .map(|&(a, b)| a.unsigned_abs().max(b.unsigned_abs()).div_ceil(2) as usize)
        .max()
        .unwrap_or(0)
}

/// Membership in B(n,n) (or in B(∞,∞) for `RankBound::Infinite`).
pub fn is_member(x: &SparseSuperMatrix, bound: RankBound) -> Result<bool> {
    let parity = x.homogeneous()?;
    let r = support_rank(x);
    let n = match bound {
        RankBound::Finite(n) => {
            if r > n {
                return Ok(false);
            }
            n
        }
        RankBound::Infinite => r.max(1),
    };
    let b = build_b(n);
    let lhs = if parity == 0 {
        x.transpose()
    } else {
        x.supertranspose()
    };
    let lhs = lhs.mul(&b);
    let bx = b.mul(x);
    let res = if parity == 0 {
        lhs.add(&bx)?
    } else {
        lhs.sub(&bx)?
    };
    Ok(res.is_zero())
}

/// `c_i^±` as a matrix.
pub fn build_generator(sign: Sign, i: i32, bound: RankBound) -> Result<SparseSuperMatrix> {
    if i == 0 {
        return Err(Error::Domain("index 0".into()));
    }
    if let RankBound::Finite(n) = bound {
        if i.unsigned_abs() as usize > n {
            return Err(Error::Domain(format!("index {i} outside rank {n}")));
        }
    }
    let a = i.unsigned_abs() as i64;
    let terms: [((i64, i64), i64); 2] = match (i < 0, sign) {
        (true, Sign::Plus) => [((-2 * a, 0), 1), ((0, -2 * a + 1), -1)],
        (true, Sign::Minus) => [((0, -2 * a), 1), ((-2 * a + 1, 0), -1)],
        (false, Sign::Plus) => [((0, 2 * a), 1), ((2 * a - 1, 0), 1)],
        (false, Sign::Minus) => [((0, 2 * a - 1), 1), ((2 * a, 0), -1)],
    };
    Ok(SparseSuperMatrix::from_entries(terms.into_iter().map(|(k, v)| (k, q(v)))).scale_sqrt(2))
}

/// Cartan element `h_i`.
pub fn build_h(i: i32) -> SparseSuperMatrix {
    let a = i.unsigned_abs() as i64;
    if i > 0 {
        SparseSuperMatrix::from_entries([((2 * a - 1, 2 * a - 1), q(1)), ((2 * a, 2 * a), q(-1))])
    } else {
        SparseSuperMatrix::from_entries([
            ((-2 * a, -2 * a), q(1)),
            ((-2 * a + 1, -2 * a + 1), q(-1)),
        ])
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Right-hand side of the triple relations.
pub fn triple_rhs(
    gen: &dyn Fn(Sign, i32) -> Result<SparseSuperMatrix>,
    (xi, eta, eps): (Sign, Sign, Sign),
    (j, k, l): (i32, i32, i32),
) -> Result<SparseSuperMatrix> {
    let eps_l = if degree(l) == 1 { eps.value() } else { 1 };
    let mut rhs = SparseSuperMatrix::zero();
    if j == l && eps == xi.flip() {
        let sg = if degree(k) * degree(l) == 1 { -1 } else { 1 };
        rhs = rhs.add(&gen(eta, k)?.scale_rational(&q(-2 * eps_l * sg)))?;
    }
    if k == l && eps == eta.flip() {
        rhs = rhs.add(&gen(xi, j)?.scale_rational(&q(2 * eps_l)))?;
    }
    Ok(rhs)
}

/// Checks membership of every generator, the triple relations for all
/// sign and index triples with `|i| ≤ bound`, and `⟦c_i^+, c_i^-⟧ = 2h_i`.
pub fn verify_relations(indices: usize, bound: RankBound) -> Result<RelationReport> {
    verify_relations_with(indices, bound, &|s, i| build_generator(s, i, bound))
}

pub fn verify_relations_with(
    indices: usize,
    bound: RankBound,
    gen: &dyn Fn(Sign, i32) -> Result<SparseSuperMatrix>,
) -> Result<RelationReport> {
    let idx: Vec<i32> = (-(indices as i32)..=indices as i32)
        .filter(|&i| i != 0)
        .collect();
    let mut rep = RelationReport::default();
    for &i in &idx {
        for s in Sign::both() {
            rep.checked += 1;
            let g = gen(s, i)?;
            if !is_member(&g, bound)? {
                rep.failures.push(format!(
                    "c{}({i}) is not a member",
                    if s == Sign::Plus { '+' } else { '-' }
                ));
            }
            if g.parity() != Some(degree(i)) {
                rep.failures.push(format!("c({i}) has the wrong parity"));
            }
        }
        rep.checked += 1;
        let h2 = build_h(i).scale_rational(&q(2));
        if gen(Sign::Plus, i)?.super_bracket(&gen(Sign::Minus, i)?)? != h2 {
            rep.failures.push(format!("⟦c+({i}), c-({i})⟧ ≠ 2h({i})"));
        }
    }
    for &xi in &Sign::both() {
        for &eta in &Sign::both() {
            for &eps in &Sign::both() {
                for &j in &idx {
                    for &k in &idx {
                        let jk = gen(xi, j)?.super_bracket(&gen(eta, k)?)?;
                        if !is_member(&jk, bound)? {
                            rep.failures
                                .push(format!("⟦c({j}), c({k})⟧ left the algebra"));
                        }
                        for &l in &idx {
                            rep.checked += 1;
                            let lhs = jk.super_bracket(&gen(eps, l)?)?;
                            let rhs = triple_rhs(gen, (xi, eta, eps), (j, k, l))?;
                            if lhs.sub(&rhs).map(|d| !d.is_zero()).unwrap_or(true) {
                                rep.failures.push(format!(
                                    "signs ({},{},{}) indices ({j},{k},{l})",
                                    xi.value(),
                                    eta.value(),
                                    eps.value()
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Whether the `4n²` brackets `⟦c_i^+, c_j^-⟧` are linearly independent.
pub fn gl_span_independent(n: usize) -> Result<bool> {
    let idx: Vec<i32> = (-(n as i32)..=n as i32).filter(|&i| i != 0).collect();
    let bound = RankBound::Finite(n);
    let mut mats = Vec::new();
    for &i in &idx {
        for &j in &idx {
            let x = build_generator(Sign::Plus, i, bound)?;
            let y = build_generator(Sign::Minus, j, bound)?;
            mats.push(x.super_bracket(&y)?);
        }
    }
    let keys: Vec<(i64, i64)> = {
        let mut k: Vec<_> = mats
            .iter()
            .flat_map(|m| m.entries.keys().copied())
            .collect();
        k.sort();
        k.dedup();
        k
    };
    let rows: Vec<Vec<BigRational>> = mats
        .iter()
        .map(|m| {
            keys.iter()
                .map(|key| {
                    m.entries
                        .get(key)
                        .cloned()
                        .unwrap_or_else(BigRational::zero)
                })
                .collect()
        })
        .collect();
    Ok(linalg::rank(&rows) == mats.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_b() {
        let b = build_b(1);
        assert_eq!(b.get(0, 0), Radical::one());
        assert_eq!(b.get(-2, -1), Radical::one());
        assert_eq!(b.get(-1, -2), Radical::one());
        assert_eq!(b.get(1, 2), Radical::one());
        assert_eq!(b.get(2, 1), Radical::from_integer(-1));
        let even = b.mul(&b);
        assert_eq!(even.get(-2, -2), Radical::one());
        assert_eq!(even.get(1, 1), Radical::from_integer(-1));
    }

    #[test]
    fn generators_are_members() {
        let bound = RankBound::Finite(2);
        for i in [-2, -1, 1, 2] {
            for s in Sign::both() {
                let g = build_generator(s, i, bound).unwrap();
                assert!(is_member(&g, bound).unwrap());
                assert_eq!(g.parity(), Some(degree(i)));
            }
        }
        let g = build_generator(Sign::Plus, -1, RankBound::Finite(1)).unwrap();
        let root2 = Radical::from_sqrt_rational(1, &q(2)).unwrap();
        assert_eq!(g.get(-2, 0), root2);
        assert_eq!(g.get(0, -1), -&root2);
        assert!(!is_member(&SparseSuperMatrix::unit(0, 0), bound).unwrap());
        assert!(!is_member(&SparseSuperMatrix::unit(1, 1), bound).unwrap());
    }

    #[test]
    fn brackets_give_cartan() {
        let bound = RankBound::Finite(2);
        for i in [-2, -1, 1, 2] {
            let x = build_generator(Sign::Plus, i, bound).unwrap();
            let y = build_generator(Sign::Minus, i, bound).unwrap();
            assert_eq!(
                x.super_bracket(&y).unwrap(),
                build_h(i).scale_rational(&q(2))
            );
        }
    }

    #[test]
    fn relations_small() {
        let rep = verify_relations(1, RankBound::Finite(1)).unwrap();
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert!(gl_span_independent(2).unwrap());
    }

    #[test]
    fn flipped_sign_is_caught() {
        let bound = RankBound::Finite(1);
        let broken = |s: Sign, i: i32| {
            let g = build_generator(s, i, bound)?;
            if i > 0 && s == Sign::Plus {
                g.sub(
                    &SparseSuperMatrix::unit(2 * i as i64 - 1, 0)
                        .scale_sqrt(2)
                        .scale_rational(&q(2)),
                )
            } else {
                Ok(g)
            }
        };
        let rep = verify_relations_with(1, bound, &broken).unwrap();
        assert!(!rep.failures.is_empty());
    }
}
