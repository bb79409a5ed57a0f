//! Exact arithmetic in Q(√2, √3, √5, ...): finite rational combinations of
//! square roots of squarefree positive integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RadicalError {
    #[error("square root of a negative quantity: {0}")]
    NegativeRadicand(String),
    #[error("division by zero in a square-root product")]
    ZeroDenominator,
    #[error("malformed radical json: {0}")]
    Json(String),
}

/// Value `Σ q_d·√d`, keyed by squarefree `d ≥ 1`. The empty map is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radical {
    terms: BTreeMap<BigUint, BigRational>,
}

/// Splits `n = s²·d` with `d` squarefree. Trial division runs only up to the
/// cube root of the unfactored cofactor; what remains then has at most two
/// prime factors and is squarefree unless it is a perfect square.
pub fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    if let Some(small) = n.to_u64() {
        let (s, d) = squarefree_split_u64(small);
        return (BigUint::from(s), BigUint::from(d));
    }
    let mut m = n.clone();
    let mut s = BigUint::one();
    let mut d = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= &p;
            }
        }
        p += 1u32;
    }
    let r = m.sqrt();
    if &r * &r == m {
        s *= r;
    } else {
        d *= m;
    }
    (s, d)
}

fn squarefree_split_u64(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut m = n;
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while (p as u128) * (p as u128) * (p as u128) <= m as u128 {
        let mut e = 0u32;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = m.sqrt();
    if r * r == m {
        s *= r;
    } else {
        d *= m;
    }
    (s, d)
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

impl Radical {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(BigUint::one(), q);
        }
        Radical { terms }
    }

    /// `coef·√d` for an arbitrary positive integer `d` (reduced here).
    pub fn from_term(coef: BigRational, d: &BigUint) -> Self {
        if coef.is_zero() || d.is_zero() {
            return Self::zero();
        }
        let (s, core) = squarefree_split(d);
        let coef = coef * ratio(BigInt::from(s), BigInt::one());
        let mut terms = BTreeMap::new();
        terms.insert(core, coef);
        Radical { terms }
    }

    /// `sign·√q` in canonical form.
    pub fn from_sqrt_rational(sign: i32, q: &BigRational) -> Result<Self, RadicalError> {
        if q.is_negative() {
            return Err(RadicalError::NegativeRadicand(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let (sa, da) = squarefree_split(q.numer().magnitude());
        let (sb, db) = squarefree_split(q.denom().magnitude());
        // √(a/b) = sa√da / (sb√db) = sa√(da·db) / (sb·db)
        let coef = ratio(BigInt::from(sa), BigInt::from(sb * &db));
        let coef = if sign < 0 { -coef } else { coef };
        let mut terms = BTreeMap::new();
        terms.insert(da * db, coef);
        Ok(Radical { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    /// Square of a single-term value, as a rational.
    pub fn square_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (d, q) = self.terms.iter().next().unwrap();
                Some(q * q * ratio(BigInt::from(d.clone()), BigInt::one()))
            }
            _ => None,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Radical {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c * q)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| {
                let qf =
                    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN);
                qf * d.to_f64().unwrap_or(f64::NAN).sqrt()
            })
            .sum()
    }

    fn add_term(&mut self, d: &BigUint, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(d) {
            Some(c) => {
                *c += q;
                if c.is_zero() {
                    self.terms.remove(d);
                }
            }
            None => {
                self.terms.insert(d.clone(), q.clone());
            }
        }
    }

    pub fn add_ref(&self, other: &Radical) -> Radical {
        let mut out = self.clone();
        for (d, q) in &other.terms {
            out.add_term(d, q);
        }
        out
    }

    pub fn mul_ref(&self, other: &Radical) -> Radical {
        let mut out = Radical::zero();
        for (d1, q1) in &self.terms {
            for (d2, q2) in &other.terms {
                let g = d1.gcd(d2);
                let d = (d1 / &g) * (d2 / &g);
                let q = q1 * q2 * ratio(BigInt::from(g), BigInt::one());
                out.add_term(&d, &q);
            }
        }
        out
    }

    pub fn neg_ref(&self) -> Radical {
        Radical {
            terms: self.terms.iter().map(|(d, q)| (d.clone(), -q)).collect(),
        }
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (d, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let a = q.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if d.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "√{}", d)?;
            } else {
                write!(f, "{}·√{}", a, d)?;
            }
        }
        Ok(())
    }
}

impl Add for Radical {
    type Output = Radical;
    fn add(self, rhs: Radical) -> Radical {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn add(self, rhs: &Radical) -> Radical {
        self.add_ref(rhs)
    }
}

impl AddAssign<&Radical> for Radical {
    fn add_assign(&mut self, rhs: &Radical) {
        for (d, q) in &rhs.terms {
            self.add_term(d, q);
        }
    }
}

impl Sub for Radical {
    type Output = Radical;
    fn sub(self, rhs: Radical) -> Radical {
        self.add_ref(&rhs.neg_ref())
    }
}

impl<'a> Sub<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn sub(self, rhs: &Radical) -> Radical {
        self.add_ref(&rhs.neg_ref())
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, rhs: Radical) -> Radical {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn mul(self, rhs: &Radical) -> Radical {
        self.mul_ref(rhs)
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        self.neg_ref()
    }
}

impl Neg for &Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        self.neg_ref()
    }
}

/// Product `Π √(num_i) / √(den_i)` over small integers, kept as prime
/// exponents so that zero factors cancel symbolically before evaluation.
#[derive(Clone, Debug, Default)]
pub struct SqrtProduct {
    zeros: i32,
    negative: bool,
    exps: BTreeMap<u64, i32>,
}

impl SqrtProduct {
    pub fn new() -> Self {
        Self::default()
    }

    fn absorb(&mut self, x: i64, dir: i32) {
        if x == 0 {
            self.zeros += dir;
            return;
        }
        if x < 0 {
            self.negative = !self.negative;
        }
        let mut m = x.unsigned_abs();
        let mut p = 2u64;
        while p * p <= m {
            while m.is_multiple_of(p) {
                m /= p;
                *self.exps.entry(p).or_insert(0) += dir;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            *self.exps.entry(m).or_insert(0) += dir;
        }
    }

    pub fn num(&mut self, x: i64) -> &mut Self {
        self.absorb(x, 1);
        self
    }

    pub fn den(&mut self, x: i64) -> &mut Self {
        self.absorb(x, -1);
        self
    }

    pub fn frac(&mut self, a: i64, b: i64) -> &mut Self {
        self.num(a).den(b)
    }

    pub fn abs_frac(&mut self, a: i64, b: i64) -> &mut Self {
        self.num(a.abs()).den(b.abs())
    }

    /// `coef·√(product)`. Zero when the numerator carries more zero factors
    /// than the denominator.
    pub fn times(&self, coef: BigRational) -> Result<Radical, RadicalError> {
        if self.zeros > 0 || coef.is_zero() {
            return Ok(Radical::zero());
        }
        if self.zeros < 0 {
            return Err(RadicalError::ZeroDenominator);
        }
        if self.negative {
            return Err(RadicalError::NegativeRadicand(format!("{:?}", self.exps)));
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut core = BigUint::one();
        for (&p, &e) in &self.exps {
            let pb = BigInt::from(p);
            if e >= 0 {
                num *= pb.pow((e / 2) as u32);
                if e % 2 == 1 {
                    core *= p;
                }
            } else {
                let a = -e;
                // p^(-a/2) = p^(-ceil(a/2)) · √p when a is odd
                den *= pb.pow(((a + 1) / 2) as u32);
                if a % 2 == 1 {
                    core *= p;
                }
            }
        }
        let coef = coef * ratio(num, den);
        let mut terms = BTreeMap::new();
        terms.insert(core, coef);
        Ok(Radical { terms })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Num(i64),
    Big(String),
}

impl JsonInt {
    fn from_bigint(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => JsonInt::Num(x),
            None => JsonInt::Big(v.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<BigInt, RadicalError> {
        match self {
            JsonInt::Num(x) => Ok(BigInt::from(*x)),
            JsonInt::Big(s) => s
                .parse()
                .map_err(|_| RadicalError::Json(format!("bad integer {s}"))),
        }
    }
}

impl Serialize for Radical {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (d, q) in &self.terms {
            let d = BigInt::from_biguint(Sign::Plus, d.clone());
            seq.serialize_element(&(
                JsonInt::from_bigint(&d),
                JsonInt::from_bigint(q.numer()),
                JsonInt::from_bigint(q.denom()),
            ))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Radical {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(JsonInt, JsonInt, JsonInt)> = Vec::deserialize(deserializer)?;
        let mut out = Radical::zero();
        for (d, n, m) in raw {
            let d = d.to_bigint().map_err(de::Error::custom)?;
            let n = n.to_bigint().map_err(de::Error::custom)?;
            let m = m.to_bigint().map_err(de::Error::custom)?;
            if d.sign() != Sign::Plus || m.is_zero() {
                return Err(de::Error::custom(
                    "radicand must be positive and denominator nonzero",
                ));
            }
            out += &Radical::from_term(ratio(n, m), d.magnitude());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        ratio(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt(n: i64, d: i64) -> Radical {
        Radical::from_sqrt_rational(1, &q(n, d)).unwrap()
    }

    #[test]
    fn canonical_roots() {
        assert_eq!(sqrt(9, 4), Radical::from_rational(q(3, 2)));
        assert_eq!(
            sqrt(8, 1),
            Radical::from_term(q(2, 1), &BigUint::from(2u32))
        );
        assert!(Radical::from_sqrt_rational(-1, &q(0, 1)).unwrap().is_zero());
        assert_eq!(
            sqrt(1, 2),
            Radical::from_term(q(1, 2), &BigUint::from(2u32))
        );
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&sqrt(2, 1) * &sqrt(2, 1), Radical::from_integer(2));
        assert_eq!(
            &sqrt(2, 1) + &sqrt(8, 1),
            Radical::from_term(q(3, 1), &BigUint::from(2u32))
        );
        let a = &sqrt(2, 1) + &Radical::one();
        let b = &sqrt(2, 1) - &Radical::one();
        assert_eq!(&a * &b, Radical::one());
        assert!((&sqrt(2, 1) - &sqrt(2, 1)).is_zero());
        assert_eq!(
            Radical::from_term(q(2, 1), &BigUint::from(3u32)),
            sqrt(12, 1)
        );
        assert_ne!(sqrt(2, 1), sqrt(3, 1));
    }

    #[test]
    fn squarefree_split_small_and_big() {
        assert_eq!(squarefree_split_u64(72), (6, 2));
        assert_eq!(squarefree_split_u64(49), (7, 1));
        assert_eq!(squarefree_split_u64(1), (1, 1));
        let big = BigUint::from(1_000_003u64)
            * BigUint::from(1_000_003u64)
            * BigUint::from(6u32)
            * BigUint::from(u64::MAX);
        let (s, d) = squarefree_split(&big);
        assert_eq!(&s * &s * &d, big);
        assert_eq!(s % BigUint::from(1_000_003u64), BigUint::zero());
    }

    #[test]
    fn sqrt_product_cancels_zero_factors() {
        let mut p = SqrtProduct::new();
        p.num(0).den(0).frac(3, 12);
        assert_eq!(
            p.times(BigRational::one()).unwrap(),
            Radical::from_rational(q(1, 2))
        );
        let mut z = SqrtProduct::new();
        z.num(0).frac(5, 7);
        assert!(z.times(BigRational::one()).unwrap().is_zero());
        let mut bad = SqrtProduct::new();
        bad.den(0);
        assert_eq!(
            bad.times(BigRational::one()),
            Err(RadicalError::ZeroDenominator)
        );
        let mut inv = SqrtProduct::new();
        inv.den(8);
        assert_eq!(inv.times(BigRational::one()).unwrap(), sqrt(1, 8));
    }

    #[test]
    fn json_round_trip() {
        let v = &sqrt(3, 2) + &Radical::from_rational(q(-7, 5));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[[1,-7,5],[6,1,2]]");
        let back: Radical = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert_eq!(serde_json::to_string(&Radical::zero()).unwrap(), "[]");
    }

    #[test]
    fn display_and_float() {
        let v = &sqrt(3, 2) + &Radical::from_rational(q(-7, 5));
        assert_eq!(v.to_string(), "-7/5 + 1/2·√6");
        assert!((v.to_f64() - (1.5f64.sqrt() - 1.4)).abs() < 1e-12);
    }
}
