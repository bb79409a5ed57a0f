//! Parastatistics Fock space V(p,n): reduced matrix elements and the action
//! of the creation and annihilation operators in the odd GZ basis.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cgc::{self, candidate_targets, square};
use crate::error::{Error, Result};
use crate::gz::{self, degree, rho, Pattern, Row};
use crate::linalg::{self, SolveError};
use crate::radical::Radical;
use crate::state::LinComb;

pub type State = LinComb<Pattern>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

/// One operator `c_i^±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub sign: Sign,
    pub index: i32,
}

impl Letter {
    pub fn plus(index: i32) -> Letter {
        Letter {
            sign: Sign::Plus,
            index,
        }
    }

    pub fn minus(index: i32) -> Letter {
        Letter {
            sign: Sign::Minus,
            index,
        }
    }

    pub fn adjoint(self) -> Letter {
        Letter {
            sign: self.sign.flip(),
            index: self.index,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "c{}({})", s, self.index)
    }
}

/// Parses `c+(-3),c+(-2)`; the rightmost letter acts first.
pub fn parse_word(text: &str) -> Result<Vec<Letter>> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let bad = || Error::Parse(format!("bad letter {tok:?}, expected c+(i) or c-(i)"));
            let rest = tok.strip_prefix('c').ok_or_else(bad)?;
            let (sign, rest) = match rest.chars().next() {
                Some('+') => (Sign::Plus, &rest[1..]),
                Some('-') => (Sign::Minus, &rest[1..]),
                _ => return Err(bad()),
            };
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let index: i32 = inner.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            Ok(Letter { sign, index })
        })
        .collect()
}

pub fn format_word(word: &[Letter]) -> String {
    word.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

type Action = Arc<Vec<(Pattern, Radical)>>;

#[derive(Clone, Debug, Serialize)]
pub struct ReducedMatrixElement {
    pub top_row: Row,
    pub k: i32,
    #[serde(rename = "G_squared")]
    pub g_squared: String,
    pub sign: i32,
}

/// V(p,n) with lazily derived reduced matrix elements and cached actions.
pub struct FockSpace {
    n: usize,
    p: u32,
    max_degree: Option<u64>,
    g2: RwLock<HashMap<Row, Arc<BTreeMap<i32, BigRational>>>>,
    actions: RwLock<HashMap<(Sign, i32, Pattern), Action>>,
}

impl fmt::Debug for FockSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockSpace")
            .field("n", &self.n)
            .field("p", &self.p)
            .finish()
    }
}

impl FockSpace {
    pub fn new(n: usize, p: u32) -> FockSpace {
        assert!(n >= 1 && p >= 1, "rank and order must be positive");
        FockSpace {
            n,
            p,
            max_degree: None,
            g2: Default::default(),
            actions: Default::default(),
        }
    }

    /// A space that refuses to derive reduced matrix elements for top rows
    /// of degree `max_degree` or more.
    pub fn with_max_degree(n: usize, p: u32, max_degree: u64) -> FockSpace {
        FockSpace {
            max_degree: Some(max_degree),
            ..FockSpace::new(n, p)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn vacuum(&self) -> State {
        State::basis(Pattern::vacuum(self.n))
    }

    /// Squares `G(w,k)²` for every admissible target `k` of top row `w`.
    pub fn reduced_squares(&self, w: &Row) -> Result<Arc<BTreeMap<i32, BigRational>>> {
        if let Some(t) = self.g2.read().unwrap().get(w) {
            return Ok(t.clone());
        }
        if let Some(cap) = self.max_degree {
            if w.sum() >= cap {
                return Err(Error::TableDepth(format!(
                    "top row {w:?} needs degree {}",
                    w.sum() + 1
                )));
            }
        }
        let table = Arc::new(self.derive(w)?);
        self.g2.write().unwrap().insert(w.clone(), table.clone());
        Ok(table)
    }

    /// Sign of `G(w,k)`: positive for `k < 0`, and `(−1)^{w_1+…+w_{k−1}}` over
    /// the right part of `w` for `k > 0`.
    pub fn reduced_sign(w: &Row, k: i32) -> i32 {
        let e: u32 = (1..k).map(|s| w.get(s)).sum();
        if e.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn reduced_square(&self, w: &Row, k: i32) -> Result<BigRational> {
        self.reduced_squares(w)?.get(&k).cloned().ok_or_else(|| {
            Error::Consistency(format!("no reduced matrix element for {w:?} at k={k}"))
        })
    }

    fn equation(&self, m: &Pattern, i: i32, ks: &[i32]) -> Result<(Vec<BigRational>, BigRational)> {
        let r = rho(i)?;
        let w = m.top();
        let mut known = BigRational::zero();
        for low in gz::lowered_patterns(m, r) {
            let k2 = low.top().increment_column(w).expect("lowered top row");
            let c = cgc::cgc(r, &low, m)?;
            if !c.is_zero() {
                known += square(&c) * self.reduced_square(low.top(), k2)?;
            }
        }
        let mut coeffs = vec![BigRational::zero(); ks.len()];
        for up in gz::raised_patterns(m, r) {
            let k = w.increment_column(up.top()).expect("raised top row");
            if let Some(pos) = ks.iter().position(|&x| x == k) {
                coeffs[pos] += square(&cgc::cgc(r, m, &up)?);
            }
        }
        let e2 = m.cartan_eigenvalue(i, self.p)? * BigRational::from_integer(BigInt::from(2));
        let rhs = if i < 0 { known - e2 } else { e2 - known };
        Ok((coeffs, rhs))
    }

    fn derive(&self, w: &Row) -> Result<BTreeMap<i32, BigRational>> {
        let n = self.n;
        let ks = candidate_targets(w, Some(self.p));
        if ks.is_empty() {
            return Ok(BTreeMap::new());
        }
        let pats = gz::enumerate_patterns(w, n)?;
        // Equations for i = ±n only read rows 2n−2..2n.
        let mut seen = HashSet::new();
        let reps: Vec<&Pattern> = pats
            .iter()
            .filter(|m| n == 1 || seen.insert((m.row(2 * n - 1).clone(), m.row(2 * n - 2).clone())))
            .collect();
        let nn = n as i32;
        let mut rows = Vec::new();
        for m in &reps {
            for i in [nn, -nn] {
                rows.push(self.equation(m, i, &ks)?);
            }
        }
        let sol = match linalg::solve(&rows, ks.len()) {
            Ok(sol) => sol,
            Err(SolveError::Underdetermined(_)) => {
                let mut rows = Vec::new();
                for m in &pats {
                    for i in (-nn..=nn).filter(|&i| i != 0) {
                        rows.push(self.equation(m, i, &ks)?);
                    }
                }
                linalg::solve(&rows, ks.len()).map_err(|e| {
                    Error::Consistency(format!("reduced matrix elements of {w:?}: {e:?}"))
                })?
            }
            Err(e) => {
                return Err(Error::Consistency(format!(
                    "reduced matrix elements of {w:?}: {e:?}"
                )))
            }
        };
        if let Some(v) = sol.iter().find(|v| v.is_negative()) {
            return Err(Error::Consistency(format!(
                "negative squared reduced matrix element {v} for {w:?}"
            )));
        }
        Ok(ks.into_iter().zip(sol).collect())
    }

    /// All derived `G²` values for top rows of degree below `degree`.
    pub fn reduced_table(&self, degree: u32) -> Result<Vec<ReducedMatrixElement>> {
        let mut out = Vec::new();
        for top in gz::enumerate_top_rows(self.n, self.p, degree.saturating_sub(1)) {
            for (k, v) in self.reduced_squares(&top)?.iter() {
                out.push(ReducedMatrixElement {
                    top_row: top.clone(),
                    k: *k,
                    g_squared: v.to_string(),
                    sign: Self::reduced_sign(&top, *k),
                });
            }
        }
        Ok(out)
    }

    fn check_index(&self, i: i32) -> Result<()> {
        if i == 0 || i.unsigned_abs() as usize > self.n {
            return Err(Error::Domain(format!(
                "index {i} outside [-{n},{n}]*",
                n = self.n
            )));
        }
        Ok(())
    }

    /// Matrix column of `c_i^±` at basis pattern `m`.
    pub fn action(&self, sign: Sign, i: i32, m: &Pattern) -> Result<Action> {
        self.check_index(i)?;
        if m.n != self.n {
            return Err(Error::Domain(format!(
                "pattern of rank {} in V(p,{})",
                m.n, self.n
            )));
        }
        let key = (sign, i, m.clone());
        if let Some(a) = self.actions.read().unwrap().get(&key) {
            return Ok(a.clone());
        }
        let r = rho(i)?;
        let mut out = Vec::new();
        match sign {
            Sign::Plus => {
                for up in gz::raised_patterns(m, r) {
                    if up.top().neg[0] > self.p {
                        continue;
                    }
                    let k = m.top().increment_column(up.top()).expect("raised top row");
                    let c = cgc::cgc(r, m, &up)?;
                    if c.is_zero() {
                        continue;
                    }
                    let g = Radical::from_sqrt_rational(
                        Self::reduced_sign(m.top(), k),
                        &self.reduced_square(m.top(), k)?,
                    )?;
                    let v = &c * &g;
                    if !v.is_zero() {
                        out.push((up, v));
                    }
                }
            }
            Sign::Minus => {
                for low in gz::lowered_patterns(m, r) {
                    let k = low
                        .top()
                        .increment_column(m.top())
                        .expect("lowered top row");
                    let c = cgc::cgc(r, &low, m)?;
                    if c.is_zero() {
                        continue;
                    }
                    let g = Radical::from_sqrt_rational(
                        Self::reduced_sign(low.top(), k),
                        &self.reduced_square(low.top(), k)?,
                    )?;
                    let v = &c * &g;
                    if !v.is_zero() {
                        out.push((low, v));
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.actions.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    pub fn apply(&self, letter: Letter, s: &State) -> Result<State> {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            for (m2, v) in self.action(letter.sign, letter.index, m)?.iter() {
                out.add_term(m2.clone(), &(c * v));
            }
        }
        Ok(out)
    }

    pub fn apply_creation(&self, i: i32, s: &State) -> Result<State> {
        self.apply(Letter::plus(i), s)
    }

    pub fn apply_annihilation(&self, i: i32, s: &State) -> Result<State> {
        self.apply(Letter::minus(i), s)
    }

    /// Applies `word` right to left.
    pub fn apply_word(&self, word: &[Letter], s: &State) -> Result<State> {
        let mut cur = s.clone();
        for &l in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.apply(l, &cur)?;
        }
        Ok(cur)
    }

    pub fn inner_product(&self, a: &State, b: &State) -> Radical {
        a.inner(b)
    }

    /// `⟦⟦c_j^ξ, c_k^η⟧, c_l^ε⟧ s` minus the right-hand side of the triple relations.
    #[allow(clippy::too_many_arguments)]
    pub fn triple_residual(
        &self,
        xi: Sign,
        eta: Sign,
        eps: Sign,
        j: i32,
        k: i32,
        l: i32,
        s: &State,
    ) -> Result<State> {
        let (a, b, c) = (
            Letter { sign: xi, index: j },
            Letter {
                sign: eta,
                index: k,
            },
            Letter {
                sign: eps,
                index: l,
            },
        );
        let (dj, dk, dl) = (degree(j) as i64, degree(k) as i64, degree(l) as i64);
        let s1 = if dj * dk % 2 == 1 { -1 } else { 1 };
        let s2 = if (dj + dk) % 2 * dl == 1 { -1 } else { 1 };
        let cs = self.apply(c, s)?;
        let bcs = self.apply(b, &cs)?;
        let acs = self.apply(a, &cs)?;
        let mut out = self.apply(a, &bcs)?;
        out.add_scaled(&self.apply(b, &acs)?, &Radical::from_integer(-s1));
        let bs = self.apply(b, s)?;
        let as_ = self.apply(a, s)?;
        let abs = self.apply(a, &bs)?;
        let bas = self.apply(b, &as_)?;
        out.add_scaled(&self.apply(c, &abs)?, &Radical::from_integer(-s2));
        out.add_scaled(&self.apply(c, &bas)?, &Radical::from_integer(s2 * s1));
        let eps_l = if dl == 1 { eps.value() } else { 1 };
        if j == l && eps == xi.flip() {
            let sg = if dk * dl % 2 == 1 { -1 } else { 1 };
            out.add_scaled(&bs, &Radical::from_integer(2 * eps_l * sg));
        }
        if k == l && eps == eta.flip() {
            out.add_scaled(&as_, &Radical::from_integer(-2 * eps_l));
        }
        Ok(out)
    }

    /// `E_{jk} s = ½⟦c_j^+, c_k^-⟧ s`.
    pub fn gl_action(&self, j: i32, k: i32, s: &State) -> Result<State> {
        let sgn = if degree(j) * degree(k) == 1 { -1 } else { 1 };
        let mut out = self.apply(Letter::plus(j), &self.apply(Letter::minus(k), s)?)?;
        out.add_scaled(
            &self.apply(Letter::minus(k), &self.apply(Letter::plus(j), s)?)?,
            &Radical::from_integer(-sgn),
        );
        let half = Radical::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        Ok(out.scaled(&half))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_words() {
        let w = parse_word("c+(-3), c+(-2)").unwrap();
        assert_eq!(w, vec![Letter::plus(-3), Letter::plus(-2)]);
        assert_eq!(format_word(&w), "c+(-3),c+(-2)");
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("c*(1)").is_err());
        assert!(parse_word("c+(0)").is_err());
        assert!(parse_word("c+1").is_err());
    }

    #[test]
    fn vacuum_reduced_element() {
        for n in 1..=3 {
            for p in 1..=3 {
                let f = FockSpace::new(n, p);
                let t = f.reduced_squares(&Row::zero(2 * n)).unwrap();
                assert_eq!(t.len(), 1);
                assert_eq!(t[&-(n as i32)], q(p as i64, 1));
            }
        }
    }

    #[test]
    fn low_degree_reduced_elements() {
        let f = FockSpace::new(1, 2);
        let t = f
            .reduced_squares(&Row {
                neg: vec![1],
                pos: vec![1],
            })
            .unwrap();
        assert_eq!(t[&-1], q(1, 1));
        assert_eq!(t[&1], q(4, 1));
        let f = FockSpace::new(2, 2);
        let t = f
            .reduced_squares(&Row {
                neg: vec![2, 0],
                pos: vec![0, 0],
            })
            .unwrap();
        assert_eq!(t[&-1], q(3, 1));
    }

    #[test]
    fn annihilators_kill_vacuum() {
        let f = FockSpace::new(2, 2);
        for i in [-2, -1, 1, 2] {
            assert!(f.apply_annihilation(i, &f.vacuum()).unwrap().is_zero());
        }
    }

    #[test]
    fn capped_space_reports_depth() {
        let f = FockSpace::with_max_degree(1, 2, 1);
        let one = f.apply_creation(-1, &f.vacuum()).unwrap();
        assert!(matches!(
            f.apply_creation(-1, &one),
            Err(Error::TableDepth(_))
        ));
    }
}
