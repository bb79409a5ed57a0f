//! Row-stable patterns, the embeddings φ, and the action of the infinite-rank
//! algebra on row-stable infinite patterns.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FockSpace, Letter, Sign, State};
use crate::gz::{rho, Pattern, Row};
use crate::radical::Radical;
use crate::state::LinComb;

/// Smallest `s` such that rows `s..2n` all read `[ν, 0…; 0…]` for one
/// partition ν, each with at least one zero on the left.
pub fn stability_index(pat: &Pattern) -> Option<usize> {
    let top_r = pat.rows.len();
    let nu = pat.top().stable_part()?;
    let mut s = top_r;
    while s > 1 && pat.row(s - 1).stable_part().as_ref() == Some(&nu) {
        s -= 1;
    }
    Some(s)
}

/// Whether the pattern is row-stable with respect to row `s`.
pub fn is_stable_wrt(pat: &Pattern, s: usize) -> bool {
    stability_index(pat).is_some_and(|x| x <= s)
}

/// Appends two rows repeating the top row, padded with zeros.
pub fn phi_up(pat: &Pattern) -> Result<Pattern> {
    let top = pat.top();
    if top.pos.iter().any(|&x| x > 0) {
        return Err(Error::Domain("top row has a nonzero right part".into()));
    }
    let n = pat.n;
    let mut rows = pat.rows.clone();
    for r in [2 * n + 1, 2 * n + 2] {
        let mut neg = top.neg.clone();
        neg.push(0);
        rows.push(Row {
            neg,
            pos: vec![0; r / 2],
        });
    }
    Ok(Pattern { n: n + 1, rows })
}

/// A row-stable infinite pattern: `prefix` holds rows `1..2s` and every row
/// above is `[ν, 0…; 0…]`. Canonical: `2s` is the smallest even stability row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InfinitePattern {
    pub p: u32,
    pub prefix: Vec<Row>,
    pub tail: Vec<u32>,
}

impl InfinitePattern {
    pub fn vacuum(p: u32) -> InfinitePattern {
        extend(&Pattern::vacuum(1), p).expect("vacuum extends")
    }

    /// Length of the stored prefix, the canonical stability row.
    pub fn stable_row(&self) -> usize {
        self.prefix.len()
    }

    /// Re-canonicalizes, e.g. after deserialization.
    pub fn canonical(&self) -> Result<InfinitePattern> {
        let len = self.prefix.len().max(2);
        let len = len + len % 2;
        extend(&truncate(self, len)?, self.p)
    }
}

impl fmt::Display for InfinitePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pat = Pattern {
            n: self.prefix.len() / 2,
            rows: self.prefix.clone(),
        };
        writeln!(f, "  ν = {:?} above row {}", self.tail, self.prefix.len())?;
        write!(f, "{pat}")
    }
}

/// The infinite pattern whose lower rows are `pat`.
pub fn extend(pat: &Pattern, p: u32) -> Result<InfinitePattern> {
    pat.check_shape()?;
    let top = pat.top();
    if top.pos.iter().any(|&x| x > 0) {
        return Err(Error::Domain("top row has a nonzero right part".into()));
    }
    let lifted;
    let pat = if top.first_neg() > 0 {
        lifted = phi_up(pat)?;
        &lifted
    } else {
        pat
    };
    let s = stability_index(pat).expect("top row is in stable form");
    let len = (s + s % 2).max(2);
    let tail = pat.top().stable_part().expect("stable top row");
    if tail.first().is_some_and(|&x| x > p) {
        return Err(Error::Domain(format!("tail {tail:?} exceeds p = {p}")));
    }
    Ok(InfinitePattern {
        p,
        prefix: pat.rows[..len].to_vec(),
        tail,
    })
}

/// The finite pattern formed by the lowest `rows` rows.
pub fn truncate(ip: &InfinitePattern, rows: usize) -> Result<Pattern> {
    if rows % 2 == 1 || rows < ip.prefix.len() {
        return Err(Error::Domain(format!(
            "cannot truncate to {rows} rows: need an even count of at least {}",
            ip.prefix.len()
        )));
    }
    let mut out = ip.prefix.clone();
    for r in ip.prefix.len() + 1..=rows {
        out.push(
            Row::stable(r, &ip.tail)
                .ok_or_else(|| Error::Shape(format!("tail too long for row {r}")))?,
        );
    }
    Ok(Pattern {
        n: rows / 2,
        rows: out,
    })
}

pub type InfiniteState = LinComb<InfinitePattern>;

fn extend_state(s: &State, p: u32) -> Result<InfiniteState> {
    let mut out = InfiniteState::zero();
    for (m, c) in s.iter() {
        out.add_term(extend(m, p)?, c);
    }
    Ok(out)
}

fn truncate_state(s: &InfiniteState, rows: usize) -> Result<State> {
    let mut out = State::zero();
    for (ip, c) in s.iter() {
        out.add_term(truncate(ip, rows)?, c);
    }
    Ok(out)
}

fn max_row(s: &InfiniteState, indices: &[i32]) -> Result<usize> {
    let mut m = s.keys().map(|ip| ip.stable_row()).max().unwrap_or(0);
    for &i in indices {
        m = m.max(rho(i)?);
    }
    Ok(m)
}

/// Smallest even row count strictly above the stability row and all `rho(i)`.
fn working_rows(s: &InfiniteState, indices: &[i32]) -> Result<usize> {
    let m = max_row(s, indices)?;
    Ok(m + 2 - m % 2)
}

/// The Fock space V(p) of the infinite-rank algebra, computed through finite
/// truncations.
pub struct InfiniteFock {
    p: u32,
    spaces: Mutex<HashMap<usize, Arc<FockSpace>>>,
}

impl InfiniteFock {
    pub fn new(p: u32) -> InfiniteFock {
        InfiniteFock {
            p,
            spaces: Default::default(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn space(&self, n: usize) -> Arc<FockSpace> {
        self.spaces
            .lock()
            .unwrap()
            .entry(n)
            .or_insert_with(|| Arc::new(FockSpace::new(n, self.p)))
            .clone()
    }

    pub fn vacuum(&self) -> InfiniteState {
        InfiniteState::basis(InfinitePattern::vacuum(self.p))
    }

    /// `c_i^±` acting through the truncation with `extra` additional row pairs.
    pub fn apply_at(
        &self,
        letter: Letter,
        s: &InfiniteState,
        extra: usize,
    ) -> Result<InfiniteState> {
        if letter.index == 0 {
            return Err(Error::Domain("index 0".into()));
        }
        let rows = working_rows(s, &[letter.index])? + 2 * extra;
        let space = self.space(rows / 2);
        let out = space.apply(letter, &truncate_state(s, rows)?)?;
        extend_state(&out, self.p)
    }

    pub fn apply(&self, letter: Letter, s: &InfiniteState) -> Result<InfiniteState> {
        self.apply_at(letter, s, 0)
    }

    pub fn apply_word(&self, word: &[Letter], s: &InfiniteState) -> Result<InfiniteState> {
        let mut cur = s.clone();
        for &l in word.iter().rev() {
            cur = self.apply(l, &cur)?;
        }
        Ok(cur)
    }

    /// Triple-relation residual evaluated on the smallest even truncation
    /// `2n ≥ max(2s, ρ(j), ρ(k), ρ(l)) + 6`.
    #[allow(clippy::too_many_arguments)]
    pub fn triple_residual(
        &self,
        xi: Sign,
        eta: Sign,
        eps: Sign,
        j: i32,
        k: i32,
        l: i32,
        s: &InfiniteState,
    ) -> Result<InfiniteState> {
        let m = max_row(s, &[j, k, l])? + 6;
        let rows = m + m % 2;
        let space = self.space(rows / 2);
        let out = space.triple_residual(xi, eta, eps, j, k, l, &truncate_state(s, rows)?)?;
        extend_state(&out, self.p)
    }

    pub fn inner_product(&self, a: &InfiniteState, b: &InfiniteState) -> Radical {
        a.inner(b)
    }
}
