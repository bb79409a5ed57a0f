//! Isoscalar factors and Clebsch-Gordan coefficients for
//! `W([1,0,…,0]) ⊗ W([m]^{2n})` in the odd Gelfand-Zetlin basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gz::{self, Pattern, Row};
use crate::radical::{Radical, SqrtProduct};

/// `S(k,q) = 1` if `k ≤ q`, else `−1`.
pub fn sign_s(k: i32, q: i32) -> i64 {
    if k <= q {
        1
    } else {
        -1
    }
}

fn parity(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn finish(sgn: i64, den: i64, rad: &SqrtProduct) -> Result<Radical> {
    if den == 0 {
        return Err(Error::Consistency(
            "coinciding labels in an isoscalar denominator".into(),
        ));
    }
    let coef = BigRational::new(BigInt::from(sgn), BigInt::from(den));
    Ok(rad.times(coef)?)
}

/// Factor for `gl(t|t) ⊃ gl(t|t−1)`. `u` is row `2t`, `l` row `2t−1`, both
/// taken from the source pattern; `k` is the column raised in `u` and `q` the
/// column raised in `l` (none for the terminating factor).
pub fn isoscalar_even(t: usize, u: &Row, l: &Row, k: i32, q: Option<i32>) -> Result<Radical> {
    let t = t as i32;
    let lu = |i: i32| u.label(i);
    let ll = |i: i32| l.label(i);
    let th = |i: i32| u.get(i) as i64 - l.get(i) as i64;
    let th_sum = |a: i32, b: i32| (a..=b).map(th).sum::<i64>();
    let negs = -t..=-1;
    let mut r = SqrtProduct::new();
    let Some(q) = q else {
        if k < 0 {
            if th(k) != 0 {
                return Ok(Radical::zero());
            }
            let sgn = parity((t + k) as i64 + th_sum(k, -1));
            for i in negs.filter(|&i| i != k) {
                r.frac(lu(k) - lu(i) + 1, lu(k) - ll(i));
            }
            for s in 1..t {
                r.num(lu(k) - ll(s));
            }
            for s in 1..=t {
                r.den(lu(k) - lu(s) + 1);
            }
            return finish(sgn, 1, &r);
        }
        if t == 1 {
            r.frac(lu(-1) - lu(1), ll(-1) - lu(1) + 1);
            return finish(parity(th(-1)), 1, &r);
        }
        for i in negs {
            r.frac(lu(i) - lu(k), ll(i) - lu(k) + 1);
        }
        for s in 1..t {
            r.num(ll(s) - lu(k) + 1);
        }
        for s in (1..=t).filter(|&s| s != k) {
            r.den(lu(s) - lu(k));
        }
        return finish(1, 1, &r);
    };
    match (k < 0, q < 0) {
        (true, true) => {
            let d = i64::from(k == q);
            if d + (1 - d) * th(q) * (1 - th(k)) == 0 {
                return Ok(Radical::zero());
            }
            let sgn = parity((k + q) as i64 + th_sum(k.min(q) + 1, k.max(q) - 1));
            let den = if d == 1 { 1 } else { lu(k) - lu(q) };
            if th(q) == 0 {
                return finish(sgn, den, &r);
            }
            for i in negs.filter(|&i| i != k && i != q) {
                r.num((ll(i) - ll(k) - 1 - d + 2 * th(i)) * (ll(i) - ll(q)));
                r.den((lu(i) - lu(k)) * (lu(i) - lu(q)));
            }
            for s in 1..=t {
                r.frac(lu(q) - lu(s), lu(k) - lu(s) + 1);
            }
            for s in 1..t {
                r.frac(lu(k) - ll(s), ll(q) - ll(s));
            }
            finish(sgn, den, &r)
        }
        (true, false) => {
            if th(k) != 0 {
                return Ok(Radical::zero());
            }
            let sgn = parity((k + t + 1) as i64 + th_sum(-t, k - 1));
            r.den(lu(k) - ll(q));
            for i in negs.filter(|&i| i != k) {
                r.num((ll(i) - ll(k) - 1 + 2 * th(i)) * (ll(i) - ll(q) + 1));
                r.den((lu(i) - lu(k)) * (lu(i) - ll(q)));
            }
            for s in 1..=t {
                r.frac((lu(s) - ll(q)).abs(), lu(k) - lu(s) + 1);
            }
            for s in (1..t).filter(|&s| s != q) {
                r.frac(lu(k) - ll(s), (ll(s) - ll(q) + 1).abs());
            }
            finish(sgn, 1, &r)
        }
        (false, true) => {
            if th(q) != 1 {
                return Ok(Radical::zero());
            }
            let sgn = parity((q + t + 1) as i64 + th_sum(q + 1, -1));
            r.den(lu(q) - lu(k) + 1);
            for i in negs.clone() {
                r.frac(lu(i) - lu(k), ll(i) - lu(k) + 1);
            }
            for i in negs.filter(|&i| i != q) {
                r.abs_frac(ll(q) - ll(i), lu(q) - lu(i));
            }
            for s in (1..=t).filter(|&s| s != k) {
                r.abs_frac(lu(q) - lu(s), lu(s) - lu(k));
            }
            for s in 1..t {
                r.abs_frac(ll(s) - lu(k) + 1, lu(q) - ll(s) - 1);
            }
            finish(sgn, 1, &r)
        }
        (false, false) => {
            let sgn = sign_s(k, q) * parity(th_sum(-t, -1));
            for i in negs {
                r.num((lu(i) - lu(k)) * (ll(i) - ll(q) + 1));
                r.den((ll(i) - lu(k) + 1) * (lu(i) - ll(q)));
            }
            for s in (1..=t).filter(|&s| s != k) {
                r.abs_frac(lu(s) - ll(q), lu(s) - lu(k));
            }
            for s in (1..t).filter(|&s| s != q) {
                r.abs_frac(ll(s) - lu(k) + 1, ll(s) - ll(q) + 1);
            }
            finish(sgn, 1, &r)
        }
    }
}

/// Factor for `gl(t|t−1) ⊃ gl(t−1|t−1)`. `u` is row `2t−1`, `l` row `2t−2`.
pub fn isoscalar_odd(t: usize, u: &Row, l: &Row, k: i32, q: Option<i32>) -> Result<Radical> {
    let t = t as i32;
    let lu = |i: i32| u.label(i);
    let ll = |i: i32| l.label(i);
    let th = |i: i32| l.get(i) as i64 - u.get(i) as i64;
    let th_sum = |a: i32, b: i32| (a..=b).map(th).sum::<i64>();
    let mut r = SqrtProduct::new();
    let Some(q) = q else {
        if k < 0 {
            let sgn = parity((t + k) as i64);
            for s in -t + 1..=-1 {
                r.num(lu(k) - ll(s));
            }
            for s in (-t..=-1).filter(|&s| s != k) {
                r.den(lu(k) - lu(s));
            }
            for i in 1..t {
                r.frac(lu(k) - lu(i), lu(k) - ll(i));
            }
            return finish(sgn, 1, &r);
        }
        if th(k) != 1 {
            return Ok(Radical::zero());
        }
        let sgn = parity(k as i64 + th_sum(k + 1, t - 1));
        for s in -t + 1..=-1 {
            r.num(ll(s) - lu(k) + 1);
        }
        for s in -t..=-1 {
            r.den(lu(s) - lu(k) + 1);
        }
        for i in (1..t).filter(|&i| i != k) {
            r.frac(lu(i) - lu(k) + 1, ll(i) - lu(k) + 1);
        }
        return finish(sgn, 1, &r);
    };
    match (k < 0, q < 0) {
        (true, true) => {
            let sgn = parity((k + q) as i64) * sign_s(-k, -q);
            for i in (-t..=-1).filter(|&i| i != k) {
                r.frac(ll(q) - lu(i) + 1, lu(k) - lu(i));
            }
            for i in (-t + 1..=-1).filter(|&i| i != q) {
                r.frac(lu(k) - ll(i), ll(q) - ll(i) + 1);
            }
            for s in 1..t {
                r.num((lu(k) - lu(s)) * (ll(q) - ll(s) + 1));
                r.den((lu(k) - ll(s)) * (ll(q) - lu(s) + 1));
            }
            finish(sgn, 1, &r)
        }
        (true, false) => {
            if th(q) != 0 {
                return Ok(Radical::zero());
            }
            let sgn = parity((k + t) as i64 + th_sum(1, q - 1));
            r.den(lu(k) - ll(q) + 1);
            for i in (-t..=-1).filter(|&i| i != k) {
                r.frac(lu(i) - ll(q), lu(k) - lu(i));
            }
            for i in -t + 1..=-1 {
                r.frac(lu(k) - ll(i), ll(i) - ll(q));
            }
            for s in (1..t).filter(|&s| s != q) {
                r.num((lu(k) - lu(s)) * (ll(s) - ll(q)));
                r.den((lu(k) - ll(s)) * (lu(s) - ll(q)));
            }
            finish(sgn, 1, &r)
        }
        (false, true) => {
            if th(k) != 1 {
                return Ok(Radical::zero());
            }
            let sgn = parity((k + q + t) as i64 + th_sum(k + 1, t - 1));
            r.den(ll(q) - lu(k) + 1);
            for i in -t..=-1 {
                r.frac((lu(i) - ll(q) - 1).abs(), lu(i) - lu(k) + 1);
            }
            for i in (-t + 1..=-1).filter(|&i| i != q) {
                r.frac(ll(i) - lu(k) + 1, (ll(i) - ll(q) - 1).abs());
            }
            for s in (1..t).filter(|&s| s != k) {
                r.num((ll(q) - ll(s) + 1) * (lu(s) - lu(k) + 1));
                r.den((ll(q) - lu(s) + 1) * (ll(s) - lu(k) + 1));
            }
            finish(sgn, 1, &r)
        }
        (false, false) => {
            let d = i64::from(k == q);
            if d + (1 - d) * th(k) * (1 - th(q)) == 0 {
                return Ok(Radical::zero());
            }
            let sgn = parity((k - 1) as i64 + th_sum(1, t - 1));
            let den = if d == 1 { 1 } else { lu(k) - lu(q) };
            if th(q) == 1 {
                return finish(sgn, den, &r);
            }
            for i in -t..=-1 {
                r.frac(lu(i) - ll(q), lu(i) - lu(k) + 1);
            }
            for i in -t + 1..=-1 {
                r.frac(ll(i) - lu(k) + 1, ll(i) - ll(q));
            }
            for s in (1..t).filter(|&s| s != k && s != q) {
                r.num((ll(s) - ll(q) + 1 - d + 2 * th(s)) * (ll(s) - ll(q)));
                r.den((lu(s) - lu(k)) * (lu(s) - ll(q)));
            }
            finish(sgn, den, &r)
        }
    }
}

type IsoKey = (usize, Row, Row, i32, Option<i32>);

static ISO_MEMO: LazyLock<RwLock<HashMap<IsoKey, Radical>>> = LazyLock::new(Default::default);

/// Isoscalar factor at level `r` (row `r` over row `r−1`), memoized.
pub fn isoscalar(r: usize, u: &Row, l: &Row, k: i32, q: Option<i32>) -> Result<Radical> {
    let key = (r, u.clone(), l.clone(), k, q);
    if let Some(v) = ISO_MEMO.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = if r.is_multiple_of(2) {
        isoscalar_even(r / 2, u, l, k, q)?
    } else {
        isoscalar_odd(r.div_ceil(2), u, l, k, q)?
    };
    ISO_MEMO.write().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Parity exponent of the pattern restricted to rows `1..2t`.
fn level_sign(m: &Pattern, t: usize) -> i64 {
    let mut e = 0i64;
    for i in 1..=t {
        for c in -(i as i32)..=-1 {
            e += m.get(c, 2 * i) as i64 - m.get(c, 2 * i - 1) as i64;
        }
    }
    for i in 1..t {
        for c in 1..=i as i32 {
            e += m.get(c, 2 * i) as i64 - m.get(c, 2 * i + 1) as i64;
        }
    }
    parity(e)
}

/// Coefficient `⟨e_j ⊗ src | dst⟩` with `e_j` the standard basis slot `j ∈ [1,2n]`.
pub fn cgc(j: usize, src: &Pattern, dst: &Pattern) -> Result<Radical> {
    let n = src.n;
    if dst.n != n || j == 0 || j > 2 * n {
        return Err(Error::Domain(format!("slot {j} or rank mismatch")));
    }
    if src.top().increment_column(dst.top()).is_none() {
        return Err(Error::Domain("top rows do not differ by one unit".into()));
    }
    if (1..j).any(|r| src.row(r) != dst.row(r)) {
        return Ok(Radical::zero());
    }
    let mut cols = vec![0i32; 2 * n + 1];
    for (r, col) in cols.iter_mut().enumerate().skip(j) {
        match src.row(r).increment_column(dst.row(r)) {
            Some(c) => *col = c,
            None => return Ok(Radical::zero()),
        }
    }
    let mut acc = Radical::one();
    for r in (j + 1..=2 * n).rev() {
        let f = isoscalar(r, src.row(r), src.row(r - 1), cols[r], Some(cols[r - 1]))?;
        if f.is_zero() {
            return Ok(f);
        }
        acc = &acc * &f;
    }
    let empty = Row {
        neg: vec![],
        pos: vec![],
    };
    let lower = if j >= 2 { src.row(j - 1) } else { &empty };
    let f = isoscalar(j, src.row(j), lower, cols[j], None)?;
    acc = &acc * &f;
    if j.is_multiple_of(2) && j >= 4 && level_sign(src, j / 2) < 0 {
        acc = -acc;
    }
    Ok(acc)
}

/// Columns `k` whose increment of `top` is again an admissible top row,
/// restricted by the p-bound when `p` is given.
pub fn candidate_targets(top: &Row, p: Option<u32>) -> Vec<i32> {
    let r = top.neg.len() * 2;
    gz::columns(r)
        .into_iter()
        .filter(|&k| {
            let w = top.inc(k);
            gz::valid_top_row(&w) && p.is_none_or(|p| w.neg[0] <= p)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CgcRecord {
    pub j: usize,
    pub src: Pattern,
    pub dst: Pattern,
    pub k: i32,
    pub value: Radical,
}

/// All nonzero coefficients with source top row `top`.
pub fn cgc_table(top: &Row, n: usize, p: Option<u32>) -> Result<Vec<CgcRecord>> {
    let srcs = gz::enumerate_patterns(top, n)?;
    let targets = candidate_targets(top, p);
    let mut out = Vec::new();
    for src in &srcs {
        for j in 1..=2 * n {
            for dst in gz::raised_patterns(src, j) {
                let k = src
                    .top()
                    .increment_column(dst.top())
                    .expect("raised top row");
                if !targets.contains(&k) {
                    continue;
                }
                let value = cgc(j, src, &dst)?;
                if !value.is_zero() {
                    out.push(CgcRecord {
                        j,
                        src: src.clone(),
                        dst,
                        k,
                        value,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct UnitarityReport {
    pub columns: usize,
    pub rows: usize,
    /// Descriptions of columns with wrong norm or non-orthogonal pairs.
    pub failures: Vec<String>,
}

/// Checks that the coupling matrix from `{e_j ⊗ |src⟩}` to `{|dst⟩}` over all
/// targets of `top` is square with exactly orthonormal columns.
pub fn unitarity(top: &Row, n: usize) -> Result<UnitarityReport> {
    let srcs = gz::enumerate_patterns(top, n)?;
    let mut dsts = Vec::new();
    for k in candidate_targets(top, None) {
        dsts.extend(gz::enumerate_patterns(&top.inc(k), n)?);
    }
    let columns: Vec<BTreeMap<(usize, Pattern), Radical>> = dsts
        .par_iter()
        .map(|dst| {
            let mut col = BTreeMap::new();
            for j in 1..=2 * n {
                for src in gz::lowered_patterns(dst, j) {
                    if src.top() != top {
                        continue;
                    }
                    let v = cgc(j, &src, dst)?;
                    if !v.is_zero() {
                        col.insert((j, src), v);
                    }
                }
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let mut by_row: HashMap<(usize, Pattern), Vec<(usize, Radical)>> = HashMap::new();
    for (c, col) in columns.iter().enumerate() {
        for (key, v) in col {
            by_row.entry(key.clone()).or_default().push((c, v.clone()));
        }
    }
    let mut gram: HashMap<(usize, usize), Radical> = HashMap::new();
    for entries in by_row.values() {
        for (a, va) in entries {
            for (b, vb) in entries {
                if a <= b {
                    *gram.entry((*a, *b)).or_default() += &(va * vb);
                }
            }
        }
    }
    let mut report = UnitarityReport {
        columns: dsts.len(),
        rows: 2 * n * srcs.len(),
        failures: Vec::new(),
    };
    if report.columns != report.rows {
        report.failures.push(format!(
            "{} columns for {} rows",
            report.columns, report.rows
        ));
    }
    let one = Radical::one();
    for (c, dst) in dsts.iter().enumerate() {
        let norm = gram.get(&(c, c)).cloned().unwrap_or_default();
        if norm != one {
            report
                .failures
                .push(format!("norm² {} for {:?}", norm, dst.rows));
        }
    }
    for ((a, b), v) in &gram {
        if a != b && !v.is_zero() {
            report.failures.push(format!(
                "overlap {} between {:?} and {:?}",
                v, dsts[*a].rows, dsts[*b].rows
            ));
        }
    }
    report.failures.sort();
    Ok(report)
}

/// Squared value as a rational; CGCs are always single-term radicals.
pub fn square(v: &Radical) -> BigRational {
    v.square_rational().unwrap_or_else(|| {
        let s = v * v;
        s.as_rational().unwrap_or_else(BigRational::zero)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gz::{enumerate_top_rows, Pattern};
    use num_traits::One;

    fn row(neg: &[u32], pos: &[u32]) -> Row {
        Row {
            neg: neg.to_vec(),
            pos: pos.to_vec(),
        }
    }

    #[test]
    fn sign_s_values() {
        assert_eq!(sign_s(1, 1), 1);
        assert_eq!(sign_s(2, 1), -1);
        assert_eq!(sign_s(-3, -1), 1);
    }

    #[test]
    fn stable_rows_give_unit_factors() {
        let u = row(&[2, 1, 0], &[0, 0, 0]);
        let l = row(&[2, 1, 0], &[0, 0]);
        assert_eq!(
            isoscalar_even(3, &u, &l, -3, Some(-3)).unwrap(),
            Radical::one()
        );
        let u = row(&[2, 1, 0], &[0, 0]);
        let l = row(&[2, 1], &[0, 0]);
        assert_eq!(
            isoscalar_odd(3, &u, &l, -3, Some(-2)).unwrap(),
            Radical::one()
        );
    }

    #[test]
    fn selection_zeros() {
        // θ_{k,2t−1} = 1 kills the terminating even factor with k < 0
        let u = row(&[1, 1], &[0, 0]);
        let l = row(&[1, 0], &[0]);
        assert!(isoscalar_even(2, &u, &l, -1, None).unwrap().is_zero());
        // θ_{k,2t−2} = 0 kills the terminating odd factor with k > 0
        let u = row(&[1, 1], &[0]);
        let l = row(&[1], &[0]);
        assert!(isoscalar_odd(2, &u, &l, 1, None).unwrap().is_zero());
    }

    #[test]
    fn single_column_is_unit() {
        let u = row(&[3], &[]);
        let l = row(&[], &[]);
        assert_eq!(isoscalar_odd(1, &u, &l, -1, None).unwrap(), Radical::one());
    }

    #[test]
    fn generator_patterns_have_unit_cgc() {
        for n in 1..=3 {
            for i in (-(n as i32)..=n as i32).filter(|&i| i != 0) {
                let g = Pattern::generator(i, n).unwrap();
                let j = gz::rho(i).unwrap();
                let v = cgc(j, &Pattern::vacuum(n), &g).unwrap();
                assert_eq!(square(&v), BigRational::one(), "i={i} n={n}");
            }
        }
    }

    #[test]
    fn unitarity_small() {
        for n in 1..=2 {
            for top in enumerate_top_rows(n, 3, 3) {
                let rep = unitarity(&top, n).unwrap();
                assert!(rep.failures.is_empty(), "{top:?}: {:?}", rep.failures);
            }
        }
    }

    #[test]
    fn candidate_targets_of_vacuum() {
        assert_eq!(candidate_targets(&Row::zero(4), Some(1)), vec![-2]);
        let top = row(&[1, 0], &[0, 0]);
        assert_eq!(candidate_targets(&top, Some(1)), vec![-1]);
        assert_eq!(candidate_targets(&top, Some(2)), vec![-2, -1]);
    }
}
