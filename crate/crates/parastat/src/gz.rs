//! Odd Gelfand-Zetlin patterns for covariant gl(n|n) modules.
//!
//! Rows are numbered 1 (bottom) to 2n (top) and stored bottom-up. Row `2s`
//! has columns `-s..-1` and `1..s`; row `2s-1` has `-s..-1` and `1..s-1`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of (negative, positive) columns of row `r`.
pub fn row_shape(r: usize) -> (usize, usize) {
    if r.is_multiple_of(2) {
        (r / 2, r / 2)
    } else {
        (r.div_ceil(2), (r - 1) / 2)
    }
}

/// Column indices of row `r`, negative ones first.
pub fn columns(r: usize) -> Vec<i32> {
    let (a, b) = row_shape(r);
    (-(a as i32)..0).chain(1..=b as i32).collect()
}

/// Row carrying the creation slot of `c_i^±`.
pub fn rho(i: i32) -> Result<usize> {
    match i.cmp(&0) {
        Ordering::Greater => Ok(2 * i as usize),
        Ordering::Less => Ok((-2 * i - 1) as usize),
        Ordering::Equal => Err(Error::Domain("index 0 is not a generator index".into())),
    }
}

/// ℤ₂ degree of `c_i^±`: odd for positive indices.
pub fn degree(i: i32) -> u8 {
    u8::from(i > 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    /// Entries for columns `-len..-1`, most negative first.
    pub neg: Vec<u32>,
    /// Entries for columns `1..len`.
    pub pos: Vec<u32>,
}

impl Row {
    pub fn zero(r: usize) -> Row {
        let (a, b) = row_shape(r);
        Row {
            neg: vec![0; a],
            pos: vec![0; b],
        }
    }

    /// Top row `[ν₁,…,ν_s; 0,…]` for a row of index `r`, padding ν with zeros.
    pub fn stable(r: usize, nu: &[u32]) -> Option<Row> {
        let (a, b) = row_shape(r);
        if nu.len() > a {
            return None;
        }
        let mut neg = nu.to_vec();
        neg.resize(a, 0);
        Some(Row {
            neg,
            pos: vec![0; b],
        })
    }

    fn slot(&self, i: i32) -> usize {
        if i < 0 {
            (self.neg.len() as i32 + i) as usize
        } else {
            (i - 1) as usize
        }
    }

    pub fn get(&self, i: i32) -> u32 {
        if i < 0 {
            self.neg[self.slot(i)]
        } else {
            self.pos[self.slot(i)]
        }
    }

    pub fn has(&self, i: i32) -> bool {
        if i < 0 {
            (-i) as usize <= self.neg.len()
        } else {
            i >= 1 && i as usize <= self.pos.len()
        }
    }

    /// The l-label: `m − i` for negative `i`, `−m + i` for positive `i`.
    pub fn label(&self, i: i32) -> i64 {
        let m = self.get(i) as i64;
        if i < 0 {
            m - i as i64
        } else {
            -m + i as i64
        }
    }

    pub fn sum(&self) -> u64 {
        self.neg.iter().chain(&self.pos).map(|&x| x as u64).sum()
    }

    pub fn count_pos(&self) -> usize {
        self.pos.iter().filter(|&&x| x > 0).count()
    }

    pub fn first_neg(&self) -> u32 {
        *self.neg.last().unwrap_or(&0)
    }

    pub fn inc(&self, i: i32) -> Row {
        let mut out = self.clone();
        let s = self.slot(i);
        if i < 0 {
            out.neg[s] += 1;
        } else {
            out.pos[s] += 1;
        }
        out
    }

    pub fn dec(&self, i: i32) -> Option<Row> {
        let mut out = self.clone();
        let s = self.slot(i);
        let v = if i < 0 {
            &mut out.neg[s]
        } else {
            &mut out.pos[s]
        };
        *v = v.checked_sub(1)?;
        Some(out)
    }

    /// Column `c` with `to = self + e_c`, if the rows differ that way.
    pub fn increment_column(&self, to: &Row) -> Option<i32> {
        if self.neg.len() != to.neg.len() || self.pos.len() != to.pos.len() {
            return None;
        }
        let mut found = None;
        let a = self.neg.len() as i32;
        let diffs = self
            .neg
            .iter()
            .zip(&to.neg)
            .enumerate()
            .map(|(idx, (x, y))| (idx as i32 - a, *x, *y))
            .chain(
                self.pos
                    .iter()
                    .zip(&to.pos)
                    .enumerate()
                    .map(|(idx, (x, y))| (idx as i32 + 1, *x, *y)),
            );
        for (c, x, y) in diffs {
            if x == y {
                continue;
            }
            if found.is_some() || y != x + 1 {
                return None;
            }
            found = Some(c);
        }
        found
    }

    /// Whether the row is `[ν, 0…; 0…]` with at least one trailing zero on the left.
    pub fn stable_part(&self) -> Option<Vec<u32>> {
        if self.pos.iter().any(|&x| x > 0) || self.first_neg() != 0 {
            return None;
        }
        let mut nu = self.neg.clone();
        while nu.last() == Some(&0) {
            nu.pop();
        }
        Some(nu)
    }
}

fn weakly_decreasing(xs: &[u32]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

/// Admissible top row of a covariant module.
pub fn valid_top_row(row: &Row) -> bool {
    weakly_decreasing(&row.neg)
        && weakly_decreasing(&row.pos)
        && row.first_neg() as usize >= row.count_pos()
}

/// Whether `lower` may sit directly below `upper`, where `upper` is row `r`.
pub fn pair_ok(upper: &Row, lower: &Row, r: usize) -> bool {
    if r < 2
        || (upper.neg.len(), upper.pos.len()) != row_shape(r)
        || (lower.neg.len(), lower.pos.len()) != row_shape(r - 1)
    {
        return false;
    }
    if r.is_multiple_of(2) {
        let s = r / 2;
        for c in 1..=s as i32 {
            let d = upper.get(-c) as i64 - lower.get(-c) as i64;
            if d != 0 && d != 1 {
                return false;
            }
        }
        for c in 1..s as i32 {
            let x = lower.get(c);
            if x > upper.get(c) || x < upper.get(c + 1) {
                return false;
            }
        }
        s < 2 || lower.first_neg() as usize >= lower.count_pos()
    } else {
        let s = (r - 1) / 2;
        for c in 1..=s as i32 {
            let x = lower.get(-c);
            if x > upper.get(-c - 1) || x < upper.get(-c) {
                return false;
            }
            let d = lower.get(c) as i64 - upper.get(c) as i64;
            if d != 0 && d != 1 {
                return false;
            }
        }
        let cp = lower.count_pos();
        lower.first_neg() as usize >= cp && upper.first_neg() as usize >= cp
    }
}

/// All rows that may sit below `upper` (row `r`), in lexicographic order.
pub fn lower_rows(upper: &Row, r: usize) -> Vec<Row> {
    if r < 2 {
        return Vec::new();
    }
    let mut ranges: Vec<(u32, u32)> = Vec::new();
    let (a, b) = row_shape(r - 1);
    if r.is_multiple_of(2) {
        for c in (1..=a as i32).rev() {
            let v = upper.get(-c);
            ranges.push((v.saturating_sub(1), v));
        }
        for c in 1..=b as i32 {
            ranges.push((upper.get(c + 1), upper.get(c)));
        }
    } else {
        for c in (1..=a as i32).rev() {
            ranges.push((upper.get(-c), upper.get(-c - 1)));
        }
        for c in 1..=b as i32 {
            let v = upper.get(c);
            ranges.push((v, v + 1));
        }
    }
    let mut out = Vec::new();
    let mut cur: Vec<u32> = ranges.iter().map(|r| r.0).collect();
    loop {
        let cand = Row {
            neg: cur[..a].to_vec(),
            pos: cur[a..].to_vec(),
        };
        if pair_ok(upper, &cand, r) {
            out.push(cand);
        }
        let mut idx = cur.len();
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            if cur[idx] < ranges[idx].1 {
                cur[idx] += 1;
                break;
            }
            cur[idx] = ranges[idx].0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub n: usize,
    /// Rows 1..2n, bottom first.
    pub rows: Vec<Row>,
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.rows.iter().rev().cmp(other.rows.iter().rev()))
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// "1".."8" or "p-bound".
    pub condition: String,
    pub row: usize,
    pub column: i32,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition {} at m[{},{}]",
            self.condition, self.column, self.row
        )
    }
}

impl Pattern {
    pub fn vacuum(n: usize) -> Pattern {
        Pattern {
            n,
            rows: (1..=2 * n).map(Row::zero).collect(),
        }
    }

    /// Row `r` (1-based).
    pub fn row(&self, r: usize) -> &Row {
        &self.rows[r - 1]
    }

    pub fn top(&self) -> &Row {
        self.rows.last().expect("pattern has rows")
    }

    pub fn get(&self, i: i32, r: usize) -> u32 {
        self.row(r).get(i)
    }

    pub fn row_weight(&self, r: usize) -> u64 {
        if r == 0 {
            0
        } else {
            self.row(r).sum()
        }
    }

    pub fn degree(&self) -> u64 {
        self.top().sum()
    }

    pub fn check_shape(&self) -> Result<()> {
        if self.n == 0 || self.rows.len() != 2 * self.n {
            return Err(Error::Shape(format!(
                "expected {} rows, found {}",
                2 * self.n,
                self.rows.len()
            )));
        }
        for (idx, row) in self.rows.iter().enumerate() {
            if (row.neg.len(), row.pos.len()) != row_shape(idx + 1) {
                return Err(Error::Shape(format!(
                    "row {} has the wrong number of entries",
                    idx + 1
                )));
            }
        }
        Ok(())
    }

    /// All violated conditions; empty means the pattern is a basis vector of V(p,n).
    pub fn violations(&self, p: u32) -> Result<Vec<Violation>> {
        self.check_shape()?;
        let n = self.n;
        let mut out = Vec::new();
        let mut bad = |c: &str, row: usize, column: i32| {
            out.push(Violation {
                condition: c.into(),
                row,
                column,
            })
        };
        let top = self.top();
        for (idx, w) in top.neg.windows(2).enumerate() {
            if w[0] < w[1] {
                bad("1", 2 * n, idx as i32 - n as i32 + 1);
            }
        }
        for (idx, w) in top.pos.windows(2).enumerate() {
            if w[0] < w[1] {
                bad("1", 2 * n, idx as i32 + 2);
            }
        }
        if (top.first_neg() as usize) < top.count_pos() {
            bad("1", 2 * n, -1);
        }
        for s in 1..=n {
            for i in 1..=s as i32 {
                let d = self.get(-i, 2 * s) as i64 - self.get(-i, 2 * s - 1) as i64;
                if d != 0 && d != 1 {
                    bad("2", 2 * s - 1, -i);
                }
            }
        }
        for s in 1..n {
            for i in 1..=s as i32 {
                let d = self.get(i, 2 * s) as i64 - self.get(i, 2 * s + 1) as i64;
                if d != 0 && d != 1 {
                    bad("3", 2 * s, i);
                }
            }
        }
        for s in 1..=n {
            let row = self.row(2 * s);
            if (row.first_neg() as usize) < row.count_pos() {
                bad("4", 2 * s, -1);
            }
        }
        for s in 2..=n {
            let row = self.row(2 * s - 1);
            if (row.first_neg() as usize) < row.count_pos() {
                bad("5", 2 * s - 1, -1);
            }
        }
        for s in 2..=n {
            for i in 1..s as i32 {
                let x = self.get(i, 2 * s - 1);
                if x > self.get(i, 2 * s) || x < self.get(i + 1, 2 * s) {
                    bad("6", 2 * s - 1, i);
                }
            }
        }
        for s in 1..n {
            for i in 1..=s as i32 {
                let x = self.get(-i, 2 * s);
                if x > self.get(-i - 1, 2 * s + 1) || x < self.get(-i, 2 * s + 1) {
                    bad("7", 2 * s, -i);
                }
            }
        }
        for s in 1..n {
            if (self.get(-1, 2 * s + 1) as usize) < self.row(2 * s).count_pos() {
                bad("8", 2 * s + 1, -1);
            }
        }
        if top.neg[0] > p {
            bad("p-bound", 2 * n, -(n as i32));
        }
        Ok(out)
    }

    pub fn is_valid(&self, p: u32) -> bool {
        matches!(self.violations(p), Ok(v) if v.is_empty())
    }

    /// Structural validity without the p-bound.
    pub fn is_gz(&self) -> bool {
        self.check_shape().is_ok()
            && valid_top_row(self.top())
            && (2..=2 * self.n).all(|r| pair_ok(self.row(r), self.row(r - 1), r))
    }

    /// Eigenvalue of `h_i` on this pattern.
    pub fn cartan_eigenvalue(&self, i: i32, p: u32) -> Result<BigRational> {
        let n = self.n as i32;
        if i == 0 || i.abs() > n {
            return Err(Error::Domain(format!("index {i} outside [-{n},{n}]*")));
        }
        let half = BigRational::new(BigInt::from(p), BigInt::from(2));
        let a = i.unsigned_abs() as usize;
        let (base, diff) = if i < 0 {
            (
                -half,
                self.row_weight(2 * a - 1) as i64 - self.row_weight(2 * a - 2) as i64,
            )
        } else {
            (
                half,
                self.row_weight(2 * a) as i64 - self.row_weight(2 * a - 1) as i64,
            )
        };
        Ok(base + BigRational::from_integer(BigInt::from(diff)))
    }

    /// Pattern attached to `c_i^+`: a leading 1 in rows ρ(i)..2n.
    pub fn generator(i: i32, n: usize) -> Result<Pattern> {
        if i.unsigned_abs() as usize > n {
            return Err(Error::Domain(format!("index {i} outside rank {n}")));
        }
        let r0 = rho(i)?;
        let mut pat = Pattern::vacuum(n);
        for r in r0..=2 * n {
            pat.rows[r - 1].neg[0] = 1;
        }
        Ok(pat)
    }

    /// The underlying partition λ of the top row.
    pub fn partition(&self) -> Vec<u32> {
        partition_from_top(self.top())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = 2 * self.n;
        for r in (1..=width).rev() {
            let row = self.row(r);
            let neg: Vec<String> = row.neg.iter().map(|x| format!("{x:>2}")).collect();
            let pos: Vec<String> = row.pos.iter().map(|x| format!("{x:>2}")).collect();
            let pad = (self.n - row.neg.len()) * 3;
            writeln!(
                f,
                "{:pad$}{} ¦ {}",
                "",
                neg.join(" "),
                pos.join(" "),
                pad = pad
            )?;
        }
        Ok(())
    }
}

/// Top row of the covariant module labelled by `lambda`.
pub fn top_from_partition(lambda: &[u32], n: usize) -> Result<Row> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Domain("not a partition".into()));
    }
    if lambda.get(n).is_some_and(|&x| x as usize > n) {
        return Err(Error::Domain(format!(
            "hook condition fails: λ_{} > {}",
            n + 1,
            n
        )));
    }
    let neg: Vec<u32> = (0..n)
        .map(|idx| lambda.get(idx).copied().unwrap_or(0))
        .collect();
    let pos = (1..=n as u32)
        .map(|i| {
            let conj = lambda.iter().filter(|&&x| x >= i).count();
            conj.saturating_sub(n) as u32
        })
        .collect();
    Ok(Row { neg, pos })
}

/// Inverse of [`top_from_partition`].
pub fn partition_from_top(top: &Row) -> Vec<u32> {
    let mut lambda: Vec<u32> = top.neg.clone();
    let mut r = 1;
    loop {
        let c = top.pos.iter().filter(|&&x| x >= r).count() as u32;
        if c == 0 {
            break;
        }
        lambda.push(c);
        r += 1;
    }
    while lambda.last() == Some(&0) {
        lambda.pop();
    }
    lambda
}

/// Partitions of exactly `d` with parts at most `max_part`, in reverse lexicographic order.
pub fn partitions(d: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn rec(rem: u32, mx: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=rem.min(mx)).rev() {
            cur.push(x);
            rec(rem - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, max_part, &mut Vec::new(), &mut out);
    out
}

/// Partitions with `λ₁ ≤ p`, `λ_{n+1} ≤ n`, `|λ| = d`.
pub fn fock_partitions(n: usize, p: u32, d: u32) -> Vec<Vec<u32>> {
    partitions(d, p)
        .into_iter()
        .filter(|l| l.get(n).is_none_or(|&x| x as usize <= n))
        .collect()
}

/// Top rows of all covariant modules in V(p,n) up to total size `degree`.
pub fn enumerate_top_rows(n: usize, p: u32, degree: u32) -> Vec<Row> {
    (0..=degree)
        .flat_map(|d| fock_partitions(n, p, d))
        .map(|l| top_from_partition(&l, n).expect("filtered partition"))
        .collect()
}

/// All patterns with the given top row, sorted.
pub fn enumerate_patterns(top: &Row, n: usize) -> Result<Vec<Pattern>> {
    if (top.neg.len(), top.pos.len()) != row_shape(2 * n) || !valid_top_row(top) {
        return Err(Error::Domain("invalid top row".into()));
    }
    fn rec(r: usize, stack: &mut Vec<Row>, out: &mut Vec<Pattern>, n: usize) {
        if r == 1 {
            let rows = stack.iter().rev().cloned().collect();
            out.push(Pattern { n, rows });
            return;
        }
        for low in lower_rows(stack.last().unwrap(), r) {
            stack.push(low);
            rec(r - 1, stack, out, n);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    rec(2 * n, &mut vec![top.clone()], &mut out, n);
    out.sort();
    Ok(out)
}

/// All basis patterns of V(p,n) of degree at most `degree`.
pub fn basis(n: usize, p: u32, degree: u32) -> Vec<Pattern> {
    enumerate_top_rows(n, p, degree)
        .iter()
        .flat_map(|t| enumerate_patterns(t, n).expect("top row from partition"))
        .collect()
}

/// Patterns obtained from `m` by raising one entry in each of rows `start..2n`.
pub fn raised_patterns(m: &Pattern, start: usize) -> Vec<Pattern> {
    shifted_patterns(m, start, true)
}

/// Patterns obtained from `m` by lowering one entry in each of rows `start..2n`.
pub fn lowered_patterns(m: &Pattern, start: usize) -> Vec<Pattern> {
    shifted_patterns(m, start, false)
}

fn shifted_patterns(m: &Pattern, start: usize, up: bool) -> Vec<Pattern> {
    let n = m.n;
    let top_r = 2 * n;
    let mut out = Vec::new();
    // rows[r-1] for r in start..=top_r, built top-down
    fn rec(
        m: &Pattern,
        r: usize,
        start: usize,
        up: bool,
        acc: &mut Vec<Row>,
        out: &mut Vec<Pattern>,
    ) {
        let n = m.n;
        if r < start {
            if start > 1 && !pair_ok(acc.last().unwrap(), m.row(start - 1), start) {
                return;
            }
            let mut rows = m.rows[..start - 1].to_vec();
            rows.extend(acc.iter().rev().cloned());
            out.push(Pattern { n, rows });
            return;
        }
        for c in columns(r) {
            let row = if up {
                Some(m.row(r).inc(c))
            } else {
                m.row(r).dec(c)
            };
            let Some(row) = row else { continue };
            let ok = match acc.last() {
                None => valid_top_row(&row),
                Some(upper) => pair_ok(upper, &row, r + 1),
            };
            if ok {
                acc.push(row);
                rec(m, r - 1, start, up, acc, out);
                acc.pop();
            }
        }
    }
    if start == 0 || start > top_r {
        return out;
    }
    rec(m, top_r, start, up, &mut Vec::new(), &mut out);
    out
}

/// Number of (n|n) semistandard supertableaux of shape λ: letters
/// `1..n` are even (column-strict), `n+1..2n` odd (row-strict).
pub fn dimension_covariant(lambda: &[u32], n: usize) -> Result<u64> {
    if lambda.get(n).is_some_and(|&x| x as usize > n) {
        return Err(Error::Domain("hook condition fails".into()));
    }
    let shape: Vec<usize> = lambda
        .iter()
        .map(|&x| x as usize)
        .filter(|&x| x > 0)
        .collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    fn rec(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, n: usize) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 1..=2 * n {
            let even = v <= n;
            if c > 0 {
                let left = grid[r][c - 1];
                if left > v || (left == v && !even) {
                    continue;
                }
            }
            if r > 0 {
                let up = grid[r - 1][c];
                if up > v || (up == v && even) {
                    continue;
                }
            }
            grid[r][c] = v;
            total += rec(idx + 1, cells, grid, n);
        }
        total
    }
    Ok(rec(0, &cells, &mut grid, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(neg: &[u32], pos: &[u32]) -> Row {
        Row {
            neg: neg.to_vec(),
            pos: pos.to_vec(),
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(1).unwrap(), 2);
        assert_eq!(rho(-1).unwrap(), 1);
        assert_eq!(rho(-3).unwrap(), 5);
        assert!(rho(0).is_err());
    }

    #[test]
    fn partition_round_trip() {
        for n in 1..=3 {
            for d in 0..=7 {
                for l in fock_partitions(n, 9, d) {
                    let t = top_from_partition(&l, n).unwrap();
                    assert!(valid_top_row(&t), "{l:?}");
                    assert_eq!(partition_from_top(&t), l);
                }
            }
        }
        assert_eq!(
            top_from_partition(&[3, 2, 2, 1], 2).unwrap(),
            row(&[3, 2], &[2, 1])
        );
        assert!(top_from_partition(&[3, 3, 3], 2).is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_patterns(&Row::zero(4), 2).unwrap().len(), 1);
        let t = top_from_partition(&[1], 2).unwrap();
        assert_eq!(enumerate_patterns(&t, 2).unwrap().len(), 4);
        let t = top_from_partition(&[1], 3).unwrap();
        assert_eq!(enumerate_patterns(&t, 3).unwrap().len(), 6);
        assert_eq!(enumerate_top_rows(2, 1, 1).len(), 2);
        let tops = enumerate_top_rows(1, 1, 2);
        assert_eq!(tops.len(), 3);
    }

    #[test]
    fn supertableaux_counts() {
        assert_eq!(dimension_covariant(&[1], 1).unwrap(), 2);
        assert_eq!(dimension_covariant(&[1], 2).unwrap(), 4);
        assert_eq!(dimension_covariant(&[2], 1).unwrap(), 2);
        assert_eq!(dimension_covariant(&[1, 1], 1).unwrap(), 2);
        assert_eq!(dimension_covariant(&[], 3).unwrap(), 1);
    }

    #[test]
    fn raise_and_lower_are_inverse() {
        let pats = basis(2, 2, 2);
        for m in &pats {
            for start in 1..=4 {
                for up in raised_patterns(m, start) {
                    assert!(up.is_gz());
                    assert!(lowered_patterns(&up, start).contains(m));
                }
            }
        }
    }

    #[test]
    fn violations_name_conditions() {
        let mut pat = Pattern::generator(-2, 3).unwrap();
        assert!(pat.is_valid(1));
        pat.rows[5].neg[0] = 2;
        let v = pat.violations(1).unwrap();
        assert_eq!(
            v,
            vec![Violation {
                condition: "p-bound".into(),
                row: 6,
                column: -3
            }]
        );
        pat.rows[4].neg[0] = 3;
        let v = pat.violations(2).unwrap();
        assert!(v
            .iter()
            .any(|x| x.condition == "2" && x.row == 5 && x.column == -3));
        let mut short = Pattern::vacuum(2);
        short.rows.pop();
        assert!(short.violations(1).is_err());
    }
}
