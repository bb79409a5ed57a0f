//! Small exact linear algebra over the rationals.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// Some unknown is not fixed by the equations.
    Underdetermined(usize),
    /// A reduced equation reads `0 = r` with `r ≠ 0`.
    Inconsistent(BigRational),
}

/// Solves the (possibly overdetermined) system `Σ_c a[r][c]·x_c = b[r]`.
pub fn solve(
    rows: &[(Vec<BigRational>, BigRational)],
    unknowns: usize,
) -> Result<Vec<BigRational>, SolveError> {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|(lhs, rhs)| {
            let mut r = lhs.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..unknowns {
        let Some(pr) = (rank..a.len()).find(|&x| !a[x][c].is_zero()) else {
            return Err(SolveError::Underdetermined(c));
        };
        a.swap(rank, pr);
        let pv = a[rank][c].clone();
        for v in a[rank].iter_mut() {
            *v /= &pv;
        }
        let pivot_row = a[rank].clone();
        for (x, row) in a.iter_mut().enumerate() {
            if x != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        rank += 1;
    }
    if let Some(bad) = a[rank..].iter().find(|r| !r[unknowns].is_zero()) {
        return Err(SolveError::Inconsistent(bad[unknowns].clone()));
    }
    Ok(a[..unknowns].iter().map(|r| r[unknowns].clone()).collect())
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rk = 0;
    for c in 0..cols {
        let Some(pr) = (rk..a.len()).find(|&x| !a[x][c].is_zero()) else {
            continue;
        };
        a.swap(rk, pr);
        let pivot_row = a[rk].clone();
        for (x, row) in a.iter_mut().enumerate() {
            if x != rk && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        rk += 1;
    }
    rk
}

/// Exact positive-semidefiniteness test for a symmetric rational matrix by
/// symmetric elimination on diagonal pivots.
pub fn is_psd(m: &[Vec<BigRational>]) -> bool {
    let mut a = m.to_vec();
    let n = a.len();
    for c in 0..n {
        let d = a[c][c].clone();
        if d.is_negative() {
            return false;
        }
        if d.is_zero() {
            if a[c][c..].iter().any(|v| !v.is_zero()) {
                return false;
            }
            continue;
        }
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &d;
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v -= &f * p;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn overdetermined_consistent() {
        let rows = vec![
            (vec![q(1), q(1)], q(3)),
            (vec![q(1), q(-1)], q(1)),
            (vec![q(2), q(0)], q(4)),
        ];
        assert_eq!(solve(&rows, 2).unwrap(), vec![q(2), q(1)]);
        let bad = vec![(vec![q(1)], q(1)), (vec![q(1)], q(2))];
        assert!(matches!(solve(&bad, 1), Err(SolveError::Inconsistent(_))));
        let under = vec![(vec![q(1), q(1)], q(1))];
        assert_eq!(solve(&under, 2), Err(SolveError::Underdetermined(1)));
    }

    #[test]
    fn psd_and_rank() {
        assert!(is_psd(&[vec![q(2), q(1)], vec![q(1), q(2)]]));
        assert!(is_psd(&[vec![q(1), q(1)], vec![q(1), q(1)]]));
        assert!(!is_psd(&[vec![q(1), q(2)], vec![q(2), q(1)]]));
        assert!(!is_psd(&[vec![q(0), q(1)], vec![q(1), q(0)]]));
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
    }
}
