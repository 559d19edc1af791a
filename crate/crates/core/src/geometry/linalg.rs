//! Exact linear algebra over big rationals, plus a fraction-free integer
//! solver used on the hot path of vertex enumeration.

use num_traits::Zero;

use crate::error::{Error, Result};

use super::Rational;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row. Only the first `ncols` columns are pivoted on,
/// so an augmented right-hand side can ride along as a trailing column.
pub fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            let (pivot_row, row) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for (x, p) in row.iter_mut().zip(pivot_row) {
                *x -= &factor * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Unique solution of the square system `a x = b` by exact Gauss-Jordan
/// elimination, or `None` when `a` is singular.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected a square {n}x{n} system with {n} right-hand sides"
        )));
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
        .collect();
    if rref(&mut m, n).len() < n {
        return Ok(None);
    }
    Ok(Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect()))
}

/// Fraction-free (Bareiss) solve of a square integer system. Returns
/// `Some(None)` when singular, `Some(Some((num, den)))` with
/// `x_i = num_i / den`, or `None` if an intermediate overflowed `i128`.
pub(crate) fn bareiss_solve(a: &[Vec<i128>], b: &[i128]) -> Option<Option<(Vec<i128>, i128)>> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| row.iter().copied().chain(std::iter::once(rhs)).collect())
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return Some(None);
        };
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = t / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    if n == 0 {
        return Some(Some((Vec::new(), 1)));
    }
    let den = m[n - 1][n - 1];
    let mut num = vec![0i128; n];
    for i in (0..n).rev() {
        let mut acc = den.checked_mul(m[i][n])?;
        for j in i + 1..n {
            acc = acc.checked_sub(m[i][j].checked_mul(num[j])?)?;
        }
        debug_assert_eq!(acc % m[i][i], 0);
        num[i] = acc / m[i][i];
    }
    Some(Some((num, den)))
}
