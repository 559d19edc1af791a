//! Dense univariate polynomials over the rationals, coefficients in
//! increasing degree. The zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::geometry::Rational;

pub(crate) fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn eval(p: &[Rational], t: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// Coefficients of `p(t + 1)`.
pub(crate) fn shift_by_one(p: &[Rational]) -> Vec<Rational> {
    let n = p.len();
    let mut out = vec![Rational::zero(); n];
    // Pascal row by row: t^i -> sum_j C(i, j) t^j.
    let mut row: Vec<BigInt> = Vec::with_capacity(n);
    for (i, c) in p.iter().enumerate() {
        let mut next = vec![BigInt::from(1); i + 1];
        for j in 1..i {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
        for (j, b) in row.iter().enumerate() {
            out[j] += c * Rational::from_integer(b.clone());
        }
    }
    trim(out)
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// The polynomial of degree `< xs.len()` through the given points, via Newton
/// divided differences expanded into the monomial basis.
pub(crate) fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form: p = dd0 + (t - x0)(dd1 + (t - x1)(...)).
    let mut p: Vec<Rational> = Vec::new();
    for i in (0..n).rev() {
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (j, c) in p.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &xs[i];
        }
        next[0] += &dd[i];
        p = next;
    }
    trim(p)
}
