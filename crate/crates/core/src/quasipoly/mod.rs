//! Quasipolynomials with exact rational constituents: evaluation, the first
//! difference operator, fitting from integer samples, minimum quasiperiods,
//! and the closed forms for the `G_n` family.
//!
//! Constituent `r` (for `0 <= r < period`) is the polynomial used at every
//! `t` with `t mod period == r`, taking the nonnegative residue, so
//! evaluation is defined on all of `Z`.

mod ehrhart;
pub(crate) mod poly;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::Rational;

pub use ehrhart::{ehrhart_analysis, ehrhart_of_polytope, sample_counts, EhrhartAnalysis};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quasipolynomial {
    period: usize,
    /// Coefficients in increasing degree, trailing zeros trimmed.
    constituents: Vec<Vec<Rational>>,
}

impl Quasipolynomial {
    pub fn new(period: usize, constituents: Vec<Vec<Rational>>) -> Result<Self> {
        if period == 0 {
            return Err(Error::OutOfRange("quasipolynomial period must be positive".into()));
        }
        if constituents.len() != period {
            return Err(Error::DimensionMismatch(format!(
                "period {period} needs {period} constituents, got {}",
                constituents.len()
            )));
        }
        Ok(Quasipolynomial {
            period,
            constituents: constituents.into_iter().map(poly::trim).collect(),
        })
    }

    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        Quasipolynomial {
            period: 1,
            constituents: vec![poly::trim(coeffs)],
        }
    }

    /// Polynomial with integer coefficients, lowest degree first.
    pub fn from_integer_coeffs(coeffs: &[i64]) -> Self {
        Self::polynomial(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn constituents(&self) -> &[Vec<Rational>] {
        &self.constituents
    }

    pub fn constituent(&self, r: usize) -> &[Rational] {
        &self.constituents[r]
    }

    pub fn is_zero(&self) -> bool {
        self.constituents.iter().all(Vec::is_empty)
    }

    /// Largest constituent degree; `None` for the zero quasipolynomial.
    pub fn degree(&self) -> Option<usize> {
        self.constituents
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| c.len() - 1)
            .max()
    }

    /// Coefficient of `t^i` in constituent `r`.
    pub fn coefficient(&self, i: usize, r: usize) -> Rational {
        self.constituents[r].get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: i64) -> Rational {
        let r = t.rem_euclid(self.period as i64) as usize;
        poly::eval(&self.constituents[r], &Rational::from_integer(t.into()))
    }

    /// `Delta F(t) = F(t + 1) - F(t)`, normalized to its minimum quasiperiod.
    pub fn difference(&self) -> Quasipolynomial {
        let s = self.period;
        let constituents = (0..s)
            .map(|r| {
                let next = poly::shift_by_one(&self.constituents[(r + 1) % s]);
                poly::sub(&next, &self.constituents[r])
            })
            .collect();
        Quasipolynomial {
            period: s,
            constituents,
        }
        .minimized()
    }

    /// Least divisor `p` of the period with `phi_r == phi_{r mod p}` for
    /// every residue `r`.
    pub fn minimum_quasiperiod(&self) -> usize {
        least_period(self.period, |a, b| self.constituents[a] == self.constituents[b])
    }

    /// The same function stored with its minimum quasiperiod.
    pub fn minimized(&self) -> Quasipolynomial {
        let p = self.minimum_quasiperiod();
        Quasipolynomial {
            period: p,
            constituents: self.constituents[..p].to_vec(),
        }
    }

    /// Minimum period of each coefficient function `c_i(t)`, `i = 0..=degree`.
    pub fn coefficient_periods(&self) -> Vec<usize> {
        let Some(d) = self.degree() else {
            return vec![1];
        };
        (0..=d)
            .map(|i| least_period(self.period, |a, b| self.coefficient(i, a) == self.coefficient(i, b)))
            .collect()
    }
}

/// Least divisor `p` of `s` such that residue `r` agrees with `r mod p` for
/// all `r`.
fn least_period(s: usize, same: impl Fn(usize, usize) -> bool) -> usize {
    (1..=s)
        .filter(|p| s % p == 0)
        .find(|&p| (p..s).all(|r| same(r, r % p)))
        .unwrap_or(s)
}

impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, c) in self.constituents.iter().enumerate() {
            if self.period > 1 {
                if r > 0 {
                    f.write_str("; ")?;
                }
                write!(f, "[t = {r} mod {}] ", self.period)?;
            }
            f.write_str(&format_poly(c))?;
        }
        Ok(())
    }
}

fn format_poly(c: &[Rational]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            let coef = if x.is_one() && i > 0 {
                String::new()
            } else if (-x.clone()).is_one() && i > 0 {
                "-".to_string()
            } else if x.is_integer() {
                x.to_string()
            } else {
                format!("({x})")
            };
            match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

/// Counts `(k, value)` for `k = 0, 1, 2, ...` without gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSeries {
    values: Vec<BigInt>,
}

impl SampleSeries {
    pub fn new(values: Vec<BigInt>) -> Self {
        SampleSeries { values }
    }

    pub fn from_counts(counts: &[BigUint]) -> Self {
        SampleSeries {
            values: counts.iter().cloned().map(BigInt::from).collect(),
        }
    }

    pub fn from_fn(len: usize, f: impl Fn(u64) -> BigInt) -> Self {
        SampleSeries {
            values: (0..len as u64).map(f).collect(),
        }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(k, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.values.iter().enumerate().map(|(k, v)| (k as u64, v))
    }
}

/// Interpolates each residue class through its first `degree + 1` samples
/// and checks the result against every remaining sample.
pub fn fit_quasipolynomial(samples: &SampleSeries, period: usize, degree: usize) -> Result<Quasipolynomial> {
    if period == 0 {
        return Err(Error::OutOfRange("period must be positive".into()));
    }
    let needed = period * (degree + 2);
    if samples.len() < needed {
        return Err(Error::NotEnoughSamples {
            needed,
            have: samples.len(),
        });
    }
    let to_q = |x: &BigInt| Rational::from_integer(x.clone());
    let constituents: Vec<Vec<Rational>> = (0..period)
        .map(|r| {
            let ks: Vec<usize> = (0..=degree).map(|j| r + j * period).collect();
            let xs: Vec<Rational> = ks.iter().map(|&k| Rational::from_integer(k.into())).collect();
            let ys: Vec<Rational> = ks.iter().map(|&k| to_q(&samples.values[k])).collect();
            poly::interpolate(&xs, &ys)
        })
        .collect();
    let q = Quasipolynomial {
        period,
        constituents,
    };
    for (k, v) in samples.iter() {
        if q.eval(k as i64) != to_q(v) {
            return Err(Error::FitValidation {
                period,
                degree,
                k: k as usize,
            });
        }
    }
    Ok(q.minimized())
}

/// `C(j, m)` for `j >= 0`; zero when `j < m`.
pub fn binomial(j: i64, m: u64) -> Result<BigInt> {
    if j < 0 {
        return Err(Error::OutOfRange(format!(
            "binomial(j, m) is only defined here for j >= 0, got j = {j}"
        )));
    }
    let j = j as u64;
    if m > j {
        return Ok(BigInt::zero());
    }
    let m = m.min(j - m);
    let mut acc = BigInt::one();
    for i in 0..m {
        acc = acc * BigInt::from(j - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

/// Sum of `C(j, m)` over `j` in `[0, t]` with `j == t (mod n)`.
fn residue_binomial_sum(n: u64, m: u64, t: u64) -> BigInt {
    let mut j = t % n;
    let mut acc = BigInt::zero();
    while j <= t {
        acc += binomial(j as i64, m).expect("j >= 0");
        j += n;
    }
    acc
}

/// `F_n(k)`: sum of `C(j, n)` over `j` in `[0, k]` with `j == k (mod n)`.
pub fn f_n(n: u64, k: u64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::OutOfRange("F_n needs n >= 1".into()));
    }
    Ok(residue_binomial_sum(n, n, k))
}

/// `M_n(k) = C(k + n, n) + F_{n-1}(k)`, the number of magic `k`-labelings of
/// `G_n`.
pub fn closed_form_mn(n: u64, k: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::OutOfRange("M_n needs n >= 2".into()));
    }
    Ok(binomial((k + n) as i64, n)? + f_n(n - 1, k)?)
}

/// `Delta^i F_n(t)` evaluated directly as the sum of `C(j, n - i)` over
/// `j` in `[0, t]`, `j == t (mod n)`.
pub fn iterated_difference_of_fn(n: u64, i: u64, t: u64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::OutOfRange("F_n needs n >= 1".into()));
    }
    if i > n {
        return Err(Error::OutOfRange(format!("difference order {i} exceeds n = {n}")));
    }
    Ok(residue_binomial_sum(n, n - i, t))
}

/// Samples of `F_n` for `k = 0..n (n + 3)`, enough to fit its degree `n + 1`
/// quasipolynomial with period `n`.
pub fn fit_f_n(n: u64) -> Result<Quasipolynomial> {
    let period = n as usize;
    let degree = n as usize + 1;
    let samples = SampleSeries::from_fn(period * (degree + 2), |k| f_n(n, k).expect("n >= 1"));
    fit_quasipolynomial(&samples, period, degree)
}

/// `true` iff every coefficient except possibly the degree-0 one is the same
/// across constituents.
pub fn only_constant_term_varies(q: &Quasipolynomial) -> bool {
    q.coefficient_periods().iter().skip(1).all(|&p| p == 1)
}

/// Exact `floor(t / n) + 1` for any integer `t`.
pub fn floor_div_plus_one(t: i64, n: i64) -> Rational {
    Rational::from_integer(BigInt::from(t.div_euclid(n) + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn g4_reference() -> Quasipolynomial {
        let head = [q(2, 1), q(25, 18), q(4, 9), q(1, 18)];
        let with_constant = |c: Rational| {
            std::iter::once(c).chain(head.iter().cloned()).collect::<Vec<_>>()
        };
        Quasipolynomial::new(
            3,
            vec![with_constant(q(1, 1)), with_constant(q(10, 9)), with_constant(q(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let one = Quasipolynomial::constant(q(1, 1));
        for t in -5..5 {
            assert_eq!(one.eval(t), q(1, 1));
        }
        let g4 = g4_reference();
        assert_eq!(g4.eval(3), q(36, 1));
        assert_eq!(g4.eval(4), q(74, 1));
    }

    #[test]
    fn negative_arguments_use_nonnegative_residue() {
        let g4 = g4_reference();
        // -2 == 1 (mod 3)
        let t = q(-2, 1);
        let expect = poly::eval(g4.constituent(1), &t);
        assert_eq!(g4.eval(-2), expect);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(binomial(0, 3).unwrap(), BigInt::from(0));
        assert_eq!(binomial(7, 4).unwrap(), BigInt::from(35));
        assert!(binomial(-1, 2).is_err());
    }

    #[test]
    fn f_n_values() {
        assert_eq!(f_n(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(f_n(1, 4).unwrap(), BigInt::from(10));
        for n in 1..6u64 {
            for k in 0..n {
                assert!(f_n(n, k).unwrap().is_zero());
            }
        }
        assert!(f_n(0, 3).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_mn(4, 3).unwrap(), BigInt::from(36));
        for k in 0..=10u64 {
            assert_eq!(closed_form_mn(2, k).unwrap(), BigInt::from((k + 1) * (k + 1)));
        }
        for n in 2..7 {
            assert_eq!(closed_form_mn(n, 0).unwrap(), BigInt::from(1));
        }
        assert!(closed_form_mn(1, 3).is_err());
    }

    #[test]
    fn iterated_difference_values() {
        for k in 0..=20 {
            assert_eq!(iterated_difference_of_fn(3, 0, k).unwrap(), f_n(3, k).unwrap());
        }
        assert_eq!(iterated_difference_of_fn(3, 3, 7).unwrap(), BigInt::from(3));
        assert_eq!(iterated_difference_of_fn(2, 1, 5).unwrap(), BigInt::from(9));
        assert!(iterated_difference_of_fn(2, 3, 5).is_err());
    }

    #[test]
    fn difference_examples() {
        let sq = Quasipolynomial::from_integer_coeffs(&[0, 0, 1]);
        assert_eq!(sq.difference(), Quasipolynomial::from_integer_coeffs(&[1, 2]));
        let c = Quasipolynomial::from_integer_coeffs(&[7]);
        assert!(c.difference().is_zero());
        let f3 = fit_f_n(3).unwrap();
        let d3 = f3.difference().difference().difference();
        for t in -20..=50 {
            assert_eq!(d3.eval(t), floor_div_plus_one(t, 3), "t = {t}");
        }
    }

    #[test]
    fn fit_square() {
        let s = SampleSeries::from_fn(4, |k| BigInt::from((k + 1) * (k + 1)));
        let f = fit_quasipolynomial(&s, 1, 2).unwrap();
        assert_eq!(f, Quasipolynomial::from_integer_coeffs(&[1, 2, 1]));
    }

    #[test]
    fn fit_detects_wrong_degree_and_short_input() {
        let s = SampleSeries::from_fn(10, |k| BigInt::from(k * k * k));
        assert!(matches!(fit_quasipolynomial(&s, 1, 2), Err(Error::FitValidation { .. })));
        assert!(matches!(fit_quasipolynomial(&s, 3, 3), Err(Error::NotEnoughSamples { needed: 15, have: 10 })));
    }

    #[test]
    fn fit_f2_and_difference_oracle() {
        let f2 = fit_f_n(2).unwrap();
        assert_eq!(f2.period(), 2);
        let dd = f2.difference().difference();
        for t in 0..40 {
            assert_eq!(dd.eval(t), Rational::from_integer(iterated_difference_of_fn(2, 2, t as u64).unwrap()));
            assert_eq!(dd.eval(t), floor_div_plus_one(t, 2));
        }
    }

    #[test]
    fn minimum_quasiperiods() {
        assert_eq!(Quasipolynomial::from_integer_coeffs(&[1, 2, 1]).minimum_quasiperiod(), 1);
        assert_eq!(g4_reference().minimum_quasiperiod(), 3);
        for n in 1..=6 {
            assert_eq!(fit_f_n(n).unwrap().minimum_quasiperiod(), n as usize);
        }
        // A period-6 representation of a period-2 function collapses.
        let alt = Quasipolynomial::new(6, (0..6).map(|r| vec![q(r % 2, 1)]).collect()).unwrap();
        assert_eq!(alt.minimum_quasiperiod(), 2);
        assert_eq!(alt.minimized().period(), 2);
    }

    #[test]
    fn coefficient_structure() {
        assert_eq!(g4_reference().coefficient_periods(), vec![3, 1, 1, 1, 1]);
        assert!(only_constant_term_varies(&g4_reference()));
    }

    #[test]
    fn display() {
        assert_eq!(Quasipolynomial::from_integer_coeffs(&[1, 2, 1]).to_string(), "t^2 + 2t + 1");
        assert_eq!(Quasipolynomial::from_integer_coeffs(&[0, -1]).to_string(), "-t");
        assert_eq!(Quasipolynomial::polynomial(vec![]).to_string(), "0");
    }
}
