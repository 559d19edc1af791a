//! Ehrhart quasipolynomials of `P_G` and `Q_G` from exact counts.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{summarize, PolytopeKind, PolytopeSummary};
use crate::graph::Graph;
use crate::labeling::{index_count_series, magic_count_series};

use super::{fit_quasipolynomial, Quasipolynomial, SampleSeries};

#[derive(Clone, Debug)]
pub struct EhrhartAnalysis {
    pub summary: PolytopeSummary,
    /// Counts for `k = 0..den (dim + 2)`.
    pub samples: SampleSeries,
    /// Normalized to its minimum quasiperiod.
    pub quasipolynomial: Quasipolynomial,
}

impl EhrhartAnalysis {
    pub fn minimum_quasiperiod(&self) -> usize {
        self.quasipolynomial.period()
    }
}

/// `M_G(k)` for `P`, `S_G(k)` for `Q`, for `k = 0..=kmax`.
pub fn sample_counts(g: &Graph, kind: PolytopeKind, kmax: u64, budget: &Budget) -> Result<Vec<BigUint>> {
    match kind {
        PolytopeKind::P => magic_count_series(g, kmax, budget),
        PolytopeKind::Q => index_count_series(g, kmax, budget),
    }
}

/// Vertices, denominator and dimension, then `den (dim + 2)` counts fitted
/// with period `den` and degree `dim`.
pub fn ehrhart_analysis(g: &Graph, kind: PolytopeKind, budget: &Budget) -> Result<EhrhartAnalysis> {
    let summary = summarize(g, kind, budget)?;
    let period = summary
        .denominator
        .to_usize()
        .ok_or_else(|| Error::OutOfRange(format!("denominator {} too large", summary.denominator)))?;
    let degree = usize::try_from(summary.dimension).map_err(|_| Error::EmptyPolytope)?;
    let len = period * (degree + 2);
    let counts = sample_counts(g, kind, len as u64 - 1, budget)?;
    let samples = SampleSeries::from_counts(&counts);
    let quasipolynomial = fit_quasipolynomial(&samples, period, degree)?;
    Ok(EhrhartAnalysis {
        summary,
        samples,
        quasipolynomial,
    })
}

pub fn ehrhart_of_polytope(g: &Graph, kind: PolytopeKind, budget: &Budget) -> Result<Quasipolynomial> {
    Ok(ehrhart_analysis(g, kind, budget)?.quasipolynomial)
}
