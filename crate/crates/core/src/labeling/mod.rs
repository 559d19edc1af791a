//! Integer edge labelings, magic checks, and exhaustive enumeration of the
//! lattice points of `k P_G` (magic `k`-labelings) and `k Q_G` (index
//! exactly `k`).
//!
//! A loop's label counts once toward the sum at its vertex.

pub(crate) mod search;

use std::ops::{Add, ControlFlow, Sub};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::budget::{Budget, NodeMeter};
use crate::error::{Error, Result};
use crate::graph::{make_gn, Graph};

use search::MagicSearch;

/// Nonnegative integer labels, one per edge in the graph's coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling(Vec<u64>);

impl Labeling {
    pub fn new(g: &Graph, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != g.edge_count() {
            return Err(Error::LabelCount {
                expected: g.edge_count(),
                got: labels.len(),
            });
        }
        Ok(Labeling(labels))
    }

    pub fn zero(g: &Graph) -> Self {
        Labeling(vec![0; g.edge_count()])
    }

    /// Indicator labeling of a set of edges.
    pub fn indicator(g: &Graph, edges: &[usize]) -> Self {
        let mut labels = vec![0; g.edge_count()];
        for &e in edges {
            labels[e] = 1;
        }
        Labeling(labels)
    }

    pub fn labels(&self) -> &[u64] {
        &self.0
    }

    pub fn into_labels(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Largest label; 0 for a graph without edges.
    pub fn max_label(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `s_L(v)` for the vertex named `v`.
    pub fn vertex_sum(&self, g: &Graph, v: &str) -> Result<u64> {
        let idx = g
            .vertex_index(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        Ok(self.sum_at(g, idx))
    }

    pub(crate) fn sum_at(&self, g: &Graph, v: usize) -> u64 {
        g.incident_edges(v).iter().map(|&e| self.0[e]).sum()
    }

    /// The index if the labeling is magic. A graph without vertices has
    /// index 0.
    pub fn magic_index(&self, g: &Graph) -> Option<u64> {
        if self.0.len() != g.edge_count() {
            return None;
        }
        let mut sums = (0..g.vertex_count()).map(|v| self.sum_at(g, v));
        let first = sums.next().unwrap_or(0);
        sums.all(|s| s == first).then_some(first)
    }

    pub fn scale(&self, m: u64) -> Self {
        Labeling(self.0.iter().map(|&x| x * m).collect())
    }

    /// Entrywise difference, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &Labeling) -> Option<Labeling> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Labeling)
    }

    /// Whether `self <= other` entrywise.
    pub fn dominated_by(&self, other: &Labeling) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Edges with positive labels.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&e| self.0[e] > 0).collect()
    }
}

impl Add for &Labeling {
    type Output = Labeling;

    fn add(self, rhs: &Labeling) -> Labeling {
        assert_eq!(self.0.len(), rhs.0.len(), "labelings of different graphs");
        Labeling(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Labeling {
    type Output = Labeling;

    fn sub(self, rhs: &Labeling) -> Labeling {
        self.checked_sub(rhs).expect("labeling subtraction underflow")
    }
}

/// `L_*` on `G_n`: rungs `a_i b_i` get `n - 1`, every other edge 1.
pub fn lstar(n: usize) -> Result<Labeling> {
    let g = make_gn(n)?;
    let mut labels = vec![1; g.edge_count()];
    labels[..n].fill(n as u64 - 1);
    Ok(Labeling(labels))
}

/// Indicator of the perfect matching `L_i` on `G_n`: `x a_i`, `y b_i` and
/// every rung `a_j b_j` with `j != i`.
pub fn li_matching(n: usize, i: usize) -> Result<Labeling> {
    let g = make_gn(n)?;
    if !(1..=n).contains(&i) {
        return Err(Error::OutOfRange(format!("L_i needs 1 <= i <= {n}, got {i}")));
    }
    let mut labels = vec![0; g.edge_count()];
    for j in (1..=n).filter(|&j| j != i) {
        labels[j - 1] = 1;
    }
    labels[n + i - 1] = 1;
    labels[2 * n + i - 1] = 1;
    Ok(Labeling(labels))
}

/// Every magic labeling of `g` with all labels at most `k`, ordered by index.
pub fn enumerate_magic_k(g: &Graph, k: u64) -> Vec<Labeling> {
    let search = MagicSearch::uniform(g, k);
    collect_indices(&search, 0..=search.max_index())
}

/// Number of magic `k`-labelings, `M_G(k)`.
pub fn count_magic_k(g: &Graph, k: u64) -> BigUint {
    magic_count_series_from(g, k, k, &Budget::unlimited())
        .expect("unlimited budget")
        .pop()
        .expect("one entry")
}

/// Every magic labeling of index exactly `k`.
pub fn enumerate_index_k(g: &Graph, k: u64) -> Vec<Labeling> {
    let search = MagicSearch::uniform(g, k);
    collect_indices(&search, k..=k)
}

/// Number of magic labelings of index exactly `k`, `S_G(k)`.
pub fn count_index_k(g: &Graph, k: u64) -> BigUint {
    index_count(g, k, &NodeMeter::new(u64::MAX)).expect("unlimited budget")
}

/// `[M_G(0), ..., M_G(kmax)]` from a single enumeration at `kmax`, tallying
/// each labeling under its maximum label.
pub fn magic_count_series(g: &Graph, kmax: u64, budget: &Budget) -> Result<Vec<BigUint>> {
    magic_count_series_from(g, 0, kmax, budget)
}

fn magic_count_series_from(g: &Graph, kmin: u64, kmax: u64, budget: &Budget) -> Result<Vec<BigUint>> {
    let search = MagicSearch::uniform(g, kmax);
    let meter = NodeMeter::new(budget.search_nodes);
    let width = (kmax + 1) as usize;
    let histograms = (0..=search.max_index())
        .into_par_iter()
        .map(|r| {
            let mut hist = vec![0u64; width];
            let _ = search.for_each(r, &meter, &mut |l| {
                let m = l.iter().copied().max().unwrap_or(0);
                hist[m as usize] += 1;
                ControlFlow::Continue(())
            })?;
            Ok(hist)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut by_max = vec![BigUint::default(); width];
    for hist in histograms {
        for (slot, n) in by_max.iter_mut().zip(hist) {
            *slot += n;
        }
    }
    let mut running = BigUint::default();
    let mut series = Vec::with_capacity(width);
    for (k, n) in by_max.into_iter().enumerate() {
        running += n;
        if k as u64 >= kmin {
            series.push(running.clone());
        }
    }
    Ok(series)
}

/// `[S_G(0), ..., S_G(kmax)]`.
pub fn index_count_series(g: &Graph, kmax: u64, budget: &Budget) -> Result<Vec<BigUint>> {
    let meter = NodeMeter::new(budget.search_nodes);
    (0..=kmax)
        .into_par_iter()
        .map(|k| index_count(g, k, &meter))
        .collect()
}

fn index_count(g: &Graph, k: u64, meter: &NodeMeter) -> Result<BigUint> {
    let mut n = 0u64;
    let _ = MagicSearch::uniform(g, k).for_each(k, meter, &mut |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(BigUint::from(n))
}

/// Magic labelings with per-edge upper bounds and index in `indices`.
pub fn enumerate_bounded(
    g: &Graph,
    upper: &[u64],
    indices: std::ops::RangeInclusive<u64>,
) -> Result<Vec<Labeling>> {
    if upper.len() != g.edge_count() {
        return Err(Error::LabelCount {
            expected: g.edge_count(),
            got: upper.len(),
        });
    }
    let search = MagicSearch::new(g, upper.to_vec());
    let hi = (*indices.end()).min(search.max_index());
    Ok(collect_indices(&search, *indices.start()..=hi))
}

fn collect_indices(search: &MagicSearch<'_>, indices: std::ops::RangeInclusive<u64>) -> Vec<Labeling> {
    let meter = NodeMeter::new(u64::MAX);
    let per_index: Vec<Vec<Labeling>> = indices
        .into_par_iter()
        .map(|r| {
            let mut out = Vec::new();
            let _ = search
                .for_each(r, &meter, &mut |l| {
                    out.push(Labeling(l.to_vec()));
                    ControlFlow::Continue(())
                })
                .expect("unlimited budget");
            out
        })
        .collect();
    per_index.into_iter().flatten().collect()
}
