//! The polytopes `P_G` (real magic labelings with labels in `[0, 1]`) and
//! `Q_G` (nonnegative real labelings with every vertex sum equal to 1):
//! H-descriptions, vertex enumeration, denominators and dimensions.
//!
//! Everything here is exact; there is no floating point in this module.
//!
//! Vertices are found with the active-set method. The equality system is
//! solved once for a rational parametrization `x = x0 + N y` of its affine
//! hull, so every inequality becomes an integer constraint `a . y >= b` on the
//! `d` free parameters. Each `d`-subset of inequalities is then made tight
//! and solved fraction-free; feasible unique solutions are exactly the
//! vertices.

pub mod linalg;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use linalg::{rank, rref, solve_rational};

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolytopeKind {
    /// Magic labelings with labels in `[0, 1]`.
    P,
    /// Nonnegative labelings with every vertex sum equal to 1.
    Q,
}

impl fmt::Display for PolytopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolytopeKind::P => "P",
            PolytopeKind::Q => "Q",
        })
    }
}

impl std::str::FromStr for PolytopeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(PolytopeKind::P),
            "Q" | "q" => Ok(PolytopeKind::Q),
            other => Err(Error::Parse(format!("polytope must be P or Q, got `{other}`"))),
        }
    }
}

/// Exact rational point indexed by edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn from_integers(xs: &[i64]) -> Self {
        RationalPoint(xs.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// Least `d >= 1` with `d * self` integral.
    pub fn denominator(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
            .to_biguint()
            .expect("denominators are positive")
    }

    /// `d * self` as integers, for `d` a multiple of the denominator.
    pub fn scaled_to_integers(&self, d: &BigUint) -> Option<Vec<BigInt>> {
        let d = Rational::from_integer(BigInt::from(d.clone()));
        self.0
            .iter()
            .map(|x| {
                let y = x * &d;
                y.is_integer().then(|| y.to_integer())
            })
            .collect()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// `point_denominator`: lcm of the coordinate denominators.
pub fn point_denominator(pt: &RationalPoint) -> BigUint {
    pt.denominator()
}

/// H-description: `equalities . x = rhs`, `x >= 0`, and `x <= 1` when
/// `upper_bound` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeDescription {
    pub kind: PolytopeKind,
    pub columns: usize,
    pub equalities: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub upper_bound: bool,
}

impl PolytopeDescription {
    /// Whether `x` satisfies every equality and bound.
    pub fn contains(&self, x: &RationalPoint) -> bool {
        if x.0.len() != self.columns {
            return false;
        }
        let one = Rational::one();
        let bounds = x.0.iter().all(|v| !v.is_negative() && (!self.upper_bound || *v <= one));
        bounds
            && self
                .equalities
                .iter()
                .zip(&self.rhs)
                .all(|(row, b)| dot(row, &x.0) == *b)
    }

    /// Rank of the constraints tight at `x` (equalities always count). A
    /// feasible point is a vertex exactly when this equals the column count.
    pub fn active_rank(&self, x: &RationalPoint) -> usize {
        let mut rows = self.equalities.clone();
        let one = Rational::one();
        for (e, v) in x.0.iter().enumerate() {
            if v.is_zero() || (self.upper_bound && *v == one) {
                rows.push(unit(self.columns, e));
            }
        }
        rank(&rows)
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n];
    row[i] = Rational::one();
    row
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Equality rows `s(v_i) - s(v_1) = 0` (`P`) or `s(v) = 1` (`Q`). Loops count
/// once in a vertex sum.
pub fn magic_constraints(g: &Graph, kind: PolytopeKind) -> PolytopeDescription {
    let m = g.edge_count();
    let incidence = |v: usize| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); m];
        for &e in g.incident_edges(v) {
            row[e] = Rational::one();
        }
        row
    };
    let (equalities, rhs): (Vec<_>, Vec<_>) = match kind {
        PolytopeKind::P => {
            let base = if g.vertex_count() > 0 { incidence(0) } else { Vec::new() };
            (1..g.vertex_count())
                .map(|v| {
                    let row: Vec<Rational> = incidence(v).iter().zip(&base).map(|(a, b)| a - b).collect();
                    (row, Rational::zero())
                })
                .unzip()
        }
        PolytopeKind::Q => (0..g.vertex_count()).map(|v| (incidence(v), Rational::one())).unzip(),
    };
    PolytopeDescription {
        kind,
        columns: m,
        equalities,
        rhs,
        upper_bound: kind == PolytopeKind::P,
    }
}

/// Affine hull of the equality system as `x = origin + basis . y`.
struct Parametrization {
    origin: Vec<Rational>,
    /// `columns x free` matrix.
    basis: Vec<Vec<Rational>>,
    free: usize,
}

fn parametrize(desc: &PolytopeDescription) -> Option<Parametrization> {
    let n = desc.columns;
    let mut aug: Vec<Vec<Rational>> = desc
        .equalities
        .iter()
        .zip(&desc.rhs)
        .map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let pivots = rref(&mut aug, n);
    if aug[pivots.len()..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut origin = vec![Rational::zero(); n];
    let mut basis = vec![vec![Rational::zero(); free_cols.len()]; n];
    for (r, &pc) in pivots.iter().enumerate() {
        origin[pc] = aug[r][n].clone();
        for (j, &fc) in free_cols.iter().enumerate() {
            basis[pc][j] = -aug[r][fc].clone();
        }
    }
    for (j, &fc) in free_cols.iter().enumerate() {
        basis[fc][j] = Rational::one();
    }
    Some(Parametrization {
        origin,
        basis,
        free: free_cols.len(),
    })
}

/// Integer inequality `coeffs . y >= bound` on the free parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Halfspace {
    coeffs: Vec<i128>,
    bound: i128,
}

/// Clears denominators of `coeffs . y >= bound` with a positive multiplier.
fn integer_halfspace(coeffs: &[Rational], bound: &Rational) -> Result<Halfspace> {
    let l = coeffs
        .iter()
        .chain(std::iter::once(bound))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let to_i128 = |x: &Rational| -> Result<i128> {
        (x * Rational::from_integer(l.clone()))
            .to_integer()
            .to_i128()
            .ok_or_else(|| Error::Consistency("constraint coefficient exceeds 128 bits".into()))
    };
    let mut h = Halfspace {
        coeffs: coeffs.iter().map(to_i128).collect::<Result<_>>()?,
        bound: to_i128(bound)?,
    };
    let g = h.coeffs.iter().fold(h.bound.abs(), |acc, &c| acc.gcd(&c.abs()));
    if g > 1 {
        h.coeffs.iter_mut().for_each(|c| *c /= g);
        h.bound /= g;
    }
    Ok(h)
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// All vertices of `P_G` or `Q_G`, deduplicated and sorted.
pub fn polytope_vertices(g: &Graph, kind: PolytopeKind, budget: &Budget) -> Result<Vec<RationalPoint>> {
    let desc = magic_constraints(g, kind);
    vertices_of(&desc, budget)
}

pub fn vertices_of(desc: &PolytopeDescription, budget: &Budget) -> Result<Vec<RationalPoint>> {
    let Some(param) = parametrize(desc) else {
        return Ok(Vec::new());
    };
    let d = param.free;

    // x_e >= 0 and, for P, -x_e >= -1, written over y.
    let mut halfspaces = BTreeSet::new();
    for e in 0..desc.columns {
        let row = &param.basis[e];
        let lower = integer_halfspace(row, &-param.origin[e].clone())?;
        let mut rows = vec![lower];
        if desc.upper_bound {
            let neg: Vec<Rational> = row.iter().map(|x| -x.clone()).collect();
            rows.push(integer_halfspace(&neg, &(param.origin[e].clone() - Rational::one()))?);
        }
        for h in rows {
            if h.coeffs.iter().all(|&c| c == 0) {
                if h.bound > 0 {
                    return Ok(Vec::new());
                }
            } else {
                halfspaces.insert(h);
            }
        }
    }
    let halfspaces: Vec<Halfspace> = halfspaces.into_iter().collect();

    let combos = binomial_u128(halfspaces.len(), d);
    if combos > budget.vertex_subsets as u128 {
        return Err(Error::BudgetExceeded {
            what: "vertex enumeration",
            required: format!("{combos} active-set combinations"),
            budget: budget.vertex_subsets,
        });
    }

    let found: BTreeSet<Vec<Rational>> = if d == 0 {
        let mut s = BTreeSet::new();
        if halfspaces.iter().all(|h| h.bound <= 0) {
            s.insert(Vec::new());
        }
        s
    } else {
        let m = halfspaces.len();
        (0..m)
            .into_par_iter()
            .map(|first| {
                let mut local = BTreeSet::new();
                let mut idx: Vec<usize> = Vec::with_capacity(d);
                idx.push(first);
                solve_combinations(&halfspaces, d, &mut idx, &mut local)?;
                Ok(local)
            })
            .try_reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                Ok(a)
            })?
    };

    let mut points: BTreeSet<RationalPoint> = BTreeSet::new();
    for y in found {
        let x: Vec<Rational> = (0..desc.columns)
            .map(|e| &param.origin[e] + dot(&param.basis[e], &y))
            .collect();
        points.insert(RationalPoint(x));
    }
    Ok(points.into_iter().collect())
}

fn solve_combinations(
    hs: &[Halfspace],
    d: usize,
    idx: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<Rational>>,
) -> Result<()> {
    if idx.len() == d {
        if let Some(y) = tight_solution(hs, idx)? {
            out.insert(y);
        }
        return Ok(());
    }
    let start = idx.last().map_or(0, |&i| i + 1);
    let remaining = d - idx.len();
    for i in start..=hs.len().saturating_sub(remaining) {
        if i >= hs.len() {
            break;
        }
        idx.push(i);
        solve_combinations(hs, d, idx, out)?;
        idx.pop();
    }
    Ok(())
}

/// Solves the chosen halfspaces as equalities; returns the solution if it is
/// unique and satisfies every halfspace.
fn tight_solution(hs: &[Halfspace], idx: &[usize]) -> Result<Option<Vec<Rational>>> {
    let a: Vec<Vec<i128>> = idx.iter().map(|&i| hs[i].coeffs.clone()).collect();
    let b: Vec<i128> = idx.iter().map(|&i| hs[i].bound).collect();
    if let Some(solved) = linalg::bareiss_solve(&a, &b) {
        let Some((num, den)) = solved else {
            return Ok(None);
        };
        if let Some(feasible) = feasible_i128(hs, &num, den) {
            if !feasible {
                return Ok(None);
            }
            let den = BigInt::from(den);
            return Ok(Some(
                num.iter()
                    .map(|&x| Rational::new(BigInt::from(x), den.clone()))
                    .collect(),
            ));
        }
    }
    // Overflow: redo exactly in big rationals.
    let to_q = |x: i128| Rational::from_integer(BigInt::from(x));
    let aq: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&x| to_q(x)).collect()).collect();
    let bq: Vec<Rational> = b.iter().map(|&x| to_q(x)).collect();
    let Some(y) = solve_rational(&aq, &bq)? else {
        return Ok(None);
    };
    let ok = hs.iter().all(|h| {
        let lhs = h.coeffs.iter().zip(&y).fold(Rational::zero(), |acc, (&c, v)| acc + to_q(c) * v);
        lhs >= to_q(h.bound)
    });
    Ok(ok.then_some(y))
}

/// `None` on overflow.
fn feasible_i128(hs: &[Halfspace], num: &[i128], den: i128) -> Option<bool> {
    for h in hs {
        let mut lhs = 0i128;
        for (&c, &y) in h.coeffs.iter().zip(num) {
            lhs = lhs.checked_add(c.checked_mul(y)?)?;
        }
        let rhs = h.bound.checked_mul(den)?;
        let ok = if den > 0 { lhs >= rhs } else { lhs <= rhs };
        if !ok {
            return Some(false);
        }
    }
    Some(true)
}

/// `den(P)`: lcm of the vertex denominators.
pub fn polytope_denominator(g: &Graph, kind: PolytopeKind, budget: &Budget) -> Result<BigUint> {
    let vertices = polytope_vertices(g, kind, budget)?;
    denominator_of(&vertices)
}

pub fn denominator_of(vertices: &[RationalPoint]) -> Result<BigUint> {
    if vertices.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    Ok(vertices
        .iter()
        .fold(BigUint::one(), |acc, v| acc.lcm(&v.denominator())))
}

/// Dimension of the affine hull of the vertices; -1 when empty.
pub fn polytope_dimension(g: &Graph, kind: PolytopeKind, budget: &Budget) -> Result<i64> {
    Ok(dimension_of(&polytope_vertices(g, kind, budget)?))
}

pub fn dimension_of(vertices: &[RationalPoint]) -> i64 {
    let Some(first) = vertices.first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rational>> = vertices[1..]
        .iter()
        .map(|v| v.0.iter().zip(&first.0).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs) as i64
}

/// Everything the Ehrhart pipeline needs from the geometry, computed from a
/// single vertex enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeSummary {
    pub kind: PolytopeKind,
    pub vertices: Vec<RationalPoint>,
    pub denominator: BigUint,
    pub dimension: i64,
}

pub fn summarize(g: &Graph, kind: PolytopeKind, budget: &Budget) -> Result<PolytopeSummary> {
    let vertices = polytope_vertices(g, kind, budget)?;
    let denominator = denominator_of(&vertices)?;
    let dimension = dimension_of(&vertices);
    Ok(PolytopeSummary {
        kind,
        vertices,
        denominator,
        dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, make_gn, path, two_loops};
    use crate::labeling::{li_matching, lstar, Labeling};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn verts(g: &Graph, kind: PolytopeKind) -> Vec<RationalPoint> {
        polytope_vertices(g, kind, &Budget::default()).unwrap()
    }

    #[test]
    fn constraint_shapes() {
        let tl = two_loops();
        let p = magic_constraints(&tl, PolytopeKind::P);
        assert!(p.equalities.is_empty());
        assert!(p.upper_bound);
        let qd = magic_constraints(&tl, PolytopeKind::Q);
        assert_eq!(qd.equalities, vec![vec![q(1, 1), q(1, 1)]]);
        assert_eq!(qd.rhs, vec![q(1, 1)]);
        assert!(!qd.upper_bound);
        let g2 = magic_constraints(&make_gn(2).unwrap(), PolytopeKind::P);
        assert_eq!(g2.equalities.len(), 5);
        assert!(g2.equalities.iter().all(|r| r.len() == 6));
    }

    #[test]
    fn two_loop_vertices() {
        let tl = two_loops();
        let square: Vec<RationalPoint> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|p| RationalPoint::from_integers(p))
            .collect();
        assert_eq!(verts(&tl, PolytopeKind::P), square);
        let segment: Vec<RationalPoint> =
            [[0, 1], [1, 0]].iter().map(|p| RationalPoint::from_integers(p)).collect();
        assert_eq!(verts(&tl, PolytopeKind::Q), segment);
    }

    #[test]
    fn gn_vertices() {
        for n in 2..=4usize {
            let g = make_gn(n).unwrap();
            let got = verts(&g, PolytopeKind::P);
            let to_point = |l: &Labeling, d: i64| {
                RationalPoint(l.labels().iter().map(|&x| q(x as i64, d)).collect())
            };
            let mut want: BTreeSet<RationalPoint> = BTreeSet::new();
            want.insert(to_point(&Labeling::zero(&g), 1));
            for i in 1..=n {
                want.insert(to_point(&li_matching(n, i).unwrap(), 1));
            }
            want.insert(to_point(&lstar(n).unwrap(), n as i64 - 1));
            assert_eq!(got, want.into_iter().collect::<Vec<_>>(), "G_{n}");
            assert_eq!(denominator_of(&got).unwrap(), BigUint::from(n - 1));
        }
    }

    #[test]
    fn denominators() {
        assert_eq!(point_denominator(&RationalPoint::from_integers(&[1, 0, 2])), BigUint::one());
        assert_eq!(point_denominator(&RationalPoint(vec![q(1, 3); 12])), BigUint::from(3u32));
        assert_eq!(point_denominator(&RationalPoint(vec![q(1, 2), q(1, 3)])), BigUint::from(6u32));
        let g3 = make_gn(3).unwrap();
        assert_eq!(polytope_denominator(&g3, PolytopeKind::Q, &Budget::default()).unwrap(), BigUint::one());
        assert_eq!(polytope_denominator(&cycle(3), PolytopeKind::Q, &Budget::default()).unwrap(), BigUint::from(2u32));
        assert_eq!(
            polytope_denominator(&path(3), PolytopeKind::Q, &Budget::default()).unwrap_err(),
            Error::EmptyPolytope
        );
    }

    #[test]
    fn dimensions() {
        let b = Budget::default();
        let tl = two_loops();
        assert_eq!(polytope_dimension(&tl, PolytopeKind::P, &b).unwrap(), 2);
        assert_eq!(polytope_dimension(&tl, PolytopeKind::Q, &b).unwrap(), 1);
        for n in 2..=4 {
            assert_eq!(polytope_dimension(&make_gn(n).unwrap(), PolytopeKind::P, &b).unwrap(), n as i64);
        }
        assert_eq!(polytope_dimension(&path(3), PolytopeKind::P, &b).unwrap(), 0);
        assert_eq!(polytope_dimension(&path(3), PolytopeKind::Q, &b).unwrap(), -1);
    }

    #[test]
    fn empty_graph_is_a_point() {
        let g = Graph::new(Vec::<&str>::new(), Vec::<(&str, &str)>::new()).unwrap();
        let v = verts(&g, PolytopeKind::P);
        assert_eq!(v, vec![RationalPoint(Vec::new())]);
        assert_eq!(dimension_of(&v), 0);
        assert_eq!(denominator_of(&v).unwrap(), BigUint::one());
    }

    #[test]
    fn vertex_budget_reports_requirement() {
        let tight = Budget {
            vertex_subsets: 3,
            ..Budget::default()
        };
        match polytope_vertices(&make_gn(4).unwrap(), PolytopeKind::P, &tight) {
            Err(Error::BudgetExceeded { required, budget, .. }) => {
                assert_eq!(budget, 3);
                assert!(required.contains("combinations"));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn vertices_are_feasible_vertices() {
        let graphs = [two_loops(), make_gn(3).unwrap(), cycle(5), cycle(6), path(4)];
        for g in &graphs {
            for kind in [PolytopeKind::P, PolytopeKind::Q] {
                let desc = magic_constraints(g, kind);
                for v in verts(g, kind) {
                    assert!(desc.contains(&v), "{g} {kind} {v}");
                    assert_eq!(desc.active_rank(&v), g.edge_count(), "{g} {kind} {v}");
                    let d = v.denominator();
                    let ints = v.scaled_to_integers(&d).unwrap();
                    let labels: Vec<u64> = ints.iter().map(|x| x.to_u64().unwrap()).collect();
                    assert!(Labeling::new(g, labels).unwrap().magic_index(g).is_some());
                }
            }
        }
    }
}
