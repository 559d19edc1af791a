//! The semigroup `Phi(P)` of pairs `(L, k)` with `L` a lattice point of
//! `k P`: completely fundamental elements, a brute-force refutation oracle,
//! decomposition over generators, and index-at-most-2 decompositions of
//! magic labelings.
//!
//! For `P_G` an element is a magic labeling `L` with `max(L) <= k`; for
//! `Q_G` it is a magic labeling of index exactly `k`.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{polytope_vertices, PolytopeKind};
use crate::graph::{forced_max_edge, ForcedMaxEdge, Graph};
use crate::labeling::{enumerate_bounded, enumerate_index_k, Labeling};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemigroupElement {
    pub labeling: Labeling,
    pub height: u64,
}

impl SemigroupElement {
    /// Checks membership in `Phi(P_G)` or `Phi(Q_G)`.
    pub fn new(g: &Graph, kind: PolytopeKind, labeling: Labeling, height: u64) -> Result<Self> {
        let elem = SemigroupElement { labeling, height };
        elem.validate(g, kind)?;
        Ok(elem)
    }

    pub fn validate(&self, g: &Graph, kind: PolytopeKind) -> Result<()> {
        if self.labeling.len() != g.edge_count() {
            return Err(Error::LabelCount {
                expected: g.edge_count(),
                got: self.labeling.len(),
            });
        }
        let index = self.labeling.magic_index(g).ok_or(Error::NotMagic)?;
        let ok = match kind {
            PolytopeKind::P => self.labeling.max_label() <= self.height,
            PolytopeKind::Q => index == self.height,
        };
        if !ok {
            return Err(Error::InvalidElement(format!(
                "labels {:?} at height {} are not in Phi({kind})",
                self.labeling.labels(),
                self.height
            )));
        }
        Ok(())
    }

    pub fn labels(&self) -> &[u64] {
        self.labeling.labels()
    }

    pub fn is_zero(&self) -> bool {
        self.height == 0 && self.labeling.is_zero()
    }

    pub fn scale(&self, m: u64) -> Self {
        SemigroupElement {
            labeling: self.labeling.scale(m),
            height: self.height * m,
        }
    }

    /// `j` with `self = j * unit`, if any.
    pub fn multiple_of(&self, unit: &SemigroupElement) -> Option<u64> {
        if unit.height == 0 {
            return None;
        }
        let j = self.height / unit.height;
        (self.height % unit.height == 0 && self.labeling == unit.labeling.scale(j)).then_some(j)
    }
}

/// `(d_v v, d_v)` for every vertex `v` of the polytope, `d_v` the least
/// common denominator of `v`.
pub fn cf_elements(g: &Graph, kind: PolytopeKind, budget: &Budget) -> Result<Vec<SemigroupElement>> {
    let vertices = polytope_vertices(g, kind, budget)?;
    let mut out = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let d = v.denominator();
        let labels = v
            .scaled_to_integers(&d)
            .expect("denominator clears every coordinate")
            .iter()
            .map(|x| x.to_u64().ok_or_else(|| Error::OutOfRange(format!("label {x} out of range"))))
            .collect::<Result<Vec<u64>>>()?;
        let height = to_u64(&d)?;
        out.push(SemigroupElement {
            labeling: Labeling::new(g, labels)?,
            height,
        });
    }
    Ok(out)
}

fn to_u64(d: &BigUint) -> Result<u64> {
    d.to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("denominator {d} out of range")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfVerdict {
    /// `b + c = m * elem` with `b` not a multiple of `elem`.
    Refuted {
        m: u64,
        b: SemigroupElement,
        c: SemigroupElement,
    },
    UnrefutedUpTo(u64),
}

impl CfVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, CfVerdict::Refuted { .. })
    }
}

/// Searches every split `b + c = m * elem` in `Phi` for `m = 1..=m_max`.
pub fn verify_completely_fundamental(
    g: &Graph,
    kind: PolytopeKind,
    elem: &SemigroupElement,
    m_max: u64,
) -> Result<CfVerdict> {
    elem.validate(g, kind)?;
    if elem.height == 0 {
        return Err(Error::InvalidElement(
            "height 0 element is the identity, never completely fundamental".into(),
        ));
    }
    if m_max == 0 {
        return Err(Error::OutOfRange("m_max must be at least 1".into()));
    }
    for m in 1..=m_max {
        let target = elem.scale(m);
        let index_of = |l: &Labeling| l.magic_index(g).expect("enumerated labelings are magic");
        let candidates = enumerate_bounded(g, target.labels(), 0..=u64::MAX)?;
        for b_lab in candidates {
            let c_lab = &target.labeling - &b_lab;
            let heights = match kind {
                PolytopeKind::P => b_lab.max_label()..=target.height.saturating_sub(c_lab.max_label()),
                PolytopeKind::Q => {
                    let h = index_of(&b_lab);
                    h..=h
                }
            };
            if c_lab.max_label() > target.height || heights.is_empty() {
                continue;
            }
            for hb in heights {
                let b = SemigroupElement {
                    labeling: b_lab.clone(),
                    height: hb,
                };
                if b.multiple_of(elem).is_none() {
                    let c = SemigroupElement {
                        labeling: c_lab,
                        height: target.height - hb,
                    };
                    return Ok(CfVerdict::Refuted { m, b, c });
                }
            }
        }
    }
    Ok(CfVerdict::UnrefutedUpTo(m_max))
}

/// Nonnegative multipliers, one per generator in the given order, whose
/// combination equals `elem`; `None` if there are none.
pub fn decompose_over_generators(
    elem: &SemigroupElement,
    generators: &[SemigroupElement],
) -> Result<Option<Vec<u64>>> {
    let width = elem.labeling.len();
    if let Some(bad) = generators.iter().find(|g| g.labeling.len() != width) {
        return Err(Error::DimensionMismatch(format!(
            "generator has {} labels, element has {width}",
            bad.labeling.len()
        )));
    }
    if generators.iter().any(SemigroupElement::is_zero) {
        return Err(Error::InvalidElement("the zero element cannot be a generator".into()));
    }
    let mut order: Vec<usize> = (0..generators.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(generators[i].height));

    let target: Vec<u64> = elem.labels().iter().copied().chain([elem.height]).collect();
    let gens: Vec<Vec<u64>> = order
        .iter()
        .map(|&i| {
            let g = &generators[i];
            g.labels().iter().copied().chain([g.height]).collect()
        })
        .collect();
    // covered[i][j]: some generator at position >= i is positive at coordinate j.
    let mut covered = vec![vec![false; width + 1]; gens.len() + 1];
    for i in (0..gens.len()).rev() {
        for j in 0..=width {
            covered[i][j] = covered[i + 1][j] || gens[i][j] > 0;
        }
    }
    let mut mult = vec![0u64; gens.len()];
    if !search_multipliers(&gens, &covered, 0, &mut target.clone(), &mut mult) {
        return Ok(None);
    }
    let mut out = vec![0u64; generators.len()];
    for (pos, &i) in order.iter().enumerate() {
        out[i] = mult[pos];
    }
    Ok(Some(out))
}

fn search_multipliers(
    gens: &[Vec<u64>],
    covered: &[Vec<bool>],
    i: usize,
    rest: &mut [u64],
    mult: &mut [u64],
) -> bool {
    if rest.iter().all(|&x| x == 0) {
        mult[i..].fill(0);
        return true;
    }
    if i == gens.len() || rest.iter().zip(&covered[i]).any(|(&x, &c)| x > 0 && !c) {
        return false;
    }
    let g = &gens[i];
    let most = g
        .iter()
        .zip(rest.iter())
        .filter(|(&gj, _)| gj > 0)
        .map(|(&gj, &r)| r / gj)
        .min()
        .unwrap_or(0);
    for c in (0..=most).rev() {
        for (r, &gj) in rest.iter_mut().zip(g) {
            *r -= c * gj;
        }
        mult[i] = c;
        if search_multipliers(gens, covered, i + 1, rest, mult) {
            return true;
        }
        for (r, &gj) in rest.iter_mut().zip(g) {
            *r += c * gj;
        }
    }
    false
}

/// Splits a magic labeling into magic pieces of index 1 or 2 (index 1 only
/// on bipartite graphs) summing to it.
pub fn stanley_decompose(g: &Graph, l: &Labeling) -> Result<Vec<Labeling>> {
    if l.len() != g.edge_count() {
        return Err(Error::LabelCount {
            expected: g.edge_count(),
            got: l.len(),
        });
    }
    l.magic_index(g).ok_or(Error::NotMagic)?;
    if l.is_zero() {
        return Ok(Vec::new());
    }
    let top = if g.is_bipartite().is_some() { 1 } else { 2 };
    let upper: Vec<u64> = l.labels().iter().map(|&x| x.min(2)).collect();
    // Index 1 first: those pieces are perfect matchings.
    let pieces = enumerate_bounded(g, &upper, 1..=top)?;
    let mut dead = HashSet::new();
    let mut out = Vec::new();
    if extract(l, &pieces, &mut dead, &mut out) {
        Ok(out)
    } else {
        Err(Error::Consistency(format!(
            "no index <= 2 decomposition of {:?}",
            l.labels()
        )))
    }
}

/// Some piece must cover the first positive edge of `rest`, so only those
/// pieces are tried; remainders known to fail are skipped.
fn extract(rest: &Labeling, pieces: &[Labeling], dead: &mut HashSet<Labeling>, out: &mut Vec<Labeling>) -> bool {
    let Some(&e) = rest.support().first() else {
        return true;
    };
    if dead.contains(rest) {
        return false;
    }
    for t in pieces.iter().filter(|t| t.labels()[e] > 0) {
        let Some(next) = rest.checked_sub(t) else {
            continue;
        };
        out.push(t.clone());
        if extract(&next, pieces, dead, out) {
            return true;
        }
        out.pop();
    }
    dead.insert(rest.clone());
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuasiperiodVerdict {
    Polynomial,
    QuasiperiodLe2,
    NoCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiperiodCertificate {
    pub verdict: QuasiperiodVerdict,
    pub bipartite: bool,
    pub forced_edge: ForcedMaxEdge,
    pub index2_labelings: usize,
}

/// Sufficient-condition certificate: an edge carrying the maximum label in
/// every index-2 magic labeling bounds the quasiperiod of `M_G` by 2, and by
/// 1 on bipartite graphs.
pub fn certify_small_quasiperiod(g: &Graph) -> QuasiperiodCertificate {
    let index2 = enumerate_index_k(g, 2);
    let forced_edge = forced_max_edge(g, &index2).expect("enumerated labelings have index 2");
    let bipartite = g.is_bipartite().is_some();
    let verdict = match (forced_edge.satisfies_hypothesis(), bipartite) {
        (false, _) => QuasiperiodVerdict::NoCertificate,
        (true, true) => QuasiperiodVerdict::Polynomial,
        (true, false) => QuasiperiodVerdict::QuasiperiodLe2,
    };
    QuasiperiodCertificate {
        verdict,
        bipartite,
        forced_edge,
        index2_labelings: index2.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bridged, complete_bipartite, cycle, make_gn, path, two_loops};
    use crate::labeling::{li_matching, lstar};

    fn el(g: &Graph, labels: &[u64], height: u64) -> SemigroupElement {
        SemigroupElement {
            labeling: Labeling::new(g, labels.to_vec()).unwrap(),
            height,
        }
    }

    fn sorted(mut v: Vec<SemigroupElement>) -> Vec<SemigroupElement> {
        v.sort();
        v
    }

    #[test]
    fn element_validation() {
        let g = make_gn(2).unwrap();
        assert!(SemigroupElement::new(&g, PolytopeKind::P, lstar(2).unwrap(), 1).is_ok());
        assert!(SemigroupElement::new(&g, PolytopeKind::Q, lstar(2).unwrap(), 1).is_err());
        assert!(SemigroupElement::new(&g, PolytopeKind::Q, lstar(2).unwrap(), 2).is_ok());
        let not_magic = Labeling::new(&g, vec![1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(
            SemigroupElement::new(&g, PolytopeKind::P, not_magic, 1),
            Err(Error::NotMagic)
        );
    }

    #[test]
    fn two_loop_cf_elements() {
        let g = two_loops();
        let p = sorted(cf_elements(&g, PolytopeKind::P, &Budget::default()).unwrap());
        let want = sorted(vec![el(&g, &[0, 0], 1), el(&g, &[0, 1], 1), el(&g, &[1, 0], 1), el(&g, &[1, 1], 1)]);
        assert_eq!(p, want);
        let q = sorted(cf_elements(&g, PolytopeKind::Q, &Budget::default()).unwrap());
        assert_eq!(q, sorted(vec![el(&g, &[0, 1], 1), el(&g, &[1, 0], 1)]));
    }

    #[test]
    fn gn_cf_elements() {
        for n in 2..=4 {
            let g = make_gn(n).unwrap();
            let got = sorted(cf_elements(&g, PolytopeKind::P, &Budget::default()).unwrap());
            let mut want = vec![SemigroupElement {
                labeling: Labeling::zero(&g),
                height: 1,
            }];
            for i in 1..=n {
                want.push(SemigroupElement {
                    labeling: li_matching(n, i).unwrap(),
                    height: 1,
                });
            }
            if n > 2 {
                want.push(SemigroupElement {
                    labeling: lstar(n).unwrap(),
                    height: n as u64 - 1,
                });
            } else {
                // L_* / (n - 1) = L_* is the all-ones point, a vertex in its own right.
                want.push(SemigroupElement {
                    labeling: lstar(2).unwrap(),
                    height: 1,
                });
            }
            assert_eq!(got, sorted(want), "n = {n}");
        }
        let g3 = make_gn(3).unwrap();
        let q = sorted(cf_elements(&g3, PolytopeKind::Q, &Budget::default()).unwrap());
        let want: Vec<_> = (1..=3)
            .map(|i| SemigroupElement {
                labeling: li_matching(3, i).unwrap(),
                height: 1,
            })
            .collect();
        assert_eq!(q, sorted(want));
    }

    #[test]
    fn cf_oracle_examples() {
        let g = make_gn(3).unwrap();
        let vertex = el(&g, lstar(3).unwrap().labels(), 2);
        assert_eq!(
            verify_completely_fundamental(&g, PolytopeKind::P, &vertex, 3).unwrap(),
            CfVerdict::UnrefutedUpTo(3)
        );
        let zero = el(&g, &[0; 9], 1);
        assert_eq!(
            verify_completely_fundamental(&g, PolytopeKind::P, &zero, 5).unwrap(),
            CfVerdict::UnrefutedUpTo(5)
        );
        let non_vertex = el(&g, lstar(3).unwrap().labels(), 3);
        match verify_completely_fundamental(&g, PolytopeKind::P, &non_vertex, 1).unwrap() {
            CfVerdict::Refuted { m, b, c } => {
                assert_eq!(m, 1);
                b.validate(&g, PolytopeKind::P).unwrap();
                c.validate(&g, PolytopeKind::P).unwrap();
                assert_eq!(&b.labeling + &c.labeling, non_vertex.labeling);
                assert_eq!(b.height + c.height, 3);
                assert!(b.multiple_of(&non_vertex).is_none());
            }
            other => panic!("expected a refutation, got {other:?}"),
        }
    }

    #[test]
    fn cf_oracle_rejects_bad_elements() {
        let g = make_gn(2).unwrap();
        assert!(verify_completely_fundamental(&g, PolytopeKind::P, &el(&g, &[0; 6], 0), 2).is_err());
        assert!(verify_completely_fundamental(&g, PolytopeKind::P, &el(&g, &[2; 6], 1), 2).is_err());
    }

    #[test]
    fn q_oracle_on_two_loops() {
        let g = two_loops();
        let e = el(&g, &[1, 0], 1);
        assert_eq!(
            verify_completely_fundamental(&g, PolytopeKind::Q, &e, 3).unwrap(),
            CfVerdict::UnrefutedUpTo(3)
        );
        let mid = el(&g, &[1, 1], 2);
        assert!(verify_completely_fundamental(&g, PolytopeKind::Q, &mid, 1).unwrap().is_refuted());
    }

    fn gn_generators(n: usize) -> Vec<SemigroupElement> {
        let g = make_gn(n).unwrap();
        let mut gens = vec![SemigroupElement {
            labeling: Labeling::zero(&g),
            height: 1,
        }];
        gens.extend((1..=n).map(|i| SemigroupElement {
            labeling: li_matching(n, i).unwrap(),
            height: 1,
        }));
        gens.push(SemigroupElement {
            labeling: lstar(n).unwrap(),
            height: n as u64 - 1,
        });
        gens
    }

    #[test]
    fn decomposition_examples() {
        let g = make_gn(3).unwrap();
        // u = (2, 1, 1): hub edges u_i, rungs 4 - u_i.
        let elem = el(&g, &[2, 3, 3, 2, 1, 1, 2, 1, 1], 3);
        let gens = gn_generators(3);
        let mult = decompose_over_generators(&elem, &gens).unwrap().unwrap();
        assert_eq!(mult, vec![0, 1, 0, 0, 1]);

        let g4 = make_gn(4).unwrap();
        let only_height_one: Vec<_> = gn_generators(4).into_iter().take(5).collect();
        let lstar4 = el(&g4, lstar(4).unwrap().labels(), 3);
        assert_eq!(decompose_over_generators(&lstar4, &only_height_one).unwrap(), None);

        let zero = el(&g, &[0; 9], 2);
        assert_eq!(
            decompose_over_generators(&zero, &gens[..1]).unwrap(),
            Some(vec![2])
        );
    }

    #[test]
    fn decomposition_errors() {
        let g = make_gn(2).unwrap();
        let g3 = make_gn(3).unwrap();
        let e = el(&g, &[0; 6], 1);
        assert!(decompose_over_generators(&e, &[el(&g3, &[0; 9], 1)]).is_err());
        assert!(decompose_over_generators(&e, &[el(&g, &[0; 6], 0)]).is_err());
    }

    #[test]
    fn stanley_examples() {
        let c6 = cycle(6);
        let ones = Labeling::new(&c6, vec![1; 6]).unwrap();
        let mut pieces = stanley_decompose(&c6, &ones).unwrap();
        pieces.sort();
        assert_eq!(
            pieces,
            vec![
                Labeling::new(&c6, vec![0, 1, 0, 1, 0, 1]).unwrap(),
                Labeling::new(&c6, vec![1, 0, 1, 0, 1, 0]).unwrap(),
            ]
        );

        let g3 = make_gn(3).unwrap();
        let mut pieces = stanley_decompose(&g3, &lstar(3).unwrap()).unwrap();
        pieces.sort();
        let mut want: Vec<_> = (1..=3).map(|i| li_matching(3, i).unwrap()).collect();
        want.sort();
        assert_eq!(pieces, want);

        assert!(stanley_decompose(&g3, &Labeling::zero(&g3)).unwrap().is_empty());
    }

    #[test]
    fn stanley_on_odd_cycle_uses_index_two() {
        let c3 = cycle(3);
        let l = Labeling::new(&c3, vec![2, 2, 2]).unwrap();
        let pieces = stanley_decompose(&c3, &l).unwrap();
        assert_eq!(pieces, vec![Labeling::new(&c3, vec![1, 1, 1]).unwrap(), Labeling::new(&c3, vec![1, 1, 1]).unwrap()]);
        let bad = Labeling::new(&c3, vec![1, 0, 0]).unwrap();
        assert_eq!(stanley_decompose(&c3, &bad), Err(Error::NotMagic));
    }

    #[test]
    fn certificates() {
        assert_eq!(certify_small_quasiperiod(&path(2)).verdict, QuasiperiodVerdict::Polynomial);
        assert_eq!(
            certify_small_quasiperiod(&make_gn(4).unwrap()).verdict,
            QuasiperiodVerdict::NoCertificate
        );
        // K_{2,3} minus a vertex of the larger side is K_{2,2}.
        let k23 = complete_bipartite(2, 3);
        let blocks = bridged(&k23, "w1", &k23, "w1").unwrap();
        assert!(blocks.leaves().is_empty());
        let cert = certify_small_quasiperiod(&blocks);
        assert!(cert.bipartite);
        assert_eq!(cert.verdict, QuasiperiodVerdict::Polynomial);
        let c3 = certify_small_quasiperiod(&cycle(3));
        assert_eq!(c3.verdict, QuasiperiodVerdict::QuasiperiodLe2);
    }
}
