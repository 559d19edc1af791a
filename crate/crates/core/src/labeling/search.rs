//! Depth-first enumeration of magic labelings with a fixed index and
//! per-edge upper bounds.
//!
//! Edges are assigned in a greedy order that finishes low-degree vertices
//! early. When an edge is the last unassigned edge at one of its endpoints its
//! label is forced; otherwise it ranges over the values that keep every
//! endpoint able to reach the target sum with its remaining capacity.

use std::ops::ControlFlow;

use crate::budget::{NodeMeter, FLUSH_EVERY};
use crate::error::Result;
use crate::graph::Graph;

pub(crate) struct MagicSearch<'g> {
    graph: &'g Graph,
    upper: Vec<u64>,
    order: Vec<usize>,
    /// Step at which each vertex receives its last incident edge.
    last_step: Vec<Option<usize>>,
}

struct State<'m> {
    labels: Vec<u64>,
    partial: Vec<u64>,
    remaining_cap: Vec<u64>,
    target: u64,
    pending_nodes: u64,
    meter: &'m NodeMeter,
}

impl<'g> MagicSearch<'g> {
    pub(crate) fn new(graph: &'g Graph, upper: Vec<u64>) -> Self {
        assert_eq!(upper.len(), graph.edge_count());
        let order = assignment_order(graph);
        let mut last_step = vec![None; graph.vertex_count()];
        for (step, &e) in order.iter().enumerate() {
            let (u, w) = graph.endpoints(e);
            last_step[u] = Some(step);
            last_step[w] = Some(step);
        }
        MagicSearch {
            graph,
            upper,
            order,
            last_step,
        }
    }

    pub(crate) fn uniform(graph: &'g Graph, bound: u64) -> Self {
        Self::new(graph, vec![bound; graph.edge_count()])
    }

    /// Largest index any labeling within the bounds can have: the smallest
    /// total capacity at a vertex (0 for the empty graph).
    pub(crate) fn max_index(&self) -> u64 {
        (0..self.graph.vertex_count())
            .map(|v| {
                self.graph
                    .incident_edges(v)
                    .iter()
                    .map(|&e| self.upper[e])
                    .fold(0u64, u64::saturating_add)
            })
            .min()
            .unwrap_or(0)
    }

    /// Calls `visit` on every magic labeling of index `target` within the
    /// bounds. `visit` may break to stop early; the returned flow reports it.
    pub(crate) fn for_each(
        &self,
        target: u64,
        meter: &NodeMeter,
        visit: &mut dyn FnMut(&[u64]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let g = self.graph;
        let mut remaining_cap = vec![0u64; g.vertex_count()];
        for v in 0..g.vertex_count() {
            let cap = g
                .incident_edges(v)
                .iter()
                .map(|&e| self.upper[e].min(target))
                .fold(0u64, u64::saturating_add);
            if cap < target {
                return Ok(ControlFlow::Continue(()));
            }
            remaining_cap[v] = cap;
        }
        let mut state = State {
            labels: vec![0; g.edge_count()],
            partial: vec![0; g.vertex_count()],
            remaining_cap,
            target,
            pending_nodes: 0,
            meter,
        };
        let flow = self.descend(0, &mut state, visit)?;
        meter.charge(state.pending_nodes)?;
        Ok(flow)
    }

    fn descend(
        &self,
        step: usize,
        st: &mut State<'_>,
        visit: &mut dyn FnMut(&[u64]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if step == self.order.len() {
            return Ok(visit(&st.labels));
        }
        let e = self.order[step];
        let (u, w) = self.graph.endpoints(e);
        let cap = self.upper[e].min(st.target);
        let mut lo = 0u64;
        let mut hi = cap;
        for x in endpoints(u, w) {
            let need = st.target - st.partial[x];
            if self.last_step[x] == Some(step) {
                lo = lo.max(need);
                hi = hi.min(need);
            } else {
                hi = hi.min(need);
                let after = st.remaining_cap[x] - cap;
                lo = lo.max(need.saturating_sub(after));
            }
        }
        if lo > hi {
            return Ok(ControlFlow::Continue(()));
        }

        for x in endpoints(u, w) {
            st.remaining_cap[x] -= cap;
        }
        let mut flow = Ok(ControlFlow::Continue(()));
        for value in lo..=hi {
            st.pending_nodes += 1;
            if st.pending_nodes >= FLUSH_EVERY {
                if let Err(err) = st.meter.charge(st.pending_nodes) {
                    flow = Err(err);
                    break;
                }
                st.pending_nodes = 0;
            }
            st.labels[e] = value;
            for x in endpoints(u, w) {
                st.partial[x] += value;
            }
            let inner = self.descend(step + 1, st, visit);
            for x in endpoints(u, w) {
                st.partial[x] -= value;
            }
            match inner {
                Ok(ControlFlow::Continue(())) => {}
                other => {
                    flow = other;
                    break;
                }
            }
        }
        st.labels[e] = 0;
        for x in endpoints(u, w) {
            st.remaining_cap[x] += cap;
        }
        flow
    }
}

/// Distinct endpoints of an edge; a loop yields its vertex once.
fn endpoints(u: usize, w: usize) -> impl Iterator<Item = usize> {
    std::iter::once(u).chain((w != u).then_some(w))
}

/// Repeatedly picks the vertex with the fewest (but at least one) unplaced
/// incident edges, preferring vertices already touched, and appends those
/// edges in id order.
fn assignment_order(g: &Graph) -> Vec<usize> {
    let mut placed = vec![false; g.edge_count()];
    let mut touched = vec![false; g.vertex_count()];
    let mut open: Vec<usize> = (0..g.vertex_count()).map(|v| g.incident_edges(v).len()).collect();
    let mut order = Vec::with_capacity(g.edge_count());
    while order.len() < g.edge_count() {
        let v = (0..g.vertex_count())
            .filter(|&v| open[v] > 0)
            .min_by_key(|&v| (open[v], !touched[v], v))
            .expect("unplaced edges have endpoints");
        for &e in g.incident_edges(v) {
            if placed[e] {
                continue;
            }
            placed[e] = true;
            order.push(e);
            let (a, b) = g.endpoints(e);
            for x in endpoints(a, b) {
                open[x] -= 1;
                touched[x] = true;
            }
        }
    }
    order
}
