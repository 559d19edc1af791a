//! Graphs with loops but no multi-edges, the `G_n` / `G_{n,p}` families, and
//! the structural predicates used to certify small quasiperiods.
//!
//! Vertices and edges are addressed by their position. The edge order given at
//! construction is the coordinate order of every labeling, polytope point and
//! semigroup element downstream.

mod families;
mod matching;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub use families::{bridged, complete_bipartite, cycle, make_gn, make_gnp, path, two_loops};
pub use matching::{forced_max_edge, matching_preclusion_class, ForcedMaxEdge, MatchingPreclusion};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
    /// Edge ids incident to each vertex; a loop appears once.
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates and builds a graph. Edge coordinate order equals input order.
    /// Duplicate edges, including repeated loops, are rejected.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        Self::build(vertices, edges, false)
    }

    /// Like [`Graph::new`] but accepts several loops at the same vertex.
    /// Repeated non-loop edges are still rejected.
    pub fn with_repeated_loops<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        Self::build(vertices, edges, true)
    }

    fn build<V, E, S>(vertices: V, edges: E, repeated_loops: bool) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }

        let mut seen = HashSet::new();
        let mut edge_list = Vec::new();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (a, b) in edges {
            let (a, b): (String, String) = (a.into(), b.into());
            let u = *index.get(&a).ok_or_else(|| Error::UnknownEndpoint(a.clone()))?;
            let w = *index.get(&b).ok_or_else(|| Error::UnknownEndpoint(b.clone()))?;
            let repeatable = repeated_loops && u == w;
            if !seen.insert((u.min(w), u.max(w))) && !repeatable {
                return Err(Error::DuplicateEdge(a, b));
            }
            let e = edge_list.len();
            edge_list.push((u, w));
            incident[u].push(e);
            if w != u {
                incident[w].push(e);
            }
        }

        Ok(Graph {
            vertices,
            edges: edge_list,
            index,
            incident,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, w) = self.edges[e];
        u == w
    }

    /// Edge id of the unordered pair `{a, b}`, if present.
    pub fn find_edge(&self, a: &str, b: &str) -> Option<usize> {
        let u = self.vertex_index(a)?;
        let w = self.vertex_index(b)?;
        self.incident[u].iter().copied().find(|&e| {
            let (p, q) = self.edges[e];
            (p == u && q == w) || (p == w && q == u)
        })
    }

    /// Conventional degree: a loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .map(|&e| if self.is_loop(e) { 2 } else { 1 })
            .sum()
    }

    /// Human-readable edge name, e.g. `x-a1`.
    pub fn edge_name(&self, e: usize) -> String {
        let (u, w) = self.edges[e];
        format!("{}-{}", self.vertices[u], self.vertices[w])
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, w)| u == w)
    }

    /// Whether some vertex carries more than one loop.
    pub fn has_repeated_loops(&self) -> bool {
        (0..self.vertex_count()).any(|v| {
            self.incident[v].iter().filter(|&&e| self.is_loop(e)).count() > 1
        })
    }

    /// A proper two-coloring (`false`/`true` per vertex), or `None` when the
    /// graph has an odd cycle or a loop.
    pub fn is_bipartite(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        for start in 0..self.vertex_count() {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for &e in &self.incident[v] {
                    let w = self.other_endpoint(e, v);
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    /// Degree-1 vertices with their unique incident edge. Loop vertices are
    /// never leaves.
    pub fn leaves(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == 1)
            .map(|v| (v, self.incident[v][0]))
            .collect()
    }

    /// Every perfect matching as a sorted list of edge ids. A loop covers its
    /// vertex and may belong to a matching.
    pub fn perfect_matchings(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut covered = vec![false; self.vertex_count()];
        let mut chosen = Vec::new();
        self.matching_search(None, &mut covered, &mut chosen, &mut |m| {
            let mut m = m.to_vec();
            m.sort_unstable();
            out.push(m);
            false
        });
        out
    }

    /// Whether a perfect matching exists, optionally ignoring one edge.
    pub fn has_perfect_matching(&self, without: Option<usize>) -> bool {
        let mut found = false;
        let mut covered = vec![false; self.vertex_count()];
        let mut chosen = Vec::new();
        self.matching_search(without, &mut covered, &mut chosen, &mut |_| {
            found = true;
            true
        });
        found
    }

    /// Backtracking over the lowest uncovered vertex. `visit` returns `true`
    /// to stop the search.
    fn matching_search(
        &self,
        without: Option<usize>,
        covered: &mut [bool],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let Some(v) = covered.iter().position(|&c| !c) else {
            return visit(chosen);
        };
        for &e in &self.incident[v] {
            if Some(e) == without {
                continue;
            }
            let w = self.other_endpoint(e, v);
            if w != v && covered[w] {
                continue;
            }
            covered[v] = true;
            covered[w] = true;
            chosen.push(e);
            let stop = self.matching_search(without, covered, chosen, visit);
            chosen.pop();
            covered[v] = false;
            covered[w] = false;
            if stop {
                return true;
            }
        }
        false
    }

    pub(crate) fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (u, w) = self.edges[e];
        if u == v {
            w
        } else {
            u
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph with {} vertices and {} edges",
            self.vertex_count(),
            self.edge_count()
        )
    }
}
