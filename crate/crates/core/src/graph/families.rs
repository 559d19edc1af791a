use crate::error::{Error, Result};

use super::Graph;

/// `G_n`: vertices `a1..an, b1..bn, x, y`; edges `a_i b_i`, then `x a_i`,
/// then `y b_i`.
pub fn make_gn(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("G_n needs n >= 2, got {n}")));
    }
    let a = |i: usize| format!("a{i}");
    let b = |i: usize| format!("b{i}");
    let vertices: Vec<String> = (1..=n)
        .map(a)
        .chain((1..=n).map(b))
        .chain(["x".to_string(), "y".to_string()])
        .collect();
    let edges: Vec<(String, String)> = (1..=n)
        .map(|i| (a(i), b(i)))
        .chain((1..=n).map(|i| ("x".to_string(), a(i))))
        .chain((1..=n).map(|i| ("y".to_string(), b(i))))
        .collect();
    Graph::new(vertices, edges)
}

/// `G_{n,p}`: hubs `x`, `y` joined by `n` internally disjoint paths of
/// `2p + 1` edges. Path `i` runs `x, p{i}_1, ..., p{i}_{2p}, y`.
pub fn make_gnp(n: usize, p: usize) -> Result<Graph> {
    if n < 2 || p < 1 {
        return Err(Error::OutOfRange(format!(
            "G_(n,p) needs n >= 2 and p >= 1, got n = {n}, p = {p}"
        )));
    }
    let inner = |i: usize, j: usize| format!("p{i}_{j}");
    let mut vertices = vec!["x".to_string(), "y".to_string()];
    let mut edges = Vec::with_capacity(n * (2 * p + 1));
    for i in 1..=n {
        let mut prev = "x".to_string();
        for j in 1..=2 * p {
            let v = inner(i, j);
            vertices.push(v.clone());
            edges.push((prev, v.clone()));
            prev = v;
        }
        edges.push((prev, "y".to_string()));
    }
    Graph::new(vertices, edges)
}

/// Path on `m` vertices `v1..vm`.
pub fn path(m: usize) -> Graph {
    let vertices: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String)> = vertices
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    Graph::new(vertices, edges).expect("path is a simple graph")
}

/// Cycle on `m >= 3` vertices `v1..vm`.
pub fn cycle(m: usize) -> Graph {
    assert!(m >= 3, "a simple cycle needs at least 3 vertices");
    let vertices: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String)> = (0..m)
        .map(|i| (vertices[i].clone(), vertices[(i + 1) % m].clone()))
        .collect();
    Graph::new(vertices, edges).expect("cycle is a simple graph")
}

/// `K_{m,n}` with sides `u1..um` and `w1..wn`; edges ordered by `u` first.
pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let us: Vec<String> = (1..=m).map(|i| format!("u{i}")).collect();
    let ws: Vec<String> = (1..=n).map(|j| format!("w{j}")).collect();
    let edges: Vec<(String, String)> = us
        .iter()
        .flat_map(|u| ws.iter().map(move |w| (u.clone(), w.clone())))
        .collect();
    Graph::new(us.into_iter().chain(ws), edges).expect("complete bipartite graph is simple")
}

/// One vertex `v` carrying two loops (edges 0 and 1).
pub fn two_loops() -> Graph {
    Graph::with_repeated_loops(["v"], [("v", "v"), ("v", "v")]).expect("valid loops")
}

/// Disjoint union of `left` and `right` plus one bridge edge between
/// `left_vertex` and `right_vertex`. Vertex names are prefixed `L.` and `R.`.
pub fn bridged(left: &Graph, left_vertex: &str, right: &Graph, right_vertex: &str) -> Result<Graph> {
    let lv = left
        .vertex_index(left_vertex)
        .ok_or_else(|| Error::UnknownVertex(left_vertex.to_string()))?;
    let rv = right
        .vertex_index(right_vertex)
        .ok_or_else(|| Error::UnknownVertex(right_vertex.to_string()))?;
    let l = |v: usize| format!("L.{}", left.vertex_name(v));
    let r = |v: usize| format!("R.{}", right.vertex_name(v));
    let vertices: Vec<String> = (0..left.vertex_count())
        .map(l)
        .chain((0..right.vertex_count()).map(r))
        .collect();
    let edges: Vec<(String, String)> = left
        .edges()
        .iter()
        .map(|&(u, w)| (l(u), l(w)))
        .chain(right.edges().iter().map(|&(u, w)| (r(u), r(w))))
        .chain(std::iter::once((l(lv), r(rv))))
        .collect();
    Graph::with_repeated_loops(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gn_sizes() {
        let g2 = make_gn(2).unwrap();
        assert_eq!((g2.vertex_count(), g2.edge_count()), (6, 6));
        assert!((0..6).all(|v| g2.degree(v) == 2), "G_2 is a 6-cycle");
        let g4 = make_gn(4).unwrap();
        assert_eq!((g4.vertex_count(), g4.edge_count()), (10, 12));
        assert!(make_gn(1).is_err());
    }

    #[test]
    fn gnp_sizes() {
        let g = make_gnp(2, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
        let g = make_gnp(2, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 10));
        assert!((0..10).all(|v| g.degree(v) == 2), "G_(2,2) is a 10-cycle");
        let g = make_gnp(3, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (14, 15));
        assert!(make_gnp(1, 1).is_err());
        assert!(make_gnp(2, 0).is_err());
    }

    #[test]
    fn gnp_with_p1_matches_gn_degrees() {
        for n in 2..=5 {
            let a = make_gn(n).unwrap();
            let b = make_gnp(n, 1).unwrap();
            let mut da: Vec<usize> = (0..a.vertex_count()).map(|v| a.degree(v)).collect();
            let mut db: Vec<usize> = (0..b.vertex_count()).map(|v| b.degree(v)).collect();
            da.sort_unstable();
            db.sort_unstable();
            assert_eq!(da, db);
            assert_eq!(a.perfect_matchings().len(), b.perfect_matchings().len());
        }
    }

    #[test]
    fn bridge_construction() {
        let g = bridged(&path(3), "v1", &path(3), "v1").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 5));
        assert_eq!(g.edge_name(4), "L.v1-R.v1");
    }

    #[test]
    fn complete_bipartite_shape() {
        let g = complete_bipartite(2, 3);
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 6));
        assert!(g.is_bipartite().is_some());
        assert_eq!(g.edge_name(0), "u1-w1");
    }
}
