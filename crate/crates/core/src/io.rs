//! JSON formats for graphs, labelings, polytope vertices, quasipolynomials
//! and semigroup elements. Rationals are written as `"num/den"` strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{Rational, RationalPoint};
use crate::graph::Graph;
use crate::labeling::Labeling;
use crate::quasipoly::Quasipolynomial;
use crate::semigroup::SemigroupElement;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    repeated_loops: bool,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn graph_json(g: &Graph) -> GraphJson {
    GraphJson {
        vertices: g.vertices().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|&(u, w)| (g.vertex_name(u).to_string(), g.vertex_name(w).to_string()))
            .collect(),
        repeated_loops: g.has_repeated_loops(),
    }
}

/// Compact JSON, also the canonical form hashed by [`graph_hash`].
pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&graph_json(g)).expect("graph serializes")
}

pub fn graph_to_json_pretty(g: &Graph) -> String {
    serde_json::to_string_pretty(&graph_json(g)).expect("graph serializes")
}

/// Parses a graph. Repeated loops are accepted only when the document sets
/// `"repeated_loops": true`.
pub fn graph_from_json(s: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(s).map_err(parse_err)?;
    if raw.repeated_loops {
        Graph::with_repeated_loops(raw.vertices, raw.edges)
    } else {
        Graph::new(raw.vertices, raw.edges)
    }
}

/// Hex SHA-256 of the compact graph JSON.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(graph_to_json(g).as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct LabelingJson {
    graph_hash: String,
    labels: Vec<u64>,
}

pub fn labeling_to_json(g: &Graph, l: &Labeling) -> String {
    serde_json::to_string(&LabelingJson {
        graph_hash: graph_hash(g),
        labels: l.labels().to_vec(),
    })
    .expect("labeling serializes")
}

/// Parses a labeling and checks that it was written for `g`.
pub fn labeling_from_json(g: &Graph, s: &str) -> Result<Labeling> {
    let raw: LabelingJson = serde_json::from_str(s).map_err(parse_err)?;
    let want = graph_hash(g);
    if raw.graph_hash != want {
        return Err(Error::Parse(format!(
            "labeling belongs to graph {}, not {want}",
            raw.graph_hash
        )));
    }
    Labeling::new(g, raw.labels)
}

pub fn rational_to_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"n/d"` or a bare integer `"n"`.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(int(n)?, d))
        }
        None => Ok(Rational::from_integer(int(s)?)),
    }
}

pub fn point_to_strings(p: &RationalPoint) -> Vec<String> {
    p.coords().iter().map(rational_to_string).collect()
}

pub fn point_to_json(p: &RationalPoint) -> String {
    serde_json::to_string(&point_to_strings(p)).expect("strings serialize")
}

#[derive(Serialize, Deserialize)]
struct QuasipolynomialJson {
    period: usize,
    constituents: Vec<Vec<String>>,
}

pub fn quasipolynomial_to_value(q: &Quasipolynomial) -> serde_json::Value {
    serde_json::to_value(QuasipolynomialJson {
        period: q.period(),
        constituents: q
            .constituents()
            .iter()
            .map(|c| c.iter().map(rational_to_string).collect())
            .collect(),
    })
    .expect("quasipolynomial serializes")
}

pub fn quasipolynomial_to_json(q: &Quasipolynomial) -> String {
    quasipolynomial_to_value(q).to_string()
}

pub fn quasipolynomial_from_json(s: &str) -> Result<Quasipolynomial> {
    let raw: QuasipolynomialJson = serde_json::from_str(s).map_err(parse_err)?;
    let constituents = raw
        .constituents
        .iter()
        .map(|c| c.iter().map(|x| rational_from_str(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Quasipolynomial::new(raw.period, constituents)
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    labels: Vec<u64>,
    height: u64,
}

pub fn element_to_value(e: &SemigroupElement) -> serde_json::Value {
    serde_json::to_value(ElementJson {
        labels: e.labels().to_vec(),
        height: e.height,
    })
    .expect("element serializes")
}

pub fn element_to_json(e: &SemigroupElement) -> String {
    element_to_value(e).to_string()
}

/// Parses an element of `g`'s semigroup; membership is not checked here.
pub fn element_from_json(g: &Graph, s: &str) -> Result<SemigroupElement> {
    let raw: ElementJson = serde_json::from_str(s).map_err(parse_err)?;
    Ok(SemigroupElement {
        labeling: Labeling::new(g, raw.labels)?,
        height: raw.height,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_gn, two_loops};
    use crate::labeling::lstar;

    #[test]
    fn graph_round_trip() {
        let g = make_gn(3).unwrap();
        let s = graph_to_json(&g);
        assert!(s.starts_with(r#"{"vertices":["a1","a2","a3","b1""#));
        assert!(!s.contains("repeated_loops"));
        let back = graph_from_json(&s).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(graph_hash(&back), graph_hash(&g));
    }

    #[test]
    fn repeated_loops_need_the_flag() {
        let g = two_loops();
        let s = graph_to_json(&g);
        assert!(s.contains(r#""repeated_loops":true"#));
        assert_eq!(graph_from_json(&s).unwrap().edge_count(), 2);
        let plain = r#"{"vertices":["v"],"edges":[["v","v"],["v","v"]]}"#;
        assert!(matches!(graph_from_json(plain), Err(Error::DuplicateEdge(..))));
    }

    #[test]
    fn malformed_graphs() {
        assert!(matches!(graph_from_json("{"), Err(Error::Parse(_))));
        let unknown = r#"{"vertices":["a"],"edges":[["a","b"]]}"#;
        assert!(matches!(graph_from_json(unknown), Err(Error::UnknownEndpoint(_))));
    }

    #[test]
    fn labeling_hash_is_checked() {
        let g3 = make_gn(3).unwrap();
        let l = lstar(3).unwrap();
        let s = labeling_to_json(&g3, &l);
        assert_eq!(labeling_from_json(&g3, &s).unwrap(), l);
        let g4 = make_gn(4).unwrap();
        assert!(labeling_from_json(&g4, &s).is_err());
    }

    #[test]
    fn rationals() {
        let x = Rational::new(10.into(), 9.into());
        assert_eq!(rational_to_string(&x), "10/9");
        assert_eq!(rational_to_string(&Rational::from_integer(2.into())), "2/1");
        assert_eq!(rational_from_str("20/18").unwrap(), x);
        assert_eq!(rational_from_str("-3").unwrap(), Rational::from_integer((-3).into()));
        assert!(rational_from_str("1/0").is_err());
        assert!(rational_from_str("x").is_err());
    }

    #[test]
    fn quasipolynomial_round_trip() {
        let q = Quasipolynomial::new(
            2,
            vec![
                vec![Rational::from_integer(1.into())],
                vec![Rational::new(1.into(), 2.into()), Rational::from_integer(1.into())],
            ],
        )
        .unwrap();
        let s = quasipolynomial_to_json(&q);
        assert_eq!(s, r#"{"constituents":[["1/1"],["1/2","1/1"]],"period":2}"#);
        assert_eq!(quasipolynomial_from_json(&s).unwrap(), q);
    }

    #[test]
    fn element_round_trip() {
        let g = make_gn(3).unwrap();
        let e = SemigroupElement {
            labeling: lstar(3).unwrap(),
            height: 2,
        };
        let s = element_to_json(&e);
        assert_eq!(s, r#"{"height":2,"labels":[2,2,2,1,1,1,1,1,1]}"#);
        assert_eq!(element_from_json(&g, &s).unwrap(), e);
    }
}
