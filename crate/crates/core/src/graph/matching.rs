use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::Labeling;

use super::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingPreclusion {
    /// No perfect matching at all (`mprec = 0`).
    NoPm,
    /// Some single edge deletion destroys every perfect matching.
    One,
    GreaterThanOne,
}

/// Outcome of looking for an edge that carries the maximum label in every
/// index-2 magic labeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForcedMaxEdge {
    Edge(usize),
    /// No index-2 labelings exist, so the zero labeling is the only magic one.
    Vacuous,
    None,
}

impl ForcedMaxEdge {
    pub fn satisfies_hypothesis(&self) -> bool {
        !matches!(self, ForcedMaxEdge::None)
    }
}

pub fn matching_preclusion_class(g: &Graph) -> MatchingPreclusion {
    if !g.has_perfect_matching(None) {
        return MatchingPreclusion::NoPm;
    }
    if (0..g.edge_count()).any(|e| !g.has_perfect_matching(Some(e))) {
        MatchingPreclusion::One
    } else {
        MatchingPreclusion::GreaterThanOne
    }
}

/// First edge (by id) attaining the maximum label in every supplied labeling.
/// `index2_labelings` must be the complete list of index-2 magic labelings.
pub fn forced_max_edge(g: &Graph, index2_labelings: &[Labeling]) -> Result<ForcedMaxEdge> {
    for l in index2_labelings {
        if l.magic_index(g) != Some(2) {
            return Err(Error::WrongIndex(2));
        }
    }
    if index2_labelings.is_empty() {
        return Ok(ForcedMaxEdge::Vacuous);
    }
    let edge = (0..g.edge_count()).find(|&e| {
        index2_labelings
            .iter()
            .all(|l| l.labels()[e] == l.max_label())
    });
    Ok(edge.map_or(ForcedMaxEdge::None, ForcedMaxEdge::Edge))
}
