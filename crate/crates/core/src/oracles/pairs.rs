use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::graphs::{LabeledGraph, VertexId};

/// Disjoint unordered vertex pairs, kept in input order and orientation.
///
/// The stored orientation matters to a few constructions (which terminal of
/// a pair gets the unprimed pad vertex, the direction paths are reported in)
/// but never to equality of the underlying pair set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(VertexId, VertexId)>", into = "Vec<(VertexId, VertexId)>")]
pub struct PairSet(Vec<(VertexId, VertexId)>);

impl PairSet {
    pub fn new(pairs: Vec<(VertexId, VertexId)>) -> Result<Self, OracleError> {
        let mut seen = BTreeSet::new();
        for (a, b) in &pairs {
            if a == b {
                return Err(OracleError::InvalidPairs(format!("pair {{{a}, {a}}}")));
            }
            for v in [a, b] {
                if !seen.insert(v.clone()) {
                    return Err(OracleError::InvalidPairs(format!(
                        "vertex `{v}` occurs in two pairs"
                    )));
                }
            }
        }
        Ok(PairSet(pairs))
    }

    pub fn from_labels<A, B, I>(pairs: I) -> Result<Self, OracleError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        Self::new(pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect())
    }

    pub fn empty() -> Self {
        PairSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VertexId, VertexId)> {
        self.0.iter()
    }

    /// Union of all pairs.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.0
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect()
    }

    pub fn contains_pair(&self, a: &VertexId, b: &VertexId) -> bool {
        self.0
            .iter()
            .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    /// Perfect matching graph on the paired vertices.
    pub fn bell_graph(&self) -> LabeledGraph {
        LabeledGraph::new(self.vertices(), self.0.iter().cloned())
            .expect("pairs are disjoint and non-degenerate")
    }
}

impl TryFrom<Vec<(VertexId, VertexId)>> for PairSet {
    type Error = OracleError;

    fn try_from(v: Vec<(VertexId, VertexId)>) -> Result<Self, Self::Error> {
        PairSet::new(v)
    }
}

impl From<PairSet> for Vec<(VertexId, VertexId)> {
    fn from(p: PairSet) -> Self {
        p.0
    }
}
