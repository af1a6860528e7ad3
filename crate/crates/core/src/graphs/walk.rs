use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use super::{EdgeId, MultiGraph, VertexId};

/// Alternating vertex/edge sequence `v0 e0 v1 e1 ... vk` on a multigraph.
///
/// Used for paths, partial tours and Eulerian tours alike.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("walk has {vertices} vertices but {edges} edges")]
    Shape { vertices: usize, edges: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {edge} does not join `{from}` and `{to}`")]
    NotIncident {
        edge: EdgeId,
        from: VertexId,
        to: VertexId,
    },
    #[error("edge {0} used twice")]
    RepeatedEdge(EdgeId),
    #[error("vertex `{0}` repeated in a path")]
    RepeatedVertex(VertexId),
    #[error("walk is not closed")]
    NotClosed,
}

impl Walk {
    /// Zero-length walk at `v`.
    pub fn at(v: impl Into<VertexId>) -> Self {
        Walk {
            vertices: vec![v.into()],
            edges: Vec::new(),
        }
    }

    pub fn start(&self) -> &VertexId {
        &self.vertices[0]
    }

    pub fn end(&self) -> &VertexId {
        self.vertices.last().expect("walk has a vertex")
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn reversed(&self) -> Walk {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Walk { vertices, edges }
    }

    /// Checks shape and incidence against `host`, and that no edge repeats.
    pub fn validate_trail(&self, host: &MultiGraph) -> Result<(), WalkError> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(WalkError::Shape {
                vertices: self.vertices.len(),
                edges: self.edges.len(),
            });
        }
        for v in &self.vertices {
            if !host.contains(v) {
                return Err(WalkError::UnknownVertex(v.clone()));
            }
        }
        let mut seen = FxHashSet::default();
        for (i, &e) in self.edges.iter().enumerate() {
            let (a, b) = host.endpoints(e).map_err(|_| WalkError::UnknownEdge(e))?;
            let (from, to) = (&self.vertices[i], &self.vertices[i + 1]);
            if !((a == from && b == to) || (a == to && b == from)) {
                return Err(WalkError::NotIncident {
                    edge: e,
                    from: from.clone(),
                    to: to.clone(),
                });
            }
            if !seen.insert(e) {
                return Err(WalkError::RepeatedEdge(e));
            }
        }
        Ok(())
    }

    /// A trail that additionally never revisits a vertex.
    pub fn validate_path(&self, host: &MultiGraph) -> Result<(), WalkError> {
        self.validate_trail(host)?;
        let mut seen = FxHashSet::default();
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(WalkError::RepeatedVertex(v.clone()));
            }
        }
        Ok(())
    }

    pub fn validate_closed(&self, host: &MultiGraph) -> Result<(), WalkError> {
        self.validate_trail(host)?;
        if !self.is_closed() {
            return Err(WalkError::NotClosed);
        }
        Ok(())
    }

    /// Token stream `v:<label> e:<id> v:<label> ...`.
    pub fn to_tokens(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                out.push_str(&format!(" e:{} ", self.edges[i - 1]));
            }
            out.push_str("v:");
            out.push_str(v.as_str());
        }
        out
    }

    pub fn from_tokens(s: &str) -> Result<Walk, String> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, tok) in s.split_whitespace().enumerate() {
            if i % 2 == 0 {
                let label = tok
                    .strip_prefix("v:")
                    .ok_or_else(|| format!("expected `v:<label>`, got `{tok}`"))?;
                vertices.push(VertexId::from(label));
            } else {
                let id = tok
                    .strip_prefix("e:")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| format!("expected `e:<id>`, got `{tok}`"))?;
                edges.push(EdgeId(id));
            }
        }
        if vertices.is_empty() || vertices.len() != edges.len() + 1 {
            return Err("walk must alternate and end on a vertex".into());
        }
        Ok(Walk { vertices, edges })
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, "({},{})", self.vertices[i - 1], v)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
