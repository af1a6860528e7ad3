//! Simple labeled graphs, multigraphs and walks.
//!
//! Both graph kinds keep their vertices in ascending label order and address
//! them internally by dense index. Values are immutable once built; every
//! operation returns a new graph.

mod format;
mod multigraph;
mod serde_impl;
mod simple;
mod walk;

pub use format::{parse_text, GraphText};
pub use multigraph::{MultiGraph, MultiGraphBuilder};
pub use simple::LabeledGraph;
pub use walk::{Walk, WalkError};

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Stable vertex label. Ordering is plain string ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<&String> for VertexId {
    fn from(s: &String) -> Self {
        VertexId(s.clone())
    }
}

impl From<&VertexId> for VertexId {
    fn from(v: &VertexId) -> Self {
        v.clone()
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Identity of a multigraph edge, assigned densely in insertion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(VertexId),
    #[error("self-loop at `{0}` in a simple graph")]
    SelfLoop(VertexId),
    #[error("parallel edge ({0}, {1}) in a simple graph")]
    ParallelEdge(VertexId, VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Iterates the set bit positions of a bitset row.
pub(crate) fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            }
        })
    })
}
