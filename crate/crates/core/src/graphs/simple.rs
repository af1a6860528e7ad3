use std::collections::BTreeSet;
use std::fmt;

use super::{bits, words_for, GraphError, VertexId};

/// Simple undirected graph on labeled vertices.
///
/// Adjacency is a bitset row per vertex, rows ordered like the (sorted)
/// labels. Two graphs compare equal iff they have the same labels and the
/// same edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    labels: Vec<VertexId>,
    words: usize,
    adj: Vec<u64>,
}

impl LabeledGraph {
    /// Graph with the given vertices and no edges.
    pub fn empty<I, V>(vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut labels: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let words = words_for(labels.len());
        let adj = vec![0; words * labels.len()];
        Ok(LabeledGraph { labels, words, adj })
    }

    pub fn new<I, V, E, A, B>(vertices: I, edges: E) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
        E: IntoIterator<Item = (A, B)>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        let mut g = Self::empty(vertices)?;
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            let i = g.require(&a)?;
            let j = g.require(&b)?;
            if i == j {
                return Err(GraphError::SelfLoop(a));
            }
            if g.adjacent_idx(i, j) {
                return Err(GraphError::ParallelEdge(a, b));
            }
            g.toggle_idx(i, j);
        }
        Ok(g)
    }

    /// Complete graph on the given vertices.
    pub fn complete<I, V>(vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut g = Self::empty(vertices)?;
        let n = g.vertex_count();
        for i in 0..n {
            for j in i + 1..n {
                g.toggle_idx(i, j);
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some()
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    pub(crate) fn require(&self, v: &VertexId) -> Result<usize, GraphError> {
        self.index_of(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacent_idx(i, j),
            _ => false,
        }
    }

    pub fn neighbors(&self, v: &VertexId) -> Result<Vec<&VertexId>, GraphError> {
        let i = self.require(v)?;
        Ok(bits(self.row(i)).map(|j| &self.labels[j]).collect())
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize, GraphError> {
        let i = self.require(v)?;
        Ok(self.degree_idx(i))
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.vertex_count() {
            for j in bits(self.row(i)).filter(|&j| j > i) {
                out.push((self.labels[i].clone(), self.labels[j].clone()));
            }
        }
        out
    }

    /// Local complementation at `v`: toggles every pair of neighbours of `v`.
    pub fn local_complement(&self, v: &VertexId) -> Result<Self, GraphError> {
        let i = self.require(v)?;
        let mut g = self.clone();
        g.local_complement_idx(i);
        Ok(g)
    }

    /// Applies local complementations left to right.
    pub fn apply_lc_sequence<'a, I>(&self, seq: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut g = self.clone();
        for v in seq {
            let i = g.require(v)?;
            g.local_complement_idx(i);
        }
        Ok(g)
    }

    pub fn induced_subgraph<'a, I>(&self, keep: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut idx = BTreeSet::new();
        for v in keep {
            idx.insert(self.require(v)?);
        }
        Ok(self.induced_idx(&idx.into_iter().collect::<Vec<_>>()))
    }

    pub fn delete_vertices<'a, I>(&self, remove: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut gone = vec![false; self.vertex_count()];
        for v in remove {
            gone[self.require(v)?] = true;
        }
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&i| !gone[i]).collect();
        Ok(self.induced_idx(&keep))
    }

    /// Vertices with at least one neighbour.
    pub fn without_isolated(&self) -> Self {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&i| self.degree_idx(i) > 0)
            .collect();
        self.induced_idx(&keep)
    }

    /// `keep` must be ascending.
    pub(crate) fn induced_idx(&self, keep: &[usize]) -> Self {
        let labels: Vec<VertexId> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let words = words_for(labels.len());
        let mut adj = vec![0u64; words * labels.len()];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.adjacent_idx(i, j) {
                    adj[a * words + b / 64] |= 1 << (b % 64);
                }
            }
        }
        LabeledGraph { labels, words, adj }
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn degree_idx(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn toggle_idx(&mut self, i: usize, j: usize) {
        self.adj[i * self.words + j / 64] ^= 1 << (j % 64);
        self.adj[j * self.words + i / 64] ^= 1 << (i % 64);
    }

    pub(crate) fn local_complement_idx(&mut self, v: usize) {
        let w = self.words;
        let mask: Vec<u64> = self.row(v).to_vec();
        for u in bits(&mask) {
            let row = &mut self.adj[u * w..(u + 1) * w];
            for (r, m) in row.iter_mut().zip(&mask) {
                *r ^= m;
            }
            row[u / 64] ^= 1 << (u % 64);
        }
    }

    pub(crate) fn from_raw(labels: Vec<VertexId>, adj: Vec<u64>) -> Self {
        let words = words_for(labels.len());
        debug_assert_eq!(adj.len(), words * labels.len());
        LabeledGraph { labels, words, adj }
    }

    pub(crate) fn raw_adjacency(&self) -> &[u64] {
        &self.adj
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("vertices", &self.labels)
            .field("edges", &self.edges())
            .finish()
    }
}
