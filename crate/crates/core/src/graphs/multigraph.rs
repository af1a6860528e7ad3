use std::collections::BTreeSet;
use std::fmt;

use super::{EdgeId, GraphError, VertexId};

/// Collects vertices and edges by label; `build` fixes the vertex order and
/// assigns edge ids in insertion order.
#[derive(Debug, Clone, Default)]
pub struct MultiGraphBuilder {
    vertices: BTreeSet<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl MultiGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, v: impl Into<VertexId>) -> &mut Self {
        self.vertices.insert(v.into());
        self
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    /// Adds an edge, adding missing endpoints as vertices. Equal endpoints
    /// give a self-loop.
    pub fn edge(&mut self, a: impl Into<VertexId>, b: impl Into<VertexId>) -> &mut Self {
        let (a, b) = (a.into(), b.into());
        self.vertices.insert(a.clone());
        self.vertices.insert(b.clone());
        self.edges.push((a, b));
        self
    }

    /// Adds `count` parallel copies of an edge.
    pub fn edges(
        &mut self,
        a: impl Into<VertexId>,
        b: impl Into<VertexId>,
        count: usize,
    ) -> &mut Self {
        let (a, b) = (a.into(), b.into());
        for _ in 0..count {
            self.edge(a.clone(), b.clone());
        }
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn build(&self) -> MultiGraph {
        let labels: Vec<VertexId> = self.vertices.iter().cloned().collect();
        let idx = |v: &VertexId| labels.binary_search(v).expect("endpoint registered");
        let ends: Vec<[usize; 2]> = self.edges.iter().map(|(a, b)| [idx(a), idx(b)]).collect();
        MultiGraph::from_parts(labels, ends)
    }
}

/// Undirected multigraph with parallel edges and self-loops.
///
/// Incidence lists are kept in ascending `EdgeId` order; a self-loop appears
/// once in its vertex's list but counts twice towards the degree.
#[derive(Clone)]
pub struct MultiGraph {
    labels: Vec<VertexId>,
    ends: Vec<[usize; 2]>,
    incidence: Vec<Vec<EdgeId>>,
}

impl MultiGraph {
    pub fn builder() -> MultiGraphBuilder {
        MultiGraphBuilder::new()
    }

    /// `labels` must be sorted and unique; `ends` index into `labels`.
    pub(crate) fn from_parts(labels: Vec<VertexId>, ends: Vec<[usize; 2]>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let mut incidence = vec![Vec::new(); labels.len()];
        for (e, &[a, b]) in ends.iter().enumerate() {
            incidence[a].push(EdgeId(e));
            if a != b {
                incidence[b].push(EdgeId(e));
            }
        }
        MultiGraph {
            labels,
            ends,
            incidence,
        }
    }

    /// Starts a builder holding a copy of this graph.
    pub fn to_builder(&self) -> MultiGraphBuilder {
        let mut b = MultiGraphBuilder::new();
        for v in &self.labels {
            b.vertex(v.clone());
        }
        for &[x, y] in &self.ends {
            b.edge(self.labels[x].clone(), self.labels[y].clone());
        }
        b
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.ends.len()).map(EdgeId)
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some()
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    pub(crate) fn require(&self, v: &VertexId) -> Result<usize, GraphError> {
        self.index_of(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(&VertexId, &VertexId), GraphError> {
        let [a, b] = *self.ends.get(e.0).ok_or(GraphError::UnknownEdge(e))?;
        Ok((&self.labels[a], &self.labels[b]))
    }

    pub(crate) fn ends_idx(&self, e: EdgeId) -> [usize; 2] {
        self.ends[e.0]
    }

    pub(crate) fn all_ends(&self) -> &[[usize; 2]] {
        &self.ends
    }

    /// Endpoint of `e` opposite to vertex index `v`.
    pub(crate) fn other_end(&self, e: EdgeId, v: usize) -> usize {
        let [a, b] = self.ends[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    pub(crate) fn incident_idx(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn incident(&self, v: &VertexId) -> Result<&[EdgeId], GraphError> {
        Ok(&self.incidence[self.require(v)?])
    }

    pub fn is_self_loop(&self, e: EdgeId) -> bool {
        let [a, b] = self.ends[e.0];
        a == b
    }

    /// Incident edge endpoints at `v`; a self-loop counts twice.
    pub fn degree(&self, v: &VertexId) -> Result<usize, GraphError> {
        Ok(self.degree_idx(self.require(v)?))
    }

    pub(crate) fn degree_idx(&self, v: usize) -> usize {
        self.incidence[v]
            .iter()
            .map(|&e| if self.is_self_loop(e) { 2 } else { 1 })
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|i| self.degree_idx(i)).collect()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.vertex_count()).all(|i| self.degree_idx(i) == d)
    }

    /// Union of vertex sets; `other`'s edges are appended with fresh ids
    /// `self.edge_count()..`.
    pub fn union(&self, other: &MultiGraph) -> MultiGraph {
        let mut b = self.to_builder();
        for v in &other.labels {
            b.vertex(v.clone());
        }
        for &[x, y] in &other.ends {
            b.edge(other.labels[x].clone(), other.labels[y].clone());
        }
        b.build()
    }

    /// Connected components as ascending lists of vertex indices, ordered by
    /// smallest member.
    pub(crate) fn components_idx(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &self.incidence[v] {
                    let w = self.other_end(e, v);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_idx()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.labels[i].clone()).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components_idx().len() <= 1
    }

    /// Subgraph on `keep` with every edge between kept vertices. Edge ids are
    /// renumbered in ascending order of the original ids.
    pub fn induced<'a, I>(&self, keep: I) -> Result<MultiGraph, GraphError>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut mask = vec![false; self.vertex_count()];
        for v in keep {
            mask[self.require(v)?] = true;
        }
        let mut b = MultiGraphBuilder::new();
        for (i, v) in self.labels.iter().enumerate() {
            if mask[i] {
                b.vertex(v.clone());
            }
        }
        for &[x, y] in &self.ends {
            if mask[x] && mask[y] {
                b.edge(self.labels[x].clone(), self.labels[y].clone());
            }
        }
        Ok(b.build())
    }
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.ends.len() == other.ends.len()
            && self
                .ends
                .iter()
                .zip(&other.ends)
                .all(|(&[a, b], &[c, d])| (a, b) == (c, d) || (a, b) == (d, c))
    }
}

impl Eq for MultiGraph {}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .ends
            .iter()
            .enumerate()
            .map(|(e, &[a, b])| format!("{e}:{}-{}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("MultiGraph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_conventions() {
        let loop1 = MultiGraph::builder().edge("v", "v").build();
        assert_eq!(loop1.degree(&"v".into()).unwrap(), 2);

        let par = MultiGraph::builder().edges("a", "b", 2).build();
        assert_eq!(par.degree(&"a".into()).unwrap(), 2);
        assert_eq!(par.degree(&"b".into()).unwrap(), 2);
        assert!(par.degree(&"c".into()).is_err());
    }

    #[test]
    fn union_adds_parallel_copies() {
        let k2 = MultiGraph::builder().edge("a", "b").build();
        let u = k2.union(&k2);
        assert_eq!(u.edge_count(), 2);
        assert_eq!(u.vertex_count(), 2);
        assert_eq!(u.endpoints(EdgeId(1)).unwrap(), (&"a".into(), &"b".into()));

        let empty = MultiGraph::builder().build();
        assert_eq!(k2.union(&empty), k2);
    }

    #[test]
    fn components_and_induced() {
        let g = MultiGraph::builder()
            .edge("a", "b")
            .edge("b", "c")
            .edge("x", "y")
            .vertex("z")
            .build();
        assert_eq!(g.components().len(), 3);
        assert!(!g.is_connected());
        let h = g.induced(&["a".into(), "b".into()]).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert!(h.is_connected());
    }

    #[test]
    fn equality_ignores_endpoint_orientation() {
        let a = MultiGraph::builder().edge("a", "b").build();
        let b = MultiGraph::builder().edge("b", "a").build();
        assert_eq!(a, b);
    }
}
