//! Eulerian tours, the double-occurrence words they induce, and alternance
//! (circle) graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graphs::{EdgeId, LabeledGraph, MultiGraph, VertexId, Walk, WalkError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircleError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected: `{0}` and `{1}` lie in different components")]
    Disconnected(VertexId, VertexId),
    #[error("vertex `{0}` has odd degree {1}")]
    OddDegree(VertexId, usize),
    #[error("partial tour invalid: {0}")]
    InvalidPartial(WalkError),
    #[error("partial tour is empty and names no start vertex")]
    EmptyPartial,
    #[error("cannot extend: {0} edges unreachable from the partial tour (e.g. at `{1}`)")]
    Unreachable(usize, VertexId),
    #[error("letter `{0}` occurs {1} times")]
    NotDoubleOccurrence(VertexId, usize),
    #[error("not an Eulerian tour of its host: {0}")]
    InvalidTour(String),
}

/// Closed walk on a host multigraph using every edge exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianTour(Walk);

impl EulerianTour {
    /// Checks that `walk` is closed, edge-simple and covers all of `host`.
    pub fn new(host: &MultiGraph, walk: Walk) -> Result<Self, CircleError> {
        walk.validate_closed(host)
            .map_err(|e| CircleError::InvalidTour(e.to_string()))?;
        if walk.edges.len() != host.edge_count() {
            return Err(CircleError::InvalidTour(format!(
                "uses {} of {} edges",
                walk.edges.len(),
                host.edge_count()
            )));
        }
        if host.edge_count() == 0 && host.vertex_count() > 1 {
            return Err(CircleError::InvalidTour("host has several vertices but no edges".into()));
        }
        Ok(EulerianTour(walk))
    }

    pub fn walk(&self) -> &Walk {
        &self.0
    }

    pub fn into_walk(self) -> Walk {
        self.0
    }

    /// Vertex sequence without the closing repeat of the start vertex.
    pub fn letters(&self) -> &[VertexId] {
        &self.0.vertices[..self.0.vertices.len() - 1]
    }
}

/// Word in which every letter occurs exactly twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleOccurrenceWord(Vec<VertexId>);

impl DoubleOccurrenceWord {
    pub fn new(letters: Vec<VertexId>) -> Result<Self, CircleError> {
        let mut counts: BTreeMap<&VertexId, usize> = BTreeMap::new();
        for l in &letters {
            *counts.entry(l).or_default() += 1;
        }
        if let Some((l, &c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(CircleError::NotDoubleOccurrence((*l).clone(), c));
        }
        Ok(DoubleOccurrenceWord(letters))
    }

    /// Parses whitespace-separated labels; a single token without spaces is
    /// read one character per letter (`"adcbaebced"`).
    pub fn parse(s: &str) -> Result<Self, CircleError> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let letters = if toks.len() == 1 {
            toks[0].chars().map(|c| VertexId::new(c.to_string())).collect()
        } else {
            toks.into_iter().map(VertexId::from).collect()
        };
        Self::new(letters)
    }

    pub fn letters(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct letters in ascending order.
    pub fn alphabet(&self) -> BTreeSet<VertexId> {
        self.0.iter().cloned().collect()
    }

    /// Subword keeping only letters in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> DoubleOccurrenceWord {
        DoubleOccurrenceWord(self.0.iter().filter(|l| keep.contains(*l)).cloned().collect())
    }

    /// Graph on the letters with an edge for every alternating pair
    /// `..u..v..u..v..`.
    pub fn alternance_graph(&self) -> LabeledGraph {
        let mut pos: BTreeMap<&VertexId, (usize, usize)> = BTreeMap::new();
        for (i, l) in self.0.iter().enumerate() {
            pos.entry(l).and_modify(|p| p.1 = i).or_insert((i, i));
        }
        let spans: Vec<(&VertexId, (usize, usize))> = pos.into_iter().collect();
        let mut edges = Vec::new();
        for (a, &(ua, (fa, sa))) in spans.iter().enumerate() {
            for &(ub, (fb, sb)) in &spans[a + 1..] {
                let inside = |x: usize| fa < x && x < sa;
                if inside(fb) != inside(sb) {
                    edges.push((ua.clone(), ub.clone()));
                }
            }
        }
        LabeledGraph::new(spans.iter().map(|(l, _)| (*l).clone()), edges)
            .expect("letters are distinct")
    }
}

impl fmt::Display for DoubleOccurrenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(VertexId::as_str).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Alternance graph of a raw letter sequence, rejecting non-double-occurrence
/// words.
pub fn alternance_graph(word: &[VertexId]) -> Result<LabeledGraph, CircleError> {
    Ok(DoubleOccurrenceWord::new(word.to_vec())?.alternance_graph())
}

pub fn restrict_word(word: &DoubleOccurrenceWord, keep: &BTreeSet<VertexId>) -> DoubleOccurrenceWord {
    word.restrict(keep)
}

/// The tour's vertex sequence with the final return to the start dropped.
///
/// Only tours of 4-regular hosts are guaranteed to give a double-occurrence
/// word; anything else is reported as an error.
pub fn induced_word(tour: &EulerianTour) -> Result<DoubleOccurrenceWord, CircleError> {
    DoubleOccurrenceWord::new(tour.letters().to_vec())
}

fn check_eulerian(f: &MultiGraph) -> Result<(), CircleError> {
    if f.vertex_count() == 0 {
        return Err(CircleError::Empty);
    }
    for (i, d) in f.degrees().into_iter().enumerate() {
        if d % 2 == 1 {
            return Err(CircleError::OddDegree(f.label(i).clone(), d));
        }
    }
    let comps = f.components_idx();
    if comps.len() > 1 {
        return Err(CircleError::Disconnected(
            f.label(comps[0][0]).clone(),
            f.label(comps[1][0]).clone(),
        ));
    }
    Ok(())
}

/// Greedy closed trail from `start` taking the smallest unused incident edge
/// at each step. Requires all unused degrees to be even.
fn greedy_circuit(
    f: &MultiGraph,
    start: usize,
    used: &mut [bool],
    cursor: &mut [usize],
) -> Vec<(EdgeId, usize)> {
    let mut out = Vec::new();
    let mut v = start;
    loop {
        let inc = f.incident_idx(v);
        while cursor[v] < inc.len() && used[inc[cursor[v]].0] {
            cursor[v] += 1;
        }
        if cursor[v] == inc.len() {
            break;
        }
        let e = inc[cursor[v]];
        used[e.0] = true;
        v = f.other_end(e, v);
        out.push((e, v));
    }
    debug_assert_eq!(v, start);
    out
}

/// Splices circuits of unused edges into `base` (a closed step sequence
/// starting at `start`) at the first vertex occurrence where unused edges
/// remain, scanning left to right. Unused edges in components the sequence
/// never touches stay unused.
pub(crate) fn splice_remaining(
    f: &MultiGraph,
    start: usize,
    mut steps: Vec<(EdgeId, usize)>,
    used: &mut [bool],
) -> Vec<(EdgeId, usize)> {
    let mut cursor = vec![0usize; f.vertex_count()];
    let mut i = 0;
    loop {
        let v = if i == 0 { start } else { steps[i - 1].1 };
        let sub = greedy_circuit(f, v, used, &mut cursor);
        if !sub.is_empty() {
            steps.splice(i..i, sub);
            continue;
        }
        if i == steps.len() {
            break;
        }
        i += 1;
    }
    steps
}

fn to_walk(f: &MultiGraph, start: usize, steps: &[(EdgeId, usize)]) -> Walk {
    let mut vertices = Vec::with_capacity(steps.len() + 1);
    vertices.push(f.label(start).clone());
    vertices.extend(steps.iter().map(|&(_, v)| f.label(v).clone()));
    Walk {
        vertices,
        edges: steps.iter().map(|&(e, _)| e).collect(),
    }
}

/// Hierholzer's construction from the smallest vertex, consuming unused
/// incident edges in ascending id order.
pub fn find_eulerian_tour(f: &MultiGraph) -> Result<EulerianTour, CircleError> {
    check_eulerian(f)?;
    let mut used = vec![false; f.edge_count()];
    let steps = splice_remaining(f, 0, Vec::new(), &mut used);
    Ok(EulerianTour(to_walk(f, 0, &steps)))
}

/// Extends a closed trail to an Eulerian tour by splicing circuits of the
/// remaining edges into it. The partial trail survives as an ordered
/// subsequence of the result.
pub fn extend_to_eulerian(f: &MultiGraph, partial: &Walk) -> Result<EulerianTour, CircleError> {
    if partial.vertices.is_empty() {
        return Err(CircleError::EmptyPartial);
    }
    partial.validate_closed(f).map_err(CircleError::InvalidPartial)?;
    let mut used = vec![false; f.edge_count()];
    for e in &partial.edges {
        used[e.0] = true;
    }
    let mut rem_deg = vec![0usize; f.vertex_count()];
    for e in f.edge_ids().filter(|e| !used[e.0]) {
        let [a, b] = f.ends_idx(e);
        rem_deg[a] += 1;
        rem_deg[b] += 1;
    }
    if let Some(v) = rem_deg.iter().position(|d| d % 2 == 1) {
        return Err(CircleError::OddDegree(f.label(v).clone(), rem_deg[v]));
    }
    let start = f.index_of(partial.start()).expect("validated");
    let base: Vec<(EdgeId, usize)> = partial
        .edges
        .iter()
        .zip(&partial.vertices[1..])
        .map(|(&e, v)| (e, f.index_of(v).expect("validated")))
        .collect();
    let steps = splice_remaining(f, start, base, &mut used);
    if let Some(e) = f.edge_ids().find(|e| !used[e.0]) {
        let missing = used.iter().filter(|u| !**u).count();
        let [a, _] = f.ends_idx(e);
        return Err(CircleError::Unreachable(missing, f.label(a).clone()));
    }
    let walk = to_walk(f, start, &steps);
    EulerianTour::new(f, walk)
}

/// Visits every Eulerian tour of `f` that starts with edge 0 (both
/// traversal directions), i.e. one representative per rotation class of
/// oriented tours. The visitor returns `false` to stop early.
///
/// Returns the number of tours visited.
pub fn for_each_eulerian_tour<F>(f: &MultiGraph, mut visit: F) -> Result<usize, CircleError>
where
    F: FnMut(&Walk) -> bool,
{
    check_eulerian(f)?;
    if f.edge_count() == 0 {
        let w = Walk::at(f.label(0).clone());
        visit(&w);
        return Ok(1);
    }
    let m = f.edge_count();
    let mut used = vec![false; m];
    let mut edges = Vec::with_capacity(m);
    let mut verts = Vec::with_capacity(m + 1);
    let mut count = 0usize;
    let [a, b] = f.ends_idx(EdgeId(0));
    let starts: Vec<(usize, usize)> = if a == b { vec![(a, b)] } else { vec![(a, b), (b, a)] };

    struct Ctx<'a, F> {
        f: &'a MultiGraph,
        used: &'a mut Vec<bool>,
        edges: &'a mut Vec<EdgeId>,
        verts: &'a mut Vec<usize>,
        count: &'a mut usize,
        visit: &'a mut F,
    }

    fn dfs<F: FnMut(&Walk) -> bool>(c: &mut Ctx<'_, F>, v: usize) -> bool {
        if c.edges.len() == c.used.len() {
            let walk = Walk {
                vertices: c.verts.iter().map(|&i| c.f.label(i).clone()).collect(),
                edges: c.edges.clone(),
            };
            *c.count += 1;
            return (c.visit)(&walk);
        }
        for &e in c.f.incident_idx(v) {
            if c.used[e.0] {
                continue;
            }
            let w = c.f.other_end(e, v);
            c.used[e.0] = true;
            c.edges.push(e);
            c.verts.push(w);
            let go_on = dfs(c, w);
            c.verts.pop();
            c.edges.pop();
            c.used[e.0] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    for (s, t) in starts {
        used[0] = true;
        edges.push(EdgeId(0));
        verts.push(s);
        verts.push(t);
        let mut ctx = Ctx {
            f,
            used: &mut used,
            edges: &mut edges,
            verts: &mut verts,
            count: &mut count,
            visit: &mut visit,
        };
        let go_on = dfs(&mut ctx, t);
        verts.clear();
        edges.clear();
        used[0] = false;
        if !go_on {
            break;
        }
    }
    Ok(count)
}

/// All Eulerian tours in the representative form of
/// [`for_each_eulerian_tour`].
pub fn enumerate_eulerian_tours(f: &MultiGraph) -> Result<Vec<EulerianTour>, CircleError> {
    let mut out = Vec::new();
    for_each_eulerian_tour(f, |w| {
        out.push(EulerianTour(w.clone()));
        true
    })?;
    Ok(out)
}
