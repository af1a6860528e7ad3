//! From 4-regular EDPDT to the Bell-pair vertex-minor problem.
//!
//! Each terminal pair `(t_i, t_i')` gets pad vertices `p_i, p_i'` joined to
//! it, a double edge `p_i = p_i'`, and the pads are closed into a ring
//! `p_1' - p_2, .., p_k' - p_1`. The resulting graph `H(G,T)` is 4-regular;
//! the circle graph of any of its Eulerian tours has the Bell pairs
//! `{p_i, p_i'}` as a vertex-minor exactly when the terminals can be joined
//! by edge-disjoint paths.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circle::{extend_to_eulerian, find_eulerian_tour, induced_word, CircleError, EulerianTour};
use crate::gadgets::{GadgetError, Provenance};
use crate::graphs::{EdgeId, GraphError, LabeledGraph, MultiGraph, MultiGraphBuilder, VertexId, Walk};
use crate::oracles::verify::{verify_paths, CertificateError};
use crate::oracles::{validate_edpdt, OracleError, PairSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("witness paths rejected: {0}")]
    Certificate(#[from] CertificateError),
    #[error("pad ring: {0}")]
    PadRing(String),
}

pub fn pad_label(i: usize) -> VertexId {
    VertexId::new(format!("pad:p{i}"))
}

pub fn pad_primed_label(i: usize) -> VertexId {
    VertexId::new(format!("pad:p{i}'"))
}

/// `{p_i, p_i'}` for `i = 1..=k`.
pub fn pad_pairs(k: usize) -> PairSet {
    PairSet::new((1..=k).map(|i| (pad_label(i), pad_primed_label(i))).collect())
        .expect("distinct pad labels")
}

/// A Bell-pair vertex-minor question.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellVmInstance {
    pub graph: LabeledGraph,
    pub pairs: PairSet,
}

impl BellVmInstance {
    pub fn new(graph: LabeledGraph, pairs: PairSet) -> Result<Self, ReductionError> {
        for v in pairs.vertices() {
            if !graph.contains(&v) {
                return Err(OracleError::PairVertexMissing(v).into());
            }
        }
        Ok(BellVmInstance { graph, pairs })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaddedGraph {
    /// `H(G,T)`.
    pub graph: MultiGraph,
    /// `(p_i, p_i')` in pair order.
    pub pads: PairSet,
    /// Edge of the input -> edge of `graph`; `None` if dropped.
    pub edge_map: Vec<Option<EdgeId>>,
    /// Input vertices in components without terminals, left out of `graph`.
    pub dropped: Vec<VertexId>,
    /// Pad vertex -> the terminal it hangs off.
    pub provenance: Provenance,
    pub(crate) pad_edges: Vec<PadEdges>,
    pub(crate) ring: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct PadEdges {
    to_t: EdgeId,
    to_t_primed: EdgeId,
    double: [EdgeId; 2],
}

/// Builds `H(G,T)`. The instance must have the 4-regular EDPDT degree
/// profile. Components of `g` without terminals are dropped (listed in
/// [`PaddedGraph::dropped`]) so the result is connected.
///
/// Edges of `g` come first in their original order, then per pair
/// `(t_i,p_i)`, `(t_i',p_i')` and the double edge, then the ring.
pub fn build_h_graph(g: &MultiGraph, t: &PairSet) -> Result<PaddedGraph, ReductionError> {
    validate_edpdt(g, t)?;
    if let Some(v) = g.vertices().iter().find(|v| v.as_str().starts_with("pad:")) {
        return Err(GadgetError::ReservedLabel(v.clone()).into());
    }
    let terminals = t.vertices();
    let mut keep = vec![false; g.vertex_count()];
    let mut dropped = Vec::new();
    for comp in g.components_idx() {
        let live = comp.iter().any(|&i| terminals.contains(g.label(i)));
        for &i in &comp {
            keep[i] = live;
            if !live {
                dropped.push(g.label(i).clone());
            }
        }
    }
    dropped.sort();

    let mut b = MultiGraphBuilder::new();
    for (i, v) in g.vertices().iter().enumerate() {
        if keep[i] {
            b.vertex(v.clone());
        }
    }
    let mut edge_map = Vec::with_capacity(g.edge_count());
    for e in g.edge_ids() {
        let [x, y] = g.ends_idx(e);
        if keep[x] {
            edge_map.push(Some(EdgeId(b.edge_count())));
            b.edge(g.label(x).clone(), g.label(y).clone());
        } else {
            edge_map.push(None);
        }
    }
    let k = t.len();
    let mut pad_edges = Vec::with_capacity(k);
    let mut provenance = Provenance::new();
    for (i, (ti, tpi)) in t.iter().enumerate() {
        let (p, pp) = (pad_label(i + 1), pad_primed_label(i + 1));
        let base = b.edge_count();
        b.edge(ti.clone(), p.clone())
            .edge(tpi.clone(), pp.clone())
            .edges(p.clone(), pp.clone(), 2);
        pad_edges.push(PadEdges {
            to_t: EdgeId(base),
            to_t_primed: EdgeId(base + 1),
            double: [EdgeId(base + 2), EdgeId(base + 3)],
        });
        provenance.insert(p, ti.clone());
        provenance.insert(pp, tpi.clone());
    }
    let mut ring = Vec::with_capacity(k);
    for i in 1..=k {
        ring.push(EdgeId(b.edge_count()));
        b.edge(pad_primed_label(i), pad_label(i % k + 1));
    }
    Ok(PaddedGraph {
        graph: b.build(),
        pads: pad_pairs(k),
        edge_map,
        dropped,
        provenance,
        pad_edges,
        ring,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BellVmReduction {
    pub instance: BellVmInstance,
    pub padded: PaddedGraph,
    /// The Hierholzer tour of `H(G,T)` whose circle graph is emitted;
    /// `None` when there are no terminals and `H(G,T)` is empty.
    pub tour: Option<EulerianTour>,
}

/// Pads the instance, takes the Hierholzer tour of `H(G,T)` and returns its
/// circle graph with the pad pairs as Bell targets.
pub fn reduce_edpdt_to_bellvm(g: &MultiGraph, t: &PairSet) -> Result<BellVmReduction, ReductionError> {
    let padded = build_h_graph(g, t)?;
    if padded.graph.vertex_count() == 0 {
        // no terminals: every component was dropped, the empty question is YES
        let instance = BellVmInstance::new(LabeledGraph::empty(Vec::<VertexId>::new())?, PairSet::empty())?;
        return Ok(BellVmReduction {
            instance,
            padded,
            tour: None,
        });
    }
    let tour = find_eulerian_tour(&padded.graph)?;
    let word = induced_word(&tour)?;
    let instance = BellVmInstance::new(word.alternance_graph(), padded.pads.clone())?;
    Ok(BellVmReduction {
        instance,
        padded,
        tour: Some(tour),
    })
}

/// The closed trail
/// `p_1 p_1' p_1 t_1 .. t_1' p_1' p_2 p_2' p_2 t_2 .. t_k' p_k' p_1`
/// through `H(G,T)`, where `t_i .. t_i'` is `paths[i]` (oriented either
/// way). The paths are checked against `g` first.
pub fn witness_tour(g: &MultiGraph, t: &PairSet, h: &PaddedGraph, paths: &[Walk]) -> Result<Walk, ReductionError> {
    verify_paths(g, t.pairs(), paths, false)?;
    if h.pad_edges.len() != t.len() {
        return Err(ReductionError::PadRing("padded graph built for another pair set".into()));
    }
    let mut w = Walk::at(pad_label(1));
    if t.is_empty() {
        return Ok(w);
    }
    for (i, ((ti, _), path)) in t.iter().zip(paths).enumerate() {
        let pe = &h.pad_edges[i];
        let (p, pp) = (pad_label(i + 1), pad_primed_label(i + 1));
        let step = |w: &mut Walk, e: EdgeId, v: &VertexId| {
            w.edges.push(e);
            w.vertices.push(v.clone());
        };
        step(&mut w, pe.double[0], &pp);
        step(&mut w, pe.double[1], &p);
        step(&mut w, pe.to_t, ti);
        let oriented = if path.start() == ti { path.clone() } else { path.reversed() };
        for (e, v) in oriented.edges.iter().zip(&oriented.vertices[1..]) {
            let mapped = h.edge_map[e.0].ok_or_else(|| {
                ReductionError::PadRing(format!("path edge {e} lies in a dropped component"))
            })?;
            step(&mut w, mapped, v);
        }
        step(&mut w, pe.to_t_primed, &pp);
        step(&mut w, h.ring[i], &pad_label((i + 1) % t.len() + 1));
    }
    Ok(w)
}

/// Letters of [`witness_tour`] (the closing `p_1` left off).
pub fn witness_tour_word(
    g: &MultiGraph,
    t: &PairSet,
    h: &PaddedGraph,
    paths: &[Walk],
) -> Result<Vec<VertexId>, ReductionError> {
    let mut w = witness_tour(g, t, h, paths)?;
    w.vertices.pop();
    Ok(w.vertices)
}

/// [`witness_tour`] extended to an Eulerian tour of `H(G,T)`.
pub fn witness_eulerian_tour(
    g: &MultiGraph,
    t: &PairSet,
    h: &PaddedGraph,
    paths: &[Walk],
) -> Result<EulerianTour, ReductionError> {
    let partial = witness_tour(g, t, h, paths)?;
    Ok(extend_to_eulerian(&h.graph, &partial)?)
}

/// The doubled pad cycle on `p_1, p_1', .., p_k, p_k'` plus `extra`, which
/// must give every pad vertex degree 4 (so `extra` is a perfect matching of
/// the pad vertices).
pub fn pad_ring_graph(k: usize, extra: &[(VertexId, VertexId)]) -> Result<MultiGraph, ReductionError> {
    if k == 0 {
        return Err(ReductionError::PadRing("needs at least one pair".into()));
    }
    let mut b = MultiGraphBuilder::new();
    for i in 1..=k {
        b.edges(pad_label(i), pad_primed_label(i), 2);
    }
    for i in 1..=k {
        b.edge(pad_primed_label(i), pad_label(i % k + 1));
    }
    let pads: BTreeSet<VertexId> = (1..=k).flat_map(|i| [pad_label(i), pad_primed_label(i)]).collect();
    for (a, c) in extra {
        for v in [a, c] {
            if !pads.contains(v) {
                return Err(ReductionError::PadRing(format!("`{v}` is not a pad vertex for k = {k}")));
            }
        }
        b.edge(a.clone(), c.clone());
    }
    let h = b.build();
    if let Some(i) = h.degrees().iter().position(|&d| d != 4) {
        return Err(ReductionError::PadRing(format!(
            "`{}` has degree {} after adding the extra edges",
            h.label(i),
            h.degrees()[i]
        )));
    }
    Ok(h)
}

/// Whether the circle graphs of the pad ring closed by `extra` equal the
/// Bell-pair graph: true exactly when every extra edge joins some `p_i` to
/// its own `p_i'`.
pub fn check_pad_ring(k: usize, extra: &[(VertexId, VertexId)]) -> Result<bool, ReductionError> {
    pad_ring_graph(k, extra)?;
    Ok(extra.iter().all(|(a, c)| {
        (1..=k).any(|i| {
            let (p, pp) = (pad_label(i), pad_primed_label(i));
            (a == &p && c == &pp) || (a == &pp && c == &p)
        })
    }))
}

/// Every perfect matching of the `2k` pad vertices, each as an edge list.
pub fn all_pad_matchings(k: usize) -> Vec<Vec<(VertexId, VertexId)>> {
    let pads: Vec<VertexId> = (1..=k).flat_map(|i| [pad_label(i), pad_primed_label(i)]).collect();
    let mut out = Vec::new();
    fn rec(rest: Vec<VertexId>, cur: &mut Vec<(VertexId, VertexId)>, out: &mut Vec<Vec<(VertexId, VertexId)>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for j in 1..rest.len() {
            cur.push((rest[0].clone(), rest[j].clone()));
            let next = rest[1..].iter().enumerate().filter(|&(i, _)| i + 1 != j).map(|(_, v)| v.clone()).collect();
            rec(next, cur, out);
            cur.pop();
        }
    }
    rec(pads, &mut Vec::new(), &mut out);
    out
}
