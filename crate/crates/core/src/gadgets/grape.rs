use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::grid::{build_grid_gadget, outer_label, outer_primed_label};
use super::GadgetError;
use crate::graphs::{EdgeId, MultiGraph, MultiGraphBuilder, VertexId};
use crate::oracles::PairSet;

/// Synthetic vertex -> the input vertex it stands in for.
pub type Provenance = BTreeMap<VertexId, VertexId>;

/// Label prefixes the reductions use for the vertices they create.
const RESERVED_PREFIXES: [&str; 3] = ["grape:", "grid:", "pad:"];

fn check_unreserved(v: &VertexId) -> Result<(), GadgetError> {
    if RESERVED_PREFIXES.iter().any(|p| v.as_str().starts_with(p)) {
        return Err(GadgetError::ReservedLabel(v.clone()));
    }
    Ok(())
}

/// `x^u_e` and `x'^u_e` for side 0 (the demand's first endpoint), `x^v_e`
/// and `x'^v_e` for side 1.
fn grape_label(e: EdgeId, side: usize, primed: bool) -> VertexId {
    let mark = if primed { "'" } else { "" };
    VertexId::new(format!("grape:x{mark}[e{}.{side}]", e.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrapeExpansion {
    pub graph: MultiGraph,
    /// One pair `(x'^u_e, x'^v_e)` per demand edge, in demand order.
    pub pairs: PairSet,
    pub provenance: Provenance,
}

/// Replaces each demand edge `e = (u, v)` by the chain
/// `u - x^u_e ≡ x'^u_e   x'^v_e ≡ x^v_e - v` (≡ a triple edge) and the
/// terminal pair `(x'^u_e, x'^v_e)`.
///
/// Edge ids of `g` are kept; each demand adds 8 edges after them, in demand
/// order.
pub fn grape_expand(g: &MultiGraph, d: &MultiGraph) -> Result<GrapeExpansion, GadgetError> {
    for v in g.vertices() {
        check_unreserved(v)?;
    }
    for v in d.vertices() {
        if !g.contains(v) {
            return Err(GadgetError::DemandVertexMissing(v.clone()));
        }
    }
    for v in g.vertices() {
        let total = g.degree_idx(g.index_of(v).expect("own vertex"))
            + d.degree(v).unwrap_or(0);
        if total % 2 == 1 {
            return Err(GadgetError::OddDegree(v.clone(), total));
        }
    }
    let mut b = g.to_builder();
    let mut pairs = Vec::with_capacity(d.edge_count());
    let mut provenance = Provenance::new();
    for e in d.edge_ids() {
        let (u, v) = d.endpoints(e).expect("own edge");
        let (xu, xpu) = (grape_label(e, 0, false), grape_label(e, 0, true));
        let (xv, xpv) = (grape_label(e, 1, false), grape_label(e, 1, true));
        b.edge(u.clone(), xu.clone())
            .edges(xu.clone(), xpu.clone(), 3)
            .edges(xpv.clone(), xv.clone(), 3)
            .edge(xv.clone(), v.clone());
        for (x, o) in [(&xu, u), (&xpu, u), (&xpv, v), (&xv, v)] {
            provenance.insert(x.clone(), o.clone());
        }
        pairs.push((xpu, xpv));
    }
    let pairs = PairSet::new(pairs)?;
    Ok(GrapeExpansion {
        graph: b.build(),
        pairs,
        provenance,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Regularized {
    /// Supply graph; together with the pairs it is 4-regular, so terminals
    /// have degree 3 here and every other vertex degree 4.
    pub graph: MultiGraph,
    pub pairs: PairSet,
    pub provenance: Provenance,
    /// Vertices that received a padding self-loop.
    pub padded: Vec<VertexId>,
    /// Replaced vertices with their gadget half-degree.
    pub gadgets: Vec<(VertexId, usize)>,
}

/// Makes `g ∪ pairs` 4-regular.
///
/// * Edges of `g` keep their ids, with endpoints at replaced vertices moved
///   onto gadget boundaries.
/// * A vertex of total degree `2n > 4` becomes an `n`-gadget; its incident
///   edges are attached to `v_1 .. v_n, v_1' .. v_n'` in ascending id order,
///   a self-loop filling two consecutive slots.
/// * Padding loops follow (in vertex order), then gadget edges.
/// * Isolated vertices are dropped.
pub fn regularize(g: &MultiGraph, pairs: &PairSet) -> Result<Regularized, GadgetError> {
    let terminals = pairs.vertices();
    let total = |i: usize| g.degree_idx(i) + usize::from(terminals.contains(g.label(i)));
    for t in &terminals {
        let i = g.index_of(t).ok_or_else(|| GadgetError::DemandVertexMissing(t.clone()))?;
        if total(i) != 4 {
            return Err(GadgetError::TerminalDegree(t.clone(), total(i)));
        }
    }
    let mut half = vec![0usize; g.vertex_count()];
    for i in 0..g.vertex_count() {
        let d = total(i);
        if d % 2 == 1 {
            return Err(GadgetError::OddDegree(g.label(i).clone(), d));
        }
        half[i] = d / 2;
    }

    let mut b = MultiGraphBuilder::new();
    for i in 0..g.vertex_count() {
        if half[i] == 1 || half[i] == 2 {
            b.vertex(g.label(i).clone());
        }
    }
    let mut cursor = vec![0usize; g.vertex_count()];
    let mut end_label = |i: usize| -> VertexId {
        let n = half[i];
        if n <= 2 {
            return g.label(i).clone();
        }
        let slot = cursor[i];
        cursor[i] += 1;
        if slot < n {
            outer_label(g.label(i), slot + 1)
        } else {
            outer_primed_label(g.label(i), slot - n + 1)
        }
    };
    for e in g.edge_ids() {
        let [a, c] = g.ends_idx(e);
        let la = end_label(a);
        let lc = end_label(c);
        b.edge(la, lc);
    }
    let mut padded = Vec::new();
    for i in 0..g.vertex_count() {
        if half[i] == 1 {
            b.edge(g.label(i).clone(), g.label(i).clone());
            padded.push(g.label(i).clone());
        }
    }
    let mut provenance = Provenance::new();
    let mut gadgets = Vec::new();
    for i in 0..g.vertex_count() {
        if half[i] <= 2 {
            continue;
        }
        let gg = build_grid_gadget(g.label(i), half[i])?;
        let inner = gg.graph();
        for e in inner.edge_ids() {
            let (x, y) = inner.endpoints(e).expect("own edge");
            b.edge(x.clone(), y.clone());
        }
        for v in inner.vertices() {
            provenance.insert(v.clone(), g.label(i).clone());
        }
        gadgets.push((g.label(i).clone(), half[i]));
    }
    Ok(Regularized {
        graph: b.build(),
        pairs: pairs.clone(),
        provenance,
        padded,
        gadgets,
    })
}

/// [`grape_expand`] followed by [`regularize`]. Provenance points back to
/// vertices of `g`.
pub fn reduce_edp_to_4reg_edpdt(g: &MultiGraph, d: &MultiGraph) -> Result<Regularized, GadgetError> {
    let grape = grape_expand(g, d)?;
    let mut reg = regularize(&grape.graph, &grape.pairs)?;
    for origin in reg.provenance.values_mut() {
        if let Some(o) = grape.provenance.get(origin) {
            *origin = o.clone();
        }
    }
    for (x, o) in grape.provenance {
        if reg.graph.contains(&x) {
            reg.provenance.insert(x, o);
        }
    }
    Ok(reg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{decide_edp, decide_edpdt, validate_edpdt};

    fn three_demand() -> (MultiGraph, MultiGraph) {
        let g = MultiGraph::builder()
            .edge("a", "c")
            .edge("d", "b")
            .edge("b", "c")
            .edge("d", "e")
            .edge("e", "f")
            .build();
        let d = MultiGraph::builder()
            .edge("c", "a")
            .edge("c", "d")
            .edge("f", "d")
            .build();
        (g, d)
    }

    #[test]
    fn one_demand_adds_four_vertices_and_eight_edges() {
        let g = MultiGraph::builder().edge("u", "w").edge("w", "v").build();
        let d = MultiGraph::builder().edge("u", "v").build();
        let x = grape_expand(&g, &d).unwrap();
        assert_eq!(x.graph.vertex_count(), 7);
        assert_eq!(x.graph.edge_count(), 10);
        assert_eq!(x.pairs.len(), 1);
        let (a, b) = &x.pairs.pairs()[0];
        assert_eq!(x.graph.degree(a).unwrap() + 1, 4);
        assert_eq!(x.graph.degree(b).unwrap() + 1, 4);
        assert_eq!(x.provenance[a], VertexId::from("u"));
        // original edges keep their ids
        assert_eq!(
            x.graph.endpoints(EdgeId(0)).unwrap(),
            (&VertexId::from("u"), &VertexId::from("w"))
        );
    }

    #[test]
    fn empty_demand_is_identity() {
        let (g, _) = three_demand();
        let d = MultiGraph::builder().build();
        // three_demand supply alone has odd degrees
        assert!(matches!(grape_expand(&g, &d), Err(GadgetError::OddDegree(..))));
        let ring = MultiGraph::builder().edge("a", "b").edge("b", "c").edge("c", "a").build();
        let x = grape_expand(&ring, &d).unwrap();
        assert_eq!(x.graph, ring);
        assert!(x.pairs.is_empty());
        let r = reduce_edp_to_4reg_edpdt(&ring, &d).unwrap();
        assert!(r.graph.is_regular(4));
        assert_eq!(r.padded.len(), 3);
    }

    #[test]
    fn four_regular_input_unchanged() {
        let g = MultiGraph::builder().edges("a", "b", 2).edges("b", "c", 2).edges("c", "a", 2).build();
        let r = regularize(&g, &PairSet::empty()).unwrap();
        assert_eq!(r.graph, g);
        assert!(r.padded.is_empty() && r.gadgets.is_empty());
    }

    #[test]
    fn degree_six_becomes_fifteen_vertex_gadget() {
        // hub of degree 6 with three loops through leaves a, b, c
        let g = MultiGraph::builder()
            .edges("h", "a", 2)
            .edges("h", "b", 2)
            .edges("h", "c", 2)
            .build();
        let r = regularize(&g, &PairSet::empty()).unwrap();
        assert_eq!(r.gadgets, vec![(VertexId::from("h"), 3)]);
        assert_eq!(r.graph.vertex_count(), 3 + 15);
        assert!(r.graph.is_regular(4));
        assert!(!r.graph.contains(&"h".into()));
        // first incident edge lands on v_1, fourth on v_1'
        let (x, y) = r.graph.endpoints(EdgeId(0)).unwrap();
        assert!([x, y].contains(&&outer_label(&"h".into(), 1)));
        let (x, y) = r.graph.endpoints(EdgeId(3)).unwrap();
        assert!([x, y].contains(&&outer_primed_label(&"h".into(), 1)));
    }

    #[test]
    fn self_loop_fills_two_slots() {
        let g = MultiGraph::builder()
            .edge("h", "h")
            .edges("h", "a", 2)
            .edges("h", "b", 2)
            .build();
        let r = regularize(&g, &PairSet::empty()).unwrap();
        let (x, y) = r.graph.endpoints(EdgeId(0)).unwrap();
        let mut got = [x.clone(), y.clone()];
        got.sort();
        let mut want = [outer_label(&"h".into(), 1), outer_label(&"h".into(), 2)];
        want.sort();
        assert_eq!(got, want);
        assert!(r.graph.is_regular(4));
    }

    #[test]
    fn odd_and_bad_terminals_rejected() {
        let g = MultiGraph::builder().edge("a", "b").build();
        assert!(matches!(
            regularize(&g, &PairSet::empty()),
            Err(GadgetError::OddDegree(..))
        ));
        let g = MultiGraph::builder().edges("a", "b", 3).build();
        let t = PairSet::from_labels([("a", "b")]).unwrap();
        regularize(&g, &t).unwrap();
        let g = MultiGraph::builder().edges("a", "b", 1).build();
        assert!(matches!(
            regularize(&g, &t),
            Err(GadgetError::TerminalDegree(..))
        ));
        let bad = MultiGraph::builder().edges("grid:x", "b", 2).build();
        assert!(matches!(
            grape_expand(&bad, &MultiGraph::builder().build()),
            Err(GadgetError::ReservedLabel(_))
        ));
    }

    #[test]
    fn three_demand_reduces_to_yes_instance() {
        let (g, d) = three_demand();
        assert!(decide_edp(&g, &d).unwrap().is_yes());
        let r = reduce_edp_to_4reg_edpdt(&g, &d).unwrap();
        validate_edpdt(&r.graph, &r.pairs).unwrap();
        assert_eq!(r.pairs.len(), 3);
        assert!(decide_edpdt(&r.graph, &r.pairs).unwrap().is_yes());
    }

    #[test]
    fn disconnected_demand_stays_no() {
        let g = MultiGraph::builder().edges("a", "b", 2).edges("c", "e", 2).build();
        let d = MultiGraph::builder().edges("a", "c", 2).build();
        assert!(!decide_edp(&g, &d).unwrap().is_yes());
        let r = reduce_edp_to_4reg_edpdt(&g, &d).unwrap();
        validate_edpdt(&r.graph, &r.pairs).unwrap();
        assert!(!decide_edpdt(&r.graph, &r.pairs).unwrap().is_yes());
    }
}
