//! Reduction from Eulerian edge-disjoint paths to 4-regular edge-disjoint
//! paths with distinct terminals.
//!
//! [`grape_expand`] turns every demand edge into a terminal pair hanging off
//! triple edges, [`regularize`] pads degree-2 vertices with a self-loop and
//! replaces vertices of degree above 4 by a [`GridGadget`].

mod grape;
mod grid;

pub use grape::{
    grape_expand, reduce_edp_to_4reg_edpdt, regularize, GrapeExpansion, Provenance, Regularized,
};
pub use grid::{
    all_pairings, build_grid_gadget, inner_label, outer_label, outer_primed_label, random_pairing,
    route_pairing, GadgetRouting, GridGadget, Pairing, Terminal,
};

use thiserror::Error;

use crate::graphs::{GraphError, VertexId};
use crate::oracles::OracleError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("grid gadget needs half-degree at least 1, got {0}")]
    HalfDegree(usize),
    #[error("interval [{from}, {to}] on line {line} is out of range for n = {n}")]
    Interval {
        line: usize,
        from: usize,
        to: usize,
        n: usize,
    },
    #[error("invalid pairing: {0}")]
    Pairing(String),
    #[error("routing failed: {0}")]
    Routing(String),
    #[error("demand vertex `{0}` is not in the supply graph")]
    DemandVertexMissing(VertexId),
    #[error("vertex `{0}` has odd degree {1} in supply plus demand")]
    OddDegree(VertexId, usize),
    #[error("terminal `{0}` has degree {1} in supply plus demand, expected 4")]
    TerminalDegree(VertexId, usize),
    #[error("label `{0}` is reserved for gadget vertices")]
    ReservedLabel(VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
