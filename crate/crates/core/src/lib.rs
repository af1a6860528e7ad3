//! Graph-state vertex-minor toolkit.
//!
//! Builds and checks the chain of reductions from Eulerian edge-disjoint
//! paths, through 4-regular edge-disjoint paths with distinct terminals, to
//! the question of whether a graph state can be turned into Bell pairs on
//! chosen qubits by local operations (the Bell-pair vertex-minor problem).
//!
//! * [`graphs`]: labeled simple graphs, multigraphs, walks, text and DOT I/O.
//! * [`circle`]: Eulerian tours, double-occurrence words, alternance graphs.
//! * [`oracles`]: exact deciders and certificate checkers.
//! * [`gadgets`]: grape expansion, self-loop padding and grid gadgets.
//! * [`bellvm_reduction`]: the pad-ring construction and its checks.
//! * [`quantum`]: dense state-vector checks of the graph/state correspondence.
//! * [`instance`]: JSON instance files, certificates and the command layer.

pub mod bellvm_reduction;
pub mod circle;
pub mod gadgets;
pub mod graphs;
pub mod instance;
pub mod oracles;
pub mod quantum;

pub use graphs::{EdgeId, LabeledGraph, MultiGraph, VertexId, Walk};
pub use oracles::PairSet;
