//! Exact, exponential-time deciders used as ground truth.
//!
//! * vertex-minors and Bell-pair vertex-minors by breadth-first search of
//!   the local-complementation orbit,
//! * the same Bell-pair question answered through Eulerian tours of a
//!   4-regular multigraph,
//! * edge-disjoint paths by backtracking.
//!
//! Every positive answer carries a certificate that [`verify`] checks
//! without reusing the search code.

mod edp;
mod orbit;
mod pairs;
pub mod verify;

pub use edp::{decide_edp, decide_edpdt, validate_edpdt, DemandRoute, EdpDecision, EdpdtDecision};
pub use pairs::PairSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circle::{for_each_eulerian_tour, CircleError, EulerianTour};
use crate::graphs::{GraphError, LabeledGraph, MultiGraph, VertexId, Walk};

/// Orbit size at which searches give up with [`OracleError::Truncated`].
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("orbit truncated: more than {budget} graphs")]
    Truncated { budget: usize },
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error("target vertex `{0}` is not in the graph")]
    TargetNotSubset(VertexId),
    #[error("pair vertex `{0}` is not in the graph")]
    PairVertexMissing(VertexId),
    #[error("invalid pairs: {0}")]
    InvalidPairs(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

/// Local complementations followed by vertex deletions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VmWitness {
    pub lc_sequence: Vec<VertexId>,
    pub deleted: Vec<VertexId>,
}

impl VmWitness {
    pub fn replay(&self, g: &LabeledGraph) -> Result<LabeledGraph, GraphError> {
        g.apply_lc_sequence(&self.lc_sequence)?
            .delete_vertices(&self.deleted)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VmDecision {
    pub witness: Option<VmWitness>,
    /// Orbit members generated before the search stopped.
    pub explored: usize,
}

impl VmDecision {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }
}

/// The LC orbit of a graph with, for each member, a sequence reaching it.
#[derive(Debug, Clone)]
pub struct LcOrbit {
    pub members: Vec<LabeledGraph>,
    pub sequences: Vec<Vec<VertexId>>,
}

impl LcOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, h: &LabeledGraph) -> bool {
        self.members.contains(h)
    }
}

fn check_budget(budget: usize) -> Result<(), OracleError> {
    if budget == 0 {
        Err(OracleError::ZeroBudget)
    } else {
        Ok(())
    }
}

/// Every graph reachable from `g` by local complementations, in BFS order.
pub fn lc_orbit(g: &LabeledGraph, budget: usize) -> Result<LcOrbit, OracleError> {
    check_budget(budget)?;
    orbit::with_search(
        g,
        budget,
        |_| false,
        |view, end| match end {
            orbit::SearchEnd::Truncated => Err(OracleError::Truncated { budget }),
            _ => {
                let members = (0..view.len()).map(|i| view.member(i, g)).collect();
                let sequences = (0..view.len())
                    .map(|i| {
                        view.sequence_to(i)
                            .into_iter()
                            .map(|v| g.label(v).clone())
                            .collect()
                    })
                    .collect();
                Ok(LcOrbit { members, sequences })
            }
        },
    )
}

/// Decides whether `target` is a vertex-minor of `g`: some member of the LC
/// orbit of `g` induces exactly `target` on `V(target)`.
pub fn is_vertex_minor(
    g: &LabeledGraph,
    target: &LabeledGraph,
    budget: usize,
) -> Result<VmDecision, OracleError> {
    check_budget(budget)?;
    let words = g.words();
    let mut tix = Vec::with_capacity(target.vertex_count());
    for v in target.vertices() {
        tix.push(g.index_of(v).ok_or_else(|| OracleError::TargetNotSubset(v.clone()))?);
    }
    let mut mask = vec![0u64; words];
    for &i in &tix {
        mask[i / 64] |= 1 << (i % 64);
    }
    // target adjacency re-indexed into g's vertex order
    let mut want = vec![0u64; tix.len() * words];
    for (a, _) in tix.iter().enumerate() {
        for (b, &j) in tix.iter().enumerate() {
            if target.adjacent_idx(a, b) {
                want[a * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let accept = |rows: &[u64]| {
        tix.iter().enumerate().all(|(a, &i)| {
            (0..words).all(|w| rows[i * words + w] & mask[w] == want[a * words + w])
        })
    };
    let deleted: Vec<VertexId> = g
        .vertices()
        .iter()
        .filter(|v| !target.contains(v))
        .cloned()
        .collect();
    orbit::with_search(g, budget, accept, |view, end| match end {
        orbit::SearchEnd::Found(id) => Ok(VmDecision {
            witness: Some(VmWitness {
                lc_sequence: view
                    .sequence_to(id)
                    .into_iter()
                    .map(|v| g.label(v).clone())
                    .collect(),
                deleted,
            }),
            explored: view.len(),
        }),
        orbit::SearchEnd::Exhausted => Ok(VmDecision {
            witness: None,
            explored: view.len(),
        }),
        orbit::SearchEnd::Truncated => Err(OracleError::Truncated { budget }),
    })
}

/// Target graph for a Bell-pair question: the perfect matching on the
/// paired vertices with isolated vertices stripped.
pub fn bell_target(b: &PairSet) -> LabeledGraph {
    b.bell_graph().without_isolated()
}

fn check_pairs_in<F: Fn(&VertexId) -> bool>(b: &PairSet, has: F) -> Result<(), OracleError> {
    for v in b.vertices() {
        if !has(&v) {
            return Err(OracleError::PairVertexMissing(v));
        }
    }
    Ok(())
}

/// Is the Bell-pair graph on `b` a vertex-minor of `g`?
pub fn decide_bellvm(
    g: &LabeledGraph,
    b: &PairSet,
    budget: usize,
) -> Result<VmDecision, OracleError> {
    check_pairs_in(b, |v| g.contains(v))?;
    is_vertex_minor(g, &bell_target(b), budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourDecision {
    /// An Eulerian tour whose word, restricted to the paired vertices,
    /// alternates exactly on the pairs.
    pub tour: Option<EulerianTour>,
    pub tours_checked: usize,
}

impl TourDecision {
    pub fn is_yes(&self) -> bool {
        self.tour.is_some()
    }
}

pub(crate) fn require_connected_4_regular(f: &MultiGraph) -> Result<(), OracleError> {
    if let Some(i) = f.degrees().iter().position(|&d| d != 4) {
        return Err(OracleError::InvalidInstance(format!(
            "vertex `{}` has degree {}, expected 4",
            f.label(i),
            f.degrees()[i]
        )));
    }
    if !f.is_connected() {
        return Err(OracleError::InvalidInstance("graph is disconnected".into()));
    }
    Ok(())
}

/// Bell-pair vertex-minor question for the circle graphs of a connected
/// 4-regular multigraph, answered by exhaustive tour enumeration.
pub fn decide_bellvm_via_tours(f: &MultiGraph, b: &PairSet) -> Result<TourDecision, OracleError> {
    require_connected_4_regular(f)?;
    check_pairs_in(b, |v| f.contains(v))?;
    let keep = b.vertices();
    let target = bell_target(b);
    let mut found: Option<Walk> = None;
    let checked = for_each_eulerian_tour(f, |w| {
        let letters: Vec<VertexId> = w.vertices[..w.vertices.len() - 1]
            .iter()
            .filter(|v| keep.contains(*v))
            .cloned()
            .collect();
        let ok = crate::circle::alternance_graph(&letters)
            .map(|g| g == target)
            .unwrap_or(false);
        if ok {
            found = Some(w.clone());
        }
        !ok
    })?;
    let tour = found
        .map(|w| EulerianTour::new(f, w))
        .transpose()?;
    Ok(TourDecision {
        tour,
        tours_checked: checked,
    })
}
