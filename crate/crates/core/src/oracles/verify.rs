//! Certificate checkers, independent of the search code that produces the
//! certificates.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{DemandRoute, VmWitness};
use crate::graphs::{EdgeId, GraphError, LabeledGraph, MultiGraph, VertexId, Walk, WalkError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("expected {expected} paths, got {got}")]
    Count { expected: usize, got: usize },
    #[error("path {index}: {source}")]
    Walk { index: usize, source: WalkError },
    #[error("path {index} joins `{got_a}` and `{got_b}`, expected `{want_a}` and `{want_b}`")]
    Endpoints {
        index: usize,
        got_a: VertexId,
        got_b: VertexId,
        want_a: VertexId,
        want_b: VertexId,
    },
    #[error("edge {edge} used by paths {first} and {second}")]
    EdgeReused {
        edge: EdgeId,
        first: usize,
        second: usize,
    },
    #[error("edge {0} is not covered by any path")]
    Uncovered(EdgeId),
    #[error("route {index} names demand {got}, expected {want}")]
    WrongDemand {
        index: usize,
        got: EdgeId,
        want: EdgeId,
    },
    #[error("witness replay failed: {0}")]
    Replay(GraphError),
    #[error("witness replay does not reproduce the target")]
    ReplayMismatch,
}

/// Checks that `paths[i]` is a trail in `host` joining `pairs[i]` (either
/// orientation) and that no edge is shared between paths. With
/// `require_simple`, paths may not revisit vertices.
pub fn verify_paths(
    host: &MultiGraph,
    pairs: &[(VertexId, VertexId)],
    paths: &[Walk],
    require_simple: bool,
) -> Result<(), CertificateError> {
    if pairs.len() != paths.len() {
        return Err(CertificateError::Count {
            expected: pairs.len(),
            got: paths.len(),
        });
    }
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (index, (path, (a, b))) in paths.iter().zip(pairs).enumerate() {
        let checked = if require_simple {
            path.validate_path(host)
        } else {
            path.validate_trail(host)
        };
        checked.map_err(|source| CertificateError::Walk { index, source })?;
        let (s, t) = (path.start(), path.end());
        if !((s == a && t == b) || (s == b && t == a)) {
            return Err(CertificateError::Endpoints {
                index,
                got_a: s.clone(),
                got_b: t.clone(),
                want_a: a.clone(),
                want_b: b.clone(),
            });
        }
        for &e in &path.edges {
            if let Some(&first) = owner.get(&e) {
                return Err(CertificateError::EdgeReused {
                    edge: e,
                    first,
                    second: index,
                });
            }
            owner.insert(e, index);
        }
    }
    Ok(())
}

/// Every edge of `host` lies on one of `paths`.
pub fn verify_cover(host: &MultiGraph, paths: &[Walk]) -> Result<(), CertificateError> {
    let mut hit = vec![false; host.edge_count()];
    for p in paths {
        for e in &p.edges {
            if let Some(h) = hit.get_mut(e.0) {
                *h = true;
            }
        }
    }
    match hit.iter().position(|h| !h) {
        Some(i) => Err(CertificateError::Uncovered(EdgeId(i))),
        None => Ok(()),
    }
}

/// Routes for every demand edge of `d`, in demand order, each a path in `g`
/// between the demand's endpoints; pairwise edge-disjoint.
pub fn verify_edp(
    g: &MultiGraph,
    d: &MultiGraph,
    routes: &[DemandRoute],
) -> Result<(), CertificateError> {
    let mut pairs = Vec::with_capacity(d.edge_count());
    for (index, want) in d.edge_ids().enumerate() {
        if let Some(r) = routes.get(index) {
            if r.demand != want {
                return Err(CertificateError::WrongDemand {
                    index,
                    got: r.demand,
                    want,
                });
            }
        }
        let (a, b) = d.endpoints(want).expect("own edge");
        pairs.push((a.clone(), b.clone()));
    }
    let paths: Vec<Walk> = routes.iter().map(|r| r.path.clone()).collect();
    verify_paths(g, &pairs, &paths, false)
}

pub fn verify_vm_witness(
    g: &LabeledGraph,
    target: &LabeledGraph,
    witness: &VmWitness,
) -> Result<(), CertificateError> {
    let got = witness.replay(g).map_err(CertificateError::Replay)?;
    if &got == target {
        Ok(())
    } else {
        Err(CertificateError::ReplayMismatch)
    }
}
