//! Edge-disjoint paths by backtracking.
//!
//! Demands are routed one after another in input order. A path grows one
//! edge at a time from its source, trying incident edges in ascending id
//! order; among parallel edges to the same neighbour only the smallest
//! unused one is tried, since the others are interchangeable. After every
//! step the search checks that the current path can still reach its target
//! and that every later demand is still connected in the unused edges.

use serde::{Deserialize, Serialize};

use super::{OracleError, PairSet};
use crate::graphs::{EdgeId, MultiGraph, VertexId, Walk};

/// A demand edge together with the path in the supply graph serving it,
/// oriented from the demand's first endpoint to its second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandRoute {
    pub demand: EdgeId,
    pub path: Walk,
}

impl DemandRoute {
    /// The circuit in `G ∪ D`, written from the demand's second endpoint:
    /// `v (v,..) .. u (u,v) v`.
    pub fn circuit(&self) -> String {
        let back = self.path.reversed();
        format!("{back}({},{}){}", self.path.start(), self.path.end(), self.path.end())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdpDecision {
    pub routes: Option<Vec<DemandRoute>>,
    pub nodes_explored: u64,
}

impl EdpDecision {
    pub fn is_yes(&self) -> bool {
        self.routes.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdpdtDecision {
    /// One path per terminal pair, from the pair's first vertex to its second.
    pub paths: Option<Vec<Walk>>,
    pub nodes_explored: u64,
}

impl EdpdtDecision {
    pub fn is_yes(&self) -> bool {
        self.paths.is_some()
    }
}

/// Edge-disjoint paths for `demands` in `g`: for every demand edge of `d`
/// a path in `g` between its endpoints, no two paths sharing an edge.
pub fn decide_edp(g: &MultiGraph, d: &MultiGraph) -> Result<EdpDecision, OracleError> {
    for v in d.vertices() {
        if !g.contains(v) {
            return Err(OracleError::InvalidInstance(format!(
                "demand vertex `{v}` is not in the supply graph"
            )));
        }
    }
    let demands: Vec<(usize, usize)> = d
        .edge_ids()
        .map(|e| {
            let (a, b) = d.endpoints(e).expect("own edge");
            (g.index_of(a).expect("checked"), g.index_of(b).expect("checked"))
        })
        .collect();
    let (found, nodes) = Router::new(g, demands).run();
    let routes = found.map(|paths| {
        paths
            .into_iter()
            .zip(d.edge_ids())
            .map(|(path, demand)| DemandRoute { demand, path })
            .collect()
    });
    Ok(EdpDecision {
        routes,
        nodes_explored: nodes,
    })
}

/// Checks the 4-regular EDPDT degree profile: every degree is 3 or 4 and the
/// degree-3 vertices are exactly the terminals.
pub fn validate_edpdt(g: &MultiGraph, t: &PairSet) -> Result<(), OracleError> {
    let terminals = t.vertices();
    for v in &terminals {
        if !g.contains(v) {
            return Err(OracleError::PairVertexMissing(v.clone()));
        }
    }
    for (i, v) in g.vertices().iter().enumerate() {
        let d = g.degree_idx(i);
        let want = if terminals.contains(v) { 3 } else { 4 };
        if d != want {
            return Err(OracleError::InvalidInstance(format!(
                "vertex `{v}` has degree {d}, expected {want}"
            )));
        }
    }
    Ok(())
}

/// Edge-disjoint paths joining each terminal pair of a 4-regular EDPDT
/// instance. An instance with the wrong degree profile is an error, not a
/// NO.
pub fn decide_edpdt(g: &MultiGraph, t: &PairSet) -> Result<EdpdtDecision, OracleError> {
    validate_edpdt(g, t)?;
    let demands = t
        .iter()
        .map(|(a, b)| (g.index_of(a).expect("checked"), g.index_of(b).expect("checked")))
        .collect();
    let (paths, nodes) = Router::new(g, demands).run();
    Ok(EdpdtDecision {
        paths,
        nodes_explored: nodes,
    })
}

struct Router<'a> {
    g: &'a MultiGraph,
    demands: Vec<(usize, usize)>,
    used: Vec<bool>,
    on_path: Vec<bool>,
    paths: Vec<Vec<(EdgeId, usize)>>,
    nodes: u64,
    // scratch
    seen: Vec<u32>,
    stamp: u32,
    queue: Vec<usize>,
    parent: Vec<usize>,
}

impl<'a> Router<'a> {
    fn new(g: &'a MultiGraph, demands: Vec<(usize, usize)>) -> Self {
        let n = g.vertex_count();
        Router {
            g,
            demands,
            used: vec![false; g.edge_count()],
            on_path: vec![false; n],
            paths: Vec::new(),
            nodes: 0,
            seen: vec![0; n],
            stamp: 0,
            queue: Vec::with_capacity(n),
            parent: (0..n).collect(),
        }
    }

    fn run(mut self) -> (Option<Vec<Walk>>, u64) {
        let ok = self.later_demands_connected(0) && self.solve(0);
        let g = self.g;
        let walks = ok.then(|| {
            self.paths
                .iter()
                .zip(&self.demands)
                .map(|(steps, &(s, _))| {
                    let mut vertices: Vec<VertexId> = vec![g.label(s).clone()];
                    vertices.extend(steps.iter().map(|&(_, v)| g.label(v).clone()));
                    Walk {
                        vertices,
                        edges: steps.iter().map(|&(e, _)| e).collect(),
                    }
                })
                .collect()
        });
        (walks, self.nodes)
    }

    fn solve(&mut self, k: usize) -> bool {
        if k == self.demands.len() {
            return true;
        }
        let (s, t) = self.demands[k];
        self.paths.push(Vec::new());
        if s == t {
            if self.solve(k + 1) {
                return true;
            }
            self.paths.pop();
            return false;
        }
        self.on_path[s] = true;
        let ok = self.extend(k, s, t);
        self.on_path[s] = false;
        if !ok {
            self.paths.pop();
        }
        ok
    }

    fn extend(&mut self, k: usize, head: usize, t: usize) -> bool {
        self.nodes += 1;
        let g = self.g;
        let inc = g.incident_idx(head);
        let mut tried: Vec<usize> = Vec::with_capacity(inc.len());
        for &e in inc {
            if self.used[e.0] || g.is_self_loop(e) {
                continue;
            }
            let w = g.other_end(e, head);
            if self.on_path[w] || tried.contains(&w) {
                continue;
            }
            tried.push(w);
            self.used[e.0] = true;
            self.on_path[w] = true;
            self.paths[k].push((e, w));
            if w == t {
                // path k is complete; its vertices may be reused by later paths
                self.set_path_marks(k, false);
                if self.later_demands_connected(k + 1) && self.solve(k + 1) {
                    return true;
                }
                self.set_path_marks(k, true);
            } else if self.can_reach(w, t) && self.later_demands_connected(k + 1) && self.extend(k, w, t) {
                return true;
            }
            self.paths[k].pop();
            self.on_path[w] = false;
            self.used[e.0] = false;
        }
        false
    }

    fn set_path_marks(&mut self, k: usize, on: bool) {
        let (s, _) = self.demands[k];
        self.on_path[s] = on;
        for i in 0..self.paths[k].len() {
            let v = self.paths[k][i].1;
            self.on_path[v] = on;
        }
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        self.stamp
    }

    /// Can `from` reach `t` over unused edges without touching the current
    /// path?
    fn can_reach(&mut self, from: usize, t: usize) -> bool {
        let stamp = self.next_stamp();
        let g = self.g;
        self.queue.clear();
        self.queue.push(from);
        self.seen[from] = stamp;
        while let Some(v) = self.queue.pop() {
            for &e in g.incident_idx(v) {
                if self.used[e.0] {
                    continue;
                }
                let w = g.other_end(e, v);
                if w == t {
                    return true;
                }
                if self.seen[w] != stamp && !self.on_path[w] {
                    self.seen[w] = stamp;
                    self.queue.push(w);
                }
            }
        }
        false
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Are the endpoints of demands `from..` connected in the unused edges?
    fn later_demands_connected(&mut self, from: usize) -> bool {
        if from >= self.demands.len() {
            return true;
        }
        for i in 0..self.parent.len() {
            self.parent[i] = i;
        }
        let g = self.g;
        for (e, &[a, b]) in g.all_ends().iter().enumerate() {
            if !self.used[e] && a != b {
                let (ra, rb) = (self.find(a), self.find(b));
                if ra != rb {
                    self.parent[ra] = rb;
                }
            }
        }
        for j in from..self.demands.len() {
            let (s, t) = self.demands[j];
            if self.find(s) != self.find(t) {
                return false;
            }
        }
        true
    }
}
