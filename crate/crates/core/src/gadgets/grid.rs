//! The grid gadget replacing a vertex of degree `2n`, and edge-disjoint
//! routing of any pairing of its boundary through it.
//!
//! Vertices are `v_i` and `v_i'` on the boundary and `v_{i,j'}` inside, all
//! indices in `1..=n`. Position 0 along row `i` is `v_i` and position 0
//! along column `j'` is `v_j'`. Edges:
//!
//! * two boundary rings `v_1 .. v_n v_1` and `v_1' .. v_n' v_1'`,
//! * rows `v_i - v_{i,1'} - .. - v_{i,n'}`,
//! * columns `v_j' - v_{1,j'} - .. - v_{n,j'}`,
//! * wrap edges `(v_{i,n'}, v_{n,i'})`, a self-loop at `v_{n,n'}`.
//!
//! Boundary vertices have degree 3 and inner vertices degree 4.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::GadgetError;
use crate::circle::splice_remaining;
use crate::graphs::{EdgeId, MultiGraph, MultiGraphBuilder, VertexId, Walk};

/// A boundary vertex of a grid gadget, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Terminal {
    Unprimed(usize),
    Primed(usize),
}

#[derive(Debug, Clone)]
pub struct GridGadget {
    n: usize,
    base: VertexId,
    graph: MultiGraph,
    /// `hor[i-1][p]` joins row positions `p` and `p+1` of row `i`.
    hor: Vec<Vec<EdgeId>>,
    /// `ver[j-1][p]` joins column positions `p` and `p+1` of column `j'`.
    ver: Vec<Vec<EdgeId>>,
}

pub fn outer_label(base: &VertexId, i: usize) -> VertexId {
    VertexId::new(format!("grid:{base}@{i}"))
}

pub fn outer_primed_label(base: &VertexId, i: usize) -> VertexId {
    VertexId::new(format!("grid:{base}@{i}'"))
}

pub fn inner_label(base: &VertexId, i: usize, j: usize) -> VertexId {
    VertexId::new(format!("grid:{base}@{i},{j}'"))
}

/// Builds the gadget for a vertex labeled `base` of degree `2n`.
pub fn build_grid_gadget(base: &VertexId, n: usize) -> Result<GridGadget, GadgetError> {
    if n < 1 {
        return Err(GadgetError::HalfDegree(n));
    }
    let out = |i: usize| outer_label(base, i);
    let outp = |i: usize| outer_primed_label(base, i);
    let inn = |i: usize, j: usize| inner_label(base, i, j);
    let row_pos = |i: usize, p: usize| if p == 0 { out(i) } else { inn(i, p) };
    let col_pos = |j: usize, p: usize| if p == 0 { outp(j) } else { inn(p, j) };

    let mut b = MultiGraphBuilder::new();
    for i in 1..=n {
        b.edge(out(i), out(i % n + 1));
    }
    for i in 1..=n {
        b.edge(outp(i), outp(i % n + 1));
    }
    let mut hor = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for p in 0..n {
            row.push(EdgeId(b.edge_count()));
            b.edge(row_pos(i, p), row_pos(i, p + 1));
        }
        hor.push(row);
    }
    let mut ver = Vec::with_capacity(n);
    for j in 1..=n {
        let mut col = Vec::with_capacity(n);
        for p in 0..n {
            col.push(EdgeId(b.edge_count()));
            b.edge(col_pos(j, p), col_pos(j, p + 1));
        }
        ver.push(col);
    }
    for i in 1..=n {
        b.edge(inn(i, n), inn(n, i));
    }
    Ok(GridGadget {
        n,
        base: base.clone(),
        graph: b.build(),
        hor,
        ver,
    })
}

impl GridGadget {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn base(&self) -> &VertexId {
        &self.base
    }

    pub fn label(&self, t: Terminal) -> VertexId {
        match t {
            Terminal::Unprimed(i) => outer_label(&self.base, i),
            Terminal::Primed(i) => outer_primed_label(&self.base, i),
        }
    }

    /// `v_1 .. v_n, v_1' .. v_n'`.
    pub fn boundary(&self) -> Vec<VertexId> {
        (1..=self.n)
            .map(Terminal::Unprimed)
            .chain((1..=self.n).map(Terminal::Primed))
            .map(|t| self.label(t))
            .collect()
    }

    fn row_vertex(&self, i: usize, p: usize) -> VertexId {
        if p == 0 {
            outer_label(&self.base, i)
        } else {
            inner_label(&self.base, i, p)
        }
    }

    fn col_vertex(&self, j: usize, p: usize) -> VertexId {
        if p == 0 {
            outer_primed_label(&self.base, j)
        } else {
            inner_label(&self.base, p, j)
        }
    }

    fn check_interval(&self, line: usize, from: usize, to: usize) -> Result<(), GadgetError> {
        if line < 1 || line > self.n || from > to || to > self.n {
            return Err(GadgetError::Interval {
                line,
                from,
                to,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Edges of row `i` between positions `from` and `to` (position 0 is
    /// `v_i`).
    pub fn horizontal(&self, i: usize, from: usize, to: usize) -> Result<BTreeSet<EdgeId>, GadgetError> {
        self.check_interval(i, from, to)?;
        Ok(self.hor[i - 1][from..to].iter().copied().collect())
    }

    /// Edges of column `j'` between positions `from` and `to` (position 0
    /// is `v_j'`).
    pub fn vertical(&self, j: usize, from: usize, to: usize) -> Result<BTreeSet<EdgeId>, GadgetError> {
        self.check_interval(j, from, to)?;
        Ok(self.ver[j - 1][from..to].iter().copied().collect())
    }
}

/// A perfect matching of the `2n` boundary vertices, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    n: usize,
    pairs: Vec<(Terminal, Terminal)>,
}

impl Pairing {
    pub fn new(n: usize, pairs: Vec<(Terminal, Terminal)>) -> Result<Self, GadgetError> {
        let mut seen = BTreeSet::new();
        for &(a, b) in &pairs {
            for t in [a, b] {
                let (Terminal::Unprimed(i) | Terminal::Primed(i)) = t;
                if i < 1 || i > n {
                    return Err(GadgetError::Pairing(format!("{t:?} out of range 1..={n}")));
                }
                if !seen.insert(t) {
                    return Err(GadgetError::Pairing(format!("{t:?} paired twice")));
                }
            }
        }
        if seen.len() != 2 * n {
            return Err(GadgetError::Pairing(format!(
                "covers {} of {} boundary vertices",
                seen.len(),
                2 * n
            )));
        }
        Ok(Pairing { n, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(Terminal, Terminal)] {
        &self.pairs
    }
}

/// Every perfect matching of the boundary of an `n`-gadget, each pair listed
/// with its smaller terminal first (unprimed before primed).
pub fn all_pairings(n: usize) -> Vec<Pairing> {
    let terms: Vec<Terminal> = (1..=n)
        .map(Terminal::Unprimed)
        .chain((1..=n).map(Terminal::Primed))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        rest: &[Terminal],
        cur: &mut Vec<(Terminal, Terminal)>,
        out: &mut Vec<Vec<(Terminal, Terminal)>>,
    ) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = rest[0];
        for k in 1..rest.len() {
            cur.push((first, rest[k]));
            let remaining: Vec<Terminal> = rest[1..]
                .iter()
                .enumerate()
                .filter(|&(i, _)| i + 1 != k)
                .map(|(_, &t)| t)
                .collect();
            rec(&remaining, cur, out);
            cur.pop();
        }
    }
    rec(&terms, &mut cur, &mut out);
    out.into_iter()
        .map(|pairs| Pairing::new(n, pairs).expect("perfect matching"))
        .collect()
}

/// Uniformly random pairing, with random pair order and orientation.
pub fn random_pairing<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Pairing {
    let mut terms: Vec<Terminal> = (1..=n)
        .map(Terminal::Unprimed)
        .chain((1..=n).map(Terminal::Primed))
        .collect();
    terms.shuffle(rng);
    let pairs = terms.chunks(2).map(|c| (c[0], c[1])).collect();
    Pairing::new(n, pairs).expect("perfect matching")
}

/// Paths realizing a pairing inside a gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetRouting {
    /// Final trails, one per pair in pairing order, oriented like the pair.
    /// Together they use every gadget edge exactly once.
    pub paths: Vec<Walk>,
    /// The row/column paths before leftover edges were absorbed.
    pub core: Vec<Walk>,
}

struct WalkBuilder<'g> {
    gg: &'g GridGadget,
    walk: Walk,
}

impl<'g> WalkBuilder<'g> {
    fn start(gg: &'g GridGadget, v: VertexId) -> Self {
        WalkBuilder {
            gg,
            walk: Walk::at(v),
        }
    }

    fn row(mut self, i: usize, from: usize, to: usize) -> Self {
        let edges = &self.gg.hor[i - 1];
        if from <= to {
            for p in from..to {
                self.walk.edges.push(edges[p]);
                self.walk.vertices.push(self.gg.row_vertex(i, p + 1));
            }
        } else {
            for p in (to..from).rev() {
                self.walk.edges.push(edges[p]);
                self.walk.vertices.push(self.gg.row_vertex(i, p));
            }
        }
        self
    }

    fn col(mut self, j: usize, from: usize, to: usize) -> Self {
        let edges = &self.gg.ver[j - 1];
        if from <= to {
            for p in from..to {
                self.walk.edges.push(edges[p]);
                self.walk.vertices.push(self.gg.col_vertex(j, p + 1));
            }
        } else {
            for p in (to..from).rev() {
                self.walk.edges.push(edges[p]);
                self.walk.vertices.push(self.gg.col_vertex(j, p));
            }
        }
        self
    }
}

/// Core paths for a pairing: mixed pairs `(v_k, v_l')` go right along row
/// `k` to column `l'` and down to `v_l'`; the x-th unprimed pair `(v_i,
/// v_j)` and x-th primed pair `(v_m', v_n')` (smaller index first) share
/// the crossing `v_{i,m'}`: the unprimed path runs right along row `i` to
/// column `m'`, up that column to row `j` and back left to `v_j`; the primed
/// path runs up column `m'` to row `i`, right to column `n'` and down to
/// `v_n'`.
fn core_paths(gg: &GridGadget, p: &Pairing) -> Vec<Walk> {
    use Terminal::*;
    let mut unprimed = Vec::new();
    let mut primed = Vec::new();
    for (idx, &(a, b)) in p.pairs.iter().enumerate() {
        match (a, b) {
            (Unprimed(i), Unprimed(j)) => unprimed.push((idx, i.min(j), i.max(j))),
            (Primed(i), Primed(j)) => primed.push((idx, i.min(j), i.max(j))),
            _ => {}
        }
    }
    debug_assert_eq!(unprimed.len(), primed.len());
    let mut paths: Vec<Option<Walk>> = vec![None; p.pairs.len()];
    for (idx, &(a, b)) in p.pairs.iter().enumerate() {
        if let (Unprimed(k), Primed(l)) | (Primed(l), Unprimed(k)) = (a, b) {
            let w = WalkBuilder::start(gg, gg.label(Unprimed(k)))
                .row(k, 0, l)
                .col(l, k, 0)
                .walk;
            paths[idx] = Some(w);
        }
    }
    for (&(ui, i, j), &(pi, m, nn)) in unprimed.iter().zip(&primed) {
        let up = WalkBuilder::start(gg, gg.label(Unprimed(i)))
            .row(i, 0, m)
            .col(m, i, j)
            .row(j, m, 0)
            .walk;
        let pp = WalkBuilder::start(gg, gg.label(Primed(m)))
            .col(m, 0, i)
            .row(i, m, nn)
            .col(nn, i, 0)
            .walk;
        paths[ui] = Some(up);
        paths[pi] = Some(pp);
    }
    paths
        .into_iter()
        .zip(&p.pairs)
        .map(|(w, &(a, _))| {
            let w = w.expect("every pair routed");
            if w.start() == &gg.label(a) {
                w
            } else {
                w.reversed()
            }
        })
        .collect()
}

/// Routes `p` through `gg` with pairwise edge-disjoint trails that together
/// cover every gadget edge.
///
/// Edges left over by the core paths form even-degree components; each is
/// closed into a circuit and spliced into the first path (in pairing order)
/// that touches it, at that path's first vertex on the component.
pub fn route_pairing(gg: &GridGadget, p: &Pairing) -> Result<GadgetRouting, GadgetError> {
    if p.n != gg.n {
        return Err(GadgetError::Pairing(format!(
            "pairing for n = {} applied to gadget with n = {}",
            p.n, gg.n
        )));
    }
    let core = core_paths(gg, p);
    let g = &gg.graph;
    let mut taken = vec![false; g.edge_count()];
    for w in &core {
        for e in &w.edges {
            debug_assert!(!taken[e.0], "core paths overlap at {e}");
            taken[e.0] = true;
        }
    }
    // leftover components over vertex indices
    let mut comp_of_edge: Vec<Option<usize>> = vec![None; g.edge_count()];
    let mut comps: Vec<Vec<EdgeId>> = Vec::new();
    for e in g.edge_ids() {
        if taken[e.0] || comp_of_edge[e.0].is_some() {
            continue;
        }
        let id = comps.len();
        let mut members = Vec::new();
        let mut stack = vec![e];
        comp_of_edge[e.0] = Some(id);
        while let Some(x) = stack.pop() {
            members.push(x);
            for v in g.ends_idx(x) {
                for &y in g.incident_idx(v) {
                    if !taken[y.0] && comp_of_edge[y.0].is_none() {
                        comp_of_edge[y.0] = Some(id);
                        stack.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }

    let index_path = |w: &Walk| -> Vec<usize> {
        w.vertices.iter().map(|v| g.index_of(v).expect("gadget vertex")).collect()
    };
    let mut paths = core.clone();
    for comp in &comps {
        let mut comp_vertices = BTreeSet::new();
        for &e in comp {
            comp_vertices.extend(g.ends_idx(e));
        }
        let host = core
            .iter()
            .position(|w| index_path(w).iter().any(|v| comp_vertices.contains(v)))
            .ok_or_else(|| GadgetError::Routing("leftover component touches no path".into()))?;
        let mut used = vec![true; g.edge_count()];
        for &e in comp {
            used[e.0] = false;
        }
        let verts = index_path(&paths[host]);
        let base: Vec<(EdgeId, usize)> = paths[host]
            .edges
            .iter()
            .copied()
            .zip(verts[1..].iter().copied())
            .collect();
        let steps = splice_remaining(g, verts[0], base, &mut used);
        if used.iter().any(|u| !u) {
            return Err(GadgetError::Routing("leftover component not absorbed".into()));
        }
        let mut w = Walk::at(paths[host].start().clone());
        for (e, v) in steps {
            w.edges.push(e);
            w.vertices.push(g.label(v).clone());
        }
        paths[host] = w;
    }
    Ok(GadgetRouting { paths, core })
}
