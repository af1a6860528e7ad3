//! Dense state vectors for checking the graph/state correspondence on a
//! handful of qubits.
//!
//! Qubit `i` of a state is bit `i` of the basis index, and qubits carry the
//! labels of the graph vertices they stand for, in the graph's (sorted)
//! vertex order. Global phases are never tracked; compare states with
//! [`fidelity`].

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

pub use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{LabeledGraph, VertexId};
use crate::oracles::{PairSet, VmWitness};

/// Largest register [`graph_state`] will build.
pub const MAX_QUBITS: usize = 12;
/// Largest pair count [`bell_target_state`] will build.
pub const MAX_BELL_PAIRS: usize = 6;

const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantumError {
    #[error("{n} qubits exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("no qubit labeled `{0}`")]
    UnknownQubit(VertexId),
    #[error("qubit labels differ from the graph's vertices")]
    LabelMismatch,
    #[error("outcome {outcome:+} on `{qubit}` has probability {prob:e}")]
    ZeroProbability {
        qubit: VertexId,
        outcome: i8,
        prob: f64,
    },
    #[error("replaying witness: {0}")]
    Replay(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

type Gate = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn hadamard() -> Gate {
    let h = FRAC_1_SQRT_2;
    [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]
}

/// `exp(-iπ/4 X)`, a square root of `-iX`.
pub fn sqrt_minus_i_x() -> Gate {
    let h = FRAC_1_SQRT_2;
    [[c(h, 0.0), c(0.0, -h)], [c(0.0, -h), c(h, 0.0)]]
}

/// `exp(iπ/4 Z)`, a square root of `iZ`.
pub fn sqrt_i_z() -> Gate {
    [[Complex64::from_polar(1.0, FRAC_PI_4), c(0.0, 0.0)], [c(0.0, 0.0), Complex64::from_polar(1.0, -FRAC_PI_4)]]
}

/// `S† = diag(1, -i)`.
pub fn s_dagger() -> Gate {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]]
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<VertexId>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0..0⟩` on `labels` (kept in the given order).
    pub fn zero(labels: Vec<VertexId>) -> Result<Self, QuantumError> {
        if labels.len() > MAX_QUBITS {
            return Err(QuantumError::TooLarge {
                n: labels.len(),
                max: MAX_QUBITS,
            });
        }
        let mut amps = vec![c(0.0, 0.0); 1 << labels.len()];
        amps[0] = c(1.0, 0.0);
        Ok(StateVector { labels, amps })
    }

    pub fn from_amplitudes(labels: Vec<VertexId>, amps: Vec<Complex64>) -> Result<Self, QuantumError> {
        if labels.len() > MAX_QUBITS {
            return Err(QuantumError::TooLarge {
                n: labels.len(),
                max: MAX_QUBITS,
            });
        }
        assert_eq!(amps.len(), 1 << labels.len(), "amplitude count");
        Ok(StateVector { labels, amps })
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn qubit_count(&self) -> usize {
        self.labels.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `[re, im]` per amplitude, for dumping as JSON.
    pub fn amplitude_pairs(&self) -> Vec<[f64; 2]> {
        self.amps.iter().map(|a| [a.re, a.im]).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn qubit(&self, v: &VertexId) -> Result<usize, QuantumError> {
        self.labels
            .iter()
            .position(|l| l == v)
            .ok_or_else(|| QuantumError::UnknownQubit(v.clone()))
    }

    pub fn apply(&mut self, q: usize, g: &Gate) {
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = g[0][0] * a0 + g[0][1] * a1;
                self.amps[i | bit] = g[1][0] * a0 + g[1][1] * a1;
            }
        }
    }

    pub fn apply_to(&mut self, v: &VertexId, g: &Gate) -> Result<(), QuantumError> {
        let q = self.qubit(v)?;
        self.apply(q, g);
        Ok(())
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let mask = (1usize << a) | (1 << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    /// `⟨self|other⟩`; the qubit labels must agree in order.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64, QuantumError> {
        if self.labels != other.labels {
            return Err(QuantumError::LabelMismatch);
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Projects qubit `q` onto outcome `bit`, drops it, and renormalizes.
    /// Returns the branch probability alongside.
    fn collapse(&self, q: usize, bit: usize) -> (f64, StateVector) {
        let n = self.labels.len();
        let mut amps = Vec::with_capacity(1 << (n - 1));
        let low = (1usize << q) - 1;
        for j in 0..(1usize << (n - 1)) {
            let i = (j & low) | ((j & !low) << 1) | (bit << q);
            amps.push(self.amps[i]);
        }
        let p: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if p > 0.0 {
            let s = 1.0 / p.sqrt();
            amps.iter_mut().for_each(|a| *a *= s);
        }
        let mut labels = self.labels.clone();
        labels.remove(q);
        (p, StateVector { labels, amps })
    }
}

/// `∏ CZ (⊗ |+⟩)` over the vertices of `g`.
pub fn graph_state(g: &LabeledGraph) -> Result<StateVector, QuantumError> {
    let n = g.vertex_count();
    if n > MAX_QUBITS {
        return Err(QuantumError::TooLarge { n, max: MAX_QUBITS });
    }
    let mut s = StateVector::zero(g.vertices().to_vec())?;
    let scale = (0.5f64).powf(n as f64 / 2.0);
    s.amps.iter_mut().for_each(|a| *a = c(scale, 0.0));
    for (a, b) in g.edges() {
        let (i, j) = (g.index_of(&a).expect("own"), g.index_of(&b).expect("own"));
        s.cz(i, j);
    }
    Ok(s)
}

/// The local Clifford `exp(-iπ/4 X_v) ∏_{u ∈ N(v)} exp(iπ/4 Z_u)` taking
/// `|G⟩` to `|τ_v(G)⟩` up to phase.
pub fn lc_unitary(g: &LabeledGraph, v: &VertexId, s: &StateVector) -> Result<StateVector, QuantumError> {
    if s.labels() != g.vertices() {
        return Err(QuantumError::LabelMismatch);
    }
    let nb = g.neighbors(v).map_err(|_| QuantumError::UnknownQubit(v.clone()))?;
    let mut out = s.clone();
    for u in nb {
        out.apply_to(&u, &sqrt_i_z())?;
    }
    out.apply_to(v, &sqrt_minus_i_x())?;
    Ok(out)
}

/// `|⟨a|b⟩|`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, QuantumError> {
    Ok(a.inner(b)?.norm())
}

fn rotate_into_z(s: &mut StateVector, q: usize, basis: Pauli) {
    match basis {
        Pauli::Z => {}
        Pauli::X => s.apply(q, &hadamard()),
        Pauli::Y => {
            s.apply(q, &s_dagger());
            s.apply(q, &hadamard());
        }
    }
}

/// Measures `v` in `basis` with a fixed outcome (`+1` or `-1`) and removes
/// it. Fails if that outcome cannot occur.
pub fn pauli_project(
    s: &StateVector,
    v: &VertexId,
    basis: Pauli,
    outcome: i8,
) -> Result<StateVector, QuantumError> {
    let q = s.qubit(v)?;
    let mut r = s.clone();
    rotate_into_z(&mut r, q, basis);
    let (p, post) = r.collapse(q, usize::from(outcome < 0));
    if p < 1e-12 {
        return Err(QuantumError::ZeroProbability {
            qubit: v.clone(),
            outcome,
            prob: p,
        });
    }
    Ok(post)
}

/// Probability of outcome `+1` when measuring `v` in `basis`.
pub fn plus_probability(s: &StateVector, v: &VertexId, basis: Pauli) -> Result<f64, QuantumError> {
    let q = s.qubit(v)?;
    let mut r = s.clone();
    rotate_into_z(&mut r, q, basis);
    Ok(r.collapse(q, 0).0)
}

/// Measures `v` in `basis`, drawing the outcome from `rng` with the Born
/// probabilities. A draw landing on a branch of (numerically) zero weight
/// takes the other branch.
pub fn pauli_measure<R: Rng + ?Sized>(
    s: &StateVector,
    v: &VertexId,
    basis: Pauli,
    rng: &mut R,
) -> Result<(i8, StateVector), QuantumError> {
    let p_plus = plus_probability(s, v, basis)?;
    let u: f64 = rng.random();
    let mut outcome: i8 = if u < p_plus { 1 } else { -1 };
    let p = if outcome > 0 { p_plus } else { 1.0 - p_plus };
    if p < 1e-12 {
        outcome = -outcome;
    }
    Ok((outcome, pauli_project(s, v, basis, outcome)?))
}

/// `⊗ (|00⟩ + |11⟩)/√2` over the pairs; qubits in sorted label order.
pub fn bell_target_state(b: &PairSet) -> Result<StateVector, QuantumError> {
    if b.len() > MAX_BELL_PAIRS {
        return Err(QuantumError::TooLarge {
            n: b.len(),
            max: MAX_BELL_PAIRS,
        });
    }
    let labels: Vec<VertexId> = b.vertices().into_iter().collect();
    let idx = |v: &VertexId| labels.binary_search(v).expect("own");
    let masks: Vec<(usize, usize)> = b.iter().map(|(x, y)| (1 << idx(x), 1 << idx(y))).collect();
    let scale = (0.5f64).powf(b.len() as f64 / 2.0);
    let amps = (0..1usize << labels.len())
        .map(|i| {
            let ok = masks.iter().all(|&(x, y)| (i & x == 0) == (i & y == 0));
            c(if ok { scale } else { 0.0 }, 0.0)
        })
        .collect();
    StateVector::from_amplitudes(labels, amps)
}

fn complex_rank(mut m: Vec<Vec<Complex64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .expect("non-empty range");
        if m[pivot][col].norm() < RANK_TOL {
            continue;
        }
        m.swap(rank, pivot);
        let inv = 1.0 / m[rank][col];
        for r in 0..rows {
            if r != rank {
                let f = m[r][col] * inv;
                if f.norm() > 0.0 {
                    for k in col..cols {
                        let sub = f * m[rank][k];
                        m[r][k] -= sub;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Schmidt rank of `s` across the cut `side | rest`.
pub fn schmidt_rank(s: &StateVector, side: &BTreeSet<VertexId>) -> Result<usize, QuantumError> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (q, l) in s.labels.iter().enumerate() {
        if side.contains(l) {
            a.push(q);
        } else {
            b.push(q);
        }
    }
    for v in side {
        s.qubit(v)?;
    }
    let spread = |bits: usize, qs: &[usize]| -> usize {
        qs.iter().enumerate().filter(|&(k, _)| bits >> k & 1 == 1).map(|(_, &q)| 1 << q).sum()
    };
    let m = (0..1usize << a.len())
        .map(|x| {
            let xi = spread(x, &a);
            (0..1usize << b.len()).map(|y| s.amps[xi | spread(y, &b)]).collect()
        })
        .collect();
    Ok(complex_rank(m))
}

/// Schmidt rank for every cut, each cut keyed by the side holding the
/// smallest label. Local unitaries leave this profile unchanged.
pub fn schmidt_rank_profile(s: &StateVector) -> BTreeMap<BTreeSet<VertexId>, usize> {
    let mut sorted = s.labels.clone();
    sorted.sort();
    let n = sorted.len();
    let mut out = BTreeMap::new();
    if n < 2 {
        return out;
    }
    // subsets containing sorted[0], excluding the full set
    for mask in 0..(1usize << (n - 1)) {
        let side: BTreeSet<VertexId> = std::iter::once(sorted[0].clone())
            .chain((1..n).filter(|&k| mask >> (k - 1) & 1 == 1).map(|k| sorted[k].clone()))
            .collect();
        if side.len() == n {
            continue;
        }
        let r = schmidt_rank(s, &side).expect("labels from the state");
        out.insert(side, r);
    }
    out
}

/// Plays a vertex-minor witness on `|G⟩`: the LC unitaries in order (the
/// graph updated alongside), then a Z measurement of every deleted vertex
/// with outcomes drawn from `rng`. The result is the target graph state up
/// to local unitaries.
pub fn replay_witness<R: Rng + ?Sized>(
    g: &LabeledGraph,
    w: &VmWitness,
    rng: &mut R,
) -> Result<StateVector, QuantumError> {
    let mut graph = g.clone();
    let mut s = graph_state(g)?;
    for v in &w.lc_sequence {
        s = lc_unitary(&graph, v, &s)?;
        graph = graph
            .apply_lc_sequence([v])
            .map_err(|e| QuantumError::Replay(e.to_string()))?;
    }
    for v in &w.deleted {
        s = pauli_measure(&s, v, Pauli::Z, rng)?.1;
    }
    Ok(s)
}

/// GF(2) rank of the adjacency block between `side` and the rest. The
/// graph state's Schmidt rank across that cut is `2^rank`.
pub fn cut_rank(g: &LabeledGraph, side: &BTreeSet<VertexId>) -> usize {
    let rest: Vec<&VertexId> = g.vertices().iter().filter(|v| !side.contains(*v)).collect();
    let mut rows: Vec<Vec<bool>> = side
        .iter()
        .filter(|v| g.contains(v))
        .map(|a| rest.iter().map(|b| g.has_edge(a, b)).collect())
        .collect();
    let cols = rest.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                for k in col..cols {
                    let x = rows[rank][k];
                    rows[r][k] ^= x;
                }
            }
        }
        rank += 1;
    }
    rank
}
