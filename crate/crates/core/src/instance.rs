//! JSON instance and certificate files, and the commands the CLI runs on
//! them.
//!
//! Every file carries `"format": 1`. Instances are tagged by `kind`:
//!
//! ```json
//! {"format": 1, "kind": "edpdt", "name": "demo",
//!  "graph": {"vertices": ["a", "b"], "edges": [["a", "b"], ["a", "b"], ["a", "b"]]},
//!  "pairs": [["a", "b"]]}
//! ```

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bellvm_reduction::{pad_pairs, pad_ring_graph, reduce_edpdt_to_bellvm, ReductionError};
use crate::circle::{find_eulerian_tour, induced_word, CircleError};
use crate::gadgets::{reduce_edp_to_4reg_edpdt, GadgetError, Provenance};
use crate::graphs::{LabeledGraph, MultiGraph, MultiGraphBuilder, VertexId, Walk};
use crate::oracles::verify::{verify_edp, verify_paths, verify_vm_witness, CertificateError};
use crate::oracles::{
    bell_target, decide_bellvm, decide_edp, decide_edpdt, lc_orbit, validate_edpdt, DemandRoute,
    OracleError, PairSet, VmWitness,
};

pub const FORMAT: u32 = 1;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("unsupported format {0}, expected {FORMAT}")]
    Format(u32),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("cannot reduce {from} to {to}")]
    Chain { from: Kind, to: Kind },
    #[error("{0} certificate does not fit a {1} instance")]
    CertificateKind(&'static str, Kind),
    #[error("certificate rejected: {0}")]
    Rejected(#[from] CertificateError),
    #[error("infeasible parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Circle(#[from] CircleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Edp,
    Edpdt,
    Bellvm,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Edp => "edp",
            Kind::Edpdt => "edpdt",
            Kind::Bellvm => "bellvm",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edp" => Ok(Kind::Edp),
            "edpdt" => Ok(Kind::Edpdt),
            "bellvm" => Ok(Kind::Bellvm),
            _ => Err(format!("unknown kind `{s}` (edp, edpdt, bellvm)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Instance {
    Edp { supply: MultiGraph, demand: MultiGraph },
    Edpdt { graph: MultiGraph, pairs: PairSet },
    Bellvm { graph: LabeledGraph, pairs: PairSet },
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Edp { .. } => Kind::Edp,
            Instance::Edpdt { .. } => Kind::Edpdt,
            Instance::Bellvm { .. } => Kind::Bellvm,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub instance: Instance,
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        InstanceFile {
            format: FORMAT,
            name: None,
            seed: None,
            instance,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Parses and validates.
    pub fn from_json(src: &str) -> Result<Self, CommandError> {
        let f: InstanceFile = serde_json::from_str(src)?;
        if f.format != FORMAT {
            return Err(CommandError::Format(f.format));
        }
        f.validate()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// The kind's structural checks: demand and pair vertices exist, the
    /// EDPDT degree profile holds.
    pub fn validate(&self) -> Result<(), CommandError> {
        match &self.instance {
            Instance::Edp { supply, demand } => {
                for v in demand.vertices() {
                    if !supply.contains(v) {
                        return Err(CommandError::Invalid(format!(
                            "demand vertex `{v}` is not in the supply graph"
                        )));
                    }
                }
            }
            Instance::Edpdt { graph, pairs } => validate_edpdt(graph, pairs)?,
            Instance::Bellvm { graph, pairs } => {
                for v in pairs.vertices() {
                    if !graph.contains(&v) {
                        return Err(OracleError::PairVertexMissing(v).into());
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    /// One route per demand edge, in demand order.
    Edp { routes: Vec<DemandRoute> },
    /// One path per pair, in pair order.
    Edpdt { paths: Vec<Walk> },
    /// LC sequence and deletions turning the graph into the Bell pairs.
    Bellvm { witness: VmWitness },
}

impl Certificate {
    fn label(&self) -> &'static str {
        match self {
            Certificate::Edp { .. } => "edp",
            Certificate::Edpdt { .. } => "edpdt",
            Certificate::Bellvm { .. } => "bellvm",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format: u32,
    #[serde(flatten)]
    pub certificate: Certificate,
}

impl CertificateFile {
    pub fn new(certificate: Certificate) -> Self {
        CertificateFile {
            format: FORMAT,
            certificate,
        }
    }

    pub fn from_json(src: &str) -> Result<Self, CommandError> {
        let f: CertificateFile = serde_json::from_str(src)?;
        if f.format != FORMAT {
            return Err(CommandError::Format(f.format));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReduceOutput {
    pub format: u32,
    pub instance: InstanceFile,
    /// Synthetic vertex -> input vertex it descends from.
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Reduces along edp -> edpdt -> bellvm.
pub fn cmd_reduce(input: &InstanceFile, target: Kind) -> Result<ReduceOutput, CommandError> {
    input.validate()?;
    let from = input.instance.kind();
    let chain = || CommandError::Chain { from, to: target };
    if from >= target {
        return Err(chain());
    }
    let mut provenance = Provenance::new();
    let mut warnings = Vec::new();
    let (graph, pairs) = match &input.instance {
        Instance::Edp { supply, demand } => {
            let r = reduce_edp_to_4reg_edpdt(supply, demand)?;
            provenance = r.provenance;
            (r.graph, r.pairs)
        }
        Instance::Edpdt { graph, pairs } => (graph.clone(), pairs.clone()),
        Instance::Bellvm { .. } => return Err(chain()),
    };
    let instance = if target == Kind::Edpdt {
        Instance::Edpdt { graph, pairs }
    } else {
        let r = reduce_edpdt_to_bellvm(&graph, &pairs)?;
        if !r.padded.dropped.is_empty() {
            let names: Vec<&str> = r.padded.dropped.iter().map(|v| v.as_str()).collect();
            warnings.push(format!(
                "dropped {} vertices in components without terminals: {}",
                names.len(),
                names.join(" ")
            ));
        }
        for (pad, terminal) in r.padded.provenance {
            let origin = provenance.get(&terminal).cloned().unwrap_or(terminal);
            provenance.insert(pad, origin);
        }
        provenance.retain(|v, _| r.instance.graph.contains(v));
        Instance::Bellvm {
            graph: r.instance.graph,
            pairs: r.instance.pairs,
        }
    };
    let mut out = InstanceFile::new(instance);
    out.name = input.name.as_ref().map(|n| format!("{n}-{target}"));
    out.seed = input.seed;
    Ok(ReduceOutput {
        format: FORMAT,
        instance: out,
        provenance,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Truncated,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Truncated => 2,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_explored: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: u32,
    pub kind: Kind,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub stats: Stats,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: usize,
    pub seed: Option<u64>,
    /// Record wall-clock time in the stats. Off by default so that reports
    /// are reproducible byte for byte.
    pub timing: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: crate::oracles::DEFAULT_BUDGET,
            seed: None,
            timing: false,
        }
    }
}

/// Decides the instance with the matching exact oracle. Orbit truncation is
/// reported as [`Verdict::Truncated`], never as a NO.
pub fn cmd_solve(input: &InstanceFile, opts: &SolveOptions) -> Result<Report, CommandError> {
    input.validate()?;
    let start = Instant::now();
    let mut stats = Stats::default();
    let (verdict, certificate, message) = match &input.instance {
        Instance::Edp { supply, demand } => {
            let d = decide_edp(supply, demand)?;
            stats.nodes_explored = Some(d.nodes_explored);
            match d.routes {
                Some(routes) => (Verdict::Yes, Some(Certificate::Edp { routes }), None),
                None => (Verdict::No, None, None),
            }
        }
        Instance::Edpdt { graph, pairs } => {
            let d = decide_edpdt(graph, pairs)?;
            stats.nodes_explored = Some(d.nodes_explored);
            match d.paths {
                Some(paths) => (Verdict::Yes, Some(Certificate::Edpdt { paths }), None),
                None => (Verdict::No, None, None),
            }
        }
        Instance::Bellvm { graph, pairs } => match decide_bellvm(graph, pairs, opts.budget) {
            Ok(d) => {
                stats.orbit_size = Some(d.explored);
                match d.witness {
                    Some(witness) => (Verdict::Yes, Some(Certificate::Bellvm { witness }), None),
                    None => (Verdict::No, None, None),
                }
            }
            Err(e @ OracleError::Truncated { .. }) => (Verdict::Truncated, None, Some(e.to_string())),
            Err(e) => return Err(e.into()),
        },
    };
    if opts.timing {
        stats.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(Report {
        format: FORMAT,
        kind: input.instance.kind(),
        verdict,
        message,
        seed: opts.seed,
        certificate,
        stats,
    })
}

/// Checks a certificate against an instance without running any search.
pub fn cmd_verify(input: &InstanceFile, cert: &Certificate) -> Result<(), CommandError> {
    input.validate()?;
    match (&input.instance, cert) {
        (Instance::Edp { supply, demand }, Certificate::Edp { routes }) => {
            verify_edp(supply, demand, routes)?
        }
        (Instance::Edpdt { graph, pairs }, Certificate::Edpdt { paths }) => {
            verify_paths(graph, pairs.pairs(), paths, false)?
        }
        (Instance::Bellvm { graph, pairs }, Certificate::Bellvm { witness }) => {
            verify_vm_witness(graph, &bell_target(pairs), witness)?
        }
        (inst, c) => return Err(CommandError::CertificateKind(c.label(), inst.kind())),
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Bell-pair question on the circle graph of the doubled pad ring with
    /// `k` pairs, closed by a random perfect matching of the pads.
    Ring { k: usize },
    /// Connected 4-regular EDPDT instance on `n` vertices with `k` terminal
    /// pairs, from a random pairing of edge stubs.
    Random4Reg { n: usize, k: usize },
    /// EDP instance whose reduction needs a grid gadget: a hub joined to
    /// `n` leaves, leaves matched by demands.
    GridDemo { n: usize },
}

const GEN_ATTEMPTS: usize = 10_000;

/// Deterministic instance generators: equal family and seed give equal
/// files.
pub fn cmd_gen(family: &Family, seed: u64) -> Result<InstanceFile, CommandError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (name, instance) = match *family {
        Family::Ring { k } => {
            if k == 0 {
                return Err(CommandError::Params("ring needs k >= 1".into()));
            }
            let mut pads: Vec<VertexId> = pad_pairs(k).vertices().into_iter().collect();
            pads.shuffle(&mut rng);
            let extra: Vec<(VertexId, VertexId)> =
                pads.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
            let h = pad_ring_graph(k, &extra)?;
            let word = induced_word(&find_eulerian_tour(&h)?)?;
            (
                format!("ring-k{k}"),
                Instance::Bellvm {
                    graph: word.alternance_graph(),
                    pairs: pad_pairs(k),
                },
            )
        }
        Family::Random4Reg { n, k } => {
            let (graph, pairs) = random_4reg(n, k, &mut rng)?;
            (format!("random-4reg-n{n}-k{k}"), Instance::Edpdt { graph, pairs })
        }
        Family::GridDemo { n } => {
            if n < 2 || n % 2 == 1 {
                return Err(CommandError::Params("grid-demo needs an even n >= 2".into()));
            }
            let leaves: Vec<VertexId> = (1..=n).map(|i| VertexId::new(format!("l{i}"))).collect();
            let mut supply = MultiGraphBuilder::new();
            for l in &leaves {
                supply.edge("hub", l.clone());
            }
            let mut order = leaves.clone();
            order.shuffle(&mut rng);
            let mut demand = MultiGraphBuilder::new();
            for c in order.chunks(2) {
                demand.edge(c[0].clone(), c[1].clone());
            }
            (
                format!("grid-demo-n{n}"),
                Instance::Edp {
                    supply: supply.build(),
                    demand: demand.build(),
                },
            )
        }
    };
    let mut f = InstanceFile::new(instance).named(name);
    f.seed = Some(seed);
    f.validate()?;
    Ok(f)
}

/// Random connected multigraph where the `2k` terminals have degree 3 and
/// the rest degree 4; loops and parallel edges allowed.
pub fn random_4reg<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<(MultiGraph, PairSet), CommandError> {
    if 2 * k > n {
        return Err(CommandError::Params(format!("{k} pairs need at least {} vertices", 2 * k)));
    }
    if n == 0 {
        return Err(CommandError::Params("need at least one vertex".into()));
    }
    let width = (n - 1).to_string().len();
    let labels: Vec<VertexId> = (0..n).map(|i| VertexId::new(format!("v{i:0width$}"))).collect();
    let mut order = labels.clone();
    order.shuffle(rng);
    let terminals = &order[..2 * k];
    let pairs = PairSet::new(terminals.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())?;
    let mut stubs = Vec::new();
    for v in &labels {
        let d = if terminals.contains(v) { 3 } else { 4 };
        stubs.extend(std::iter::repeat_n(v.clone(), d));
    }
    for _ in 0..GEN_ATTEMPTS {
        stubs.shuffle(rng);
        let mut b = MultiGraphBuilder::new();
        for v in &labels {
            b.vertex(v.clone());
        }
        for c in stubs.chunks(2) {
            b.edge(c[0].clone(), c[1].clone());
        }
        let g = b.build();
        if g.is_connected() {
            validate_edpdt(&g, &pairs)?;
            return Ok((g, pairs));
        }
    }
    Err(CommandError::Params(format!(
        "no connected graph found in {GEN_ATTEMPTS} attempts"
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDump {
    pub format: u32,
    pub size: usize,
    pub members: Vec<OrbitMember>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitMember {
    pub lc_sequence: Vec<VertexId>,
    pub graph: LabeledGraph,
}

/// The LC orbit of `g` in BFS order, each member with a sequence reaching
/// it.
pub fn cmd_orbit(g: &LabeledGraph, budget: usize) -> Result<OrbitDump, CommandError> {
    let orbit = lc_orbit(g, budget)?;
    let members: Vec<OrbitMember> = orbit
        .members
        .into_iter()
        .zip(orbit.sequences)
        .map(|(graph, lc_sequence)| OrbitMember { lc_sequence, graph })
        .collect();
    Ok(OrbitDump {
        format: FORMAT,
        size: members.len(),
        members,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TourDump {
    pub format: u32,
    pub tour: Walk,
    pub word: String,
    pub alternance: LabeledGraph,
}

/// Hierholzer tour of `f`, its double-occurrence word (letters separated by
/// spaces) and alternance graph. Only 4-regular hosts give a word.
pub fn cmd_tour(f: &MultiGraph) -> Result<TourDump, CommandError> {
    let tour = find_eulerian_tour(f)?;
    let word = induced_word(&tour)?;
    let letters: Vec<&str> = word.letters().iter().map(|v| v.as_str()).collect();
    Ok(TourDump {
        format: FORMAT,
        tour: tour.walk().clone(),
        word: letters.join(" "),
        alternance: word.alternance_graph(),
    })
}
