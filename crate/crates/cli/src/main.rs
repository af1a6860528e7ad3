use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use vminor::graphs::{parse_text, GraphText};
use vminor::instance::{
    cmd_gen, cmd_orbit, cmd_reduce, cmd_solve, cmd_tour, cmd_verify, CertificateFile, CommandError,
    Family, Instance, InstanceFile, Kind, SolveOptions,
};
use vminor::oracles::{OracleError, DEFAULT_BUDGET};
use vminor::{LabeledGraph, MultiGraph};

/// Graph-state vertex-minors, Eulerian tours and edge-disjoint paths.
#[derive(Parser)]
#[command(name = "vminor", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Ring,
    #[value(name = "random-4reg")]
    Random4Reg,
    #[value(name = "grid-demo")]
    GridDemo,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce an instance along edp -> edpdt -> bellvm.
    Reduce {
        input: PathBuf,
        /// Target kind: edpdt or bellvm.
        #[arg(long, default_value = "bellvm")]
        to: Kind,
        /// Write the reduced instance here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write the vertex provenance map (JSON) here.
        #[arg(long)]
        provenance: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide an instance; exit 0 = yes, 1 = no, 2 = truncated or error.
    Solve {
        input: PathBuf,
        #[arg(long, env = "VMINOR_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the certificate of a yes answer here.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Check a certificate against an instance; exit 0 = pass, 1 = fail.
    Verify { input: PathBuf, cert: PathBuf },
    /// Generate an instance.
    Gen {
        #[arg(value_enum)]
        family: FamilyName,
        /// Pairs (ring, random-4reg).
        #[arg(short, default_value_t = 2)]
        k: usize,
        /// Vertices (random-4reg) or leaves (grid-demo).
        #[arg(short, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Dump the local-complementation orbit of a simple graph.
    Orbit {
        input: PathBuf,
        #[arg(long, env = "VMINOR_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dump an Eulerian tour of a 4-regular multigraph, its word and
    /// alternance graph.
    Tour {
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes via a sibling temporary file and a rename.
fn write_atomic(path: &Path, data: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, data).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))
}

fn emit(out: Option<&Path>, data: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, data),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<InstanceFile> {
    InstanceFile::from_json(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

/// JSON instance or text graph.
enum Loaded {
    Instance(InstanceFile),
    Text(GraphText),
}

fn load_any(path: &Path) -> Result<Loaded> {
    let src = read(path)?;
    if src.trim_start().starts_with('{') {
        Ok(Loaded::Instance(
            InstanceFile::from_json(&src).with_context(|| format!("loading {}", path.display()))?,
        ))
    } else {
        Ok(Loaded::Text(
            parse_text(&src).with_context(|| format!("parsing {}", path.display()))?,
        ))
    }
}

fn simple_graph_of(l: Loaded) -> Result<LabeledGraph> {
    match l {
        Loaded::Instance(f) => match f.instance {
            Instance::Bellvm { graph, .. } => Ok(graph),
            other => bail!("expected a bellvm instance, got {}", other.kind()),
        },
        Loaded::Text(GraphText::Simple { graph, .. }) => Ok(graph),
        Loaded::Text(GraphText::Multi { .. }) => bail!("expected a simple graph"),
    }
}

fn multigraph_of(l: Loaded) -> Result<MultiGraph> {
    match l {
        Loaded::Instance(f) => match f.instance {
            Instance::Edpdt { graph, pairs } => {
                // close the terminals with their demand edges to get a 4-regular host
                let mut b = graph.to_builder();
                for (a, c) in pairs.iter() {
                    b.edge(a.clone(), c.clone());
                }
                Ok(b.build())
            }
            other => bail!("expected an edpdt instance, got {}", other.kind()),
        },
        Loaded::Text(GraphText::Multi { graph, .. }) => Ok(graph),
        Loaded::Text(GraphText::Simple { .. }) => bail!("expected a multigraph"),
    }
}

fn instance_text(f: &InstanceFile) -> String {
    let name = f.name.as_deref().unwrap_or("instance");
    match &f.instance {
        Instance::Edp { supply, demand } => {
            format!("{}{}", supply.to_text(name), demand.to_text(&format!("{name}-demand")))
        }
        Instance::Edpdt { graph, pairs } => {
            let mut s = graph.to_text(name);
            for (a, b) in pairs.iter() {
                s.push_str(&format!("# pair {a} {b}\n"));
            }
            s
        }
        Instance::Bellvm { graph, pairs } => {
            let mut s = graph.to_text(name);
            for (a, b) in pairs.iter() {
                s.push_str(&format!("# pair {a} {b}\n"));
            }
            s
        }
    }
}

fn instance_dot(f: &InstanceFile) -> String {
    let name = f.name.as_deref().unwrap_or("instance");
    match &f.instance {
        Instance::Edp { supply, .. } => supply.to_dot(name),
        Instance::Edpdt { graph, .. } => graph.to_dot(name),
        Instance::Bellvm { graph, .. } => graph.to_dot(name),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Reduce {
            input,
            to,
            out,
            provenance,
            dot,
            format,
        } => {
            let f = load_instance(&input)?;
            let r = cmd_reduce(&f, to)?;
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            let body = match format {
                Format::Json => r.instance.to_json(),
                Format::Text => instance_text(&r.instance),
            };
            emit(out.as_deref(), &body)?;
            if let Some(p) = provenance {
                let mut js = serde_json::to_string_pretty(&r.provenance)?;
                js.push('\n');
                write_atomic(&p, &js)?;
            }
            if let Some(p) = dot {
                write_atomic(&p, &instance_dot(&r.instance))?;
            }
            Ok(0)
        }
        Cmd::Solve {
            input,
            budget,
            seed,
            cert,
            timing,
        } => {
            let f = load_instance(&input)?;
            let opts = SolveOptions {
                budget,
                seed,
                timing,
            };
            let report = cmd_solve(&f, &opts)?;
            if let (Some(p), Some(c)) = (cert, &report.certificate) {
                write_atomic(&p, &CertificateFile::new(c.clone()).to_json())?;
            }
            print!("{}", report.to_json());
            if let Some(m) = &report.message {
                eprintln!("{m}");
            }
            Ok(report.exit_code() as u8)
        }
        Cmd::Verify { input, cert } => {
            let f = load_instance(&input)?;
            let c = CertificateFile::from_json(&read(&cert)?)
                .with_context(|| format!("loading {}", cert.display()))?;
            match cmd_verify(&f, &c.certificate) {
                Ok(()) => {
                    println!("pass");
                    Ok(0)
                }
                Err(e @ (CommandError::Rejected(_) | CommandError::CertificateKind(..))) => {
                    println!("fail: {e}");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Gen {
            family,
            k,
            n,
            seed,
            out,
        } => {
            let fam = match family {
                FamilyName::Ring => Family::Ring { k },
                FamilyName::Random4Reg => Family::Random4Reg { n, k },
                FamilyName::GridDemo => Family::GridDemo { n },
            };
            emit(out.as_deref(), &cmd_gen(&fam, seed)?.to_json())?;
            Ok(0)
        }
        Cmd::Orbit {
            input,
            budget,
            format,
        } => {
            let g = simple_graph_of(load_any(&input)?)?;
            let dump = match cmd_orbit(&g, budget) {
                Ok(d) => d,
                Err(CommandError::Oracle(e @ OracleError::Truncated { .. })) => {
                    eprintln!("{e}");
                    return Ok(2);
                }
                Err(e) => return Err(e.into()),
            };
            match format {
                Format::Json => {
                    let mut js = serde_json::to_string_pretty(&dump)?;
                    js.push('\n');
                    print!("{js}");
                }
                Format::Text => {
                    for (i, m) in dump.members.iter().enumerate() {
                        let seq: Vec<&str> = m.lc_sequence.iter().map(|v| v.as_str()).collect();
                        println!("# lc: {}", seq.join(" "));
                        print!("{}", m.graph.to_text(&format!("orbit{i}")));
                    }
                }
            }
            Ok(0)
        }
        Cmd::Tour { input, dot, format } => {
            let f = multigraph_of(load_any(&input)?)?;
            let dump = cmd_tour(&f)?;
            if let Some(p) = dot {
                write_atomic(&p, &dump.alternance.to_dot("alternance"))?;
            }
            match format {
                Format::Json => {
                    let mut js = serde_json::to_string_pretty(&dump)?;
                    js.push('\n');
                    print!("{js}");
                }
                Format::Text => {
                    println!("tour {}", dump.tour);
                    println!("word {}", dump.word);
                    print!("{}", dump.alternance.to_text("alternance"));
                }
            }
            Ok(0)
        }
    }
}
