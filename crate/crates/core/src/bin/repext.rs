use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use repext::graph::{check_extension, format_representation, ClosedInterval, Graph};
use repext::repext::{extend, ExtendError, Extension, PartialError, PartialRepresentation};
use repext::selfcheck::{run_selfcheck, run_selfcheck_with, Report};
use repext::simrep::{simrep, SimRepError, SimRepInstance, DEFAULT_MAX_SHARED};

const OK: u8 = 0;
const NO: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BOUND_EXCEEDED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "repext",
    version,
    about = "Interval graph recognition and partial representation extension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an interval representation of a graph.
    Recognize { graph: PathBuf },
    /// Extend pre-drawn intervals to a representation of the whole graph.
    Extend {
        graph: PathBuf,
        partial: PathBuf,
        /// Pre-drawn lines are already in non-decreasing order of left endpoint.
        #[arg(long)]
        assume_sorted: bool,
        #[arg(long)]
        json: bool,
    },
    /// Simultaneous representation of graphs sharing vertices.
    Simrep {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_SHARED)]
        max_shared: usize,
    },
    /// Check the algorithms against brute force on random instances.
    Selfcheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        /// Replace extension with one that rejects every input.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(INPUT_ERROR, format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| fail(INPUT_ERROR, format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Recognize { graph } => recognize(&graph),
        Command::Extend {
            graph,
            partial,
            assume_sorted,
            json,
        } => extend_cmd(&graph, &partial, assume_sorted, json),
        Command::Simrep {
            instance,
            max_shared,
        } => simrep_cmd(&instance, max_shared),
        Command::Selfcheck {
            seed,
            iters,
            inject_fault,
        } => selfcheck(seed, iters, inject_fault),
    };
    match result {
        Ok(()) => ExitCode::from(OK),
        Err(f) => {
            if f.code == INPUT_ERROR {
                eprintln!("error: {}", f.message);
            } else {
                println!("{}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn status(e: &ExtendError) -> Failure {
    match e {
        ExtendError::NotInterval => fail(NO, "NOT_INTERVAL"),
        ExtendError::NotExtendible(_) => fail(NO, "NOT_EXTENDIBLE"),
        ExtendError::InvalidPartial(_) => fail(NO, "INVALID_PARTIAL"),
        ExtendError::Internal(msg) => fail(INPUT_ERROR, format!("internal error: {msg}")),
    }
}

fn verified(
    g: &Graph,
    partial: &PartialRepresentation,
    rep: &[ClosedInterval],
) -> Result<(), Failure> {
    check_extension(g, partial, rep)
        .map_err(|e| fail(INPUT_ERROR, format!("internal error: output rejected: {e}")))
}

fn recognize(path: &Path) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let partial = PartialRepresentation::empty(g.n());
    let ext = extend(&g, &partial).map_err(|e| status(&e))?;
    verified(&g, &partial, &ext.representation)?;
    print!("{}", format_representation(&ext.representation));
    Ok(())
}

fn extend_cmd(
    graph: &Path,
    partial_path: &Path,
    assume_sorted: bool,
    json: bool,
) -> Result<(), Failure> {
    let g = read_graph(graph)?;
    let text = read(partial_path)?;
    if !assume_sorted {
        eprintln!("note: sorting pre-drawn endpoints (O(k log k)); pass --assume-sorted if the input is sorted");
    }
    let partial = PartialRepresentation::parse(&g, &text, assume_sorted).map_err(|e| match e {
        PartialError::Malformed { .. } | PartialError::OutOfRange { .. } => {
            fail(INPUT_ERROR, format!("{}: {e}", partial_path.display()))
        }
        other => {
            eprintln!("{other}");
            fail(
                NO,
                if json {
                    r#"{"status":"INVALID_PARTIAL"}"#
                } else {
                    "INVALID_PARTIAL"
                },
            )
        }
    })?;
    let ext = extend(&g, &partial).map_err(|e| {
        let f = status(&e);
        if json && f.code == NO {
            fail(NO, serde_json::json!({ "status": f.message }).to_string())
        } else {
            f
        }
    })?;
    verified(&g, &partial, &ext.representation)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&JsonOutput::new(&ext)).expect("serializable")
        );
    } else {
        print!("{}", format_representation(&ext.representation));
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonInterval {
    vertex: usize,
    left: String,
    right: String,
}

#[derive(Serialize)]
struct JsonOutput {
    status: &'static str,
    representation: Vec<JsonInterval>,
    clique_order: Vec<Vec<usize>>,
}

impl JsonOutput {
    fn new(ext: &Extension) -> Self {
        JsonOutput {
            status: "OK",
            representation: ext
                .representation
                .iter()
                .enumerate()
                .map(|(vertex, iv)| JsonInterval {
                    vertex,
                    left: iv.left.to_string(),
                    right: iv.right.to_string(),
                })
                .collect(),
            clique_order: ext.clique_order.clone(),
        }
    }
}

fn simrep_cmd(path: &Path, max_shared: usize) -> Result<(), Failure> {
    let inst = SimRepInstance::parse(&read(path)?).map_err(|e| match e {
        SimRepError::InvalidInstance(msg) => {
            eprintln!("{msg}");
            fail(NO, "INVALID_INSTANCE")
        }
        other => fail(INPUT_ERROR, format!("{}: {other}", path.display())),
    })?;
    let reps = simrep(&inst, max_shared).map_err(|e| match e {
        SimRepError::NoSimRep => fail(NO, "NO_SIMREP"),
        SimRepError::BoundExceeded { .. } => fail(BOUND_EXCEEDED, format!("BOUND_EXCEEDED: {e}")),
        other => fail(INPUT_ERROR, other.to_string()),
    })?;
    for (i, (rep, (g, ids))) in reps
        .iter()
        .zip(inst.graphs().iter().zip(inst.shared()))
        .enumerate()
    {
        let pairs = ids.iter().map(|&v| (v, rep[v].clone())).collect();
        let partial = PartialRepresentation::from_pairs(g, pairs)
            .map_err(|e| fail(INPUT_ERROR, e.to_string()))?;
        verified(g, &partial, rep)?;
        println!("graph {i}");
        print!("{}", format_representation(rep));
    }
    Ok(())
}

fn selfcheck(seed: u64, iters: usize, inject_fault: bool) -> Result<(), Failure> {
    let report: Report = if inject_fault {
        run_selfcheck_with(seed, iters, &|_, _| Err(ExtendError::NotInterval))
    } else {
        run_selfcheck(seed, iters)
    };
    for suite in &report.suites {
        println!(
            "{}: {} cases, {} disagreements",
            suite.name,
            suite.cases,
            suite.failures.len()
        );
    }
    for (i, cx) in report.suites.iter().flat_map(|s| &s.failures).enumerate() {
        println!("counterexample {i} ({}): {}", cx.suite, cx.description);
        for (name, contents) in &cx.files {
            println!("--- {name}");
            print!("{contents}");
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(fail(NO, "SELFCHECK_FAILED"))
    }
}
