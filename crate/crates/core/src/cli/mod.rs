//! The `knodel` command line.
//!
//! Exit status: 0 on success or agreement, 1 on a mathematical disagreement
//! or failed verification, 2 on usage or I/O errors.

pub mod docs;
pub mod export;
pub mod sweep;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::domination::{undominated, VertexSet};
use crate::gamma4::{construct_dominating_set, gamma_formula, DELTA};
use crate::graph::{CyclicSequence, KnodelGraph};
use crate::seq_enum::{enumerate_sequences, reconstruct_positions};
use crate::solver::{solve_with, SolveOutcome, SolverConfig};
use crate::Error;

use docs::{load_graph_document, SetDocument};
use sweep::{render_csv, SweepConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable holding the solver worker count.
pub const THREADS_ENV: &str = "KNODEL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "knodel", version, about = "Domination in Knödel graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Exact,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Edgelist,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Domination number of W(4, n) from the closed form, exact search, or both
    Gamma {
        n: usize,
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
        /// Time budget for the exact search, in seconds
        #[arg(long)]
        budget: Option<f64>,
        /// Report the lexicographically smallest optimal set
        #[arg(long)]
        canonical: bool,
    },
    /// Write a verified minimum dominating set of W(4, n) as JSON
    Construct {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a JSON set document dominates a graph
    Verify {
        /// Order and degree of the graph
        #[arg(long, num_args = 2, value_names = ["N", "DELTA"], required_unless_present = "graph_file")]
        graph: Option<Vec<usize>>,
        /// Adjacency document written by `export --format json`
        #[arg(long, conflicts_with = "graph")]
        graph_file: Option<PathBuf>,
        #[arg(long)]
        set: PathBuf,
    },
    /// Compare formula, construction and exact search over a range of orders (CSV)
    Sweep {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Time budget per order for the exact search, in seconds
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write 0 in the elapsed_ms column
        #[arg(long)]
        no_timing: bool,
    },
    /// List rotation classes of cyclic gap sequences under M_4 constraints
    EnumSeq {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        total: usize,
        #[arg(long)]
        exact_in_m: usize,
        #[arg(long)]
        adj_max: usize,
        /// Fail unless exactly this many classes are found
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Place a gap sequence at u_1 and show what its U-set leaves undominated
    Reconstruct {
        #[arg(long)]
        n: usize,
        /// Comma-separated gaps summing to n/2
        #[arg(long, value_delimiter = ',', required = true)]
        gaps: Vec<usize>,
    },
    /// Export a Knödel graph as DOT, an edge list or a JSON adjacency document
    Export {
        n: usize,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long, default_value_t = DELTA)]
        delta: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure that maps to the usage/IO exit status.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<u8, UsageError>;

pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Gamma {
            n,
            method,
            budget,
            canonical,
        } => cmd_gamma(n, method, budget, canonical),
        Command::Construct { n, out } => cmd_construct(n, out.as_deref()),
        Command::Verify {
            graph,
            graph_file,
            set,
        } => cmd_verify(graph, graph_file.as_deref(), &set),
        Command::Sweep {
            from,
            to,
            budget,
            out,
            no_timing,
        } => cmd_sweep(from, to, budget, out.as_deref(), !no_timing),
        Command::EnumSeq {
            k,
            total,
            exact_in_m,
            adj_max,
            expect,
        } => cmd_enum_seq(k, total, exact_in_m, adj_max, expect),
        Command::Reconstruct { n, gaps } => cmd_reconstruct(n, gaps),
        Command::Export {
            n,
            format,
            delta,
            out,
        } => cmd_export(n, format, delta, out.as_deref()),
    }
}

fn threads_from_env() -> Result<usize, UsageError> {
    match std::env::var(THREADS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(UsageError(format!(
                "{THREADS_ENV} must be a positive integer, got {s:?}"
            ))),
        },
        Err(_) => Ok(1),
    }
}

fn budget(secs: Option<f64>) -> Result<Option<Duration>, UsageError> {
    secs.map(|s| {
        Duration::try_from_secs_f64(s).map_err(|_| UsageError(format!("invalid budget {s}")))
    })
    .transpose()
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), UsageError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gamma(n: usize, method: Method, budget_secs: Option<f64>, canonical: bool) -> CmdResult {
    let formula = gamma_formula(n)?;
    if method == Method::Formula {
        println!("n={n} formula={}", formula.value);
        return Ok(EXIT_OK);
    }
    let g = KnodelGraph::new(DELTA, n)?;
    let config = SolverConfig {
        threads: threads_from_env()?,
        time_budget: budget(budget_secs)?,
        canonical,
    };
    let outcome = solve_with(&g, &config)?;
    let mut line = format!("n={n}");
    if method == Method::Both {
        line.push_str(&format!(" formula={}", formula.value));
    }
    let code = match &outcome {
        SolveOutcome::Solved(r) => {
            line.push_str(&format!(" exact={}", r.value));
            let agree = r.value == formula.value;
            if method == Method::Both {
                line.push_str(if agree { " agree" } else { " DISAGREE" });
            }
            line.push_str(&format!(
                " certificate={} nodes={} elapsed_ms={}",
                r.certificate,
                r.nodes_explored,
                r.elapsed.as_millis()
            ));
            if method == Method::Both && !agree {
                EXIT_FAIL
            } else {
                EXIT_OK
            }
        }
        SolveOutcome::Unknown(u) => {
            line.push_str(&format!(
                " exact=unknown lower={} upper={} best={} nodes={}",
                u.lower, u.upper, u.best, u.nodes_explored
            ));
            EXIT_OK
        }
    };
    println!("{line}");
    Ok(code)
}

fn cmd_construct(n: usize, out: Option<&Path>) -> CmdResult {
    gamma_formula(n)?;
    let g = KnodelGraph::new(DELTA, n)?;
    match construct_dominating_set(n) {
        Ok(d) => {
            let mut text = SetDocument::from_set(&g, &d).to_json();
            text.push('\n');
            emit(&text, out)?;
            Ok(EXIT_OK)
        }
        Err(Error::ConstructionFailed { undominated, .. }) => {
            eprintln!("construction for n={n} is not dominating; undominated:");
            for v in undominated {
                eprintln!("{v}");
            }
            Ok(EXIT_FAIL)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify(graph: Option<Vec<usize>>, graph_file: Option<&Path>, set: &Path) -> CmdResult {
    let g = match (graph, graph_file) {
        (Some(nd), _) => {
            let delta =
                u32::try_from(nd[1]).map_err(|_| UsageError(format!("invalid delta {}", nd[1])))?;
            KnodelGraph::new(delta, nd[0])?
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            load_graph_document(&text)?
        }
        (None, None) => {
            return Err(UsageError(
                "one of --graph or --graph-file is required".into(),
            ))
        }
    };
    let text = fs::read_to_string(set)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", set.display())))?;
    let doc = SetDocument::parse(&text)?;
    if doc.n != g.order() || doc.delta != g.delta() {
        return Err(docs::DocError::GraphMismatch {
            n: g.order(),
            delta: g.delta(),
            doc_n: doc.n,
            doc_delta: doc.delta,
        }
        .into());
    }
    let d = VertexSet::from_indices(&g, &doc.u, &doc.v)?;
    let missing = undominated(&g, &d);
    if missing.is_empty() {
        println!("PASS: {} vertices dominate {g}", d.len());
        Ok(EXIT_OK)
    } else {
        println!("FAIL: {} undominated vertices in {g}", missing.len());
        for v in missing.iter() {
            println!("{v}");
        }
        Ok(EXIT_FAIL)
    }
}

fn cmd_sweep(
    from: usize,
    to: usize,
    budget_secs: Option<f64>,
    out: Option<&Path>,
    timing: bool,
) -> CmdResult {
    if !from.is_multiple_of(2) || !to.is_multiple_of(2) {
        return Err(UsageError(format!("bounds must be even, got {from}..{to}")));
    }
    if from < 16 || from > to {
        return Err(UsageError(format!(
            "need 16 <= from <= to, got {from}..{to}"
        )));
    }
    let config = SweepConfig {
        from,
        to,
        budget: budget(budget_secs)?,
        threads: threads_from_env()?,
        record_timing: timing,
    };
    let rows = sweep::sweep(&config)?;
    emit(&render_csv(&rows), out)?;
    Ok(if rows.iter().any(|r| r.failed()) {
        EXIT_FAIL
    } else {
        EXIT_OK
    })
}

fn cmd_enum_seq(
    k: usize,
    total: usize,
    exact_in_m: usize,
    adj_max: usize,
    expect: Option<usize>,
) -> CmdResult {
    if k == 0 {
        return Err(UsageError("--k must be at least 1".into()));
    }
    if total < k {
        return Err(UsageError(format!(
            "--total {total} is smaller than --k {k}"
        )));
    }
    let classes = enumerate_sequences(k, total, exact_in_m, adj_max);
    for c in &classes {
        let collisions = c
            .colliding_pairs
            .map_or_else(|| "-".to_string(), |p| p.to_string());
        println!(
            "{} parts_in_M={} adjacent_sums_in_M={} colliding_pairs={}",
            c.canonical, c.parts_in_m, c.adjacent_sums_in_m, collisions
        );
    }
    println!("count: {}", classes.len());
    match expect {
        Some(e) if e != classes.len() => {
            eprintln!("expected {e} classes, found {}", classes.len());
            Ok(EXIT_FAIL)
        }
        _ => Ok(EXIT_OK),
    }
}

fn cmd_reconstruct(n: usize, gaps: Vec<usize>) -> CmdResult {
    let g = KnodelGraph::new(DELTA, n)?;
    let seq = CyclicSequence::new(gaps, g.half())?;
    let u_set = reconstruct_positions(&g, &seq)?;
    let d = VertexSet::from_vertices(&g, u_set.iter().copied())?;
    let missing: Vec<String> = undominated(&g, &d)
        .iter()
        .filter(|v| v.side == crate::Side::V)
        .map(|v| v.to_string())
        .collect();
    println!("U-set: {d}");
    println!("V-side not dominated: {{{}}}", missing.join(","));
    Ok(EXIT_OK)
}

fn cmd_export(n: usize, format: Format, delta: u32, out: Option<&Path>) -> CmdResult {
    let g = KnodelGraph::new(delta, n)?;
    let text = match format {
        Format::Dot => export::dot(&g),
        Format::Edgelist => export::edge_list(&g),
        Format::Json => export::adjacency_json(&g),
    };
    emit(&text, out)?;
    Ok(EXIT_OK)
}
