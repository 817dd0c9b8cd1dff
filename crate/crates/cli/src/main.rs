use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use oddminor::harness::{
    cmd_find, cmd_invariants, cmd_verify, run_sweep, Certificate, FindKind, SweepConfig,
    SweepSource,
};
use oddminor::io::{parse_edge_list, parse_graph6};
use oddminor::model::Pattern;
use oddminor::oracle::brute_force_odd_model;
use oddminor::{Error, Graph};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_UNVERIFIED: u8 = 3;
const EXIT_CONTRADICTION: u8 = 4;

/// Odd minor models in graphs with independence number at most two.
#[derive(Parser)]
#[command(name = "oddminor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, alpha, chi, omega and kappa as JSON.
    Invariants {
        #[command(flatten)]
        input: Input,
    },
    /// Build and verify a certificate.
    Find {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "bipartite")]
        pattern: FindPattern,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        certificate: PathBuf,
        /// Also require single-vertex branch sets to share a color.
        #[arg(long)]
        special: bool,
    },
    /// Run the constructions over many graphs and write a report.
    Sweep {
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        /// Order of the graphs (upper end of the range in exhaustive mode).
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Lower end of the order range in exhaustive mode.
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Cross-check every pair with the brute-force search.
        #[arg(long)]
        oracle: bool,
        /// Also search for K^l_{l,chi-l} with 2l <= chi by brute force.
        #[arg(long)]
        conjecture17: bool,
        /// graph6 lines of triangle-free graphs, for stream mode.
        #[arg(short, long)]
        input: Option<String>,
        /// Leave out per-graph records.
        #[arg(long)]
        summary: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Brute-force search for an odd model.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        pattern: OraclePattern,
        /// Pattern order; defaults to ceil(n/2).
        #[arg(long)]
        size: Option<usize>,
        /// Left side size for bipartite patterns.
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long)]
        special: bool,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file, or "-" for standard input.
    #[arg(short, long, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    Graph6,
    Dimacs,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum FindPattern {
    Bipartite,
    HalfOrder,
    Clique,
}

#[derive(Clone, Copy, ValueEnum)]
enum OraclePattern {
    Clique,
    Bipartite,
    PlusClique,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
    Stream,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Failed { code: u8, detail: serde_json::Value },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_text(source: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if source == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(source)
            .map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
    }
    Ok(text)
}

fn read_graph(input: &Input) -> Result<Graph, Failure> {
    let text = read_text(&input.input)?;
    let graph = match input.format {
        Format::Graph6 => parse_graph6(&text)?,
        Format::Dimacs | Format::Edges => parse_edge_list(&text)?,
        // A graph6 file is a single token; edge lists have more.
        Format::Auto if text.split_whitespace().nth(1).is_some() => parse_edge_list(&text)?,
        Format::Auto => parse_graph6(&text)?,
    };
    Ok(graph)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants { input } => {
            let g = read_graph(&input)?;
            emit(&serde_json::to_string(&cmd_invariants(&g)?).unwrap(), None)
        }
        Command::Find {
            input,
            pattern,
            ell,
            output,
        } => {
            let g = read_graph(&input)?;
            let kind = match pattern {
                FindPattern::Bipartite => FindKind::Bipartite,
                FindPattern::HalfOrder => FindKind::HalfOrder,
                FindPattern::Clique => FindKind::Clique,
            };
            let cert = cmd_find(&g, kind, ell)?;
            emit(&cert.to_json(), output.as_deref())
        }
        Command::Verify {
            input,
            certificate,
            special,
        } => {
            let g = read_graph(&input)?;
            let cert = Certificate::from_json(&read_text(&certificate.to_string_lossy())?)?;
            let violations = cmd_verify(&g, &cert, special)?;
            if violations.is_empty() {
                emit(&json!({"verified": true}).to_string(), None)
            } else {
                Err(Failure::Failed {
                    code: EXIT_UNVERIFIED,
                    detail: json!({"verified": false, "violations": violations}),
                })
            }
        }
        Command::Sweep {
            mode,
            n,
            n_min,
            count,
            seed,
            jobs,
            oracle,
            conjecture17,
            input,
            summary,
            output,
        } => {
            let source = match mode {
                Mode::Exhaustive => SweepSource::Exhaustive {
                    n_min: n_min.unwrap_or(n),
                    n_max: n,
                },
                Mode::Random => SweepSource::Random { n, count, seed },
                Mode::Stream => {
                    let text = read_text(input.as_deref().unwrap_or("-"))?;
                    SweepSource::Stream {
                        lines: text.lines().map(String::from).collect(),
                    }
                }
            };
            let config = SweepConfig {
                source,
                oracle,
                conjecture17,
                jobs,
                keep_records: !summary,
            };
            let report = run_sweep(&config)?;
            emit(&report.to_json(), output.as_deref())?;
            let t = &report.totals;
            eprintln!(
                "{} graphs, {}/{} pairs verified, {} contradictions, {} oracle disagreements",
                t.graphs, t.verified, t.pairs, t.contradictions, t.oracle_disagreements
            );
            if t.contradictions > 0 {
                for event in &report.contradictions {
                    eprintln!(
                        "contradiction in {}: {} ({})",
                        event.stage, event.detail, event.graph6
                    );
                }
                return Err(Failure::Failed {
                    code: EXIT_CONTRADICTION,
                    detail: json!({"contradictions": t.contradictions}),
                });
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Failed {
                    code: EXIT_UNVERIFIED,
                    detail: serde_json::to_value(t).unwrap(),
                })
            }
        }
        Command::Oracle {
            input,
            pattern,
            size,
            ell,
            special,
        } => {
            let g = read_graph(&input)?;
            let size = size.unwrap_or(g.n().div_ceil(2));
            let right = size
                .checked_sub(ell)
                .ok_or_else(|| Failure::Usage("--ell exceeds --size".into()))?;
            let p = match pattern {
                OraclePattern::Clique => Pattern::Clique { size },
                OraclePattern::Bipartite => Pattern::Bipartite { left: ell, right },
                OraclePattern::PlusClique => Pattern::BipartitePlusClique { left: ell, right },
            };
            match brute_force_odd_model(&g, p, special)? {
                Some(model) => emit(&serde_json::to_string_pretty(&model).unwrap(), None),
                None => emit(&json!({"pattern": p, "found": false}).to_string(), None),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("{}", json!({"error": "usage", "message": message}));
            ExitCode::from(EXIT_PRECONDITION)
        }
        Err(Failure::Failed { code, detail }) => {
            eprintln!("{detail}");
            ExitCode::from(code)
        }
        Err(Failure::Lib(e)) => {
            let code = match &e {
                Error::Unverified { .. } => EXIT_UNVERIFIED,
                Error::Contradiction(_) => EXIT_CONTRADICTION,
                _ => EXIT_PRECONDITION,
            };
            let mut report = json!({"error": e.reason(), "message": e.to_string()});
            if let Error::Contradiction(event) = &e {
                report["event"] = serde_json::to_value(event).unwrap();
            }
            eprintln!("{report}");
            ExitCode::from(code)
        }
    }
}
