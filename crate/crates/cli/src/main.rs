//! Command-line driver: analyze hole structure, certify competition-number
//! bounds, solve exactly, verify certificates, compute competition graphs,
//! and scan generated corpora.
//!
//! Exit codes: 0 success, 1 verification reject (or scan violations),
//! 2 input error, 3 search budget exhausted.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use holecert::certificate::Certificate;
use holecert::construct::{certify_with, CertifyError};
use holecert::exact::{exact_k, SolveBudget, SolveError};
use holecert::graph::{Digraph, Graph};
use holecert::hole::analyze;
use holecert::scan::{run_scan, ScanConfig, ScanMode};
use holecert::verify::{competition_graph, verify_certificate, Verdict};

const EXIT_REJECT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "holecert", version, about = "Competition-number certificates for graphs with few holes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report holes, their common-neighbor sets, the shared path, and the
    /// structural validator flags of a graph.
    Analyze { graph: PathBuf },
    /// Build and verify a certificate for an upper bound on the
    /// competition number, then write it out.
    Certify {
        graph: PathBuf,
        /// Certificate output path.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Compute the exact competition number by exhaustive search.
    Exact {
        graph: PathBuf,
        /// Largest k to try.
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        /// Search-tree node limit.
        #[arg(long, default_value_t = 20_000_000)]
        nodes: u64,
    },
    /// Check a certificate against its graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Print the competition graph of a digraph.
    Compete { digraph: PathBuf },
    /// Sweep generated graphs: hole counts, certificates, exact values.
    Scan {
        /// Vertex counts, as a single value or an inclusive range A..B.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, value_enum)]
        mode: Mode,
        /// Random-mode draws per vertex count.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Random-mode edge probability.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let parse_one = |t: &str| t.parse::<usize>().map_err(|e| format!("bad vertex count {t:?}: {e}"));
    match text.split_once("..") {
        Some((lo, hi)) => Ok((parse_one(lo)?, parse_one(hi)?)),
        None => {
            let n = parse_one(text)?;
            Ok((n, n))
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("holecert: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    Graph::parse(&text).map_err(|e| {
        eprintln!("holecert: {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn read_digraph(path: &PathBuf) -> Result<Digraph, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("holecert: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    Digraph::parse(&text).map_err(|e| {
        eprintln!("holecert: {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn run(command: Command) -> Result<(), u8> {
    match command {
        Command::Analyze { graph } => {
            let g = read_graph(&graph)?;
            let report = analyze(&g, 3).map_err(|e| {
                eprintln!("holecert: analysis failed: {e}");
                EXIT_REJECT
            })?;
            print!("{}", report.to_text());
            Ok(())
        }
        Command::Certify { graph, out } => {
            let g = read_graph(&graph)?;
            let cert = certify_with(&g, &SolveBudget::default()).map_err(|e| {
                let CertifyError::Fallback(inner) = &e;
                eprintln!("holecert: certification failed: {e}");
                match inner {
                    SolveError::TooLarge(_) => EXIT_INPUT,
                    _ => EXIT_BUDGET,
                }
            })?;
            fs::write(&out, cert.to_text()).map_err(|e| {
                eprintln!("holecert: cannot write {}: {e}", out.display());
                EXIT_INPUT
            })?;
            println!("k<={} fallback={}", cert.k, u8::from(cert.fallback_used));
            Ok(())
        }
        Command::Exact { graph, max_k, nodes } => {
            let g = read_graph(&graph)?;
            let budget = SolveBudget { max_k, node_limit: nodes, time_hint_secs: 60 };
            let witness = exact_k(&g, &budget).map_err(|e| {
                eprintln!("holecert: exact solve failed: {e}");
                match e {
                    SolveError::TooLarge(_) => EXIT_INPUT,
                    _ => EXIT_BUDGET,
                }
            })?;
            println!("k={}", witness.k);
            print!("{}", witness.digraph.to_text());
            Ok(())
        }
        Command::Verify { graph, certificate } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&certificate).map_err(|e| {
                eprintln!("holecert: cannot read {}: {e}", certificate.display());
                EXIT_INPUT
            })?;
            let cert = Certificate::parse(&text, g.clone()).map_err(|e| {
                eprintln!("holecert: {}: {e}", certificate.display());
                EXIT_INPUT
            })?;
            match verify_certificate(&g, &cert) {
                Verdict::Accept => {
                    println!("accept k<={}", cert.k);
                    Ok(())
                }
                Verdict::Reject { clause, reason } => {
                    eprintln!("holecert: reject (clause {clause}): {reason}");
                    Err(EXIT_REJECT)
                }
            }
        }
        Command::Compete { digraph } => {
            let d = read_digraph(&digraph)?;
            print!("{}", competition_graph(&d).to_text());
            Ok(())
        }
        Command::Scan { n, mode, samples, p, seed } => {
            let cfg = ScanConfig {
                n_lo: n.0,
                n_hi: n.1,
                mode: match mode {
                    Mode::Exhaustive => ScanMode::Exhaustive,
                    Mode::Random => ScanMode::Random,
                },
                samples,
                edge_probability: p,
                seed,
                hole_cap: 3,
                budget: SolveBudget::default(),
            };
            let report = run_scan(&cfg).map_err(|e| {
                eprintln!("holecert: {e}");
                EXIT_INPUT
            })?;
            print!("{}", report.text);
            if report.budget_exhausted > 0 {
                Err(EXIT_BUDGET)
            } else if report.violations > 0 {
                Err(EXIT_REJECT)
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
