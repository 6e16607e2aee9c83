use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hyperlap::catalog::examples_table;
use hyperlap::document::{self, DocumentError};
use hyperlap::random::{generate_document, Family};
use hyperlap::report::{build_report, cap_from_env, spectrum_line};
use hyperlap::spectra::{spectrum, Operator, SpectralError};
use hyperlap::verify::{verify, VerifyOptions};
use hyperlap::ChemicalHypergraph;

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const NUMERIC_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "hyperlap", version, about = "Laplacian spectra of chemical hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Vertex,
    Hyperedge,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Print eigenvalues (descending) and the exact zero multiplicity.
    Spectrum {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        operator: Which,
        #[arg(long)]
        json: bool,
        /// Accept hyperedges with one empty side (as produced by `flip`).
        #[arg(long)]
        relaxed: bool,
    },
    /// Full structural and spectral report.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        relaxed: bool,
    },
    /// Emit a seeded random hypergraph document.
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        hyperedges: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "generic")]
        family: Family,
    },
    /// Reverse the role of one vertex in every hyperedge containing it.
    Flip {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        relaxed: bool,
    },
    /// Run the invariant suite on one instance.
    Verify {
        file: PathBuf,
        #[arg(long)]
        relaxed: bool,
    },
    /// Check the built-in instances against their known values.
    Examples {
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Numeric(SpectralError),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        Failure::Numeric(e)
    }
}

fn load(path: &Path, relaxed: bool) -> Result<ChemicalHypergraph, Failure> {
    Ok(if relaxed { document::parse_relaxed(path)? } else { document::parse(path)? })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Spectrum { file, operator, json, relaxed } => {
            let g = load(&file, relaxed)?;
            let ops: &[Operator] = match operator {
                Which::Vertex => &[Operator::Vertex],
                Which::Hyperedge => &[Operator::Hyperedge],
                Which::Both => &[Operator::Vertex, Operator::Hyperedge],
            };
            let spectra = ops.iter().map(|&op| spectrum(&g, op)).collect::<Result<Vec<_>, _>>()?;
            if json {
                let out = serde_json::json!({ "spectra": spectra });
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                for s in &spectra {
                    println!("{}: {}", s.operator, spectrum_line(s));
                }
            }
            Ok(OK)
        }
        Command::Report { file, json, relaxed } => {
            let cap = cap_from_env().map_err(Failure::Input)?;
            let g = load(&file, relaxed)?;
            let report = build_report(&g, cap)?;
            if json {
                print!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(if report.all_passed() { OK } else { CHECK_FAILED })
        }
        Command::Random { vertices, hyperedges, seed, family } => {
            let doc = generate_document(vertices, hyperedges, seed, family).map_err(|e| Failure::Input(e.to_string()))?;
            print!("{}", doc.to_json());
            Ok(OK)
        }
        Command::Flip { file, vertex, relaxed } => {
            let g = load(&file, relaxed)?;
            let flipped = g.flip_vertex(&vertex).map_err(|e| Failure::Input(e.to_string()))?;
            print!("{}", flipped.to_document().to_json());
            Ok(OK)
        }
        Command::Verify { file, relaxed } => {
            let cap = cap_from_env().map_err(Failure::Input)?;
            let g = load(&file, relaxed)?;
            let opts = VerifyOptions { closed_system_cap: cap, ..VerifyOptions::default() };
            let checks = verify(&g, &opts)?;
            match checks.iter().find(|c| !c.passed) {
                Some(c) => {
                    eprintln!(
                        "violated: {} (lhs = {}, rhs = {}){}",
                        c.name,
                        c.lhs,
                        c.rhs,
                        c.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
                    );
                    Ok(CHECK_FAILED)
                }
                None => {
                    println!("{} checks passed", checks.len());
                    Ok(OK)
                }
            }
        }
        Command::Examples { json } => {
            let rows = examples_table()?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).expect("serializable"));
            } else {
                println!("{:<36} {:<16} {:>16} {:>16} {:>10}  result", "instance", "quantity", "expected", "computed", "|delta|");
                for r in &rows {
                    println!(
                        "{:<36} {:<16} {:>16} {:>16} {:>10.3e}  {}",
                        r.instance,
                        r.quantity,
                        r.expected,
                        r.computed,
                        r.delta,
                        if r.pass { "pass" } else { "FAIL" }
                    );
                }
            }
            Ok(if rows.iter().all(|r| r.pass) { OK } else { CHECK_FAILED })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(NUMERIC_ERROR)
        }
    }
}
