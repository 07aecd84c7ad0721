//! `dompack`: exact domination and packing numbers, certified witness
//! constructions, graph families and batch scans.
//!
//! Exit codes: 0 ok, 2 parse error, 3 oversize input, 4 construction
//! failure, 5 validation failure.

mod construct;
mod error;
mod generate;
mod input;
mod scan;
mod solve;
mod validate;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "dompack", version, about = "Domination and packing numbers of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact gamma or rho of an (X, Y) instance.
    Solve(solve::SolveArgs),
    /// Certified (D, P) witness for a graph class.
    Construct(construct::ConstructArgs),
    /// Emit a named family member.
    Generate(generate::GenerateArgs),
    /// Compute a width certificate for a graph.
    Certify(generate::CertifyArgs),
    /// Check a witness or certificate against its graph.
    Validate(validate::ValidateArgs),
    /// Run a check over many graphs.
    Scan(scan::ScanArgs),
    /// Family metadata.
    Families {
        #[command(subcommand)]
        action: FamiliesAction,
    },
}

#[derive(Debug, Subcommand)]
enum FamiliesAction {
    /// One JSON line per family.
    List,
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Solve(a) => solve::run(a),
        Command::Construct(a) => construct::run(a),
        Command::Generate(a) => generate::run(a),
        Command::Certify(a) => generate::certify(a),
        Command::Validate(a) => validate::run(a),
        Command::Scan(a) => scan::run(a),
        Command::Families { action: FamiliesAction::List } => Ok(dompack::families::catalog()
            .iter()
            .map(|f| serde_json::to_string(f).unwrap())
            .collect::<Vec<_>>()
            .join("\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                // a closed pipe downstream is not our failure
                let _ = writeln!(std::io::stdout().lock(), "{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Construction { dump: Some(dump), .. } = &e {
                eprintln!("{dump}");
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
