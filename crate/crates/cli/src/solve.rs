use std::path::PathBuf;

use clap::{Args, ValueEnum};
use dompack::oracles::{exact_domination, exact_packing, ExactResult};
use dompack::Mode;
use serde::Serialize;

use crate::error::CliResult;
use crate::input::{instance, load_graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Gamma,
    Rho,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value = "gamma")]
    pub variant: Variant,
    #[arg(long, default_value = "plain")]
    pub mode: Mode,
    /// Free dominators: `all`, `none` or ids like `0,3,4`.
    #[arg(long)]
    pub x: Option<String>,
    /// Pre-dominated vertices, same syntax as `--x`.
    #[arg(long)]
    pub y: Option<String>,
    /// graph6, JSON edge list or disk CSV; `-` reads stdin.
    pub input: PathBuf,
}

#[derive(Serialize)]
struct Output<'a> {
    variant: Variant,
    mode: Mode,
    #[serde(flatten)]
    result: &'a ExactResult,
}

pub fn run(args: &SolveArgs) -> CliResult<String> {
    let g = load_graph(&args.input)?;
    let inst = instance(g, args.x.as_deref(), args.y.as_deref(), args.mode)?;
    let result = match args.variant {
        Variant::Gamma => exact_domination(&inst)?,
        Variant::Rho => exact_packing(&inst)?,
    };
    let out = Output { variant: args.variant, mode: args.mode, result: &result };
    Ok(serde_json::to_string(&out).expect("solver output serializes"))
}
