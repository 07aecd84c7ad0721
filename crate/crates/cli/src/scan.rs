use std::io::{BufRead, BufReader, Write};

use clap::{Args, ValueEnum};
use dompack::families::{recognize_at_free, recognize_chordal, recognize_distance_hereditary};
use dompack::io::{from_graph6, to_graph6};
use dompack::oracles::gamma_rho;
use dompack::ratio::{self, Rational};
use dompack::Graph;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Cap on the labelled enumerator; `2^(n choose 2)` graphs.
pub const ENUMERATE_MAX_N: usize = 7;
const CHUNK: usize = 4096;

pub const FLAG_SUBCUBIC: u32 = 1;
pub const FLAG_TREE: u32 = 2;
pub const FLAG_CONNECTED: u32 = 4;
pub const FLAG_AT_FREE: u32 = 8;
pub const FLAG_CHORDAL: u32 = 16;
pub const FLAG_DISTANCE_HEREDITARY: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    All,
    Subcubic,
    Tree,
    Connected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// `gamma >= rho`.
    Duality,
    /// `gamma <= 2 rho + 1`; equality cases are listed.
    Henning,
    /// Trees have `gamma = rho`.
    Treeeq,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// `enumerate-n N` or `file PATH` (graph6 lines, `-` for stdin).
    #[arg(long, num_args = 2, value_names = ["KIND", "ARG"], required = true)]
    pub source: Vec<String>,
    #[arg(long, value_enum, default_value = "all")]
    pub filter: Filter,
    #[arg(long, value_enum, default_value = "duality")]
    pub check: Check,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Print only the summary line.
    #[arg(long)]
    pub summary_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Equality,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub gamma: usize,
    pub rho: usize,
    #[serde(with = "ratio::opt_as_string")]
    pub ratio: Option<Rational>,
    pub class_flags: u32,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub check: Option<Check>,
    pub graphs: usize,
    pub filtered_out: usize,
    pub malformed: usize,
    pub violations: usize,
    pub equality: usize,
    #[serde(with = "ratio::opt_as_string")]
    pub max_ratio: Option<Rational>,
    /// graph6 of every equality case (henning only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub equality_witnesses: Vec<String>,
}

pub fn class_flags(g: &Graph) -> u32 {
    let mut f = 0;
    let connected = g.is_connected();
    if g.max_degree() <= 3 {
        f |= FLAG_SUBCUBIC;
    }
    if connected {
        f |= FLAG_CONNECTED;
        if g.m() + 1 == g.n() {
            f |= FLAG_TREE;
        }
        if recognize_distance_hereditary(g) {
            f |= FLAG_DISTANCE_HEREDITARY;
        }
    }
    if recognize_at_free(g) {
        f |= FLAG_AT_FREE;
    }
    if recognize_chordal(g).is_some() {
        f |= FLAG_CHORDAL;
    }
    f
}

fn keep(filter: Filter, flags: u32) -> bool {
    match filter {
        Filter::All => true,
        Filter::Subcubic => flags & FLAG_SUBCUBIC != 0,
        Filter::Tree => flags & FLAG_TREE != 0,
        Filter::Connected => flags & FLAG_CONNECTED != 0,
    }
}

fn judge(check: Check, gamma: usize, rho: usize, flags: u32) -> Outcome {
    match check {
        Check::Duality if gamma < rho => Outcome::Fail,
        Check::Duality if gamma == rho => Outcome::Equality,
        Check::Duality => Outcome::Pass,
        Check::Henning if gamma > 2 * rho + 1 => Outcome::Fail,
        Check::Henning if gamma == 2 * rho + 1 => Outcome::Equality,
        Check::Henning => Outcome::Pass,
        Check::Treeeq if flags & FLAG_TREE == 0 => Outcome::Skipped,
        Check::Treeeq if gamma == rho => Outcome::Pass,
        Check::Treeeq => Outcome::Fail,
    }
}

/// `None` when the filter drops the graph.
pub fn evaluate(g: &Graph, filter: Filter, check: Check) -> CliResult<Option<ScanRecord>> {
    let flags = class_flags(g);
    if !keep(filter, flags) {
        return Ok(None);
    }
    let (gamma, rho) = gamma_rho(g)?;
    Ok(Some(ScanRecord {
        graph6: to_graph6(g),
        n: g.n(),
        m: g.m(),
        gamma,
        rho,
        ratio: ratio::achieved(gamma, rho),
        class_flags: flags,
        outcome: judge(check, gamma, rho, flags),
    }))
}

/// Labelled graph number `mask` on `n` vertices; bit `i` is the `i`-th pair
/// in row-major order.
pub fn labelled_graph(n: usize, mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).expect("pairs are distinct")
}

enum Item {
    Graph(Graph),
    Malformed { line: usize, error: String },
}

fn source(args: &ScanArgs) -> CliResult<Box<dyn Iterator<Item = Item>>> {
    match args.source.as_slice() {
        [kind, n] if kind == "enumerate-n" => {
            let n: usize = n.parse().map_err(|_| CliError::Parse(format!("bad vertex count {n:?}")))?;
            if n > ENUMERATE_MAX_N {
                return Err(CliError::Oversize(format!(
                    "labelled enumeration is capped at n = {ENUMERATE_MAX_N}; pipe a graph6 stream instead"
                )));
            }
            if n == 0 {
                return Ok(Box::new(std::iter::empty()));
            }
            let pairs = n * (n - 1) / 2;
            Ok(Box::new((0..1u64 << pairs).map(move |mask| Item::Graph(labelled_graph(n, mask)))))
        }
        [kind, path] if kind == "file" => {
            let reader: Box<dyn BufRead> = if path == "-" {
                Box::new(BufReader::new(std::io::stdin()))
            } else {
                let f = std::fs::File::open(path).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
                Box::new(BufReader::new(f))
            };
            Ok(Box::new(reader.lines().enumerate().filter_map(|(i, line)| {
                let line = match line {
                    Ok(l) => l,
                    Err(e) => return Some(Item::Malformed { line: i + 1, error: e.to_string() }),
                };
                let t = line.trim();
                if t.is_empty() {
                    return None;
                }
                Some(match from_graph6(t) {
                    Ok(g) => Item::Graph(g),
                    Err(e) => Item::Malformed { line: i + 1, error: e.to_string() },
                })
            })))
        }
        _ => Err(CliError::Parse("--source takes `enumerate-n N` or `file PATH`".into())),
    }
}

/// Streams records to `out` and counterexamples plus malformed lines to
/// `err`. Output order follows the input for any job count.
pub fn scan(args: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<Summary> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let mut items = source(args)?;
    let mut summary = Summary { check: Some(args.check), ..Summary::default() };
    let io = |e: std::io::Error| CliError::Internal(e.to_string());
    loop {
        let chunk: Vec<Item> = items.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<CliResult<Option<ScanRecord>>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|item| match item {
                    Item::Graph(g) => evaluate(g, args.filter, args.check),
                    Item::Malformed { .. } => Ok(None),
                })
                .collect()
        });
        for (item, result) in chunk.iter().zip(results) {
            if let Item::Malformed { line, error } = item {
                summary.malformed += 1;
                writeln!(err, "{}", serde_json::json!({ "malformed": { "line": line, "error": error } })).map_err(io)?;
                continue;
            }
            let Some(rec) = result? else {
                summary.filtered_out += 1;
                continue;
            };
            summary.graphs += 1;
            if rec.ratio > summary.max_ratio {
                summary.max_ratio = rec.ratio;
            }
            match rec.outcome {
                Outcome::Fail => {
                    summary.violations += 1;
                    writeln!(err, "{}", serde_json::json!({ "counterexample": rec })).map_err(io)?;
                }
                Outcome::Equality => {
                    summary.equality += 1;
                    if args.check == Check::Henning {
                        summary.equality_witnesses.push(rec.graph6.clone());
                    }
                }
                Outcome::Pass | Outcome::Skipped => {}
            }
            if !args.summary_only {
                writeln!(out, "{}", serde_json::to_string(&rec).unwrap()).map_err(io)?;
            }
        }
    }
    Ok(summary)
}

pub fn run(args: &ScanArgs) -> CliResult<String> {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let summary = scan(args, &mut out, &mut stderr.lock())?;
    out.flush().map_err(|e| CliError::Internal(e.to_string()))?;
    let line = serde_json::json!({ "summary": summary }).to_string();
    if summary.violations > 0 {
        let _ = writeln!(out, "{line}").and_then(|_| out.flush());
        return Err(CliError::Validation(format!("{} violation(s) of {:?}", summary.violations, args.check)));
    }
    Ok(line)
}
