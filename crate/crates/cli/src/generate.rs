use std::path::PathBuf;

use clap::{Args, ValueEnum};
use dompack::families::{
    catalog, connected_subcubic, fill_in, gen_chained_blocks, gen_complete, gen_cycle, gen_dodecahedron, gen_path,
    gen_petersen, gen_random_cograph, gen_random_convex, gen_random_distance_hereditary, gen_random_graph,
    gen_random_interval, gen_random_partial_ktree, gen_random_planar, gen_random_tree, gen_random_twodeg,
    gen_random_unitdisk, gen_rook, gen_split, gen_threedeg, gen_threedeg_without_apex, greedy_tww_sequence,
    FamilyError,
};
use dompack::io::{to_graph6, to_json};
use dompack::Graph;

use crate::error::{CliError, CliResult};
use crate::input::{load_graph, Params};

/// Largest order accepted for the subcubic enumeration.
pub const SUBCUBIC_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    G6,
    Json,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub family: String,
    /// `key=value` pairs, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    #[arg(long, value_enum, default_value = "g6")]
    pub format: GraphFormat,
    /// Where to write the companion certificate (completion, rotation
    /// system or encoding) for families that have one.
    #[arg(long)]
    pub certificate_out: Option<PathBuf>,
}

pub struct Generated {
    pub text: String,
    pub certificate: Option<String>,
}

fn family_error(e: FamilyError) -> CliError {
    match e {
        FamilyError::Oversize { .. } => CliError::Oversize(e.to_string()),
        _ => CliError::Parse(e.to_string()),
    }
}

fn encode(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::G6 => to_graph6(g),
        GraphFormat::Json => to_json(g),
    }
}

pub fn generate(args: &GenerateArgs) -> CliResult<Generated> {
    let mut p = Params::parse(&args.params)?;
    let fmt = args.format;
    let graph = |g: Graph| Generated { text: encode(&g, fmt), certificate: None };
    let out = match args.family.as_str() {
        "chained-blocks" => graph(gen_chained_blocks(p.get("i", 2)?).map_err(family_error)?),
        "split" => graph(gen_split(p.get("k", 3)?).map_err(family_error)?),
        "threedeg" => graph(gen_threedeg(p.get("k", 2)?).map_err(family_error)?),
        "threedeg-minus-apex" => graph(gen_threedeg_without_apex(p.get("k", 2)?).map_err(family_error)?),
        "rook" => graph(gen_rook(p.get("n", 3)?)),
        "cycle" => graph(gen_cycle(p.get("n", 7)?)),
        "path" => graph(gen_path(p.get("n", 6)?)),
        "complete" => graph(gen_complete(p.get("n", 5)?)),
        "petersen" => graph(gen_petersen()),
        "dodecahedron" => graph(gen_dodecahedron()),
        "random-graph" => graph(gen_random_graph(p.get("n", 10)?, p.get("p", 0.3)?, p.get("seed", 0)?)),
        "random-tree" => graph(gen_random_tree(p.get("n", 10)?, p.get("seed", 0)?)),
        "random-twodeg" => graph(gen_random_twodeg(p.get("n", 12)?, p.get("seed", 0)?)),
        "random-dh" => graph(gen_random_distance_hereditary(p.get("n", 12)?, p.get("seed", 0)?)),
        "random-interval" => graph(gen_random_interval(p.get("n", 12)?, p.get("seed", 0)?)),
        "random-cograph" => graph(gen_random_cograph(p.get("n", 12)?, p.get("seed", 0)?)),
        "random-unitdisk" => {
            let cfg = gen_random_unitdisk(p.get("n", 20)?, p.get("side", 10.0)?, p.get("seed", 0)?);
            Generated { text: cfg.to_csv().trim_end().to_string(), certificate: None }
        }
        "random-convex" => {
            let (g, enc) = gen_random_convex(p.get("nx", 6)?, p.get("ny", 5)?, p.get("seed", 0)?);
            Generated { text: encode(&g, fmt), certificate: Some(serde_json::to_string(&enc).unwrap()) }
        }
        "random-ktree" => {
            let (g, h) = gen_random_partial_ktree(p.get("n", 12)?, p.get("k", 2)?, p.get("keep", 0.7)?, p.get("seed", 0)?);
            Generated { text: encode(&g, fmt), certificate: Some(encode(&h, fmt)) }
        }
        "random-planar" => {
            let (g, rs) = gen_random_planar(p.get("n", 12)?, p.get("delete", 0.2)?, p.get("seed", 0)?);
            Generated { text: encode(&g, fmt), certificate: Some(serde_json::to_string(&rs).unwrap()) }
        }
        "subcubic-connected" => {
            let n = p.get("n", 6)?;
            if n > SUBCUBIC_MAX_N {
                return Err(CliError::Oversize(format!("subcubic enumeration is capped at n = {SUBCUBIC_MAX_N}")));
            }
            Generated { text: connected_subcubic(n).join("\n"), certificate: None }
        }
        other => {
            let known: Vec<&str> = catalog().iter().map(|f| f.name).collect();
            return Err(CliError::Parse(format!("unknown family {other:?}; known: {}", known.join(", "))));
        }
    };
    p.finish()?;
    Ok(out)
}

pub fn run(args: &GenerateArgs) -> CliResult<String> {
    let out = generate(args)?;
    if let Some(path) = &args.certificate_out {
        let cert = out
            .certificate
            .as_ref()
            .ok_or_else(|| CliError::Parse(format!("family {} has no certificate", args.family)))?;
        std::fs::write(path, format!("{cert}\n")).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))?;
    }
    Ok(out.text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertKind {
    /// Chordal completion from a minimum-degree elimination order.
    Tw,
    /// Greedy contraction sequence.
    Tww,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    pub kind: CertKind,
    #[arg(long, value_enum, default_value = "g6")]
    pub format: GraphFormat,
    pub input: PathBuf,
}

fn min_degree_order(g: &Graph) -> Vec<usize> {
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        g.vertices().map(|v| g.neighbors(v).iter().collect()).collect();
    let mut alive: std::collections::BTreeSet<usize> = g.vertices().collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(&v) = alive.iter().min_by_key(|&&v| (adj[v].len(), v)) {
        alive.remove(&v);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        order.push(v);
    }
    order
}

pub fn certify(args: &CertifyArgs) -> CliResult<String> {
    let g = load_graph(&args.input)?;
    Ok(match args.kind {
        CertKind::Tw => encode(&fill_in(&g, &min_degree_order(&g)), args.format),
        CertKind::Tww => serde_json::to_string(&greedy_tww_sequence(&g)).unwrap(),
    })
}
