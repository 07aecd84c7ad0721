use std::path::PathBuf;

use clap::{Args, ValueEnum};
use dompack::constructions::{check_convex_encoding, unitdisk_constant, ConvexEncoding};
use dompack::engine::{unwind_trace, ClassTag, RuleId, WitnessPair};
use dompack::families::{
    check_contraction_sequence, check_rotation_planarity, check_tw_certificate, ContractionSequence, RotationSystem,
};
use dompack::io::parse_graph;
use dompack::{Rational, XYInstance};

use crate::construct::completion_width;
use crate::error::{CliError, CliResult};
use crate::input::{instance, load_graph, load_json, read_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Witness,
    TwCert,
    TwwSeq,
    Rotation,
    Convex,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub what: What,
    /// Width to check a treewidth certificate against.
    #[arg(long)]
    pub k: Option<usize>,
    /// X and Y of the instance a witness was built for.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    /// The artifact to check.
    pub artifact: PathBuf,
    /// The graph it refers to.
    pub graph: PathBuf,
}

fn invalid(reason: impl Into<String>) -> CliError {
    CliError::Validation(reason.into())
}

/// Constant and additive term the class certifies on this instance, when
/// they do not depend on a certificate.
fn expected_bound(class: ClassTag, inst: &XYInstance) -> Option<(Rational, u64)> {
    let int = Rational::from_integer;
    let g = &inst.graph;
    Some(match class {
        ClassTag::Planar => (int(10), 0),
        ClassTag::Dh => (int(2), 0),
        ClassTag::Convex => (int(3), 0),
        ClassTag::Atfree => (int(3), 2),
        ClassTag::Unitdisk => (int(unitdisk_constant() as u64), 0),
        ClassTag::Generic => (int(g.max_degree() as u64 + 1), 0),
        ClassTag::Twodeg => {
            let weight: usize = inst.x.iter().map(|v| g.degree(v).min(2)).sum();
            (int(7), weight as u64)
        }
        ClassTag::Treewidth | ClassTag::Twinwidth => return None,
    })
}

fn witness(args: &ValidateArgs) -> CliResult<()> {
    let w: WitnessPair = load_json(&args.artifact)?;
    let g = load_graph(&args.graph)?;
    let inst = instance(g, args.x.as_deref(), args.y.as_deref(), w.mode)?;
    if w.mode != crate::construct::class_mode(w.class) {
        return Err(invalid(format!("class {} is not certified in mode {}", w.class, w.mode)));
    }
    if let Some((c, add)) = expected_bound(w.class, &inst) {
        if (w.constant, w.additive) != (c, add) {
            return Err(invalid(format!(
                "class {} certifies {} |P| + {add}, witness claims {} |P| + {}",
                w.class, c, w.constant, w.additive
            )));
        }
    }
    w.check(&inst).map_err(invalid)?;
    let engine = w.trace.iter().any(|a| a.rule != RuleId::ConvexSwap);
    if engine {
        let (d, p) = unwind_trace(&inst, &w.trace).map_err(|e| invalid(format!("trace does not replay: {e}")))?;
        if d.into_iter().collect::<Vec<_>>() != w.d || p.into_iter().collect::<Vec<_>>() != w.p {
            return Err(invalid("trace unwinds to a different pair"));
        }
    }
    Ok(())
}

pub fn run(args: &ValidateArgs) -> CliResult<String> {
    let g = || load_graph(&args.graph);
    match args.what {
        What::Witness => witness(args)?,
        What::TwCert => {
            let text = read_text(&args.artifact)?;
            let h = parse_graph(&text).map_err(|e| CliError::Parse(format!("{}: {e}", args.artifact.display())))?;
            let k = match args.k {
                Some(k) => k,
                None => completion_width(&h)?,
            };
            check_tw_certificate(&g()?, &h, k).map_err(invalid)?;
        }
        What::TwwSeq => {
            let seq: ContractionSequence = load_json(&args.artifact)?;
            check_contraction_sequence(&g()?, &seq).map_err(invalid)?;
        }
        What::Rotation => {
            let rs: RotationSystem = load_json(&args.artifact)?;
            check_rotation_planarity(&g()?, &rs).map_err(invalid)?;
        }
        What::Convex => {
            let enc: ConvexEncoding = load_json(&args.artifact)?;
            check_convex_encoding(&g()?, &enc).map_err(invalid)?;
        }
    }
    let what = args.what.to_possible_value().expect("no skipped variants");
    Ok(serde_json::json!({ "valid": true, "what": what.get_name() }).to_string())
}
