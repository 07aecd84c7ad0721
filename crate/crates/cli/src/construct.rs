use std::path::PathBuf;

use clap::Args;
use dompack::constructions::{
    construct_atfree, construct_convex, construct_generic, construct_unitdisk, ConstructionError, ConvexEncoding,
};
use dompack::engine::{
    run_distance_hereditary, run_planar, run_treewidth, run_twinwidth, run_twodeg, ClassTag, WitnessPair,
};
use dompack::families::{chordal_clique_number, recognize_at_free, recognize_chordal, ContractionSequence, RotationSystem};
use dompack::io::parse_graph;
use dompack::{Mode, XYInstance};

use crate::error::{CliError, CliResult};
use crate::input::{instance, is_csv, load_disks, load_graph, load_json, read_text};

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub class: ClassTag,
    /// Chordal completion (treewidth), contraction sequence (twinwidth),
    /// rotation system (planar, optional) or interval encoding (convex).
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    /// Width to certify; defaults to what the certificate shows.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    /// Vertex forced into the initial convex packing.
    #[arg(long)]
    pub seed: Option<usize>,
    pub input: PathBuf,
}

/// The mode a class is certified in.
pub fn class_mode(class: ClassTag) -> Mode {
    match class {
        ClassTag::Dh => Mode::Total,
        ClassTag::Twinwidth => Mode::Black,
        _ => Mode::Plain,
    }
}

fn certificate(args: &ConstructArgs) -> CliResult<&PathBuf> {
    args.certificate
        .as_ref()
        .ok_or_else(|| CliError::Parse(format!("class {} needs --certificate", args.class)))
}

fn construction_error(e: ConstructionError) -> CliError {
    match e {
        ConstructionError::EncodingInvalid(_) | ConstructionError::IsolatedVertex(_) => {
            CliError::Validation(e.to_string())
        }
        ConstructionError::DiskParse { .. } => CliError::Parse(e.to_string()),
        ConstructionError::NotFound => CliError::construction(e.to_string()),
    }
}

/// Width shown by a chordal completion.
pub fn completion_width(h: &dompack::Graph) -> CliResult<usize> {
    let peo = recognize_chordal(h).ok_or_else(|| CliError::Validation("completion is not chordal".into()))?;
    Ok(chordal_clique_number(h, &peo).saturating_sub(1).max(1))
}

fn reject_marks(args: &ConstructArgs) -> CliResult<()> {
    if args.x.is_some() || args.y.is_some() {
        return Err(CliError::Parse(format!("class {} takes no --x/--y", args.class)));
    }
    Ok(())
}

pub fn build(args: &ConstructArgs) -> CliResult<(WitnessPair, XYInstance)> {
    let mode = class_mode(args.class);
    if args.class == ClassTag::Unitdisk {
        reject_marks(args)?;
        if !is_csv(&args.input) {
            return Err(CliError::Parse("unit-disk input must be a .csv of centres".into()));
        }
        let cfg = load_disks(&args.input)?;
        return Ok((construct_unitdisk(&cfg), XYInstance::plain(cfg.graph())));
    }
    let g = load_graph(&args.input)?;
    let inst = instance(g.clone(), args.x.as_deref(), args.y.as_deref(), mode)?;
    let witness = match args.class {
        ClassTag::Planar => {
            let emb: Option<RotationSystem> = args.certificate.as_ref().map(|p| load_json(p)).transpose()?;
            run_planar(&inst, emb.as_ref())?.witness
        }
        ClassTag::Treewidth => {
            let path = certificate(args)?;
            let h = parse_graph(&read_text(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            let k = match args.k {
                Some(k) => k,
                None => completion_width(&h)?,
            };
            run_treewidth(&inst, &h, k)?.witness
        }
        ClassTag::Twodeg => run_twodeg(&inst)?.witness,
        ClassTag::Twinwidth => {
            let seq: ContractionSequence = load_json(certificate(args)?)?;
            let k = args.k.unwrap_or(seq.declared_width.max(2));
            run_twinwidth(&inst, &seq, k)?.witness
        }
        ClassTag::Dh => run_distance_hereditary(&inst)?.witness,
        ClassTag::Atfree => {
            reject_marks(args)?;
            if !recognize_at_free(&g) {
                return Err(CliError::Validation("graph has an asteroidal triple".into()));
            }
            construct_atfree(&g).map_err(construction_error)?
        }
        ClassTag::Convex => {
            reject_marks(args)?;
            let enc: ConvexEncoding = load_json(certificate(args)?)?;
            construct_convex(&g, &enc, args.seed).map_err(construction_error)?
        }
        ClassTag::Generic => {
            reject_marks(args)?;
            construct_generic(&g)
        }
        ClassTag::Unitdisk => unreachable!("handled above"),
    };
    Ok((witness, inst))
}

pub fn run(args: &ConstructArgs) -> CliResult<String> {
    let (witness, inst) = build(args)?;
    if let Err(reason) = witness.check(&inst) {
        return Err(CliError::Construction {
            message: format!("emitted witness failed its own check: {reason}"),
            dump: Some(serde_json::to_string(&witness).expect("witness serializes")),
        });
    }
    Ok(serde_json::to_string(&witness).expect("witness serializes"))
}
