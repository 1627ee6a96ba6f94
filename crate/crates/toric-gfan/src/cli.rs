//! Command-line front end: JSON jobs in, canonical JSON (or SVG) out.
//! Exit codes: 0 success, 2 precondition or input problems, 1 internal
//! errors.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cones::Fan;
use crate::field::FieldSpec;
use crate::gfan::restricted_groebner_fan;
use crate::jobdoc::{
    fan_from_doc, fan_to_doc, ideal_from_doc, int_to_doc, latvec_to_doc, parse_field,
    poly_to_doc, ring_from_doc, sigma_from_doc, toric_poly_to_doc, FanDoc, JobDocument,
    TermDoc,
};
use crate::lattice::{Int, LatVec};
use crate::nnd_resolve::{is_nnd, resolve, NndError};
use crate::svg::plot_fan;
use crate::toric::ToricIdealSpec;

#[derive(Parser)]
#[command(name = "toric-gfan", version, about = "Groebner fans, Newton \
non-degeneracy and toric embedded resolutions for ideals on affine normal \
toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dual cone of sigma
    Dual(CommonArgs),
    /// Hilbert basis of the dual cone
    Hilbert(CommonArgs),
    /// Defining ideal of the toric variety
    #[command(name = "toric-ideal")]
    ToricIdeal(CommonArgs),
    /// Tropical membership of a weight vector
    Trop(CommonArgs),
    /// Restricted Groebner fan
    Gfan(CommonArgs),
    /// Newton non-degeneracy report
    Nnd(CommonArgs),
    /// Toric embedded resolution charts
    Resolve(CommonArgs),
    /// SVG rendering of a fan
    Plot(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Job document (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Output file (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Coefficient field, Q or Fp:<p> (overrides the document)
    #[arg(long)]
    field: Option<String>,
    /// Emit resolution charts even when the NND check fails
    #[arg(long = "override-nnd")]
    override_nnd: bool,
    /// SVG output file for plots
    #[arg(long)]
    plot: Option<PathBuf>,
}

enum CmdError {
    Pre(String),
    Internal(String),
}

impl From<NndError> for CmdError {
    fn from(e: NndError) -> Self {
        match e {
            NndError::Precondition(s) => CmdError::Pre(s),
            NndError::Internal(s) => CmdError::Internal(s),
        }
    }
}

fn pre(e: String) -> CmdError {
    CmdError::Pre(e)
}

#[derive(Serialize)]
struct DualOut {
    dual_rays: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct HilbertOut {
    dual_rays: Vec<Vec<i64>>,
    hilbert_basis: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct ToricIdealOut {
    num_vars: usize,
    hilbert_basis: Vec<Vec<i64>>,
    generators: Vec<Vec<TermDoc>>,
}

#[derive(Serialize)]
struct TropOut {
    weight: Vec<i64>,
    member: bool,
}

#[derive(Serialize)]
struct PayloadOut {
    initial_ideal: Vec<Vec<TermDoc>>,
    lifted_groebner_basis: Vec<Vec<TermDoc>>,
}

#[derive(Serialize)]
struct GfanOut {
    fan: FanDoc,
    payloads: Vec<PayloadOut>,
}

#[derive(Serialize)]
struct WitnessOut {
    cone: Vec<Vec<i64>>,
    representative: Vec<i64>,
    initial_ideal: Vec<Vec<TermDoc>>,
    smooth_on_torus: bool,
}

#[derive(Serialize)]
struct NndOut {
    verdict: bool,
    witnesses: Vec<WitnessOut>,
    failing_cone: Option<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
struct ChartOut {
    cone: Vec<Vec<i64>>,
    pullbacks: Vec<Vec<TermDoc>>,
    exceptional_mults: Vec<Vec<i64>>,
    strict_transform: Vec<Vec<TermDoc>>,
    exceptional: Vec<usize>,
    snc_verdict: bool,
}

#[derive(Serialize)]
struct CompatOut {
    cone: Vec<Vec<i64>>,
    groebner_cone: usize,
}

#[derive(Serialize)]
struct ResolveOut {
    nnd_verdict: bool,
    fan: FanDoc,
    charts: Vec<ChartOut>,
    groebner_cones: Vec<Vec<Vec<i64>>>,
    compatibility: Vec<CompatOut>,
}

fn rays_doc(c: &crate::cones::Cone) -> Vec<Vec<i64>> {
    c.rays().iter().map(latvec_to_doc).collect()
}

fn ideal_doc(spec: &ToricIdealSpec) -> Vec<Vec<TermDoc>> {
    spec.generators.iter().map(toric_poly_to_doc).collect()
}

fn load(args: &CommonArgs) -> Result<(JobDocument, FieldSpec), CmdError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| pre(format!("cannot read {}: {}", args.input.display(), e)))?;
    let doc: JobDocument = serde_json::from_str(&text)
        .map_err(|e| pre(format!("malformed JSON in {}: {}", args.input.display(), e)))?;
    let field = match args.field.as_deref().or(doc.field.as_deref()) {
        Some(s) => parse_field(s).map_err(pre)?,
        None => FieldSpec::Rationals,
    };
    Ok((doc, field))
}

fn emit(args: &CommonArgs, text: String) -> Result<(), CmdError> {
    match &args.output {
        Some(p) => fs::write(p, text)
            .map_err(|e| CmdError::Internal(format!("cannot write {}: {}", p.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(args: &CommonArgs, value: &T) -> Result<(), CmdError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CmdError::Internal(e.to_string()))?;
    text.push('\n');
    emit(args, text)
}

fn run_command(cmd: &Cmd) -> Result<(), CmdError> {
    match cmd {
        Cmd::Dual(args) => {
            let (doc, _) = load(args)?;
            let sigma = sigma_from_doc(&doc).map_err(pre)?;
            let dual = sigma.dual().map_err(pre)?;
            emit_json(args, &DualOut { dual_rays: rays_doc(&dual) })
        }
        Cmd::Hilbert(args) => {
            let (doc, field) = load(args)?;
            let ring = ring_from_doc(&doc, field).map_err(pre)?;
            emit_json(
                args,
                &HilbertOut {
                    dual_rays: rays_doc(ring.sigma_dual()),
                    hilbert_basis: ring.hilbert().iter().map(latvec_to_doc).collect(),
                },
            )
        }
        Cmd::ToricIdeal(args) => {
            let (doc, field) = load(args)?;
            let ring = ring_from_doc(&doc, field).map_err(pre)?;
            emit_json(
                args,
                &ToricIdealOut {
                    num_vars: ring.num_vars(),
                    hilbert_basis: ring.hilbert().iter().map(latvec_to_doc).collect(),
                    generators: ring
                        .toric_ideal()
                        .generators()
                        .iter()
                        .map(poly_to_doc)
                        .collect(),
                },
            )
        }
        Cmd::Trop(args) => {
            let (doc, field) = load(args)?;
            let ring = ring_from_doc(&doc, field).map_err(pre)?;
            let w = doc
                .weight
                .as_ref()
                .ok_or_else(|| pre("document is missing 'weight'".into()))?;
            if w.len() != ring.num_vars() {
                return Err(pre(format!(
                    "'weight' must have length {}",
                    ring.num_vars()
                )));
            }
            let wi: Vec<Int> = w.iter().map(|x| Int::from(*x)).collect();
            let ideal = match doc.ideal {
                Some(_) => {
                    let spec = ideal_from_doc(&doc, &ring).map_err(pre)?;
                    ring.lift_ideal(&spec).map_err(CmdError::Internal)?
                }
                None => ring.toric_ideal().clone(),
            };
            let member = ring.trop_membership(&ideal, &wi).map_err(pre)?;
            emit_json(args, &TropOut { weight: w.clone(), member })
        }
        Cmd::Gfan(args) => {
            let (doc, field) = load(args)?;
            let ring = ring_from_doc(&doc, field).map_err(pre)?;
            let spec = ideal_from_doc(&doc, &ring).map_err(pre)?;
            let g = restricted_groebner_fan(&ring, &spec).map_err(CmdError::Internal)?;
            let payloads = g
                .fan()
                .maximal_cones()
                .iter()
                .map(|c| {
                    let p = g.payload(c).expect("payload per maximal cone");
                    PayloadOut {
                        initial_ideal: ideal_doc(&p.initial_ideal),
                        lifted_groebner_basis: p
                            .lifted_initial
                            .groebner_basis()
                            .iter()
                            .map(poly_to_doc)
                            .collect(),
                    }
                })
                .collect();
            emit_json(args, &GfanOut { fan: fan_to_doc(g.fan()), payloads })
        }
        Cmd::Nnd(args) => {
            let (doc, field) = load(args)?;
            let ring = ring_from_doc(&doc, field).map_err(pre)?;
            let spec = ideal_from_doc(&doc, &ring).map_err(pre)?;
            let report = is_nnd(&ring, &spec)?;
            emit_json(
                args,
                &NndOut {
                    verdict: report.verdict,
                    witnesses: report
                        .witnesses
                        .iter()
                        .map(|w| WitnessOut {
                            cone: rays_doc(&w.cone),
                            representative: latvec_to_doc(&w.representative),
                            initial_ideal: ideal_doc(&w.initial_ideal),
                            smooth_on_torus: w.smooth_on_torus,
                        })
                        .collect(),
                    failing_cone: report.failing_cone.as_ref().map(rays_doc),
                },
            )
        }
        Cmd::Resolve(args) => {
            let (doc, field) = load(args)?;
            let ring = ring_from_doc(&doc, field).map_err(pre)?;
            let spec = ideal_from_doc(&doc, &ring).map_err(pre)?;
            let report = is_nnd(&ring, &spec)?;
            let out = resolve(&ring, &spec, args.override_nnd)?;
            emit_json(
                args,
                &ResolveOut {
                    nnd_verdict: report.verdict,
                    fan: fan_to_doc(&out.fan),
                    charts: out
                        .charts
                        .iter()
                        .map(|ch| ChartOut {
                            cone: rays_doc(&ch.cone),
                            pullbacks: ch.pullbacks.iter().map(poly_to_doc).collect(),
                            exceptional_mults: ch
                                .exceptional_mults
                                .iter()
                                .map(|m| m.iter().map(int_to_doc).collect())
                                .collect(),
                            strict_transform: ch
                                .strict_transform
                                .groebner_basis()
                                .iter()
                                .map(poly_to_doc)
                                .collect(),
                            exceptional: ch.exceptional.clone(),
                            snc_verdict: ch.snc_verdict,
                        })
                        .collect(),
                    groebner_cones: out.groebner_cones.iter().map(rays_doc).collect(),
                    compatibility: out
                        .compatibility
                        .iter()
                        .map(|(c, i)| CompatOut {
                            cone: rays_doc(c),
                            groebner_cone: *i,
                        })
                        .collect(),
                },
            )
        }
        Cmd::Plot(args) => {
            let (doc, field) = load(args)?;
            let (fan, labels): (Fan, Vec<String>) = if let Some(fd) = &doc.fan {
                let fan = fan_from_doc(fd).map_err(pre)?;
                let labels = fan
                    .maximal_cones()
                    .iter()
                    .map(|c| format!("{:?}", c.rays()))
                    .collect();
                (fan, labels)
            } else {
                let ring = ring_from_doc(&doc, field).map_err(pre)?;
                if doc.ideal.is_some() {
                    let spec = ideal_from_doc(&doc, &ring).map_err(pre)?;
                    let g =
                        restricted_groebner_fan(&ring, &spec).map_err(CmdError::Internal)?;
                    let labels = g
                        .fan()
                        .maximal_cones()
                        .iter()
                        .map(|c| {
                            let p = g.payload(c).expect("payload per maximal cone");
                            serde_json::to_string(&ideal_doc(&p.initial_ideal))
                                .unwrap_or_default()
                        })
                        .collect();
                    (g.fan().clone(), labels)
                } else {
                    let fan = Fan::trivial(ring.sigma().clone());
                    let labels = vec!["sigma".to_string()];
                    (fan, labels)
                }
            };
            let section = doc.section.as_ref().map(|s| LatVec::from_i64(s));
            let svg = plot_fan(&fan, &labels, section.as_ref()).map_err(pre)?;
            match (&args.plot, &args.output) {
                (Some(p), _) | (None, Some(p)) => fs::write(p, svg).map_err(|e| {
                    CmdError::Internal(format!("cannot write {}: {}", p.display(), e))
                }),
                (None, None) => {
                    print!("{}", svg);
                    Ok(())
                }
            }
        }
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with success exit
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(&cli.command) {
        Ok(()) => 0,
        Err(CmdError::Pre(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
        Err(CmdError::Internal(msg)) => {
            eprintln!("internal error: {}", msg);
            1
        }
    }
}
