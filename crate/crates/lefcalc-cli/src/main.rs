//! `lefcalc`: invariants, constructions, and the assembly pipeline for
//! achiral Lefschetz fibrations, driven by structured-text documents.
//!
//! Exit codes: 0 success, 2 input error, 3 internal integrity failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use lefcalc_cli::doc;

use doc::{DocKind, Document, SurfaceDoc};
use lefcalc::alf::Alf;
use lefcalc::assembler::{run_pipeline, FramingVariant, PipelineStep};
use lefcalc::harer::{harer_alf, verify_against_input, HarerMove, HarerTranscript};
use lefcalc::homology::AbelianGroup;
use lefcalc::invariants::homotopy_class;
use lefcalc::{OpenBook, Sign};

#[derive(Parser)]
#[command(
    name = "lefcalc",
    about = "a calculus for achiral Lefschetz fibrations, open books and their plane-field invariants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report chi, sigma, q, the Chern class and d3 of a fibration document
    Invariants {
        file: PathBuf,
        /// Emit a machine-readable JSON report
        #[arg(long)]
        json: bool,
    },
    /// Convert a projected framed link into a fibration over the disk
    Harer {
        file: PathBuf,
        /// Where to write the fibration document
        #[arg(short, long)]
        output: PathBuf,
        /// Where to write the move transcript (default: OUTPUT with a
        /// .transcript.toml extension)
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Split, fiber, match and glue a closed manifold
    Assemble {
        file: PathBuf,
        /// Directory for certificate.toml, surgery.toml and transcript.toml
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Apply stabilizations and rotation moves to a document
    Stabilize {
        file: PathBuf,
        /// Number of positive stabilizations
        #[arg(long, default_value_t = 0)]
        pos: u32,
        /// Number of negative stabilizations
        #[arg(long, default_value_t = 0)]
        neg: u32,
        /// Rotation move `i=CYCLE,a=COUNT`: shifts the cycle's rotation by
        /// -2*COUNT via |COUNT| double stabilizations (repeatable)
        #[arg(long = "rot-adjust")]
        rot_adjust: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Input problems exit with 2, internal integrity failures with 3.
enum Failure {
    Input(String),
    Integrity(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Input(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
            Failure::Integrity(message) => {
                eprintln!("integrity failure: {message}");
                ExitCode::from(3)
            }
        }
    }
}

impl From<doc::DocError> for Failure {
    fn from(e: doc::DocError) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<lefcalc::Error> for Failure {
    fn from(e: lefcalc::Error) -> Failure {
        match e {
            lefcalc::Error::Integrity(message) => Failure::Integrity(message),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn is_json_path(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

fn load_document(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Document::parse(&text, is_json_path(path))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_document(path: &Path, document: &Document) -> Result<(), Failure> {
    std::fs::write(path, document.serialize(is_json_path(path)))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn format_group(group: &AbelianGroup) -> String {
    let mut parts: Vec<String> = group.torsion.iter().map(|d| format!("Z/{d}")).collect();
    match group.free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        n => parts.push(format!("Z^{n}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Serialize)]
struct InvariantsReport {
    schema_version: u32,
    chi: i64,
    sigma: i64,
    q: usize,
    c1_zero: bool,
    c1_coords: Vec<String>,
    group_free_rank: usize,
    group_torsion: Vec<String>,
    two_torsion_regime: bool,
    d3: Option<String>,
}

fn cmd_invariants(file: &Path, json: bool) -> Result<(), Failure> {
    let alf = load_document(file)?.to_alf()?;
    let data = alf.induced_kirby_data();
    let class = homotopy_class(&alf);

    if json {
        let report = InvariantsReport {
            schema_version: doc::SCHEMA_VERSION,
            chi: data.euler_characteristic(),
            sigma: data.signature(),
            q: class.q,
            c1_zero: class.c1.is_zero(),
            c1_coords: class.c1.coords().iter().map(|c| c.to_string()).collect(),
            group_free_rank: class.c1.group().free_rank,
            group_torsion: class
                .c1
                .group()
                .torsion
                .iter()
                .map(|d| d.to_string())
                .collect(),
            two_torsion_regime: class.c1.two_torsion_regime(),
            d3: class.d3.as_ref().map(|d| d.to_string()),
        };
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
        return Ok(());
    }

    println!("chi = {}", data.euler_characteristic());
    println!("sigma = {}", data.signature());
    println!("q = {}", class.q);
    println!("H1(boundary) = {}", format_group(class.c1.group()));
    if class.c1.is_zero() {
        println!("c1 = 0");
    } else {
        let coords: Vec<String> = class.c1.coords().iter().map(|c| c.to_string()).collect();
        println!("c1 = ({})", coords.join(", "));
    }
    if class.c1.two_torsion_regime() {
        println!("note: boundary homology has even torsion; the two invariants no longer classify");
    }
    match &class.d3 {
        Some(value) => println!("d3 = {value}"),
        None => println!("d3 undefined: the Chern class is nonzero; adjust rotations first"),
    }
    Ok(())
}

#[derive(Serialize)]
struct MoveDoc {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    double_point: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    component: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    change: Option<i64>,
}

#[derive(Serialize)]
struct TranscriptDoc {
    schema_version: u32,
    pair_sign: i64,
    final_fiber: SurfaceDoc,
    final_cycle_count: usize,
    moves: Vec<MoveDoc>,
}

fn transcript_doc(transcript: &HarerTranscript) -> TranscriptDoc {
    TranscriptDoc {
        schema_version: doc::SCHEMA_VERSION,
        pair_sign: transcript.pair_sign.as_i64(),
        final_fiber: SurfaceDoc {
            genus: transcript.final_fiber.genus(),
            boundary: transcript.final_fiber.boundary_count(),
        },
        final_cycle_count: transcript.final_cycles.len(),
        moves: transcript
            .moves
            .iter()
            .map(|m| match *m {
                HarerMove::TorusSum { double_point } => MoveDoc {
                    kind: "torus_sum",
                    double_point: Some(double_point),
                    sign: None,
                    component: None,
                    change: None,
                },
                HarerMove::CancellingPair { sign } => MoveDoc {
                    kind: "cancelling_pair",
                    double_point: None,
                    sign: Some(sign.as_i64()),
                    component: None,
                    change: None,
                },
                HarerMove::FramingMove { component, change } => MoveDoc {
                    kind: "framing_move",
                    double_point: None,
                    sign: None,
                    component: Some(component),
                    change: Some(change.as_i64()),
                },
            })
            .collect(),
    }
}

fn cmd_harer(file: &Path, output: &Path, transcript_path: Option<PathBuf>) -> Result<(), Failure> {
    let link = load_document(file)?.to_projected_link()?;
    let (alf, transcript) = harer_alf(&link)?;
    verify_against_input(&link, &alf)?;

    write_document(output, &Document::from_alf(&alf))?;
    let transcript_path = transcript_path.unwrap_or_else(|| {
        let mut path = output.to_path_buf();
        path.set_extension("transcript.toml");
        path
    });
    let text = toml::to_string(&transcript_doc(&transcript)).expect("transcript serializes");
    std::fs::write(&transcript_path, text)
        .map_err(|e| Failure::Input(format!("{}: {e}", transcript_path.display())))?;

    println!(
        "fiber: genus {}, {} boundary components",
        alf.fiber().genus(),
        alf.fiber().boundary_count()
    );
    println!("cycles: {}", alf.cycles().len());
    println!("q = {}", alf.negative_cycle_count());
    println!("oracle check (chi, sigma, H1): PASS");
    println!(
        "wrote {} and {}",
        output.display(),
        transcript_path.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct CertificateDoc {
    schema_version: u32,
    d3_common: String,
    negative_stabilizations: [usize; 2],
    chern_zero: [bool; 2],
    note: String,
}

#[derive(Serialize)]
struct VariantDoc {
    twisted: bool,
    section_self_intersection: i64,
    page: SurfaceDoc,
    monodromy_length: usize,
}

#[derive(Serialize)]
struct ClosedAlfDoc {
    fiber_genus: u32,
    cycle_count: usize,
    sections: Vec<i64>,
}

#[derive(Serialize)]
struct SurgeryDoc {
    schema_version: u32,
    description: String,
    euler_characteristic: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_alf: Option<ClosedAlfDoc>,
    variants: [VariantDoc; 2],
}

fn variant_doc(variant: &FramingVariant) -> VariantDoc {
    VariantDoc {
        twisted: variant.twisted,
        section_self_intersection: variant.section_self_intersection,
        page: SurfaceDoc {
            genus: variant.open_book.page().genus(),
            boundary: variant.open_book.page().boundary_count(),
        },
        monodromy_length: variant.open_book.monodromy().len(),
    }
}

fn step_line(step: &PipelineStep) -> String {
    match step {
        PipelineStep::Split {
            cancelling_pair_added,
            second_fiber_genus,
        } => format!(
            "split: product side has fiber genus {second_fiber_genus}{}",
            if *cancelling_pair_added {
                " after adding a cancelling 2-/3-handle pair"
            } else {
                ""
            }
        ),
        PipelineStep::HarerConstruction { moves, cycles } => {
            format!("construction: {moves} moves, {cycles} vanishing cycles")
        }
        PipelineStep::OracleChecked => "construction oracle checked".into(),
        PipelineStep::ParityNormalized { changed_cycles } => {
            format!("rotation parity normalized on cycles {changed_cycles:?}")
        }
        PipelineStep::RotationsAdjusted { moves } => {
            format!("Chern class killed with {moves} rotation moves")
        }
        PipelineStep::BoundaryConnected {
            side,
            stabilizations,
        } => format!("side {side}: boundary connected with {stabilizations} stabilizations"),
        PipelineStep::GenusPadded { side, pairs } => {
            format!("side {side}: genus padded with {pairs} double stabilizations")
        }
        PipelineStep::D3Matched {
            negative_stabilizations,
        } => format!("d3 matched with negative stabilizations {negative_stabilizations:?}"),
        PipelineStep::SyntacticComparison { agreed } => {
            format!(
                "boundary words {}",
                if *agreed { "agree" } else { "differ" }
            )
        }
        PipelineStep::Capped {
            fiber_genus,
            cycles,
        } => format!("capped: closed fibration with fiber genus {fiber_genus}, {cycles} cycles"),
    }
}

#[derive(Serialize)]
struct PipelineTranscriptDoc {
    schema_version: u32,
    steps: Vec<String>,
}

fn cmd_assemble(file: &Path, output_dir: &Path) -> Result<(), Failure> {
    let input = load_document(file)?.to_closed_manifold()?;
    let (certificate, output, transcript) = run_pipeline(&input)?;

    std::fs::create_dir_all(output_dir)
        .map_err(|e| Failure::Input(format!("{}: {e}", output_dir.display())))?;
    let write = |name: &str, text: String| -> Result<(), Failure> {
        let path = output_dir.join(name);
        std::fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    };

    let certificate_doc = CertificateDoc {
        schema_version: doc::SCHEMA_VERSION,
        d3_common: certificate.d3_common.to_string(),
        negative_stabilizations: [
            certificate.negative_stabilizations.0,
            certificate.negative_stabilizations.1,
        ],
        chern_zero: [certificate.chern_zero.0, certificate.chern_zero.1],
        note: certificate.note().into(),
    };
    write(
        "certificate.toml",
        toml::to_string(&certificate_doc).expect("certificate serializes"),
    )?;

    let surgery_doc = SurgeryDoc {
        schema_version: doc::SCHEMA_VERSION,
        description: output.surgery.to_string(),
        euler_characteristic: output.euler_characteristic(),
        closed_alf: output.closed_alf.as_ref().map(|c| ClosedAlfDoc {
            fiber_genus: c.fiber_genus(),
            cycle_count: c.cycles().len(),
            sections: c.sections().to_vec(),
        }),
        variants: [
            variant_doc(&output.framing_variants[0]),
            variant_doc(&output.framing_variants[1]),
        ],
    };
    write(
        "surgery.toml",
        toml::to_string(&surgery_doc).expect("surgery serializes"),
    )?;

    let transcript_doc = PipelineTranscriptDoc {
        schema_version: doc::SCHEMA_VERSION,
        steps: transcript.steps.iter().map(step_line).collect(),
    };
    write(
        "transcript.toml",
        toml::to_string(&transcript_doc).expect("transcript serializes"),
    )?;

    println!("d3 matched at {}", certificate.d3_common);
    println!(
        "negative stabilizations: {} and {}",
        certificate.negative_stabilizations.0, certificate.negative_stabilizations.1
    );
    println!(
        "framing variants: bit 0 (section {}), bit 1 (section {})",
        output.framing_variants[0].section_self_intersection,
        output.framing_variants[1].section_self_intersection
    );
    println!(
        "euler characteristic: {} -> {}",
        input.euler_characteristic(),
        output.euler_characteristic()
    );
    println!(
        "glued cycle list: {}",
        if output.closed_alf.is_some() {
            "emitted (boundary words agree)"
        } else {
            "omitted (boundary words differ)"
        }
    );
    println!(
        "wrote certificate.toml, surgery.toml, transcript.toml in {}",
        output_dir.display()
    );
    Ok(())
}

fn parse_rot_adjust(text: &str) -> Result<(usize, i64), Failure> {
    let mut index = None;
    let mut count = None;
    for part in text.split(',') {
        match part.split_once('=') {
            Some(("i", v)) => index = v.trim().parse::<usize>().ok(),
            Some(("a", v)) => count = v.trim().parse::<i64>().ok(),
            _ => {}
        }
    }
    match (index, count) {
        (Some(i), Some(a)) => Ok((i, a)),
        _ => Err(Failure::Input(format!(
            "cannot parse rotation move {text:?}; expected i=CYCLE,a=COUNT"
        ))),
    }
}

fn apply_rot_adjust(mut alf: Alf, index: usize, count: i64) -> Result<Alf, Failure> {
    let step = if count > 0 {
        Sign::Negative
    } else {
        Sign::Positive
    };
    for _ in 0..count.unsigned_abs() {
        alf = alf.double_stabilize_cycle(index, step)?;
    }
    Ok(alf)
}

fn cmd_stabilize(
    file: &Path,
    pos: u32,
    neg: u32,
    rot_adjust: &[String],
    output: &Path,
) -> Result<(), Failure> {
    let document = load_document(file)?;
    let result = match document.kind {
        DocKind::Alf => {
            let mut alf = document.to_alf()?;
            for _ in 0..pos {
                alf = alf.stabilize(Sign::Positive);
            }
            for _ in 0..neg {
                alf = alf.stabilize(Sign::Negative);
            }
            for move_text in rot_adjust {
                let (index, count) = parse_rot_adjust(move_text)?;
                alf = apply_rot_adjust(alf, index, count)?;
            }
            Document::from_alf(&alf)
        }
        DocKind::OpenBook => {
            if !rot_adjust.is_empty() {
                return Err(Failure::Input(
                    "rotation moves need cycle data; use an alf document".into(),
                ));
            }
            let mut book: OpenBook = document.to_open_book()?;
            for _ in 0..pos {
                book = book.stabilize(Sign::Positive);
            }
            for _ in 0..neg {
                book = book.stabilize(Sign::Negative);
            }
            Document::from_open_book(&book)
        }
        other => {
            return Err(Failure::Input(format!(
                "stabilize expects an alf or open_book document, got {:?}",
                other.name()
            )))
        }
    };
    write_document(output, &result)?;
    println!("wrote {}", output.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Invariants { file, json } => cmd_invariants(file, *json),
        Command::Harer {
            file,
            output,
            transcript,
        } => cmd_harer(file, output, transcript.clone()),
        Command::Assemble { file, output } => cmd_assemble(file, output),
        Command::Stabilize {
            file,
            pos,
            neg,
            rot_adjust,
            output,
        } => cmd_stabilize(file, *pos, *neg, rot_adjust, output),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}
