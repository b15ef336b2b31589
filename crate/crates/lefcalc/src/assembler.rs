//! The surgery-assembly pipeline for closed 4-manifolds.
//!
//! A closed manifold is split into the handlebody of its 0-, 1- and
//! 2-handles and the upside-down handlebody of its 3- and 4-handles.  Both
//! pieces receive achiral Lefschetz fibrations over the disk, the boundary
//! plane-field invariants are equalized (Chern class killed by even rotation
//! edits, `d3` matched with at least one negative stabilization on each
//! side), and the pieces are glued along their fibered boundary parts.  The
//! result, after capping with `D^2 x S^2`, is a closed fibration over the
//! sphere on the manifold obtained from the input by surgery on a circle;
//! the two available framings of that circle differ by one `Z/2` bit.
//!
//! The invariant matching certifies isotopy of the supported contact
//! structures.  No common positive stabilization of the two open books is
//! searched for; the glued record is emitted only when the two boundary
//! words agree syntactically after free cancellation.

use num::BigRational;

use crate::alf::{Alf, ClosedAlf};
use crate::error::{Error, Result};
use crate::harer::{
    harer_alf, verify_against_input, HarerTranscript, LinkComponent, ProjectedLink,
};
use crate::homology::KirbyData;
use crate::invariants::{adjust_rotations, chern_class, d3, match_d3, normalize_rotation_parity};
use crate::openbook::OpenBook;
use crate::surface::{Sign, SignedTwist, Surface};

/// A closed, connected 4-manifold: full handle counts plus the projection
/// data of the 2-handle attaching link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedManifoldInput {
    kirby: KirbyData,
    link: ProjectedLink,
}

impl ClosedManifoldInput {
    pub fn new(kirby: KirbyData, link: ProjectedLink) -> Result<ClosedManifoldInput> {
        if kirby.four_handles() != 1 {
            return Err(Error::NotClosed(kirby.four_handles()));
        }
        link.validate()?;
        let derived = link.kirby_data();
        if derived.one_handles() != kirby.one_handles()
            || derived.attach() != kirby.attach()
            || derived.linking() != kirby.linking()
        {
            return Err(Error::InvalidInput(
                "handle data disagrees with the projected link".into(),
            ));
        }
        Ok(ClosedManifoldInput { kirby, link })
    }

    pub fn kirby(&self) -> &KirbyData {
        &self.kirby
    }

    pub fn link(&self) -> &ProjectedLink {
        &self.link
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.kirby.euler_characteristic()
    }
}

/// The fiber of the trivial fibration on the upside-down piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberSpec {
    pub genus: u32,
}

/// Split off the 0-, 1-, 2-handle part and normalize the other side to a
/// product over a surface with one boundary component.
///
/// When the 3-handle count is odd a cancelling 2-/3-handle pair is added:
/// the first piece gains a zero-framed trivial component and the second an
/// extra 1-handle, making its count even.
pub fn split(input: &ClosedManifoldInput) -> Result<(ProjectedLink, FiberSpec)> {
    let mut link = input.link.clone();
    let mut upside_down_handles = input.kirby.three_handles();
    if upside_down_handles % 2 == 1 {
        link.components.push(LinkComponent {
            band_word: vec![],
            target_framing: 0,
        });
        upside_down_handles += 1;
    }
    Ok((
        link,
        FiberSpec {
            genus: (upside_down_handles / 2) as u32,
        },
    ))
}

/// The certificate produced by invariant matching: both Chern classes are
/// zero, the `d3` values agree, and each side took at least one negative
/// stabilization, making both supported contact structures overtwisted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchCertificate {
    pub d3_common: BigRational,
    pub negative_stabilizations: (usize, usize),
    pub chern_zero: (bool, bool),
}

impl MatchCertificate {
    /// What the certificate does and does not assert.
    pub fn note(&self) -> &'static str {
        "overtwisted structures with equal plane-field invariants are isotopic; \
         no explicit diffeomorphism or common stabilization is produced"
    }
}

/// One of the two framings of the surgery circle, with the open book record
/// it induces.  Flipping applies a double positive stabilization that
/// toggles the `Z/2` bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramingVariant {
    pub twisted: bool,
    pub section_self_intersection: i64,
    pub open_book: OpenBook,
}

/// Toggle the framing: two positive stabilizations of the binding give a
/// knot homotopic to it whose page framing differs by one, flipping the
/// `Z/2` bit and the section self-intersection.
pub fn flip_framing_variant(variant: &FramingVariant) -> FramingVariant {
    FramingVariant {
        twisted: !variant.twisted,
        section_self_intersection: if variant.twisted { 0 } else { 1 },
        open_book: variant
            .open_book
            .stabilize(Sign::Positive)
            .stabilize(Sign::Positive),
    }
}

/// Record of `X = W u (S^1 x D^3)`: the surgered manifold is `W` capped
/// with `D^2 x S^2` along the chosen framing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurgeryDescription {
    pub framing_bit: u8,
}

impl std::fmt::Display for SurgeryDescription {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "X = W u S^1 x D^3; surgered manifold = W u D^2 x S^2 with framing bit {}",
            self.framing_bit
        )
    }
}

/// The assembled output: the closed fibration record (when the two boundary
/// words agree syntactically), the surgery description, and both framing
/// variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryOutput {
    pub closed_alf: Option<ClosedAlf>,
    pub surgery: SurgeryDescription,
    pub framing_variants: [FramingVariant; 2],
    surgered_euler: i64,
}

impl SurgeryOutput {
    /// Euler characteristic of the surgered closed manifold; always two more
    /// than the input's, since surgery trades `S^1 x D^3` for `D^2 x S^2`.
    pub fn euler_characteristic(&self) -> i64 {
        self.surgered_euler
    }
}

/// Both framing variants of the output, per the two-element framing group.
pub fn surgery_framings(output: &SurgeryOutput) -> (FramingVariant, FramingVariant) {
    (
        output.framing_variants[0].clone(),
        output.framing_variants[1].clone(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineStep {
    Split {
        cancelling_pair_added: bool,
        second_fiber_genus: u32,
    },
    HarerConstruction {
        moves: usize,
        cycles: usize,
    },
    OracleChecked,
    ParityNormalized {
        changed_cycles: Vec<usize>,
    },
    RotationsAdjusted {
        moves: usize,
    },
    BoundaryConnected {
        side: u8,
        stabilizations: usize,
    },
    GenusPadded {
        side: u8,
        pairs: usize,
    },
    D3Matched {
        negative_stabilizations: (usize, usize),
    },
    SyntacticComparison {
        agreed: bool,
    },
    Capped {
        fiber_genus: u32,
        cycles: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PipelineTranscript {
    pub steps: Vec<PipelineStep>,
    pub harer: Option<HarerTranscript>,
}

/// Free cancellation of adjacent inverse twists.
fn reduce_word(word: &[SignedTwist]) -> Vec<SignedTwist> {
    let mut out: Vec<SignedTwist> = Vec::with_capacity(word.len());
    for twist in word {
        if let Some(last) = out.last() {
            if last.curve() == twist.curve() && last.sign() == twist.sign().flipped() {
                out.pop();
                continue;
            }
        }
        out.push(twist.clone());
    }
    out
}

fn words_agree(a: &OpenBook, b: &OpenBook) -> bool {
    a.page() == b.page() && reduce_word(a.monodromy()) == reduce_word(b.monodromy())
}

fn connect_boundary(mut alf: Alf, side: u8, transcript: &mut PipelineTranscript) -> Result<Alf> {
    let mut count = 0;
    while alf.fiber().boundary_count() > 1 {
        alf = alf.stabilize_connecting(Sign::Positive)?;
        count += 1;
    }
    if count > 0 {
        transcript.steps.push(PipelineStep::BoundaryConnected {
            side,
            stabilizations: count,
        });
    }
    Ok(alf)
}

/// Raise the genus of a connected-boundary fiber by one: a positive
/// stabilization followed by a positive connecting stabilization.
fn pad_genus_once(alf: &Alf) -> Result<Alf> {
    alf.stabilize(Sign::Positive)
        .stabilize_connecting(Sign::Positive)
}

fn equalize_genus(
    mut a1: Alf,
    mut a2: Alf,
    transcript: &mut PipelineTranscript,
) -> Result<(Alf, Alf)> {
    let mut pads = (0usize, 0usize);
    while a1.fiber().genus() < a2.fiber().genus() {
        a1 = pad_genus_once(&a1)?;
        pads.0 += 1;
    }
    while a2.fiber().genus() < a1.fiber().genus() {
        a2 = pad_genus_once(&a2)?;
        pads.1 += 1;
    }
    if pads.0 > 0 {
        transcript.steps.push(PipelineStep::GenusPadded {
            side: 1,
            pairs: pads.0,
        });
    }
    if pads.1 > 0 {
        transcript.steps.push(PipelineStep::GenusPadded {
            side: 2,
            pairs: pads.1,
        });
    }
    Ok((a1, a2))
}

/// Run the whole assembly.
pub fn run_pipeline(
    input: &ClosedManifoldInput,
) -> Result<(MatchCertificate, SurgeryOutput, PipelineTranscript)> {
    let mut transcript = PipelineTranscript::default();

    let (first_link, fiber_spec) = split(input)?;
    transcript.steps.push(PipelineStep::Split {
        cancelling_pair_added: first_link.components.len() != input.link.components.len(),
        second_fiber_genus: fiber_spec.genus,
    });

    let (alf1, harer_transcript) = harer_alf(&first_link)?;
    transcript.steps.push(PipelineStep::HarerConstruction {
        moves: harer_transcript.moves.len(),
        cycles: alf1.cycles().len(),
    });
    verify_against_input(&first_link, &alf1)?;
    transcript.steps.push(PipelineStep::OracleChecked);
    let first_euler = alf1.induced_kirby_data().euler_characteristic();

    let alf2 = Alf::trivial(Surface::new(fiber_spec.genus, 1))?;
    let second_euler = alf2.induced_kirby_data().euler_characteristic();

    // rotations start at the construction default of zero; move them to the
    // parity their framings force before computing the invariants
    let normalized = normalize_rotation_parity(&alf1);
    let changed: Vec<usize> = alf1
        .rotations()
        .iter()
        .zip(normalized.rotations())
        .enumerate()
        .filter_map(|(i, (a, b))| (*a != b).then_some(i))
        .collect();
    transcript.steps.push(PipelineStep::ParityNormalized {
        changed_cycles: changed,
    });

    let (alf1, plan) = adjust_rotations(&normalized).map_err(|e| match e {
        Error::NotAnEvenCombination => {
            Error::Integrity("rotation adjustment infeasible on a closed-manifold split".into())
        }
        other => other,
    })?;
    transcript.steps.push(PipelineStep::RotationsAdjusted {
        moves: plan.moves.len(),
    });
    if !chern_class(&alf2).is_zero() {
        return Err(Error::Integrity(
            "product-side Chern class failed to vanish".into(),
        ));
    }

    let alf1 = connect_boundary(alf1, 1, &mut transcript)?;
    let alf2 = connect_boundary(alf2, 2, &mut transcript)?;
    let (alf1, alf2) = equalize_genus(alf1, alf2, &mut transcript)?;

    let (alf1, alf2, plan1, plan2) = match_d3(&alf1, &alf2).map_err(|e| match e {
        Error::NonIntegerGap(gap) => Error::Integrity(format!(
            "three-dimensional invariants differ by the non-integer {gap}"
        )),
        other => other,
    })?;
    transcript.steps.push(PipelineStep::D3Matched {
        negative_stabilizations: (plan1.negative_stabilizations, plan2.negative_stabilizations),
    });

    let alf1 = connect_boundary(alf1, 1, &mut transcript)?;
    let alf2 = connect_boundary(alf2, 2, &mut transcript)?;
    let (alf1, alf2) = equalize_genus(alf1, alf2, &mut transcript)?;

    let d3_first = d3(&alf1)?;
    let d3_second = d3(&alf2)?;
    if d3_first != d3_second {
        return Err(Error::Integrity(
            "matched invariants drifted apart during reconnection".into(),
        ));
    }
    let certificate = MatchCertificate {
        d3_common: d3_first,
        negative_stabilizations: (plan1.negative_stabilizations, plan2.negative_stabilizations),
        chern_zero: (true, true),
    };

    let book1 = alf1.boundary_open_book();
    let book2 = alf2.boundary_open_book();
    let agreed = words_agree(&book1, &book2);
    transcript
        .steps
        .push(PipelineStep::SyntacticComparison { agreed });

    let closed_alf = if agreed {
        let mut cycles = alf1.cycles().to_vec();
        cycles.extend_from_slice(alf2.cycles());
        let capped = ClosedAlf::new(alf1.fiber().genus(), cycles, vec![0])?;
        transcript.steps.push(PipelineStep::Capped {
            fiber_genus: capped.fiber_genus(),
            cycles: capped.cycles().len(),
        });
        Some(capped)
    } else {
        None
    };

    let untwisted = FramingVariant {
        twisted: false,
        section_self_intersection: 0,
        open_book: book1,
    };
    let twisted = flip_framing_variant(&untwisted);
    let output = SurgeryOutput {
        closed_alf,
        surgery: SurgeryDescription { framing_bit: 0 },
        framing_variants: [untwisted, twisted],
        surgered_euler: first_euler + second_euler + 2,
    };
    transcript.harer = Some(harer_transcript);
    Ok((certificate, output, transcript))
}
