//! Conversion of a 2-handlebody, given as a framed link projected onto a
//! disk with bands, into an achiral Lefschetz fibration over the disk.
//!
//! Starting from the trivial fibration of the 1-handlebody with fiber a disk
//! with `n1` holes, the construction
//!
//! * connect-sums a torus into the fiber at every double point of the
//!   projection and cancels both new bands with fresh `+/-1`-framed
//!   vanishing cycles, and
//! * walks each component's framing to `+/-1` relative to the page framing,
//!   one new page handle and one compensating vanishing cycle per step,
//!
//! after which every component becomes a vanishing cycle itself: positive
//! when its relative framing is `-1`, negative when it is `+1`.  The output
//! presents the same 4-manifold as the input handle data; the equality of
//! Euler characteristic, signature and first homology is the correctness
//! oracle for the whole rewrite.

use crate::alf::{Alf, VanishingCycle};
use crate::error::{Error, Result};
use crate::homology::KirbyData;
use crate::surface::{CurveClass, SeifertForm, Sign, Surface};

/// One signed pass of a link component over a 1-handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandTraversal {
    pub handle: usize,
    pub sign: Sign,
}

/// A component of the projected attaching link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkComponent {
    pub band_word: Vec<BandTraversal>,
    pub target_framing: i64,
}

impl LinkComponent {
    pub fn strand_count(&self) -> usize {
        self.band_word.len().max(1)
    }
}

/// A crossing of the projection, referencing `(component, strand)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoublePoint {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// A framed link projected onto a disk with `one_handles` holes.
///
/// Components are read as sitting on separate parallel pages of the product
/// fibration, so mutual linking apart from the recorded data is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedLink {
    pub one_handles: usize,
    pub components: Vec<LinkComponent>,
    pub double_points: Vec<DoublePoint>,
    pub declared_bridge_number: Option<u32>,
}

impl ProjectedLink {
    pub fn empty(one_handles: usize) -> ProjectedLink {
        ProjectedLink {
            one_handles,
            components: vec![],
            double_points: vec![],
            declared_bridge_number: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for comp in &self.components {
            for t in &comp.band_word {
                if t.handle >= self.one_handles {
                    return Err(Error::InvalidInput(format!(
                        "band word references handle {} of {}",
                        t.handle, self.one_handles
                    )));
                }
            }
        }
        for (index, dp) in self.double_points.iter().enumerate() {
            for &(comp, strand) in [&dp.first, &dp.second] {
                let Some(component) = self.components.get(comp) else {
                    return Err(Error::InvalidDoublePoint {
                        index,
                        what: "component",
                    });
                };
                if strand >= component.strand_count() {
                    return Err(Error::InvalidDoublePoint {
                        index,
                        what: "strand",
                    });
                }
            }
        }
        Ok(())
    }

    /// Class of a component in the homology of the initial fiber.
    fn component_class(&self, fiber: Surface, index: usize) -> CurveClass {
        let mut coeffs = vec![0; fiber.h1_rank()];
        for t in &self.components[index].band_word {
            coeffs[t.handle] += t.sign.as_i64();
        }
        fiber.curve(coeffs).expect("length matches the fiber rank")
    }

    /// The handle decomposition the projection presents directly: one row per
    /// component over the 1-handles, framings on the diagonal, off-diagonal
    /// linking zero.
    pub fn kirby_data(&self) -> KirbyData {
        let k2 = self.components.len();
        let attach = (0..k2)
            .map(|i| {
                let mut row = vec![0; self.one_handles];
                for t in &self.components[i].band_word {
                    row[t.handle] += t.sign.as_i64();
                }
                row
            })
            .collect();
        let mut linking = vec![vec![0; k2]; k2];
        for (i, comp) in self.components.iter().enumerate() {
            linking[i][i] = comp.target_framing;
        }
        KirbyData::two_handlebody(self.one_handles, attach, linking)
            .expect("projection data is well shaped")
    }
}

/// One step of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarerMove {
    /// Torus connect-sum at a double point of the projection.
    TorusSum { double_point: usize },
    /// A cancelling 1-handle/2-handle pair: a vanishing cycle of the given
    /// sign about a fresh band.
    CancellingPair { sign: Sign },
    /// One framing correction for a component, moving its relative framing
    /// by the given sign.
    FramingMove { component: usize, change: Sign },
}

/// A replayable record of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarerTranscript {
    pub moves: Vec<HarerMove>,
    pub pair_sign: Sign,
    pub final_fiber: Surface,
    pub final_cycles: Vec<VanishingCycle>,
}

/// Options for the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarerOptions {
    /// Sign of the cancelling-pair cycles created at double points.  The
    /// positive default keeps the negative-cycle count low.
    pub pair_sign: Sign,
}

impl Default for HarerOptions {
    fn default() -> HarerOptions {
        HarerOptions {
            pair_sign: Sign::Positive,
        }
    }
}

struct Builder {
    fiber: Surface,
    seifert: SeifertForm,
    extra: Vec<VanishingCycle>,
    component_curves: Vec<CurveClass>,
}

impl Builder {
    fn extend(&mut self, ext: &crate::surface::PageExtension) {
        self.seifert = self.seifert.extend(ext);
        for cycle in &mut self.extra {
            *cycle = VanishingCycle::new(
                cycle.curve().extend(ext).expect("cycle lives on the fiber"),
                cycle.sign(),
                cycle.rotation(),
            );
        }
        for curve in &mut self.component_curves {
            *curve = curve.extend(ext).expect("component lives on the fiber");
        }
        self.fiber = ext.to_surface();
    }
}

/// Run the construction with the default options.
pub fn harer_alf(link: &ProjectedLink) -> Result<(Alf, HarerTranscript)> {
    harer_alf_with(link, HarerOptions::default())
}

/// Run the construction; rotation numbers of all output cycles default to
/// zero and can be overridden on the result.
pub fn harer_alf_with(
    link: &ProjectedLink,
    options: HarerOptions,
) -> Result<(Alf, HarerTranscript)> {
    link.validate()?;
    let fiber = Surface::new(0, link.one_handles as u32 + 1);
    let mut builder = Builder {
        fiber,
        seifert: SeifertForm::default_for(fiber),
        extra: vec![],
        component_curves: (0..link.components.len())
            .map(|i| link.component_class(fiber, i))
            .collect(),
    };
    let mut moves = Vec::new();

    for (index, _) in link.double_points.iter().enumerate() {
        let (_, ext) = builder.fiber.add_torus_handle();
        builder.extend(&ext);
        moves.push(HarerMove::TorusSum {
            double_point: index,
        });
        for &new_index in ext.new_indices() {
            builder.extra.push(VanishingCycle::new(
                builder.fiber.basis_class(new_index),
                options.pair_sign,
                0,
            ));
            moves.push(HarerMove::CancellingPair {
                sign: options.pair_sign,
            });
        }
    }

    let mut component_signs = Vec::with_capacity(link.components.len());
    for (index, comp) in link.components.iter().enumerate() {
        let mut relative = comp.target_framing
            - builder
                .seifert
                .framing(&builder.component_curves[index])
                .expect("component lives on the fiber");
        while relative != 1 && relative != -1 {
            let change = if relative > 1 {
                Sign::Negative
            } else {
                // for the tie at zero, walk down towards -1
                if relative < -1 {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            };
            let (_, ext) = builder.fiber.add_page_handle().expect("fiber has boundary");
            builder.extend(&ext);
            let band = builder.fiber.basis_class(ext.new_indices()[0]);
            builder
                .extra
                .push(VanishingCycle::new(band.clone(), change, 0));
            builder.component_curves[index] = builder.component_curves[index]
                .add(&band)
                .expect("classes live on the fiber");
            relative += change.as_i64();
            moves.push(HarerMove::FramingMove {
                component: index,
                change,
            });
        }
        component_signs.push(if relative == -1 {
            Sign::Positive
        } else {
            Sign::Negative
        });
    }

    let mut cycles = builder.extra.clone();
    for (index, sign) in component_signs.iter().enumerate() {
        cycles.push(VanishingCycle::new(
            builder.component_curves[index].clone(),
            *sign,
            0,
        ));
    }
    let alf = Alf::new(builder.fiber, cycles.clone(), builder.seifert.clone())?;
    let transcript = HarerTranscript {
        moves,
        pair_sign: options.pair_sign,
        final_fiber: builder.fiber,
        final_cycles: cycles,
    };
    Ok((alf, transcript))
}

/// Replay a transcript from the initial disk-with-holes fiber.  The result
/// must coincide with the originally constructed fibration.
pub fn replay(link: &ProjectedLink, transcript: &HarerTranscript) -> Result<Alf> {
    link.validate()?;
    let fiber = Surface::new(0, link.one_handles as u32 + 1);
    let mut builder = Builder {
        fiber,
        seifert: SeifertForm::default_for(fiber),
        extra: vec![],
        component_curves: (0..link.components.len())
            .map(|i| link.component_class(fiber, i))
            .collect(),
    };
    let mut pending: Vec<usize> = vec![];
    let mut framing_shifts = vec![0i64; link.components.len()];

    for step in &transcript.moves {
        match *step {
            HarerMove::TorusSum { double_point } => {
                if double_point >= link.double_points.len() {
                    return Err(Error::InvalidDoublePoint {
                        index: double_point,
                        what: "component",
                    });
                }
                let (_, ext) = builder.fiber.add_torus_handle();
                builder.extend(&ext);
                pending.extend_from_slice(ext.new_indices());
            }
            HarerMove::CancellingPair { sign } => {
                let index = pending.first().copied().ok_or_else(|| {
                    Error::InvalidInput("cancelling pair without a fresh band".into())
                })?;
                pending.remove(0);
                builder.extra.push(VanishingCycle::new(
                    builder.fiber.basis_class(index),
                    sign,
                    0,
                ));
            }
            HarerMove::FramingMove { component, change } => {
                if component >= builder.component_curves.len() {
                    return Err(Error::InvalidInput(format!(
                        "framing move on missing component {component}"
                    )));
                }
                let (_, ext) = builder.fiber.add_page_handle()?;
                builder.extend(&ext);
                let band = builder.fiber.basis_class(ext.new_indices()[0]);
                builder
                    .extra
                    .push(VanishingCycle::new(band.clone(), change, 0));
                builder.component_curves[component] =
                    builder.component_curves[component].add(&band)?;
                framing_shifts[component] += change.as_i64();
            }
        }
    }
    if !pending.is_empty() {
        return Err(Error::InvalidInput("torus bands left uncancelled".into()));
    }

    let mut cycles = builder.extra;
    for (index, comp) in link.components.iter().enumerate() {
        let relative = comp.target_framing + framing_shifts[index]
            - builder.seifert.framing(&builder.component_curves[index])?;
        let sign = match relative {
            -1 => Sign::Positive,
            1 => Sign::Negative,
            other => {
                return Err(Error::Integrity(format!(
                    "component {index} replayed to relative framing {other}"
                )))
            }
        };
        cycles.push(VanishingCycle::new(
            builder.component_curves[index].clone(),
            sign,
            0,
        ));
    }
    Alf::new(builder.fiber, cycles, builder.seifert)
}

/// The declared upper bound for the achievable fiber genus.
pub fn genus_bound(link: &ProjectedLink) -> Result<u32> {
    link.declared_bridge_number
        .ok_or(Error::MissingBridgeNumber)
}

/// Check the construction oracle: the output fibration must present a total
/// space with the same Euler characteristic, signature, and first homology
/// (of the space and of its boundary) as the input handle data.
pub fn verify_against_input(link: &ProjectedLink, alf: &Alf) -> Result<()> {
    let input = link.kirby_data();
    let output = alf.induced_kirby_data();
    if input.euler_characteristic() != output.euler_characteristic() {
        return Err(Error::Integrity(format!(
            "euler characteristic drifted: {} vs {}",
            input.euler_characteristic(),
            output.euler_characteristic()
        )));
    }
    if input.signature() != output.signature() {
        return Err(Error::Integrity(format!(
            "signature drifted: {} vs {}",
            input.signature(),
            output.signature()
        )));
    }
    if input.h1_total_space() != output.h1_total_space() {
        return Err(Error::Integrity("first homology drifted".into()));
    }
    if input.h1_boundary().group() != output.h1_boundary().group() {
        return Err(Error::Integrity("boundary homology drifted".into()));
    }
    Ok(())
}
