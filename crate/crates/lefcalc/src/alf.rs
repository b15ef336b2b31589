//! Achiral Lefschetz fibrations over the disk with bounded fibers, recorded
//! as a fiber surface plus an ordered list of signed vanishing cycles, and
//! the closed fibrations over the sphere obtained by capping.
//!
//! A fibration with fiber `F` and cycles `c_1, ..., c_k` is the handlebody
//! built from `F x D^2` (one 0-handle and `1 - chi(F)` 1-handles) by
//! attaching one 2-handle per cycle, framed one below the page framing for a
//! positive cycle and one above it for a negative one.

use crate::error::{Error, Result};
use crate::homology::KirbyData;
use crate::openbook::OpenBook;
use crate::surface::{CurveClass, PageExtension, SeifertForm, Sign, SignedTwist, Surface};

/// A vanishing cycle: a curve class on the fiber, the chirality of its
/// critical point, and the rotation number of its Legendrian realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingCycle {
    curve: CurveClass,
    sign: Sign,
    rotation: i64,
}

impl VanishingCycle {
    pub fn new(curve: CurveClass, sign: Sign, rotation: i64) -> VanishingCycle {
        VanishingCycle {
            curve,
            sign,
            rotation,
        }
    }

    pub fn curve(&self) -> &CurveClass {
        &self.curve
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn rotation(&self) -> i64 {
        self.rotation
    }

    pub fn with_rotation(&self, rotation: i64) -> VanishingCycle {
        VanishingCycle {
            curve: self.curve.clone(),
            sign: self.sign,
            rotation,
        }
    }

    fn extend(&self, ext: &PageExtension) -> Result<VanishingCycle> {
        Ok(VanishingCycle {
            curve: self.curve.extend(ext)?,
            sign: self.sign,
            rotation: self.rotation,
        })
    }
}

/// An achiral Lefschetz fibration over the disk with bounded fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alf {
    fiber: Surface,
    cycles: Vec<VanishingCycle>,
    seifert: SeifertForm,
}

impl Alf {
    pub fn new(fiber: Surface, cycles: Vec<VanishingCycle>, seifert: SeifertForm) -> Result<Alf> {
        if fiber.is_closed() {
            return Err(Error::ClosedSurface);
        }
        if seifert.surface() != fiber {
            return Err(Error::SurfaceMismatch);
        }
        for cycle in &cycles {
            if cycle.curve().surface() != fiber {
                return Err(Error::SurfaceMismatch);
            }
        }
        Ok(Alf {
            fiber,
            cycles,
            seifert,
        })
    }

    pub fn with_default_seifert(fiber: Surface, cycles: Vec<VanishingCycle>) -> Result<Alf> {
        Alf::new(fiber, cycles, SeifertForm::default_for(fiber))
    }

    /// The singular-fiber-free fibration of `fiber x D^2`.
    pub fn trivial(fiber: Surface) -> Result<Alf> {
        Alf::with_default_seifert(fiber, vec![])
    }

    pub fn fiber(&self) -> Surface {
        self.fiber
    }

    pub fn cycles(&self) -> &[VanishingCycle] {
        &self.cycles
    }

    pub fn seifert(&self) -> &SeifertForm {
        &self.seifert
    }

    /// Number of negative vanishing cycles, the `q` of the homotopy
    /// invariant formulas.
    pub fn negative_cycle_count(&self) -> usize {
        self.cycles
            .iter()
            .filter(|c| !c.sign().is_positive())
            .count()
    }

    pub fn rotations(&self) -> Vec<i64> {
        self.cycles.iter().map(VanishingCycle::rotation).collect()
    }

    pub fn with_rotation(&self, index: usize, rotation: i64) -> Result<Alf> {
        if index >= self.cycles.len() {
            return Err(Error::InvalidCycleIndex(index));
        }
        let mut cycles = self.cycles.clone();
        cycles[index] = cycles[index].with_rotation(rotation);
        Ok(Alf {
            fiber: self.fiber,
            cycles,
            seifert: self.seifert.clone(),
        })
    }

    /// The induced open book of the boundary: page = fiber, and each cycle
    /// contributes a twist of its own sign, in order.
    pub fn boundary_open_book(&self) -> OpenBook {
        let word = self
            .cycles
            .iter()
            .map(|c| SignedTwist::new(c.curve().clone(), c.sign()))
            .collect();
        OpenBook::new(self.fiber, word).expect("fiber has boundary and carries the cycles")
    }

    /// The handle decomposition of the total space.
    ///
    /// The attaching class of each cycle is its coefficient vector, its
    /// framing is the page framing minus its sign, and for `i < j` the
    /// linking number is `L(c_j, c_i)`: the later page pushed off the
    /// earlier one.
    pub fn induced_kirby_data(&self) -> KirbyData {
        let n1 = self.fiber.h1_rank();
        let k2 = self.cycles.len();
        let attach: Vec<Vec<i64>> = self
            .cycles
            .iter()
            .map(|c| c.curve().coeffs().to_vec())
            .collect();
        let mut linking = vec![vec![0; k2]; k2];
        for i in 0..k2 {
            let framing = self
                .seifert
                .framing(self.cycles[i].curve())
                .expect("cycles live on the fiber");
            linking[i][i] = framing - self.cycles[i].sign().as_i64();
            for j in (i + 1)..k2 {
                let lk = self
                    .seifert
                    .pairing(self.cycles[j].curve(), self.cycles[i].curve())
                    .expect("cycles live on the fiber");
                linking[i][j] = lk;
                linking[j][i] = lk;
            }
        }
        KirbyData::two_handlebody(n1, attach, linking).expect("shapes are consistent")
    }

    fn extended(&self, ext: &PageExtension) -> Alf {
        Alf {
            fiber: ext.to_surface(),
            cycles: self
                .cycles
                .iter()
                .map(|c| c.extend(ext).expect("cycles live on the fiber"))
                .collect(),
            seifert: self.seifert.extend(ext),
        }
    }

    /// Stabilize: the fiber gains a page handle and a cycle of the given
    /// sign about the new basis vector, with rotation zero, is appended.
    /// The total space is unchanged.
    pub fn stabilize(&self, sign: Sign) -> Alf {
        let (fiber, ext) = self.fiber.add_page_handle().expect("fibers have boundary");
        let mut alf = self.extended(&ext);
        alf.cycles.push(VanishingCycle::new(
            fiber.basis_class(ext.new_indices()[0]),
            sign,
            0,
        ));
        alf
    }

    /// Stabilization joining two boundary circles of the fiber; used to make
    /// the fiber boundary connected.  The total space is unchanged.
    pub fn stabilize_connecting(&self, sign: Sign) -> Result<Alf> {
        let (fiber, ext) = self.fiber.add_connecting_handle()?;
        let mut alf = self.extended(&ext);
        alf.cycles.push(VanishingCycle::new(
            fiber.basis_class(ext.new_indices()[0]),
            sign,
            0,
        ));
        Ok(alf)
    }

    /// Two positive stabilizations that carry the chosen cycle over the new
    /// page handles, shifting its rotation number by `2 * sign`.
    ///
    /// The recorded curve class is kept (zero-extended): pushing the knot
    /// over the cancelling handles is an isotopy of the attached 2-handle,
    /// so the slid diagram and the recorded one present the same manifold,
    /// and the page framing is untouched.
    pub fn double_stabilize_cycle(&self, index: usize, sign: Sign) -> Result<Alf> {
        if index >= self.cycles.len() {
            return Err(Error::InvalidCycleIndex(index));
        }
        let mut alf = self.stabilize(Sign::Positive).stabilize(Sign::Positive);
        let rotation = alf.cycles[index].rotation() + 2 * sign.as_i64();
        alf.cycles[index] = alf.cycles[index].with_rotation(rotation);
        Ok(alf)
    }

    /// Cap the fibers with disks to produce a closed fibration over the
    /// sphere; the capping disk family is recorded as a section.
    pub fn cap_to_closed(&self, section_self_intersections: Vec<i64>) -> Result<ClosedAlf> {
        if self.fiber.boundary_count() != 1 {
            return Err(Error::DisconnectedFiberBoundary(
                self.fiber.boundary_count(),
            ));
        }
        if section_self_intersections.is_empty() {
            return Err(Error::InvalidInput(
                "a closed fibration needs at least one section".into(),
            ));
        }
        Ok(ClosedAlf {
            fiber_genus: self.fiber.genus(),
            cycles: self.cycles.clone(),
            section_self_intersections,
        })
    }
}

/// A closed achiral Lefschetz fibration over the sphere, with sections.
///
/// Cycle classes are kept on the once-punctured fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedAlf {
    fiber_genus: u32,
    cycles: Vec<VanishingCycle>,
    section_self_intersections: Vec<i64>,
}

impl ClosedAlf {
    pub fn new(
        fiber_genus: u32,
        cycles: Vec<VanishingCycle>,
        section_self_intersections: Vec<i64>,
    ) -> Result<ClosedAlf> {
        if section_self_intersections.is_empty() {
            return Err(Error::InvalidInput(
                "a closed fibration needs at least one section".into(),
            ));
        }
        let page = Surface::new(fiber_genus, 1);
        for c in &cycles {
            if c.curve().surface() != page {
                return Err(Error::SurfaceMismatch);
            }
        }
        Ok(ClosedAlf {
            fiber_genus,
            cycles,
            section_self_intersections,
        })
    }

    pub fn fiber_genus(&self) -> u32 {
        self.fiber_genus
    }

    pub fn cycles(&self) -> &[VanishingCycle] {
        &self.cycles
    }

    pub fn sections(&self) -> &[i64] {
        &self.section_self_intersections
    }

    /// `chi = 2 * chi(fiber) + #critical points` for a fibration over the
    /// sphere.
    pub fn euler_characteristic(&self) -> i64 {
        2 * (2 - 2 * self.fiber_genus as i64) + self.cycles.len() as i64
    }
}
