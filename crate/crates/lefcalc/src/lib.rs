//! A combinatorial calculus for achiral Lefschetz fibrations over the disk,
//! the open book decompositions they induce on their boundaries, and the
//! homotopy invariants (`c1`, `d3`) of the supported plane fields, all at
//! the level of homology bookkeeping with exact integer arithmetic.
//!
//! The layers, bottom up:
//!
//! * [`surface`] — surfaces with boundary, curve classes, signed Dehn
//!   twists acting as transvections, Seifert forms for framings and
//!   linking numbers;
//! * [`matrix`] — exact integer linear algebra (Smith normal form,
//!   kernels, signatures of symmetric forms);
//! * [`homology`] — handle decompositions and their invariants, including
//!   the presented first homology of the boundary;
//! * [`openbook`], [`alf`] — monodromy factorizations, fibrations with
//!   signed vanishing cycles, stabilization moves, capping;
//! * [`invariants`] — the Chern class and `d3` of the boundary plane
//!   field, rotation adjustment, `d3` matching;
//! * [`harer`] — converting a framed-link handlebody presentation into a
//!   fibration over the disk;
//! * [`assembler`] — splitting a closed manifold, fibering both halves,
//!   matching invariants and assembling the surgered closed fibration.
//!
//! ```
//! use lefcalc::{Alf, Sign, Surface, VanishingCycle};
//!
//! // the negative Hopf band: annulus page, one left-handed twist
//! let fiber = Surface::annulus();
//! let alf = Alf::with_default_seifert(
//!     fiber,
//!     vec![VanishingCycle::new(fiber.basis_class(0), Sign::Negative, 0)],
//! )
//! .unwrap();
//! let d3 = lefcalc::invariants::d3(&alf).unwrap();
//! assert_eq!(d3.to_string(), "1/2");
//! ```

pub mod alf;
pub mod assembler;
pub mod error;
pub mod harer;
pub mod homology;
pub mod invariants;
pub mod matrix;
pub mod openbook;
pub mod surface;

pub use alf::{Alf, ClosedAlf, VanishingCycle};
pub use error::{Error, Result};
pub use homology::{AbelianGroup, BoundaryClassImage, BoundaryPresentation, KirbyData};
pub use openbook::{MarkedKnot, OpenBook};
pub use surface::{CurveClass, SeifertForm, Sign, SignedTwist, Surface};
