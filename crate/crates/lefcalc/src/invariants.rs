//! Homotopy invariants of the boundary plane field of an achiral Lefschetz
//! fibration: the first Chern class of the supported contact structure, the
//! three-dimensional invariant `d3` when that class vanishes, the rotation
//! adjustment that kills the Chern class by even edits, and the matching of
//! `d3` values by negative stabilization.
//!
//! With `c^2` the square of the rotation-weighted cocore class, `sigma` the
//! signature, `chi` the Euler characteristic of the total space and `q` the
//! number of negative vanishing cycles,
//!
//! ```text
//!    d3 = (c^2 - 3 sigma - 2 chi) / 4 + q .
//! ```
//!
//! A negative stabilization raises `d3` by one and a positive one fixes it;
//! neither moves the Chern class.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::alf::Alf;
use crate::error::{Error, Result};
use crate::homology::{AbelianGroup, BoundaryPresentation};
use crate::matrix::{integer_kernel, size_reduce, solve_integer, IntMat};
use crate::surface::Sign;

/// The Poincare dual of the first Chern class, in canonical coordinates of
/// the presented boundary homology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernClass {
    coords: Vec<BigInt>,
    group: AbelianGroup,
    two_torsion_regime: bool,
}

impl ChernClass {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when the boundary homology has even torsion, where the homotopy
    /// classification by these two invariants is not claimed.
    pub fn two_torsion_regime(&self) -> bool {
        self.two_torsion_regime
    }
}

/// The homotopy class of the boundary plane field: the Chern class, the
/// three-dimensional invariant when it vanishes, and the negative cycle
/// count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyClass {
    pub c1: ChernClass,
    pub d3: Option<BigRational>,
    pub q: usize,
}

/// Rotation edits and stabilization counts produced by the solvers.
///
/// Each move shifts the rotation of `cycle_index` by exactly `-2 * count`
/// via `|count|` double stabilizations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StabilizationPlan {
    pub moves: Vec<RotationMove>,
    pub negative_stabilizations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationMove {
    pub cycle_index: usize,
    pub count: i64,
}

impl StabilizationPlan {
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty() && self.negative_stabilizations == 0
    }
}

/// Sum of rotation-weighted meridian images in the boundary homology.
pub fn chern_class(alf: &Alf) -> ChernClass {
    let pres = alf.induced_kirby_data().h1_boundary();
    let combo = pres.meridian_combination(&alf.rotations());
    ChernClass {
        coords: pres.class_of(&combo),
        two_torsion_regime: pres.group().has_even_torsion(),
        group: pres.group().clone(),
    }
}

/// The three-dimensional homotopy invariant; requires a vanishing Chern
/// class.
pub fn d3(alf: &Alf) -> Result<BigRational> {
    let kd = alf.induced_kirby_data();
    let c2 = kd.c_squared(&alf.rotations())?;
    let chi = BigRational::from(BigInt::from(kd.euler_characteristic()));
    let sigma = BigRational::from(BigInt::from(kd.signature()));
    let q = BigRational::from(BigInt::from(alf.negative_cycle_count() as i64));
    let four = BigRational::from(BigInt::from(4));
    let three = BigRational::from(BigInt::from(3));
    let two = BigRational::from(BigInt::from(2));
    Ok((c2 - three * sigma - two * chi) / four + q)
}

pub fn homotopy_class(alf: &Alf) -> HomotopyClass {
    let c1 = chern_class(alf);
    let d3 = if c1.is_zero() {
        Some(d3(alf).expect("chern class vanishes"))
    } else {
        None
    };
    HomotopyClass {
        c1,
        d3,
        q: alf.negative_cycle_count(),
    }
}

/// Solve `sum_i a_i (2 c_i) = target` in the presented group, where the
/// `c_i` are the meridian images; `target` is given in generator
/// coordinates.  Returns small coefficients `a_i` when the target lies in
/// the subgroup of even combinations.
///
/// The system is written in canonical coordinates, with one slack column
/// per torsion summand, and the raw solution is shrunk by the kernel
/// lattice so the number of stabilization moves stays reasonable.
pub fn solve_even_combination(
    pres: &BoundaryPresentation,
    target: &[BigInt],
) -> Option<Vec<BigInt>> {
    let meridians = pres.meridian_count();
    let torsion = pres.group().torsion.clone();
    let coords = torsion.len() + pres.group().free_rank;
    let target_coords = pres.class_of(target);
    let meridian_coords: Vec<Vec<BigInt>> =
        (0..meridians).map(|i| pres.meridian_class(i)).collect();

    let mut system = IntMat::zeros(coords, meridians + torsion.len());
    for (i, c) in meridian_coords.iter().enumerate() {
        for j in 0..coords {
            system.set(j, i, BigInt::from(2) * &c[j]);
        }
    }
    for (j, modulus) in torsion.iter().enumerate() {
        system.set(j, meridians + j, modulus.clone());
    }
    let solution = solve_integer(&system, &target_coords)?;
    let mut coefficients = solution[..meridians].to_vec();

    let kernel = integer_kernel(&system);
    let projected = IntMat::from_fn(meridians, kernel.cols(), |i, j| kernel.at(i, j).clone());
    size_reduce(&mut coefficients, &projected);
    Some(coefficients)
}

/// Kill the Chern class by even rotation edits.
///
/// Solves for coefficients `a_i` with `sum 2 a_i c_i` equal to the current
/// Chern class and applies `|a_i|` double stabilizations to cycle `i`, each
/// shifting its rotation by `-2 sign(a_i)`.  Fails when the class is not an
/// even combination of the meridian images.
pub fn adjust_rotations(alf: &Alf) -> Result<(Alf, StabilizationPlan)> {
    let pres = alf.induced_kirby_data().h1_boundary();
    let target = pres.meridian_combination(&alf.rotations());
    if pres.is_zero_class(&target) {
        return Ok((alf.clone(), StabilizationPlan::default()));
    }
    let coefficients = solve_even_combination(&pres, &target).ok_or(Error::NotAnEvenCombination)?;

    let mut adjusted = alf.clone();
    let mut moves = Vec::new();
    for (index, a) in coefficients.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let count = i64::try_from(a.clone())
            .map_err(|_| Error::InvalidInput("rotation adjustment overflows".into()))?;
        let step = if count > 0 {
            Sign::Negative
        } else {
            Sign::Positive
        };
        for _ in 0..count.unsigned_abs() {
            adjusted = adjusted.double_stabilize_cycle(index, step)?;
        }
        moves.push(RotationMove {
            cycle_index: index,
            count,
        });
    }

    if !chern_class(&adjusted).is_zero() {
        return Err(Error::Integrity(
            "rotation adjustment did not kill the Chern class".into(),
        ));
    }
    Ok((
        adjusted,
        StabilizationPlan {
            moves,
            negative_stabilizations: 0,
        },
    ))
}

/// Equalize the three-dimensional invariants of two fibrations by negative
/// stabilizations, at least one on each side so both supported contact
/// structures become overtwisted.  Extra stabilizations go to the side with
/// the smaller invariant.  Fails when the difference is not an integer.
pub fn match_d3(a1: &Alf, a2: &Alf) -> Result<(Alf, Alf, StabilizationPlan, StabilizationPlan)> {
    let d1 = d3(a1)?;
    let d2 = d3(a2)?;
    let gap = &d1 - &d2;
    if !gap.is_integer() {
        return Err(Error::NonIntegerGap(gap));
    }
    let mut n1 = BigInt::one();
    let mut n2 = BigInt::one();
    if gap.is_negative() {
        n1 += -gap.to_integer();
    } else {
        n2 += gap.to_integer();
    }
    let n1 = usize::try_from(n1)
        .map_err(|_| Error::InvalidInput("stabilization count overflows".into()))?;
    let n2 = usize::try_from(n2)
        .map_err(|_| Error::InvalidInput("stabilization count overflows".into()))?;

    let mut out1 = a1.clone();
    for _ in 0..n1 {
        out1 = out1.stabilize(Sign::Negative);
    }
    let mut out2 = a2.clone();
    for _ in 0..n2 {
        out2 = out2.stabilize(Sign::Negative);
    }
    Ok((
        out1,
        out2,
        StabilizationPlan {
            moves: vec![],
            negative_stabilizations: n1,
        },
        StabilizationPlan {
            moves: vec![],
            negative_stabilizations: n2,
        },
    ))
}

/// Reset each rotation to the parity of its handle framing, adding one when
/// the parities disagree.
///
/// The rotation-weighted cocore class extends to an almost-complex structure
/// only when it is characteristic for the linking form, which pins the
/// parity of every rotation to the parity of its framing.  Construction
/// defaults of zero need this normalization before invariant matching.
pub fn normalize_rotation_parity(alf: &Alf) -> Alf {
    let kd = alf.induced_kirby_data();
    let mut out = alf.clone();
    for i in 0..alf.cycles().len() {
        let r = alf.cycles()[i].rotation();
        if (r - kd.framing(i)) % 2 != 0 {
            out = out
                .with_rotation(i, r + 1)
                .expect("index ranges over existing cycles");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alf::VanishingCycle;
    use crate::surface::Surface;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn trivial_disk_alf() -> Alf {
        Alf::trivial(Surface::disk()).unwrap()
    }

    fn annulus_alf(sign: Sign, rotation: i64) -> Alf {
        let fiber = Surface::annulus();
        Alf::with_default_seifert(
            fiber,
            vec![VanishingCycle::new(fiber.basis_class(0), sign, rotation)],
        )
        .unwrap()
    }

    /// Three parallel copies of a handle class: boundary homology has a
    /// meridian image of order three.
    fn order_three_alf(rotations: [i64; 3]) -> Alf {
        let fiber = Surface::new(1, 1);
        let cycles = rotations
            .iter()
            .map(|&r| VanishingCycle::new(fiber.basis_class(0), Sign::Positive, r))
            .collect();
        Alf::with_default_seifert(fiber, cycles).unwrap()
    }

    /// Two parallel copies: the meridian image has order two.
    fn order_two_alf(rotations: [i64; 2]) -> Alf {
        let fiber = Surface::new(1, 1);
        let cycles = rotations
            .iter()
            .map(|&r| VanishingCycle::new(fiber.basis_class(0), Sign::Positive, r))
            .collect();
        Alf::with_default_seifert(fiber, cycles).unwrap()
    }

    #[test]
    fn chern_class_of_zero_rotations_vanishes() {
        assert!(chern_class(&trivial_disk_alf()).is_zero());
        assert!(chern_class(&annulus_alf(Sign::Positive, 0)).is_zero());
    }

    #[test]
    fn chern_class_on_a_three_sphere_boundary_vanishes_for_any_rotation() {
        // the annulus core cycle cancels the one-handle, so the boundary is
        // the three-sphere and every rotation weight dies
        let alf = annulus_alf(Sign::Positive, 17);
        let c = chern_class(&alf);
        assert!(c.is_zero());
        assert!(c.group().is_trivial());
    }

    #[test]
    fn chern_class_detects_torsion_and_the_even_regime() {
        let c = chern_class(&order_two_alf([1, 0]));
        assert!(!c.is_zero());
        assert!(c.two_torsion_regime());
        assert_eq!(c.group().torsion, vec![BigInt::from(2)]);

        let c3 = chern_class(&order_three_alf([1, 0, 0]));
        assert!(!c3.is_zero());
        assert!(!c3.two_torsion_regime());
        assert_eq!(c3.group().torsion, vec![BigInt::from(3)]);

        // weights summing to zero mod three vanish
        assert!(chern_class(&order_three_alf([1, 1, 1])).is_zero());
    }

    #[test]
    fn d3_of_the_four_ball_is_minus_one_half() {
        assert_eq!(d3(&trivial_disk_alf()).unwrap(), rational(-1, 2));
        assert_eq!(
            d3(&annulus_alf(Sign::Positive, 0)).unwrap(),
            rational(-1, 2)
        );
    }

    #[test]
    fn d3_of_the_negative_hopf_book_is_plus_one_half() {
        let alf = annulus_alf(Sign::Negative, 0);
        assert_eq!(alf.negative_cycle_count(), 1);
        assert_eq!(d3(&alf).unwrap(), rational(1, 2));
    }

    #[test]
    fn d3_requires_a_vanishing_chern_class() {
        let alf = order_three_alf([1, 0, 0]);
        assert_eq!(d3(&alf), Err(Error::ChernClassNonzero));
    }

    #[test]
    fn stabilization_laws_for_d3_and_chern() {
        let alf = annulus_alf(Sign::Positive, 0);
        let base = d3(&alf).unwrap();
        assert_eq!(d3(&alf.stabilize(Sign::Positive)).unwrap(), base);
        assert_eq!(
            d3(&alf.stabilize(Sign::Negative)).unwrap(),
            &base + BigRational::one()
        );
        assert!(chern_class(&alf.stabilize(Sign::Positive)).is_zero());
        assert!(chern_class(&alf.stabilize(Sign::Negative)).is_zero());

        // the boundary-connecting flavor obeys the same laws
        let split = alf.stabilize(Sign::Positive); // boundary count 3
        let base = d3(&split).unwrap();
        let connected = split.stabilize_connecting(Sign::Positive).unwrap();
        assert_eq!(d3(&connected).unwrap(), base);
        assert!(chern_class(&connected).is_zero());
        let connected_negative = split.stabilize_connecting(Sign::Negative).unwrap();
        assert_eq!(d3(&connected_negative).unwrap(), &base + BigRational::one());
        assert!(chern_class(&connected_negative).is_zero());
    }

    #[test]
    fn solver_handles_the_free_generator_example() {
        // single zero-framed unknot: meridian generates an infinite cyclic
        // group, rotation 4 needs a = 2, rotation 1 is obstructed by parity
        let kd =
            crate::homology::KirbyData::two_handlebody(0, vec![vec![]], vec![vec![0]]).unwrap();
        let pres = kd.h1_boundary();
        let target = pres.meridian_combination(&[4]);
        assert_eq!(
            solve_even_combination(&pres, &target),
            Some(vec![BigInt::from(2)])
        );
        let odd = pres.meridian_combination(&[1]);
        assert_eq!(solve_even_combination(&pres, &odd), None);
    }

    #[test]
    fn adjust_rotations_is_a_no_op_at_zero_chern_class() {
        let alf = annulus_alf(Sign::Positive, 0);
        let (out, plan) = adjust_rotations(&alf).unwrap();
        assert_eq!(out, alf);
        assert!(plan.is_empty());
    }

    #[test]
    fn adjust_rotations_kills_an_order_three_class() {
        let alf = order_three_alf([1, 0, 0]);
        let (out, plan) = adjust_rotations(&alf).unwrap();
        assert!(!plan.is_empty());
        assert!(chern_class(&out).is_zero());
        for (before, after) in alf.rotations().iter().zip(out.rotations().iter().take(3)) {
            assert_eq!((after - before) % 2, 0, "rotation edits must be even");
        }
        // every recorded move shifted its cycle by exactly -2 * count
        for mv in &plan.moves {
            let before = alf.cycles()[mv.cycle_index].rotation();
            let after = out.cycles()[mv.cycle_index].rotation();
            assert_eq!(after - before, -2 * mv.count);
        }
    }

    #[test]
    fn adjust_rotations_rejects_an_odd_torsion_class() {
        let alf = order_two_alf([1, 0]);
        assert_eq!(adjust_rotations(&alf), Err(Error::NotAnEvenCombination));
    }

    #[test]
    fn match_d3_symmetric_case() {
        let a = annulus_alf(Sign::Positive, 0);
        let b = trivial_disk_alf();
        let (m1, m2, p1, p2) = match_d3(&a, &b).unwrap();
        assert_eq!(p1.negative_stabilizations, 1);
        assert_eq!(p2.negative_stabilizations, 1);
        assert_eq!(d3(&m1).unwrap(), rational(1, 2));
        assert_eq!(d3(&m2).unwrap(), rational(1, 2));
    }

    #[test]
    fn match_d3_closes_an_integer_gap_on_the_smaller_side() {
        let low = annulus_alf(Sign::Positive, 0); // -1/2
        let high = annulus_alf(Sign::Negative, 0).stabilize(Sign::Negative); // 3/2
        let (m1, m2, p1, p2) = match_d3(&low, &high).unwrap();
        assert_eq!(
            (p1.negative_stabilizations, p2.negative_stabilizations),
            (3, 1)
        );
        assert_eq!(d3(&m1).unwrap(), d3(&m2).unwrap());
        assert_eq!(d3(&m1).unwrap(), rational(5, 2));
    }

    #[test]
    fn match_d3_rejects_a_fractional_gap() {
        // chi differs by one between these two, so the gap is a half-integer
        let a = annulus_alf(Sign::Positive, 0);
        let b = Alf::trivial(Surface::annulus()).unwrap();
        match match_d3(&a, &b) {
            Err(Error::NonIntegerGap(g)) => assert_eq!(g, rational(-1, 2)),
            other => panic!("expected a non-integer gap, got {other:?}"),
        }
    }

    #[test]
    fn four_d3_identity_and_blowup_bookkeeping() {
        // 4 d3 + 2 chi - c^2 + 3 sigma - 4 q = 0, and the same value comes
        // out of the closed-up bookkeeping chi -> chi + q, sigma -> sigma + q,
        // c^2 -> c^2 + 9 q used to justify the formula
        for alf in [
            annulus_alf(Sign::Negative, 0),
            annulus_alf(Sign::Positive, 0).stabilize(Sign::Negative),
            order_three_alf([0, 0, 0]).stabilize(Sign::Negative),
        ] {
            let kd = alf.induced_kirby_data();
            let q = alf.negative_cycle_count() as i64;
            let c2 = kd.c_squared(&alf.rotations()).unwrap();
            let chi = kd.euler_characteristic();
            let sigma = kd.signature();
            let value = d3(&alf).unwrap();
            let four_d3 = &value * BigRational::from(BigInt::from(4));
            let rhs = &c2 - BigRational::from(BigInt::from(3 * sigma + 2 * chi - 4 * q));
            assert_eq!(four_d3, rhs);

            let closed_up = (&c2 + BigRational::from(BigInt::from(9 * q))
                - BigRational::from(BigInt::from(3 * (sigma + q)))
                - BigRational::from(BigInt::from(2 * (chi + q))))
                / BigRational::from(BigInt::from(4));
            assert_eq!(closed_up, value);
        }
    }

    #[test]
    fn parity_normalization_matches_framings() {
        let fiber = Surface::annulus();
        // framing -1 forces odd rotations
        let alf = Alf::with_default_seifert(
            fiber,
            vec![VanishingCycle::new(fiber.basis_class(0), Sign::Positive, 0)],
        )
        .unwrap();
        let fixed = normalize_rotation_parity(&alf);
        assert_eq!(fixed.cycles()[0].rotation(), 1);
        assert_eq!(normalize_rotation_parity(&fixed), fixed);
    }

    #[test]
    fn homotopy_class_bundles_the_invariants() {
        let h = homotopy_class(&annulus_alf(Sign::Negative, 0));
        assert!(h.c1.is_zero());
        assert_eq!(h.d3, Some(rational(1, 2)));
        assert_eq!(h.q, 1);

        let obstructed = homotopy_class(&order_three_alf([1, 0, 0]));
        assert!(obstructed.d3.is_none());
    }
}
