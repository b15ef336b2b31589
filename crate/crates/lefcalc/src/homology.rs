//! Exact homology bookkeeping over handle data: Euler characteristic,
//! signature, first homology of a 2-handlebody and of its boundary, the
//! boundary images of 2-handle cocores, and squares of relative classes.
//!
//! The boundary of the 1-handle part of a handlebody is a connected sum of
//! `n1` copies of `S^1 x S^2`.  Writing `x_l` for the 1-handle circles and
//! `m_i` for the meridians of the 2-handle attaching circles, the first
//! homology of the surgered boundary is presented by
//!
//! ```text
//!   [ A | Q ]      one row per 2-handle (framed attaching relation)
//!   [ 0 | A^T ]    one row per 1-handle (punctured belt sphere)
//! ```
//!
//! The belt-sphere rows are what make a cancelling 1-handle/2-handle pair
//! present the three-sphere.

use num::{BigInt, BigRational, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{
    integer_kernel, smith_normal_form, solve_rational, symmetric_signature, IntMat,
};

/// A handle decomposition: `n1` 1-handles, one row of `attach` and one
/// diagonal entry of `linking` per 2-handle, and 3-/4-handle counts kept for
/// bookkeeping only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirbyData {
    n1: usize,
    attach: Vec<Vec<i64>>,
    linking: Vec<Vec<i64>>,
    n3: usize,
    n4: usize,
}

impl KirbyData {
    pub fn new(
        n1: usize,
        attach: Vec<Vec<i64>>,
        linking: Vec<Vec<i64>>,
        n3: usize,
        n4: usize,
    ) -> Result<KirbyData> {
        let k2 = attach.len();
        if linking.len() != k2 || linking.iter().any(|row| row.len() != k2) {
            return Err(Error::AttachShape {
                rows: linking.len(),
                cols: linking.first().map_or(0, |r| r.len()),
                expected_rows: k2,
                expected_cols: k2,
            });
        }
        if attach.iter().any(|row| row.len() != n1) {
            return Err(Error::AttachShape {
                rows: k2,
                cols: attach.first().map_or(0, |r| r.len()),
                expected_rows: k2,
                expected_cols: n1,
            });
        }
        for i in 0..k2 {
            for j in 0..k2 {
                if linking[i][j] != linking[j][i] {
                    return Err(Error::AsymmetricLinking);
                }
            }
        }
        Ok(KirbyData {
            n1,
            attach,
            linking,
            n3,
            n4,
        })
    }

    pub fn two_handlebody(
        n1: usize,
        attach: Vec<Vec<i64>>,
        linking: Vec<Vec<i64>>,
    ) -> Result<KirbyData> {
        KirbyData::new(n1, attach, linking, 0, 0)
    }

    pub fn b4() -> KirbyData {
        KirbyData::new(0, vec![], vec![], 0, 0).expect("empty data is valid")
    }

    pub fn one_handles(&self) -> usize {
        self.n1
    }

    pub fn two_handle_count(&self) -> usize {
        self.attach.len()
    }

    pub fn attach(&self) -> &Vec<Vec<i64>> {
        &self.attach
    }

    pub fn linking(&self) -> &Vec<Vec<i64>> {
        &self.linking
    }

    pub fn three_handles(&self) -> usize {
        self.n3
    }

    pub fn four_handles(&self) -> usize {
        self.n4
    }

    pub fn framing(&self, i: usize) -> i64 {
        self.linking[i][i]
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 - self.n1 as i64 + self.attach.len() as i64 - self.n3 as i64 + self.n4 as i64
    }

    fn attach_mat(&self) -> IntMat {
        let mut m = IntMat::zeros(self.attach.len(), self.n1);
        for (i, row) in self.attach.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    fn linking_mat(&self) -> IntMat {
        IntMat::from_i64_rows(&self.linking)
    }

    /// Basis, as columns, of the 2-handle combinations whose total attaching
    /// class vanishes; these span the second homology of the handlebody.
    fn closed_class_basis(&self) -> IntMat {
        // x with x^T A = 0, i.e. kernel of A^T
        integer_kernel(&self.attach_mat().transpose())
    }

    /// Signature of the linking form restricted to classes that do not run
    /// over 1-handles, computed exactly over the rationals.
    pub fn signature(&self) -> i64 {
        let basis = self.closed_class_basis();
        let restricted = basis.transpose().mul(&self.linking_mat()).mul(&basis);
        symmetric_signature(&restricted)
    }

    /// First homology of the handlebody itself.
    pub fn h1_total_space(&self) -> AbelianGroup {
        AbelianGroup::from_presentation(self.n1, &self.attach_mat())
    }

    /// Present the first homology of the boundary of the 2-handlebody part,
    /// with the meridian image of every 2-handle cocore.
    pub fn h1_boundary(&self) -> BoundaryPresentation {
        let k2 = self.attach.len();
        let generators = self.n1 + k2;
        let mut relations = IntMat::zeros(k2 + self.n1, generators);
        for i in 0..k2 {
            for l in 0..self.n1 {
                relations.set(i, l, BigInt::from(self.attach[i][l]));
            }
            for j in 0..k2 {
                relations.set(i, self.n1 + j, BigInt::from(self.linking[i][j]));
            }
        }
        for l in 0..self.n1 {
            for i in 0..k2 {
                relations.set(k2 + l, self.n1 + i, BigInt::from(self.attach[i][l]));
            }
        }
        BoundaryPresentation::new(generators, self.n1, relations)
    }

    /// Square of the relative class with cocore coordinates `rotations`.
    ///
    /// Requires the class to vanish on the boundary (zero first Chern class);
    /// then a rational lift `x` of the class through the linking form on the
    /// closed-class lattice exists, and the square is `r^T x`, independent of
    /// the choice of lift.
    pub fn c_squared(&self, rotations: &[i64]) -> Result<BigRational> {
        let k2 = self.attach.len();
        if rotations.len() != k2 {
            return Err(Error::CoefficientLength {
                got: rotations.len(),
                expected: k2,
            });
        }
        let pres = self.h1_boundary();
        let boundary_class = pres.meridian_combination(rotations);
        if !pres.is_zero_class(&boundary_class) {
            return Err(Error::ChernClassNonzero);
        }

        // Solve Q k y + A z = r: a lift through the cocore relations.
        let kernel = self.closed_class_basis();
        let qk = self.linking_mat().mul(&kernel);
        let unknowns = kernel.cols() + self.n1;
        let mut system = IntMat::zeros(k2, unknowns);
        for i in 0..k2 {
            for j in 0..kernel.cols() {
                system.set(i, j, qk.at(i, j).clone());
            }
            for l in 0..self.n1 {
                system.set(i, kernel.cols() + l, BigInt::from(self.attach[i][l]));
            }
        }
        let rhs: Vec<BigInt> = rotations.iter().map(|&r| BigInt::from(r)).collect();
        let solution = solve_rational(&system, &rhs).ok_or(Error::NotInPairingImage)?;

        let mut square = BigRational::zero();
        for i in 0..k2 {
            let mut xi = BigRational::zero();
            for j in 0..kernel.cols() {
                xi += BigRational::from(kernel.at(i, j).clone()) * &solution[j];
            }
            square += BigRational::from(BigInt::from(rotations[i])) * xi;
        }
        Ok(square)
    }
}

/// A finitely generated abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors `d_1 | d_2 | ...`, each greater than one.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup {
            free_rank: 0,
            torsion: vec![],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Quotient of `Z^generators` by the rows of `relations`.
    pub fn from_presentation(generators: usize, relations: &IntMat) -> AbelianGroup {
        assert_eq!(relations.cols(), generators);
        let snf = smith_normal_form(&relations.transpose());
        let diag = snf.d.diagonal();
        let torsion = diag
            .iter()
            .filter(|d| !d.is_zero() && **d != BigInt::from(1))
            .cloned()
            .collect();
        AbelianGroup {
            free_rank: generators - snf.rank,
            torsion,
        }
    }

    pub fn has_even_torsion(&self) -> bool {
        self.torsion.iter().any(|d| (d % BigInt::from(2)).is_zero())
    }
}

/// Boundary image of one 2-handle cocore, in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryClassImage {
    pub index: usize,
    pub vector: Vec<BigInt>,
}

/// A presented copy of the boundary's first homology.
///
/// Generators are the 1-handle circles followed by the 2-handle meridians.
/// Canonical coordinates of an element list its torsion components (reduced
/// into `[0, d_i)`) followed by its free components.
#[derive(Debug, Clone)]
pub struct BoundaryPresentation {
    group: AbelianGroup,
    relations: IntMat,
    transform: IntMat,
    diag: Vec<BigInt>,
    generators: usize,
    meridian_offset: usize,
}

impl BoundaryPresentation {
    fn new(generators: usize, meridian_offset: usize, relations: IntMat) -> BoundaryPresentation {
        let snf = smith_normal_form(&relations.transpose());
        let mut diag = snf.d.diagonal();
        diag.resize(generators, BigInt::zero());
        let torsion = diag
            .iter()
            .filter(|d| !d.is_zero() && **d != BigInt::from(1))
            .cloned()
            .collect();
        let group = AbelianGroup {
            free_rank: generators - snf.rank,
            torsion,
        };
        BoundaryPresentation {
            group,
            relations,
            transform: snf.u,
            diag,
            generators,
            meridian_offset,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The relation matrix (rows are relations over the generators).
    pub fn relations(&self) -> &IntMat {
        &self.relations
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn meridian_count(&self) -> usize {
        self.generators - self.meridian_offset
    }

    /// Canonical coordinates of an element given in generator coordinates.
    pub fn class_of(&self, generator_coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(generator_coords.len(), self.generators);
        let y = self.transform.mul_vec(generator_coords);
        let mut out = Vec::new();
        // torsion coordinates first
        for (i, d) in self.diag.iter().enumerate() {
            if !d.is_zero() && *d != BigInt::from(1) {
                let mut v = &y[i] % d;
                if v.is_negative() {
                    v += d;
                }
                out.push(v);
            }
        }
        for (i, d) in self.diag.iter().enumerate() {
            if d.is_zero() {
                out.push(y[i].clone());
            }
        }
        out
    }

    pub fn is_zero_class(&self, generator_coords: &[BigInt]) -> bool {
        self.class_of(generator_coords).iter().all(Zero::is_zero)
    }

    /// Generator-coordinate vector of `sum_i weights[i] * m_i`.
    pub fn meridian_combination(&self, weights: &[i64]) -> Vec<BigInt> {
        assert_eq!(weights.len(), self.meridian_count());
        let mut v = vec![BigInt::zero(); self.generators];
        for (i, &w) in weights.iter().enumerate() {
            v[self.meridian_offset + i] = BigInt::from(w);
        }
        v
    }

    /// Canonical class of the `i`-th meridian.
    pub fn meridian_class(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.generators];
        v[self.meridian_offset + i] = BigInt::from(1);
        self.class_of(&v)
    }

    pub fn meridian_images(&self) -> Vec<BoundaryClassImage> {
        (0..self.meridian_count())
            .map(|i| BoundaryClassImage {
                index: i,
                vector: self.meridian_class(i),
            })
            .collect()
    }
}
