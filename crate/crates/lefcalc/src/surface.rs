//! Compact oriented surfaces with boundary, homology classes of curves on
//! them, and the homological action of signed Dehn twists.
//!
//! A surface of genus `g` with `b > 0` boundary components has a first
//! homology of rank `2g + b - 1`.  The basis is ordered
//! `a_1, b_1, ..., a_g, b_g, d_1, ..., d_{b-1}` where the `a/b` pairs span the
//! handles (`<a_i, b_i> = +1`) and the `d_j` are boundary-parallel classes
//! pairing to zero with everything.

use crate::error::{Error, Result};

/// Chirality marker used for Dehn twists, vanishing cycles and stabilizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_i64(value: i64) -> Result<Sign> {
        match value {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(Error::InvalidInput(format!(
                "sign must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Sign::Positive)
    }
}

/// A compact oriented surface, recorded by genus and boundary count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surface {
    genus: u32,
    boundary_count: u32,
}

impl Surface {
    pub fn new(genus: u32, boundary_count: u32) -> Surface {
        Surface {
            genus,
            boundary_count,
        }
    }

    pub fn disk() -> Surface {
        Surface::new(0, 1)
    }

    pub fn annulus() -> Surface {
        Surface::new(0, 2)
    }

    pub fn genus(self) -> u32 {
        self.genus
    }

    pub fn boundary_count(self) -> u32 {
        self.boundary_count
    }

    pub fn is_closed(self) -> bool {
        self.boundary_count == 0
    }

    pub fn h1_rank(self) -> usize {
        2 * self.genus as usize + (self.boundary_count as usize).saturating_sub(1)
    }

    pub fn euler_characteristic(self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count as i64
    }

    /// Entry of the intersection form `J` in the ordered basis.
    pub fn pairing_entry(self, i: usize, j: usize) -> i64 {
        let handle = 2 * self.genus as usize;
        if i < handle && j < handle {
            if i % 2 == 0 && j == i + 1 {
                1
            } else if j % 2 == 0 && i == j + 1 {
                -1
            } else {
                0
            }
        } else {
            0
        }
    }

    /// The full intersection form as a matrix.
    pub fn intersection_form(self) -> Vec<Vec<i64>> {
        let n = self.h1_rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.pairing_entry(i, j)).collect())
            .collect()
    }

    pub fn zero_class(self) -> CurveClass {
        CurveClass {
            surface: self,
            coeffs: vec![0; self.h1_rank()],
            embedded_hint: false,
        }
    }

    /// The `index`-th basis vector as a curve class. Panics when out of range.
    pub fn basis_class(self, index: usize) -> CurveClass {
        assert!(
            index < self.h1_rank(),
            "basis index {index} out of range for rank {}",
            self.h1_rank()
        );
        let mut coeffs = vec![0; self.h1_rank()];
        coeffs[index] = 1;
        CurveClass {
            surface: self,
            coeffs,
            embedded_hint: false,
        }
    }

    pub fn curve(self, coeffs: Vec<i64>) -> Result<CurveClass> {
        if coeffs.len() != self.h1_rank() {
            return Err(Error::CoefficientLength {
                got: coeffs.len(),
                expected: self.h1_rank(),
            });
        }
        Ok(CurveClass {
            surface: self,
            coeffs,
            embedded_hint: false,
        })
    }

    /// Attach a 1-handle with both feet on one boundary circle.
    ///
    /// The rank grows by one and the new class, appended last, pairs to zero
    /// with everything; existing classes embed by zero-extension.
    pub fn add_page_handle(self) -> Result<(Surface, PageExtension)> {
        if self.is_closed() {
            return Err(Error::ClosedSurface);
        }
        let to = Surface::new(self.genus, self.boundary_count + 1);
        let index_map = (0..self.h1_rank()).collect();
        Ok((
            to,
            PageExtension {
                from: self,
                to,
                index_map,
                new_indices: vec![to.h1_rank() - 1],
                unit_pairs: vec![],
            },
        ))
    }

    /// Attach a 1-handle joining the last two boundary circles.
    ///
    /// Genus grows by one and the boundary count drops by one.  The new curve
    /// through the handle becomes `a_{g+1}`; the boundary-parallel class of
    /// one merged circle becomes its partner `b_{g+1}`.
    pub fn add_connecting_handle(self) -> Result<(Surface, PageExtension)> {
        if self.boundary_count < 2 {
            return Err(Error::NotEnoughBoundary);
        }
        let to = Surface::new(self.genus + 1, self.boundary_count - 1);
        let g2 = 2 * self.genus as usize;
        let mut index_map = Vec::with_capacity(self.h1_rank());
        for i in 0..self.h1_rank() {
            if i < g2 {
                index_map.push(i);
            } else if i == self.h1_rank() - 1 {
                // last boundary-parallel class becomes b_{g+1}
                index_map.push(g2 + 1);
            } else {
                index_map.push(i + 2);
            }
        }
        Ok((
            to,
            PageExtension {
                from: self,
                to,
                index_map,
                new_indices: vec![g2],
                unit_pairs: vec![(g2, g2 + 1)],
            },
        ))
    }

    /// Connected sum with a torus, adding a fresh symplectic pair.
    pub fn add_torus_handle(self) -> (Surface, PageExtension) {
        let to = Surface::new(self.genus + 1, self.boundary_count);
        let g2 = 2 * self.genus as usize;
        let index_map = (0..self.h1_rank())
            .map(|i| if i < g2 { i } else { i + 2 })
            .collect();
        (
            to,
            PageExtension {
                from: self,
                to,
                index_map,
                new_indices: vec![g2, g2 + 1],
                unit_pairs: vec![(g2, g2 + 1)],
            },
        )
    }
}

/// How one surface sits inside an enlarged one after a handle attachment.
///
/// `index_map[i]` is the new position of old basis vector `i`; `new_indices`
/// lists the freshly created basis vectors; `unit_pairs` are the upper
/// triangular Seifert entries forced to `1` so that `L - L^T` stays equal to
/// the intersection form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageExtension {
    from: Surface,
    to: Surface,
    index_map: Vec<usize>,
    new_indices: Vec<usize>,
    unit_pairs: Vec<(usize, usize)>,
}

impl PageExtension {
    pub fn from_surface(&self) -> Surface {
        self.from
    }

    pub fn to_surface(&self) -> Surface {
        self.to
    }

    pub fn new_indices(&self) -> &[usize] {
        &self.new_indices
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }
}

/// An integral first-homology class on a surface, standing in for a curve.
///
/// Embeddedness is never verified; `embedded_hint` is a caller assertion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    surface: Surface,
    coeffs: Vec<i64>,
    embedded_hint: bool,
}

impl CurveClass {
    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn embedded_hint(&self) -> bool {
        self.embedded_hint
    }

    pub fn with_embedded_hint(mut self, hint: bool) -> CurveClass {
        self.embedded_hint = hint;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &CurveClass) -> Result<CurveClass> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CurveClass {
            surface: self.surface,
            coeffs,
            embedded_hint: false,
        })
    }

    pub fn scaled(&self, k: i64) -> CurveClass {
        CurveClass {
            surface: self.surface,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            embedded_hint: false,
        }
    }

    /// Algebraic intersection number `<self, other>`; antisymmetric.
    pub fn intersection(&self, other: &CurveClass) -> Result<i64> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch);
        }
        let g = self.surface.genus as usize;
        let mut total = 0;
        for k in 0..g {
            total += self.coeffs[2 * k] * other.coeffs[2 * k + 1]
                - self.coeffs[2 * k + 1] * other.coeffs[2 * k];
        }
        Ok(total)
    }

    /// Re-express the class on an enlarged surface.
    pub fn extend(&self, ext: &PageExtension) -> Result<CurveClass> {
        if self.surface != ext.from {
            return Err(Error::SurfaceMismatch);
        }
        let mut coeffs = vec![0; ext.to.h1_rank()];
        for (old, &new) in ext.index_map.iter().enumerate() {
            coeffs[new] = self.coeffs[old];
        }
        Ok(CurveClass {
            surface: ext.to,
            coeffs,
            embedded_hint: self.embedded_hint,
        })
    }
}

/// A Dehn twist about a curve class, right-handed when the sign is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTwist {
    curve: CurveClass,
    sign: Sign,
}

impl SignedTwist {
    pub fn new(curve: CurveClass, sign: Sign) -> SignedTwist {
        SignedTwist { curve, sign }
    }

    pub fn positive(curve: CurveClass) -> SignedTwist {
        SignedTwist::new(curve, Sign::Positive)
    }

    pub fn negative(curve: CurveClass) -> SignedTwist {
        SignedTwist::new(curve, Sign::Negative)
    }

    pub fn curve(&self) -> &CurveClass {
        &self.curve
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn inverse(&self) -> SignedTwist {
        SignedTwist {
            curve: self.curve.clone(),
            sign: self.sign.flipped(),
        }
    }

    /// The transvection `x -> x + sign * <c, x> * c`.
    ///
    /// It fixes the twisting curve and preserves the intersection form.
    pub fn apply(&self, x: &CurveClass) -> Result<CurveClass> {
        let pairing = self.curve.intersection(x)?;
        x.add(&self.curve.scaled(self.sign.as_i64() * pairing))
    }

    /// Matrix of the transvection on the ordered basis.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let surface = self.curve.surface();
        let n = surface.h1_rank();
        let mut m = vec![vec![0; n]; n];
        for j in 0..n {
            let image = self
                .apply(&surface.basis_class(j))
                .expect("twist and basis vector share a surface");
            for i in 0..n {
                m[i][j] = image.coeffs()[i];
            }
        }
        m
    }

    pub fn extend(&self, ext: &PageExtension) -> Result<SignedTwist> {
        Ok(SignedTwist {
            curve: self.curve.extend(ext)?,
            sign: self.sign,
        })
    }
}

/// A bilinear refinement of the intersection form.
///
/// `L - L^T = J` must hold.  `L(c, c)` is the framing a page induces on `c`
/// against the zero reference, and `L(c_j, c_i)` is the linking number of
/// classes pushed onto distinct pages, the later one pushed off the earlier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertForm {
    surface: Surface,
    matrix: Vec<Vec<i64>>,
}

impl SeifertForm {
    /// The strict upper-triangular part of `J`: the standard disk-with-bands
    /// embedding where every basis curve has page framing zero.
    pub fn default_for(surface: Surface) -> SeifertForm {
        let n = surface.h1_rank();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i < j {
                            surface.pairing_entry(i, j)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        SeifertForm { surface, matrix }
    }

    pub fn new(surface: Surface, matrix: Vec<Vec<i64>>) -> Result<SeifertForm> {
        let n = surface.h1_rank();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::CoefficientLength {
                got: matrix.len(),
                expected: n,
            });
        }
        for i in 0..n {
            for j in 0..n {
                if matrix[i][j] - matrix[j][i] != surface.pairing_entry(i, j) {
                    return Err(Error::InvalidSeifertForm);
                }
            }
        }
        Ok(SeifertForm { surface, matrix })
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn matrix(&self) -> &Vec<Vec<i64>> {
        &self.matrix
    }

    /// `x^T L y`.
    pub fn pairing(&self, x: &CurveClass, y: &CurveClass) -> Result<i64> {
        if x.surface() != self.surface || y.surface() != self.surface {
            return Err(Error::SurfaceMismatch);
        }
        let mut total = 0;
        for (i, &xi) in x.coeffs().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coeffs().iter().enumerate() {
                total += xi * self.matrix[i][j] * yj;
            }
        }
        Ok(total)
    }

    /// Page framing `L(c, c)` of a curve relative to the zero reference.
    pub fn framing(&self, c: &CurveClass) -> Result<i64> {
        self.pairing(c, c)
    }

    /// Transport the form through a handle attachment.  New rows and columns
    /// are zero except for the unit entries the intersection form requires.
    pub fn extend(&self, ext: &PageExtension) -> SeifertForm {
        let n = ext.to.h1_rank();
        let mut matrix = vec![vec![0; n]; n];
        for (oi, &ni) in ext.index_map.iter().enumerate() {
            for (oj, &nj) in ext.index_map.iter().enumerate() {
                matrix[ni][nj] = self.matrix[oi][oj];
            }
        }
        for &(r, c) in &ext.unit_pairs {
            matrix[r][c] = 1;
        }
        SeifertForm {
            surface: ext.to,
            matrix,
        }
    }

    /// Overwrite a single entry, re-checking the antisymmetrization law.
    pub fn with_entry(&self, row: usize, col: usize, value: i64) -> Result<SeifertForm> {
        let mut matrix = self.matrix.clone();
        matrix[row][col] = value;
        SeifertForm::new(self.surface, matrix)
    }
}

pub(crate) fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub(crate) fn identity_i64(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}
