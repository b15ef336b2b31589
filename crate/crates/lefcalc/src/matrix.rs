//! Dense exact-integer matrices and the reduction algorithms the homology
//! engine is built on: Smith normal form with unimodular transforms, integer
//! kernels and solvers, fraction-free determinants, and exact signatures of
//! symmetric forms.
//!
//! Everything here works over arbitrary-precision integers and rationals; no
//! floating point is used anywhere.

use num::bigint::Sign as BigSign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// A dense matrix over `BigInt`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigInt>(rows: usize, cols: usize, mut f: F) -> IntMat {
        let mut m = IntMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.at(i, i).clone())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// row[target] += k * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(target, j) + k * self.at(source, j);
            self.set(target, j, v);
        }
    }

    /// col[target] += k * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, target) + k * self.at(i, source);
            self.set(i, target, v);
        }
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal satisfying the
/// divisibility chain `d_1 | d_2 | ...`; `rank` counts nonzero diagonal
/// entries.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub rank: usize,
}

/// Smith normal form over the integers.
///
/// Every reduction pass re-selects the smallest nonzero entry of the
/// trailing block as the pivot, which keeps quotients and intermediate
/// entries tame.
pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let limit = rows.min(cols);
    let mut t = 0;

    'pivot: while t < limit {
        loop {
            // move the smallest nonzero entry of the trailing block to (t, t)
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a.at(i, j).is_zero()
                        && pivot.is_none_or(|(pi, pj)| a.at(i, j).abs() < a.at(pi, pj).abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'pivot };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // one reduction pass against this pivot
            let mut clean = true;
            for i in (t + 1)..rows {
                if !a.at(i, t).is_zero() {
                    let q = a.at(i, t) / a.at(t, t);
                    a.add_row_multiple(i, t, &(-&q));
                    u.add_row_multiple(i, t, &(-q));
                    if !a.at(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            for j in (t + 1)..cols {
                if !a.at(t, j).is_zero() {
                    let q = a.at(t, j) / a.at(t, t);
                    a.add_col_multiple(j, t, &(-&q));
                    v.add_col_multiple(j, t, &(-q));
                    if !a.at(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }

            // enforce divisibility of the trailing block by the pivot
            let mut divisible = true;
            'search: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !(a.at(i, j) % a.at(t, t)).is_zero() {
                        a.add_row_multiple(t, i, &BigInt::one());
                        u.add_row_multiple(t, i, &BigInt::one());
                        divisible = false;
                        break 'search;
                    }
                }
            }
            if divisible {
                break;
            }
        }
        t += 1;
    }

    // normalize diagonal signs
    for i in 0..limit {
        if a.at(i, i).sign() == BigSign::Minus {
            a.negate_row(i);
            u.negate_row(i);
        }
    }

    let rank = (0..limit).filter(|&i| !a.at(i, i).is_zero()).count();
    SmithDecomposition { u, d: a, v, rank }
}

/// Fraction-free determinant (Bareiss).
pub fn determinant(m: &IntMat) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.at(k, k).clone();
    }
    sign * a.at(n - 1, n - 1).clone()
}

/// Basis of the integer lattice `{ x : m x = 0 }`, as columns.
pub fn integer_kernel(m: &IntMat) -> IntMat {
    let snf = smith_normal_form(m);
    let n = m.cols();
    let free = n - snf.rank;
    let mut basis = IntMat::zeros(n, free);
    for (out_col, j) in (snf.rank..n).enumerate() {
        for i in 0..n {
            basis.set(i, out_col, snf.v.at(i, j).clone());
        }
    }
    basis
}

/// One integer solution of `m x = b`, if any.
pub fn solve_integer(m: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len());
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        let d = if i < m.cols() {
            snf.d.at(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            if !(ubi % &d).is_zero() {
                return None;
            }
            if i < m.cols() {
                y[i] = ubi / &d;
            }
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Greedily shrink a vector by integer multiples of the given lattice
/// vectors (columns), in the squared euclidean norm.  Used to turn a raw
/// solver output into a small representative of its solution coset.
pub(crate) fn size_reduce(vector: &mut [BigInt], lattice_cols: &IntMat) {
    let n = vector.len();
    assert_eq!(lattice_cols.rows(), n);
    let dot = |x: &[BigInt], y: &[BigInt]| -> BigInt { x.iter().zip(y).map(|(a, b)| a * b).sum() };
    for _pass in 0..32 {
        let mut improved = false;
        for c in 0..lattice_cols.cols() {
            let col: Vec<BigInt> = lattice_cols.column(c);
            let norm = dot(&col, &col);
            if norm.is_zero() {
                continue;
            }
            let projection = dot(vector, &col);
            // nearest integer to projection / norm (norm is positive)
            let numerator: BigInt = &projection * 2 + &norm;
            let quotient = numerator.div_floor(&(&norm * 2));
            if quotient.is_zero() {
                continue;
            }
            let candidate: Vec<BigInt> = vector
                .iter()
                .zip(&col)
                .map(|(v, k)| v - &quotient * k)
                .collect();
            if dot(&candidate, &candidate) < dot(vector, vector) {
                vector.clone_from_slice(&candidate);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

/// One rational solution of `m x = b`, if any (free variables set to zero).
pub fn solve_rational(m: &IntMat, b: &[BigInt]) -> Option<Vec<BigRational>> {
    assert_eq!(m.rows(), b.len());
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| BigRational::from(m.at(i, j).clone()))
                .chain(std::iter::once(BigRational::from(b[i].clone())))
                .collect()
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..=cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=cols {
                    a[i][j] = &a[i][j] - &f * &a[r][j];
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency: no pivot in the constant column
    for row in a.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    Some(x)
}

/// Exact signature of a symmetric integer matrix, by congruence
/// diagonalization over the rationals.
pub fn symmetric_signature(m: &IntMat) -> i64 {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(m.at(i, j).clone()))
                .collect()
        })
        .collect();

    let mut signature = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            // try to pull in a nonzero diagonal entry first
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(i) = (k + 1..n).find(|&i| !a[k][i].is_zero()) {
                // symmetric row/column addition makes the diagonal nonzero
                for j in 0..n {
                    let v = &a[k][j] + &a[i][j];
                    a[k][j] = v;
                }
                for row in a.iter_mut() {
                    let v = &row[k] + &row[i];
                    row[k] = v;
                }
            } else {
                continue; // zero row: contributes nothing
            }
        }
        let pivot = a[k][k].clone();
        signature += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in 0..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
            for row in a.iter_mut() {
                let v = &row[i] - &f * &row[k];
                row[i] = v;
            }
        }
    }
    signature
}
