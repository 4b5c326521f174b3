//! Exact rational linear algebra.
//!
//! Everything here works over [`Scalar`] (arbitrary precision rationals), so
//! ranks, kernels and solutions are exact. The dense [`Matrix`] routines are
//! the reference API; [`sparse`] provides an incremental echelon builder for
//! the large, very sparse constraint systems produced by cochain spaces. Both
//! produce the same reduced row-echelon form, which is unique for a given row
//! space, so results agree bit for bit.

pub mod sparse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use sparse::{Echelon, SparseRref, SparseVec};

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Column vector of scalars.
pub type Vector = Vec<Scalar>;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// `numer / denom` in lowest terms. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p`, `-p`, `p/q` (optionally signed). Returns `None` on malformed
/// input or a zero denominator.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['+', '-']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let num: BigInt = num.trim_start_matches('+').parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Scalar::new(num, den))
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Scalar::zero(); len]
}

/// Standard basis vector `e_index` of length `len`.
pub fn unit_vector(len: usize, index: usize) -> Vector {
    let mut v = zero_vector(len);
    v[index] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `acc += factor * v`, skipping zero entries.
pub fn axpy(acc: &mut [Scalar], factor: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if factor.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += factor * x;
        }
    }
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::contract(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from equal-length rows. An empty row list gives a
    /// `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::contract("ragged rows in matrix literal"));
        }
        let n = rows.len();
        Self::from_entries(n, cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix literal")
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::contract("column length does not match row count"));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = zero_vector(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.entries[r * self.cols + c];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn pow(&self, exp: usize) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::contract("hstack row mismatch"));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Exact inverse, or `None` when singular or non-square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n)).ok()?;
        let r = rref(&aug);
        if r.pivot_cols.len() < n || r.pivot_cols[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: add_vectors(&self.entries, &rhs.entries),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: sub_vectors(&self.entries, &rhs.entries),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form by Gauss-Jordan elimination.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if found != pivot_row {
            for c in 0..cols {
                a.entries.swap(found * cols + c, pivot_row * cols + c);
            }
        }
        let inv = a.get(pivot_row, col).recip();
        for c in col..cols {
            let idx = pivot_row * cols + c;
            if !a.entries[idx].is_zero() {
                a.entries[idx] *= &inv;
            }
        }
        let pivot: Vec<Scalar> = a.row(pivot_row).to_vec();
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for (c, pc) in pivot.iter().enumerate().skip(col) {
                if !pc.is_zero() {
                    let idx = r * cols + c;
                    a.entries[idx] -= &factor * pc;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    let rank = pivot_cols.len();
    Rref {
        reduced: a,
        pivot_cols,
        rank,
    }
}

/// Canonical kernel basis: one column per free variable (ascending), with
/// that variable set to 1 and the other free variables set to 0.
pub fn nullspace_basis(m: &Matrix) -> Matrix {
    let r = rref(m);
    let free: Vec<usize> = (0..m.cols)
        .filter(|c| r.pivot_cols.binary_search(c).is_err())
        .collect();
    let mut basis = Matrix::zeros(m.cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        basis.set(f, j, Scalar::one());
        for (row, &p) in r.pivot_cols.iter().enumerate() {
            let v = r.reduced.get(row, f);
            if !v.is_zero() {
                basis.set(p, j, -v);
            }
        }
    }
    basis
}

/// Solves `a x = b`. Returns the particular solution with every free
/// variable set to zero, or `None` when the system is inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vector>> {
    if a.rows != b.len() {
        return Err(Error::contract(format!(
            "solve_linear: matrix has {} rows but right-hand side has length {}",
            a.rows,
            b.len()
        )));
    }
    let aug = a.hstack(&Matrix::from_columns(a.rows, &[b.to_vec()])?)?;
    let r = rref(&aug);
    if r.pivot_cols.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = zero_vector(a.cols);
    for (row, &p) in r.pivot_cols.iter().enumerate() {
        x[p] = r.reduced.get(row, a.cols).clone();
    }
    Ok(Some(x))
}

/// Formats a scalar as `p` or `p/q`.
pub fn fmt_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// `|x|` as a scalar; mostly useful in tests.
pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn rref_identity_is_fixed() {
        let r = rref(&Matrix::identity(3));
        assert_eq!(r.reduced, Matrix::identity(3));
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = Matrix::zeros(2, 4);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert!(r.pivot_cols.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        let r = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.reduced, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert_eq!(nullspace_basis(&Matrix::identity(4)).cols(), 0);
    }

    #[test]
    fn nullspace_of_zero_spans_everything() {
        let b = nullspace_basis(&Matrix::zeros(2, 3));
        assert_eq!(b, Matrix::identity(3));
    }

    #[test]
    fn nullspace_single_row() {
        let a = m(&[&[1, 1, 0]]);
        let b = nullspace_basis(&a);
        assert_eq!(b.cols(), 2);
        assert!((&a * &b).is_zero());
        // free variables 1 and 2: (-1, 1, 0) and (0, 0, 1)
        assert_eq!(b, m(&[&[-1, 0], &[1, 0], &[0, 1]]));
    }

    #[test]
    fn solve_identity() {
        let b = vec![int(3), ratio(-1, 2), int(0)];
        assert_eq!(
            solve_linear(&Matrix::identity(3), &b).unwrap(),
            Some(b.clone())
        );
    }

    #[test]
    fn solve_inconsistent() {
        let x = solve_linear(&Matrix::zeros(2, 2), &[int(1), int(0)]).unwrap();
        assert_eq!(x, None);
    }

    #[test]
    fn solve_diagonal() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let x = solve_linear(&a, &[int(1), int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![ratio(1, 2), ratio(1, 3)]);
        assert_eq!(a.mul_vec(&x), vec![int(1), int(1)]);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let err = solve_linear(&Matrix::identity(2), &[int(1)]).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn solve_free_variables_are_zero() {
        let a = m(&[&[1, 1, 0]]);
        let x = solve_linear(&a, &[int(5)]).unwrap().unwrap();
        assert_eq!(x, vec![int(5), int(0), int(0)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn parse_scalars() {
        assert_eq!(parse_scalar("3"), Some(int(3)));
        assert_eq!(parse_scalar("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_scalar(" +1/2 "), Some(ratio(1, 2)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("1/-2"), None);
        assert_eq!(parse_scalar("x"), None);
        assert_eq!(parse_scalar(""), None);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Matrix::from_entries(r, c, v.into_iter().map(int).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn nullspace_columns_are_annihilated(a in small_matrix()) {
            let b = nullspace_basis(&a);
            prop_assert!((&a * &b).is_zero());
            prop_assert_eq!(a.rank() + b.cols(), a.cols());
        }

        #[test]
        fn rref_is_idempotent(a in small_matrix()) {
            let r = rref(&a);
            prop_assert_eq!(rref(&r.reduced).reduced, r.reduced.clone());
            prop_assert_eq!(r.rank, r.pivot_cols.len());
        }

        #[test]
        fn solve_is_sound(a in small_matrix(), seed in prop::collection::vec(-3i64..4, 5)) {
            let b: Vector = (0..a.rows()).map(|i| int(seed[i])).collect();
            match solve_linear(&a, &b).unwrap() {
                Some(x) => prop_assert_eq!(a.mul_vec(&x), b),
                None => {
                    let aug = a.hstack(&Matrix::from_columns(a.rows(), &[b]).unwrap()).unwrap();
                    prop_assert!(aug.rank() > a.rank());
                }
            }
        }

        #[test]
        fn sparse_rref_matches_dense(a in small_matrix()) {
            let mut e = Echelon::new(a.cols());
            for r in 0..a.rows() {
                e.insert(SparseVec::from_dense(a.row(r)));
            }
            let s = e.finish();
            let d = rref(&a);
            prop_assert_eq!(s.pivots(), d.pivot_cols.clone());
            for (i, row) in s.rows().iter().enumerate() {
                prop_assert_eq!(row.to_dense(a.cols()), d.reduced.row(i).to_vec());
            }
            let dense_null = nullspace_basis(&a);
            let sparse_null = s.nullspace();
            prop_assert_eq!(sparse_null.len(), dense_null.cols());
            for (j, v) in sparse_null.iter().enumerate() {
                prop_assert_eq!(v.to_dense(a.cols()), dense_null.column(j));
            }
        }
    }
}
