//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Homomorphisms
//! `ℤⁿ → ℤᵐ` are stored as `m × n` matrices acting on column vectors, so the
//! image of a matrix is its column space and `cokernel(A) = ℤᵐ / A·ℤⁿ`.

mod hnf;
mod quotient;
mod rational;
mod snf;

use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use hnf::{hnf, HermiteForm};
pub use quotient::{
    cokernel, integer_kernel, lattice_contains, saturated_span, solve_integer, AbelianQuotient,
};
pub use rational::{adjugate, determinant, solve_rational};
pub use snf::{snf, SmithForm};

pub type Int = BigInt;

/// A vector of arbitrary-precision integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<Int>);

impl IntVector {
    pub fn new(entries: Vec<Int>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        IntVector(vec![Int::zero(); len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = Int::one();
        v
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.to_i64()).collect()
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn entries_mut(&mut self) -> &mut [Int] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        debug_assert_eq!(self.len(), other.len());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        debug_assert_eq!(self.len(), other.len());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Int) -> IntVector {
        IntVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    /// `self * a + other * b`.
    pub fn combine(&self, a: &Int, other: &IntVector, b: &Int) -> IntVector {
        IntVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| x * a + y * b)
                .collect(),
        )
    }

    /// Gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |g, x| g.gcd(x))
    }

    pub fn max_abs(&self) -> Int {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl Deref for IntVector {
    type Target = [Int];
    fn deref(&self) -> &[Int] {
        &self.0
    }
}

impl Index<usize> for IntVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl From<Vec<Int>> for IntVector {
    fn from(v: Vec<Int>) -> Self {
        IntVector(v)
    }
}

impl From<&[i64]> for IntVector {
    fn from(v: &[i64]) -> Self {
        IntVector::from_i64s(v)
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl FromIterator<Int> for IntVector {
    fn from_iter<I: IntoIterator<Item = Int>>(iter: I) -> Self {
        IntVector(iter.into_iter().collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Divides a nonzero vector by the gcd of its entries. The sign is kept.
pub fn primitive(v: &IntVector) -> Result<IntVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(IntVector(v.0.iter().map(|x| x / &g).collect()))
}

/// A dense rectangular integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    ncols: usize,
    rows: Vec<IntVector>,
}

impl IntMatrix {
    /// Builds a matrix from its rows. Panics if the rows are ragged.
    pub fn from_rows(ncols: usize, rows: Vec<IntVector>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged matrix rows (expected {ncols} columns)"
        );
        IntMatrix { ncols, rows }
    }

    pub fn from_i64(ncols: usize, rows: &[&[i64]]) -> Self {
        Self::from_rows(ncols, rows.iter().map(|r| IntVector::from_i64s(r)).collect())
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[IntVector]) -> Self {
        let rows = (0..nrows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Self::from_rows(cols.len(), rows)
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            ncols,
            rows: vec![IntVector::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            ncols: n,
            rows: (0..n).map(|i| IntVector::unit(n, i)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<IntVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &IntVector {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> IntVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Int) {
        self.rows[i].0[j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(IntVector::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols).map(|j| self.column(j)).collect();
        IntMatrix {
            ncols: self.nrows(),
            rows,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows(), "matrix shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|j| {
                        r.0.iter()
                            .zip(&other.rows)
                            .map(|(a, orow)| a * &orow[j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        IntMatrix {
            ncols: other.ncols,
            rows,
        }
    }

    /// `A·v` for a column vector `v`.
    pub fn apply(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.ncols, v.len(), "matrix/vector shape mismatch");
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    /// `vᵀ·A` for a row vector `v`.
    pub fn apply_left(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.nrows(), v.len(), "matrix/vector shape mismatch");
        let mut out = IntVector::zeros(self.ncols);
        for (c, r) in v.0.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.0.iter_mut().zip(&r.0) {
                *o += c * x;
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        hnf(self).rank()
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.rows {
            r.0.swap(i, j);
        }
    }

    /// Row `i` ← `a·row i + b·row j`, row `j` ← `c·row i + d·row j`.
    pub(crate) fn mix_rows(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        let ri = self.rows[i].clone();
        let rj = self.rows[j].clone();
        self.rows[i] = ri.combine(a, &rj, b);
        self.rows[j] = ri.combine(c, &rj, d);
    }

    /// Row `i` ← row `i` + `q`·row `j`.
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let rj = self.rows[j].clone();
        for (x, y) in self.rows[i].0.iter_mut().zip(&rj.0) {
            *x += q * y;
        }
    }

    /// Column `i` ← column `i` + `q`·column `j`.
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in &mut self.rows {
            let y = r.0[j].clone();
            r.0[i] += q * y;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in self.rows[i].0.iter_mut() {
            *x = -&*x;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}
