//! Dense exact matrices over Z and Z/n, plus the normal-form and
//! linear-system machinery built on top of them.
//!
//! Everything is big-integer arithmetic; there is no floating point anywhere.
//! Entries are kept in canonical form (least non-negative residue over Z/n),
//! so derived `PartialEq` is semantic equality.

mod snf;
mod solve;
mod system;

pub use snf::{integer_smith, smith_normal_form, SmithDecomposition};
pub use solve::{kernel_gens, solve};
pub use system::{MatVarSystem, SystemSolution};

use crate::error::{Error, Result};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A dense matrix with entries in a fixed base ring, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Mat {
    /// Build from row-major data, reducing every entry into canonical form.
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {rows}x{cols} = {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        let data = data.iter().map(|x| ring.reduce(x)).collect();
        Ok(Mat { ring, rows, cols, data })
    }

    /// Convenience constructor from i64 rows; panics on ragged input.
    pub fn from_rows(ring: Ring, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        Mat::new(ring, r, c, data).expect("shape is consistent by construction")
    }

    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Mat {
        Mat {
            ring,
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Mat {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = self.ring.reduce(&v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|x| self.ring.reduce(&(-x))).collect();
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.ring.expect_same(&other.ring, "matrix add")?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} to {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.reduce(&(a + b)))
            .collect();
        Ok(Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.ring.expect_same(&other.ring, "matrix mul")?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        for x in &mut out.data {
            *x = self.ring.reduce(x);
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Mat {
        let data = self.data.iter().map(|x| self.ring.reduce(&(x * c))).collect();
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.ring.expect_same(&other.ring, "hstack")?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Mat::zero(self.ring.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.data[i * self.cols + j].clone();
            }
            for j in 0..other.cols {
                out.data[i * out.cols + self.cols + j] = other.data[i * other.cols + j].clone();
            }
        }
        Ok(out)
    }

    /// Vertical concatenation [self ; other].
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.ring.expect_same(&other.ring, "vstack")?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack {} cols with {} cols",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal sum of `blocks` (empty input gives a 0x0 matrix).
    pub fn block_diag(ring: Ring, blocks: &[&Mat]) -> Result<Mat> {
        let mut rows = 0;
        let mut cols = 0;
        for b in blocks {
            ring.expect_same(&b.ring, "block_diag")?;
            rows += b.rows;
            cols += b.cols;
        }
        let mut out = Mat::zero(ring, rows, cols);
        let mut ro = 0;
        let mut co = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(ro + i) * out.cols + (co + j)] = b.data[i * b.cols + j].clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        Ok(out)
    }

    /// Kronecker product self (x) other: block (i,j) is self[i,j] * other.
    pub fn kron(&self, other: &Mat) -> Result<Mat> {
        self.ring.expect_same(&other.ring, "kron")?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Mat::zero(self.ring.clone(), rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        let b = &other.data[p * other.cols + q];
                        if b.is_zero() {
                            continue;
                        }
                        let r = i * other.rows + p;
                        let c = j * other.cols + q;
                        out.data[r * cols + c] = self.ring.reduce(&(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Copy of the rectangular region rows [r0, r1) x cols [c0, c1).
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut out = Mat::zero(self.ring.clone(), r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.data[(i - r0) * out.cols + (j - c0)] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    /// Column j as a column vector.
    pub fn col(&self, j: usize) -> Mat {
        self.submatrix(0, self.rows, j, j + 1)
    }

    /// Flatten column-major into a single column vector (the `vec` operator).
    pub fn vec_col_major(&self) -> Mat {
        let mut out = Mat::zero(self.ring.clone(), self.rows * self.cols, 1);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    /// Inverse of `vec_col_major` with the given shape.
    pub fn from_vec_col_major(ring: Ring, rows: usize, cols: usize, v: &Mat) -> Result<Mat> {
        if v.cols != 1 || v.rows != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "unvec: need {}x1, got {}x{}",
                rows * cols,
                v.rows,
                v.cols
            )));
        }
        let mut out = Mat::zero(ring, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                out.data[i * cols + j] = v.data[j * rows + i].clone();
            }
        }
        Ok(out)
    }

    /// Determinant by Bareiss fraction-free elimination (square integer
    /// matrices only; over Z/n callers should lift first).
    pub fn det_integer(&self) -> Result<BigInt> {
        if self.ring != Ring::Z {
            return Err(Error::Invalid("det_integer requires ring Z".into()));
        }
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "det of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                // Find a row below with a nonzero pivot and swap.
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    debug_assert!((&num % &prev).is_zero());
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    pub(crate) fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub(crate) fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    pub(crate) fn row_negate(&mut self, i: usize) {
        for k in 0..self.cols {
            let idx = i * self.cols + k;
            let v = -&self.data[idx];
            self.data[idx] = self.ring.reduce(&v);
        }
    }

    pub(crate) fn col_negate(&mut self, j: usize) {
        for k in 0..self.rows {
            let idx = k * self.cols + j;
            let v = -&self.data[idx];
            self.data[idx] = self.ring.reduce(&v);
        }
    }

    /// row[dst] += c * row[src]
    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        debug_assert_ne!(dst, src);
        for k in 0..self.cols {
            let v = &self.data[dst * self.cols + k] + c * &self.data[src * self.cols + k];
            self.data[dst * self.cols + k] = self.ring.reduce(&v);
        }
    }

    /// col[dst] += c * col[src]
    pub(crate) fn col_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        debug_assert_ne!(dst, src);
        for k in 0..self.rows {
            let v = &self.data[k * self.cols + dst] + c * &self.data[k * self.cols + src];
            self.data[k * self.cols + dst] = self.ring.reduce(&v);
        }
    }

    /// Greatest absolute value among the entries (zero for empty matrices).
    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{} empty]", self.rows, self.cols);
        }
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::Z
    }

    #[test]
    fn mul_matches_hand_computation() {
        let a = Mat::from_rows(z(), &[vec![1, 2], vec![3, 4]]);
        let b = Mat::from_rows(z(), &[vec![5, 6], vec![7, 8]]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c, Mat::from_rows(z(), &[vec![19, 22], vec![43, 50]]));
    }

    #[test]
    fn mul_reduces_mod_n() {
        let r = Ring::zmod(4).unwrap();
        let a = Mat::from_rows(r.clone(), &[vec![2, 3]]);
        let b = Mat::from_rows(r, &[vec![2], vec![3]]);
        let c = a.mul(&b).unwrap();
        // 2*2 + 3*3 = 13 = 1 mod 4
        assert_eq!(c.at(0, 0), &BigInt::from(1));
    }

    #[test]
    fn mixed_ring_operations_are_rejected() {
        let a = Mat::from_rows(Ring::Z, &[vec![1]]);
        let b = Mat::from_rows(Ring::zmod(4).unwrap(), &[vec![1]]);
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
        assert!(a.hstack(&b).is_err());
    }

    #[test]
    fn kron_against_definition() {
        let a = Mat::from_rows(z(), &[vec![1, 2], vec![3, 4]]);
        let b = Mat::from_rows(z(), &[vec![0, 5], vec![6, 7]]);
        let k = a.kron(&b).unwrap();
        assert_eq!(k.rows(), 4);
        assert_eq!(k.cols(), 4);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(
                            k.at(i * 2 + p, j * 2 + q),
                            &(a.at(i, j) * b.at(p, q))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn vec_col_major_roundtrip_and_kron_identity() {
        // vec(L X R) = (R^T kron L) vec(X), column-major.
        let l = Mat::from_rows(z(), &[vec![1, 2], vec![0, 1]]);
        let x = Mat::from_rows(z(), &[vec![3, 1, 4], vec![1, 5, 9]]);
        let r = Mat::from_rows(z(), &[vec![2, 7], vec![1, 8], vec![2, 8]]);
        let lhs = l.mul(&x).unwrap().mul(&r).unwrap().vec_col_major();
        let rhs = r
            .transpose()
            .kron(&l)
            .unwrap()
            .mul(&x.vec_col_major())
            .unwrap();
        assert_eq!(lhs, rhs);
        let back = Mat::from_vec_col_major(z(), 2, 3, &x.vec_col_major()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn det_by_bareiss() {
        let a = Mat::from_rows(z(), &[vec![2, 0], vec![0, 3]]);
        assert_eq!(a.det_integer().unwrap(), BigInt::from(6));
        let b = Mat::from_rows(z(), &[vec![1, 2], vec![2, 4]]);
        assert_eq!(b.det_integer().unwrap(), BigInt::from(0));
        let c = Mat::from_rows(
            z(),
            &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]],
        );
        // Expansion by hand: -1*(27-30) + 2*(21-24) = 3 - 6 = -3.
        assert_eq!(c.det_integer().unwrap(), BigInt::from(-3));
    }

    #[test]
    fn block_diag_and_stacking() {
        let a = Mat::from_rows(z(), &[vec![1]]);
        let b = Mat::from_rows(z(), &[vec![2, 3]]);
        let d = Mat::block_diag(z(), &[&a, &b]).unwrap();
        assert_eq!(d, Mat::from_rows(z(), &[vec![1, 0, 0], vec![0, 2, 3]]));
        let h = a.hstack(&Mat::from_rows(z(), &[vec![9]])).unwrap();
        assert_eq!(h, Mat::from_rows(z(), &[vec![1, 9]]));
    }
}
