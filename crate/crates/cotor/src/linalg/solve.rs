//! Exact linear solving: particular solutions of A x = b and generating
//! sets for kernels, over Z and over Z/n.
//!
//! Over Z/n both problems are translated to integer problems by adjoining
//! n*I as extra columns ("add any multiple of n to any row"), solving over
//! Z, and projecting back. This keeps a single battle-tested code path.

use super::snf::integer_smith;
use super::Mat;
use crate::error::{Error, Result};
use crate::ring::Ring;
use num_traits::Zero;

fn lift_to_z(a: &Mat) -> Mat {
    Mat::new(
        Ring::Z,
        a.rows(),
        a.cols(),
        (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| a.at(i, j).clone()))
            .collect(),
    )
    .expect("shape preserved")
}

fn reduce_to(ring: &Ring, a: &Mat) -> Mat {
    Mat::new(
        ring.clone(),
        a.rows(),
        a.cols(),
        (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| a.at(i, j).clone()))
            .collect(),
    )
    .expect("shape preserved")
}

fn integer_solve(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    let d = integer_smith(a)?;
    let c = d.u.mul(b)?;
    let diag = d.diagonal();
    let mut y = Mat::zero(Ring::Z, a.cols(), b.cols());
    for jb in 0..b.cols() {
        for i in 0..a.rows() {
            let ci = c.at(i, jb);
            let pivot = diag.get(i).filter(|p| !p.is_zero());
            match pivot {
                Some(p) => {
                    if !(ci % p).is_zero() {
                        return Ok(None);
                    }
                    if i < a.cols() {
                        y.set(i, jb, ci / p);
                    }
                }
                None => {
                    if !ci.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
    }
    Ok(Some(d.v.mul(&y)?))
}

fn integer_kernel(a: &Mat) -> Result<Mat> {
    let d = integer_smith(a)?;
    let rank = d.rank();
    Ok(d.v.submatrix(0, a.cols(), rank, a.cols()))
}

/// A particular solution X of A * X = B (each column independently), or
/// None when some column has no solution over the ring.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    a.ring().expect_same(b.ring(), "solve")?;
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {}x{} vs rhs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    match a.ring() {
        Ring::Z => integer_solve(a, b),
        Ring::Zmod(n) => {
            let al = lift_to_z(a);
            let bl = lift_to_z(b);
            let n_block = Mat::identity(Ring::Z, a.rows())
                .scalar_mul(&n.clone());
            let aug = al.hstack(&n_block)?;
            match integer_solve(&aug, &bl)? {
                None => Ok(None),
                Some(x_full) => {
                    let x = x_full.submatrix(0, a.cols(), 0, b.cols());
                    Ok(Some(reduce_to(a.ring(), &x)))
                }
            }
        }
    }
}

/// Columns generating { x : A x = 0 } over the matrix's ring. The set spans
/// the kernel submodule; it is not pruned of redundant generators.
pub fn kernel_gens(a: &Mat) -> Result<Mat> {
    match a.ring() {
        Ring::Z => integer_kernel(a),
        Ring::Zmod(n) => {
            let al = lift_to_z(a);
            let n_block = Mat::identity(Ring::Z, a.rows()).scalar_mul(&n.clone());
            let aug = al.hstack(&n_block)?;
            let k = integer_kernel(&aug)?;
            let x_part = k.submatrix(0, a.cols(), 0, k.cols());
            Ok(reduce_to(a.ring(), &x_part))
        }
    }
}
