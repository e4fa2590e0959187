//! Smith normal form with full transform tracking.
//!
//! `integer_smith` reduces an integer matrix A to S = U A V with U, V
//! unimodular, S diagonal with non-negative entries in a divisibility chain
//! d1 | d2 | ... All four transforms (U, U^-1, V, V^-1) are maintained by
//! applying each elementary operation (and its inverse on the other side)
//! as it happens, so no matrix ever needs to be inverted after the fact.

use super::Mat;
use crate::error::{Error, Result};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// The result of a Smith reduction: `u * original * v == s`, with
/// `u * u_inv == I` and `v * v_inv == I`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub s: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

impl SmithDecomposition {
    /// Full diagonal of S, length min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.at(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Quotient q minimizing |a - q*b| (b != 0); on a tie the smaller quotient
/// wins, so remainders satisfy |r| <= |b|/2.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(!b.is_zero());
    let babs = b.abs();
    let r = a.mod_floor(&babs);
    let q0: BigInt = (a - &r) / &babs;
    let q_abs = if &r * 2 > babs { q0 + 1 } else { q0 };
    if b.is_negative() {
        -q_abs
    } else {
        q_abs
    }
}

/// Mutable state of a reduction in progress. Each elementary operation is
/// mirrored onto the transforms so that u * original * v == a stays true:
/// a row operation E gives u <- E u (same op) and u_inv <- u_inv E^-1
/// (the inverse op, acting on columns); dually for column operations.
struct Worker {
    a: Mat,
    u: Mat,
    u_inv: Mat,
    v: Mat,
    v_inv: Mat,
}

impl Worker {
    fn new(a: Mat) -> Worker {
        let (r, c) = (a.rows(), a.cols());
        Worker {
            a,
            u: Mat::identity(Ring::Z, r),
            u_inv: Mat::identity(Ring::Z, r),
            v: Mat::identity(Ring::Z, c),
            v_inv: Mat::identity(Ring::Z, c),
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.row_swap(i, j);
        self.u.row_swap(i, j);
        self.u_inv.col_swap(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.col_swap(i, j);
        self.v.col_swap(i, j);
        self.v_inv.row_swap(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.row_negate(i);
        self.u.row_negate(i);
        self.u_inv.col_negate(i);
    }

    /// a.row[dst] += c * a.row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.row_axpy(dst, src, c);
        self.u.row_axpy(dst, src, c);
        self.u_inv.col_axpy(src, dst, &-c);
    }

    /// a.col[dst] += c * a.col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.col_axpy(dst, src, c);
        self.v.col_axpy(dst, src, c);
        self.v_inv.row_axpy(src, dst, &-c);
    }

    /// Smallest nonzero |entry| in a[t.., t..], lowest row then lowest column
    /// breaking ties. None when the block is zero.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.at(i, j);
                if x.is_zero() {
                    continue;
                }
                let m = x.abs();
                match &best {
                    Some((bm, _, _)) if *bm <= m => {}
                    _ => best = Some((m, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn reduce(&mut self) {
        let steps = self.a.rows().min(self.a.cols());
        for t in 0..steps {
            'corner: loop {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    return; // remaining block is zero; diagonal stays zero
                };
                self.row_swap(t, pi);
                self.col_swap(t, pj);
                // Clear column t below the pivot. A nonzero remainder means
                // a strictly smaller entry now exists, so re-select.
                for i in t + 1..self.a.rows() {
                    if self.a.at(i, t).is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(self.a.at(i, t), self.a.at(t, t));
                    self.row_axpy(i, t, &-q);
                    if !self.a.at(i, t).is_zero() {
                        continue 'corner;
                    }
                }
                // Clear row t right of the pivot, same policy.
                for j in t + 1..self.a.cols() {
                    if self.a.at(t, j).is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(self.a.at(t, j), self.a.at(t, t));
                    self.col_axpy(j, t, &-q);
                    if !self.a.at(t, j).is_zero() {
                        continue 'corner;
                    }
                }
                // Pivot row and column are clear. Enforce divisibility: fold
                // any offending row into row t and reduce again, which must
                // shrink the minimum (the pivot does not divide that entry).
                for i in t + 1..self.a.rows() {
                    for j in t + 1..self.a.cols() {
                        if !(self.a.at(i, j) % self.a.at(t, t)).is_zero() {
                            self.row_axpy(t, i, &BigInt::from(1));
                            continue 'corner;
                        }
                    }
                }
                break;
            }
        }
    }

    fn normalize_signs(&mut self) {
        for t in 0..self.a.rows().min(self.a.cols()) {
            if self.a.at(t, t).is_negative() {
                self.row_negate(t);
            }
        }
    }
}

/// Smith normal form of an integer matrix.
pub fn integer_smith(a: &Mat) -> Result<SmithDecomposition> {
    if *a.ring() != Ring::Z {
        return Err(Error::Invalid(format!(
            "integer_smith requires ring Z, got {}",
            a.ring()
        )));
    }
    let mut w = Worker::new(a.clone());
    w.reduce();
    w.normalize_signs();
    let dec = SmithDecomposition {
        s: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    };
    debug_assert_eq!(
        dec.u.mul(a).unwrap().mul(&dec.v).unwrap(),
        dec.s,
        "U*A*V != S"
    );
    debug_assert_eq!(
        dec.u.mul(&dec.u_inv).unwrap(),
        Mat::identity(Ring::Z, a.rows()),
        "U*Uinv != I"
    );
    debug_assert_eq!(
        dec.v.mul(&dec.v_inv).unwrap(),
        Mat::identity(Ring::Z, a.cols()),
        "V*Vinv != I"
    );
    Ok(dec)
}

/// Smith normal form over the matrix's own ring.
///
/// Over Z this is `integer_smith`. Over Z/n the canonical integer lift is
/// reduced over Z and everything is mapped back mod n, so U and V are
/// reductions of unimodular integer matrices (hence invertible mod n) and
/// U A V = S still holds. Diagonal entries are canonical residues; the
/// divisibility chain holds as ideals of Z/n (each (d_{i+1}) is contained
/// in (d_i)), which is the meaningful statement once units differ from Z.
pub fn smith_normal_form(a: &Mat) -> Result<SmithDecomposition> {
    match a.ring() {
        Ring::Z => integer_smith(a),
        Ring::Zmod(_) => {
            let lift = Mat::new(
                Ring::Z,
                a.rows(),
                a.cols(),
                (0..a.rows())
                    .flat_map(|i| (0..a.cols()).map(move |j| a.at(i, j).clone()))
                    .collect(),
            )?;
            let d = integer_smith(&lift)?;
            let red = |m: &Mat| {
                Mat::new(
                    a.ring().clone(),
                    m.rows(),
                    m.cols(),
                    (0..m.rows())
                        .flat_map(|i| (0..m.cols()).map(move |j| m.at(i, j).clone()))
                        .collect(),
                )
                .expect("shape preserved")
            };
            Ok(SmithDecomposition {
                s: red(&d.s),
                u: red(&d.u),
                u_inv: red(&d.u_inv),
                v: red(&d.v),
                v_inv: red(&d.v_inv),
            })
        }
    }
}
