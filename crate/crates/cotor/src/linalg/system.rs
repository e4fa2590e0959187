//! Linear systems whose unknowns are matrices.
//!
//! A `MatVarSystem` collects equations of the shape
//!
//! ```text
//! sum over terms  L_t * X_{v_t} * R_t  =  C   (mod col-span of each W)
//! ```
//!
//! where the X_v are unknown matrices of declared shapes and each W is an
//! optional slack matrix whose column span is quotiented out (this is how
//! "equality in a presented module" becomes a linear condition). The system
//! is vectorized column-major via vec(L X R) = (R^T kron L) vec(X) and
//! handed to the exact solver. Slack unknowns are equation-local.
//!
//! This one abstraction carries every morphism computation in the crate:
//! module homs, chain maps, null-homotopies, lifts, and splittings differ
//! only in which equations they add.

use super::solve::{kernel_gens, solve};
use super::Mat;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Handle for an unknown matrix; returned by [`MatVarSystem::add_var`].
pub type VarId = usize;

struct Equation {
    terms: Vec<(VarId, Mat, Mat)>,
    slacks: Vec<Mat>,
    rhs: Mat,
}

pub struct MatVarSystem {
    ring: Ring,
    vars: Vec<(usize, usize)>,
    equations: Vec<Equation>,
}

/// One assignment of all declared unknowns, in declaration order.
pub type SystemSolution = Vec<Mat>;

impl MatVarSystem {
    pub fn new(ring: Ring) -> MatVarSystem {
        MatVarSystem {
            ring,
            vars: Vec::new(),
            equations: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Declare an unknown matrix of the given shape.
    pub fn add_var(&mut self, rows: usize, cols: usize) -> VarId {
        self.vars.push((rows, cols));
        self.vars.len() - 1
    }

    /// Add one equation. Each term is (var, L, R) contributing L * X_var * R;
    /// each slack W relaxes the equation to congruence modulo the column
    /// span of W.
    pub fn add_equation(
        &mut self,
        terms: Vec<(VarId, Mat, Mat)>,
        slacks: Vec<Mat>,
        rhs: Mat,
    ) -> Result<()> {
        self.ring.expect_same(rhs.ring(), "system rhs")?;
        for (v, l, r) in &terms {
            self.ring.expect_same(l.ring(), "system term")?;
            self.ring.expect_same(r.ring(), "system term")?;
            let (vr, vc) = *self
                .vars
                .get(*v)
                .ok_or_else(|| Error::Invalid(format!("unknown var {v}")))?;
            if l.cols() != vr || r.rows() != vc || l.rows() != rhs.rows() || r.cols() != rhs.cols()
            {
                return Err(Error::DimensionMismatch(format!(
                    "term for var {v}: L {}x{}, X {vr}x{vc}, R {}x{}, rhs {}x{}",
                    l.rows(),
                    l.cols(),
                    r.rows(),
                    r.cols(),
                    rhs.rows(),
                    rhs.cols()
                )));
            }
        }
        for w in &slacks {
            self.ring.expect_same(w.ring(), "system slack")?;
            if w.rows() != rhs.rows() {
                return Err(Error::DimensionMismatch(format!(
                    "slack {}x{} vs rhs {}x{}",
                    w.rows(),
                    w.cols(),
                    rhs.rows(),
                    rhs.cols()
                )));
            }
        }
        self.equations.push(Equation { terms, slacks, rhs });
        Ok(())
    }

    fn var_sizes(&self) -> Vec<usize> {
        self.vars.iter().map(|&(r, c)| r * c).collect()
    }

    /// Assemble the vectorized coefficient matrix and right-hand side.
    /// Variable columns come first (declaration order), then the slack
    /// columns of each equation in order.
    fn assemble(&self) -> Result<(Mat, Mat)> {
        let sizes = self.var_sizes();
        let var_cols: usize = sizes.iter().sum();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for s in &sizes {
            offsets.push(acc);
            acc += s;
        }
        let slack_cols: usize = self
            .equations
            .iter()
            .map(|e| {
                e.slacks
                    .iter()
                    .map(|w| w.cols() * e.rhs.cols())
                    .sum::<usize>()
            })
            .sum();
        let total_rows: usize = self
            .equations
            .iter()
            .map(|e| e.rhs.rows() * e.rhs.cols())
            .sum();
        let mut m = Mat::zero(self.ring.clone(), total_rows, var_cols + slack_cols);
        let mut b = Mat::zero(self.ring.clone(), total_rows, 1);

        let add_block = |m: &mut Mat, ro: usize, co: usize, block: &Mat| {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let v = m.at(ro + i, co + j) + block.at(i, j);
                    m.set(ro + i, co + j, v);
                }
            }
        };

        let mut ro = 0;
        let mut slack_co = var_cols;
        for eq in &self.equations {
            let q = eq.rhs.cols();
            for (v, l, r) in &eq.terms {
                let block = r.transpose().kron(l)?;
                add_block(&mut m, ro, offsets[*v], &block);
            }
            for w in &eq.slacks {
                let block = Mat::identity(self.ring.clone(), q).kron(w)?;
                add_block(&mut m, ro, slack_co, &block);
                slack_co += w.cols() * q;
            }
            let c = eq.rhs.vec_col_major();
            for i in 0..c.rows() {
                b.set(ro + i, 0, c.at(i, 0).clone());
            }
            ro += eq.rhs.rows() * q;
        }
        Ok((m, b))
    }

    fn split(&self, x: &Mat, col: usize) -> Result<SystemSolution> {
        let mut out = Vec::with_capacity(self.vars.len());
        let mut off = 0;
        for &(r, c) in &self.vars {
            let piece = x.submatrix(off, off + r * c, col, col + 1);
            out.push(Mat::from_vec_col_major(self.ring.clone(), r, c, &piece)?);
            off += r * c;
        }
        Ok(out)
    }

    /// One solution of the full system, or None when it is inconsistent.
    /// Slack values are discarded.
    pub fn solve_particular(&self) -> Result<Option<SystemSolution>> {
        let (m, b) = self.assemble()?;
        match solve(&m, &b)? {
            None => Ok(None),
            Some(x) => Ok(Some(self.split(&x, 0)?)),
        }
    }

    /// Generators of the solution set of the homogeneous system (rhs and
    /// slack congruences taken with C = 0), projected to the declared
    /// variables. Every homogeneous solution is a combination of these.
    pub fn homogeneous_kernel(&self) -> Result<Vec<SystemSolution>> {
        let (m, _) = self.assemble()?;
        let k = kernel_gens(&m)?;
        (0..k.cols()).map(|j| self.split(&k, j)).collect()
    }
}
