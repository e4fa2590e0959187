//! The Hom complex of two chain complexes.
//!
//! Degree k holds the families f = (f_i: X_i -> Y_{i+k}); the differential
//! is (d f)_j = d_Y f_j - (-1)^k f_{j-1} d_X. Cycles in degree 0 are the
//! chain maps, boundaries are the null-homotopic ones, and the homology in
//! negative degrees classifies degreewise-split extensions against shifts
//! of Y.
//!
//! Each degree is assembled as a direct sum of hom modules Hom(X_i, Y_{i+k})
//! ("slots"); the differential is a block matrix of induced maps, and the
//! complex constructor re-verifies d d = 0, which would catch any slip in
//! the sign convention.

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{solve, Mat};
use crate::module::{induced_hom, FpModule, HomGroup, ModuleHom};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct HomComplex {
    source: ChainComplex,
    target: ChainComplex,
    complex: ChainComplex,
    slots: BTreeMap<i64, Vec<(i64, HomGroup)>>,
}

impl HomComplex {
    pub fn compute(x: &ChainComplex, y: &ChainComplex) -> Result<HomComplex> {
        x.ring().expect_same(y.ring(), "hom complex")?;
        let ring = x.ring().clone();
        let (range, slots) = match (x.support(), y.support()) {
            (Some((xlo, xhi)), Some((ylo, yhi))) => {
                let lo = ylo - xhi;
                let hi = yhi - xlo;
                let mut slots: BTreeMap<i64, Vec<(i64, HomGroup)>> = BTreeMap::new();
                for k in lo..=hi {
                    let mut level = Vec::new();
                    for i in xlo..=xhi {
                        if x.module(i).num_gens() == 0 || y.module(i + k).num_gens() == 0 {
                            continue;
                        }
                        level.push((i, HomGroup::compute(&x.module(i), &y.module(i + k))?));
                    }
                    slots.insert(k, level);
                }
                ((lo, hi), slots)
            }
            _ => {
                let c = ChainComplex::zero(ring.clone());
                return Ok(HomComplex {
                    source: x.clone(),
                    target: y.clone(),
                    complex: c,
                    slots: BTreeMap::new(),
                });
            }
        };
        let mut modules: BTreeMap<i64, FpModule> = BTreeMap::new();
        for (&k, level) in &slots {
            let mut m = FpModule::zero_module(ring.clone());
            for (_, hg) in level {
                m = m.direct_sum(hg.module())?;
            }
            modules.insert(k, m);
        }
        let mut diffs = BTreeMap::new();
        for k in range.0 + 1..=range.1 {
            let src = &modules[&k];
            let tgt = &modules[&(k - 1)];
            let mut mat = Mat::zero(ring.clone(), tgt.num_gens(), src.num_gens());
            // -(-1)^k, the sign on the pre-composition term.
            let pre_sign = if k.rem_euclid(2) == 0 { -1 } else { 1 };
            let row_offset = |j: i64| -> Option<usize> {
                let mut off = 0;
                for (slot, hg) in &slots[&(k - 1)] {
                    if *slot == j {
                        return Some(off);
                    }
                    off += hg.module().num_gens();
                }
                None
            };
            let mut col = 0;
            for (i, hg_in) in &slots[&k] {
                // f_i |-> d_Y . f_i, landing in slot i one level down.
                if let Some(r0) = row_offset(*i) {
                    let hg_out = slots[&(k - 1)]
                        .iter()
                        .find(|(s, _)| s == i)
                        .map(|(_, h)| h)
                        .expect("offset implies slot");
                    let post = y.diff(i + k);
                    let pre = ModuleHom::identity(&x.module(*i));
                    let block = induced_hom(hg_in, hg_out, &pre, &post)?;
                    paste(&mut mat, r0, col, block.mat());
                }
                // f_i |-> -(-1)^k f_i . d_X, landing in slot i+1.
                if let Some(r0) = row_offset(*i + 1) {
                    let hg_out = slots[&(k - 1)]
                        .iter()
                        .find(|(s, _)| *s == *i + 1)
                        .map(|(_, h)| h)
                        .expect("offset implies slot");
                    let post = ModuleHom::identity(&y.module(i + k));
                    let pre = x.diff(*i + 1);
                    let block = induced_hom(hg_in, hg_out, &pre, &post)?;
                    paste(
                        &mut mat,
                        r0,
                        col,
                        &block.mat().scalar_mul(&pre_sign.into()),
                    );
                }
                col += hg_in.module().num_gens();
            }
            diffs.insert(k, ModuleHom::new(src.clone(), tgt.clone(), mat)?);
        }
        let complex = ChainComplex::from_parts(ring, modules, diffs)?;
        Ok(HomComplex {
            source: x.clone(),
            target: y.clone(),
            complex,
            slots,
        })
    }

    /// The assembled complex of hom modules.
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn homology(&self, k: i64) -> Result<FpModule> {
        self.complex.homology(k)
    }

    /// Decode an element of H_k (coordinates in the homology generators)
    /// into an actual family of maps f_i: X_i -> Y_{i+k}.
    pub fn decode_class(&self, k: i64, coords: &Mat) -> Result<Vec<(i64, ModuleHom)>> {
        let (h, reps) = self.complex.homology_with_reps(k)?;
        if coords.rows() != h.num_gens() || coords.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "homology coords must be {}x1",
                h.num_gens()
            )));
        }
        let ambient = reps.mul(coords)?;
        let level = match self.slots.get(&k) {
            Some(l) => l,
            None => return Ok(Vec::new()),
        };
        let mut out = Vec::new();
        let mut off = 0;
        for (i, hg) in level {
            let g = hg.module().num_gens();
            let part = ambient.submatrix(off, off + g, 0, 1);
            out.push((*i, hg.decode(&part)?));
            off += g;
        }
        Ok(out)
    }

    /// Coordinates in H_k of a cycle family, inverse to decode_class up to
    /// homologous representatives. The family must be a cycle; degrees the
    /// family omits are treated as zero maps.
    pub fn encode_class(&self, k: i64, family: &[(i64, ModuleHom)]) -> Result<Mat> {
        if !self.family_is_cycle(k, family)? {
            return Err(Error::CrossCheck(
                "family is not a cycle, it has no homology class".into(),
            ));
        }
        let (h, reps) = self.complex.homology_with_reps(k)?;
        let ring = self.complex.ring().clone();
        let hom_k = self.complex.module(k);
        let mut ambient = Mat::zero(ring.clone(), hom_k.num_gens(), 1);
        if let Some(level) = self.slots.get(&k) {
            let mut off = 0;
            for (i, hg) in level {
                if let Some((_, f)) = family.iter().find(|(j, _)| j == i) {
                    paste(&mut ambient, off, 0, &hg.encode(f)?);
                }
                off += hg.module().num_gens();
            }
        }
        // ambient = reps*c + boundaries + relations; the c block is the class.
        let dmat = self.complex.diff(k + 1).mat().clone();
        let aug = reps.hstack(&dmat)?.hstack(hom_k.rels())?;
        let sol = solve(&aug, &ambient)?.ok_or_else(|| {
            Error::CrossCheck("cycle failed to reduce against homology generators".into())
        })?;
        Ok(sol.submatrix(0, h.num_gens(), 0, 1))
    }

    /// Check that a family is a degree-k cycle: d_Y f_j = (-1)^k f_{j-1} d_X
    /// for every j.
    pub fn family_is_cycle(&self, k: i64, family: &[(i64, ModuleHom)]) -> Result<bool> {
        let x = &self.source;
        let y = &self.target;
        let comp = |j: i64| -> ModuleHom {
            family
                .iter()
                .find(|(i, _)| *i == j)
                .map(|(_, f)| f.clone())
                .unwrap_or_else(|| {
                    ModuleHom::zero(&x.module(j), &y.module(j + k)).expect("same ring")
                })
        };
        let degs: Vec<i64> = match x.support() {
            Some((lo, hi)) => (lo..=hi + 1).collect(),
            None => Vec::new(),
        };
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        for j in degs {
            let lhs = y.diff(j + k).compose(&comp(j))?;
            let rhs = comp(j - 1)
                .compose(&x.diff(j))?
                .mat()
                .scalar_mul(&sign.into());
            let gap = ModuleHom::new(x.module(j), y.module(j + k - 1), lhs.mat().sub(&rhs)?)?;
            if !gap.is_zero_hom()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn paste(dst: &mut Mat, r0: usize, c0: usize, block: &Mat) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            dst.set(r0 + i, c0 + j, block.at(i, j).clone());
        }
    }
}
