//! Extension groups of chain complexes.
//!
//! Two flavours are computed, with classification maps in both directions:
//!
//! * [`Ext1Ch`] presents all extensions 0 -> Y -> E -> X -> 0 in the category
//!   of complexes. It is computed from a cover of X by finite sums of disks
//!   on free modules: such sums are projective objects (mapping out of a disk
//!   only constrains one degree, and free modules lift through surjections),
//!   so Ext^1(X, Y) is the cokernel of restriction from maps-on-the-cover to
//!   maps-on-its-kernel.
//! * [`Ext1Dw`] presents the degreewise-split extensions. These are governed
//!   by a twisting family sigma_n: X_n -> Y_{n-1} satisfying the degree -1
//!   cycle condition in the hom complex, so the group is H_{-1} Hom(X, Y).
//!
//! [`perp_witness`] answers "is Ext^1(G, Y) zero for every G in this family"
//! and reports the first generator that obstructs.

pub mod verify;

use crate::complex::{
    free_disk_precover, kernel_complex, lift_through, pushout_complexes, ChShortExactSeq,
    ChainComplex, ChainMap, ChainMapModule, HomComplex,
};
use crate::error::{Error, Result};
use crate::linalg::{solve, Mat, MatVarSystem};
use crate::module::{FpModule, ModuleHom};
use std::collections::BTreeMap;

/// Ext^1 in the category of complexes, with decode/encode between group
/// elements and short exact sequences of complexes.
#[derive(Debug, Clone)]
pub struct Ext1Ch {
    source: ChainComplex,
    coeff: ChainComplex,
    module: FpModule,
    cover: ChainMap,
    syz_incl: ChainMap,
    hom_ky: ChainMapModule,
}

impl Ext1Ch {
    pub fn compute(source: &ChainComplex, coeff: &ChainComplex) -> Result<Ext1Ch> {
        source.ring().expect_same(coeff.ring(), "ext of complexes")?;
        let ring = source.ring().clone();
        let (_, cover) = free_disk_precover(source)?;
        let (_, syz_incl) = kernel_complex(&cover)?;
        let hom_py = ChainMapModule::compute(cover.source(), coeff)?;
        let hom_ky = ChainMapModule::compute(syz_incl.source(), coeff)?;

        // Ext^1 = Hom(K, Y) / restrictions of Hom(P, Y): extend the hom
        // module's relations by the encoded restriction of each generator.
        let gens = hom_ky.module().num_gens();
        let mut rels = hom_ky.module().rels().clone();
        for i in 0..hom_py.module().num_gens() {
            let mut e = Mat::zero(ring.clone(), hom_py.module().num_gens(), 1);
            e.set(i, 0, 1.into());
            let restricted = hom_py.decode(&e)?.compose(&syz_incl)?;
            rels = rels.hstack(&hom_ky.encode(&restricted)?)?;
        }
        let module = FpModule::new(ring, gens, rels)?;
        Ok(Ext1Ch {
            source: source.clone(),
            coeff: coeff.clone(),
            module,
            cover,
            syz_incl,
            hom_ky,
        })
    }

    /// The underlying abelian group of classes.
    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn is_zero_group(&self) -> bool {
        self.module.invariants().is_zero()
    }

    /// Realize a class as 0 -> Y -> E -> X -> 0 by pushing the cover's
    /// kernel out along the class's representing map.
    pub fn decode(&self, class: &Mat) -> Result<ChShortExactSeq> {
        let f = self.hom_ky.decode(class)?;
        let (e, _, j_y) = pushout_complexes(&self.syz_incl, &f)?;
        let ring = e.ring().clone();
        let mut proj_mats = BTreeMap::new();
        for &n in &e.degrees() {
            let pi_n = self.cover.component(n);
            let gy = self.coeff.module(n).num_gens();
            let zero = Mat::zero(ring.clone(), pi_n.mat().rows(), gy);
            proj_mats.insert(n, pi_n.mat().hstack(&zero)?);
        }
        let proj = ChainMap::from_mats(e.clone(), self.source.clone(), proj_mats)?;
        ChShortExactSeq::new(j_y, proj)
    }

    /// The class of a short exact sequence whose ends use the same
    /// presentations as this group's source and coefficients.
    pub fn encode(&self, ses: &ChShortExactSeq) -> Result<Mat> {
        if !ses.sub().same_presentation(&self.coeff) || !ses.quot().same_presentation(&self.source)
        {
            return Err(Error::Invalid(
                "sequence ends do not match this ext group's presentations".into(),
            ));
        }
        let lambda = lift_through(&ses.proj, &self.cover)?
            .ok_or_else(|| Error::CrossCheck("disk cover failed to lift".into()))?;
        // The lift restricted to the kernel lands in the subcomplex; factor
        // through the inclusion degree by degree.
        let pushed = lambda.compose(&self.syz_incl)?;
        let k = self.syz_incl.source();
        let mut mu_mats = BTreeMap::new();
        for &n in &k.degrees() {
            let em = ses.middle().module(n);
            let aug = ses.incl.component(n).mat().hstack(em.rels())?;
            let sol = solve(&aug, pushed.component(n).mat())?
                .ok_or_else(|| Error::CrossCheck("kernel image missed the subcomplex".into()))?;
            mu_mats.insert(
                n,
                sol.submatrix(0, self.coeff.module(n).num_gens(), 0, sol.cols()),
            );
        }
        let mu = ChainMap::from_mats(k.clone(), self.coeff.clone(), mu_mats)?;
        self.hom_ky.encode(&mu)
    }

    pub fn classes_equal(&self, a: &Mat, b: &Mat) -> Result<bool> {
        self.module.elements_equal(a, b)
    }
}

/// Convenience wrapper: the group Ext^1(X, Y) in complexes.
pub fn ext1_ch(x: &ChainComplex, y: &ChainComplex) -> Result<Ext1Ch> {
    Ext1Ch::compute(x, y)
}

/// Degreewise-split extensions of X by Y, presented as H_{-1} of the hom
/// complex. Classes decode to honest short exact sequences that split in
/// every degree, and any such sequence encodes back.
#[derive(Debug, Clone)]
pub struct Ext1Dw {
    source: ChainComplex,
    coeff: ChainComplex,
    hc: HomComplex,
    module: FpModule,
}

impl Ext1Dw {
    pub fn compute(source: &ChainComplex, coeff: &ChainComplex) -> Result<Ext1Dw> {
        let hc = HomComplex::compute(source, coeff)?;
        let module = hc.homology(-1)?;
        Ok(Ext1Dw {
            source: source.clone(),
            coeff: coeff.clone(),
            hc,
            module,
        })
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    /// Build the extension with middle Y_n + X_n and differential twisted by
    /// the class's representing family.
    pub fn decode(&self, class: &Mat) -> Result<ChShortExactSeq> {
        let fam = self.hc.decode_class(-1, class)?;
        let ring = self.source.ring().clone();
        let sigma = |n: i64| -> Option<&ModuleHom> {
            fam.iter().find(|(j, _)| *j == n).map(|(_, f)| f)
        };
        let mut degs: Vec<i64> = Vec::new();
        let supports = [self.source.support(), self.coeff.support()];
        let lo = supports.iter().flatten().map(|s| s.0).min();
        let hi = supports.iter().flatten().map(|s| s.1).max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            degs = (lo..=hi).collect();
        }
        let mut modules = BTreeMap::new();
        for &n in &degs {
            let ym = self.coeff.module(n);
            let xm = self.source.module(n);
            modules.insert(n, ym.direct_sum(&xm)?);
        }
        let mut diffs = BTreeMap::new();
        for &n in &degs {
            if !modules.contains_key(&(n - 1)) {
                continue;
            }
            let dy = self.coeff.diff(n);
            let dx = self.source.diff(n);
            let twist = match sigma(n) {
                Some(s) => s.mat().clone(),
                None => Mat::zero(ring.clone(), dy.mat().rows(), dx.mat().cols()),
            };
            let top = dy.mat().hstack(&twist)?;
            let bottom = Mat::zero(ring.clone(), dx.mat().rows(), dy.mat().cols())
                .hstack(dx.mat())?;
            diffs.insert(
                n,
                ModuleHom::new(
                    modules[&n].clone(),
                    modules[&(n - 1)].clone(),
                    top.vstack(&bottom)?,
                )?,
            );
        }
        let e = ChainComplex::from_parts(ring.clone(), modules, diffs)?;
        let mut incl_mats = BTreeMap::new();
        let mut proj_mats = BTreeMap::new();
        for &n in &degs {
            let gy = self.coeff.module(n).num_gens();
            let gx = self.source.module(n).num_gens();
            incl_mats.insert(
                n,
                Mat::identity(ring.clone(), gy).vstack(&Mat::zero(ring.clone(), gx, gy))?,
            );
            proj_mats.insert(
                n,
                Mat::zero(ring.clone(), gx, gy).hstack(&Mat::identity(ring.clone(), gx))?,
            );
        }
        let incl = ChainMap::from_mats(self.coeff.clone(), e.clone(), incl_mats)?;
        let proj = ChainMap::from_mats(e, self.source.clone(), proj_mats)?;
        ChShortExactSeq::new(incl, proj)
    }

    /// The class of a degreewise-split sequence: choose degreewise sections,
    /// read off the twisting family they fail to be a chain map by, and take
    /// its homology class.
    pub fn encode(&self, ses: &ChShortExactSeq) -> Result<Mat> {
        if !ses.sub().same_presentation(&self.coeff) || !ses.quot().same_presentation(&self.source)
        {
            return Err(Error::Invalid(
                "sequence ends do not match this ext group's presentations".into(),
            ));
        }
        let e = ses.middle();
        let mut sections: BTreeMap<i64, Mat> = BTreeMap::new();
        for &n in &e.degrees() {
            let s = hom_section(&ses.proj.component(n))?.ok_or_else(|| {
                Error::Invalid(format!("sequence is not split in degree {n}"))
            })?;
            sections.insert(n, s.mat().clone());
        }
        let zero_section = |n: i64| -> Mat {
            Mat::zero(
                e.ring().clone(),
                e.module(n).num_gens(),
                self.source.module(n).num_gens(),
            )
        };
        let mut fam: Vec<(i64, ModuleHom)> = Vec::new();
        for &n in &e.degrees() {
            // sigma_n = incl^{-1}(d_E s_n - s_{n-1} d_X), the failure of the
            // chosen sections to commute with the differentials.
            let s_n = sections.get(&n).cloned().unwrap_or_else(|| zero_section(n));
            let s_prev = sections
                .get(&(n - 1))
                .cloned()
                .unwrap_or_else(|| zero_section(n - 1));
            let gap = e
                .diff(n)
                .mat()
                .mul(&s_n)?
                .sub(&s_prev.mul(self.source.diff(n).mat())?)?;
            let em = e.module(n - 1);
            let aug = ses.incl.component(n - 1).mat().hstack(em.rels())?;
            let sol = solve(&aug, &gap)?.ok_or_else(|| {
                Error::CrossCheck("section defect escaped the subcomplex".into())
            })?;
            let gy = self.coeff.module(n - 1).num_gens();
            fam.push((
                n,
                ModuleHom::new(
                    self.source.module(n),
                    self.coeff.module(n - 1),
                    sol.submatrix(0, gy, 0, sol.cols()),
                )?,
            ));
        }
        self.hc.encode_class(-1, &fam)
    }

    pub fn classes_equal(&self, a: &Mat, b: &Mat) -> Result<bool> {
        self.module.elements_equal(a, b)
    }
}

pub fn ext1_dw(x: &ChainComplex, y: &ChainComplex) -> Result<Ext1Dw> {
    Ext1Dw::compute(x, y)
}

/// A right inverse of p that is a genuine module hom, when one exists.
fn hom_section(p: &ModuleHom) -> Result<Option<ModuleHom>> {
    let ring = p.source().ring().clone();
    let ge = p.source().num_gens();
    let gq = p.target().num_gens();
    let mut sys = MatVarSystem::new(ring.clone());
    let s = sys.add_var(ge, gq);
    sys.add_equation(
        vec![(s, p.mat().clone(), Mat::identity(ring.clone(), gq))],
        vec![p.target().rels().clone()],
        Mat::identity(ring.clone(), gq),
    )?;
    if p.target().rels().cols() > 0 {
        sys.add_equation(
            vec![(s, Mat::identity(ring.clone(), ge), p.target().rels().clone())],
            vec![p.source().rels().clone()],
            Mat::zero(ring, ge, p.target().rels().cols()),
        )?;
    }
    match sys.solve_particular()? {
        Some(mut sol) => Ok(Some(ModuleHom::new(
            p.target().clone(),
            p.source().clone(),
            sol.swap_remove(0),
        )?)),
        None => Ok(None),
    }
}

/// First generator G with Ext^1(G, Y) nonzero, or None when Y is orthogonal
/// to the whole family.
pub fn perp_witness(y: &ChainComplex, gens: &[ChainComplex]) -> Result<Option<usize>> {
    for (i, g) in gens.iter().enumerate() {
        if !Ext1Ch::compute(g, y)?.is_zero_group() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Does Ext^1(G, Y) vanish for every G in the family?
pub fn perp_member(y: &ChainComplex, gens: &[ChainComplex]) -> Result<bool> {
    Ok(perp_witness(y, gens)?.is_none())
}
