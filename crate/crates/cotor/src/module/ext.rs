//! Ext^1 between finitely presented modules, with explicit extensions.
//!
//! From the free cover 0 -> K -> R^g -> M -> 0, every hom K -> N glues an
//! extension of M by N (pushout), homs that extend to R^g glue split ones,
//! and Ext^1(M, N) = Hom(K, N) / (restrictions from R^g). Both directions
//! are kept explicit: `decode` turns a class into a short exact sequence,
//! `encode` classifies a given sequence by lifting over the free cover.

use super::{FpModule, HomGroup, ModuleHom};
use crate::error::{Error, Result};
use crate::linalg::{solve, Mat, MatVarSystem};
use crate::module::hom_group::induced_hom;

/// A short exact sequence 0 -> sub -> middle -> quot -> 0 of presented
/// modules, stored as the two homs.
#[derive(Debug, Clone)]
pub struct ShortExactSeq {
    pub incl: ModuleHom,
    pub proj: ModuleHom,
}

impl ShortExactSeq {
    pub fn new(incl: ModuleHom, proj: ModuleHom) -> Result<ShortExactSeq> {
        let ses = ShortExactSeq { incl, proj };
        ses.validate()?;
        Ok(ses)
    }

    pub fn sub(&self) -> &FpModule {
        self.incl.source()
    }

    pub fn middle(&self) -> &FpModule {
        self.incl.target()
    }

    pub fn quot(&self) -> &FpModule {
        self.proj.target()
    }

    /// Check injectivity, surjectivity, and exactness at the middle.
    pub fn validate(&self) -> Result<()> {
        if self.incl.target().rels() != self.proj.source().rels() {
            return Err(Error::Invalid(
                "short exact sequence: maps do not share the middle module".into(),
            ));
        }
        if !self.incl.is_injective_hom()? {
            return Err(Error::Invalid("sequence start is not injective".into()));
        }
        if !self.proj.is_surjective_hom()? {
            return Err(Error::Invalid("sequence end is not surjective".into()));
        }
        if !self.proj.compose(&self.incl)?.is_zero_hom()? {
            return Err(Error::Invalid("composite through the middle is nonzero".into()));
        }
        // ker(proj) inside im(incl): factor each kernel generator through incl.
        let (_, ker_incl) = self.proj.kernel()?;
        let aug = self.incl.mat().hstack(self.middle().rels())?;
        if solve(&aug, ker_incl.mat())?.is_none() {
            return Err(Error::Invalid(
                "kernel of the projection exceeds the image of the inclusion".into(),
            ));
        }
        Ok(())
    }

    /// Does the sequence split, i.e. does proj admit a right inverse?
    pub fn is_split(&self) -> Result<bool> {
        let ring = self.middle().ring().clone();
        let mut sys = MatVarSystem::new(ring.clone());
        let s = sys.add_var(self.middle().num_gens(), self.quot().num_gens());
        sys.add_equation(
            vec![(
                s,
                self.proj.mat().clone(),
                Mat::identity(ring.clone(), self.quot().num_gens()),
            )],
            vec![self.quot().rels().clone()],
            Mat::identity(ring, self.quot().num_gens()),
        )?;
        // A matrix solution must also be a hom; quotient relations must map
        // into middle relations, which the slack above does not watch. Check
        // candidates until one is a genuine section.
        if let Some(sol) = sys.solve_particular()? {
            if ModuleHom::new(self.quot().clone(), self.middle().clone(), sol[0].clone()).is_ok() {
                return Ok(true);
            }
        }
        // Fall back: a section exists iff the class vanishes.
        let ext = Ext1Module::compute(self.quot(), self.sub())?;
        let class = ext.encode(self)?;
        ext.module().element_is_zero(&class)
    }
}

/// Ext^1(source, coeff) with classification plumbing.
#[derive(Debug, Clone)]
pub struct Ext1Module {
    source: FpModule,
    coeff: FpModule,
    module: FpModule,
    p0: FpModule,
    pi: ModuleHom,
    syz_incl: ModuleHom,
    hom_kn: HomGroup,
    proj_ext: ModuleHom,
}

impl Ext1Module {
    pub fn compute(source: &FpModule, coeff: &FpModule) -> Result<Ext1Module> {
        source.ring().expect_same(coeff.ring(), "ext")?;
        let ring = source.ring().clone();
        let g = source.num_gens();
        let p0 = FpModule::free(ring.clone(), g);
        let pi = ModuleHom::new(
            p0.clone(),
            source.clone(),
            Mat::identity(ring.clone(), g),
        )?;
        let (syz, syz_incl) = pi.kernel()?;
        let hom_p0n = HomGroup::compute(&p0, coeff)?;
        let hom_kn = HomGroup::compute(&syz, coeff)?;
        let res = induced_hom(&hom_p0n, &hom_kn, &syz_incl, &ModuleHom::identity(coeff))?;
        let (module, proj_ext) = res.cokernel()?;
        Ok(Ext1Module {
            source: source.clone(),
            coeff: coeff.clone(),
            module,
            p0,
            pi,
            syz_incl,
            hom_kn,
            proj_ext,
        })
    }

    /// The group Ext^1 itself.
    pub fn module(&self) -> &FpModule {
        &self.module
    }

    /// The extension for a class: pushout of the free cover along the
    /// hom K -> N the class represents.
    pub fn decode(&self, class: &Mat) -> Result<ShortExactSeq> {
        // Cokernel generators coincide with Hom(K, N) generators.
        let f_mat = self.hom_kn.decode_matrix(class)?;
        let ring = self.source.ring().clone();
        let n_gens = self.coeff.num_gens();
        let g = self.p0.num_gens();
        // Middle = (N + P0) / <(f(k), -k) for syzygy generators k>.
        let top = self.coeff.rels().hstack(&f_mat)?;
        let bottom = Mat::zero(ring.clone(), g, self.coeff.rels().cols())
            .hstack(&self.syz_incl.mat().neg())?;
        let rels_e = top.vstack(&bottom)?;
        let middle = FpModule::new(ring.clone(), n_gens + g, rels_e)?;
        let incl_mat = Mat::identity(ring.clone(), n_gens)
            .vstack(&Mat::zero(ring.clone(), g, n_gens))?;
        let incl = ModuleHom::new(self.coeff.clone(), middle.clone(), incl_mat)?;
        let proj_mat = Mat::zero(ring.clone(), g, n_gens)
            .hstack(&Mat::identity(ring, g))?;
        let proj_to_m = self.pi.mat().mul(&proj_mat)?;
        let proj = ModuleHom::new(middle.clone(), self.source.clone(), proj_to_m)?;
        let ses = ShortExactSeq { incl, proj };
        debug_assert!(ses.validate().is_ok());
        Ok(ses)
    }

    /// The class of a short exact sequence 0 -> coeff -> E -> source -> 0.
    pub fn encode(&self, ses: &ShortExactSeq) -> Result<Mat> {
        if ses.sub().rels() != self.coeff.rels() || ses.quot().rels() != self.source.rels() {
            return Err(Error::Invalid(
                "sequence ends do not match this ext group's presentation".into(),
            ));
        }
        let ring = self.source.ring().clone();
        let e = ses.middle();
        // Lift the free cover through the surjection: proj . lambda = pi.
        let mut sys = MatVarSystem::new(ring.clone());
        let lam = sys.add_var(e.num_gens(), self.p0.num_gens());
        sys.add_equation(
            vec![(
                lam,
                ses.proj.mat().clone(),
                Mat::identity(ring.clone(), self.p0.num_gens()),
            )],
            vec![self.source.rels().clone()],
            self.pi.mat().clone(),
        )?;
        let lambda = sys
            .solve_particular()?
            .ok_or_else(|| Error::CrossCheck("free cover failed to lift".into()))?
            .swap_remove(0);
        // lambda restricted to syzygies lands in ker(proj) = im(incl);
        // factor through incl to get K -> N.
        let mu = lambda.mul(self.syz_incl.mat())?;
        let aug = ses.incl.mat().hstack(e.rels())?;
        let fac = solve(&aug, &mu)?
            .ok_or_else(|| Error::CrossCheck("syzygy image missed the submodule".into()))?;
        let f_mat = fac.submatrix(0, self.coeff.num_gens(), 0, fac.cols());
        let coords = self.hom_kn.encode_matrix(&f_mat)?;
        self.proj_ext.apply(&coords)
    }

    pub fn classes_equal(&self, a: &Mat, b: &Mat) -> Result<bool> {
        self.module.elements_equal(a, b)
    }
}
