//! Homomorphisms between finitely presented modules.
//!
//! A hom is a matrix on generators that carries relations into relations;
//! `ModuleHom::new` checks that condition, so a constructed value is always
//! a genuine homomorphism. Kernels, images, and cokernels come back as
//! presented modules together with the connecting hom.

use super::{subquotient_presentation, FpModule};
use crate::error::{Error, Result};
use crate::linalg::{kernel_gens, solve, Mat};
use num_bigint::BigInt;

#[derive(Debug, Clone)]
pub struct ModuleHom {
    source: FpModule,
    target: FpModule,
    mat: Mat, // target.num_gens x source.num_gens
}

impl ModuleHom {
    /// Build and validate: mat * rels(source) must vanish modulo
    /// rels(target), i.e. the matrix must send relations to relations.
    pub fn new(source: FpModule, target: FpModule, mat: Mat) -> Result<ModuleHom> {
        source.ring().expect_same(target.ring(), "hom")?;
        source.ring().expect_same(mat.ring(), "hom matrix")?;
        if mat.rows() != target.num_gens() || mat.cols() != source.num_gens() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix {}x{}, need {}x{}",
                mat.rows(),
                mat.cols(),
                target.num_gens(),
                source.num_gens()
            )));
        }
        let pushed = mat.mul(source.rels())?;
        if solve(target.rels(), &pushed)?.is_none() {
            return Err(Error::Invalid(
                "matrix does not define a homomorphism (relations not preserved)".into(),
            ));
        }
        Ok(ModuleHom { source, target, mat })
    }

    pub fn identity(m: &FpModule) -> ModuleHom {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            mat: Mat::identity(m.ring().clone(), m.num_gens()),
        }
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> Result<ModuleHom> {
        source.ring().expect_same(target.ring(), "zero hom")?;
        Ok(ModuleHom {
            source: source.clone(),
            target: target.clone(),
            mat: Mat::zero(source.ring().clone(), target.num_gens(), source.num_gens()),
        })
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn apply(&self, x: &Mat) -> Result<Mat> {
        self.mat.mul(x)
    }

    /// self . other (apply `other` first).
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        // Equality of presentations (not just isomorphism) is required.
        if self.source.rels() != other.target.rels() {
            return Err(Error::DimensionMismatch(
                "composition: inner modules have different presentations".into(),
            ));
        }
        Ok(ModuleHom {
            source: other.source.clone(),
            target: self.target.clone(),
            mat: self.mat.mul(&other.mat)?,
        })
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        Ok(ModuleHom {
            source: self.source.clone(),
            target: self.target.clone(),
            mat: self.mat.add(&other.mat)?,
        })
    }

    pub fn neg(&self) -> ModuleHom {
        ModuleHom {
            source: self.source.clone(),
            target: self.target.clone(),
            mat: self.mat.neg(),
        }
    }

    pub fn scalar_mul(&self, c: &BigInt) -> ModuleHom {
        ModuleHom {
            source: self.source.clone(),
            target: self.target.clone(),
            mat: self.mat.scalar_mul(c),
        }
    }

    /// Does this hom send every generator to zero in the target?
    pub fn is_zero_hom(&self) -> Result<bool> {
        Ok(solve(self.target.rels(), &self.mat)?.is_some())
    }

    /// Equality as maps (matrices may differ by relations).
    pub fn equals(&self, other: &ModuleHom) -> Result<bool> {
        let diff = self.mat.sub(&other.mat)?;
        Ok(solve(self.target.rels(), &diff)?.is_some())
    }

    pub fn is_identity(&self) -> Result<bool> {
        if self.source.num_gens() != self.target.num_gens() {
            return Ok(false);
        }
        let id = Mat::identity(self.source.ring().clone(), self.source.num_gens());
        let diff = self.mat.sub(&id)?;
        Ok(solve(self.target.rels(), &diff)?.is_some())
    }

    /// Kernel as a presented module plus its inclusion into the source.
    pub fn kernel(&self) -> Result<(FpModule, ModuleHom)> {
        // x in ker iff mat*x lies in the column span of target relations:
        // project the kernel of [mat | rels_target] onto the x block.
        let aug = self.mat.hstack(self.target.rels())?;
        let k = kernel_gens(&aug)?;
        let xs = k.submatrix(0, self.source.num_gens(), 0, k.cols());
        let module = subquotient_presentation(&xs, self.source.rels())?;
        let incl = ModuleHom::new(module.clone(), self.source.clone(), xs)?;
        Ok((module, incl))
    }

    /// Image as a presented module plus its inclusion into the target.
    pub fn image(&self) -> Result<(FpModule, ModuleHom)> {
        let module = subquotient_presentation(&self.mat, self.target.rels())?;
        let incl = ModuleHom::new(module.clone(), self.target.clone(), self.mat.clone())?;
        Ok((module, incl))
    }

    /// Cokernel plus the projection from the target.
    pub fn cokernel(&self) -> Result<(FpModule, ModuleHom)> {
        let rels = self.target.rels().hstack(&self.mat)?;
        let module = FpModule::new(self.target.ring().clone(), self.target.num_gens(), rels)?;
        let proj = ModuleHom::new(
            self.target.clone(),
            module.clone(),
            Mat::identity(self.target.ring().clone(), self.target.num_gens()),
        )?;
        Ok((module, proj))
    }

    pub fn is_injective_hom(&self) -> Result<bool> {
        Ok(self.kernel()?.0.is_zero_module())
    }

    pub fn is_surjective_hom(&self) -> Result<bool> {
        Ok(self.cokernel()?.0.is_zero_module())
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_injective_hom()? && self.is_surjective_hom()?)
    }
}

/// Inclusions and projections for a direct sum built by
/// [`FpModule::direct_sum`] (generators of `a` first).
pub fn direct_sum_maps(
    a: &FpModule,
    b: &FpModule,
) -> Result<(FpModule, ModuleHom, ModuleHom, ModuleHom, ModuleHom)> {
    let sum = a.direct_sum(b)?;
    let ring = a.ring().clone();
    let ga = a.num_gens();
    let gb = b.num_gens();
    let ia = Mat::identity(ring.clone(), ga)
        .vstack(&Mat::zero(ring.clone(), gb, ga))?;
    let ib = Mat::zero(ring.clone(), ga, gb)
        .vstack(&Mat::identity(ring.clone(), gb))?;
    let incl_a = ModuleHom::new(a.clone(), sum.clone(), ia.clone())?;
    let incl_b = ModuleHom::new(b.clone(), sum.clone(), ib.clone())?;
    let proj_a = ModuleHom::new(sum.clone(), a.clone(), ia.transpose())?;
    let proj_b = ModuleHom::new(sum.clone(), b.clone(), ib.transpose())?;
    Ok((sum, incl_a, incl_b, proj_a, proj_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn relation_preservation_is_enforced() {
        // Z/2 -> Z: only the zero map exists; x -> x is not a hom.
        let z2 = FpModule::cyclic(Ring::Z, 2);
        let z = FpModule::free(Ring::Z, 1);
        let bad = Mat::from_rows(Ring::Z, &[vec![1]]);
        assert!(ModuleHom::new(z2.clone(), z.clone(), bad).is_err());
        // Z/2 -> Z/4: multiplication by 2 is a hom, by 1 is not.
        let z4 = FpModule::cyclic(Ring::Z, 4);
        let two = Mat::from_rows(Ring::Z, &[vec![2]]);
        assert!(ModuleHom::new(z2.clone(), z4.clone(), two).is_ok());
        let one = Mat::from_rows(Ring::Z, &[vec![1]]);
        assert!(ModuleHom::new(z2, z4, one).is_err());
    }

    #[test]
    fn kernel_image_cokernel_of_multiplication_by_two() {
        // x -> 2x on Z/4: kernel Z/2, image Z/2, cokernel Z/2.
        let z4 = FpModule::cyclic(Ring::Z, 4);
        let f = ModuleHom::new(
            z4.clone(),
            z4.clone(),
            Mat::from_rows(Ring::Z, &[vec![2]]),
        )
        .unwrap();
        let (ker, incl) = f.kernel().unwrap();
        assert_eq!(ker.invariants().to_string(), "Z/2");
        // The inclusion composed with f is zero.
        assert!(f.compose(&incl).unwrap().is_zero_hom().unwrap());
        let (im, _) = f.image().unwrap();
        assert_eq!(im.invariants().to_string(), "Z/2");
        let (coker, proj) = f.cokernel().unwrap();
        assert_eq!(coker.invariants().to_string(), "Z/2");
        assert!(proj.compose(&f).unwrap().is_zero_hom().unwrap());
        assert!(!f.is_injective_hom().unwrap());
        assert!(!f.is_surjective_hom().unwrap());
    }

    #[test]
    fn equality_modulo_relations() {
        let z4 = FpModule::cyclic(Ring::Z, 4);
        let f = ModuleHom::new(
            z4.clone(),
            z4.clone(),
            Mat::from_rows(Ring::Z, &[vec![1]]),
        )
        .unwrap();
        let g = ModuleHom::new(
            z4.clone(),
            z4.clone(),
            Mat::from_rows(Ring::Z, &[vec![5]]),
        )
        .unwrap();
        assert!(f.equals(&g).unwrap());
        assert!(f.is_identity().unwrap());
    }

    #[test]
    fn direct_sum_maps_compose_correctly() {
        let r = Ring::zmod(6).unwrap();
        let a = FpModule::cyclic(r.clone(), 2);
        let b = FpModule::cyclic(r.clone(), 3);
        let (sum, ia, ib, pa, pb) = direct_sum_maps(&a, &b).unwrap();
        assert_eq!(sum.invariants().to_string(), "Z/6");
        assert!(pa.compose(&ia).unwrap().is_identity().unwrap());
        assert!(pb.compose(&ib).unwrap().is_identity().unwrap());
        assert!(pb.compose(&ia).unwrap().is_zero_hom().unwrap());
        // ia.pa + ib.pb = identity on the sum.
        let lhs = ia
            .compose(&pa)
            .unwrap()
            .add(&ib.compose(&pb).unwrap())
            .unwrap();
        assert!(lhs.is_identity().unwrap());
    }

    #[test]
    fn kernel_over_mod_ring() {
        // Multiplication by 3 on Z/6 over Z/6: kernel is Z/3... wait, 3x = 0
        // iff x in {0, 2, 4}, so the kernel is Z/3. The image is {0, 3} = Z/2.
        let r = Ring::zmod(6).unwrap();
        let m = FpModule::free(r.clone(), 1);
        let f = ModuleHom::new(
            m.clone(),
            m.clone(),
            Mat::from_rows(r, &[vec![3]]),
        )
        .unwrap();
        assert_eq!(f.kernel().unwrap().0.invariants().to_string(), "Z/3");
        assert_eq!(f.image().unwrap().0.invariants().to_string(), "Z/2");
        assert_eq!(f.cokernel().unwrap().0.invariants().to_string(), "Z/3");
    }
}
