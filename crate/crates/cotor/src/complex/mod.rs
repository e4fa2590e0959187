//! Bounded chain complexes of finitely presented modules.
//!
//! Complexes are homologically graded: the differential in degree n maps
//! C_n to C_{n-1}, and everything lives in a finite window of degrees.
//! Degrees outside the window are the zero module. Construction validates
//! that consecutive differentials compose to zero, so a value of this type
//! is always a genuine complex.

mod covers;
mod hom_complex;
mod maps;
mod random;

pub use covers::{canonical_disk_cover, disk_cocover, free_disk_precover};
pub use hom_complex::HomComplex;
pub use maps::{
    cokernel_complex, kernel_complex, lift_through, mapping_cone, null_homotopy,
    pullback_complexes, pushout_complexes, section_of, ChShortExactSeq, ChainMap,
    ChainMapModule, Homotopy,
};
pub use random::ComplexSampler;

use crate::error::{Error, Result};
use crate::linalg::{kernel_gens, Mat};
use crate::module::{subquotient_presentation, FpModule, ModuleHom};
use crate::ring::Ring;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone)]
pub struct ChainComplex {
    ring: Ring,
    modules: BTreeMap<i64, FpModule>,
    /// diffs[n]: C_n -> C_{n-1}; present only when both degrees are stored.
    diffs: BTreeMap<i64, ModuleHom>,
}

impl ChainComplex {
    /// Build from a contiguous window: modules[k] sits in degree lo + k and
    /// diffs[k] maps modules[k+1] -> modules[k].
    pub fn new(
        ring: Ring,
        lo: i64,
        modules: Vec<FpModule>,
        diffs: Vec<ModuleHom>,
    ) -> Result<ChainComplex> {
        if !modules.is_empty() && diffs.len() + 1 != modules.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        let mut mmap = BTreeMap::new();
        let mut dmap = BTreeMap::new();
        for (k, m) in modules.iter().enumerate() {
            ring.expect_same(m.ring(), "complex module")?;
            mmap.insert(lo + k as i64, m.clone());
        }
        for (k, d) in diffs.iter().enumerate() {
            let n = lo + k as i64 + 1;
            if d.source().rels() != modules[k + 1].rels()
                || d.target().rels() != modules[k].rels()
            {
                return Err(Error::DimensionMismatch(format!(
                    "differential entering degree {} does not match the modules",
                    n - 1
                )));
            }
            dmap.insert(n, d.clone());
        }
        Self::from_parts(ring, mmap, dmap)
    }

    /// Build from sparse parts; missing degrees are zero.
    pub fn from_parts(
        ring: Ring,
        modules: BTreeMap<i64, FpModule>,
        diffs: BTreeMap<i64, ModuleHom>,
    ) -> Result<ChainComplex> {
        let c = ChainComplex {
            ring,
            modules,
            diffs,
        };
        for (&n, d) in &c.diffs {
            // Composite across two stored differentials must vanish.
            if let Some(up) = c.diffs.get(&(n + 1)) {
                if !d.compose(up)?.is_zero_hom()? {
                    return Err(Error::BrokenDifferential { degree: n - 1 });
                }
            }
        }
        Ok(c)
    }

    pub fn zero(ring: Ring) -> ChainComplex {
        ChainComplex {
            ring,
            modules: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// M concentrated in degree n.
    pub fn sphere(n: i64, m: &FpModule) -> ChainComplex {
        let mut modules = BTreeMap::new();
        if !m.is_zero_module() || m.num_gens() > 0 {
            modules.insert(n, m.clone());
        }
        ChainComplex {
            ring: m.ring().clone(),
            modules,
            diffs: BTreeMap::new(),
        }
    }

    /// M in degrees n and n-1 with the identity differential.
    pub fn disk(n: i64, m: &FpModule) -> ChainComplex {
        let mut modules = BTreeMap::new();
        modules.insert(n, m.clone());
        modules.insert(n - 1, m.clone());
        let mut diffs = BTreeMap::new();
        diffs.insert(n, ModuleHom::identity(m));
        ChainComplex {
            ring: m.ring().clone(),
            modules,
            diffs,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Inclusive degree window of stored modules; None when the complex has
    /// no stored degrees at all.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.modules.keys().next()?;
        let hi = *self.modules.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn degrees(&self) -> Vec<i64> {
        match self.support() {
            None => Vec::new(),
            Some((lo, hi)) => (lo..=hi).collect(),
        }
    }

    /// The module in degree n (the zero module off the window).
    pub fn module(&self, n: i64) -> FpModule {
        self.modules
            .get(&n)
            .cloned()
            .unwrap_or_else(|| FpModule::zero_module(self.ring.clone()))
    }

    /// The differential C_n -> C_{n-1} (a zero hom off the window).
    pub fn diff(&self, n: i64) -> ModuleHom {
        match self.diffs.get(&n) {
            Some(d) => d.clone(),
            None => ModuleHom::zero(&self.module(n), &self.module(n - 1))
                .expect("same ring by construction"),
        }
    }

    pub fn is_zero_complex(&self) -> bool {
        self.modules.values().all(|m| m.is_zero_module())
    }

    /// Generators of the cycle submodule Z_n inside R^(gens of C_n): every
    /// x with diff(x) = 0 in C_{n-1} is a combination of these columns.
    pub fn cycle_gens(&self, n: i64) -> Result<Mat> {
        let d = self.diff(n);
        let aug = d.mat().hstack(self.module(n - 1).rels())?;
        let k = kernel_gens(&aug)?;
        Ok(k.submatrix(0, self.module(n).num_gens(), 0, k.cols()))
    }

    /// The cycles Z_n as a module with its inclusion into C_n.
    pub fn cycles(&self, n: i64) -> Result<(FpModule, ModuleHom)> {
        self.diff(n).kernel()
    }

    /// Homology at degree n together with representing cycles: column j of
    /// the returned matrix is the cycle representing generator j.
    pub fn homology_with_reps(&self, n: i64) -> Result<(FpModule, Mat)> {
        let z = self.cycle_gens(n)?;
        let b = self.diff(n + 1).mat().hstack(self.module(n).rels())?;
        let h = subquotient_presentation(&z, &b)?;
        Ok((h, z))
    }

    pub fn homology(&self, n: i64) -> Result<FpModule> {
        Ok(self.homology_with_reps(n)?.0)
    }

    pub fn is_exact(&self) -> Result<bool> {
        for n in self.degrees() {
            if !self.homology(n)?.is_zero_module() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Degree shift with the usual sign: degree n of the result is degree
    /// n - k of the input, and odd shifts negate the differential.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let modules = self
            .modules
            .iter()
            .map(|(&n, m)| (n + k, m.clone()))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&n, d)| {
                let d = if k.rem_euclid(2) == 1 { d.neg() } else { d.clone() };
                (n + k, d)
            })
            .collect();
        ChainComplex {
            ring: self.ring.clone(),
            modules,
            diffs,
        }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        self.ring.expect_same(&other.ring, "complex direct sum")?;
        let lo = match (self.support(), other.support()) {
            (None, None) => return Ok(ChainComplex::zero(self.ring.clone())),
            (Some((a, _)), None) => a,
            (None, Some((b, _))) => b,
            (Some((a, _)), Some((b, _))) => a.min(b),
        };
        let hi = self
            .support()
            .map(|(_, h)| h)
            .into_iter()
            .chain(other.support().map(|(_, h)| h))
            .max()
            .expect("at least one support");
        let mut modules = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in lo..=hi {
            modules.insert(n, self.module(n).direct_sum(&other.module(n))?);
        }
        for n in (lo + 1)..=hi {
            let mat = Mat::block_diag(
                self.ring.clone(),
                &[self.diff(n).mat(), other.diff(n).mat()],
            )?;
            diffs.insert(
                n,
                ModuleHom::new(
                    modules[&n].clone(),
                    modules[&(n - 1)].clone(),
                    mat,
                )?,
            );
        }
        ChainComplex::from_parts(self.ring.clone(), modules, diffs)
    }

    /// Drop zero modules at the edges of the window (interior zeros stay).
    pub fn trim(&self) -> ChainComplex {
        let mut degs: Vec<i64> = self.modules.keys().copied().collect();
        while let Some(&d) = degs.first() {
            if self.modules[&d].is_zero_module() {
                degs.remove(0);
            } else {
                break;
            }
        }
        while let Some(&d) = degs.last() {
            if self.modules[&d].is_zero_module() {
                degs.pop();
            } else {
                break;
            }
        }
        let (Some(&lo), Some(&hi)) = (degs.first(), degs.last()) else {
            return ChainComplex::zero(self.ring.clone());
        };
        let modules = self
            .modules
            .iter()
            .filter(|(&n, _)| n >= lo && n <= hi)
            .map(|(&n, m)| (n, m.clone()))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .filter(|(&n, _)| n > lo && n <= hi)
            .map(|(&n, d)| (n, d.clone()))
            .collect();
        ChainComplex {
            ring: self.ring.clone(),
            modules,
            diffs,
        }
    }

    /// Total number of generators across all degrees (a size measure).
    pub fn total_gens(&self) -> usize {
        self.modules.values().map(|m| m.num_gens()).sum()
    }
}

impl fmt::Display for ChainComplex {
    /// One line per degree, highest first: "2: Z/4 --d--> 1: Z/2 ...".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((lo, hi)) = self.support() else {
            return write!(f, "0 (zero complex)");
        };
        let mut first = true;
        for n in (lo..=hi).rev() {
            if !first {
                write!(f, " -> ")?;
            }
            write!(f, "[{}: {}]", n, self.module(n).invariants())?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_a_broken_differential() {
        let z = FpModule::free(Ring::Z, 1);
        let id = ModuleHom::identity(&z);
        let err = ChainComplex::new(
            Ring::Z,
            0,
            vec![z.clone(), z.clone(), z],
            vec![id.clone(), id],
        );
        match err {
            Err(Error::BrokenDifferential { degree }) => assert_eq!(degree, 0),
            other => panic!("expected broken differential, got {other:?}"),
        }
    }

    #[test]
    fn homology_of_multiplication_by_two() {
        // 0 -> Z --2--> Z -> 0 in degrees 1, 0.
        let z = FpModule::free(Ring::Z, 1);
        let two = ModuleHom::new(z.clone(), z.clone(), Mat::from_rows(Ring::Z, &[vec![2]]))
            .unwrap();
        let c = ChainComplex::new(Ring::Z, 0, vec![z.clone(), z], vec![two]).unwrap();
        assert_eq!(c.homology(0).unwrap().invariants().to_string(), "Z/2");
        assert!(c.homology(1).unwrap().is_zero_module());
        assert!(!c.is_exact().unwrap());
    }

    #[test]
    fn disks_are_exact_and_spheres_are_homology() {
        let r = Ring::zmod(4).unwrap();
        let m = FpModule::cyclic(r.clone(), 2);
        let d = ChainComplex::disk(3, &m);
        assert!(d.is_exact().unwrap());
        let s = ChainComplex::sphere(2, &m);
        assert_eq!(s.homology(2).unwrap().invariants(), m.invariants());
        assert!(s.homology(1).unwrap().is_zero_module());
        assert!(!s.is_exact().unwrap());
    }

    #[test]
    fn shift_moves_homology_and_signs_cancel() {
        let z = FpModule::free(Ring::Z, 1);
        let two = ModuleHom::new(z.clone(), z.clone(), Mat::from_rows(Ring::Z, &[vec![2]]))
            .unwrap();
        let c = ChainComplex::new(Ring::Z, 0, vec![z.clone(), z], vec![two]).unwrap();
        let s = c.shift(3);
        assert_eq!(s.support(), Some((3, 4)));
        assert_eq!(s.homology(3).unwrap().invariants().to_string(), "Z/2");
        // Odd shift negates; shifting back restores the original matrix.
        let back = s.shift(-3);
        assert_eq!(back.diff(1).mat(), c.diff(1).mat());
        assert_eq!(
            s.diff(4).mat().at(0, 0),
            &num_bigint::BigInt::from(-2) // stored over Z, reduce keeps sign
        );
    }

    #[test]
    fn direct_sum_adds_homology() {
        let r = Ring::zmod(4).unwrap();
        let s = ChainComplex::sphere(0, &FpModule::cyclic(r.clone(), 2));
        let d = ChainComplex::disk(1, &FpModule::free(r, 1));
        let sum = s.direct_sum(&d).unwrap();
        assert_eq!(sum.support(), Some((0, 1)));
        assert_eq!(sum.homology(0).unwrap().invariants().to_string(), "Z/2");
        assert!(sum.homology(1).unwrap().is_zero_module());
    }

    #[test]
    fn trim_drops_zero_edges() {
        let r = Ring::Z;
        let mut modules = BTreeMap::new();
        modules.insert(0, FpModule::zero_module(r.clone()));
        modules.insert(1, FpModule::free(r.clone(), 1));
        modules.insert(2, FpModule::zero_module(r.clone()));
        let c = ChainComplex::from_parts(r, modules, BTreeMap::new()).unwrap();
        let t = c.trim();
        assert_eq!(t.support(), Some((1, 1)));
    }
}
