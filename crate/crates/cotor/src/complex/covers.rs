//! Disk-shaped covers and co-covers.
//!
//! Sums of disks on projective modules are exactly the projective objects
//! of the category of complexes, and every complex X receives a surjection
//! from one: take a free module F_n onto each X_n and map D^n(F_n) in by
//! sending the top generator to the chosen generators. Dually, over a
//! self-injective ring, disks on injective envelopes receive X via
//! x |-> (x, dx), giving a degreewise-injective map into an exact complex.

use super::maps::ChainMap;
use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::FpModule;
use std::collections::BTreeMap;

/// The canonical surjection P -> X where P is the sum over all degrees of
/// free disks D^n(R^{g_n}), one generator per generator of X_n.
///
/// P is a projective object and the map is degreewise surjective, so this
/// is a precover by projective complexes; P is exact by construction.
pub fn free_disk_precover(x: &ChainComplex) -> Result<(ChainComplex, ChainMap)> {
    let ring = x.ring().clone();
    let mut p = ChainComplex::zero(ring.clone());
    // Components of the eventual map, assembled block by block: at each
    // degree, a list of (column offset into P, block) pairs.
    let mut blocks: BTreeMap<i64, Vec<(usize, Mat)>> = BTreeMap::new();
    for n in x.degrees() {
        let g = x.module(n).num_gens();
        if g == 0 {
            continue;
        }
        let disk = ChainComplex::disk(n, &FpModule::free(ring.clone(), g));
        // Top generator e_i |-> generator i of X_n; the bottom copy then
        // must go to d(gen i) for the squares to commute.
        let top = Mat::identity(ring.clone(), g);
        let bottom = x.diff(n).mat().clone();
        blocks.entry(n).or_default().push((p.module(n).num_gens(), top));
        blocks
            .entry(n - 1)
            .or_default()
            .push((p.module(n - 1).num_gens(), bottom));
        p = p.direct_sum(&disk)?;
    }
    let mut mats = BTreeMap::new();
    for (deg, parts) in blocks {
        let rows = x.module(deg).num_gens();
        let cols = p.module(deg).num_gens();
        let mut m = Mat::zero(ring.clone(), rows, cols);
        for (offset, block) in parts {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    m.set(i, offset + j, block.at(i, j).clone());
                }
            }
        }
        mats.insert(deg, m);
    }
    let cover = ChainMap::from_mats(p.clone(), x.clone(), mats)?;
    debug_assert!(cover.is_degreewise_surjective()?);
    Ok((p, cover))
}

/// Alias carrying the categorical meaning: the same construction viewed as
/// "a projective object mapping onto X".
pub fn canonical_disk_cover(x: &ChainComplex) -> Result<(ChainComplex, ChainMap)> {
    free_disk_precover(x)
}

/// Degreewise-injective map X -> E where E is a sum of disks on injective
/// envelopes: E = sum over n of D^{n+1}(env(X_n)) shifted so that degree n
/// of the disk receives X_n, with component x |-> (iota x, iota d x).
///
/// Requires every X_n to admit an injective envelope (true over Z/n, where
/// the ring is self-injective; fails over Z, which has no finitely
/// generated cogenerator).
pub fn disk_cocover(x: &ChainComplex) -> Result<(ChainComplex, ChainMap)> {
    let ring = x.ring().clone();
    if ring.modulus().is_none() {
        return Err(Error::NoInjectiveCogenerator(
            "injective co-covers by finitely generated complexes need Z/n coefficients".into(),
        ));
    }
    let mut e = ChainComplex::zero(ring.clone());
    let mut blocks: BTreeMap<i64, Vec<(usize, Mat)>> = BTreeMap::new();
    for n in x.degrees() {
        let xm = x.module(n);
        if xm.num_gens() == 0 {
            continue;
        }
        let (env, embed) = xm.injective_envelope()?;
        if env.num_gens() == 0 {
            continue;
        }
        // D^{n+1}(env): env in degrees n+1 and n. X_n lands in the bottom
        // copy; the top copy receives X_{n+1} through iota . d.
        let disk = ChainComplex::disk(n + 1, &env);
        let bottom = embed.mat().clone();
        let top = embed.mat().mul(x.diff(n + 1).mat())?;
        blocks.entry(n).or_default().push((e.module(n).num_gens(), bottom));
        blocks
            .entry(n + 1)
            .or_default()
            .push((e.module(n + 1).num_gens(), top));
        e = e.direct_sum(&disk)?;
    }
    let mut mats = BTreeMap::new();
    for (deg, parts) in blocks {
        let rows = e.module(deg).num_gens();
        let cols = x.module(deg).num_gens();
        let mut m = Mat::zero(ring.clone(), rows, cols);
        for (offset, block) in parts {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    m.set(offset + i, j, block.at(i, j).clone());
                }
            }
        }
        mats.insert(deg, m);
    }
    let into = ChainMap::from_mats(x.clone(), e.clone(), mats)?;
    debug_assert!(into.is_degreewise_injective()?);
    Ok((e, into))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::module::ModuleHom;

    #[test]
    fn precover_is_exact_projective_and_onto() {
        let r = Ring::zmod(4).unwrap();
        let m = FpModule::free(r.clone(), 1);
        let two = ModuleHom::new(m.clone(), m.clone(), Mat::from_rows(r.clone(), &[vec![2]]))
            .unwrap();
        let x = ChainComplex::new(r, 0, vec![m.clone(), m], vec![two]).unwrap();
        let (p, cover) = free_disk_precover(&x).unwrap();
        assert!(p.is_exact().unwrap());
        assert!(cover.is_degreewise_surjective().unwrap());
        for n in p.degrees() {
            assert!(p.module(n).is_projective());
        }
    }

    #[test]
    fn precover_over_the_integers() {
        let z2 = FpModule::cyclic(Ring::Z, 2);
        let x = ChainComplex::sphere(0, &z2);
        let (p, cover) = free_disk_precover(&x).unwrap();
        // One disk D^0(Z): degrees 0 and -1.
        assert_eq!(p.support(), Some((-1, 0)));
        assert!(cover.is_degreewise_surjective().unwrap());
        assert!(p.is_exact().unwrap());
    }

    #[test]
    fn cocover_embeds_into_an_exact_complex_of_injectives() {
        let r = Ring::zmod(4).unwrap();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let x = ChainComplex::sphere(0, &z2);
        let (e, into) = disk_cocover(&x).unwrap();
        assert!(e.is_exact().unwrap());
        assert!(into.is_degreewise_injective().unwrap());
        for n in e.degrees() {
            assert!(e.module(n).is_injective());
        }
    }

    #[test]
    fn cocover_respects_the_differential() {
        // X: Z/4 --*2--> Z/4 over Z/4; the embedding must commute with d,
        // which the chain map constructor verifies.
        let r = Ring::zmod(4).unwrap();
        let m = FpModule::free(r.clone(), 1);
        let two = ModuleHom::new(m.clone(), m.clone(), Mat::from_rows(r.clone(), &[vec![2]]))
            .unwrap();
        let x = ChainComplex::new(r, 0, vec![m.clone(), m], vec![two]).unwrap();
        let (_, into) = disk_cocover(&x).unwrap();
        assert!(into.is_degreewise_injective().unwrap());
    }

    #[test]
    fn cocover_needs_a_modulus() {
        let x = ChainComplex::sphere(0, &FpModule::cyclic(Ring::Z, 2));
        assert!(disk_cocover(&x).is_err());
    }
}
