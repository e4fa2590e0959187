//! Seeded random generation of modules, maps, and complexes.
//!
//! Everything flows from one ChaCha20 stream, so a (ring, seed) pair
//! reproduces the same objects on every run and every platform. Complexes
//! are built differential-by-differential inside the kernel of "compose to
//! zero", so sampling never produces an invalid complex; exact complexes
//! are built by splicing surjections, which reaches examples that are not
//! sums of disks.

use super::maps::{ChainMap, ChainMapModule};
use super::ChainComplex;
use crate::error::Result;
use crate::linalg::{Mat, MatVarSystem};
use crate::module::{FpModule, HomGroup, ModuleHom};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub struct ComplexSampler {
    ring: Ring,
    rng: ChaCha20Rng,
    max_gens: usize,
    max_rels: usize,
}

impl ComplexSampler {
    pub fn new(ring: Ring, seed: u64) -> ComplexSampler {
        ComplexSampler {
            ring,
            rng: ChaCha20Rng::seed_from_u64(seed),
            max_gens: 3,
            max_rels: 3,
        }
    }

    pub fn with_max_gens(mut self, max_gens: usize) -> ComplexSampler {
        self.max_gens = max_gens.max(1);
        self.max_rels = max_gens.max(1);
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn entry(&mut self) -> BigInt {
        match self.ring.modulus() {
            Some(n) => {
                let n = n.to_i64().unwrap_or(i64::MAX);
                BigInt::from(self.rng.gen_range(0..n))
            }
            None => {
                // Small values, biased toward 0 and units.
                const POOL: [i64; 8] = [0, 0, 1, -1, 1, 2, -2, 3];
                BigInt::from(POOL[self.rng.gen_range(0..POOL.len())])
            }
        }
    }

    fn small_coeff(&mut self) -> BigInt {
        match self.ring.modulus() {
            Some(n) => {
                let n = n.to_i64().unwrap_or(i64::MAX);
                BigInt::from(self.rng.gen_range(0..n))
            }
            None => BigInt::from(self.rng.gen_range(-2i64..=2)),
        }
    }

    fn mat(&mut self, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zero(self.ring.clone(), rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = self.entry();
                m.set(i, j, e);
            }
        }
        m
    }

    /// A module with a few generators and a few random relations. Roughly
    /// one in eight is the zero module.
    pub fn random_module(&mut self) -> Result<FpModule> {
        let gens = if self.rng.gen_range(0..8) == 0 {
            0
        } else {
            self.rng.gen_range(1..=self.max_gens)
        };
        let rels = self.rng.gen_range(0..=self.max_rels);
        let m = self.mat(gens, rels);
        FpModule::new(self.ring.clone(), gens, m)
    }

    /// A random hom between two given modules, sampled uniformly over a
    /// generating set of the hom module with small coefficients.
    /// Random coordinates for an element of a presented module.
    pub fn random_coords(&mut self, m: &FpModule) -> Result<Mat> {
        let mut coords = Mat::zero(self.ring.clone(), m.num_gens(), 1);
        for i in 0..m.num_gens() {
            let c = self.small_coeff();
            coords.set(i, 0, c);
        }
        Ok(coords)
    }

    pub fn random_hom(&mut self, source: &FpModule, target: &FpModule) -> Result<ModuleHom> {
        let hg = HomGroup::compute(source, target)?;
        let mut coords = Mat::zero(self.ring.clone(), hg.num_gens(), 1);
        for i in 0..hg.num_gens() {
            let c = self.small_coeff();
            coords.set(i, 0, c);
        }
        hg.decode(&coords)
    }

    /// A uniform draw from 0..n out of the sampler's stream (0 when n <= 1).
    pub fn below(&mut self, n: u64) -> u64 {
        if n <= 1 {
            0
        } else {
            self.rng.gen_range(0..n)
        }
    }

    /// A random complex supported on degrees lo..lo+len-1. Differentials
    /// are sampled inside the solution space of "d . d = 0", so any mix of
    /// homology can and does appear.
    pub fn random_complex(&mut self, lo: i64, len: usize) -> Result<ChainComplex> {
        let modules: Vec<FpModule> = (0..len)
            .map(|_| self.random_module())
            .collect::<Result<_>>()?;
        let diffs = self.sample_diffs(&modules)?;
        ChainComplex::new(self.ring.clone(), lo, modules, diffs)
    }

    /// A random complex whose degrees are free modules, supported on
    /// lo..lo+len-1. Same differential sampling as `random_complex`.
    pub fn random_free_complex(&mut self, lo: i64, len: usize) -> Result<ChainComplex> {
        let modules: Vec<FpModule> = (0..len)
            .map(|_| {
                let rank = self.rng.gen_range(1..=self.max_gens);
                FpModule::free(self.ring.clone(), rank)
            })
            .collect();
        let diffs = self.sample_diffs(&modules)?;
        ChainComplex::new(self.ring.clone(), lo, modules, diffs)
    }

    fn sample_diffs(&mut self, modules: &[FpModule]) -> Result<Vec<ModuleHom>> {
        let len = modules.len();
        let mut diffs: Vec<ModuleHom> = Vec::new();
        for idx in 1..len {
            let src = &modules[idx];
            let tgt = &modules[idx - 1];
            let rows = tgt.num_gens();
            let cols = src.num_gens();
            if rows == 0 || cols == 0 {
                diffs.push(ModuleHom::zero(src, tgt)?);
                continue;
            }
            let mut sys = MatVarSystem::new(self.ring.clone());
            let v = sys.add_var(rows, cols);
            if src.rels().cols() > 0 {
                sys.add_equation(
                    vec![(v, Mat::identity(self.ring.clone(), rows), src.rels().clone())],
                    vec![tgt.rels().clone()],
                    Mat::zero(self.ring.clone(), rows, src.rels().cols()),
                )?;
            }
            if idx >= 2 {
                let below = &diffs[idx - 2];
                let bb = below.target();
                if bb.num_gens() > 0 {
                    sys.add_equation(
                        vec![(
                            v,
                            below.mat().clone(),
                            Mat::identity(self.ring.clone(), cols),
                        )],
                        vec![bb.rels().clone()],
                        Mat::zero(self.ring.clone(), bb.num_gens(), cols),
                    )?;
                }
            }
            let basis = sys.homogeneous_kernel()?;
            let mut acc = Mat::zero(self.ring.clone(), rows, cols);
            for sol in &basis {
                let c = self.small_coeff();
                acc = acc.add(&sol[0].scalar_mul(&c))?;
            }
            diffs.push(ModuleHom::new(src.clone(), tgt.clone(), acc)?);
        }
        Ok(diffs)
    }

    /// A random exact complex on degrees lo..lo+len-1, built by splicing:
    /// each differential surjects onto the kernel of the previous one, and
    /// the top degree is exactly that kernel. Kernels of random surjections
    /// are usually not direct summands, so the output is generally not a
    /// sum of disks.
    pub fn random_exact_complex(&mut self, lo: i64, len: usize) -> Result<ChainComplex> {
        if len < 2 {
            return Ok(ChainComplex::zero(self.ring.clone()));
        }
        let bottom = self.random_module()?;
        let mut modules = vec![bottom.clone()];
        let mut diffs: Vec<ModuleHom> = Vec::new();
        // (K, incl K -> C_last): what the next differential must surject onto.
        let mut k = bottom.clone();
        let mut incl = ModuleHom::identity(&bottom);
        for step in 1..len {
            if step == len - 1 {
                // Close off: the top module is the current kernel itself.
                modules.push(k.clone());
                diffs.push(incl.clone());
                break;
            }
            let (c, d) = if self.rng.gen_bool(0.5) {
                // Free cover of K: the next kernel is a genuine syzygy.
                let f = FpModule::free(self.ring.clone(), k.num_gens());
                let onto = ModuleHom::new(
                    f.clone(),
                    k.clone(),
                    Mat::identity(self.ring.clone(), k.num_gens()),
                )?;
                (f, incl.compose(&onto)?)
            } else {
                // Split pad: K plus an unrelated summand that dies here.
                let q = self.random_module()?;
                let c = k.direct_sum(&q)?;
                let mat = incl
                    .mat()
                    .hstack(&Mat::zero(self.ring.clone(), incl.mat().rows(), q.num_gens()))?;
                let d = ModuleHom::new(c.clone(), modules[step - 1].clone(), mat)?;
                (c, d)
            };
            let (ker, ker_incl) = d.kernel()?;
            modules.push(c);
            diffs.push(d);
            k = ker;
            incl = ker_incl;
        }
        let out = ChainComplex::new(self.ring.clone(), lo, modules, diffs)?;
        debug_assert!(out.is_exact()?);
        Ok(out)
    }

    /// A random chain map X -> Y with small coefficients in the generators
    /// of the chain map module.
    pub fn random_chain_map(&mut self, x: &ChainComplex, y: &ChainComplex) -> Result<ChainMap> {
        let hm = ChainMapModule::compute(x, y)?;
        let mut coords = Mat::zero(self.ring.clone(), hm.module().num_gens(), 1);
        for i in 0..coords.rows() {
            let c = self.small_coeff();
            coords.set(i, 0, c);
        }
        hm.decode(&coords)
    }

    /// An independently seeded light-weight RNG for choices outside the
    /// sampler (shuffles, index picks) that must not disturb the main
    /// stream.
    pub fn fork_rng(&mut self) -> StdRng {
        StdRng::seed_from_u64(self.rng.gen())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_reproducible() {
        let r = Ring::zmod(6).unwrap();
        let mut a = ComplexSampler::new(r.clone(), 42);
        let mut b = ComplexSampler::new(r, 42);
        for _ in 0..5 {
            let ca = a.random_complex(-1, 3).unwrap();
            let cb = b.random_complex(-1, 3).unwrap();
            assert!(ca.same_presentation(&cb));
        }
    }

    #[test]
    fn random_complexes_are_complexes() {
        // Construction would fail loudly if d.d were nonzero; spot-check
        // homology is computable across rings and seeds.
        for ring in [Ring::Z, Ring::zmod(4).unwrap(), Ring::zmod(12).unwrap()] {
            let mut s = ComplexSampler::new(ring, 7);
            for seed_step in 0..4 {
                let c = s.random_complex(seed_step, 4).unwrap();
                for n in c.degrees() {
                    c.homology(n).unwrap();
                }
            }
        }
    }

    #[test]
    fn random_exact_complexes_are_exact() {
        for ring in [Ring::Z, Ring::zmod(4).unwrap(), Ring::zmod(6).unwrap()] {
            let mut s = ComplexSampler::new(ring, 11);
            for _ in 0..4 {
                let c = s.random_exact_complex(0, 4).unwrap();
                assert!(c.is_exact().unwrap());
            }
        }
    }

    #[test]
    fn exact_sampler_reaches_non_disk_shapes() {
        // Over Z/4 the splice construction hits complexes that are not
        // sums of disks (e.g. with an indecomposable Z/4 between two Z/2
        // components). Detect one through a component-size mismatch: in a
        // disk sum, each degree is the sum of adjacent disk modules, so
        // orders of consecutive components constrain each other; here we
        // simply check some run is exact but not contractible-by-disks in
        // the crudest sense: its identity is not null-homotopic.
        use crate::complex::null_homotopy;
        let mut s = ComplexSampler::new(Ring::zmod(4).unwrap(), 3);
        let mut found = false;
        for _ in 0..12 {
            let c = s.random_exact_complex(0, 4).unwrap();
            let id = ChainMap::identity(&c);
            if null_homotopy(&id).unwrap().is_none() {
                found = true;
                break;
            }
        }
        assert!(found, "every sampled exact complex was contractible");
    }

    #[test]
    fn random_homs_and_chain_maps_validate() {
        let r = Ring::zmod(8).unwrap();
        let mut s = ComplexSampler::new(r, 5);
        let x = s.random_complex(0, 3).unwrap();
        let y = s.random_complex(0, 3).unwrap();
        // Constructors validate; five samples exercise the decode path.
        for _ in 0..5 {
            s.random_chain_map(&x, &y).unwrap();
        }
        let m1 = s.random_module().unwrap();
        let m2 = s.random_module().unwrap();
        for _ in 0..5 {
            s.random_hom(&m1, &m2).unwrap();
        }
    }
}
