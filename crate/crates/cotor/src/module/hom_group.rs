//! Hom(M, N) as a finitely presented module.
//!
//! Solutions F of F * rels(M) = 0 (mod rels(N)) are exactly the matrices
//! defining homs; the ones of the form rels(N) * T define the zero hom.
//! Hom(M, N) is the subquotient (all solutions)/(trivial ones) of the space
//! of target-by-source matrices, computed with the same kernel machinery as
//! everything else.

use super::{subquotient_presentation, FpModule, InvariantFactors, ModuleHom};
use crate::error::{Error, Result};
use crate::linalg::{solve, Mat, MatVarSystem};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct HomGroup {
    source: FpModule,
    target: FpModule,
    module: FpModule,
    /// Matrix of generator j as an actual hom matrix (target.gens x source.gens).
    gens: Vec<Mat>,
    /// Those generators vectorized side by side, for encoding.
    gens_vec: Mat,
}

impl HomGroup {
    pub fn compute(source: &FpModule, target: &FpModule) -> Result<HomGroup> {
        source.ring().expect_same(target.ring(), "hom group")?;
        let ring = source.ring().clone();
        let (h, g) = (target.num_gens(), source.num_gens());

        let mut sys = MatVarSystem::new(ring.clone());
        let f = sys.add_var(h, g);
        sys.add_equation(
            vec![(f, Mat::identity(ring.clone(), h), source.rels().clone())],
            vec![target.rels().clone()],
            Mat::zero(ring.clone(), h, source.rels().cols()),
        )?;
        let sols = sys.homogeneous_kernel()?;
        let gens: Vec<Mat> = sols.into_iter().map(|mut s| s.swap_remove(0)).collect();

        let mut gens_vec = Mat::zero(ring.clone(), h * g, gens.len());
        for (j, gm) in gens.iter().enumerate() {
            let v = gm.vec_col_major();
            for i in 0..h * g {
                gens_vec.set(i, j, v.at(i, 0).clone());
            }
        }
        // Matrices defining the zero hom: columns of rels(target) placed in
        // every generator slot.
        let b = target.rels().cols();
        let mut triv = Mat::zero(ring.clone(), h * g, b * g);
        for c in 0..b {
            for l in 0..g {
                // vec of the matrix with rels(target).col(c) in column l.
                for i in 0..h {
                    triv.set(l * h + i, c * g + l, target.rels().at(i, c).clone());
                }
            }
        }
        let module = subquotient_presentation(&gens_vec, &triv)?;
        Ok(HomGroup {
            source: source.clone(),
            target: target.clone(),
            module,
            gens,
            gens_vec,
        })
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn invariants(&self) -> &InvariantFactors {
        self.module.invariants()
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// The hom matrix for an element of the hom module.
    pub fn decode_matrix(&self, coords: &Mat) -> Result<Mat> {
        if coords.rows() != self.gens.len() || coords.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "hom coords must be {}x1, got {}x{}",
                self.gens.len(),
                coords.rows(),
                coords.cols()
            )));
        }
        let ring = self.source.ring().clone();
        let mut acc = Mat::zero(ring, self.target.num_gens(), self.source.num_gens());
        for (j, g) in self.gens.iter().enumerate() {
            acc = acc.add(&g.scalar_mul(coords.at(j, 0)))?;
        }
        Ok(acc)
    }

    pub fn decode(&self, coords: &Mat) -> Result<ModuleHom> {
        ModuleHom::new(
            self.source.clone(),
            self.target.clone(),
            self.decode_matrix(coords)?,
        )
    }

    /// Coordinates of a hom matrix in the hom module's generators.
    pub fn encode_matrix(&self, mat: &Mat) -> Result<Mat> {
        if mat.rows() != self.target.num_gens() || mat.cols() != self.source.num_gens() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix must be {}x{}, got {}x{}",
                self.target.num_gens(),
                self.source.num_gens(),
                mat.rows(),
                mat.cols()
            )));
        }
        let v = mat.vec_col_major();
        match solve(&self.gens_vec, &v)? {
            Some(x) => Ok(x),
            None => Err(Error::CrossCheck(
                "matrix is a hom but lies outside the computed generator span".into(),
            )),
        }
    }

    pub fn encode(&self, f: &ModuleHom) -> Result<Mat> {
        self.encode_matrix(f.mat())
    }
}

/// The map Hom(A, B) -> Hom(A', B') sending f to post . f . pre, as a hom
/// of the presented hom modules.
pub fn induced_hom(
    from: &HomGroup,
    to: &HomGroup,
    pre: &ModuleHom,  // A' -> A
    post: &ModuleHom, // B -> B'
) -> Result<ModuleHom> {
    let s = from.num_gens();
    let t = to.num_gens();
    let ring = from.source.ring().clone();
    let mut mat = Mat::zero(ring, t, s);
    for j in 0..s {
        let pushed = post.mat().mul(&from.gens[j])?.mul(pre.mat())?;
        let coords = to.encode_matrix(&pushed)?;
        for i in 0..t {
            mat.set(i, j, coords.at(i, 0).clone());
        }
    }
    ModuleHom::new(from.module.clone(), to.module.clone(), mat)
}

/// The part of n built from primes dividing d: prod over p | d of p^(v_p(n)).
fn saturated_divisor(n: &BigInt, d: &BigInt) -> BigInt {
    let mut coprime = n.clone();
    loop {
        let g = coprime.gcd(d);
        if g.is_one() {
            break;
        }
        coprime /= g;
    }
    n / coprime
}

impl FpModule {
    /// Projectivity over the module's own ring. Over Z this means free; over
    /// Z/n a summand Z/d is projective exactly when d carries the full
    /// n-multiplicity of each of its primes, i.e. gcd(d, n/d) = 1.
    pub fn is_projective(&self) -> bool {
        match self.ring() {
            Ring::Z => self.invariants().torsion.is_empty(),
            Ring::Zmod(n) => self.invariants().torsion.iter().all(|d| {
                debug_assert!((n % d).is_zero(), "invariant factor must divide n");
                (n / d).gcd(d).is_one()
            }),
        }
    }

    /// Injectivity: over Z no nonzero finitely generated module is
    /// injective; Z/n is self-injective, making injective and projective
    /// coincide there.
    pub fn is_injective(&self) -> bool {
        match self.ring() {
            Ring::Z => self.is_zero_module(),
            Ring::Zmod(_) => self.is_projective(),
        }
    }

    /// A smallest injective module receiving this one, with the embedding:
    /// each invariant Z/d grows to Z/e, e the d-primary part of n, via
    /// multiplication by e/d. Only available over Z/n.
    pub fn injective_envelope(&self) -> Result<(FpModule, ModuleHom)> {
        let n = match self.ring() {
            Ring::Z => {
                return Err(Error::NoInjectiveCogenerator("Z".into()));
            }
            Ring::Zmod(n) => n.clone(),
        };
        let (_, to_min, _) = self.minimize()?;
        let ds = &self.invariants().torsion;
        let es: Vec<BigInt> = ds.iter().map(|d| saturated_divisor(&n, d)).collect();
        let envelope = FpModule::from_invariants(
            self.ring().clone(),
            &InvariantFactors {
                free_rank: 0,
                torsion: es.clone(),
            },
        )?;
        // diag(e_i / d_i) composed with the minimizing coordinate change.
        let k = ds.len();
        let mut scale = Mat::zero(self.ring().clone(), k, k);
        for i in 0..k {
            scale.set(i, i, &es[i] / &ds[i]);
        }
        let mat = scale.mul(to_min.mat())?;
        let embed = ModuleHom::new(self.clone(), envelope.clone(), mat)?;
        debug_assert!(embed.is_injective_hom()?);
        Ok((envelope, embed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_from_two_torsion_into_four_torsion() {
        // Hom(Z/2, Z/4) = Z/2, generated by multiplication by 2.
        let z2 = FpModule::cyclic(Ring::Z, 2);
        let z4 = FpModule::cyclic(Ring::Z, 4);
        let h = HomGroup::compute(&z2, &z4).unwrap();
        assert_eq!(h.invariants().to_string(), "Z/2");
    }

    #[test]
    fn hom_out_of_free_is_the_target() {
        let z = FpModule::free(Ring::Z, 1);
        let m = FpModule::cyclic(Ring::Z, 6);
        let h = HomGroup::compute(&z, &m).unwrap();
        assert_eq!(h.invariants().to_string(), "Z/6");
        let h2 = HomGroup::compute(&z, &FpModule::free(Ring::Z, 2)).unwrap();
        assert_eq!(h2.invariants().to_string(), "Z^2");
    }

    #[test]
    fn hom_respects_both_arguments() {
        // Hom(Z/6, Z/4) = Z/2 (gcd = 2).
        let h = HomGroup::compute(
            &FpModule::cyclic(Ring::Z, 6),
            &FpModule::cyclic(Ring::Z, 4),
        )
        .unwrap();
        assert_eq!(h.invariants().to_string(), "Z/2");
        // Over Z/4: Hom(Z/2 + Z/4, Z/4) = Z/2 + Z/4.
        let r = Ring::zmod(4).unwrap();
        let m = FpModule::cyclic(r.clone(), 2)
            .direct_sum(&FpModule::free(r.clone(), 1))
            .unwrap();
        let h = HomGroup::compute(&m, &FpModule::free(r, 1)).unwrap();
        assert_eq!(h.invariants().to_string(), "Z/2 ⊕ Z/4");
    }

    #[test]
    fn decode_and_encode_are_inverse() {
        let z2 = FpModule::cyclic(Ring::Z, 2);
        let z4 = FpModule::cyclic(Ring::Z, 4);
        let h = HomGroup::compute(&z2, &z4).unwrap();
        // Walk the elements of the hom module itself.
        for el in h.module().elements().unwrap() {
            let f = h.decode(&el).unwrap();
            let coords = h.encode(&f).unwrap();
            // Same element of the hom module.
            assert!(h.module().elements_equal(&el, &coords).unwrap());
        }
    }

    #[test]
    fn induced_restriction_map() {
        // Restricting Hom(Z/4, Z/4) along Z/2 -> Z/4 (x -> 2x) lands in
        // Hom(Z/2, Z/4); the induced map must be surjective since every
        // hom Z/2 -> Z/4 extends... it does here because id restricts to
        // the generator.
        let z2 = FpModule::cyclic(Ring::Z, 2);
        let z4 = FpModule::cyclic(Ring::Z, 4);
        let incl = ModuleHom::new(
            z2.clone(),
            z4.clone(),
            Mat::from_rows(Ring::Z, &[vec![2]]),
        )
        .unwrap();
        let h44 = HomGroup::compute(&z4, &z4).unwrap();
        let h24 = HomGroup::compute(&z2, &z4).unwrap();
        let res = induced_hom(&h44, &h24, &incl, &ModuleHom::identity(&z4)).unwrap();
        assert!(res.is_surjective_hom().unwrap());
    }

    #[test]
    fn projectivity_depends_on_the_ring() {
        let z4 = Ring::zmod(4).unwrap();
        let z6 = Ring::zmod(6).unwrap();
        assert!(!FpModule::cyclic(z4.clone(), 2).is_projective());
        assert!(FpModule::cyclic(z6.clone(), 2).is_projective());
        assert!(FpModule::free(z4.clone(), 3).is_projective());
        assert!(FpModule::free(Ring::Z, 2).is_projective());
        assert!(!FpModule::cyclic(Ring::Z, 2).is_projective());
        // Injective = projective over Z/n, never over Z (except 0).
        assert!(FpModule::free(z4, 1).is_injective());
        assert!(FpModule::cyclic(z6, 3).is_injective());
        assert!(!FpModule::free(Ring::Z, 1).is_injective());
        assert!(FpModule::zero_module(Ring::Z).is_injective());
    }

    #[test]
    fn envelope_of_two_torsion_mod_four() {
        let r = Ring::zmod(4).unwrap();
        let m = FpModule::cyclic(r, 2);
        let (e, embed) = m.injective_envelope().unwrap();
        assert_eq!(e.invariants().to_string(), "Z/4");
        assert!(e.is_injective());
        assert!(embed.is_injective_hom().unwrap());
        assert!(FpModule::free(Ring::Z, 1).injective_envelope().is_err());
    }

    #[test]
    fn envelope_over_a_composite_modulus() {
        // Over Z/12, Z/2 embeds in Z/4 (not Z/12): only the 2-part matters.
        let r = Ring::zmod(12).unwrap();
        let m = FpModule::cyclic(r.clone(), 2);
        let (e, _) = m.injective_envelope().unwrap();
        assert_eq!(e.invariants().to_string(), "Z/4");
        let m6 = FpModule::cyclic(r, 6);
        let (e6, embed) = m6.injective_envelope().unwrap();
        assert_eq!(e6.invariants().to_string(), "Z/12");
        assert!(embed.is_injective_hom().unwrap());
    }
}
