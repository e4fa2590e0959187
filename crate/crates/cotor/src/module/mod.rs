//! Finitely presented modules over Z and Z/n.
//!
//! A module is a cokernel presentation R^g / col-span(rels). On construction
//! the presentation is put in diagonal form once (Smith reduction of the
//! relation matrix, with n*I adjoined over Z/n), which yields the invariant
//! factors together with an explicit change of coordinates. Everything
//! downstream — element canonicalization, equality, enumeration, counting —
//! reads off that cached data.

mod ext;
mod hom_group;
mod maps;

pub use ext::{Ext1Module, ShortExactSeq};
pub use hom_group::{induced_hom, HomGroup};
pub use maps::{direct_sum_maps, ModuleHom};

use crate::error::{Error, Result};
use crate::linalg::{integer_smith, Mat};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// Isomorphism type of a finitely generated module: free rank plus torsion
/// invariant factors d1 | d2 | ... (each >= 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl InvariantFactors {
    pub fn zero() -> InvariantFactors {
        InvariantFactors {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of elements, None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }
}

impl fmt::Display for InvariantFactors {
    /// Canonical names: "0", "Z", "Z^3", "Z/4", "Z ⊕ Z/2 ⊕ Z/4" — free part
    /// first, torsion in divisibility order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Row index into diagonal coordinates together with the order of that
/// coordinate: d >= 2 for a torsion coordinate, d = 0 for a free one.
type DiagPosition = (usize, BigInt);

/// A finitely presented module R^g / col-span(rels).
#[derive(Debug, Clone)]
pub struct FpModule {
    ring: Ring,
    rels: Mat, // g x r, columns are relations among the g generators
    inv: InvariantFactors,
    to_diag: Mat,   // g x g: generator coords -> diagonal coords
    from_diag: Mat, // g x g: inverse change of coordinates
    positions: Vec<DiagPosition>,
}

impl FpModule {
    pub fn new(ring: Ring, num_gens: usize, rels: Mat) -> Result<FpModule> {
        ring.expect_same(rels.ring(), "module presentation")?;
        if rels.rows() != num_gens {
            return Err(Error::DimensionMismatch(format!(
                "presentation with {num_gens} generators but {} relation rows",
                rels.rows()
            )));
        }
        let (inv, to_diag, from_diag, positions) = canonical_data(&ring, num_gens, &rels)?;
        Ok(FpModule {
            ring,
            rels,
            inv,
            to_diag,
            from_diag,
            positions,
        })
    }

    /// The free module R^k.
    pub fn free(ring: Ring, k: usize) -> FpModule {
        let rels = Mat::zero(ring.clone(), k, 0);
        FpModule::new(ring, k, rels).expect("free presentation is well formed")
    }

    /// The cyclic module R/(d).
    pub fn cyclic(ring: Ring, d: impl Into<BigInt>) -> FpModule {
        let rels = Mat::new(ring.clone(), 1, 1, vec![d.into()]).expect("1x1");
        FpModule::new(ring, 1, rels).expect("cyclic presentation is well formed")
    }

    pub fn zero_module(ring: Ring) -> FpModule {
        FpModule::free(ring, 0)
    }

    /// Module with the given isomorphism type, presented diagonally.
    pub fn from_invariants(ring: Ring, inv: &InvariantFactors) -> Result<FpModule> {
        if ring != Ring::Z && inv.free_rank > 0 {
            return Err(Error::Invalid(format!(
                "free rank over {ring} is not a finitely generated torsion module"
            )));
        }
        let g = inv.free_rank + inv.torsion.len();
        let mut rels = Mat::zero(ring.clone(), g, inv.torsion.len());
        for (j, d) in inv.torsion.iter().enumerate() {
            // Torsion coordinates first so that Smith order is preserved.
            rels.set(j, j, d.clone());
        }
        FpModule::new(ring, g, rels)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn num_gens(&self) -> usize {
        self.rels.rows()
    }

    pub fn rels(&self) -> &Mat {
        &self.rels
    }

    pub fn invariants(&self) -> &InvariantFactors {
        &self.inv
    }

    pub fn is_zero_module(&self) -> bool {
        self.inv.is_zero()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.inv.order()
    }

    /// Canonical coordinates of an element given in generator coordinates:
    /// one entry per torsion invariant (reduced mod its order, in divisibility
    /// order) followed by one per free coordinate. Equal elements of the
    /// module get identical canonical forms.
    pub fn canonical_form(&self, x: &Mat) -> Result<Vec<BigInt>> {
        if x.rows() != self.num_gens() || x.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "element must be {}x1, got {}x{}",
                self.num_gens(),
                x.rows(),
                x.cols()
            )));
        }
        self.ring.expect_same(x.ring(), "element")?;
        let y = self.to_diag.mul(x)?;
        Ok(self
            .positions
            .iter()
            .map(|(i, d)| {
                if d.is_zero() {
                    y.at(*i, 0).clone()
                } else {
                    y.at(*i, 0).mod_floor(d)
                }
            })
            .collect())
    }

    /// Generator-coordinate representative of the given canonical form.
    pub fn element_from_canonical(&self, coords: &[BigInt]) -> Result<Mat> {
        if coords.len() != self.positions.len() {
            return Err(Error::DimensionMismatch(format!(
                "canonical form has {} coordinates, got {}",
                self.positions.len(),
                coords.len()
            )));
        }
        let mut y = Mat::zero(self.ring.clone(), self.num_gens(), 1);
        for ((i, _), c) in self.positions.iter().zip(coords) {
            y.set(*i, 0, c.clone());
        }
        self.from_diag.mul(&y)
    }

    pub fn element_is_zero(&self, x: &Mat) -> Result<bool> {
        Ok(self.canonical_form(x)?.iter().all(|c| c.is_zero()))
    }

    pub fn elements_equal(&self, x: &Mat, y: &Mat) -> Result<bool> {
        Ok(self.canonical_form(x)? == self.canonical_form(y)?)
    }

    /// Additive order of an element: None when infinite.
    pub fn element_order(&self, x: &Mat) -> Result<Option<BigInt>> {
        let form = self.canonical_form(x)?;
        let mut ord = BigInt::one();
        for ((_, d), c) in self.positions.iter().zip(&form) {
            if d.is_zero() {
                if !c.is_zero() {
                    return Ok(None);
                }
            } else if !c.is_zero() {
                let o = d / d.gcd(c);
                ord = ord.lcm(&o);
            }
        }
        Ok(Some(ord))
    }

    /// Every element, in generator coordinates. Errors when the module is
    /// infinite; intended for brute-force checks on small modules.
    pub fn elements(&self) -> Result<Vec<Mat>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Invalid("cannot enumerate an infinite module".into()))?;
        let order: usize = order
            .try_into()
            .map_err(|_| Error::Invalid("module too large to enumerate".into()))?;
        let mut out = Vec::with_capacity(order);
        let k = self.positions.len();
        let radix: Vec<BigInt> = self.positions.iter().map(|(_, d)| d.clone()).collect();
        let mut counter = vec![BigInt::zero(); k];
        loop {
            out.push(self.element_from_canonical(&counter)?);
            // Mixed-radix increment.
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(out);
                }
                counter[i] += 1;
                if counter[i] < radix[i] {
                    break;
                }
                counter[i] = BigInt::zero();
                i += 1;
            }
        }
    }

    /// Direct sum, generators of `self` first.
    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        self.ring.expect_same(&other.ring, "direct sum")?;
        let rels = Mat::block_diag(self.ring.clone(), &[&self.rels, &other.rels])?;
        FpModule::new(self.ring.clone(), self.num_gens() + other.num_gens(), rels)
    }

    /// Minimal presentation of the same module: one generator per nonzero
    /// invariant, diagonal relations. Returns (minimal module, to, from)
    /// where `to` and `from` are mutually inverse isomorphisms.
    pub fn minimize(&self) -> Result<(FpModule, ModuleHom, ModuleHom)> {
        let ring = self.ring.clone();
        let small = FpModule::from_invariants(
            ring,
            &InvariantFactors {
                free_rank: self.inv.free_rank,
                torsion: self.inv.torsion.clone(),
            },
        )?;
        // from_invariants lays out torsion coordinates before free ones,
        // matching the order of `positions`.
        let k = self.positions.len();
        let mut to_mat = Mat::zero(self.ring.clone(), k, self.num_gens());
        let mut from_mat = Mat::zero(self.ring.clone(), self.num_gens(), k);
        for (row, (i, _)) in self.positions.iter().enumerate() {
            for j in 0..self.num_gens() {
                to_mat.set(row, j, self.to_diag.at(*i, j).clone());
                from_mat.set(j, row, self.from_diag.at(j, *i).clone());
            }
        }
        let to = ModuleHom::new(self.clone(), small.clone(), to_mat)?;
        let from = ModuleHom::new(small.clone(), self.clone(), from_mat)?;
        debug_assert!(to.compose(&from)?.is_identity()?);
        debug_assert!(from.compose(&to)?.is_identity()?);
        Ok((small, to, from))
    }
}

/// Diagonalize a presentation. Returns invariant factors, the coordinate
/// change U (generator coords -> diagonal coords), its inverse, and the rows
/// of the diagonal coordinates that survive (torsion then free).
fn canonical_data(
    ring: &Ring,
    num_gens: usize,
    rels: &Mat,
) -> Result<(InvariantFactors, Mat, Mat, Vec<DiagPosition>)> {
    let lift = Mat::new(
        Ring::Z,
        rels.rows(),
        rels.cols(),
        (0..rels.rows())
            .flat_map(|i| (0..rels.cols()).map(move |j| rels.at(i, j).clone()))
            .collect(),
    )?;
    let work = match ring {
        Ring::Z => lift,
        Ring::Zmod(n) => {
            let n_block = Mat::identity(Ring::Z, num_gens).scalar_mul(n);
            lift.hstack(&n_block)?
        }
    };
    let dec = integer_smith(&work)?;
    let diag = dec.diagonal();
    let mut torsion = Vec::new();
    let mut positions = Vec::new();
    let mut free_positions = Vec::new();
    for i in 0..num_gens {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            free_positions.push((i, BigInt::zero()));
        } else if !d.is_one() {
            torsion.push(d.clone());
            positions.push((i, d));
        }
    }
    let free_rank = free_positions.len();
    positions.extend(free_positions);
    let inv = InvariantFactors { free_rank, torsion };
    let reduce = |m: &Mat| {
        Mat::new(
            ring.clone(),
            m.rows(),
            m.cols(),
            (0..m.rows())
                .flat_map(|i| (0..m.cols()).map(move |j| m.at(i, j).clone()))
                .collect(),
        )
        .expect("shape preserved")
    };
    Ok((inv, reduce(&dec.u), reduce(&dec.u_inv), positions))
}

/// Present the subquotient (span(gens) + span(subs)) / span(subs) of the
/// ambient free module R^a, where `gens` and `subs` are a x s and a x t
/// column collections. Generator j of the result maps to gens.col(j).
pub(crate) fn subquotient_presentation(gens: &Mat, subs: &Mat) -> Result<FpModule> {
    gens.ring().expect_same(subs.ring(), "subquotient")?;
    if gens.rows() != subs.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subquotient ambient ranks differ: {} vs {}",
            gens.rows(),
            subs.rows()
        )));
    }
    let stacked = gens.hstack(subs)?;
    let k = crate::linalg::kernel_gens(&stacked)?;
    let rels = k.submatrix(0, gens.cols(), 0, k.cols());
    FpModule::new(gens.ring().clone(), gens.cols(), rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_a_twisted_presentation() {
        // Z^2 / <(2,0),(0,3)> has invariant factors 1 | 6, i.e. Z/6.
        let rels = Mat::from_rows(Ring::Z, &[vec![2, 0], vec![0, 3]]);
        let m = FpModule::new(Ring::Z, 2, rels).unwrap();
        assert_eq!(m.invariants().to_string(), "Z/6");
        assert_eq!(m.order(), Some(BigInt::from(6)));
    }

    #[test]
    fn free_and_mixed_display() {
        let m = FpModule::free(Ring::Z, 2);
        assert_eq!(m.invariants().to_string(), "Z^2");
        let rels = Mat::from_rows(Ring::Z, &[vec![0], vec![4], vec![0]]);
        let m = FpModule::new(Ring::Z, 3, rels).unwrap();
        assert_eq!(m.invariants().to_string(), "Z^2 ⊕ Z/4");
        assert_eq!(m.order(), None);
        assert_eq!(FpModule::zero_module(Ring::Z).invariants().to_string(), "0");
    }

    #[test]
    fn mod_ring_presentations_account_for_the_modulus() {
        let r = Ring::zmod(4).unwrap();
        // (Z/4)^1 with no relations is Z/4 itself.
        let m = FpModule::free(r.clone(), 1);
        assert_eq!(m.invariants().to_string(), "Z/4");
        // (Z/4)/(2) = Z/2.
        let m = FpModule::cyclic(r.clone(), 2);
        assert_eq!(m.invariants().to_string(), "Z/2");
        // (Z/4)/(0) stays Z/4; relation 4 is already zero.
        let m = FpModule::cyclic(r, 4);
        assert_eq!(m.invariants().to_string(), "Z/4");
    }

    #[test]
    fn canonical_forms_identify_equal_elements() {
        // Z/6 presented on two generators.
        let rels = Mat::from_rows(Ring::Z, &[vec![2, 0], vec![0, 3]]);
        let m = FpModule::new(Ring::Z, 2, rels).unwrap();
        // (1, 0) has order 2 and (0, 1) has order 3 in this presentation.
        let e1 = Mat::from_rows(Ring::Z, &[vec![1], vec![0]]);
        let e2 = Mat::from_rows(Ring::Z, &[vec![0], vec![1]]);
        assert_eq!(m.element_order(&e1).unwrap(), Some(BigInt::from(2)));
        assert_eq!(m.element_order(&e2).unwrap(), Some(BigInt::from(3)));
        // 3*(e1) = (3,0) ~ (1,0) since (2,0) is a relation.
        let three_e1 = Mat::from_rows(Ring::Z, &[vec![3], vec![0]]);
        assert!(m.elements_equal(&e1, &three_e1).unwrap());
        assert!(!m.elements_equal(&e1, &e2).unwrap());
        // Round trip through canonical coordinates.
        let c = m.canonical_form(&e2).unwrap();
        let back = m.element_from_canonical(&c).unwrap();
        assert!(m.elements_equal(&e2, &back).unwrap());
    }

    #[test]
    fn enumeration_matches_order() {
        let r = Ring::zmod(4).unwrap();
        let m = FpModule::free(r.clone(), 1)
            .direct_sum(&FpModule::cyclic(r, 2))
            .unwrap();
        assert_eq!(m.invariants().to_string(), "Z/2 ⊕ Z/4");
        let els = m.elements().unwrap();
        assert_eq!(els.len(), 8);
        // All distinct as module elements.
        for (i, x) in els.iter().enumerate() {
            for y in &els[i + 1..] {
                assert!(!m.elements_equal(x, y).unwrap());
            }
        }
        assert!(FpModule::free(Ring::Z, 1).elements().is_err());
    }

    #[test]
    fn minimize_shrinks_generators() {
        // Z/6 on two generators minimizes to one generator.
        let rels = Mat::from_rows(Ring::Z, &[vec![2, 0], vec![0, 3]]);
        let m = FpModule::new(Ring::Z, 2, rels).unwrap();
        let (small, to, from) = m.minimize().unwrap();
        assert_eq!(small.num_gens(), 1);
        assert_eq!(small.invariants(), m.invariants());
        assert!(to.compose(&from).unwrap().is_identity().unwrap());
        assert!(from.compose(&to).unwrap().is_identity().unwrap());
    }

    #[test]
    fn subquotient_presents_two_torsion_inside_z4() {
        // Inside (Z/4)^1: span{2}/0 is Z/2.
        let r = Ring::zmod(4).unwrap();
        let gens = Mat::from_rows(r.clone(), &[vec![2]]);
        let subs = Mat::zero(r, 1, 0);
        let m = subquotient_presentation(&gens, &subs).unwrap();
        assert_eq!(m.invariants().to_string(), "Z/2");
    }
}
