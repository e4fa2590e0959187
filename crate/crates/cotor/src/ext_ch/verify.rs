//! Cross-checks between independently computed extension groups.
//!
//! Each function here pits two different computation paths against each
//! other and reports whether the resulting groups agree. The left side of
//! [`verify_shift_iso`] classifies twisting families directly from a linear
//! system assembled on the spot — it shares no code with the hom-complex
//! machinery it is checked against.

use super::ext1_ch;
use crate::complex::{ChainComplex, HomComplex};
use crate::error::{Error, Result};
use crate::linalg::{Mat, MatVarSystem};
use crate::module::{subquotient_presentation, Ext1Module, FpModule, InvariantFactors};
use std::collections::BTreeMap;

/// Two invariant-factor lists that are supposed to agree.
#[derive(Debug, Clone)]
pub struct IsoReport {
    pub left: InvariantFactors,
    pub right: InvariantFactors,
}

impl IsoReport {
    pub fn ok(&self) -> bool {
        self.left == self.right
    }
}

/// Both halves of the disk comparison: maps out of a disk and into a disk.
#[derive(Debug, Clone)]
pub struct DiskIsoReport {
    pub from_disk: IsoReport,
    pub onto_disk: IsoReport,
}

impl DiskIsoReport {
    pub fn ok(&self) -> bool {
        self.from_disk.ok() && self.onto_disk.ok()
    }
}

/// Classify degreewise-split extensions of X by W directly: twisting
/// families sigma_n: X_n -> W_{n-1} with d_W sigma + sigma d_X = 0, modulo
/// the defect families d_W tau - tau d_X of arbitrary degree-0 collections
/// tau. Built from scratch so it can referee the hom-complex route.
fn classify_twists(x: &ChainComplex, w: &ChainComplex) -> Result<FpModule> {
    let ring = x.ring().clone();
    let shape = |j: i64| {
        (
            w.module(j - 1).num_gens(),
            x.module(j).num_gens(),
        )
    };
    let mut slots: Vec<i64> = Vec::new();
    if let (Some((xl, xh)), Some((wl, wh))) = (x.support(), w.support()) {
        for j in xl.max(wl + 1)..=xh.min(wh + 1) {
            let (r, c) = shape(j);
            if r > 0 && c > 0 {
                slots.push(j);
            }
        }
    }
    let total: usize = slots.iter().map(|&j| shape(j).0 * shape(j).1).sum();
    let vectorize = |fam: &BTreeMap<i64, Mat>| -> Mat {
        let mut v = Mat::zero(ring.clone(), total, 1);
        let mut off = 0;
        for &j in &slots {
            let (r, c) = shape(j);
            if let Some(m) = fam.get(&j) {
                let mv = m.vec_col_major();
                for i in 0..r * c {
                    v.set(off + i, 0, mv.at(i, 0).clone());
                }
            }
            off += r * c;
        }
        v
    };

    // Cycle system: hom conditions plus the twisted square at every degree.
    let mut sys = MatVarSystem::new(ring.clone());
    let mut vars = BTreeMap::new();
    for &j in &slots {
        let (r, c) = shape(j);
        let v = sys.add_var(r, c);
        vars.insert(j, v);
        let xm = x.module(j);
        let xrels = xm.rels();
        if xrels.cols() > 0 {
            sys.add_equation(
                vec![(v, Mat::identity(ring.clone(), r), xrels.clone())],
                vec![w.module(j - 1).rels().clone()],
                Mat::zero(ring.clone(), r, xrels.cols()),
            )?;
        }
    }
    if let Some((xl, xh)) = x.support() {
        for j in xl..=xh + 1 {
            let rows = w.module(j - 2).num_gens();
            let cols = x.module(j).num_gens();
            let mut terms = Vec::new();
            if let Some(&v) = vars.get(&j) {
                terms.push((
                    v,
                    w.diff(j - 1).mat().clone(),
                    Mat::identity(ring.clone(), cols),
                ));
            }
            if let Some(&v) = vars.get(&(j - 1)) {
                terms.push((v, Mat::identity(ring.clone(), rows), x.diff(j).mat().clone()));
            }
            if terms.is_empty() || rows == 0 || cols == 0 {
                continue;
            }
            sys.add_equation(
                terms,
                vec![w.module(j - 2).rels().clone()],
                Mat::zero(ring.clone(), rows, cols),
            )?;
        }
    }
    let cycle_sols = sys.homogeneous_kernel()?;
    let mut cycles = Mat::zero(ring.clone(), total, cycle_sols.len());
    for (col, sol) in cycle_sols.iter().enumerate() {
        let fam: BTreeMap<i64, Mat> = slots
            .iter()
            .enumerate()
            .map(|(k, &j)| (j, sol[k].clone()))
            .collect();
        let v = vectorize(&fam);
        for i in 0..total {
            cycles.set(i, col, v.at(i, 0).clone());
        }
    }

    // Trivial twists: entries drawn from the relations of W_{j-1}.
    let mut kill_cols: Vec<Mat> = Vec::new();
    for &j in &slots {
        let (r, c) = shape(j);
        let rels = w.module(j - 1).rels().clone();
        for rc in 0..rels.cols() {
            for l in 0..c {
                let mut m = Mat::zero(ring.clone(), r, c);
                for i in 0..r {
                    m.set(i, l, rels.at(i, rc).clone());
                }
                let mut fam = BTreeMap::new();
                fam.insert(j, m);
                kill_cols.push(vectorize(&fam));
            }
        }
    }

    // Defect twists: tau_j: X_j -> W_j arbitrary homs. Conjugating the
    // twisted differential by the triangular isomorphism [[1, tau], [0, 1]]
    // shifts the twist by d_W tau_j - tau_{j-1} d_X at slot j; mind the
    // relative sign, which matters away from characteristic two.
    let mut tau_sys = MatVarSystem::new(ring.clone());
    let mut tau_vars = BTreeMap::new();
    let mut tau_slots: Vec<i64> = Vec::new();
    if let (Some((xl, xh)), Some((wl, wh))) = (x.support(), w.support()) {
        for j in xl.max(wl)..=xh.min(wh) {
            let r = w.module(j).num_gens();
            let c = x.module(j).num_gens();
            if r == 0 || c == 0 {
                continue;
            }
            let v = tau_sys.add_var(r, c);
            tau_vars.insert(j, v);
            tau_slots.push(j);
            let xm = x.module(j);
            let xrels = xm.rels();
            if xrels.cols() > 0 {
                tau_sys.add_equation(
                    vec![(v, Mat::identity(ring.clone(), r), xrels.clone())],
                    vec![w.module(j).rels().clone()],
                    Mat::zero(ring.clone(), r, xrels.cols()),
                )?;
            }
        }
    }
    for tau in tau_sys.homogeneous_kernel()? {
        let get = |j: i64| -> Option<&Mat> {
            tau_slots
                .iter()
                .position(|&t| t == j)
                .map(|k| &tau[k])
        };
        let mut fam = BTreeMap::new();
        for &j in &slots {
            let (r, c) = shape(j);
            let mut m = Mat::zero(ring.clone(), r, c);
            if let Some(t) = get(j) {
                m = m.add(&w.diff(j).mat().mul(t)?)?;
            }
            if let Some(t) = get(j - 1) {
                m = m.sub(&t.mul(x.diff(j).mat())?)?;
            }
            fam.insert(j, m);
        }
        kill_cols.push(vectorize(&fam));
    }

    let mut kill = Mat::zero(ring.clone(), total, kill_cols.len());
    for (col, v) in kill_cols.iter().enumerate() {
        for i in 0..total {
            kill.set(i, col, v.at(i, 0).clone());
        }
    }
    subquotient_presentation(&cycles, &kill)
}

/// Compare the direct twist classification of extensions by the (-n-1)-fold
/// shift of Y against H_n of the hom complex. The two sides are the same
/// group whenever the shift/homology dictionary holds.
pub fn verify_shift_iso(x: &ChainComplex, y: &ChainComplex, n: i64) -> Result<IsoReport> {
    let w = y.shift(-n - 1);
    let left = classify_twists(x, &w)?.invariants().clone();
    let right = HomComplex::compute(x, y)?
        .homology(n)?
        .invariants()
        .clone();
    Ok(IsoReport { left, right })
}

/// Compare extensions involving a disk against module-level Ext in the
/// pinned degree: maps out of D^n(A) only see C_n, and maps into D^{n+1}(A)
/// only see C_n as well.
pub fn verify_disk_iso(a: &FpModule, n: i64, c: &ChainComplex) -> Result<DiskIsoReport> {
    let from = ext1_ch(&ChainComplex::disk(n, a), c)?
        .module()
        .invariants()
        .clone();
    let cn = c.module(n);
    let from_module = Ext1Module::compute(a, &cn)?.module().invariants().clone();
    let onto = ext1_ch(c, &ChainComplex::disk(n + 1, a))?
        .module()
        .invariants()
        .clone();
    let onto_module = Ext1Module::compute(&cn, a)?.module().invariants().clone();
    Ok(DiskIsoReport {
        from_disk: IsoReport {
            left: from,
            right: from_module,
        },
        onto_disk: IsoReport {
            left: onto,
            right: onto_module,
        },
    })
}

/// Compare extensions of an exact complex by a sphere against module-level
/// Ext out of the cokernel of the incoming differential. Exactness of the
/// source is what collapses the complex-level group to one degree, so
/// non-exact inputs are refused.
pub fn verify_sphere_iso(u: &ChainComplex, n: i64, y: &FpModule) -> Result<IsoReport> {
    if !u.is_exact()? {
        return Err(Error::Invalid(
            "sphere comparison needs an exact source complex".into(),
        ));
    }
    let left = ext1_ch(u, &ChainComplex::sphere(n, y))?
        .module()
        .invariants()
        .clone();
    let un = u.module(n);
    let coker = FpModule::new(
        u.ring().clone(),
        un.num_gens(),
        un.rels().hstack(u.diff(n + 1).mat())?,
    )?;
    let right = Ext1Module::compute(&coker, y)?.module().invariants().clone();
    Ok(IsoReport { left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexSampler;
    use crate::ring::Ring;

    #[test]
    fn shift_dictionary_on_adjacent_spheres() {
        // Hom(S^1(Z/2), S^0(Z/2)) over Z/4 has homology Z/2 in degree -1 and
        // nothing elsewhere; the twist classification must see the same.
        let r = Ring::zmod(4).unwrap();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let x = ChainComplex::sphere(1, &z2);
        let y = ChainComplex::sphere(0, &z2);
        let rep = verify_shift_iso(&x, &y, -1).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.left.to_string(), "Z/2");
        for n in [0, 1] {
            let rep = verify_shift_iso(&x, &y, n).unwrap();
            assert!(rep.ok());
            assert!(rep.left.is_zero());
        }
    }

    #[test]
    fn shift_dictionary_on_random_complexes() {
        for modulus in [4u64, 6] {
            let r = Ring::zmod(modulus).unwrap();
            let mut sampler = ComplexSampler::new(r, 17).with_max_gens(2);
            for _ in 0..3 {
                let x = sampler.random_complex(0, 2).unwrap();
                let y = sampler.random_complex(0, 2).unwrap();
                for n in [-1, 0, 1] {
                    assert!(verify_shift_iso(&x, &y, n).unwrap().ok());
                }
            }
        }
    }

    #[test]
    fn disk_comparison_on_random_complexes() {
        let r = Ring::zmod(4).unwrap();
        let mut sampler = ComplexSampler::new(r.clone(), 29).with_max_gens(2);
        let z2 = FpModule::cyclic(r, 2);
        for _ in 0..3 {
            let c = sampler.random_complex(0, 2).unwrap();
            for n in [0, 1] {
                assert!(verify_disk_iso(&z2, n, &c).unwrap().ok());
            }
        }
    }

    #[test]
    fn sphere_comparison_needs_exactness() {
        let r = Ring::zmod(4).unwrap();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let not_exact = ChainComplex::sphere(1, &z2);
        assert!(verify_sphere_iso(&not_exact, 0, &z2).is_err());

        let mut sampler = ComplexSampler::new(r, 31).with_max_gens(2);
        for _ in 0..3 {
            let u = sampler.random_exact_complex(0, 3).unwrap();
            for n in [0, 1, 2] {
                assert!(verify_sphere_iso(&u, n, &z2).unwrap().ok());
            }
        }
    }
}
