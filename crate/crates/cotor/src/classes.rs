//! Orthogonality classes of complexes: degreewise conditions, exactness,
//! cycle conditions, and the null-homotopy characterizations that identify
//! the two sides of a module-class pair lifted to complexes.

use crate::complex::{null_homotopy, ChainComplex, ChainMapModule, ComplexSampler};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::FpModule;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// A decidable class of modules. `FiniteList` means "isomorphic to one of
/// these", decided on invariant factors.
#[derive(Debug, Clone)]
pub enum ClassOracle {
    All,
    Zero,
    Projective,
    Injective,
    FiniteList(Vec<FpModule>),
}

impl ClassOracle {
    pub fn contains(&self, m: &FpModule) -> bool {
        match self {
            ClassOracle::All => true,
            ClassOracle::Zero => m.invariants().is_zero(),
            ClassOracle::Projective => m.is_projective(),
            ClassOracle::Injective => m.is_injective(),
            ClassOracle::FiniteList(list) => {
                list.iter().any(|x| x.invariants() == m.invariants())
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            ClassOracle::All => "all".into(),
            ClassOracle::Zero => "zero".into(),
            ClassOracle::Projective => "projective".into(),
            ClassOracle::Injective => "injective".into(),
            ClassOracle::FiniteList(l) => format!("one-of-{}", l.len()),
        }
    }
}

/// A module-class pair (left, right) together with the modules that
/// cogenerate it: Ext^1(A, -) = 0 for every listed A exactly cuts out the
/// right class.
#[derive(Debug, Clone)]
pub struct PairSpec {
    pub left: ClassOracle,
    pub right: ClassOracle,
    pub cogenerators: Vec<FpModule>,
}

impl PairSpec {
    /// (projectives, everything): cogenerated by the free module of rank 1.
    pub fn projective_all(ring: &Ring) -> PairSpec {
        PairSpec {
            left: ClassOracle::Projective,
            right: ClassOracle::All,
            cogenerators: vec![FpModule::free(ring.clone(), 1)],
        }
    }

    /// (everything, injectives) over Z/n: cogenerated by the cyclic modules
    /// on the divisors of n. Over Z the right class has no finitely
    /// generated cogenerators, so the constructor refuses.
    pub fn all_injective(ring: &Ring) -> Result<PairSpec> {
        let n = ring.modulus().ok_or_else(|| {
            Error::Invalid("the injective side needs a finite base ring".into())
        })?;
        let mut cogenerators = Vec::new();
        let mut d = BigInt::from(2);
        while &d <= n {
            if (n % &d).is_zero() {
                cogenerators.push(FpModule::cyclic(ring.clone(), d.clone()));
            }
            d += 1;
        }
        Ok(PairSpec {
            left: ClassOracle::All,
            right: ClassOracle::Injective,
            cogenerators,
        })
    }
}

/// Which class of complexes to test membership in, each cut out by some of:
/// degrees in a class, exactness, cycles in a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexClassId {
    /// Degrees only.
    Dw,
    /// Degrees and exactness.
    Ex,
    /// Exactness and cycles.
    Tilde,
    /// Exactness, degrees, and cycles.
    Rel,
}

/// What stopped a complex from belonging to a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassFailure {
    Degree(i64),
    Homology(i64),
    Cycles(i64),
}

impl std::fmt::Display for ClassFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassFailure::Degree(n) => write!(f, "degree {n} outside the class"),
            ClassFailure::Homology(n) => write!(f, "nonzero homology at degree {n}"),
            ClassFailure::Cycles(n) => write!(f, "cycles at degree {n} outside the class"),
        }
    }
}

/// Membership verdict with the earliest violation when there is one.
#[derive(Debug, Clone)]
pub struct Membership {
    pub member: bool,
    pub failure: Option<ClassFailure>,
}

/// Test a complex against a class shape. Conditions quantified over all
/// degrees are checked on the support widened by one on each side, which is
/// exhaustive for bounded complexes.
pub fn member_class(
    c: &ChainComplex,
    id: ComplexClassId,
    degree_class: &ClassOracle,
    cycle_class: &ClassOracle,
) -> Result<Membership> {
    let window: Vec<i64> = match c.support() {
        Some((lo, hi)) => (lo - 1..=hi + 1).collect(),
        None => Vec::new(),
    };
    let fail = |f: ClassFailure| Membership {
        member: false,
        failure: Some(f),
    };
    let wants_degrees = matches!(
        id,
        ComplexClassId::Dw | ComplexClassId::Ex | ComplexClassId::Rel
    );
    let wants_exact = matches!(
        id,
        ComplexClassId::Ex | ComplexClassId::Tilde | ComplexClassId::Rel
    );
    let wants_cycles = matches!(id, ComplexClassId::Tilde | ComplexClassId::Rel);
    for &n in &window {
        if wants_degrees && !degree_class.contains(&c.module(n)) {
            return Ok(fail(ClassFailure::Degree(n)));
        }
    }
    for &n in &window {
        if wants_exact && !c.homology(n)?.invariants().is_zero() {
            return Ok(fail(ClassFailure::Homology(n)));
        }
    }
    for &n in &window {
        if wants_cycles && !cycle_class.contains(&c.cycles(n)?.0) {
            return Ok(fail(ClassFailure::Cycles(n)));
        }
    }
    Ok(Membership {
        member: true,
        failure: None,
    })
}

/// Outcome of a null-homotopy characterization sweep.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// Every map in every hom set was checked.
    Pass,
    /// Hom sets too large to enumerate were checked on random samples.
    PassSampled,
    /// A genuine failure, with what broke.
    Fail(CharFailure),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Fail(_))
    }
}

#[derive(Debug, Clone)]
pub enum CharFailure {
    /// A degree landed outside the required module class.
    Degree(i64),
    /// Some chain map against family member `index` is not null homotopic.
    NotNullHomotopic { index: usize },
}

impl std::fmt::Display for CharFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharFailure::Degree(n) => write!(f, "degree {n} outside the class"),
            CharFailure::NotNullHomotopic { index } => {
                write!(f, "a map against family member {index} is not null homotopic")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharReport {
    pub verdict: Verdict,
    pub maps_checked: usize,
}

/// Hom sets of at most this many elements are enumerated outright; larger
/// ones are sampled.
const ENUMERATION_BOUND: u64 = 1 << 12;
const SAMPLES_PER_HOM_SET: usize = 64;

fn sweep_hom_set(
    maps: &ChainMapModule,
    index: usize,
    seed: u64,
    sampled: &mut bool,
    checked: &mut usize,
) -> Result<Option<CharFailure>> {
    let hom = maps.module();
    let order = hom.invariants().order();
    let enumerable = order
        .as_ref()
        .and_then(|o| o.to_u64())
        .map(|o| o <= ENUMERATION_BOUND)
        .unwrap_or(false);
    let coords_list: Vec<Mat> = if enumerable {
        hom.elements()?
    } else {
        *sampled = true;
        let mut sampler = ComplexSampler::new(hom.ring().clone(), seed ^ index as u64);
        (0..SAMPLES_PER_HOM_SET)
            .map(|_| sampler.random_coords(hom))
            .collect::<Result<_>>()?
    };
    for coords in coords_list {
        let f = maps.decode(&coords)?;
        *checked += 1;
        if null_homotopy(&f)?.is_none() {
            return Ok(Some(CharFailure::NotNullHomotopic { index }));
        }
    }
    Ok(None)
}

/// Is `w` in the right-hand class lifted to complexes? Checkable shape: all
/// degrees in the pair's right class, and every chain map from the supplied
/// family into `w` null homotopic. The family stands in for the full
/// left-hand class, so a pass is as strong as the family is representative.
pub fn rhs_characterization(
    w: &ChainComplex,
    degree_class: &ClassOracle,
    family: &[ChainComplex],
    seed: u64,
) -> Result<CharReport> {
    let window: Vec<i64> = match w.support() {
        Some((lo, hi)) => (lo - 1..=hi + 1).collect(),
        None => Vec::new(),
    };
    let mut checked = 0;
    for &n in &window {
        if !degree_class.contains(&w.module(n)) {
            return Ok(CharReport {
                verdict: Verdict::Fail(CharFailure::Degree(n)),
                maps_checked: checked,
            });
        }
    }
    let mut sampled = false;
    for (i, u) in family.iter().enumerate() {
        let maps = ChainMapModule::compute(u, w)?;
        if let Some(failure) = sweep_hom_set(&maps, i, seed, &mut sampled, &mut checked)? {
            return Ok(CharReport {
                verdict: Verdict::Fail(failure),
                maps_checked: checked,
            });
        }
    }
    Ok(CharReport {
        verdict: if sampled {
            Verdict::PassSampled
        } else {
            Verdict::Pass
        },
        maps_checked: checked,
    })
}

/// Mirror image of [`rhs_characterization`]: all degrees of `x` in the left
/// class, and every chain map from `x` into the supplied family null
/// homotopic.
pub fn lhs_characterization(
    x: &ChainComplex,
    degree_class: &ClassOracle,
    family: &[ChainComplex],
    seed: u64,
) -> Result<CharReport> {
    let window: Vec<i64> = match x.support() {
        Some((lo, hi)) => (lo - 1..=hi + 1).collect(),
        None => Vec::new(),
    };
    let mut checked = 0;
    for &n in &window {
        if !degree_class.contains(&x.module(n)) {
            return Ok(CharReport {
                verdict: Verdict::Fail(CharFailure::Degree(n)),
                maps_checked: checked,
            });
        }
    }
    let mut sampled = false;
    for (i, y) in family.iter().enumerate() {
        let maps = ChainMapModule::compute(x, y)?;
        if let Some(failure) = sweep_hom_set(&maps, i, seed, &mut sampled, &mut checked)? {
            return Ok(CharReport {
                verdict: Verdict::Fail(failure),
                maps_checked: checked,
            });
        }
    }
    Ok(CharReport {
        verdict: if sampled {
            Verdict::PassSampled
        } else {
            Verdict::Pass
        },
        maps_checked: checked,
    })
}

/// Result of the lifting test: whether every map to a sphere on the base
/// ring extends to the disk, side by side with direct exactness.
#[derive(Debug, Clone)]
pub struct LiftingReport {
    pub lifts_all: bool,
    pub exact: bool,
    pub first_obstruction: Option<i64>,
}

/// Over a self-injective base Z/n: X is exact iff every chain map
/// X -> S^n(R) lifts through D^n(R) -> S^n(R). Checking generators of each
/// chain-map group suffices because lifting is additive.
pub fn lifting_exactness_test(x: &ChainComplex) -> Result<LiftingReport> {
    if x.ring().modulus().is_none() {
        return Err(Error::Invalid(
            "the lifting test needs a self-injective base ring".into(),
        ));
    }
    let ring = x.ring().clone();
    let free = FpModule::free(ring.clone(), 1);
    let window: Vec<i64> = match x.support() {
        Some((lo, hi)) => (lo - 1..=hi + 1).collect(),
        None => Vec::new(),
    };
    let mut lifts_all = true;
    let mut first_obstruction = None;
    'outer: for &n in &window {
        let sphere = ChainComplex::sphere(n, &free);
        let disk = ChainComplex::disk(n, &free);
        let mut proj_mats = std::collections::BTreeMap::new();
        proj_mats.insert(n, Mat::identity(ring.clone(), 1));
        let p = crate::complex::ChainMap::from_mats(disk, sphere.clone(), proj_mats)?;
        let maps = ChainMapModule::compute(x, &sphere)?;
        for i in 0..maps.module().num_gens() {
            let mut e = Mat::zero(ring.clone(), maps.module().num_gens(), 1);
            e.set(i, 0, BigInt::one());
            let alpha = maps.decode(&e)?;
            if crate::complex::lift_through(&p, &alpha)?.is_none() {
                lifts_all = false;
                first_obstruction = Some(n);
                break 'outer;
            }
        }
    }
    Ok(LiftingReport {
        lifts_all,
        exact: x.is_exact()?,
        first_obstruction,
    })
}

/// The complex-level cogenerating family for a pair of module pairs:
/// spheres on the base ring force exactness, spheres on the first pair's
/// cogenerators control cycles, and disks on the second pair's cogenerators
/// control degrees. Degrees run over the window widened by one on each
/// side; zero complexes are dropped and duplicates merged.
pub fn cogenerating_set(
    pair_u: &PairSpec,
    pair_x: &PairSpec,
    window: (i64, i64),
) -> Result<Vec<ChainComplex>> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::Invalid(format!("window {lo}:{hi} is empty")));
    }
    let ring = match pair_u
        .cogenerators
        .first()
        .or(pair_x.cogenerators.first())
    {
        Some(m) => m.ring().clone(),
        None => return Ok(Vec::new()),
    };
    let free = FpModule::free(ring.clone(), 1);
    let mut out: Vec<ChainComplex> = Vec::new();
    let push = |c: ChainComplex, out: &mut Vec<ChainComplex>| {
        if c.is_zero_complex() {
            return;
        }
        if out.iter().any(|o| o.same_presentation(&c)) {
            return;
        }
        out.push(c);
    };
    for n in lo - 1..=hi + 1 {
        push(ChainComplex::sphere(n, &free), &mut out);
        for a in &pair_u.cogenerators {
            push(ChainComplex::sphere(n, a), &mut out);
        }
        for b in &pair_x.cogenerators {
            push(ChainComplex::disk(n, b), &mut out);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexSampler;

    fn z4() -> Ring {
        Ring::zmod(4).unwrap()
    }

    #[test]
    fn membership_shapes_agree_with_construction() {
        let r = z4();
        let free = FpModule::free(r.clone(), 1);
        let z2 = FpModule::cyclic(r.clone(), 2);
        let proj = ClassOracle::Projective;
        let all = ClassOracle::All;

        // A disk on a free module is exact with projective degrees.
        let d = ChainComplex::disk(1, &free);
        assert!(member_class(&d, ComplexClassId::Rel, &proj, &all)
            .unwrap()
            .member);

        // A sphere is not exact: the homology witness sits in its degree.
        let s = ChainComplex::sphere(0, &z2);
        let m = member_class(&s, ComplexClassId::Ex, &all, &all).unwrap();
        assert!(!m.member);
        assert_eq!(m.failure, Some(ClassFailure::Homology(0)));

        // A disk on Z/2 is exact but its degrees are not projective.
        let d2 = ChainComplex::disk(0, &z2);
        assert!(member_class(&d2, ComplexClassId::Ex, &all, &all)
            .unwrap()
            .member);
        let m = member_class(&d2, ComplexClassId::Dw, &proj, &all).unwrap();
        assert_eq!(m.failure, Some(ClassFailure::Degree(-1)));
    }

    #[test]
    fn cycle_condition_is_its_own_axis() {
        // The exact complex 0 -> Z/2 -> Z/4 -> Z/2 -> 0 has cycles Z/2 in
        // the middle: it fails a projective-cycles test but passes an
        // anything-cycles test.
        let r = z4();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let z4m = FpModule::free(r.clone(), 1);
        let incl = crate::module::ModuleHom::new(
            z2.clone(),
            z4m.clone(),
            Mat::from_rows(r.clone(), &[vec![2]]),
        )
        .unwrap();
        let proj = crate::module::ModuleHom::new(
            z4m.clone(),
            z2.clone(),
            Mat::from_rows(r.clone(), &[vec![1]]),
        )
        .unwrap();
        let c = ChainComplex::new(r, 0, vec![z2.clone(), z4m, z2], vec![proj, incl]).unwrap();
        assert!(c.is_exact().unwrap());
        let m = member_class(
            &c,
            ComplexClassId::Tilde,
            &ClassOracle::All,
            &ClassOracle::Projective,
        )
        .unwrap();
        assert_eq!(m.failure, Some(ClassFailure::Cycles(0)));
        assert!(member_class(
            &c,
            ComplexClassId::Tilde,
            &ClassOracle::All,
            &ClassOracle::All
        )
        .unwrap()
        .member);
    }

    #[test]
    fn characterization_rejects_bad_degrees_and_accepts_disks() {
        let r = z4();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let free = FpModule::free(r.clone(), 1);
        let family = vec![ChainComplex::disk(1, &free)];

        // S^0(Z/2) against an injective degree condition: Z/2 is not
        // injective over Z/4, so the degree check fails outright.
        let rep = rhs_characterization(
            &ChainComplex::sphere(0, &z2),
            &ClassOracle::Injective,
            &family,
            42,
        )
        .unwrap();
        assert!(matches!(rep.verdict, Verdict::Fail(CharFailure::Degree(0))));

        // A disk target passes: maps from disks-on-frees are always null
        // homotopic into anything with matching degrees in `All`.
        let rep = rhs_characterization(
            &ChainComplex::disk(1, &z2),
            &ClassOracle::All,
            &family,
            42,
        )
        .unwrap();
        assert!(rep.verdict.passed());
        assert!(rep.maps_checked > 0);
    }

    #[test]
    fn lifting_test_matches_exactness() {
        let r = z4();
        let mut sampler = ComplexSampler::new(r.clone(), 5).with_max_gens(2);
        let mut seen_exact = 0;
        let mut seen_inexact = 0;
        for _ in 0..6 {
            let x = sampler.random_complex(0, 2).unwrap();
            let rep = lifting_exactness_test(&x).unwrap();
            assert_eq!(rep.lifts_all, rep.exact);
            if rep.exact {
                seen_exact += 1;
            } else {
                seen_inexact += 1;
                assert!(rep.first_obstruction.is_some());
            }
        }
        for _ in 0..3 {
            let x = sampler.random_exact_complex(0, 2).unwrap();
            let rep = lifting_exactness_test(&x).unwrap();
            assert!(rep.lifts_all && rep.exact);
            seen_exact += 1;
        }
        assert!(seen_exact > 0 && seen_inexact > 0);
    }

    #[test]
    fn lifting_test_refuses_the_integers() {
        let x = ChainComplex::sphere(0, &FpModule::free(Ring::Z, 1));
        assert!(lifting_exactness_test(&x).is_err());
    }

    #[test]
    fn cogenerating_family_over_z4() {
        // Window [0, 1] inflated to [-1, 2]: spheres on Z/4 in four degrees,
        // disks on Z/2 and Z/4 in four degrees, nothing on the zero module,
        // no duplicates.
        let r = z4();
        let pu = PairSpec::projective_all(&r);
        let px = PairSpec::all_injective(&r).unwrap();
        let fam = cogenerating_set(&pu, &px, (0, 1)).unwrap();
        let spheres = fam
            .iter()
            .filter(|c| c.degrees().iter().filter(|&&n| !c.module(n).invariants().is_zero()).count() == 1)
            .count();
        assert_eq!(spheres, 4);
        assert_eq!(fam.len(), 12);
        let px_z = PairSpec::all_injective(&Ring::Z);
        assert!(px_z.is_err());
    }
}
