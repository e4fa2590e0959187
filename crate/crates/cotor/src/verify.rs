//! Named verification suites, shared between the command-line driver and
//! the integration gate.
//!
//! Every suite draws its own inputs from a seeded sampler, runs one family
//! of cross-checks, and returns a [`SuiteOutcome`] of recorded failures —
//! the caller decides how to print or gate on it. Positive controls are
//! always paired with negative ones where the mathematics allows: a suite
//! that can only ever pass is not evidence of anything.

use crate::approx::{
    cover_pipeline, envelope_pipeline, et_run_certified, random_disk_sum, EtStatus,
};
use crate::classes::{
    cogenerating_set, lifting_exactness_test, member_class, rhs_characterization, ClassOracle,
    ComplexClassId, PairSpec,
};
use crate::complex::{ChainComplex, ComplexSampler};
use crate::error::Result;
use crate::ext_ch::verify::{verify_disk_iso, verify_shift_iso, verify_sphere_iso};
use crate::ext_ch::{ext1_ch, perp_member, perp_witness};
use crate::linalg::{integer_smith, Mat};
use crate::module::{Ext1Module, FpModule};
use crate::oracles::oracle_ext_invariants;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

/// What one suite run observed.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    fn start(name: &'static str, seed: u64) -> (SuiteOutcome, Instant) {
        (
            SuiteOutcome {
                name,
                seed,
                cases: 0,
                failures: Vec::new(),
                notes: Vec::new(),
                elapsed: Duration::ZERO,
            },
            Instant::now(),
        )
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Multi-line human report: one status line, then notes and failures.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{:<14} seed={} cases={} time={:.2}s {}",
            self.name,
            self.seed,
            self.cases,
            self.elapsed.as_secs_f64(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for n in &self.notes {
            out.push_str(&format!("\n    note: {n}"));
        }
        for f in &self.failures {
            out.push_str(&format!("\n    fail: {f}"));
        }
        out
    }
}

fn z4() -> Ring {
    Ring::zmod(4).expect("4 is a valid modulus")
}

fn z6() -> Ring {
    Ring::zmod(6).expect("6 is a valid modulus")
}

/// Smith forms of seeded integer matrices: the decomposition must
/// reassemble (u a v = s with two-sided explicit inverses for u and v) and
/// the diagonal must be nonnegative with each entry dividing the next.
pub fn run_snf(trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("snf", seed);
    let mut rng = StdRng::seed_from_u64(seed);
    for t in 0..trials {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let mut a = Mat::zero(Ring::Z, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a.set(i, j, BigInt::from(rng.gen_range(-9i64..=9)));
            }
        }
        let d = integer_smith(&a)?;
        let mut complain = |what: &str| {
            out.failures
                .push(format!("trial {t} ({rows}x{cols}): {what}"))
        };
        if !d.u.mul(&a)?.mul(&d.v)?.sub(&d.s)?.is_zero() {
            complain("u a v != s");
        }
        let iu = Mat::identity(Ring::Z, rows);
        let iv = Mat::identity(Ring::Z, cols);
        if !d.u.mul(&d.u_inv)?.sub(&iu)?.is_zero() || !d.u_inv.mul(&d.u)?.sub(&iu)?.is_zero() {
            complain("u is not invertible over the integers");
        }
        if !d.v.mul(&d.v_inv)?.sub(&iv)?.is_zero() || !d.v_inv.mul(&d.v)?.sub(&iv)?.is_zero() {
            complain("v is not invertible over the integers");
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            let bad = if w[0].is_zero() {
                !w[1].is_zero()
            } else {
                w[0] < BigInt::zero() || !(&w[1] % &w[0]).is_zero()
            };
            if bad {
                complain(&format!("diagonal {:?} breaks the divisibility chain", diag));
                break;
            }
        }
        if let Some(last) = diag.last() {
            if last < &BigInt::zero() {
                complain("negative diagonal entry");
            }
        }
        out.cases += 1;
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// Extension groups of modules against an independent oracle: all ordered
/// pairs drawn from the isomorphism classes over Z/4 with at most eight
/// elements, computed once by presentations and once by factor sets.
pub fn run_ext_oracle(seed: u64) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("ext-oracle", seed);
    let r = z4();
    let z2 = FpModule::cyclic(r.clone(), 2);
    let free = FpModule::free(r.clone(), 1);
    let classes: Vec<(&str, FpModule)> = vec![
        ("0", FpModule::new(r.clone(), 0, Mat::zero(r.clone(), 0, 0))?),
        ("Z/2", z2.clone()),
        ("Z/4", free.clone()),
        ("Z/2^2", z2.direct_sum(&z2)?),
        ("Z/2+Z/4", z2.direct_sum(&free)?),
        ("Z/2^3", z2.direct_sum(&z2)?.direct_sum(&z2)?),
    ];
    let mut nonzero = 0;
    for (la, a) in &classes {
        for (lb, b) in &classes {
            let engine = Ext1Module::compute(a, b)?.module().invariants().clone();
            let oracle = oracle_ext_invariants(a, b)?;
            if engine != oracle {
                out.failures.push(format!(
                    "Ext({la}, {lb}): presentation route says {engine}, factor sets say {oracle}"
                ));
            }
            if !engine.is_zero() {
                nonzero += 1;
            }
            out.cases += 1;
        }
    }
    out.notes.push(format!("{nonzero} of {} pairs nonzero", out.cases));
    if nonzero == 0 {
        out.failures
            .push("every extension group vanished; the comparison is vacuous".into());
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// The shift dictionary: extension groups computed through the Hom complex
/// against an independent twisted-differential classification, across
/// random complexes over Z/4 and Z/6 and shifts -1, 0, 1.
pub fn run_shift_iso(cases: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("shift-iso", seed);
    let mut samplers = vec![
        ComplexSampler::new(z4(), seed).with_max_gens(max_gens),
        ComplexSampler::new(z6(), seed).with_max_gens(max_gens),
    ];
    'outer: loop {
        for sampler in samplers.iter_mut() {
            let x = sampler.random_complex(-1, 3)?;
            let y = sampler.random_complex(-1, 3)?;
            for n in [-1i64, 0, 1] {
                if out.cases >= cases {
                    break 'outer;
                }
                let rep = verify_shift_iso(&x, &y, n)?;
                if !rep.ok() {
                    out.failures.push(format!(
                        "over {} at shift {n}: {} vs {}",
                        sampler.ring(),
                        rep.left,
                        rep.right
                    ));
                }
                out.cases += 1;
            }
        }
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// Disk adjunctions: extensions out of a disk and into a disk against the
/// corresponding module-level extension groups, on random data over Z/4.
pub fn run_disk_iso(cases: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("disk-iso", seed);
    let mut sampler = ComplexSampler::new(z4(), seed).with_max_gens(max_gens);
    while out.cases < cases {
        let a = sampler.random_module()?;
        let c = sampler.random_complex(-1, 3)?;
        let n = sampler.below(4) as i64 - 1;
        let rep = verify_disk_iso(&a, n, &c)?;
        if !rep.ok() {
            out.failures.push(format!(
                "degree {n}: from-disk {} vs {}, onto-disk {} vs {}",
                rep.from_disk.left, rep.from_disk.right, rep.onto_disk.left, rep.onto_disk.right
            ));
        }
        out.cases += 1;
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// Sphere adjunction on exact sources: extensions into a sphere against
/// module-level extensions out of the boundary quotient, over Z/4.
pub fn run_sphere_iso(cases: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("sphere-iso", seed);
    let mut sampler = ComplexSampler::new(z4(), seed).with_max_gens(max_gens);
    while out.cases < cases {
        let u = sampler.random_exact_complex(-1, 4)?;
        let y = sampler.random_module()?;
        let n = sampler.below(4) as i64 - 1;
        let rep = verify_sphere_iso(&u, n, &y)?;
        if !rep.ok() {
            out.failures
                .push(format!("degree {n}: {} vs {}", rep.left, rep.right));
        }
        out.cases += 1;
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// Orthogonality by null-homotopy: sums of disks on free modules against
/// complexes built from disks and spheres-on-frees — extensions vanish and
/// sampled maps are null-homotopic. Then the negative control: replacing a
/// sphere-on-free with a sphere on Z/2 plants an extension that a disk
/// generator at the same degree must detect.
pub fn run_homotopy(positive: usize, corrupted: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("homotopy", seed);
    let r = z4();
    let z2 = FpModule::cyclic(r.clone(), 2);
    let mut sampler = ComplexSampler::new(r.clone(), seed).with_max_gens(max_gens);

    let spheres_on_frees =
        |sampler: &mut ComplexSampler, count: u64| -> Result<ChainComplex> {
            let mut acc = ChainComplex::zero(r.clone());
            for _ in 0..count {
                let m = sampler.below(3) as i64;
                let rank = 1 + sampler.below(2) as usize;
                acc = acc.direct_sum(&ChainComplex::sphere(m, &FpModule::free(r.clone(), rank)))?;
            }
            Ok(acc)
        };

    for i in 0..positive {
        let u = random_disk_sum(&mut sampler, (0, 2), 2)?;
        let disks = {
            let m = sampler.random_module()?;
            let n = sampler.below(3) as i64;
            ChainComplex::disk(n, &m)
        };
        let sphere_count = 1 + sampler.below(2);
        let w = disks.direct_sum(&spheres_on_frees(&mut sampler, sphere_count)?)?;
        if !ext1_ch(&u, &w)?.is_zero_group() {
            out.failures
                .push(format!("positive case {i}: extensions do not vanish"));
        }
        let rep = rhs_characterization(&w, &ClassOracle::All, &[u], seed ^ i as u64)?;
        if !rep.verdict.passed() {
            out.failures.push(format!(
                "positive case {i}: a sampled map is not null-homotopic ({:?})",
                rep.verdict
            ));
        }
        out.cases += 1;
    }

    for i in 0..corrupted {
        let m = sampler.below(3) as i64;
        let base = {
            let dm = sampler.random_module()?;
            let n = sampler.below(3) as i64;
            ChainComplex::disk(n, &dm)
        };
        let sphere_count = sampler.below(2);
        let w = base
            .direct_sum(&spheres_on_frees(&mut sampler, sphere_count)?)?
            .direct_sum(&ChainComplex::sphere(m, &z2))?;
        let probe = ChainComplex::disk(m, &z2);
        if ext1_ch(&probe, &w)?.is_zero_group() {
            out.failures.push(format!(
                "corrupted case {i}: the disk at degree {m} sees no extension"
            ));
        }
        let (lo, hi) = w.support().unwrap_or((0, 0));
        let family: Vec<ChainComplex> = (lo - 1..=hi + 1)
            .map(|n| ChainComplex::disk(n, &z2))
            .collect();
        if perp_witness(&w, &family)?.is_none() {
            out.failures.push(format!(
                "corrupted case {i}: no disk generator witnesses the corruption"
            ));
        }
        out.cases += 1;
    }
    out.notes
        .push(format!("{positive} positive, {corrupted} corrupted"));
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// Class-shape identities on a mixed corpus: exactness splits off the
/// degreewise condition, the combined shape factors into its axes, and
/// bounded exact complexes with projective (or injective) degrees have
/// projective (injective) cycles.
pub fn run_corpus(total: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("corpus", seed);
    let rings = [z4(), z6(), Ring::Z];
    let mut samplers: Vec<ComplexSampler> = rings
        .iter()
        .map(|r| ComplexSampler::new(r.clone(), seed).with_max_gens(max_gens))
        .collect();
    let mut exact_proj = 0usize;
    let mut exact_inj = 0usize;
    for i in 0..total {
        let sampler = &mut samplers[i % 3];
        let ring = sampler.ring().clone();
        let c = match i % 10 {
            0..=3 => sampler.random_complex(-1, 3)?,
            4 | 5 => sampler.random_exact_complex(-1, 3)?,
            6 | 7 => random_disk_sum(sampler, (0, 2), 2)?,
            8 => {
                let m = sampler.random_module()?;
                ChainComplex::sphere(sampler.below(3) as i64, &m)
            }
            _ => {
                let m = sampler.random_module()?;
                ChainComplex::disk(sampler.below(3) as i64, &m)
            }
        };
        let exact = c.is_exact()?;
        let all = ClassOracle::All;
        for (label, degree_class, cycle_class) in [
            ("projective", ClassOracle::Projective, ClassOracle::Projective),
            ("injective", ClassOracle::Injective, ClassOracle::Injective),
        ] {
            let dw = member_class(&c, ComplexClassId::Dw, &degree_class, &all)?.member;
            let ex = member_class(&c, ComplexClassId::Ex, &degree_class, &all)?.member;
            let tilde = member_class(&c, ComplexClassId::Tilde, &all, &cycle_class)?.member;
            let rel = member_class(&c, ComplexClassId::Rel, &degree_class, &cycle_class)?.member;
            if ex != (dw && exact) {
                out.failures.push(format!(
                    "case {i} over {ring}: {label} exact-shape disagrees with degreewise + exact"
                ));
            }
            if rel != (dw && tilde) {
                out.failures.push(format!(
                    "case {i} over {ring}: {label} combined shape does not factor into its axes"
                ));
            }
            if ex && !rel {
                out.failures.push(format!(
                    "case {i} over {ring}: bounded exact with {label} degrees but cycles fall outside"
                ));
            }
            if ex {
                if label == "projective" {
                    exact_proj += 1;
                } else {
                    exact_inj += 1;
                }
            }
        }
        out.cases += 1;
    }
    out.notes.push(format!(
        "antecedents hit: exact-projective {exact_proj}, exact-injective {exact_inj}"
    ));
    if exact_proj == 0 || exact_inj == 0 {
        out.failures
            .push("a cycle-shape implication was never exercised".into());
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// The cogenerating family does its job: orthogonality to the windowed
/// spheres-and-disks family coincides with being exact with injective
/// degrees, over Z/4 and Z/6.
pub fn run_cogenerators(per_ring: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("cogenerators", seed);
    for ring in [z4(), z6()] {
        let family = cogenerating_set(
            &PairSpec::projective_all(&ring),
            &PairSpec::all_injective(&ring)?,
            (0, 1),
        )?;
        let mut sampler = ComplexSampler::new(ring.clone(), seed).with_max_gens(max_gens);
        let z2 = FpModule::cyclic(ring.clone(), 2);
        let mut positives = 0usize;
        let mut negatives = 0usize;
        for i in 0..per_ring {
            let y = match i % 5 {
                0 | 1 => sampler.random_complex(0, 2)?,
                2 => sampler.random_exact_complex(0, 3)?,
                3 => random_disk_sum(&mut sampler, (0, 1), 2)?,
                _ => ChainComplex::disk(sampler.below(2) as i64, &z2),
            };
            let member = member_class(
                &y,
                ComplexClassId::Rel,
                &ClassOracle::Injective,
                &ClassOracle::All,
            )?
            .member;
            let perp = perp_member(&y, &family)?;
            if member != perp {
                out.failures.push(format!(
                    "case {i} over {ring}: shape membership {member} but family orthogonality {perp}"
                ));
            }
            if member {
                positives += 1;
            } else {
                negatives += 1;
            }
            out.cases += 1;
        }
        out.notes.push(format!(
            "over {ring}: {} generators, {positives} members, {negatives} non-members",
            family.len()
        ));
        if positives == 0 || negatives == 0 {
            out.failures
                .push(format!("over {ring}: the biconditional was one-sided"));
        }
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// Lifting against degree-collapse projections decides exactness: the
/// lifting test and the homology computation must agree on every sample,
/// with a healthy share of non-exact inputs.
pub fn run_lifting(cases: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("lifting", seed);
    let mut sampler = ComplexSampler::new(z4(), seed).with_max_gens(max_gens);
    let mut non_exact = 0usize;
    for i in 0..cases {
        let x = if i % 3 == 0 {
            sampler.random_exact_complex(-1, 3)?
        } else {
            sampler.random_complex(-1, 3)?
        };
        let rep = lifting_exactness_test(&x)?;
        if rep.lifts_all != rep.exact {
            out.failures.push(format!(
                "case {i}: lifts_all={} but exact={}",
                rep.lifts_all, rep.exact
            ));
        }
        if rep.lifts_all == rep.first_obstruction.is_some() {
            out.failures
                .push(format!("case {i}: obstruction bookkeeping is inconsistent"));
        }
        if !rep.exact {
            non_exact += 1;
        }
        out.cases += 1;
    }
    out.notes.push(format!("{non_exact} non-exact inputs"));
    if non_exact * 10 < cases * 3 {
        out.failures.push(format!(
            "only {non_exact} of {cases} inputs were non-exact; the test is one-sided"
        ));
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// The forward approximation pipeline on random complexes: every produced
/// row is short exact, every claim holds, and the final row really ends at
/// the input.
pub fn run_approx_forward(cases: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("approx-fwd", seed);
    let mut sampler = ComplexSampler::new(z4(), seed).with_max_gens(max_gens);
    for i in 0..cases {
        let c = sampler.random_complex(0, 3)?;
        let rep = cover_pipeline(&c, seed ^ i as u64)?;
        for seq in [
            &rep.precover.seq,
            &rep.cover_of_middle,
            &rep.first_row,
            &rep.final_row,
        ] {
            if let Err(e) = seq.validate() {
                out.failures.push(format!("case {i}: a row fails exactness: {e}"));
            }
        }
        for claim in rep.claims.iter().chain(
            rep.precover
                .claims
                .iter()
                .filter(|c| c.statement != "kernel is exact"),
        ) {
            if !claim.holds {
                out.failures
                    .push(format!("case {i}: claim failed: {}", claim.statement));
            }
        }
        if !rep.final_row.quot().same_presentation(&c) {
            out.failures
                .push(format!("case {i}: the final row does not end at the input"));
        }
        out.cases += 1;
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// The backward pipeline, honestly scored: the exactness and orthogonality
/// claims must hold; the projective-degrees claims on the pushout and the
/// envelope cokernel are tallied, since bounded middles often cannot
/// provide them.
pub fn run_approx_backward(cases: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("approx-bwd", seed);
    let mut sampler = ComplexSampler::new(z4(), seed).with_max_gens(max_gens);
    let mut degree_claims = 0usize;
    let mut degree_holds = 0usize;
    for i in 0..cases {
        let c = sampler.random_complex(0, 2)?;
        let rep = envelope_pipeline(&c, seed ^ i as u64)?;
        for seq in [&rep.precover.seq, &rep.envelope.seq, &rep.pushout_row] {
            if let Err(e) = seq.validate() {
                out.failures.push(format!("case {i}: a row fails exactness: {e}"));
            }
        }
        for claim in rep.claims.iter().chain(&rep.envelope.claims) {
            if claim.statement.contains("projective degrees") {
                degree_claims += 1;
                if claim.holds {
                    degree_holds += 1;
                }
            } else if !claim.holds {
                out.failures
                    .push(format!("case {i}: claim failed: {}", claim.statement));
            }
        }
        out.cases += 1;
    }
    out.notes.push(format!(
        "projective-degree claims held in {degree_holds} of {degree_claims} (bounded inputs cannot force them)"
    ));
    out.elapsed = t0.elapsed();
    Ok(out)
}

/// Extension runs against the windowed cogenerating family over Z/4: a
/// trivial input finishes in zero steps, and every completed run is
/// certified — final complex orthogonal to the family, filtration valid
/// with layers from the family.
pub fn run_et(runs: usize, seed: u64, max_gens: usize) -> Result<SuiteOutcome> {
    let (mut out, t0) = SuiteOutcome::start("et", seed);
    let r = z4();
    let family = cogenerating_set(
        &PairSpec::projective_all(&r),
        &PairSpec::all_injective(&r)?,
        (0, 2),
    )?;
    let mut sampler = ComplexSampler::new(r.clone(), seed).with_max_gens(max_gens);
    let mut completed = 0usize;
    let mut stalled = 0usize;
    for i in 0..runs {
        let y = if i == 0 {
            random_disk_sum(&mut sampler, (0, 2), 2)?
        } else {
            sampler.random_complex(0, 2)?
        };
        let (run, cert) = et_run_certified(&y, &family, 16, seed ^ i as u64)?;
        match run.status {
            EtStatus::Complete => {
                completed += 1;
                if !cert.perp {
                    out.failures.push(format!(
                        "run {i}: completed but the final complex is not orthogonal"
                    ));
                }
                if !cert.filtration.ok() {
                    out.failures.push(format!(
                        "run {i}: filtration invalid: {}",
                        cert.filtration.failures.join("; ")
                    ));
                }
                if i == 0 && cert.steps != 0 {
                    out.failures.push(format!(
                        "run 0: a disk sum should complete in zero steps, took {}",
                        cert.steps
                    ));
                }
            }
            EtStatus::MaxSteps => stalled += 1,
        }
        out.cases += 1;
    }
    out.notes
        .push(format!("{completed} completed, {stalled} hit the budget"));
    if completed * 3 < runs * 2 {
        out.failures.push(format!(
            "only {completed} of {runs} runs completed within budget"
        ));
    }
    out.elapsed = t0.elapsed();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_smith_sweep_passes() {
        let out = run_snf(60, 42).unwrap();
        assert!(out.passed(), "{}", out.render());
        assert_eq!(out.cases, 60);
    }

    #[test]
    fn ext_comparison_passes_and_is_not_vacuous() {
        let out = run_ext_oracle(42).unwrap();
        assert!(out.passed(), "{}", out.render());
        assert_eq!(out.cases, 36);
    }

    #[test]
    fn small_shift_sweep_passes() {
        let out = run_shift_iso(12, 42, 2).unwrap();
        assert!(out.passed(), "{}", out.render());
    }

    #[test]
    fn small_adjunction_sweeps_pass() {
        let disks = run_disk_iso(6, 42, 2).unwrap();
        assert!(disks.passed(), "{}", disks.render());
        let spheres = run_sphere_iso(6, 42, 2).unwrap();
        assert!(spheres.passed(), "{}", spheres.render());
    }

    #[test]
    fn small_homotopy_sweep_passes() {
        let out = run_homotopy(6, 4, 42, 2).unwrap();
        assert!(out.passed(), "{}", out.render());
        assert_eq!(out.cases, 10);
    }

    #[test]
    fn small_corpus_passes() {
        let out = run_corpus(40, 42, 2).unwrap();
        assert!(out.passed(), "{}", out.render());
    }

    #[test]
    fn small_cogenerator_sweep_passes() {
        let out = run_cogenerators(15, 42, 2).unwrap();
        assert!(out.passed(), "{}", out.render());
    }

    #[test]
    fn small_lifting_sweep_passes() {
        let out = run_lifting(12, 42, 2).unwrap();
        assert!(out.passed(), "{}", out.render());
    }

    #[test]
    fn small_approx_sweeps_pass() {
        let fwd = run_approx_forward(3, 42, 2).unwrap();
        assert!(fwd.passed(), "{}", fwd.render());
        let bwd = run_approx_backward(3, 42, 2).unwrap();
        assert!(bwd.passed(), "{}", bwd.render());
    }

    #[test]
    fn small_extension_run_sweep_passes() {
        let out = run_et(4, 42, 2).unwrap();
        assert!(out.passed(), "{}", out.render());
    }
}
