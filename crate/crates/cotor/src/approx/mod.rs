//! Approximation sequences: covers, envelopes, and the pullback/pushout
//! pipelines that manufacture special short exact sequences around a given
//! complex.
//!
//! Every produced sequence carries claims, and every claim says how it was
//! checked. Desk-scale inputs are bounded complexes of finitely presented
//! modules, and some textbook statements are simply not realizable there —
//! for instance, a bounded exact complex with projective degrees over Z/4
//! has even total length, so odd-length complexes admit no bounded
//! resolution of that shape. Rather than pretend, the claims record what
//! actually holds for the sequences built here.

pub mod filtration;

pub use filtration::{
    complexes_isomorphic, et_run, et_run_certified, et_step, validate_filtration, EtLogEntry,
    EtRun, EtStatus, EtStep, Filtration, FiltrationReport, RunCertificate,
};

use crate::classes::{member_class, ClassOracle, ComplexClassId};
use crate::complex::{
    cokernel_complex, disk_cocover, free_disk_precover, kernel_complex, ChShortExactSeq,
    ChainComplex, ChainMap, ComplexSampler,
};
use crate::error::Result;
use crate::ext_ch::{perp_witness, Ext1Ch};
use crate::linalg::Mat;
use crate::module::FpModule;
use std::collections::BTreeMap;

/// How a claim was established.
#[derive(Debug, Clone)]
pub enum Evidence {
    /// Decided exactly on the given complexes.
    Checked,
    /// Ext vanishing against a finite generator family.
    Generators { family: String, count: usize },
    /// Seeded random sampling.
    Sampled { count: usize },
}

/// One statement about a produced sequence, with its verdict.
#[derive(Debug, Clone)]
pub struct Claim {
    pub statement: String,
    pub evidence: Evidence,
    pub holds: bool,
}

impl Claim {
    fn checked(statement: &str, holds: bool) -> Claim {
        Claim {
            statement: statement.into(),
            evidence: Evidence::Checked,
            holds,
        }
    }
}

/// A short exact sequence of complexes together with the claims that make
/// it an approximation sequence, each labeled by its evidence.
#[derive(Debug, Clone)]
pub struct ApproxSequence {
    pub seq: ChShortExactSeq,
    pub claims: Vec<Claim>,
}

impl ApproxSequence {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

/// The family of disks on the rank-1 free module across a window.
fn free_disk_family(ring: &crate::ring::Ring, window: (i64, i64)) -> Vec<ChainComplex> {
    let free = FpModule::free(ring.clone(), 1);
    (window.0 - 1..=window.1 + 1)
        .map(|n| ChainComplex::disk(n, &free))
        .collect()
}

fn window_of(c: &ChainComplex) -> (i64, i64) {
    c.support().unwrap_or((0, 0))
}

/// Cover a complex by a finite sum of disks on free modules and wrap the
/// kernel sequence 0 -> V -> P -> C -> 0 in claims: the middle is exact
/// with projective degrees, and the kernel is orthogonal to the disk
/// family. Whether the kernel is itself exact is reported honestly — it
/// holds exactly when C is exact, so this is a full special precover only
/// for exact inputs.
pub fn special_precover_projective(c: &ChainComplex) -> Result<ApproxSequence> {
    let (p, pi) = free_disk_precover(c)?;
    let (v, incl) = kernel_complex(&pi)?;
    let seq = ChShortExactSeq::new(incl, pi)?;
    let mut claims = Vec::new();
    let mid = member_class(
        &p,
        ComplexClassId::Rel,
        &ClassOracle::Projective,
        &ClassOracle::All,
    )?;
    claims.push(Claim::checked(
        "middle is exact with projective degrees",
        mid.member,
    ));
    let disks = free_disk_family(c.ring(), window_of(c));
    claims.push(Claim {
        statement: "kernel is orthogonal to disks on free modules".into(),
        evidence: Evidence::Generators {
            family: "free disks".into(),
            count: disks.len(),
        },
        holds: perp_witness(&v, &disks)?.is_none(),
    });
    claims.push(Claim::checked("kernel is exact", v.is_exact()?));
    Ok(ApproxSequence { seq, claims })
}

/// Embed a complex into an exact complex of injectives (degreewise
/// injective envelopes stacked into disks) and report on the cokernel. The
/// sequence is 0 -> C -> E -> Q -> 0; whether Q has projective degrees is
/// reported, not assumed, since bounded middles often make it impossible.
pub fn special_preenvelope_exact(c: &ChainComplex) -> Result<ApproxSequence> {
    let (e, embed) = disk_cocover(c)?;
    let (q, proj) = cokernel_complex(&embed)?;
    let seq = ChShortExactSeq::new(embed, proj)?;
    let mut claims = Vec::new();
    claims.push(Claim::checked("middle is exact", e.is_exact()?));
    let mid_inj = member_class(
        &e,
        ComplexClassId::Dw,
        &ClassOracle::Injective,
        &ClassOracle::All,
    )?;
    claims.push(Claim::checked("middle has injective degrees", mid_inj.member));
    let q_proj = member_class(
        &q,
        ComplexClassId::Dw,
        &ClassOracle::Projective,
        &ClassOracle::All,
    )?;
    claims.push(Claim::checked(
        "cokernel has projective degrees",
        q_proj.member,
    ));
    Ok(ApproxSequence { seq, claims })
}

/// One full run of the forward pipeline: from a projective precover of C,
/// through a disk cover of its middle, two pullback rows later a sequence
/// 0 -> Y -> U' -> C -> 0 whose middle is exact with projective degrees.
#[derive(Debug, Clone)]
pub struct ForwardReport {
    /// 0 -> V -> U -> C -> 0, the starting precover.
    pub precover: ApproxSequence,
    /// 0 -> I -> E -> U -> 0, the disk cover of the middle.
    pub cover_of_middle: ChShortExactSeq,
    /// 0 -> X -> E -> C -> 0, the first composite row.
    pub first_row: ChShortExactSeq,
    /// 0 -> Y -> U' -> C -> 0, the final row.
    pub final_row: ChShortExactSeq,
    pub claims: Vec<Claim>,
}

impl ForwardReport {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

/// Composite row: given an epi chain map g: E -> C, build 0 -> ker g -> E -> C -> 0.
fn row_from_epi(g: &ChainMap) -> Result<ChShortExactSeq> {
    let (_, incl) = kernel_complex(g)?;
    ChShortExactSeq::new(incl, g.clone())
}

pub fn cover_pipeline(c: &ChainComplex, seed: u64) -> Result<ForwardReport> {
    let precover = special_precover_projective(c)?;
    let u = precover.seq.middle().clone();

    let (_, cover) = free_disk_precover(&u)?;
    let (i, i_incl) = kernel_complex(&cover)?;
    let cover_of_middle = ChShortExactSeq::new(i_incl, cover.clone())?;
    let e = cover.source().clone();

    // First row: E -> U -> C is epi, its kernel is the pullback row.
    let g1 = precover.seq.proj.compose(&cover)?;
    let first_row = row_from_epi(&g1)?;

    // The final row needs a middle that is exact with projective degrees.
    // A disk cover already is one, so the second cover only fires when
    // handed a middle that misses the class.
    let e_ok = member_class(
        &e,
        ComplexClassId::Rel,
        &ClassOracle::Projective,
        &ClassOracle::All,
    )?
    .member;
    let (u_prime, final_row, second_kernel_exact) = if e_ok {
        (e.clone(), first_row.clone(), i.is_exact()?)
    } else {
        let (vp, cover2) = {
            let (_, c2) = free_disk_precover(&e)?;
            (kernel_complex(&c2)?.0, c2)
        };
        let g2 = g1.compose(&cover2)?;
        let row = row_from_epi(&g2)?;
        (cover2.source().clone(), row, vp.is_exact()?)
    };
    let y = final_row.sub().clone();

    let mut claims = Vec::new();
    claims.push(Claim::checked("disk cover middle is exact", e.is_exact()?));
    let m = member_class(
        &u_prime,
        ComplexClassId::Rel,
        &ClassOracle::Projective,
        &ClassOracle::All,
    )?;
    claims.push(Claim::checked(
        "final middle is exact with projective degrees",
        m.member,
    ));
    claims.push(Claim::checked(
        "cover kernel is exact",
        second_kernel_exact,
    ));
    // Y against sampled members of the exact-with-projective-degrees class:
    // bounded members are finite disk sums, so sample such sums.
    let mut sampler = ComplexSampler::new(c.ring().clone(), seed);
    let mut all_vanish = true;
    let trials = 4;
    let (lo, hi) = window_of(c);
    for _ in 0..trials {
        let sample = random_disk_sum(&mut sampler, (lo, hi), 1)?;
        if !Ext1Ch::compute(&sample, &y)?.is_zero_group() {
            all_vanish = false;
            break;
        }
    }
    claims.push(Claim {
        statement: "final kernel is orthogonal to sampled exact projective-degree complexes"
            .into(),
        evidence: Evidence::Sampled { count: trials },
        holds: all_vanish,
    });
    Ok(ForwardReport {
        precover,
        cover_of_middle,
        first_row,
        final_row,
        claims,
    })
}

/// A random finite sum of disks on free modules inside a window.
pub fn random_disk_sum(
    sampler: &mut ComplexSampler,
    window: (i64, i64),
    rank: usize,
) -> Result<ChainComplex> {
    let ring = sampler.ring().clone();
    let mut acc = ChainComplex::zero(ring.clone());
    let span = (window.1 - window.0).max(0) as u64 + 1;
    for _ in 0..(1 + sampler.below(2)) {
        let n = window.0 + sampler.below(span) as i64;
        let r = 1 + sampler.below(rank as u64) as usize;
        let disk = ChainComplex::disk(n, &FpModule::free(ring.clone(), r));
        acc = acc.direct_sum(&disk)?;
    }
    Ok(acc)
}

/// The backward pipeline: precover C, push the kernel into an exact complex
/// of injectives, and check on the resulting H' = E the containment that
/// drives the argument — an exact complex orthogonal to the
/// exact-projective family is orthogonal to everything with projective
/// degrees.
#[derive(Debug, Clone)]
pub struct BackwardReport {
    /// 0 -> H -> G -> C -> 0, the starting precover.
    pub precover: ApproxSequence,
    /// 0 -> H -> E -> P -> 0, the envelope of the kernel.
    pub envelope: ApproxSequence,
    /// 0 -> E -> D -> C -> 0, the pushout row.
    pub pushout_row: ChShortExactSeq,
    pub claims: Vec<Claim>,
}

impl BackwardReport {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

pub fn envelope_pipeline(c: &ChainComplex, seed: u64) -> Result<BackwardReport> {
    let precover = special_precover_projective(c)?;
    let h = precover.seq.sub().clone();
    let envelope = special_preenvelope_exact(&h)?;
    let e = envelope.seq.middle().clone();

    // Pushout of G <- H -> E along the two inclusions gives the row
    // 0 -> E -> D -> C -> 0.
    let (d, _j_g, j_e) =
        crate::complex::pushout_complexes(&precover.seq.incl, &envelope.seq.incl)?;
    let ring = c.ring().clone();
    let mut proj_mats = BTreeMap::new();
    for &n in &d.degrees() {
        let pi_n = precover.seq.proj.component(n);
        let ge = e.module(n).num_gens();
        proj_mats.insert(
            n,
            pi_n.mat().hstack(&Mat::zero(ring.clone(), pi_n.mat().rows(), ge))?,
        );
    }
    let q = ChainMap::from_mats(d.clone(), c.clone(), proj_mats)?;
    let pushout_row = ChShortExactSeq::new(j_e, q)?;

    let mut claims = Vec::new();
    claims.push(Claim::checked("pushed-in complex is exact", e.is_exact()?));
    // The containment check on H' = E: orthogonal to the exact
    // projective-degree family, and then to everything with projective
    // degrees — spheres and disks on the base ring plus sampled complexes.
    let (lo, hi) = window_of(c);
    let free = FpModule::free(ring.clone(), 1);
    let mut dw_family: Vec<ChainComplex> = free_disk_family(&ring, (lo, hi));
    for n in lo - 1..=hi + 1 {
        dw_family.push(ChainComplex::sphere(n, &free));
    }
    let gen_ok = perp_witness(&e, &dw_family)?.is_none();
    claims.push(Claim {
        statement: "pushed-in complex is orthogonal to spheres and disks on the base ring".into(),
        evidence: Evidence::Generators {
            family: "spheres and disks on the base ring".into(),
            count: dw_family.len(),
        },
        holds: gen_ok,
    });
    let mut sampler = ComplexSampler::new(ring.clone(), seed).with_max_gens(2);
    let trials = 5;
    let mut sampled_ok = true;
    for _ in 0..trials {
        let u = random_projective_degrees(&mut sampler, (lo, hi))?;
        if !Ext1Ch::compute(&u, &e)?.is_zero_group() {
            sampled_ok = false;
            break;
        }
    }
    claims.push(Claim {
        statement: "pushed-in complex is orthogonal to sampled projective-degree complexes"
            .into(),
        evidence: Evidence::Sampled { count: trials },
        holds: sampled_ok,
    });
    let d_proj = member_class(
        &d,
        ComplexClassId::Dw,
        &ClassOracle::Projective,
        &ClassOracle::All,
    )?;
    claims.push(Claim::checked(
        "pushout middle has projective degrees",
        d_proj.member,
    ));
    Ok(BackwardReport {
        precover,
        envelope,
        pushout_row,
        claims,
    })
}

/// A random bounded complex whose degrees are free modules: differentials
/// are sampled from the solution space of d.d = 0 on free degrees.
pub fn random_projective_degrees(
    sampler: &mut ComplexSampler,
    window: (i64, i64),
) -> Result<ChainComplex> {
    sampler.random_free_complex(window.0, (window.1 - window.0).max(0) as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn z4() -> Ring {
        Ring::zmod(4).unwrap()
    }

    #[test]
    fn precover_claims_on_exact_and_inexact_inputs() {
        let r = z4();
        let z2 = FpModule::cyclic(r.clone(), 2);
        // Exact input: every claim holds, including kernel exactness.
        let exact = ChainComplex::disk(1, &z2);
        let a = special_precover_projective(&exact).unwrap();
        a.seq.validate().unwrap();
        assert!(a.all_hold());
        // Sphere input: the kernel keeps the homology one degree up, so the
        // kernel-exactness claim honestly fails while the rest hold.
        let s = ChainComplex::sphere(0, &z2);
        let b = special_precover_projective(&s).unwrap();
        b.seq.validate().unwrap();
        assert!(!b.claims.iter().find(|c| c.statement == "kernel is exact").unwrap().holds);
        assert!(b.claims[0].holds && b.claims[1].holds);
    }

    #[test]
    fn forward_pipeline_produces_the_advertised_rows() {
        let r = z4();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let c = ChainComplex::sphere(0, &z2).direct_sum(&ChainComplex::disk(1, &z2)).unwrap();
        let rep = cover_pipeline(&c, 42).unwrap();
        rep.precover.seq.validate().unwrap();
        rep.cover_of_middle.validate().unwrap();
        rep.first_row.validate().unwrap();
        rep.final_row.validate().unwrap();
        assert!(rep.all_hold());
        assert!(rep.final_row.quot().same_presentation(&c));
    }

    #[test]
    fn backward_pipeline_checks_the_containment() {
        let r = z4();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let c = ChainComplex::sphere(1, &z2);
        let rep = envelope_pipeline(&c, 42).unwrap();
        rep.precover.seq.validate().unwrap();
        rep.envelope.seq.validate().unwrap();
        rep.pushout_row.validate().unwrap();
        // The containment claims on the exact middle must hold; the
        // projective-degrees claim on the pushout is allowed to fail and
        // does for this input.
        for claim in &rep.claims {
            if claim.statement.contains("orthogonal") || claim.statement.contains("exact") {
                assert!(claim.holds, "claim failed: {}", claim.statement);
            }
        }
    }

    #[test]
    fn envelope_reports_honest_cokernel_degrees() {
        let r = z4();
        let z2 = FpModule::cyclic(r.clone(), 2);
        // S^0(Z/2) has odd total length over Z/4; no bounded exact complex
        // of frees can absorb it, and the cokernel claim records that.
        let rep = special_preenvelope_exact(&ChainComplex::sphere(0, &z2)).unwrap();
        rep.seq.validate().unwrap();
        assert!(rep.claims.iter().any(|c| c.statement.contains("middle is exact") && c.holds));
        assert!(!rep
            .claims
            .iter()
            .find(|c| c.statement.contains("cokernel"))
            .unwrap()
            .holds);
    }
}
