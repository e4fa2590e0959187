//! Transfinite-style extension runs at finite scale, and the filtrations
//! they leave behind.
//!
//! Starting from a complex Y and a finite generator family S, each step
//! picks the first generator with a nonzero extension group against the
//! current complex, realizes the first nonzero class as a short exact
//! sequence 0 -> Y -> Y' -> s -> 0, and continues from the middle. A step
//! is only accepted when it strictly shrinks the extension group it came
//! from; that monotone rule is what forces termination instead of hoping
//! for it. A finished run certifies its result two ways: the final complex
//! is orthogonal to all of S, and the chain of quotients-by-Y forms a
//! filtration whose layers are copies of members of S.

use crate::complex::{
    cokernel_complex, ChShortExactSeq, ChainComplex, ChainMap, ChainMapModule, ComplexSampler,
};
use crate::error::{Error, Result};
use crate::ext_ch::{perp_member, Ext1Ch};
use crate::linalg::Mat;
use crate::module::FpModule;
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// One accepted extension step.
#[derive(Debug, Clone)]
pub struct EtStep {
    /// Index into the generator family of the obstructing complex.
    pub generator: usize,
    /// 0 -> Y -> Y' -> s -> 0 realizing the chosen class.
    pub seq: ChShortExactSeq,
    /// Order of the obstructing extension group (None = infinite).
    pub order: Option<BigInt>,
}

/// The first available step: scan the family in order, stop at the first
/// generator with nonzero extensions, and realize its first nonzero class.
/// None means Y is already orthogonal to the whole family.
pub fn et_step(y: &ChainComplex, family: &[ChainComplex]) -> Result<Option<EtStep>> {
    candidate_step(y, family, 0)
}

fn candidate_step(
    y: &ChainComplex,
    family: &[ChainComplex],
    start: usize,
) -> Result<Option<EtStep>> {
    for (i, s) in family.iter().enumerate().skip(start) {
        let ext = Ext1Ch::compute(s, y)?;
        if ext.is_zero_group() {
            continue;
        }
        let class = first_nonzero_element(ext.module())?;
        let order = ext_order(&ext);
        let seq = ext.decode(&class)?;
        return Ok(Some(EtStep {
            generator: i,
            seq,
            order,
        }));
    }
    Ok(None)
}

/// First nonzero element in the module's own enumeration order, falling
/// back to generator unit vectors when the module is infinite.
fn first_nonzero_element(m: &FpModule) -> Result<Mat> {
    if m.invariants().order().is_some() {
        for el in m.elements()? {
            if !m.element_is_zero(&el)? {
                return Ok(el);
            }
        }
    } else {
        for i in 0..m.num_gens() {
            let mut e = Mat::zero(m.ring().clone(), m.num_gens(), 1);
            e.set(i, 0, BigInt::from(1));
            if !m.element_is_zero(&e)? {
                return Ok(e);
            }
        }
    }
    Err(Error::CrossCheck(
        "nonzero extension group with no nonzero element".into(),
    ))
}

fn ext_order(ext: &Ext1Ch) -> Option<BigInt> {
    ext.module().invariants().order()
}

/// Strictly smaller group order, with None meaning infinite.
fn order_drops(after: &Option<BigInt>, before: &Option<BigInt>) -> bool {
    match (after, before) {
        (Some(a), Some(b)) => a < b,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtStatus {
    /// The final complex has no extensions against any family member.
    Complete,
    /// Obstructions remain but the step budget ran out, or no remaining
    /// step shrinks its extension group.
    MaxSteps,
}

/// One line of the run log: a considered step and its before/after group
/// orders (None = infinite).
#[derive(Debug, Clone)]
pub struct EtLogEntry {
    pub generator: usize,
    pub order_before: Option<BigInt>,
    pub order_after: Option<BigInt>,
    pub accepted: bool,
}

/// A finished extension run.
#[derive(Debug, Clone)]
pub struct EtRun {
    pub status: EtStatus,
    /// F_0 = Y through F_k = final, every stage a complex.
    pub stages: Vec<ChainComplex>,
    /// The accepted inclusions F_i -> F_{i+1}.
    pub embeddings: Vec<ChainMap>,
    pub log: Vec<EtLogEntry>,
}

impl EtRun {
    pub fn initial(&self) -> &ChainComplex {
        &self.stages[0]
    }

    pub fn final_complex(&self) -> &ChainComplex {
        self.stages.last().expect("runs have at least one stage")
    }

    pub fn steps_taken(&self) -> usize {
        self.embeddings.len()
    }

    /// The composite embedding F_0 -> F_k.
    pub fn composite_embedding(&self) -> Result<ChainMap> {
        let mut f = ChainMap::identity(self.initial());
        for e in &self.embeddings {
            f = e.compose(&f)?;
        }
        Ok(f)
    }

    /// The quotient final/Y the filtration is supposed to build up to.
    pub fn quotient_target(&self) -> Result<ChainComplex> {
        Ok(cokernel_complex(&self.composite_embedding()?)?.0)
    }

    /// The filtration 0 = F_0/Y -> F_1/Y -> ... -> F_k/Y of the quotient.
    pub fn filtration(&self) -> Result<Filtration> {
        let mut composite = ChainMap::identity(self.initial());
        let mut stages: Vec<ChainComplex> = Vec::new();
        let mut maps: Vec<ChainMap> = Vec::new();
        for (idx, _) in self.stages.iter().enumerate() {
            let (q, _) = cokernel_complex(&composite)?;
            if let Some(prev) = stages.last() {
                // The embedding F_{idx-1} -> F_idx written on generators
                // also presents the induced map on quotients by Y.
                let emb = &self.embeddings[idx - 1];
                let mut mats = BTreeMap::new();
                for &n in &union_degrees(prev, &q) {
                    mats.insert(n, emb.component(n).mat().clone());
                }
                maps.push(ChainMap::from_mats(prev.clone(), q.clone(), mats)?);
            }
            stages.push(q);
            if idx < self.embeddings.len() {
                composite = self.embeddings[idx].compose(&composite)?;
            }
        }
        Ok(Filtration { stages, maps })
    }
}

/// Run the extension process until the family stops obstructing, the step
/// budget runs out, or no candidate step shrinks its group. Rejected
/// candidates are logged and the scan moves to the next obstructing
/// generator, so a single bad generator cannot wedge the run.
pub fn et_run(y: &ChainComplex, family: &[ChainComplex], max_steps: usize) -> Result<EtRun> {
    let mut stages = vec![y.clone()];
    let mut embeddings: Vec<ChainMap> = Vec::new();
    let mut log: Vec<EtLogEntry> = Vec::new();
    let status;
    'run: loop {
        let current = stages.last().expect("nonempty").clone();
        let mut scan_from = 0;
        loop {
            let step = match candidate_step(&current, family, scan_from)? {
                None if scan_from == 0 => {
                    status = EtStatus::Complete;
                    break 'run;
                }
                None => {
                    // Obstructions exist but every one was rejected.
                    status = EtStatus::MaxSteps;
                    break 'run;
                }
                Some(s) => s,
            };
            if embeddings.len() >= max_steps {
                status = EtStatus::MaxSteps;
                break 'run;
            }
            let s = &family[step.generator];
            let before = step.order.clone();
            let middle = step.seq.middle().clone();
            let after = ext_order(&Ext1Ch::compute(s, &middle)?);
            let accepted = order_drops(&after, &before);
            log.push(EtLogEntry {
                generator: step.generator,
                order_before: before,
                order_after: after,
                accepted,
            });
            if accepted {
                embeddings.push(step.seq.incl.clone());
                stages.push(middle);
                continue 'run;
            }
            scan_from = step.generator + 1;
        }
    }
    Ok(EtRun {
        status,
        stages,
        embeddings,
        log,
    })
}

/// An increasing chain of complexes under degreewise-injective maps,
/// starting at zero.
#[derive(Debug, Clone)]
pub struct Filtration {
    pub stages: Vec<ChainComplex>,
    pub maps: Vec<ChainMap>,
}

/// The outcome of validating a filtration against a target and a family.
#[derive(Debug, Clone)]
pub struct FiltrationReport {
    /// For each consecutive quotient, the index of the family member it
    /// matched, in step order.
    pub layers: Vec<usize>,
    pub failures: Vec<String>,
}

impl FiltrationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn union_degrees(a: &ChainComplex, b: &ChainComplex) -> Vec<i64> {
    let mut degs: Vec<i64> = a.degrees();
    for d in b.degrees() {
        if !degs.contains(&d) {
            degs.push(d);
        }
    }
    degs.sort_unstable();
    degs
}

/// Decide whether two complexes are isomorphic: equal degreewise invariant
/// factors first, then a search for a degreewise-invertible chain map —
/// enumerated when the chain map module is small, seeded-sampled otherwise.
pub fn complexes_isomorphic(a: &ChainComplex, b: &ChainComplex, seed: u64) -> Result<bool> {
    if a.same_presentation(b) {
        return Ok(true);
    }
    let degs = union_degrees(a, b);
    for &n in &degs {
        let am = a.module(n);
        let bm = b.module(n);
        if am.invariants() != bm.invariants() {
            return Ok(false);
        }
    }
    if a.is_zero_complex() && b.is_zero_complex() {
        return Ok(true);
    }
    let hm = ChainMapModule::compute(a, b)?;
    const ENUM_BOUND: u64 = 1 << 12;
    const SAMPLES: usize = 64;
    let small = hm
        .module()
        .invariants()
        .order()
        .map(|o| o <= BigInt::from(ENUM_BOUND))
        .unwrap_or(false);
    if small {
        for coords in hm.module().elements()? {
            if chain_map_is_iso(&hm.decode(&coords)?, &degs)? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let mut sampler = ComplexSampler::new(a.ring().clone(), seed);
    for _ in 0..SAMPLES {
        let coords = sampler.random_coords(hm.module())?;
        if chain_map_is_iso(&hm.decode(&coords)?, &degs)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn chain_map_is_iso(f: &ChainMap, degs: &[i64]) -> Result<bool> {
    for &n in degs {
        if !f.component(n).is_isomorphism()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check the four filtration conditions: the chain starts at zero, climbs
/// by degreewise-injective maps, each layer is isomorphic to a family
/// member, and the top stage is isomorphic to the target. All failures are
/// collected, not just the first.
pub fn validate_filtration(
    filt: &Filtration,
    target: &ChainComplex,
    family: &[ChainComplex],
    seed: u64,
) -> Result<FiltrationReport> {
    let mut failures = Vec::new();
    let mut layers = Vec::new();
    if filt.stages.is_empty() {
        failures.push("filtration has no stages".into());
        return Ok(FiltrationReport { layers, failures });
    }
    if filt.maps.len() + 1 != filt.stages.len() {
        failures.push(format!(
            "{} stages need {} maps, found {}",
            filt.stages.len(),
            filt.stages.len() - 1,
            filt.maps.len()
        ));
    }
    if !filt.stages[0].is_zero_complex() {
        failures.push("first stage is not the zero complex".into());
    }
    for (i, map) in filt.maps.iter().enumerate() {
        if !map.source().same_presentation(&filt.stages[i])
            || !map.target().same_presentation(&filt.stages[i + 1])
        {
            failures.push(format!("map {} does not connect stages {} and {}", i, i, i + 1));
            continue;
        }
        if !map.is_degreewise_injective()? {
            failures.push(format!("map {} is not degreewise injective", i));
            continue;
        }
        let (layer, _) = cokernel_complex(map)?;
        match family_match(&layer, family, seed)? {
            Some(j) => layers.push(j),
            None => failures.push(format!(
                "layer {} is not isomorphic to any family member",
                i
            )),
        }
    }
    let top = filt.stages.last().expect("nonempty");
    if !complexes_isomorphic(top, target, seed)? {
        failures.push("top stage is not isomorphic to the target".into());
    }
    Ok(FiltrationReport { layers, failures })
}

fn family_match(
    layer: &ChainComplex,
    family: &[ChainComplex],
    seed: u64,
) -> Result<Option<usize>> {
    for (j, s) in family.iter().enumerate() {
        if complexes_isomorphic(layer, s, seed)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// The full certificate for a run: oriented at callers who want one call.
#[derive(Debug, Clone)]
pub struct RunCertificate {
    pub status: EtStatus,
    pub steps: usize,
    pub perp: bool,
    pub filtration: FiltrationReport,
}

impl RunCertificate {
    pub fn ok(&self) -> bool {
        self.status == EtStatus::Complete && self.perp && self.filtration.ok()
    }
}

/// Run, then certify: perp membership of the final complex and validity of
/// the induced filtration against the run's own quotient target.
pub fn et_run_certified(
    y: &ChainComplex,
    family: &[ChainComplex],
    max_steps: usize,
    seed: u64,
) -> Result<(EtRun, RunCertificate)> {
    let run = et_run(y, family, max_steps)?;
    let perp = perp_member(run.final_complex(), family)?;
    let filt = run.filtration()?;
    let target = run.quotient_target()?;
    let report = validate_filtration(&filt, &target, family, seed)?;
    let cert = RunCertificate {
        status: run.status,
        steps: run.steps_taken(),
        perp,
        filtration: report,
    };
    Ok((run, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{cogenerating_set, PairSpec};
    use crate::ring::Ring;

    fn z4_family(window: (i64, i64)) -> Vec<ChainComplex> {
        let r = Ring::zmod(4).unwrap();
        cogenerating_set(
            &PairSpec::projective_all(&r),
            &PairSpec::all_injective(&r).unwrap(),
            window,
        )
        .unwrap()
    }

    #[test]
    fn orthogonal_input_completes_in_zero_steps() {
        let r = Ring::zmod(4).unwrap();
        let family = z4_family((0, 1));
        let y = ChainComplex::disk(1, &FpModule::free(r, 1));
        let (run, cert) = et_run_certified(&y, &family, 10, 42).unwrap();
        assert_eq!(run.status, EtStatus::Complete);
        assert_eq!(run.steps_taken(), 0);
        assert!(cert.ok());
        assert!(run.quotient_target().unwrap().is_zero_complex());
    }

    #[test]
    fn sphere_on_the_residue_field_runs_to_completion() {
        let r = Ring::zmod(4).unwrap();
        let family = z4_family((0, 1));
        let y = ChainComplex::sphere(0, &FpModule::cyclic(r, 2));
        let (run, cert) = et_run_certified(&y, &family, 16, 42).unwrap();
        assert_eq!(run.status, EtStatus::Complete, "log: {:?}", run.log);
        assert!(run.steps_taken() >= 1);
        assert!(cert.perp);
        assert!(cert.filtration.ok(), "failures: {:?}", cert.filtration.failures);
        // Every accepted step strictly shrank the group it addressed.
        for entry in run.log.iter().filter(|e| e.accepted) {
            assert!(order_drops(&entry.order_after, &entry.order_before));
        }
    }

    #[test]
    fn budget_zero_reports_max_steps_on_obstructed_input() {
        let r = Ring::zmod(4).unwrap();
        let family = z4_family((0, 1));
        let y = ChainComplex::sphere(0, &FpModule::cyclic(r, 2));
        let run = et_run(&y, &family, 0).unwrap();
        assert_eq!(run.status, EtStatus::MaxSteps);
        assert_eq!(run.steps_taken(), 0);
    }

    #[test]
    fn filtration_layers_match_the_generators_used() {
        let r = Ring::zmod(4).unwrap();
        let family = z4_family((0, 1));
        let y = ChainComplex::sphere(1, &FpModule::cyclic(r, 2));
        let (run, cert) = et_run_certified(&y, &family, 16, 42).unwrap();
        assert_eq!(run.status, EtStatus::Complete);
        let used: Vec<usize> = run
            .log
            .iter()
            .filter(|e| e.accepted)
            .map(|e| e.generator)
            .collect();
        assert_eq!(cert.filtration.layers, used);
    }

    #[test]
    fn isomorphism_test_separates_twisted_from_split() {
        let r = Ring::zmod(4).unwrap();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let disk = ChainComplex::disk(1, &z2);
        let split = ChainComplex::sphere(1, &z2)
            .direct_sum(&ChainComplex::sphere(0, &z2))
            .unwrap();
        // Same modules in each degree, different differential.
        assert!(complexes_isomorphic(&disk, &disk.clone(), 7).unwrap());
        assert!(!complexes_isomorphic(&disk, &split, 7).unwrap());
        let shifted = ChainComplex::disk(2, &z2);
        assert!(!complexes_isomorphic(&disk, &shifted, 7).unwrap());
    }
}
