//! Independent cross-checking oracles.
//!
//! Everything in this file recomputes quantities the main engine produces,
//! but by a deliberately different route: brute-force enumeration, factor
//! sets, and order statistics instead of presentations, syzygies, and hom
//! modules. Tests freeze these oracles against the engine so that a bug in
//! one path cannot silently agree with itself.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::{FpModule, InvariantFactors};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Count homomorphisms M -> N by enumerating generator images and checking
/// every relation, with no linear algebra involved. Requires N finite.
pub fn oracle_hom_count(m: &FpModule, n: &FpModule) -> Result<BigInt> {
    let els = n.elements()?;
    let g = m.num_gens();
    let rels = m.rels();
    let mut count = BigInt::zero();
    // Odometer over assignments generator -> element of N.
    let mut pick = vec![0usize; g];
    'outer: loop {
        // Check all relations: sum_i rels[i][c] * pick[i] = 0 in N.
        let mut ok = true;
        for c in 0..rels.cols() {
            let mut acc = Mat::zero(n.ring().clone(), n.num_gens(), 1);
            for i in 0..g {
                acc = acc.add(&els[pick[i]].scalar_mul(rels.at(i, c)))?;
            }
            if !n.element_is_zero(&acc)? {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
        for i in 0..g {
            pick[i] += 1;
            if pick[i] < els.len() {
                continue 'outer;
            }
            pick[i] = 0;
        }
        return Ok(count);
    }
}

/// Extension classes of a cyclic module R/(a) by N, computed with factor
/// sets: an extension is determined by where a times the lifted generator
/// lands. Over Z that value ranges over N/aN; over Z/q it must in addition
/// be killed by q/a, giving N[q/a] / aN.
fn cyclic_ext_group(a: &BigInt, n: &FpModule) -> Result<QuotientGroup> {
    let els = n.elements()?;
    let constraint = match n.ring() {
        Ring::Z => None,
        Ring::Zmod(q) => {
            if !(q % a).is_zero() {
                return Err(Error::Invalid(format!(
                    "cyclic order {a} does not divide the modulus {q}"
                )));
            }
            Some(q / a)
        }
    };
    let mut numerator = Vec::new();
    for x in &els {
        let keep = match &constraint {
            None => true,
            Some(c) => n.element_is_zero(&x.scalar_mul(c))?,
        };
        if keep {
            numerator.push(x.clone());
        }
    }
    let mut denominator = Vec::new();
    for w in &els {
        denominator.push(w.scalar_mul(a));
    }
    QuotientGroup::build(n, &numerator, &denominator)
}

/// Isomorphism type of Ext^1(M, N) by factor sets, one cyclic invariant of
/// M at a time, merged as a direct sum. Requires N finite. The free part of
/// M contributes nothing.
pub fn oracle_ext_invariants(m: &FpModule, n: &FpModule) -> Result<InvariantFactors> {
    let mut parts = Vec::new();
    for a in &m.invariants().torsion {
        let q = cyclic_ext_group(a, n)?;
        parts.push(q.structure()?);
    }
    Ok(merge_invariants(&parts))
}

/// A finite quotient S/T of subsets of a module, with addition done on
/// coset representatives. Elements are identified by the lexicographically
/// least canonical form in their coset.
struct QuotientGroup {
    keys: Vec<Vec<BigInt>>,
    reps: Vec<Mat>,
    module: FpModule,
    translates: Vec<Mat>,
}

impl QuotientGroup {
    fn build(module: &FpModule, numerator: &[Mat], denominator: &[Mat]) -> Result<QuotientGroup> {
        // Close the denominator into an actual subgroup: all sums of the
        // given elements (finite module, so iterate to a fixed point).
        let mut translates: Vec<Mat> = vec![Mat::zero(
            module.ring().clone(),
            module.num_gens(),
            1,
        )];
        let mut seen: Vec<Vec<BigInt>> = vec![module.canonical_form(&translates[0])?];
        let mut frontier = translates.clone();
        while let Some(t) = frontier.pop() {
            for d in denominator {
                let s = t.add(d)?;
                let key = module.canonical_form(&s)?;
                if !seen.contains(&key) {
                    seen.push(key);
                    translates.push(s.clone());
                    frontier.push(s);
                }
            }
        }
        let mut keys = Vec::new();
        let mut reps = Vec::new();
        for x in numerator {
            let key = Self::coset_key(module, x, &translates)?;
            if !keys.contains(&key) {
                keys.push(key);
                reps.push(x.clone());
            }
        }
        Ok(QuotientGroup {
            keys,
            reps,
            module: module.clone(),
            translates,
        })
    }

    fn coset_key(module: &FpModule, x: &Mat, translates: &[Mat]) -> Result<Vec<BigInt>> {
        let mut best: Option<Vec<BigInt>> = None;
        for t in translates {
            let form = module.canonical_form(&x.add(t)?)?;
            match &best {
                Some(b) if *b <= form => {}
                _ => best = Some(form),
            }
        }
        Ok(best.expect("translate set contains zero"))
    }

    fn index_of(&self, x: &Mat) -> Result<usize> {
        let key = Self::coset_key(&self.module, x, &self.translates)?;
        self.keys
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| Error::CrossCheck("coset escaped the numerator".into()))
    }

    fn zero_index(&self) -> Result<usize> {
        self.index_of(&Mat::zero(
            self.module.ring().clone(),
            self.module.num_gens(),
            1,
        ))
    }

    /// Additive order of each element, by repeated addition of the
    /// representative (reduced to coset indices each step).
    fn element_orders(&self) -> Result<Vec<BigInt>> {
        let zero = self.zero_index()?;
        let mut orders = Vec::with_capacity(self.keys.len());
        for i in 0..self.keys.len() {
            let mut acc = self.reps[i].clone();
            let mut ord = BigInt::one();
            while self.index_of(&acc)? != zero {
                acc = acc.add(&self.reps[i])?;
                ord += 1;
                if ord > BigInt::from(self.keys.len() * 2) {
                    return Err(Error::CrossCheck("order exceeded the group size".into()));
                }
            }
            orders.push(ord);
        }
        Ok(orders)
    }

    /// Reconstruct the isomorphism type purely from the multiset of element
    /// orders: for each prime p, the count of elements killed by p^k
    /// determines how many invariant factors carry p-exponent >= k.
    fn structure(&self) -> Result<InvariantFactors> {
        let orders = self.element_orders()?;
        let size = BigInt::from(orders.len());
        if size.is_one() {
            return Ok(InvariantFactors::zero());
        }
        let mut per_prime: Vec<(BigInt, Vec<u32>)> = Vec::new();
        for (p, _) in factorize(&size) {
            let mut exponents: Vec<u32> = Vec::new();
            let mut prev_rank = 0u32;
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let count = orders
                    .iter()
                    .filter(|o| (&pk % *o).is_zero())
                    .count();
                let count = BigInt::from(count);
                let rank = exact_log(&count, &p).ok_or_else(|| {
                    Error::CrossCheck(format!("{count} elements of order dividing {pk}"))
                })?;
                let new_factors = rank - prev_rank;
                if new_factors == 0 {
                    break;
                }
                // new_factors many invariant factors have p-exponent >= k.
                for slot in 0..new_factors {
                    let slot = slot as usize;
                    if exponents.len() <= slot {
                        exponents.push(0);
                    }
                }
                for e in exponents.iter_mut().take(new_factors as usize) {
                    *e = k;
                }
                prev_rank = rank;
                k += 1;
            }
            // exponents[j] = exponent of the (j+1)-th largest factor at p.
            if !exponents.is_empty() {
                per_prime.push((p, exponents));
            }
        }
        let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut torsion_desc = Vec::new();
        for j in 0..width {
            let mut d = BigInt::one();
            for (p, exps) in &per_prime {
                if let Some(e) = exps.get(j) {
                    d *= p.pow(*e);
                }
            }
            torsion_desc.push(d);
        }
        torsion_desc.reverse();
        Ok(InvariantFactors {
            free_rank: 0,
            torsion: torsion_desc,
        })
    }
}

/// log base p when exact, None otherwise.
fn exact_log(x: &BigInt, p: &BigInt) -> Option<u32> {
    let mut x = x.clone();
    let mut k = 0u32;
    while x > BigInt::one() {
        if !(&x % p).is_zero() {
            return None;
        }
        x /= p;
        k += 1;
    }
    if x.is_one() {
        Some(k)
    } else {
        None
    }
}

/// Trial-division factorization (inputs here are tiny).
pub(crate) fn factorize(x: &BigInt) -> Vec<(BigInt, u32)> {
    let mut x = x.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= x {
        if (&x % &p).is_zero() {
            let mut e = 0u32;
            while (&x % &p).is_zero() {
                x /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if x > BigInt::one() {
        out.push((x, 1));
    }
    out
}

/// Isomorphism type of a direct sum given by the types of its summands:
/// pool the prime-power components, then deal them back out largest-first.
pub fn merge_invariants(parts: &[InvariantFactors]) -> InvariantFactors {
    let free_rank = parts.iter().map(|p| p.free_rank).sum();
    let mut per_prime: Vec<(BigInt, Vec<u32>)> = Vec::new();
    for part in parts {
        for d in &part.torsion {
            for (p, e) in factorize(d) {
                match per_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, exps)) => exps.push(e),
                    None => per_prime.push((p, vec![e])),
                }
            }
        }
    }
    for (_, exps) in &mut per_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut torsion_desc = Vec::new();
    for j in 0..width {
        let mut d = BigInt::one();
        for (p, exps) in &per_prime {
            if let Some(e) = exps.get(j) {
                d *= p.pow(*e);
            }
        }
        torsion_desc.push(d);
    }
    torsion_desc.reverse();
    InvariantFactors {
        free_rank,
        torsion: torsion_desc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{Ext1Module, HomGroup};

    #[test]
    fn merge_reassembles_divisibility_chains() {
        let a = InvariantFactors {
            free_rank: 0,
            torsion: vec![BigInt::from(2), BigInt::from(4)],
        };
        let b = InvariantFactors {
            free_rank: 1,
            torsion: vec![BigInt::from(2)],
        };
        let m = merge_invariants(&[a, b]);
        assert_eq!(m.to_string(), "Z ⊕ Z/2 ⊕ Z/2 ⊕ Z/4");
        let c = InvariantFactors {
            free_rank: 0,
            torsion: vec![BigInt::from(6)],
        };
        let d = InvariantFactors {
            free_rank: 0,
            torsion: vec![BigInt::from(4)],
        };
        // 6 = 2*3, 4 = 2^2: largest factor takes 4 and 3 -> 12, rest 2.
        assert_eq!(merge_invariants(&[c, d]).to_string(), "Z/2 ⊕ Z/12");
    }

    #[test]
    fn hom_counts_match_the_hom_module() {
        let r = Ring::zmod(4).unwrap();
        let mods = [
            FpModule::cyclic(r.clone(), 2),
            FpModule::free(r.clone(), 1),
            FpModule::cyclic(r.clone(), 2)
                .direct_sum(&FpModule::free(r.clone(), 1))
                .unwrap(),
        ];
        for m in &mods {
            for n in &mods {
                let brute = oracle_hom_count(m, n).unwrap();
                let hom = HomGroup::compute(m, n).unwrap();
                assert_eq!(
                    Some(brute),
                    hom.module().order(),
                    "Hom({}, {})",
                    m.invariants(),
                    n.invariants()
                );
            }
        }
    }

    #[test]
    fn factor_sets_agree_with_syzygies_over_z() {
        let pairs = [
            (FpModule::cyclic(Ring::Z, 4), FpModule::cyclic(Ring::Z, 6)),
            (FpModule::cyclic(Ring::Z, 2), FpModule::cyclic(Ring::Z, 2)),
            (
                FpModule::cyclic(Ring::Z, 2)
                    .direct_sum(&FpModule::cyclic(Ring::Z, 4))
                    .unwrap(),
                FpModule::cyclic(Ring::Z, 8),
            ),
        ];
        for (m, n) in &pairs {
            let oracle = oracle_ext_invariants(m, n).unwrap();
            let engine = Ext1Module::compute(m, n).unwrap();
            assert_eq!(
                &oracle,
                engine.module().invariants(),
                "Ext({}, {})",
                m.invariants(),
                n.invariants()
            );
        }
    }

    #[test]
    fn factor_sets_see_the_ring_constraint() {
        // Over Z/4: Ext(Z/2, Z/4) = 0 even though over Z it would be Z/2.
        let r = Ring::zmod(4).unwrap();
        let z2 = FpModule::cyclic(r.clone(), 2);
        let z4 = FpModule::free(r.clone(), 1);
        assert!(oracle_ext_invariants(&z2, &z4).unwrap().is_zero());
        assert_eq!(
            oracle_ext_invariants(&z2, &z2).unwrap().to_string(),
            "Z/2"
        );
        // And the engine agrees on a composite case.
        let m = z2.direct_sum(&z4).unwrap();
        let oracle = oracle_ext_invariants(&m, &m).unwrap();
        let engine = Ext1Module::compute(&m, &m).unwrap();
        assert_eq!(&oracle, engine.module().invariants());
    }

    #[test]
    fn structure_reconstruction_distinguishes_equal_orders() {
        // Z/4 and Z/2 + Z/2 both have 4 elements; order statistics tell
        // them apart. Use quotients (Z/4)/0 and (Z/2+Z/2)/0 directly.
        let r = Ring::zmod(4).unwrap();
        let z4 = FpModule::free(r.clone(), 1);
        let q = QuotientGroup::build(&z4, &z4.elements().unwrap(), &[]).unwrap();
        assert_eq!(q.structure().unwrap().to_string(), "Z/4");
        let v = FpModule::cyclic(r.clone(), 2)
            .direct_sum(&FpModule::cyclic(r, 2))
            .unwrap();
        let q = QuotientGroup::build(&v, &v.elements().unwrap(), &[]).unwrap();
        assert_eq!(q.structure().unwrap().to_string(), "Z/2 ⊕ Z/2");
    }
}
