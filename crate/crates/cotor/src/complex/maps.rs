//! Chain maps and everything solved through them: homotopies, lifts,
//! sections, pullbacks, pushouts, cones, and the module of chain maps.
//!
//! All existence questions ("is there a homotopy", "does a lift exist")
//! reduce to matrix-variable linear systems: one unknown per degree, one
//! block of equations per square that must commute, plus hom conditions so
//! that unknowns define genuine module maps.

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{solve, Mat, MatVarSystem};
use crate::module::{subquotient_presentation, FpModule, ModuleHom, ShortExactSeq};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: BTreeMap<i64, ModuleHom>,
}

impl ChainMap {
    /// Build from per-degree homs and validate every commuting square.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        comps: BTreeMap<i64, ModuleHom>,
    ) -> Result<ChainMap> {
        source.ring().expect_same(target.ring(), "chain map")?;
        for (&n, f) in &comps {
            if f.source().rels() != source.module(n).rels()
                || f.target().rels() != target.module(n).rels()
            {
                return Err(Error::DimensionMismatch(format!(
                    "component at degree {n} does not match the complexes"
                )));
            }
        }
        let map = ChainMap {
            source,
            target,
            comps,
        };
        for n in map.degree_range() {
            let lhs = map.component(n - 1).compose(&map.source.diff(n))?;
            let rhs = map.target.diff(n).compose(&map.component(n))?;
            if !lhs.equals(&rhs)? {
                return Err(Error::Invalid(format!(
                    "square at degree {n} does not commute"
                )));
            }
        }
        Ok(map)
    }

    /// Build from raw matrices (component n: target-gens x source-gens).
    pub fn from_mats(
        source: ChainComplex,
        target: ChainComplex,
        mats: BTreeMap<i64, Mat>,
    ) -> Result<ChainMap> {
        let mut comps = BTreeMap::new();
        for (n, m) in mats {
            comps.insert(
                n,
                ModuleHom::new(source.module(n), target.module(n), m)?,
            );
        }
        ChainMap::new(source, target, comps)
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let comps = c
            .degrees()
            .into_iter()
            .map(|n| (n, ModuleHom::identity(&c.module(n))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            comps,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
        source.ring().expect_same(target.ring(), "zero chain map")?;
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps: BTreeMap::new(),
        })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// Degrees over which squares may be non-trivial.
    fn degree_range(&self) -> Vec<i64> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for s in [self.source.support(), self.target.support()]
            .into_iter()
            .flatten()
        {
            lo = lo.min(s.0);
            hi = hi.max(s.1);
        }
        if lo > hi {
            Vec::new()
        } else {
            (lo..=hi + 1).collect()
        }
    }

    pub fn component(&self, n: i64) -> ModuleHom {
        match self.comps.get(&n) {
            Some(f) => f.clone(),
            None => ModuleHom::zero(&self.source.module(n), &self.target.module(n))
                .expect("same ring"),
        }
    }

    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        let comps = self
            .degree_range()
            .into_iter()
            .chain(other.degree_range())
            .map(|n| Ok((n, self.component(n).compose(&other.component(n))?)))
            .collect::<Result<_>>()?;
        Ok(ChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            comps,
        })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        let comps = self
            .degree_range()
            .into_iter()
            .map(|n| Ok((n, self.component(n).add(&other.component(n))?)))
            .collect::<Result<_>>()?;
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        })
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self
                .comps
                .iter()
                .map(|(&n, f)| (n, f.neg()))
                .collect(),
        }
    }

    pub fn is_zero_map(&self) -> Result<bool> {
        for f in self.comps.values() {
            if !f.is_zero_hom()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &ChainMap) -> Result<bool> {
        for n in self.degree_range().into_iter().chain(other.degree_range()) {
            if !self.component(n).equals(&other.component(n))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Degreewise direct sum with another map.
    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let mut comps = BTreeMap::new();
        for n in source.degrees() {
            let mat = Mat::block_diag(
                source.ring().clone(),
                &[self.component(n).mat(), other.component(n).mat()],
            )?;
            comps.insert(n, ModuleHom::new(source.module(n), target.module(n), mat)?);
        }
        ChainMap::new(source, target, comps)
    }

    /// Is every component surjective? (The right notion of "epi" for the
    /// lifting questions in this crate.)
    pub fn is_degreewise_surjective(&self) -> Result<bool> {
        for n in self.degree_range() {
            if !self.component(n).is_surjective_hom()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_degreewise_injective(&self) -> Result<bool> {
        for n in self.degree_range() {
            if !self.component(n).is_injective_hom()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The map induced on homology at degree n.
    pub fn induced_on_homology(&self, n: i64) -> Result<ModuleHom> {
        let (hx, reps_x) = self.source.homology_with_reps(n)?;
        let (hy, _) = self.target.homology_with_reps(n)?;
        // Push each representing cycle through f_n and express it in the
        // target's homology generators.
        let pushed = self.component(n).mat().mul(&reps_x)?;
        let zy = self.target.cycle_gens(n)?;
        let denominators = self
            .target
            .diff(n + 1)
            .mat()
            .hstack(self.target.module(n).rels())?;
        let aug = zy.hstack(&denominators)?;
        let sol = solve(&aug, &pushed)?.ok_or_else(|| {
            Error::CrossCheck("image of a cycle failed to be a cycle".into())
        })?;
        let coords = sol.submatrix(0, zy.cols(), 0, sol.cols());
        ModuleHom::new(hx, hy, coords)
    }
}

/// A homotopy s between two chain maps f and g: components s_n: X_n ->
/// Y_{n+1} with d s + s d = f - g.
#[derive(Debug, Clone)]
pub struct Homotopy {
    pub comps: BTreeMap<i64, ModuleHom>,
}

impl Homotopy {
    pub fn component(&self, f: &ChainMap, n: i64) -> ModuleHom {
        match self.comps.get(&n) {
            Some(s) => s.clone(),
            None => ModuleHom::zero(&f.source().module(n), &f.target().module(n + 1))
                .expect("same ring"),
        }
    }

    /// Verify d s + s d = f (a homotopy from f to zero).
    pub fn witnesses_null(&self, f: &ChainMap) -> Result<bool> {
        for n in f.degree_range() {
            let a = f.target().diff(n + 1).compose(&self.component(f, n))?;
            let b = self.component(f, n - 1).compose(&f.source().diff(n))?;
            if !a.add(&b)?.equals(&f.component(n))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Degrees where a map component X_n -> Y_n has any actual entries.
fn live_degrees(x: &ChainComplex, y: &ChainComplex, offset: i64) -> Vec<i64> {
    x.degrees()
        .into_iter()
        .filter(|&n| x.module(n).num_gens() > 0 && y.module(n + offset).num_gens() > 0)
        .collect()
}

/// Shared builder: declare one unknown per live degree (X_n -> Y_{n+offset})
/// with its hom condition, returning the var handles.
fn declare_degree_vars(
    sys: &mut MatVarSystem,
    x: &ChainComplex,
    y: &ChainComplex,
    offset: i64,
) -> Result<BTreeMap<i64, usize>> {
    let ring = x.ring().clone();
    let mut vars = BTreeMap::new();
    for n in live_degrees(x, y, offset) {
        let xm = x.module(n);
        let ym = y.module(n + offset);
        let v = sys.add_var(ym.num_gens(), xm.num_gens());
        // v * rels(X_n) = 0 mod rels(Y_{n+offset}).
        if xm.rels().cols() > 0 {
            sys.add_equation(
                vec![(v, Mat::identity(ring.clone(), ym.num_gens()), xm.rels().clone())],
                vec![ym.rels().clone()],
                Mat::zero(ring.clone(), ym.num_gens(), xm.rels().cols()),
            )?;
        }
        vars.insert(n, v);
    }
    Ok(vars)
}

/// Add the commuting-square equations for a degree-0 family of unknowns:
/// dY_n * f_n - f_{n-1} * dX_n = 0 (mod rels Y_{n-1}).
fn add_square_equations(
    sys: &mut MatVarSystem,
    x: &ChainComplex,
    y: &ChainComplex,
    vars: &BTreeMap<i64, usize>,
) -> Result<()> {
    let ring = x.ring().clone();
    let degs: Vec<i64> = match (x.support(), y.support()) {
        (Some((xl, xh)), Some((yl, yh))) => (xl.min(yl)..=xh.max(yh) + 1).collect(),
        _ => Vec::new(),
    };
    for n in degs {
        let rows = y.module(n - 1).num_gens();
        let cols = x.module(n).num_gens();
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut terms = Vec::new();
        if let Some(&v) = vars.get(&n) {
            terms.push((
                v,
                y.diff(n).mat().clone(),
                Mat::identity(ring.clone(), cols),
            ));
        }
        if let Some(&v) = vars.get(&(n - 1)) {
            terms.push((
                v,
                Mat::identity(ring.clone(), rows).neg(),
                x.diff(n).mat().clone(),
            ));
        }
        if terms.is_empty() {
            continue;
        }
        let target = Mat::zero(ring.clone(), rows, cols);
        sys.add_equation(terms, vec![y.module(n - 1).rels().clone()], target)?;
    }
    Ok(())
}

/// Hom_Ch(X, Y): the module of chain maps X -> Y, with decoding back to
/// actual maps.
#[derive(Debug, Clone)]
pub struct ChainMapModule {
    source: ChainComplex,
    target: ChainComplex,
    module: FpModule,
    degrees: Vec<i64>,
    gens: Vec<BTreeMap<i64, Mat>>,
    gens_vec: Mat,
}

impl ChainMapModule {
    pub fn compute(x: &ChainComplex, y: &ChainComplex) -> Result<ChainMapModule> {
        x.ring().expect_same(y.ring(), "chain map module")?;
        let ring = x.ring().clone();
        let mut sys = MatVarSystem::new(ring.clone());
        let vars = declare_degree_vars(&mut sys, x, y, 0)?;
        add_square_equations(&mut sys, x, y, &vars)?;
        let degrees: Vec<i64> = vars.keys().copied().collect();
        let sols = sys.homogeneous_kernel()?;

        let shape = |n: i64| (y.module(n).num_gens(), x.module(n).num_gens());
        let total: usize = degrees.iter().map(|&n| shape(n).0 * shape(n).1).sum();
        let vectorize = |family: &BTreeMap<i64, Mat>| -> Mat {
            let mut v = Mat::zero(ring.clone(), total, 1);
            let mut off = 0;
            for &n in &degrees {
                let (r, c) = shape(n);
                if let Some(m) = family.get(&n) {
                    let mv = m.vec_col_major();
                    for i in 0..r * c {
                        v.set(off + i, 0, mv.at(i, 0).clone());
                    }
                }
                off += r * c;
            }
            v
        };

        let gens: Vec<BTreeMap<i64, Mat>> = sols
            .into_iter()
            .map(|sol| {
                degrees
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| (n, sol[k].clone()))
                    .collect()
            })
            .collect();
        let mut gens_vec = Mat::zero(ring.clone(), total, gens.len());
        for (j, fam) in gens.iter().enumerate() {
            let v = vectorize(fam);
            for i in 0..total {
                gens_vec.set(i, j, v.at(i, 0).clone());
            }
        }
        // Families that are zero as maps: per degree, any matrix with
        // columns from rels(Y_n).
        let mut triv_cols = Vec::new();
        for &n in &degrees {
            let (r, c) = shape(n);
            let ym = y.module(n);
            let rels = ym.rels();
            for rc in 0..rels.cols() {
                for l in 0..c {
                    let mut m = Mat::zero(ring.clone(), r, c);
                    for i in 0..r {
                        m.set(i, l, rels.at(i, rc).clone());
                    }
                    let mut fam = BTreeMap::new();
                    fam.insert(n, m);
                    triv_cols.push(vectorize(&fam));
                }
            }
        }
        let mut triv = Mat::zero(ring.clone(), total, triv_cols.len());
        for (j, v) in triv_cols.iter().enumerate() {
            for i in 0..total {
                triv.set(i, j, v.at(i, 0).clone());
            }
        }
        let module = subquotient_presentation(&gens_vec, &triv)?;
        Ok(ChainMapModule {
            source: x.clone(),
            target: y.clone(),
            module,
            degrees,
            gens,
            gens_vec,
        })
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn decode(&self, coords: &Mat) -> Result<ChainMap> {
        if coords.rows() != self.gens.len() || coords.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "chain map coords must be {}x1",
                self.gens.len()
            )));
        }
        let ring = self.source.ring().clone();
        let mut mats: BTreeMap<i64, Mat> = BTreeMap::new();
        for &n in &self.degrees {
            let rows = self.target.module(n).num_gens();
            let cols = self.source.module(n).num_gens();
            let mut acc = Mat::zero(ring.clone(), rows, cols);
            for (j, fam) in self.gens.iter().enumerate() {
                if let Some(m) = fam.get(&n) {
                    acc = acc.add(&m.scalar_mul(coords.at(j, 0)))?;
                }
            }
            mats.insert(n, acc);
        }
        ChainMap::from_mats(self.source.clone(), self.target.clone(), mats)
    }

    pub fn encode(&self, f: &ChainMap) -> Result<Mat> {
        let ring = self.source.ring().clone();
        let total = self.gens_vec.rows();
        let mut v = Mat::zero(ring, total, 1);
        let mut off = 0;
        for &n in &self.degrees {
            let m = f.component(n);
            let mv = m.mat().vec_col_major();
            for i in 0..mv.rows() {
                v.set(off + i, 0, mv.at(i, 0).clone());
            }
            off += mv.rows();
        }
        solve(&self.gens_vec, &v)?
            .ok_or_else(|| Error::CrossCheck("chain map outside the computed span".into()))
    }
}

/// A homotopy from f to zero, if one exists.
pub fn null_homotopy(f: &ChainMap) -> Result<Option<Homotopy>> {
    let x = f.source();
    let y = f.target();
    let ring = x.ring().clone();
    let mut sys = MatVarSystem::new(ring.clone());
    // s_n: X_n -> Y_{n+1}.
    let vars = declare_degree_vars(&mut sys, x, y, 1)?;
    // dY_{n+1} s_n + s_{n-1} dX_n = f_n (mod rels Y_n) at every degree.
    let degs: Vec<i64> = match (x.support(), y.support()) {
        (Some((xl, xh)), Some((yl, yh))) => (xl.min(yl)..=xh.max(yh)).collect(),
        _ => Vec::new(),
    };
    for n in degs {
        let rows = y.module(n).num_gens();
        let cols = x.module(n).num_gens();
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut terms = Vec::new();
        if let Some(&v) = vars.get(&n) {
            terms.push((
                v,
                y.diff(n + 1).mat().clone(),
                Mat::identity(ring.clone(), cols),
            ));
        }
        if let Some(&v) = vars.get(&(n - 1)) {
            terms.push((
                v,
                Mat::identity(ring.clone(), rows),
                x.diff(n).mat().clone(),
            ));
        }
        let rhs = f.component(n).mat().clone();
        if terms.is_empty() {
            // No unknowns reach this degree: f_n itself must vanish.
            if solve(y.module(n).rels(), &rhs)?.is_none() {
                return Ok(None);
            }
            continue;
        }
        sys.add_equation(terms, vec![y.module(n).rels().clone()], rhs)?;
    }
    match sys.solve_particular()? {
        None => Ok(None),
        Some(sol) => {
            let mut comps = BTreeMap::new();
            for (k, (&n, _)) in vars.iter().enumerate() {
                comps.insert(
                    n,
                    ModuleHom::new(x.module(n), y.module(n + 1), sol[k].clone())?,
                );
            }
            let h = Homotopy { comps };
            debug_assert!(h.witnesses_null(f)?);
            Ok(Some(h))
        }
    }
}

/// A chain map g with p . g = f, if one exists.
pub fn lift_through(p: &ChainMap, f: &ChainMap) -> Result<Option<ChainMap>> {
    let x = f.source();
    let y = p.source();
    let z = p.target();
    if !f.target().same_presentation(z) {
        return Err(Error::DimensionMismatch(
            "lift: maps do not share a codomain".into(),
        ));
    }
    let ring = x.ring().clone();
    let mut sys = MatVarSystem::new(ring.clone());
    let vars = declare_degree_vars(&mut sys, x, y, 0)?;
    add_square_equations(&mut sys, x, y, &vars)?;
    // p_n g_n = f_n (mod rels Z_n).
    for n in x.degrees() {
        let rows = z.module(n).num_gens();
        let cols = x.module(n).num_gens();
        if rows == 0 || cols == 0 {
            continue;
        }
        let rhs = f.component(n).mat().clone();
        match vars.get(&n) {
            Some(&v) => {
                sys.add_equation(
                    vec![(v, p.component(n).mat().clone(), Mat::identity(ring.clone(), cols))],
                    vec![z.module(n).rels().clone()],
                    rhs,
                )?;
            }
            None => {
                if solve(z.module(n).rels(), &rhs)?.is_none() {
                    return Ok(None);
                }
            }
        }
    }
    match sys.solve_particular()? {
        None => Ok(None),
        Some(sol) => {
            let mut mats = BTreeMap::new();
            for (k, (&n, _)) in vars.iter().enumerate() {
                mats.insert(n, sol[k].clone());
            }
            let g = ChainMap::from_mats(x.clone(), y.clone(), mats)?;
            debug_assert!(p.compose(&g)?.equals(f)?);
            Ok(Some(g))
        }
    }
}

/// A section of p (right inverse chain map), if one exists.
pub fn section_of(p: &ChainMap) -> Result<Option<ChainMap>> {
    lift_through(p, &ChainMap::identity(p.target()))
}

/// A short exact sequence of complexes, stored as its two maps.
#[derive(Debug, Clone)]
pub struct ChShortExactSeq {
    pub incl: ChainMap,
    pub proj: ChainMap,
}

impl ChShortExactSeq {
    pub fn new(incl: ChainMap, proj: ChainMap) -> Result<ChShortExactSeq> {
        let ses = ChShortExactSeq { incl, proj };
        ses.validate()?;
        Ok(ses)
    }

    pub fn sub(&self) -> &ChainComplex {
        self.incl.source()
    }

    pub fn middle(&self) -> &ChainComplex {
        self.incl.target()
    }

    pub fn quot(&self) -> &ChainComplex {
        self.proj.target()
    }

    /// Per-degree exactness via the module-level checks.
    pub fn validate(&self) -> Result<()> {
        if !self.incl.target().same_presentation(self.proj.source()) {
            return Err(Error::Invalid(
                "sequence of complexes: maps do not share the middle".into(),
            ));
        }
        for n in self.middle().degrees() {
            ShortExactSeq::new(self.incl.component(n), self.proj.component(n)).map_err(|e| {
                Error::Invalid(format!("not exact at degree {n}: {e}"))
            })?;
        }
        Ok(())
    }

    /// Split in every degree separately (the middle need not be a direct
    /// sum of complexes for this).
    pub fn is_degreewise_split(&self) -> Result<bool> {
        for n in self.middle().degrees() {
            let ses = ShortExactSeq {
                incl: self.incl.component(n),
                proj: self.proj.component(n),
            };
            if !ses.is_split()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Split as a sequence of complexes: the projection has a section.
    pub fn is_split(&self) -> Result<bool> {
        Ok(section_of(&self.proj)?.is_some())
    }
}

/// Pullback of f: X -> Z <- Y : g, with its two projections.
pub fn pullback_complexes(
    f: &ChainMap,
    g: &ChainMap,
) -> Result<(ChainComplex, ChainMap, ChainMap)> {
    if !f.target().same_presentation(g.target()) {
        return Err(Error::DimensionMismatch("pullback: targets differ".into()));
    }
    let x = f.source();
    let y = g.source();
    let ring = x.ring().clone();
    let mut modules = BTreeMap::new();
    let mut inclusions: BTreeMap<i64, ModuleHom> = BTreeMap::new();
    let mut degs: Vec<i64> = Vec::new();
    if let (Some((xl, xh)), Some((yl, yh))) = (
        x.support().or(Some((0, -1))),
        y.support().or(Some((0, -1))),
    ) {
        let lo = xl.min(yl);
        let hi = xh.max(yh);
        degs = (lo..=hi).collect();
    }
    for &n in &degs {
        let sum = x.module(n).direct_sum(&y.module(n))?;
        let phi_mat = f.component(n).mat().hstack(&g.component(n).mat().neg())?;
        let phi = ModuleHom::new(sum.clone(), f.target().module(n), phi_mat)?;
        let (p, incl) = phi.kernel()?;
        modules.insert(n, p);
        inclusions.insert(n, incl);
    }
    let mut diffs = BTreeMap::new();
    for &n in &degs {
        if !modules.contains_key(&(n - 1)) {
            continue;
        }
        let big = Mat::block_diag(
            ring.clone(),
            &[x.diff(n).mat(), y.diff(n).mat()],
        )?;
        let pushed = big.mul(inclusions[&n].mat())?;
        // Factor through the inclusion of the pullback in degree n-1.
        let sum_rels = inclusions[&(n - 1)].target().rels();
        let aug = inclusions[&(n - 1)].mat().hstack(sum_rels)?;
        let sol = solve(&aug, &pushed)?
            .ok_or_else(|| Error::CrossCheck("pullback differential failed to factor".into()))?;
        let d = sol.submatrix(0, modules[&(n - 1)].num_gens(), 0, sol.cols());
        diffs.insert(
            n,
            ModuleHom::new(modules[&n].clone(), modules[&(n - 1)].clone(), d)?,
        );
    }
    let p = ChainComplex::from_parts(ring.clone(), modules, diffs)?;
    let mut to_x = BTreeMap::new();
    let mut to_y = BTreeMap::new();
    for &n in &degs {
        let incl = &inclusions[&n];
        let gx = x.module(n).num_gens();
        let gy = y.module(n).num_gens();
        let mx = incl.mat().submatrix(0, gx, 0, incl.mat().cols());
        let my = incl.mat().submatrix(gx, gx + gy, 0, incl.mat().cols());
        to_x.insert(n, mx);
        to_y.insert(n, my);
    }
    let px = ChainMap::from_mats(p.clone(), x.clone(), to_x)?;
    let py = ChainMap::from_mats(p.clone(), y.clone(), to_y)?;
    Ok((p, px, py))
}

/// Pushout of X <- Z -> Y, with its two injections.
pub fn pushout_complexes(
    f: &ChainMap, // Z -> X
    g: &ChainMap, // Z -> Y
) -> Result<(ChainComplex, ChainMap, ChainMap)> {
    if !f.source().same_presentation(g.source()) {
        return Err(Error::DimensionMismatch("pushout: sources differ".into()));
    }
    let x = f.target();
    let y = g.target();
    let ring = x.ring().clone();
    let mut degs: Vec<i64> = Vec::new();
    if let (Some((xl, xh)), Some((yl, yh))) = (
        x.support().or(Some((0, -1))),
        y.support().or(Some((0, -1))),
    ) {
        degs = (xl.min(yl)..=xh.max(yh)).collect();
    }
    let mut modules = BTreeMap::new();
    for &n in &degs {
        let sum = x.module(n).direct_sum(&y.module(n))?;
        let glue = f.component(n).mat().vstack(&g.component(n).mat().neg())?;
        let extended = sum.rels().hstack(&glue)?;
        modules.insert(
            n,
            FpModule::new(ring.clone(), sum.num_gens(), extended)?,
        );
    }
    let mut diffs = BTreeMap::new();
    for &n in &degs {
        if !modules.contains_key(&(n - 1)) {
            continue;
        }
        let big = Mat::block_diag(ring.clone(), &[x.diff(n).mat(), y.diff(n).mat()])?;
        diffs.insert(
            n,
            ModuleHom::new(modules[&n].clone(), modules[&(n - 1)].clone(), big)?,
        );
    }
    let p = ChainComplex::from_parts(ring.clone(), modules, diffs)?;
    let mut from_x = BTreeMap::new();
    let mut from_y = BTreeMap::new();
    for &n in &degs {
        let gx = x.module(n).num_gens();
        let gy = y.module(n).num_gens();
        let ix = Mat::identity(ring.clone(), gx).vstack(&Mat::zero(ring.clone(), gy, gx))?;
        let iy = Mat::zero(ring.clone(), gx, gy).vstack(&Mat::identity(ring.clone(), gy))?;
        from_x.insert(n, ix);
        from_y.insert(n, iy);
    }
    let jx = ChainMap::from_mats(x.clone(), p.clone(), from_x)?;
    let jy = ChainMap::from_mats(y.clone(), p.clone(), from_y)?;
    Ok((p, jx, jy))
}

/// Degreewise kernel of a chain map, with its inclusion. The differential
/// is the restriction of the source's, found by factoring through the
/// inclusion in the lower degree.
pub fn kernel_complex(f: &ChainMap) -> Result<(ChainComplex, ChainMap)> {
    let x = f.source();
    let ring = x.ring().clone();
    let degs = x.degrees();
    let mut modules = BTreeMap::new();
    let mut inclusions: BTreeMap<i64, ModuleHom> = BTreeMap::new();
    for &n in &degs {
        let (k, incl) = f.component(n).kernel()?;
        modules.insert(n, k);
        inclusions.insert(n, incl);
    }
    let mut diffs = BTreeMap::new();
    for &n in &degs {
        if !modules.contains_key(&(n - 1)) {
            continue;
        }
        let pushed = x.diff(n).mat().mul(inclusions[&n].mat())?;
        let aug = inclusions[&(n - 1)]
            .mat()
            .hstack(x.module(n - 1).rels())?;
        let sol = solve(&aug, &pushed)?
            .ok_or_else(|| Error::CrossCheck("kernel differential failed to factor".into()))?;
        let d = sol.submatrix(0, modules[&(n - 1)].num_gens(), 0, sol.cols());
        diffs.insert(
            n,
            ModuleHom::new(modules[&n].clone(), modules[&(n - 1)].clone(), d)?,
        );
    }
    let k = ChainComplex::from_parts(ring, modules, diffs)?;
    let mats = degs
        .iter()
        .map(|&n| (n, inclusions[&n].mat().clone()))
        .collect();
    let incl = ChainMap::from_mats(k.clone(), x.clone(), mats)?;
    Ok((k, incl))
}

/// Degreewise cokernel of a chain map, with its projection. Generators are
/// those of the target; relations gain the image columns.
pub fn cokernel_complex(f: &ChainMap) -> Result<(ChainComplex, ChainMap)> {
    let y = f.target();
    let ring = y.ring().clone();
    let degs = y.degrees();
    let mut modules = BTreeMap::new();
    for &n in &degs {
        let ym = y.module(n);
        let extended = ym.rels().hstack(f.component(n).mat())?;
        modules.insert(n, FpModule::new(ring.clone(), ym.num_gens(), extended)?);
    }
    let mut diffs = BTreeMap::new();
    for &n in &degs {
        if !modules.contains_key(&(n - 1)) {
            continue;
        }
        diffs.insert(
            n,
            ModuleHom::new(
                modules[&n].clone(),
                modules[&(n - 1)].clone(),
                y.diff(n).mat().clone(),
            )?,
        );
    }
    let q = ChainComplex::from_parts(ring.clone(), modules, diffs)?;
    let mats = degs
        .iter()
        .map(|&n| (n, Mat::identity(ring.clone(), y.module(n).num_gens())))
        .collect();
    let proj = ChainMap::from_mats(y.clone(), q.clone(), mats)?;
    Ok((q, proj))
}

/// The mapping cone of f: X -> Y: degree n is X_{n-1} + Y_n with the usual
/// twisted differential. Cone(identity) is exact.
pub fn mapping_cone(f: &ChainMap) -> Result<ChainComplex> {
    let x = f.source();
    let y = f.target();
    let ring = x.ring().clone();
    let mut degs: Vec<i64> = Vec::new();
    if let (Some((xl, xh)), Some((yl, yh))) = (
        x.support().or(Some((1, 0))),
        y.support().or(Some((1, 0))),
    ) {
        degs = ((xl + 1).min(yl)..=(xh + 1).max(yh)).collect();
    }
    let mut modules = BTreeMap::new();
    for &n in &degs {
        modules.insert(n, x.module(n - 1).direct_sum(&y.module(n))?);
    }
    let mut diffs = BTreeMap::new();
    for &n in &degs {
        if !modules.contains_key(&(n - 1)) {
            continue;
        }
        // d(x, y) = (-dX x, dY y - f x).
        let gy = y.module(n).num_gens();
        let top = x
            .diff(n - 1)
            .mat()
            .neg()
            .hstack(&Mat::zero(ring.clone(), x.module(n - 2).num_gens(), gy))?;
        let bottom = f
            .component(n - 1)
            .mat()
            .neg()
            .hstack(y.diff(n).mat())?;
        let mat = top.vstack(&bottom)?;
        diffs.insert(
            n,
            ModuleHom::new(modules[&n].clone(), modules[&(n - 1)].clone(), mat)?,
        );
    }
    ChainComplex::from_parts(ring, modules, diffs)
}

impl ChainComplex {
    /// Same stored presentation degree by degree (not just isomorphic).
    pub fn same_presentation(&self, other: &ChainComplex) -> bool {
        if self.ring() != other.ring() {
            return false;
        }
        let degs: Vec<i64> = self
            .degrees()
            .into_iter()
            .chain(other.degrees())
            .collect();
        for n in degs {
            if self.module(n).rels() != other.module(n).rels() {
                return false;
            }
            if self.diff(n).mat() != other.diff(n).mat() {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn z4() -> Ring {
        Ring::zmod(4).unwrap()
    }

    #[test]
    fn kernel_and_cokernel_of_disk_onto_sphere() {
        // p: D^1(Z/4) -> S^1(Z/4) kills the degree-0 copy; the kernel is
        // D^0-ish (a single module in degree 0), the cokernel is the sphere.
        let r = z4();
        let free = FpModule::free(r.clone(), 1);
        let d = ChainComplex::disk(1, &free);
        let s = ChainComplex::sphere(1, &free);
        let mut mats = BTreeMap::new();
        mats.insert(1, Mat::identity(r.clone(), 1));
        let p = ChainMap::from_mats(d.clone(), s.clone(), mats).unwrap();

        let (k, incl) = kernel_complex(&p).unwrap();
        assert!(incl.is_degreewise_injective().unwrap());
        assert_eq!(k.module(0).invariants(), free.invariants());
        assert!(k.module(1).invariants().is_zero());

        // The other half of the S^0 -> D^1 -> S^1 sequence: the cokernel of
        // the bottom inclusion is the top sphere.
        let s0 = ChainComplex::sphere(0, &free);
        let mut imats = BTreeMap::new();
        imats.insert(0, Mat::identity(r.clone(), 1));
        let i = ChainMap::from_mats(s0, d.clone(), imats).unwrap();
        let (q, proj) = cokernel_complex(&i).unwrap();
        assert!(proj.is_degreewise_surjective().unwrap());
        assert!(q.module(0).invariants().is_zero());
        assert_eq!(q.module(1).invariants(), free.invariants());
        assert!(q.same_presentation(&q.clone()));
    }

    #[test]
    fn kernel_differential_restricts_the_source() {
        // Quotient Z --2--> Z (a D^1 pattern over Z) by its degree-1 "2Z"
        // image: kernel of the projection to S^0(Z/2) keeps the original
        // differential on what survives.
        let z = FpModule::free(Ring::Z, 1);
        let x = ChainComplex::new(
            Ring::Z,
            0,
            vec![z.clone(), z.clone()],
            vec![ModuleHom::new(z.clone(), z.clone(), Mat::from_rows(Ring::Z, &[vec![2]])).unwrap()],
        )
        .unwrap();
        let z2 = FpModule::cyclic(Ring::Z, 2);
        let s = ChainComplex::sphere(0, &z2);
        let mut mats = BTreeMap::new();
        mats.insert(0, Mat::identity(Ring::Z, 1));
        let p = ChainMap::from_mats(x.clone(), s, mats).unwrap();
        let (k, _) = kernel_complex(&p).unwrap();
        // Degree 1 survives whole; degree 0 shrinks to 2Z; the differential
        // becomes an isomorphism, so the kernel complex is exact.
        assert!(k.is_exact().unwrap());
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        // X = D^1(Z), Y = S^0(Z); the only chain map has zero bottom
        // component, so putting the identity there must fail.
        let zfree = FpModule::free(Ring::Z, 1);
        let x = ChainComplex::disk(1, &zfree);
        let y = ChainComplex::sphere(0, &zfree);
        let mut mats = BTreeMap::new();
        mats.insert(0, Mat::identity(Ring::Z, 1));
        assert!(ChainMap::from_mats(x, y, mats).is_err());
    }

    #[test]
    fn disk_maps_are_degree_n_elements() {
        // Hom_Ch(D^1(R), Y) = Y_1: chain maps out of a free disk pick an
        // element of Y in the top degree.
        let r = z4();
        let free = FpModule::free(r.clone(), 1);
        let disk = ChainComplex::disk(1, &free);
        let y = {
            // Y: Z/4 --*2--> Z/4 in degrees 1, 0.
            let m = FpModule::free(r.clone(), 1);
            let two = ModuleHom::new(m.clone(), m.clone(), Mat::from_rows(r.clone(), &[vec![2]]))
                .unwrap();
            ChainComplex::new(r.clone(), 0, vec![m.clone(), m], vec![two]).unwrap()
        };
        let h = ChainMapModule::compute(&disk, &y).unwrap();
        assert_eq!(
            h.module().invariants(),
            y.module(1).invariants(),
            "disk adjunction"
        );
    }

    #[test]
    fn sphere_maps_are_cycles() {
        // Hom_Ch(S^1(R), Y) = Z_1(Y): kernel of *2 on Z/4 is Z/2.
        let r = z4();
        let free = FpModule::free(r.clone(), 1);
        let sphere = ChainComplex::sphere(1, &free);
        let m = FpModule::free(r.clone(), 1);
        let two = ModuleHom::new(m.clone(), m.clone(), Mat::from_rows(r.clone(), &[vec![2]]))
            .unwrap();
        let y = ChainComplex::new(r.clone(), 0, vec![m.clone(), m], vec![two]).unwrap();
        let h = ChainMapModule::compute(&sphere, &y).unwrap();
        assert_eq!(h.module().invariants().to_string(), "Z/2");
    }

    #[test]
    fn chain_map_module_decode_encode_roundtrip() {
        let r = z4();
        let s = ChainComplex::sphere(0, &FpModule::cyclic(r.clone(), 2));
        let d = ChainComplex::disk(0, &FpModule::free(r.clone(), 1));
        let h = ChainMapModule::compute(&s, &d).unwrap();
        for el in h.module().elements().unwrap() {
            let f = h.decode(&el).unwrap();
            let back = h.encode(&f).unwrap();
            assert!(h.module().elements_equal(&el, &back).unwrap());
        }
    }

    #[test]
    fn disk_identity_is_null_homotopic_sphere_identity_is_not() {
        let r = z4();
        let m = FpModule::cyclic(r.clone(), 2);
        let disk = ChainComplex::disk(2, &m);
        let h = null_homotopy(&ChainMap::identity(&disk)).unwrap();
        let hom = h.expect("disks are contractible");
        assert!(hom.witnesses_null(&ChainMap::identity(&disk)).unwrap());
        let sphere = ChainComplex::sphere(0, &m);
        assert!(null_homotopy(&ChainMap::identity(&sphere))
            .unwrap()
            .is_none());
    }

    #[test]
    fn lifting_through_a_quotient_map() {
        let r = z4();
        let z4m = FpModule::free(r.clone(), 1);
        let z2m = FpModule::cyclic(r.clone(), 2);
        let s4 = ChainComplex::sphere(0, &z4m);
        let s2 = ChainComplex::sphere(0, &z2m);
        let reduction = {
            let mut mats = BTreeMap::new();
            mats.insert(0, Mat::from_rows(r.clone(), &[vec![1]]));
            ChainMap::from_mats(s4.clone(), s2.clone(), mats).unwrap()
        };
        // The disk D^0(Z/4) maps onto S^0(Z/2) and lifts through s4 -> s2.
        let d = ChainComplex::disk(0, &z4m);
        let f = {
            let mut mats = BTreeMap::new();
            mats.insert(0, Mat::from_rows(r.clone(), &[vec![1]]));
            ChainMap::from_mats(d.clone(), s2.clone(), mats).unwrap()
        };
        let g = lift_through(&reduction, &f).unwrap().expect("free top lifts");
        assert!(reduction.compose(&g).unwrap().equals(&f).unwrap());
        // The identity of S^0(Z/2) does not lift through the reduction.
        let id2 = ChainMap::identity(&s2);
        assert!(lift_through(&reduction, &id2).unwrap().is_none());
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let r = z4();
        let m = FpModule::free(r.clone(), 1);
        let two = ModuleHom::new(m.clone(), m.clone(), Mat::from_rows(r.clone(), &[vec![2]]))
            .unwrap();
        let c = ChainComplex::new(r, 0, vec![m.clone(), m], vec![two]).unwrap();
        assert!(!c.is_exact().unwrap());
        let cone = mapping_cone(&ChainMap::identity(&c)).unwrap();
        assert!(cone.is_exact().unwrap());
    }

    #[test]
    fn pullback_and_pushout_glue_correctly() {
        let r = z4();
        let z4m = FpModule::free(r.clone(), 1);
        let z2m = FpModule::cyclic(r.clone(), 2);
        let s4 = ChainComplex::sphere(0, &z4m);
        let s2 = ChainComplex::sphere(0, &z2m);
        let p1 = {
            let mut mats = BTreeMap::new();
            mats.insert(0, Mat::from_rows(r.clone(), &[vec![1]]));
            ChainMap::from_mats(s4.clone(), s2.clone(), mats).unwrap()
        };
        let (pb, to_a, to_b) = pullback_complexes(&p1, &p1).unwrap();
        // Pullback of Z/4 -> Z/2 <- Z/4 is {(a,b): a = b mod 2}: order 8.
        assert_eq!(
            pb.module(0).order(),
            Some(num_bigint::BigInt::from(8))
        );
        assert!(p1.compose(&to_a).unwrap().equals(&p1.compose(&to_b).unwrap()).unwrap());

        let incl = {
            let mut mats = BTreeMap::new();
            mats.insert(0, Mat::from_rows(r.clone(), &[vec![2]]));
            ChainMap::from_mats(s2.clone(), s4.clone(), mats).unwrap()
        };
        let (po, from_a, from_b) = pushout_complexes(&incl, &incl).unwrap();
        // Pushout of Z/4 <- Z/2 -> Z/4 along *2: order 8.
        assert_eq!(po.module(0).order(), Some(num_bigint::BigInt::from(8)));
        assert!(from_a
            .compose(&incl)
            .unwrap()
            .equals(&from_b.compose(&incl).unwrap())
            .unwrap());
    }

    #[test]
    fn split_and_nonsplit_sequences_of_complexes() {
        // 0 -> S^0(Z/2) -> D^1(Z/2) -> S^1(Z/2) -> 0 over Z/4: degreewise
        // split (identity components), but not split as complexes (the disk
        // is exact; the direct sum of spheres is not).
        let r = z4();
        let m = FpModule::cyclic(r.clone(), 2);
        let disk = ChainComplex::disk(1, &m);
        let s0 = ChainComplex::sphere(0, &m);
        let s1 = ChainComplex::sphere(1, &m);
        let incl = {
            let mut mats = BTreeMap::new();
            mats.insert(0, Mat::identity(r.clone(), 1));
            ChainMap::from_mats(s0.clone(), disk.clone(), mats).unwrap()
        };
        let proj = {
            let mut mats = BTreeMap::new();
            mats.insert(1, Mat::identity(r.clone(), 1));
            ChainMap::from_mats(disk.clone(), s1.clone(), mats).unwrap()
        };
        let ses = ChShortExactSeq::new(incl, proj).unwrap();
        assert!(ses.is_degreewise_split().unwrap());
        assert!(!ses.is_split().unwrap());
    }
}
