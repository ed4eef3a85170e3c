//! Graded modules over standard graded algebras `R[y_1..y_m]/J` and explorers
//! for quantities of the components `N_n` that stabilize for large `n`.
//!
//! Polynomials of the graded algebra live in the total ring whose variables are
//! those of `R` followed by `y_1..y_m`; the grading counts `y`-exponents only.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::decomp::{AssSet, PrimeIdeal};
use crate::dimdepth::{
    avoid_primes, depth_k, filter_primes, is_sequence_in_dim_gt_k, local_ass, Depth, FilterSpec,
    SequenceCheck,
};
use crate::error::{Error, Result};
use crate::fgmod::Module;
use crate::groebner::engine::{self, zero_vector, ModuleOrder, Vector};
use crate::groebner::Ideal;
use crate::polycore::{Monomial, MonomialOrder, Poly, Ring};
use crate::theorems::{ass_lch_formula, ass_top_lch, ext_ass_sets, ExtIdealSpec};

/// Default sampled degrees and window.
pub const DEFAULT_RANGE: (usize, usize) = (0, 12);
pub const DEFAULT_WINDOW: usize = 3;

/// `ℜ = R[y_1..y_m]/J` with `J` homogeneous in the `y`-degree.
#[derive(Clone, Debug)]
pub struct GradedAlgebraSpec {
    base: Ring,
    total: Ring,
    relations: Vec<Poly>,
}

impl GradedAlgebraSpec {
    /// The polynomial algebra `R[y]` with the given names for the graded variables.
    pub fn polynomial(base: &Ring, ynames: &[String]) -> Result<GradedAlgebraSpec> {
        for y in ynames {
            if base.var_index(y).is_some() {
                return Err(Error::MalformedInput(format!(
                    "graded variable {y} clashes with a base variable"
                )));
            }
        }
        let mut names = base.vars().to_vec();
        names.extend(ynames.iter().cloned());
        let total = Ring::new(base.field(), names, MonomialOrder::Grevlex)?;
        Ok(GradedAlgebraSpec {
            base: base.clone(),
            total,
            relations: Vec::new(),
        })
    }

    pub fn new(base: &Ring, ynames: &[String], relations: Vec<Poly>) -> Result<GradedAlgebraSpec> {
        let mut alg = GradedAlgebraSpec::polynomial(base, ynames)?;
        for r in &relations {
            alg.total.ensure_same(r.ring(), "graded algebra")?;
            alg.y_degree(r)?;
        }
        alg.relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(alg)
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    /// `R[y]`.
    pub fn total(&self) -> &Ring {
        &self.total
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn ngraded(&self) -> usize {
        self.total.nvars() - self.base.nvars()
    }

    pub fn graded_names(&self) -> &[String] {
        &self.total.vars()[self.base.nvars()..]
    }

    /// The `y`-degree of a nonzero homogeneous polynomial; `None` for zero.
    pub fn y_degree(&self, f: &Poly) -> Result<Option<u32>> {
        let nb = self.base.nvars();
        let mut deg = None;
        for t in f.terms() {
            let d: u32 = t.mon.0[nb..].iter().map(|&e| e as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::NotHomogeneous(f.to_string())),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// `f = Σ_α c_α y^α` with `c_α ∈ R`.
    fn split(&self, f: &Poly) -> BTreeMap<Vec<u16>, Poly> {
        let nb = self.base.nvars();
        let mut parts: BTreeMap<Vec<u16>, Vec<(Monomial, _)>> = BTreeMap::new();
        for t in f.terms() {
            parts
                .entry(t.mon.0[nb..].to_vec())
                .or_default()
                .push((Monomial::from_exps(&t.mon.0[..nb]), t.coeff.clone()));
        }
        parts
            .into_iter()
            .map(|(a, terms)| {
                (
                    a,
                    Poly::normalize(&self.base, terms).expect("coefficients of the same field"),
                )
            })
            .collect()
    }
}

/// Exponent vectors of degree `d` in `m` variables, in descending lex order.
fn monomials_of_degree(m: usize, d: usize) -> Vec<Vec<u16>> {
    if m == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(m - 1, d - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

/// `𝔑 = ⊕_i ℜ(−d_i) / (relation columns)`.
#[derive(Clone, Debug)]
pub struct GradedModulePresentation {
    algebra: GradedAlgebraSpec,
    degrees: Vec<u32>,
    relations: Vec<Vector>,
}

impl GradedModulePresentation {
    pub fn new(
        algebra: GradedAlgebraSpec,
        degrees: Vec<u32>,
        relations: Vec<Vector>,
    ) -> Result<Self> {
        let g = degrees.len();
        let mut kept = Vec::new();
        for col in relations {
            if col.len() != g {
                return Err(Error::MalformedInput(format!(
                    "relation of length {} for {g} generators",
                    col.len()
                )));
            }
            let mut deg = None;
            for (i, f) in col.iter().enumerate() {
                algebra.total.ensure_same(f.ring(), "graded module")?;
                if let Some(e) = algebra.y_degree(f)? {
                    let d = e + degrees[i];
                    match deg {
                        None => deg = Some(d),
                        Some(d0) if d0 != d => {
                            return Err(Error::NotHomogeneous(format!("relation column {col:?}")));
                        }
                        _ => {}
                    }
                }
            }
            if deg.is_some() {
                kept.push(col);
            }
        }
        Ok(GradedModulePresentation {
            algebra,
            degrees,
            relations: kept,
        })
    }

    pub fn free(algebra: GradedAlgebraSpec, degrees: Vec<u32>) -> Self {
        GradedModulePresentation {
            algebra,
            degrees,
            relations: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &GradedAlgebraSpec {
        &self.algebra
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    /// Degree of a nonzero homogeneous column.
    fn column_degree(&self, col: &[Poly]) -> u32 {
        col.iter()
            .zip(&self.degrees)
            .find_map(|(f, d)| self.algebra.y_degree(f).ok().flatten().map(|e| e + d))
            .expect("stored columns are nonzero and homogeneous")
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.algebra.total != other.algebra.total
            || self.algebra.relations != other.algebra.relations
        {
            return Err(Error::ContextMismatch(
                "direct sum over different graded algebras".into(),
            ));
        }
        let ring = &self.algebra.total;
        let (a, b) = (self.degrees.len(), other.degrees.len());
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut v = r.clone();
            v.extend(zero_vector(ring, b));
            rels.push(v);
        }
        for r in &other.relations {
            let mut v = zero_vector(ring, a);
            v.extend(r.iter().cloned());
            rels.push(v);
        }
        let mut degrees = self.degrees.clone();
        degrees.extend(&other.degrees);
        Ok(GradedModulePresentation {
            algebra: self.algebra.clone(),
            degrees,
            relations: rels,
        })
    }
}

impl fmt::Display for GradedModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .algebra
            .relations
            .iter()
            .map(|r| r.to_string())
            .collect();
        let cols: Vec<String> = self
            .relations
            .iter()
            .map(|c| {
                format!(
                    "[{}]",
                    c.iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        write!(
            f,
            "graded over [{}] / ({}), degrees {:?}, relations [{}]",
            self.algebra.graded_names().join(", "),
            rels.join(", "),
            self.degrees,
            cols.join(", ")
        )
    }
}

/// The `R`-module `N_n` with basis `y^α e_i`, `|α| = n − d_i`.
pub fn graded_component(g: &GradedModulePresentation, n: usize) -> Module {
    let alg = &g.algebra;
    let m = alg.ngraded();
    let mut index: HashMap<(usize, Vec<u16>), usize> = HashMap::new();
    for (i, &d) in g.degrees.iter().enumerate() {
        if (d as usize) <= n {
            for a in monomials_of_degree(m, n - d as usize) {
                let next = index.len();
                index.insert((i, a), next);
            }
        }
    }
    let rank = index.len();
    let base = &alg.base;
    let mut rels: Vec<Vector> = Vec::new();
    // y^β · column, for a column whose entry i is `parts[i]`
    let mut push_multiples = |parts: &[(usize, BTreeMap<Vec<u16>, Poly>)], deg: usize| {
        if deg > n {
            return;
        }
        for beta in monomials_of_degree(m, n - deg) {
            let mut v = zero_vector(base, rank);
            for (i, split) in parts {
                for (a, c) in split {
                    let e: Vec<u16> = a.iter().zip(&beta).map(|(x, y)| x + y).collect();
                    let pos = index[&(*i, e)];
                    v[pos] = v[pos].add(c);
                }
            }
            rels.push(v);
        }
    };
    for col in &g.relations {
        let parts: Vec<_> = col
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| (i, alg.split(f)))
            .collect();
        push_multiples(&parts, g.column_degree(col) as usize);
    }
    for r in &alg.relations {
        let e = alg
            .y_degree(r)
            .ok()
            .flatten()
            .expect("nonzero homogeneous relation");
        let split = alg.split(r);
        for (i, &d) in g.degrees.iter().enumerate() {
            push_multiples(&[(i, split.clone())], (e + d) as usize);
        }
    }
    Module::from_parts(base, rank, rels)
}

/// Constructors for test families.
#[derive(Clone, Debug)]
pub enum FamilyKind {
    /// `⊕ I^n M` over the Rees algebra `R[It]`.
    Rees,
    /// A user-supplied presentation, passed through.
    Custom(GradedModulePresentation),
}

fn default_graded_names(base: &Ring, s: usize) -> Vec<String> {
    let stem: Vec<String> = if s <= 3 {
        ["u", "v", "w"][..s].iter().map(|x| x.to_string()).collect()
    } else {
        (1..=s).map(|i| format!("u{i}")).collect()
    };
    let mut taken: Vec<String> = base.vars().to_vec();
    let mut out = Vec::new();
    for name in stem {
        let probe = base.with_vars(taken.clone(), MonomialOrder::Grevlex);
        let fresh = probe.fresh_name(&name);
        taken.push(fresh.clone());
        out.push(fresh);
    }
    out
}

pub fn make_family(kind: FamilyKind, i: &Ideal, m: &Module) -> Result<GradedModulePresentation> {
    match kind {
        FamilyKind::Custom(g) => Ok(g),
        FamilyKind::Rees => rees_module(i, m),
    }
}

/// `⊕_n I^n M`, generated by the generators of `M` in degree 0. The relations are
/// `(U + (y_i − a_i t)) ∩ R[y]^g` for `M = R^g/U`, computed exactly by eliminating `t`.
pub fn rees_module(i: &Ideal, m: &Module) -> Result<GradedModulePresentation> {
    i.ring().ensure_same(m.ring(), "Rees module")?;
    let base = i.ring();
    let gens: Vec<Poly> = i.gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    let s = gens.len();
    let ynames = default_graded_names(base, s);
    let nb = base.nvars();

    // t first, eliminated by a block order
    let mut names = vec![base.fresh_name("t")];
    names.extend(base.vars().iter().cloned());
    names.extend(ynames.iter().cloned());
    let elim = Ring::new(base.field(), names, MonomialOrder::Block(1))?;
    let from_base = |f: &Poly| {
        f.map_to(&elim, |mo| {
            let mut e = Monomial::one(1 + nb + s);
            e.0[1..=nb].copy_from_slice(&mo.0);
            e
        })
    };
    let t = elim.var(0);
    let links: Vec<Poly> = gens
        .iter()
        .enumerate()
        .map(|(j, a)| elim.var(1 + nb + j).sub(&from_base(a).mul(&t)))
        .collect();

    let algebra_ideal = Ideal::from_gens(&elim, links.clone()).eliminate(&[0]);
    let algebra = GradedAlgebraSpec::polynomial(base, &ynames)?;
    let to_total = |f: &Poly| f.map_to(algebra.total(), |mo| Monomial::from_exps(&mo.0[1..]));
    let alg_rels: Vec<Poly> = algebra_ideal.gb().iter().map(to_total).collect();
    let algebra = GradedAlgebraSpec::new(base, &ynames, alg_rels)?;
    let alg_ideal = Ideal::from_gens(algebra.total(), algebra.relations.clone());

    let g = m.rank();
    let mut module_gens: Vec<Vector> = m
        .relations()
        .iter()
        .map(|c| c.iter().map(from_base).collect())
        .collect();
    for l in &links {
        for j in 0..g {
            let mut v = zero_vector(&elim, g);
            v[j] = l.clone();
            module_gens.push(v);
        }
    }
    let gb = engine::groebner(&elim, g, module_gens, ModuleOrder::Top);
    let relations: Vec<Vector> = gb
        .into_iter()
        .filter(|v| v.iter().all(|f| f.degree_in(0) == 0))
        .map(|v| v.iter().map(to_total).collect())
        // multiples of algebra relations are already accounted for
        .filter(|v: &Vector| !v.iter().all(|f| f.is_zero() || alg_ideal.contains(f)))
        .collect();
    GradedModulePresentation::new(algebra, vec![0; g], relations)
}

/// A sampled value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabValue {
    Set(AssSet),
    Depth(Depth),
    /// The quantity is not defined at this `n` (for example `l` exceeds the depth).
    Declined(String),
}

impl fmt::Display for StabValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabValue::Set(s) => write!(f, "{s}"),
            StabValue::Depth(d) => write!(f, "{d}"),
            StabValue::Declined(why) => write!(f, "declined: {why}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    StableInWindow,
    NotStableInWindow,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::StableInWindow => "stable-in-window",
            Verdict::NotStableInWindow => "not-stable-in-window",
        })
    }
}

/// Values for `n` in an inclusive range. Stability is only ever claimed within
/// the sampled window.
#[derive(Clone, Debug)]
pub struct StabilizationReport {
    pub quantity: String,
    pub values: Vec<(usize, StabValue)>,
    pub stable_value: Option<StabValue>,
    /// Least sampled `n` from which all sampled values agree.
    pub onset: Option<usize>,
    pub window: usize,
    pub verdict: Verdict,
    pub seed: u64,
}

impl StabilizationReport {
    fn assemble(quantity: &str, values: Vec<(usize, StabValue)>, window: usize, seed: u64) -> Self {
        let last = values.last().map(|(_, v)| v.clone());
        let stable = values.len() >= window
            && values[values.len() - window..]
                .iter()
                .all(|(_, v)| Some(v) == last.as_ref());
        let onset = last.as_ref().map(|l| {
            let mut start = values.len() - 1;
            while start > 0 && &values[start - 1].1 == l {
                start -= 1;
            }
            values[start].0
        });
        let verdict = if stable {
            Verdict::StableInWindow
        } else {
            Verdict::NotStableInWindow
        };
        StabilizationReport {
            quantity: quantity.to_string(),
            stable_value: if stable { last } else { None },
            onset: if stable { onset } else { None },
            values,
            window,
            verdict,
            seed,
        }
    }

    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::StableInWindow
    }
}

/// Inclusive range of degrees and window length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub lo: usize,
    pub hi: usize,
    pub window: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            lo: DEFAULT_RANGE.0,
            hi: DEFAULT_RANGE.1,
            window: DEFAULT_WINDOW,
        }
    }
}

impl Sampling {
    pub fn new(lo: usize, hi: usize, window: usize) -> Result<Sampling> {
        if lo > hi {
            return Err(Error::MalformedInput(format!("empty range {lo}..{hi}")));
        }
        if window < 2 {
            return Err(Error::MalformedInput(format!("window {window} is below 2")));
        }
        Ok(Sampling { lo, hi, window })
    }

    fn degrees(&self) -> Vec<usize> {
        (self.lo..=self.hi).collect()
    }
}

/// Components are independent; they are computed in parallel and reassembled in
/// order.
fn per_degree<T: Send>(
    s: Sampling,
    f: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Vec<(usize, T)>> {
    s.degrees()
        .into_par_iter()
        .map(|n| f(n).map(|v| (n, v)))
        .collect()
}

pub fn stabilize_ass(
    g: &GradedModulePresentation,
    s: Sampling,
    seed: u64,
) -> Result<StabilizationReport> {
    let values = per_degree(s, |n| {
        Ok(StabValue::Set(local_ass(&graded_component(g, n))?))
    })?;
    Ok(StabilizationReport::assemble("ass", values, s.window, seed))
}

pub fn stabilize_depth_k(
    g: &GradedModulePresentation,
    i: &Ideal,
    k: i32,
    s: Sampling,
    seed: u64,
) -> Result<StabilizationReport> {
    i.ring().ensure_same(g.algebra.base(), "graded depth")?;
    let values = per_degree(s, |n| {
        Ok(StabValue::Depth(
            depth_k(i, &graded_component(g, n), k, seed)?.value,
        ))
    })?;
    Ok(StabilizationReport::assemble(
        &format!("depth_{k}"),
        values,
        s.window,
        seed,
    ))
}

#[derive(Clone, Debug)]
pub struct CommonSequence {
    pub sequence: Vec<Poly>,
    /// The eventual value of `depth_k(I, N_n)`.
    pub r: usize,
    pub onset: usize,
    pub table: Vec<(usize, SequenceCheck)>,
    /// The predicate holds at every sampled `n ≥ onset`.
    pub valid_past_onset: bool,
}

/// One sequence in `I` that is an `N_n`-sequence in dimension `> k` for every
/// sampled `n` past the onset of the depth.
pub fn common_sequence(
    g: &GradedModulePresentation,
    i: &Ideal,
    k: i32,
    s: Sampling,
    seed: u64,
) -> Result<CommonSequence> {
    let depth = stabilize_depth_k(g, i, k, s, seed)?;
    let (Some(StabValue::Depth(value)), Some(onset)) = (&depth.stable_value, depth.onset) else {
        return Err(Error::Inconclusive(
            "depth is not stable in the sampled window".into(),
        ));
    };
    let Depth::Finite(r) = *value else {
        return Err(Error::Inconclusive("the eventual depth is infinite".into()));
    };
    let comps: Vec<(usize, Module)> = (s.lo..=s.hi).map(|n| (n, graded_component(g, n))).collect();
    let tail: Vec<&Module> = comps
        .iter()
        .filter(|(n, _)| *n >= onset)
        .map(|(_, c)| c)
        .collect();
    let mut sequence = Vec::with_capacity(r);
    for step in 0..r {
        let sets: Vec<AssSet> = tail
            .par_iter()
            .map(|c| {
                Ok(filter_primes(
                    &local_ass(&c.quotient_by(&sequence)?)?,
                    FilterSpec::above(k),
                ))
            })
            .collect::<Result<_>>()?;
        let primes: Vec<PrimeIdeal> = sets
            .iter()
            .fold(AssSet::empty(), |a, b| a.union(b))
            .primes()
            .to_vec();
        sequence.push(avoid_primes(i, &primes, seed.wrapping_add(step as u64))?);
    }
    let table: Vec<(usize, SequenceCheck)> = comps
        .par_iter()
        .map(|(n, c)| Ok((*n, is_sequence_in_dim_gt_k(&sequence, c, k)?)))
        .collect::<Result<_>>()?;
    let valid_past_onset = table
        .iter()
        .filter(|(n, _)| *n >= onset)
        .all(|(_, c)| c.holds);
    Ok(CommonSequence {
        sequence,
        r,
        onset,
        table,
        valid_past_onset,
    })
}

/// Per-degree detail of the theorem-set explorer.
#[derive(Clone, Debug)]
pub struct TheoremRow {
    pub n: usize,
    pub depth: Depth,
    pub unproven_regime: bool,
    /// `⋃_{j≤l} Ass(Ext^j(R/I, N_n))_{≥k}` when `M` is free.
    pub ext_set: Option<AssSet>,
    pub ext_agrees: Option<bool>,
    /// `Ass(H^r_I(M, N_n))` at `k = −1`, when `r` is finite.
    pub top_set: Option<AssSet>,
}

#[derive(Clone, Debug)]
pub struct TheoremStabilization {
    pub report: StabilizationReport,
    pub rows: Vec<TheoremRow>,
}

fn is_free(m: &Module) -> bool {
    m.rank() > 0 && m.relations().is_empty()
}

/// `⋃_{j≤l} Ass(H^j_I(M, N_n))_{≥k}` per `n`, cross-checked against the Ext side
/// when `M` is free.
#[allow(clippy::too_many_arguments)]
pub fn stabilize_theorem_sets(
    g: &GradedModulePresentation,
    i: &Ideal,
    m: &Module,
    k: i32,
    l: usize,
    s: Sampling,
    seed: u64,
) -> Result<TheoremStabilization> {
    i.ring()
        .ensure_same(g.algebra.base(), "graded theorem sets")?;
    let rows = per_degree(s, |n| {
        let nn = graded_component(g, n);
        match ass_lch_formula(i, m, &nn, k, l, seed) {
            Ok(res) => {
                let (ext_set, ext_agrees) = if is_free(m) {
                    let e = ext_ass_sets(
                        &ExtIdealSpec::Power {
                            ideal: i.clone(),
                            t: 1,
                        },
                        &nn,
                        k,
                        l,
                        seed,
                    )?;
                    let agrees = e == res.union;
                    (Some(e), Some(agrees))
                } else {
                    (None, None)
                };
                let top_set = if k == -1 && res.depth.value.is_finite() {
                    Some(ass_top_lch(i, m, &nn, seed)?.set)
                } else {
                    None
                };
                let row = TheoremRow {
                    n,
                    depth: res.depth.value,
                    unproven_regime: res.unproven_regime,
                    ext_set,
                    ext_agrees,
                    top_set,
                };
                Ok((StabValue::Set(res.union), row))
            }
            Err(Error::ExceedsDepth { depth, .. }) => {
                let r = depth.parse().map(Depth::Finite).unwrap_or(Depth::Infinite);
                let row = TheoremRow {
                    n,
                    depth: r,
                    unproven_regime: false,
                    ext_set: None,
                    ext_agrees: None,
                    top_set: None,
                };
                Ok((
                    StabValue::Declined(format!("l = {l} exceeds depth {depth}")),
                    row,
                ))
            }
            Err(e) => Err(e),
        }
    })?;
    let values = rows.iter().map(|(n, (v, _))| (*n, v.clone())).collect();
    let rows = rows.into_iter().map(|(_, (_, row))| row).collect();
    let report =
        StabilizationReport::assemble(&format!("asslch k={k} l={l}"), values, s.window, seed);
    Ok(TheoremStabilization { report, rows })
}

#[cfg(test)]
mod tests;
