//! Associated-prime sets of generalized local cohomology below `depth_k`, and the
//! Ext-side sets they are compared against.
//!
//! For `l ≤ r = depth_k(I_M, N)` the union `⋃_{j≤l} Ass(H^j_I(M,N))_{≥k}` equals
//! `⋃_{j≤l} Ass(N/(x_1..x_j)N)_{≥k} ∩ V(I_M)` for any sequence `x` in dimension
//! `> k` in `I_M`. The right-hand side is what [`ass_lch_formula`] computes; the
//! Ext functions compute `⋃_{j≤l} Ass(Ext^j(R/J, N))_{≥k}` directly for `J` a
//! power of `I` or an ideal of generator powers.

use crate::decomp::{AssSet, PrimeIdeal};
use crate::dimdepth::{
    depth_k, filter_primes, ideal_im, is_sequence_in_dim_gt_k, local_ass, sequence_of_length,
    Depth, DepthValue, FilterSpec,
};
use crate::error::{Error, Result};
use crate::fgmod::{ext, ext_range, Module};
use crate::groebner::Ideal;
use crate::polycore::Poly;

/// Largest prefix length for which permutability is checked by brute force.
pub const MAX_PERMUTATION_LENGTH: usize = 4;

#[derive(Clone, Debug)]
pub struct TheoremSetResult {
    pub k: i32,
    pub l: usize,
    /// `Ass(N/(x_1..x_j)N)_{≥k} ∩ V(I_M)` for `j = 0..=l`.
    pub sets_by_j: Vec<AssSet>,
    pub union: AssSet,
    /// The first `l` elements of the sequence.
    pub witness: Vec<Poly>,
    /// `depth_k(I_M, N)` with a maximal sequence.
    pub depth: DepthValue,
    pub i_m: Ideal,
    /// Set when `depth_k(I_M, N) = ∞`: the sets are computed, but no theorem
    /// identifies them with local cohomology.
    pub unproven_regime: bool,
}

/// `Ass(N/(x_1..x_j)N)_{≥k} ∩ V(J)` for `j = 0..=xs.len()`.
pub fn quotient_sets(n: &Module, j_ideal: &Ideal, k: i32, xs: &[Poly]) -> Result<Vec<AssSet>> {
    let mut out = Vec::with_capacity(xs.len() + 1);
    for j in 0..=xs.len() {
        let q = n.quotient_by(&xs[..j])?;
        out.push(filter_primes(&local_ass(&q)?, FilterSpec::at_least(k)).in_variety(j_ideal));
    }
    Ok(out)
}

fn union_all(sets: &[AssSet]) -> AssSet {
    sets.iter().fold(AssSet::empty(), |acc, s| acc.union(s))
}

fn check_k(k: i32) -> Result<()> {
    if k < -1 {
        return Err(Error::MalformedInput(format!("k = {k} is below -1")));
    }
    Ok(())
}

/// The set formula for `⋃_{j≤l} Ass(H^j_I(M,N))_{≥k}`.
pub fn ass_lch_formula(
    i: &Ideal,
    m: &Module,
    n: &Module,
    k: i32,
    l: usize,
    seed: u64,
) -> Result<TheoremSetResult> {
    check_k(k)?;
    i.ring().ensure_same(m.ring(), "local cohomology")?;
    i.ring().ensure_same(n.ring(), "local cohomology")?;
    let i_m = ideal_im(i, m)?;
    let depth = depth_k(&i_m, n, k, seed)?;
    let (witness, unproven_regime) = match depth.value {
        Depth::Finite(r) if l > r => {
            return Err(Error::ExceedsDepth {
                requested: l,
                depth: r.to_string(),
            });
        }
        Depth::Finite(_) => (depth.witness[..l].to_vec(), false),
        Depth::Infinite => (sequence_of_length(&i_m, n, k, l, seed)?, true),
    };
    let sets_by_j = quotient_sets(n, &i_m, k, &witness)?;
    let union = union_all(&sets_by_j);
    Ok(TheoremSetResult {
        k,
        l,
        sets_by_j,
        union,
        witness,
        depth,
        i_m,
        unproven_regime,
    })
}

#[derive(Clone, Debug)]
pub struct TopLchResult {
    pub r: usize,
    pub witness: Vec<Poly>,
    pub i_m: Ideal,
    pub set: AssSet,
}

/// `Ass(H^r_I(M,N)) = Ass(N/(x_1..x_r)N) ∩ V(I_M)` for `r = depth(I_M, N)`, the
/// first non-vanishing index.
pub fn ass_top_lch(i: &Ideal, m: &Module, n: &Module, seed: u64) -> Result<TopLchResult> {
    i.ring().ensure_same(m.ring(), "local cohomology")?;
    i.ring().ensure_same(n.ring(), "local cohomology")?;
    let i_m = ideal_im(i, m)?;
    let depth = depth_k(&i_m, n, -1, seed)?;
    let Depth::Finite(r) = depth.value else {
        return Err(Error::NoTop);
    };
    let q = n.quotient_by(&depth.witness)?;
    let set = local_ass(&q)?.in_variety(&i_m);
    Ok(TopLchResult {
        r,
        witness: depth.witness,
        i_m,
        set,
    })
}

/// The ideal `J` of `Ext^j(R/J, N)`.
#[derive(Clone, Debug)]
pub enum ExtIdealSpec {
    /// `I^t`.
    Power { ideal: Ideal, t: u32 },
    /// `(a_1^{t_1}, …, a_s^{t_s})`.
    GeneratorPowers { gens: Vec<Poly>, exps: Vec<u32> },
}

impl ExtIdealSpec {
    /// The ideal whose depth bounds `l` (`I`, resp. `(a_1, …, a_s)`).
    pub fn base(&self) -> Result<Ideal> {
        match self {
            ExtIdealSpec::Power { ideal, .. } => Ok(ideal.clone()),
            ExtIdealSpec::GeneratorPowers { gens, .. } => {
                let ring = gens
                    .first()
                    .ok_or_else(|| Error::MalformedInput("no generators".into()))?
                    .ring();
                Ideal::new(ring, gens.clone())
            }
        }
    }

    pub fn ideal(&self) -> Result<Ideal> {
        match self {
            ExtIdealSpec::Power { ideal, t } => {
                if *t == 0 {
                    return Err(Error::MalformedInput("power t must be positive".into()));
                }
                Ok(ideal.power(*t))
            }
            ExtIdealSpec::GeneratorPowers { gens, exps } => {
                if gens.len() != exps.len() || exps.contains(&0) {
                    return Err(Error::MalformedInput(
                        "one positive exponent per generator expected".into(),
                    ));
                }
                let base = self.base()?;
                Ok(Ideal::generator_powers(base.ring(), gens, exps))
            }
        }
    }
}

/// `Ass(Ext^j(R/J, N))_{≥k}` for `j = 0..=top`, without any depth check.
pub fn ext_ass_layers(spec: &ExtIdealSpec, n: &Module, k: i32, top: usize) -> Result<Vec<AssSet>> {
    check_k(k)?;
    let j_ideal = spec.ideal()?;
    j_ideal.ring().ensure_same(n.ring(), "Ext")?;
    ext_range(top, &Module::cyclic(&j_ideal), n)?
        .iter()
        .map(|e| {
            Ok(filter_primes(
                &local_ass(&e.module)?,
                FilterSpec::at_least(k),
            ))
        })
        .collect()
}

/// `⋃_{j≤l} Ass(Ext^j(R/J, N))_{≥k}` for `l ≤ depth_k(I, N)`.
pub fn ext_ass_sets(
    spec: &ExtIdealSpec,
    n: &Module,
    k: i32,
    l: usize,
    seed: u64,
) -> Result<AssSet> {
    let base = spec.base()?;
    let r = depth_k(&base, n, k, seed)?.value;
    if !r.admits(l) {
        return Err(Error::ExceedsDepth {
            requested: l,
            depth: r.to_string(),
        });
    }
    Ok(union_all(&ext_ass_layers(spec, n, k, l)?))
}

#[derive(Clone, Debug)]
pub struct PowerInvarianceReport {
    pub k: i32,
    pub exponents: Vec<u32>,
    /// `⋃_{j≤r} Ass(N/(x_1^{n_1}..x_j^{n_j})N)_{≥k}`.
    pub powered: AssSet,
    /// `⋃_{j≤r} Ass(N/(x_1..x_j)N)_{≥k}`.
    pub plain: AssSet,
    pub equal: bool,
    /// At `k = 1`: the unfiltered unions with the maximal ideal adjoined.
    pub with_maximal: Option<(AssSet, AssSet, bool)>,
}

/// Compares the quotient unions of a sequence and of its componentwise powers.
pub fn power_invariance_check(
    xs: &[Poly],
    n: &Module,
    k: i32,
    exps: &[u32],
) -> Result<PowerInvarianceReport> {
    check_k(k)?;
    if xs.len() != exps.len() || exps.contains(&0) {
        return Err(Error::MalformedInput(
            "one positive exponent per sequence element expected".into(),
        ));
    }
    let check = is_sequence_in_dim_gt_k(xs, n, k)?;
    if let Some(index) = check.failing_index {
        return Err(Error::NotASequence { index });
    }
    let powers: Vec<Poly> = xs.iter().zip(exps).map(|(x, &e)| x.pow(e)).collect();
    let unfiltered = |seq: &[Poly]| -> Result<AssSet> {
        let mut acc = AssSet::empty();
        for j in 0..=seq.len() {
            acc = acc.union(&local_ass(&n.quotient_by(&seq[..j])?)?);
        }
        Ok(acc)
    };
    let all_powered = unfiltered(&powers)?;
    let all_plain = unfiltered(xs)?;
    let powered = filter_primes(&all_powered, FilterSpec::at_least(k));
    let plain = filter_primes(&all_plain, FilterSpec::at_least(k));
    let equal = powered == plain;
    let with_maximal = if k == 1 {
        let m = AssSet::new([PrimeIdeal::certified(Ideal::maximal(n.ring()))]);
        let a = all_powered.union(&m);
        let b = all_plain.union(&m);
        let eq = a == b;
        Some((a, b, eq))
    } else {
        None
    };
    Ok(PowerInvarianceReport {
        k,
        exponents: exps.to_vec(),
        powered,
        plain,
        equal,
        with_maximal,
    })
}

#[derive(Clone, Debug)]
pub struct StarSetReport {
    pub j: usize,
    /// `Ass(N/(x_1..x_j)N)_{≥k+1} ∪ ⋃_{i≤j} Ass(N/(x_1..x_i)N)_k`.
    pub star: AssSet,
    /// `⋃_t Ass(Ext^j(R/I^t, N))_{≥k}` over the sampled `t`.
    pub ext_union: AssSet,
    pub contained: bool,
    /// Whether every ordering of `x_1..x_j` is a sequence in dimension `> k`;
    /// `None` when not requested.
    pub permutable: Option<bool>,
}

/// The comparison set `(*)` and the containment of the Ext sets in it.
pub fn bn_star_set(
    xs: &[Poly],
    n: &Module,
    i: &Ideal,
    k: i32,
    j: usize,
    t_values: &[u32],
    check_permutable: bool,
) -> Result<StarSetReport> {
    check_k(k)?;
    if j > xs.len() {
        return Err(Error::MalformedInput(format!(
            "j = {j} exceeds the sequence length {}",
            xs.len()
        )));
    }
    let permutable = if check_permutable {
        if j > MAX_PERMUTATION_LENGTH {
            return Err(Error::TooManyPermutations(j));
        }
        let mut ok = true;
        for perm in permutations(j) {
            let seq: Vec<Poly> = perm.iter().map(|&a| xs[a].clone()).collect();
            if !is_sequence_in_dim_gt_k(&seq, n, k)?.holds {
                ok = false;
                break;
            }
        }
        Some(ok)
    } else {
        None
    };
    let mut star = filter_primes(
        &local_ass(&n.quotient_by(&xs[..j])?)?,
        FilterSpec::at_least(k + 1),
    );
    for a in 0..=j {
        let ass = local_ass(&n.quotient_by(&xs[..a])?)?;
        star = star.union(&AssSet::new(ass.iter().filter(|p| p.dim == k).cloned()));
    }
    let mut ext_union = AssSet::empty();
    for &t in t_values {
        let e = ext(
            j,
            &Module::cyclic(
                &ExtIdealSpec::Power {
                    ideal: i.clone(),
                    t,
                }
                .ideal()?,
            ),
            n,
        )?;
        ext_union = ext_union.union(&filter_primes(
            &local_ass(&e.module)?,
            FilterSpec::at_least(k),
        ));
    }
    let contained = ext_union.is_subset(&star);
    Ok(StarSetReport {
        j,
        star,
        ext_union,
        contained,
        permutable,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
