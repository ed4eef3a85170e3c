//! Dimension filters, sequences in dimension greater than `k`, `depth_k` and `I_M`.
//!
//! Everything here lives in the local model: associated primes are restricted
//! to primes contained in the maximal ideal of the origin, and dimensions are
//! residue dimensions of such primes.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{
    associated_primes_seeded, minimal_primes_seeded, AssSet, PrimeIdeal, DEFAULT_SEED,
};
use crate::error::{Error, Result};
use crate::fgmod::{ext_range, Module};
use crate::groebner::{Dimension, Ideal};
use crate::polycore::{Field, Poly};

/// `S_{≥k}` (or `S_{>k}` when `strict`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterSpec {
    pub k: i32,
    pub strict: bool,
}

impl FilterSpec {
    pub fn at_least(k: i32) -> FilterSpec {
        FilterSpec { k, strict: false }
    }

    pub fn above(k: i32) -> FilterSpec {
        FilterSpec { k, strict: true }
    }
}

pub fn filter_primes(s: &AssSet, spec: FilterSpec) -> AssSet {
    s.with_dim(spec.k, spec.strict)
}

/// `Ass` of the localization at the origin.
pub fn local_ass(n: &Module) -> Result<AssSet> {
    Ok(associated_primes_seeded(n, DEFAULT_SEED)?.local())
}

/// Krull dimension of the localization at the origin; `-1` when it vanishes.
/// For a prime `p` inside the maximal ideal the local and affine residue
/// dimensions agree, so this is the largest dimension of a local minimal prime.
pub fn local_dim(n: &Module) -> Result<Dimension> {
    let ann = n.annihilator();
    if ann.is_unit() {
        return Ok(-1);
    }
    let mins = minimal_primes_seeded(&ann, DEFAULT_SEED)?;
    Ok(mins.local().iter().map(|p| p.dim).max().unwrap_or(-1))
}

/// Outcome of the sequence predicate; `failing_index` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceCheck {
    pub holds: bool,
    pub failing_index: Option<usize>,
}

fn require_in_m(xs: &[Poly]) -> Result<()> {
    for x in xs {
        if !x.in_maximal_ideal() {
            return Err(Error::NotInMaximalIdeal(x.to_string()));
        }
    }
    Ok(())
}

/// `x_i ∉ p` for every `p ∈ Ass(N/(x_1..x_{i-1})N)_{>k}`, for all `i`.
pub fn is_sequence_in_dim_gt_k(xs: &[Poly], n: &Module, k: i32) -> Result<SequenceCheck> {
    require_in_m(xs)?;
    crate::groebner::check_ring(n.ring(), xs)?;
    let mut cur = n.clone();
    for (i, x) in xs.iter().enumerate() {
        let ass = filter_primes(&local_ass(&cur)?, FilterSpec::above(k));
        if ass.iter().any(|p| p.ideal.contains(x)) {
            return Ok(SequenceCheck {
                holds: false,
                failing_index: Some(i + 1),
            });
        }
        cur = cur.quotient_by(std::slice::from_ref(x))?;
    }
    Ok(SequenceCheck {
        holds: true,
        failing_index: None,
    })
}

/// Single scalars tried in the combination stage of the avoidance ladder.
const LADDER: i64 = 16;
const RANDOM_DRAWS: usize = 64;

/// An element of `i` outside every prime of `primes`.
///
/// Search order: single generators (in a seeded order), the combinations
/// `Σ c^j g_j` for `c = 1..16`, random combinations, and finally combinations
/// with variable multipliers.
pub fn avoid_primes(i: &Ideal, primes: &[PrimeIdeal], seed: u64) -> Result<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    avoid_with(i, primes, &mut rng)
}

fn avoid_with(i: &Ideal, primes: &[PrimeIdeal], rng: &mut ChaCha8Rng) -> Result<Poly> {
    for p in primes {
        if i.is_subset(&p.ideal) {
            return Err(Error::NoAvoider(p.to_string()));
        }
    }
    let ring = i.ring().clone();
    let avoids = |x: &Poly| !x.is_zero() && primes.iter().all(|p| !p.ideal.contains(x));
    let mut gens: Vec<Poly> = i.gb().to_vec();
    gens.shuffle(rng);
    if let Some(g) = gens.iter().find(|g| avoids(g)) {
        return Ok(g.clone());
    }
    let field = ring.field();
    let combine = |coeffs: &[Poly]| {
        gens.iter()
            .zip(coeffs)
            .fold(ring.zero(), |acc, (g, c)| acc.add(&g.mul(c)))
    };
    for c in 1..=LADDER {
        let coeffs: Vec<Poly> = (0..gens.len())
            .map(|j| ring.constant(field.pow(&field.from_i64(c), j as u64)))
            .collect();
        let x = combine(&coeffs);
        if avoids(&x) {
            return Ok(x);
        }
    }
    let draw = |rng: &mut ChaCha8Rng| -> Poly {
        match field {
            Field::Prime(p) => ring.int(rng.gen_range(1..p as i64)),
            Field::Rationals => ring.int(rng.gen_range(1..=1000)),
        }
    };
    for _ in 0..RANDOM_DRAWS {
        let coeffs: Vec<Poly> = (0..gens.len()).map(|_| draw(rng)).collect();
        let x = combine(&coeffs);
        if avoids(&x) {
            return Ok(x);
        }
    }
    let vars = ring.vars_as_polys();
    for _ in 0..RANDOM_DRAWS {
        let coeffs: Vec<Poly> = (0..gens.len())
            .map(|_| {
                let v = &vars[rng.gen_range(0..vars.len())];
                draw(rng).add(&v.mul(&draw(rng)))
            })
            .collect();
        let x = combine(&coeffs);
        if avoids(&x) {
            return Ok(x);
        }
    }
    Err(Error::FieldTooSmall)
}

/// `depth_k` as a value in `ℕ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn is_finite(&self) -> bool {
        matches!(self, Depth::Finite(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Depth::Finite(v) => Some(*v),
            Depth::Infinite => None,
        }
    }

    /// Whether `l ≤ self`.
    pub fn admits(&self, l: usize) -> bool {
        match self {
            Depth::Finite(v) => l <= *v,
            Depth::Infinite => true,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(v) => write!(f, "{v}"),
            Depth::Infinite => write!(f, "infinity"),
        }
    }
}

/// A depth together with a maximal sequence realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthValue {
    pub value: Depth,
    pub witness: Vec<Poly>,
}

fn require_local(i: &Ideal) -> Result<()> {
    if i.is_unit() || !i.is_local() {
        return Err(Error::NotLocal(i.to_string()));
    }
    Ok(())
}

/// Greedy `depth_k(I, N)`: extend the sequence while `I` avoids the primes of
/// `Ass(N/(x)N)_{>k}`. Infinite exactly when `dim N/IN ≤ k`.
pub fn depth_k(i: &Ideal, n: &Module, k: i32, seed: u64) -> Result<DepthValue> {
    extend_sequence(i, n, k, &[], seed)
}

/// Extends `prefix` (assumed to be a sequence in dimension `> k` in `I`) greedily
/// to a maximal one.
pub fn extend_sequence(
    i: &Ideal,
    n: &Module,
    k: i32,
    prefix: &[Poly],
    seed: u64,
) -> Result<DepthValue> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    i.ring().ensure_same(n.ring(), "depth")?;
    require_local(i)?;
    if local_dim(&n.quotient_by_ideal(i)?)? <= k {
        return Ok(DepthValue {
            value: Depth::Infinite,
            witness: Vec::new(),
        });
    }
    let bound = local_dim(n)?.max(0) as usize;
    let mut witness = prefix.to_vec();
    let mut cur = n.quotient_by(prefix)?;
    loop {
        let ass = filter_primes(&local_ass(&cur)?, FilterSpec::above(k));
        if ass.iter().any(|p| p.contains_ideal(i)) {
            return Ok(DepthValue {
                value: Depth::Finite(witness.len()),
                witness,
            });
        }
        let x = avoid_with(i, ass.primes(), &mut rng)?;
        cur = cur.quotient_by(std::slice::from_ref(&x))?;
        witness.push(x);
        assert!(witness.len() <= bound, "sequence longer than the dimension");
    }
}

/// A sequence in dimension `> k` in `I` of exactly `len` elements, built by the
/// same avoidance steps as [`depth_k`]; fails with no-avoider when the sequence
/// becomes maximal before reaching `len`.
pub fn sequence_of_length(
    i: &Ideal,
    n: &Module,
    k: i32,
    len: usize,
    seed: u64,
) -> Result<Vec<Poly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    i.ring().ensure_same(n.ring(), "sequence")?;
    require_local(i)?;
    let mut out = Vec::with_capacity(len);
    let mut cur = n.clone();
    while out.len() < len {
        let ass = filter_primes(&local_ass(&cur)?, FilterSpec::above(k));
        let x = avoid_with(i, ass.primes(), &mut rng)?;
        cur = cur.quotient_by(std::slice::from_ref(&x))?;
        out.push(x);
    }
    Ok(out)
}

/// `I_M = Ann(M/IM)`.
pub fn ideal_im(i: &Ideal, m: &Module) -> Result<Ideal> {
    Ok(m.quotient_by_ideal(i)?.annihilator())
}

/// `min{ j : dim Ext^j(R/I, N) > k }` (local dimensions), or `∞` if no such `j`.
///
/// This is the Ext-side characterization of `depth_k(I, N)`; at `k = -1` it is
/// the first non-vanishing `Ext^j(R/I, N)`.
pub fn depth_k_via_ext(i: &Ideal, n: &Module, k: i32) -> Result<Depth> {
    i.ring().ensure_same(n.ring(), "depth")?;
    require_local(i)?;
    let top = i.ring().nvars();
    for e in ext_range(top, &Module::cyclic(i), n)? {
        if local_dim(&e.module)? > k {
            return Ok(Depth::Finite(e.index));
        }
    }
    Ok(Depth::Infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Ring;
    use proptest::prelude::*;

    fn ring() -> Ring {
        Ring::grevlex(Field::prime(32003).unwrap(), ["x", "y"]).unwrap()
    }

    fn ideal(r: &Ring, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    fn prime(r: &Ring, g: &[&str]) -> PrimeIdeal {
        PrimeIdeal {
            ideal: ideal(r, g),
            verified: true,
            dim: ideal(r, g).dim(),
        }
    }

    fn p(r: &Ring, s: &str) -> Poly {
        r.parse_poly(s).unwrap()
    }

    #[test]
    fn filter_examples() {
        let r = ring();
        let s = AssSet::new([prime(&r, &["x"]), prime(&r, &["x", "y"])]);
        assert_eq!(
            filter_primes(&s, FilterSpec::at_least(1)),
            AssSet::new([prime(&r, &["x"])])
        );
        assert_eq!(filter_primes(&s, FilterSpec::at_least(-1)), s);
        let m = AssSet::new([prime(&r, &["x", "y"])]);
        assert!(filter_primes(&m, FilterSpec::above(0)).is_empty());
    }

    #[test]
    fn sequence_examples() {
        let r = ring();
        let s = Module::free(&r, 1);
        let xy = [p(&r, "x"), p(&r, "y")];
        assert_eq!(
            is_sequence_in_dim_gt_k(&xy, &s, -1).unwrap(),
            SequenceCheck {
                holds: true,
                failing_index: None
            }
        );
        let xx = [p(&r, "x"), p(&r, "x")];
        assert_eq!(
            is_sequence_in_dim_gt_k(&xx, &s, -1).unwrap().failing_index,
            Some(2)
        );
        let n = Module::cyclic(&ideal(&r, &["x^2", "x*y"]));
        for x in ["x", "y", "x + y^2"] {
            assert!(is_sequence_in_dim_gt_k(&[p(&r, x)], &n, 1).unwrap().holds);
        }
        assert!(matches!(
            is_sequence_in_dim_gt_k(&[p(&r, "x + 1")], &s, -1),
            Err(Error::NotInMaximalIdeal(_))
        ));
    }

    #[test]
    fn avoidance_examples() {
        let r = ring();
        let both = [prime(&r, &["x"]), prime(&r, &["y"])];
        for seed in [42, 4242, 7] {
            assert_eq!(
                avoid_primes(&ideal(&r, &["x", "y"]), &both, seed).unwrap(),
                p(&r, "x + y")
            );
            assert_eq!(
                avoid_primes(&ideal(&r, &["x"]), &[prime(&r, &["y"])], seed).unwrap(),
                p(&r, "x")
            );
        }
        assert!(matches!(
            avoid_primes(&ideal(&r, &["x"]), &[prime(&r, &["x"])], 42),
            Err(Error::NoAvoider(_))
        ));
    }

    #[test]
    fn depth_examples() {
        let r = ring();
        let s = Module::free(&r, 1);
        let d = depth_k(&ideal(&r, &["x", "y"]), &s, -1, 42).unwrap();
        assert_eq!(d.value, Depth::Finite(2));
        assert!(is_sequence_in_dim_gt_k(&d.witness, &s, -1).unwrap().holds);
        let mut w: Vec<String> = d.witness.iter().map(|x| x.to_string()).collect();
        w.sort();
        assert_eq!(w, vec!["x", "y"]);
        let d = depth_k(&ideal(&r, &["x"]), &s, 0, 42).unwrap();
        assert_eq!(d.value, Depth::Finite(1));
        assert_eq!(d.witness, vec![p(&r, "x")]);
        let d = depth_k(&ideal(&r, &["x"]), &s, 1, 42).unwrap();
        assert_eq!(
            d,
            DepthValue {
                value: Depth::Infinite,
                witness: vec![]
            }
        );
        assert!(matches!(
            depth_k(&ideal(&r, &["x + 1"]), &s, -1, 42),
            Err(Error::NotLocal(_))
        ));
        assert!(matches!(
            depth_k(&Ideal::unit(&r), &s, -1, 42),
            Err(Error::NotLocal(_))
        ));
    }

    #[test]
    fn ideal_im_examples() {
        let r = ring();
        let i = ideal(&r, &["x^2", "x*y"]);
        assert_eq!(ideal_im(&i, &Module::free(&r, 1)).unwrap(), i);
        let sx = Module::cyclic(&ideal(&r, &["x"]));
        assert_eq!(
            ideal_im(&ideal(&r, &["y"]), &sx).unwrap(),
            ideal(&r, &["x", "y"])
        );
        assert_eq!(
            ideal_im(&ideal(&r, &["x"]), &sx).unwrap(),
            ideal(&r, &["x"])
        );
    }

    #[test]
    fn non_local_primes_are_ignored() {
        let r = ring();
        let n = Module::cyclic(&ideal(&r, &["x*(x - 1)"]));
        assert_eq!(local_ass(&n).unwrap(), AssSet::new([prime(&r, &["x"])]));
        assert_eq!(
            local_dim(&Module::cyclic(&ideal(&r, &["x - 1"]))).unwrap(),
            -1
        );
    }

    fn instances(r: &Ring) -> Vec<(Ideal, Module)> {
        let q = |g: &[&str]| Module::cyclic(&ideal(r, g));
        vec![
            (ideal(r, &["x", "y"]), Module::free(r, 1)),
            (ideal(r, &["x"]), q(&["x^2", "x*y"])),
            (ideal(r, &["y"]), q(&["x^2", "x*y"])),
            (ideal(r, &["x", "y"]), q(&["x^2", "x*y"])),
            (ideal(r, &["x*y"]), Module::free(r, 2)),
            (ideal(r, &["x^2", "y^2"]), q(&["x*y"])),
            (ideal(r, &["x + y"]), q(&["x^3", "y^2"])),
        ]
    }

    #[test]
    fn greedy_depth_matches_ext_characterization() {
        let r = ring();
        for (i, n) in instances(&r) {
            for k in -1..=1 {
                let greedy = depth_k(&i, &n, k, 42).unwrap();
                assert_eq!(
                    greedy.value,
                    depth_k_via_ext(&i, &n, k).unwrap(),
                    "{i} {n:?} k={k}"
                );
                assert_eq!(depth_k(&i, &n, k, 4242).unwrap().value, greedy.value);
                if let Depth::Finite(v) = greedy.value {
                    assert_eq!(greedy.witness.len(), v);
                    for len in 0..=v {
                        assert!(
                            is_sequence_in_dim_gt_k(&greedy.witness[..len], &n, k)
                                .unwrap()
                                .holds
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn depth_is_monotone_in_k() {
        let r = ring();
        for (i, n) in instances(&r) {
            let d: Vec<Depth> = (-1..=1)
                .map(|k| depth_k(&i, &n, k, 42).unwrap().value)
                .collect();
            assert!(d[0] <= d[1] && d[1] <= d[2], "{d:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn sequences_survive_powers(case in 0usize..7, k in -1i32..=1, e1 in 1u32..=3, e2 in 1u32..=3) {
            let r = ring();
            let (i, n) = instances(&r).swap_remove(case);
            let d = depth_k(&i, &n, k, 42).unwrap();
            let exps = [e1, e2];
            let powered: Vec<Poly> = d.witness.iter().zip(exps).map(|(x, e)| x.pow(e)).collect();
            prop_assert!(is_sequence_in_dim_gt_k(&powered, &n, k).unwrap().holds);
        }
    }
}
