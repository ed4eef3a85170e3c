use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::primes::minimal_primes_seeded;
use super::{AssSet, PrimeIdeal, DEFAULT_SEED};
use crate::error::Result;
use crate::fgmod::{ext_range, hom, Module};

pub fn associated_primes(m: &Module) -> Result<AssSet> {
    associated_primes_seeded(m, DEFAULT_SEED)
}

/// `Ass(M) = ⋃_c { p ∈ Min(Ann Ext^c(M, R)) : codim p = c }`.
///
/// Results are memoized on the canonical text of the presentation; the set does
/// not depend on the seed, which only steers the internal random choices.
pub fn associated_primes_seeded(m: &Module, seed: u64) -> Result<AssSet> {
    let key = format!(
        "{}|{}|{}|{}",
        m.ring(),
        m.ring().order().name(),
        m.rank(),
        m.matrix_text()
    );
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let out = compute_ass(m, seed)?;
    let mut c = cache().lock().unwrap();
    if c.len() >= CACHE_LIMIT {
        c.clear();
    }
    c.insert(key, out.clone());
    Ok(out)
}

const CACHE_LIMIT: usize = 20_000;

fn cache() -> &'static Mutex<HashMap<String, AssSet>> {
    static CACHE: OnceLock<Mutex<HashMap<String, AssSet>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn compute_ass(m: &Module, seed: u64) -> Result<AssSet> {
    let mut out = Vec::new();
    for (c, candidates) in ehv_layers(m, seed)? {
        out.extend(candidates.iter().filter(|p| codim(p) == c).cloned());
    }
    Ok(AssSet::new(out))
}

/// Every prime minimal over some `Ann Ext^c(M, R)`, regardless of codimension:
/// the candidate pool for the definition-level cross-check.
pub fn ehv_candidates(m: &Module, seed: u64) -> Result<AssSet> {
    let mut out = AssSet::empty();
    for (_, candidates) in ehv_layers(m, seed)? {
        out = out.union(&candidates);
    }
    Ok(out)
}

fn codim(p: &PrimeIdeal) -> usize {
    (p.ideal.ring().nvars() as i32 - p.dim) as usize
}

fn ehv_layers(m: &Module, seed: u64) -> Result<Vec<(usize, AssSet)>> {
    let m = m.pruned();
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let ring = m.ring().clone();
    let n = ring.nvars();
    let exts = ext_range(n, &m, &Module::free(&ring, 1))?;
    let mut out = Vec::new();
    for (c, e) in exts.into_iter().enumerate() {
        if e.module.is_zero() {
            continue;
        }
        out.push((c, minimal_primes_seeded(&e.module.annihilator(), seed)?));
    }
    Ok(out)
}

/// `p ∈ Ass(M)` iff `Hom(R/p, M)` is supported at `p`, i.e. `Ann Hom(R/p, M) ⊆ p`.
pub fn is_associated_oracle(p: &PrimeIdeal, m: &Module) -> Result<bool> {
    let h = hom(&Module::cyclic(&p.ideal), m)?;
    if h.is_zero() {
        return Ok(false);
    }
    Ok(h.annihilator().is_subset(&p.ideal))
}
