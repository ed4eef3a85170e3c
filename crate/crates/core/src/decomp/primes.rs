use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::factor;
use super::{AssSet, PrimeIdeal, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::groebner::engine::{self, ModuleOrder};
use crate::groebner::Ideal;
use crate::polycore::{Field, Monomial, MonomialOrder, Poly, Ring};

/// Attempts at a primitive linear form before giving up.
const PRIMITIVE_ATTEMPTS: usize = 12;

pub fn minimal_primes(i: &Ideal) -> Result<AssSet> {
    minimal_primes_seeded(i, DEFAULT_SEED)
}

/// Minimal primes over `i`; the seed drives the random splitting choices only.
pub fn minimal_primes_seeded(i: &Ideal, seed: u64) -> Result<AssSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    collect(i, &mut rng, &mut found)?;
    Ok(minimal_elements(found))
}

fn minimal_elements(found: Vec<PrimeIdeal>) -> AssSet {
    let all = AssSet::new(found);
    let keep: Vec<PrimeIdeal> = all
        .iter()
        .filter(|p| !all.iter().any(|q| q != *p && q.ideal.is_subset(&p.ideal)))
        .cloned()
        .collect();
    AssSet::new(keep)
}

/// Pushes primes containing `i` whose minimal elements are exactly `Min(i)`.
fn collect(i: &Ideal, rng: &mut ChaCha8Rng, out: &mut Vec<PrimeIdeal>) -> Result<()> {
    if i.is_unit() {
        return Ok(());
    }
    if i.is_monomial() {
        out.extend(monomial_primes(i));
        return Ok(());
    }
    if i.gb().iter().all(|g| g.total_degree() == Some(1)) {
        out.push(PrimeIdeal::certified(i.clone()));
        return Ok(());
    }
    if i.ring().field() == Field::Rationals {
        return Err(Error::UnsupportedField(format!(
            "decomposition of the non-monomial, non-linear ideal {i} needs a prime field"
        )));
    }

    // split along factors of the basis elements
    for g in i.gb() {
        let fac = match factor(g, rng) {
            Ok(f) => f,
            Err(Error::Inconclusive(_)) => continue,
            Err(e) => return Err(e),
        };
        if fac.factors.len() >= 2 || fac.factors[0].1 > 1 {
            for (q, _) in &fac.factors {
                collect(&i.add_gens(std::slice::from_ref(q)), rng, out)?;
            }
            return Ok(());
        }
    }

    let (_, u) = i.dim_with_independent_set();
    let loc = Localized::new(i, &u);
    let j = loc.contraction(i);
    equidimensional(&j, &u, rng, out)?;
    let mut seen: Vec<Poly> = Vec::new();
    for c in loc.denominators() {
        for (q, _) in factor(&c, rng)?.factors {
            if !seen.contains(&q) {
                seen.push(q.clone());
                collect(&i.add_gens(&[q]), rng, out)?;
            }
        }
    }
    Ok(())
}

/// Minimal primes of a monomial ideal: minimal vertex covers of the supports.
fn monomial_primes(i: &Ideal) -> Vec<PrimeIdeal> {
    let ring = i.ring();
    let supports: Vec<Vec<usize>> = i.gb().iter().map(|g| g.variables()).collect();
    let mut covers: Vec<Vec<usize>> = Vec::new();
    fn walk(supports: &[Vec<usize>], chosen: &mut Vec<usize>, covers: &mut Vec<Vec<usize>>) {
        match supports
            .iter()
            .find(|s| !s.iter().any(|v| chosen.contains(v)))
        {
            None => {
                let mut c = chosen.clone();
                c.sort_unstable();
                covers.push(c);
            }
            Some(s) => {
                for &v in s {
                    chosen.push(v);
                    walk(supports, chosen, covers);
                    chosen.pop();
                }
            }
        }
    }
    walk(&supports, &mut Vec::new(), &mut covers);
    covers.sort();
    covers.dedup();
    let minimal: Vec<&Vec<usize>> = covers
        .iter()
        .filter(|c| {
            !covers
                .iter()
                .any(|d| d != *c && d.iter().all(|v| c.contains(v)))
        })
        .collect();
    minimal
        .into_iter()
        .map(|c| {
            PrimeIdeal::certified(Ideal::from_gens(
                ring,
                c.iter().map(|&v| ring.var(v)).collect(),
            ))
        })
        .collect()
}

/// A block order with the variables outside `u` first, so that a Gröbner basis
/// read over `k(u)` lives in the remaining variables.
struct Localized {
    ring: Ring,
    block: Ring,
    /// position in `block` -> variable of `ring`
    perm: Vec<usize>,
    nx: usize,
    gb: Vec<Poly>,
}

impl Localized {
    fn new(i: &Ideal, u: &[usize]) -> Localized {
        let ring = i.ring().clone();
        let n = ring.nvars();
        let mut perm: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
        let nx = perm.len();
        perm.extend(u.iter().copied());
        let names = perm.iter().map(|&v| ring.vars()[v].clone()).collect();
        let block = ring.with_vars(names, MonomialOrder::Block(nx));
        let mut loc = Localized {
            ring,
            block,
            perm,
            nx,
            gb: Vec::new(),
        };
        let gens = i.gb().iter().map(|g| vec![loc.to_block(g)]).collect();
        loc.gb = engine::groebner(&loc.block, 1, gens, ModuleOrder::Pot)
            .into_iter()
            .map(|mut v| v.pop().unwrap())
            .collect();
        loc
    }

    fn to_block(&self, f: &Poly) -> Poly {
        f.map_to(&self.block, |m| {
            Monomial(self.perm.iter().map(|&v| m.0[v]).collect())
        })
    }

    fn from_block(&self, f: &Poly) -> Poly {
        let n = self.ring.nvars();
        f.map_to(&self.ring, |m| {
            let mut e = Monomial::one(n);
            for (pos, &v) in self.perm.iter().enumerate() {
                e.0[v] = m.0[pos];
            }
            e
        })
    }

    /// Leading coefficients in `k[u]` of the basis, as polynomials of the ring.
    fn denominators(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for g in &self.gb {
            let lead = &g.lm().unwrap().0[..self.nx];
            let terms: Vec<(Monomial, _)> = g
                .terms()
                .iter()
                .filter(|t| &t.mon.0[..self.nx] == lead)
                .map(|t| {
                    let mut m = t.mon.clone();
                    for e in m.0[..self.nx].iter_mut() {
                        *e = 0;
                    }
                    (m, t.coeff.clone())
                })
                .collect();
            let c = self
                .from_block(&Poly::normalize(&self.block, terms).unwrap())
                .monic();
            if !c.is_constant() && !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// `i k(u)[x] ∩ k[x]`.
    fn contraction(&self, i: &Ideal) -> Ideal {
        let mut j = i.clone();
        for c in self.denominators() {
            j = j.saturate_elem(&c);
        }
        j
    }

    /// Leading monomials restricted to the variables outside `u`.
    fn leading_x(&self) -> Vec<Vec<u16>> {
        self.gb
            .iter()
            .map(|g| g.lm().unwrap().0[..self.nx].to_vec())
            .collect()
    }

    /// `dim_{k(u)} k(u)[x]/I`, assuming it is finite.
    fn standard_count(&self) -> Option<usize> {
        let leads = self.leading_x();
        let mut bounds = vec![0u16; self.nx];
        for (i, b) in bounds.iter_mut().enumerate() {
            *b = leads
                .iter()
                .filter(|l| l.iter().enumerate().all(|(j, &e)| j == i || e == 0) && l[i] > 0)
                .map(|l| l[i])
                .min()?;
        }
        let mut count = 0;
        let mut e = vec![0u16; self.nx];
        loop {
            if !leads.iter().any(|l| l.iter().zip(&e).all(|(a, b)| a <= b)) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == self.nx {
                    return Some(count);
                }
                e[k] += 1;
                if e[k] < bounds[k] {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }
}

/// Lowest positive degree element in `var` of `i ∩ k[keep]`.
fn lowest_in(i: &Ideal, drop: &[usize], var: usize) -> Option<Poly> {
    i.eliminate(drop)
        .gb()
        .iter()
        .filter(|g| g.degree_in(var) > 0)
        .min_by_key(|g| (g.degree_in(var), g.len()))
        .cloned()
}

/// Distinct irreducible factors involving `var`, with multiplicities.
fn factors_in(f: &Poly, var: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(Poly, u32)>> {
    Ok(factor(f, rng)?
        .factors
        .into_iter()
        .filter(|(q, _)| q.degree_in(var) > 0)
        .collect())
}

/// Minimal primes of an ideal `j = j k(u)[x] ∩ k[x]` for which `j k(u)[x]` is
/// zero-dimensional.
fn equidimensional(
    j: &Ideal,
    u: &[usize],
    rng: &mut ChaCha8Rng,
    out: &mut Vec<PrimeIdeal>,
) -> Result<()> {
    if j.is_unit() {
        return Ok(());
    }
    let ring = j.ring().clone();
    let n = ring.nvars();
    let xs: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();

    for &x in &xs {
        let drop: Vec<usize> = xs.iter().copied().filter(|&v| v != x).collect();
        let f = lowest_in(j, &drop, x).ok_or_else(|| {
            Error::Inconclusive(format!(
                "{j} is not zero-dimensional over the chosen parameters"
            ))
        })?;
        let fac = factors_in(&f, x, rng)?;
        if fac.len() >= 2 || fac[0].1 > 1 {
            for (q, _) in fac {
                collect(&j.add_gens(&[q]), rng, out)?;
            }
            return Ok(());
        }
    }

    let loc = Localized::new(j, u);
    let d = loc.standard_count().ok_or_else(|| {
        Error::Inconclusive(format!(
            "{j} is not zero-dimensional over the chosen parameters"
        ))
    })?;
    if d == 1 {
        out.push(PrimeIdeal::certified(j.clone()));
        return Ok(());
    }

    // a primitive element t = ℓ(x) of k(u)[x]/j, found by random linear forms
    let mut names = ring.vars().to_vec();
    names.push(ring.fresh_name("t"));
    let ext = ring.with_vars(names, MonomialOrder::Grevlex);
    let up = |m: &Monomial| {
        let mut e = Monomial::one(n + 1);
        e.0[..n].copy_from_slice(&m.0);
        e
    };
    let down = |m: &Monomial| Monomial(m.0[..n].iter().copied().collect());
    let p = ring.field().characteristic();
    for _ in 0..PRIMITIVE_ATTEMPTS {
        let mut ell = ext.zero();
        for &x in &xs {
            let c = ring.field().from_i64(rng.gen_range(1..p as i64));
            ell = ell.add(&ext.var(x).scale(&c));
        }
        let mut gens: Vec<Poly> = j.gb().iter().map(|g| g.map_to(&ext, up)).collect();
        gens.push(ext.var(n).sub(&ell));
        let lifted = Ideal::from_gens(&ext, gens);
        let Some(mu) = lowest_in(&lifted, &xs, n) else {
            continue;
        };
        if (mu.degree_in(n) as usize) < d {
            continue;
        }
        let fac = factors_in(&mu, n, rng)?;
        if fac.len() == 1 && fac[0].1 == 1 {
            out.push(PrimeIdeal::certified(j.clone()));
            return Ok(());
        }
        for (q, _) in fac {
            let back = q.substitute(n, &ell).map_to(&ring, down);
            collect(&j.add_gens(&[back]), rng, out)?;
        }
        return Ok(());
    }
    Err(Error::Inconclusive(format!(
        "no primitive element found for {j}"
    )))
}
