use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{self, ModuleOrder};
use crate::error::{Error, Result};
use crate::polycore::{Monomial, MonomialOrder, Poly, Ring};

/// Krull dimension of `R/I`; the unit ideal gets `-1`.
pub type Dimension = i32;

/// An ideal given by generators, with its reduced Gröbner basis (w.r.t. the ring
/// order) computed once on demand.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: Arc<OnceLock<Vec<Poly>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gb().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gb() == other.gb()
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            ring.ensure_same(g.ring(), "ideal generator")?;
        }
        Ok(Ideal::from_gens(ring, gens))
    }

    pub(crate) fn from_gens(ring: &Ring, gens: Vec<Poly>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(OnceLock::new()),
        }
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys = gens
            .iter()
            .map(|s| ring.parse_poly(s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_gens(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_gens(ring, vec![ring.one()])
    }

    /// The maximal ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::from_gens(ring, ring.vars_as_polys())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis, sorted by descending leading monomial.
    pub fn gb(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            let gens = self.gens.iter().map(|g| vec![g.clone()]).collect();
            engine::groebner(&self.ring, 1, gens, ModuleOrder::Pot)
                .into_iter()
                .map(|mut v| v.pop().unwrap())
                .collect()
        })
    }

    /// Canonical serialization: reduced basis in canonical text.
    pub fn canonical_gens(&self) -> Vec<String> {
        self.gb().iter().map(|p| p.to_string()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().iter().any(Poly::is_unit)
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gb().iter().all(Poly::is_monomial)
    }

    /// Every generator has zero constant term (the ideal lies in the maximal ideal).
    pub fn is_local(&self) -> bool {
        self.gb().iter().all(Poly::in_maximal_ideal)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.ring.ensure_same(f.ring(), "normal form")?;
        Ok(self.reduce(f))
    }

    pub(crate) fn reduce(&self, f: &Poly) -> Poly {
        let gb: Vec<Vec<Poly>> = self.gb().iter().map(|g| vec![g.clone()]).collect();
        engine::normal_form(vec![f.clone()], &gb, ModuleOrder::Pot)
            .pop()
            .unwrap()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.gb().iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gb().to_vec();
        g.extend(other.gb().iter().cloned());
        Ideal::from_gens(&self.ring, g)
    }

    pub fn add_gens(&self, extra: &[Poly]) -> Ideal {
        let mut g = self.gb().to_vec();
        g.extend(extra.iter().cloned());
        Ideal::from_gens(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in self.gb() {
            for b in other.gb() {
                g.push(a.mul(b));
            }
        }
        Ideal::from_gens(&self.ring, g)
    }

    pub fn power(&self, t: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..t {
            acc = acc.product(self);
        }
        acc
    }

    /// Ideal generated by `g_i^{e_i}` for the given generators and exponents.
    pub fn generator_powers(ring: &Ring, gens: &[Poly], exps: &[u32]) -> Ideal {
        Ideal::from_gens(
            ring,
            gens.iter().zip(exps).map(|(g, &e)| g.pow(e)).collect(),
        )
    }

    /// The same ideal transported to a ring with the same variables and another order.
    pub fn in_order(&self, order: MonomialOrder) -> Ideal {
        let r = self.ring.with_order(order);
        Ideal::from_gens(&r, self.gens.iter().map(|g| g.reorder(&r)).collect())
    }

    pub fn leading_ideal(&self) -> Ideal {
        let f = self.ring.field();
        Ideal::from_gens(
            &self.ring,
            self.gb()
                .iter()
                .map(|g| Poly::monomial(&self.ring, f.one(), g.lm().unwrap().clone()))
                .collect(),
        )
    }

    /// Generators of `I ∩ k[remaining variables]`, as an ideal of the same ring.
    pub fn eliminate(&self, drop: &[usize]) -> Ideal {
        if drop.is_empty() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let mut perm: Vec<usize> = drop.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let k = perm.len();
        perm.extend((0..n).filter(|i| !drop.contains(i)));
        let names = perm.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        let er = self.ring.with_vars(names, MonomialOrder::Block(k));
        let fwd = |m: &Monomial| Monomial(perm.iter().map(|&i| m.0[i]).collect());
        let gens: Vec<Vec<Poly>> = self.gens.iter().map(|g| vec![g.map_to(&er, fwd)]).collect();
        let gb = engine::groebner(&er, 1, gens, ModuleOrder::Pot);
        let back = |m: &Monomial| {
            let mut e = Monomial::one(n);
            for (pos, &i) in perm.iter().enumerate() {
                e.0[i] = m.0[pos];
            }
            e
        };
        let kept = gb
            .into_iter()
            .map(|mut v| v.pop().unwrap())
            .filter(|g| g.lm().unwrap().0[..k].iter().all(|&e| e == 0))
            .map(|g| g.map_to(&self.ring, back))
            .collect();
        Ideal::from_gens(&self.ring, kept)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.ensure_same(&other.ring, "intersect")?;
        Ok(self.intersect_unchecked(other))
    }

    pub(crate) fn intersect_unchecked(&self, other: &Ideal) -> Ideal {
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let t = self.ring.fresh_name("t");
        let mut names = vec![t];
        names.extend(self.ring.vars().iter().cloned());
        let er = self.ring.with_vars(names, MonomialOrder::Block(1));
        let up = |m: &Monomial| {
            let mut e = Monomial::one(n + 1);
            e.0[1..].copy_from_slice(&m.0);
            e
        };
        let tv = er.var(0);
        let one_minus_t = er.one().sub(&tv);
        let mut gens: Vec<Vec<Poly>> = Vec::new();
        for g in self.gb() {
            gens.push(vec![g.map_to(&er, up).mul(&tv)]);
        }
        for g in other.gb() {
            gens.push(vec![g.map_to(&er, up).mul(&one_minus_t)]);
        }
        let gb = engine::groebner(&er, 1, gens, ModuleOrder::Pot);
        let down = |m: &Monomial| Monomial(m.0[1..].iter().copied().collect());
        let kept = gb
            .into_iter()
            .map(|mut v| v.pop().unwrap())
            .filter(|g| g.lm().unwrap().0[0] == 0)
            .map(|g| g.map_to(&self.ring, down))
            .collect();
        Ideal::from_gens(&self.ring, kept)
    }

    /// `(I : f) = { g : g f ∈ I }`, from the first coordinates of the syzygies of
    /// `(f, g_1, …, g_r)`.
    pub fn colon_elem(&self, f: &Poly) -> Ideal {
        if f.is_zero() || self.is_unit() {
            return Ideal::unit(&self.ring);
        }
        let mut vecs = vec![vec![f.clone()]];
        vecs.extend(self.gb().iter().map(|g| vec![g.clone()]));
        let syz = engine::syzygies(&self.ring, 1, &vecs);
        Ideal::from_gens(&self.ring, syz.into_iter().map(|s| s[0].clone()).collect())
    }

    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.ensure_same(&other.ring, "colon")?;
        Ok(self.colon_unchecked(other))
    }

    pub(crate) fn colon_unchecked(&self, other: &Ideal) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for g in other.gb() {
            acc = acc.intersect_unchecked(&self.colon_elem(g));
        }
        acc
    }

    /// `(I : J^∞)`, iterating the colon until it stabilizes.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.ensure_same(&other.ring, "saturate")?;
        Ok(self.saturate_unchecked(other))
    }

    pub(crate) fn saturate_unchecked(&self, other: &Ideal) -> Ideal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon_unchecked(other);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn saturate_elem(&self, f: &Poly) -> Ideal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon_elem(f);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `f ∈ √I` iff `1 ∈ I + (1 - t f)` in `R[t]`.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        self.ring.ensure_same(f.ring(), "radical membership")?;
        if f.is_zero() || self.is_unit() {
            return Ok(true);
        }
        let n = self.ring.nvars();
        let mut names = self.ring.vars().to_vec();
        names.push(self.ring.fresh_name("t"));
        let er = self.ring.with_vars(names, MonomialOrder::Grevlex);
        let up = |m: &Monomial| {
            let mut e = Monomial::one(n + 1);
            e.0[..n].copy_from_slice(&m.0);
            e
        };
        let mut gens: Vec<Poly> = self.gb().iter().map(|g| g.map_to(&er, up)).collect();
        gens.push(er.one().sub(&er.var(n).mul(&f.map_to(&er, up))));
        Ok(Ideal::from_gens(&er, gens).is_unit())
    }

    /// `√self ⊆ √other`-free check: every generator of `self` is in `√other`.
    pub fn radical_subset(&self, other: &Ideal) -> bool {
        self.gb()
            .iter()
            .all(|g| other.radical_contains(g).unwrap_or(false))
    }

    /// Krull dimension of `R/I` together with a maximal independent set of
    /// variables for the leading ideal. Unit ideal: `(-1, [])`.
    pub fn dim_with_independent_set(&self) -> (Dimension, Vec<usize>) {
        if self.is_unit() {
            return (-1, Vec::new());
        }
        let n = self.ring.nvars();
        let leads: Vec<Vec<usize>> = self
            .gb()
            .iter()
            .map(|g| g.lm().unwrap().support().collect())
            .collect();
        for size in (0..=n).rev() {
            if let Some(u) = first_independent_subset(n, size, &leads) {
                return (size as Dimension, u);
            }
        }
        unreachable!("the empty set is independent for a proper ideal")
    }

    pub fn dim(&self) -> Dimension {
        self.dim_with_independent_set().0
    }

    pub fn codim(&self) -> Dimension {
        if self.is_unit() {
            return self.ring.nvars() as Dimension + 1;
        }
        self.ring.nvars() as Dimension - self.dim()
    }
}

fn first_independent_subset(n: usize, size: usize, leads: &[Vec<usize>]) -> Option<Vec<usize>> {
    // subsets of {0..n} of the given size in lexicographic order
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let independent = leads
            .iter()
            .all(|supp| !supp.iter().all(|v| idx.contains(v)));
        if independent {
            return Some(idx);
        }
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - size + i {
                idx[i] += 1;
                for j in (i + 1)..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Ensures every element of a list belongs to the same ring as the ideal.
pub(crate) fn check_ring(ring: &Ring, polys: &[Poly]) -> Result<()> {
    for p in polys {
        if p.ring() != ring {
            return Err(Error::ContextMismatch(format!(
                "{} does not belong to {}",
                p, ring
            )));
        }
    }
    Ok(())
}
