use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Coeff;
use super::monomial::Monomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mon: Monomial,
    pub coeff: Coeff,
}

/// Polynomial in canonical form: terms strictly descending in the ring order, no
/// zero coefficients. The zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

/// Arithmetic operation selector for [`Poly::arith`].
#[derive(Clone, Debug)]
pub enum ArithOp<'a> {
    Add(&'a Poly),
    Mul(&'a Poly),
    ScalarMul(&'a Coeff),
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Poly {
        Poly::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn monomial(ring: &Ring, c: Coeff, mon: Monomial) -> Poly {
        if ring.field().is_zero(&c) {
            return Poly::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![Term { mon, coeff: c }],
        }
    }

    /// Builds the canonical form of a formal sum of terms.
    pub fn normalize(ring: &Ring, raw: Vec<(Monomial, Coeff)>) -> Result<Poly> {
        let n = ring.nvars();
        if let Some((m, _)) = raw.iter().find(|(m, _)| m.len() != n) {
            return Err(Error::MalformedInput(format!(
                "exponent vector of length {} in a ring with {} variables",
                m.len(),
                n
            )));
        }
        Ok(Poly::from_terms_unsorted(
            ring,
            raw.into_iter()
                .map(|(mon, coeff)| Term { mon, coeff })
                .collect(),
        ))
    }

    pub(crate) fn from_terms_unsorted(ring: &Ring, mut terms: Vec<Term>) -> Poly {
        let order = ring.order();
        let field = ring.field();
        terms.sort_by(|a, b| order.compare(&b.mon, &a.mon));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.coeff) {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if let Some(last) = out.last() {
            if field.is_zero(&last.coeff) {
                out.pop();
            }
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Terms already sorted and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<Term>) -> Poly {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].mon, &w[1].mon) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lt(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    pub fn lc(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mon.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some(t) if t.mon.is_one() => t.coeff.clone(),
            _ => self.ring.field().zero(),
        }
    }

    /// True iff the element lies in the maximal ideal generated by the variables.
    pub fn in_maximal_ideal(&self) -> bool {
        self.ring.field().is_zero(&self.constant_term())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.mon.0[var]).max().unwrap_or(0)
    }

    /// Variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.degree_in(i) > 0)
            .collect()
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let conv = |c: &Coeff| {
            if negate_other {
                field.neg(c)
            } else {
                c.clone()
            }
        };
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].mon, &b[j].mon) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mon: b[j].mon.clone(),
                        coeff: conv(&b[j].coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !field.is_zero(&c) {
                        out.push(Term {
                            mon: a[i].mon.clone(),
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            mon: t.mon.clone(),
            coeff: conv(&t.coeff),
        }));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        self.merge(other, true)
    }

    pub fn neg(&self) -> Poly {
        let field = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.clone(),
                    coeff: field.neg(&t.coeff),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.clone(),
                    coeff: field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Poly {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.mul(m),
                    coeff: field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    /// `self -= c * m * g`.
    pub fn sub_mul_term(&mut self, c: &Coeff, m: &Monomial, g: &Poly) {
        let prod = g.mul_term(c, m);
        *self = self.sub(&prod);
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero(&self.ring);
        for t in &small.terms {
            acc = acc.add(&big.mul_term(&t.coeff, &t.mon));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(c) => {
                let field = self.ring.field();
                if field.is_one(c) {
                    self.clone()
                } else {
                    self.scale(&field.inv(c))
                }
            }
        }
    }

    /// Checked arithmetic entry point; rejects operands from different contexts.
    pub fn arith(&self, op: ArithOp<'_>) -> Result<Poly> {
        match op {
            ArithOp::Add(g) => {
                self.ring.ensure_same(&g.ring, "add")?;
                Ok(self.add(g))
            }
            ArithOp::Mul(g) => {
                self.ring.ensure_same(&g.ring, "mul")?;
                Ok(self.mul(g))
            }
            ArithOp::ScalarMul(c) => {
                let ok = matches!(
                    (self.ring.field(), c),
                    (super::Field::Rationals, Coeff::Q(_)) | (super::Field::Prime(_), Coeff::Fp(_))
                );
                if !ok {
                    return Err(Error::ContextMismatch(
                        "scalar from a different field".into(),
                    ));
                }
                Ok(self.scale(c))
            }
        }
    }

    /// Transports the polynomial into `target`, mapping each exponent vector.
    pub fn map_to(&self, target: &Ring, f: impl Fn(&Monomial) -> Monomial) -> Poly {
        Poly::from_terms_unsorted(
            target,
            self.terms
                .iter()
                .map(|t| Term {
                    mon: f(&t.mon),
                    coeff: t.coeff.clone(),
                })
                .collect(),
        )
    }

    /// Same variables, different order (or an equal ring).
    pub fn reorder(&self, target: &Ring) -> Poly {
        if *target == self.ring {
            return self.clone();
        }
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        self.map_to(target, |m| m.clone())
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn exact_div(&self, g: &Poly) -> Option<Poly> {
        assert!(!g.is_zero(), "division by zero polynomial");
        let field = self.ring.field();
        let glt = g.lt().unwrap();
        let ginv = field.inv(&glt.coeff);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(t) = rem.lt().cloned() {
            if !glt.mon.divides(&t.mon) {
                return None;
            }
            let m = t.mon.div(&glt.mon);
            let c = field.mul(&t.coeff, &ginv);
            rem.sub_mul_term(&c, &m, g);
            quot.push(Term { mon: m, coeff: c });
        }
        Some(Poly::from_sorted_terms(&self.ring, quot))
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_lead(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Appends a term smaller than every current term.
    pub(crate) fn push_smallest(&mut self, t: Term) {
        debug_assert!(self
            .terms
            .last()
            .is_none_or(|l| self.ring.order().compare(&l.mon, &t.mon) == Ordering::Greater));
        self.terms.push(t);
    }

    /// Evaluates the variables `var -> value` leaving the others untouched.
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.ring);
        let mut powers: Vec<Poly> = vec![self.ring.one()];
        for t in &self.terms {
            let e = t.mon.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut m = t.mon.clone();
            m.0[var] = 0;
            acc = acc.add(&powers[e].mul_term(&t.coeff, &m));
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        let vars = self.ring.vars();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = field.is_negative(&t.coeff);
            let abs = if neg {
                field.neg(&t.coeff)
            } else {
                t.coeff.clone()
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mon = format_monomial(&t.mon, vars);
            if mon.is_empty() {
                write!(f, "{}", field.format(&abs))?;
            } else if field.is_one(&abs) {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{}*{mon}", field.format(&abs))?;
            }
        }
        Ok(())
    }
}

pub fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            e => parts.push(format!("{}^{e}", vars[i])),
        }
    }
    parts.join("*")
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
