//! Factorization over prime fields: dense univariate Cantor–Zassenhaus and a
//! Kronecker-substitution reduction for several variables.

use rand::Rng;

use crate::error::{Error, Result};
use crate::polycore::{Coeff, Field, Monomial, Poly, Ring};

/// `unit * ∏ factor^multiplicity`, factors monic and pairwise distinct.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: Coeff,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, ring: &Ring) -> Poly {
        let mut acc = ring.constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Largest Kronecker image degree attempted before giving up.
const MAX_IMAGE_DEGREE: usize = 4000;
/// Largest number of univariate images tried in recombination.
const MAX_RECOMBINATION: usize = 16;
/// Random shifts tried before a factorization is declared inconclusive.
const SHIFT_ATTEMPTS: usize = 8;

// ---------------------------------------------------------------------------
// dense univariate arithmetic over F_p, coefficients lowest degree first

type U = Vec<u64>;

fn trim(mut a: U) -> U {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &U) -> isize {
    a.len() as isize - 1
}

fn pw(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pw(a, p - 2, p)
}

fn monic(a: U, p: u64) -> U {
    match a.last() {
        None => a,
        Some(&l) => {
            let li = inv(l, p);
            a.into_iter().map(|c| c * li % p).collect()
        }
    }
}

fn sub(a: &U, b: &U, p: u64) -> U {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    trim(out)
}

fn mul(a: &U, b: &U, p: u64) -> U {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn divrem(a: &U, b: &U, p: u64) -> (U, U) {
    let mut r = a.clone();
    if deg(&r) < deg(b) {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let li = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * li % p;
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            let idx = shift + j;
            r[idx] = (r[idx] + p - c * y % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn rem(a: &U, b: &U, p: u64) -> U {
    divrem(a, b, p).1
}

fn gcd(a: &U, b: &U, p: u64) -> U {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(a, p)
}

fn mulmod(a: &U, b: &U, m: &U, p: u64) -> U {
    rem(&mul(a, b, p), m, p)
}

fn powmod(base: &U, mut e: u64, m: &U, p: u64) -> U {
    let mut r = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn derivative(a: &U, p: u64) -> U {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// `g` with `g(x)^p = a(x)`, for `a` a polynomial in `x^p`.
fn pth_root(a: &U, p: u64) -> U {
    a.iter().step_by(p as usize).copied().collect()
}

fn squarefree(f: &U, p: u64) -> Vec<(U, u32)> {
    let mut out = Vec::new();
    let fp = derivative(f, p);
    if fp.is_empty() {
        for (g, m) in squarefree(&pth_root(f, p), p) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = gcd(f, &fp, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while deg(&w) > 0 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if deg(&z) > 0 {
            out.push((monic(z, p), i));
        }
        i += 1;
        c = divrem(&c, &y, p).0;
        w = y;
    }
    if deg(&c) > 0 {
        for (g, m) in squarefree(&pth_root(&c, p), p) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
fn ddf(f: &U, p: u64) -> Vec<(U, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut i = 1;
    while deg(&f) >= 2 * i as isize {
        h = powmod(&h, p, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if deg(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, i));
        }
        i += 1;
    }
    if deg(&f) > 0 {
        let d = deg(&f) as usize;
        out.push((monic(f, p), d));
    }
    out
}

/// Equal-degree splitting of a product of distinct irreducibles of degree `d`.
fn edf(f: &U, d: usize, p: u64, rng: &mut impl Rng, out: &mut Vec<U>) {
    let n = deg(f) as usize;
    if n == d {
        out.push(f.clone());
        return;
    }
    loop {
        let a: U = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) < 1 {
            continue;
        }
        let g = gcd(&a, f, p);
        let g = if deg(&g) > 0 {
            g
        } else {
            // a^((p^d - 1)/2) = (a · a^p · … · a^(p^(d-1)))^((p-1)/2)
            let mut h = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                h = powmod(&h, p, f, p);
                acc = mulmod(&acc, &h, f, p);
            }
            let b = powmod(&acc, (p - 1) / 2, f, p);
            gcd(&sub(&b, &vec![1], p), f, p)
        };
        if deg(&g) > 0 && deg(&g) < n as isize {
            let q = divrem(f, &g, p).0;
            edf(&g, d, p, rng, out);
            edf(&monic(q, p), d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors with multiplicities of a nonzero univariate polynomial.
fn factor_dense(f: &U, p: u64, rng: &mut impl Rng) -> Vec<(U, u32)> {
    let f = monic(f.clone(), p);
    let mut out = Vec::new();
    for (s, m) in squarefree(&f, p) {
        for (g, d) in ddf(&s, p) {
            let mut pieces = Vec::new();
            edf(&g, d, p, rng, &mut pieces);
            out.extend(pieces.into_iter().map(|q| (q, m)));
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// conversion

fn odd_prime(ring: &Ring) -> Result<u64> {
    match ring.field() {
        Field::Prime(p) if p > 2 => Ok(p as u64),
        Field::Prime(_) => Err(Error::UnsupportedField(
            "factorization needs an odd characteristic".into(),
        )),
        Field::Rationals => Err(Error::UnsupportedField(
            "polynomial factorization is only available over prime fields".into(),
        )),
    }
}

fn coeff_u64(c: &Coeff) -> u64 {
    match c {
        Coeff::Fp(v) => *v as u64,
        Coeff::Q(_) => unreachable!("prime field checked"),
    }
}

/// Mixed-radix weights for the substitution `x_i ↦ z^(w_i)`.
fn weights(f: &Poly) -> Vec<usize> {
    let n = f.ring().nvars();
    let mut w = Vec::with_capacity(n);
    let mut acc = 1usize;
    for i in 0..n {
        w.push(acc);
        acc = acc.saturating_mul(f.degree_in(i) as usize + 1);
    }
    w
}

fn to_image(f: &Poly, w: &[usize]) -> U {
    let mut out = Vec::new();
    for t in f.terms() {
        let e: usize = t
            .mon
            .exps()
            .iter()
            .zip(w)
            .map(|(&a, &b)| a as usize * b)
            .sum();
        if out.len() <= e {
            out.resize(e + 1, 0);
        }
        out[e] = coeff_u64(&t.coeff);
    }
    trim(out)
}

fn from_image(ring: &Ring, a: &U, w: &[usize]) -> Poly {
    let field = ring.field();
    let n = ring.nvars();
    let mut raw = Vec::new();
    for (e, &c) in a.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut rest = e;
        let mut exps = vec![0u16; n];
        for i in (0..n).rev() {
            let q = rest / w[i];
            rest %= w[i];
            exps[i] = q.min(u16::MAX as usize) as u16;
        }
        raw.push((Monomial::from_exps(&exps), field.from_i64(c as i64)));
    }
    Poly::normalize(ring, raw).expect("exponents fit the ring")
}

// ---------------------------------------------------------------------------
// public entry points

/// Factorization of a polynomial in at most one variable over an odd prime field.
pub fn univar_factor(f: &Poly, rng: &mut impl Rng) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::MalformedInput(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let vars = f.variables();
    if vars.len() > 1 {
        return Err(Error::MalformedInput(format!("{f} is not univariate")));
    }
    factor(f, rng)
}

/// Factorization over an odd prime field into monic irreducibles.
pub fn factor(f: &Poly, rng: &mut impl Rng) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::MalformedInput(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let ring = f.ring().clone();
    let p = odd_prime(&ring)?;
    let unit = f.lc().unwrap().clone();
    let mut factors: Vec<(Poly, u32)> = Vec::new();

    // monomial content
    let n = ring.nvars();
    let mut content = vec![u16::MAX; n];
    for t in f.terms() {
        for (c, &e) in content.iter_mut().zip(t.mon.exps()) {
            *c = (*c).min(e);
        }
    }
    let field = ring.field();
    let cm = Monomial::from_exps(&content);
    let mut rest = f
        .exact_div(&Poly::monomial(&ring, field.one(), cm))
        .unwrap()
        .monic();
    for (i, &e) in content.iter().enumerate() {
        if e > 0 {
            factors.push((ring.var(i), e as u32));
        }
    }

    while !rest.is_constant() {
        let (g, m) = split_off_factor(&rest, p, rng)?;
        rest = m;
        let mut mult = 1;
        while let Some(q) = rest.exact_div(&g) {
            rest = q;
            mult += 1;
        }
        factors.push((g.monic(), mult));
    }
    factors.sort_by_key(|a| a.0.to_string());
    Ok(Factorization { unit, factors })
}

/// An irreducible factor `g` of the nonconstant `f`, with `f / g`.
///
/// The variables are shifted by random constants first so that the Kronecker
/// image of a sparse polynomial does not split into many spurious pieces. Up to
/// `SHIFT_ATTEMPTS` shifts are tried when an image has too many pieces to
/// recombine.
fn split_off_factor(f: &Poly, p: u64, rng: &mut impl Rng) -> Result<(Poly, Poly)> {
    let mut fewest = usize::MAX;
    for _ in 0..SHIFT_ATTEMPTS {
        match split_with_shift(f, p, rng)? {
            Ok(found) => return Ok(found),
            Err(pieces) => fewest = fewest.min(pieces),
        }
    }
    Err(Error::Inconclusive(format!(
        "factorization of {f}: {fewest} univariate images to recombine"
    )))
}

/// One shifted attempt; `Err(pieces)` when recombination would exceed the cap.
fn split_with_shift(
    f: &Poly,
    p: u64,
    rng: &mut impl Rng,
) -> Result<std::result::Result<(Poly, Poly), usize>> {
    let ring = f.ring();
    let vars = f.variables();
    let shifts: Vec<(usize, Poly)> = if vars.len() > 1 {
        vars.iter()
            .map(|&v| (v, ring.int(rng.gen_range(1..p as i64))))
            .collect()
    } else {
        Vec::new()
    };
    let shift = |g: &Poly, sign: bool| {
        shifts.iter().fold(g.clone(), |acc, (v, c)| {
            let c = if sign { c.clone() } else { c.neg() };
            acc.substitute(*v, &ring.var(*v).add(&c))
        })
    };
    let shifted = shift(f, true);
    let w = weights(&shifted);
    let img = to_image(&shifted, &w);
    if img.len() > MAX_IMAGE_DEGREE {
        return Err(Error::Inconclusive(format!(
            "factorization of {f} too large"
        )));
    }
    let mut distinct: Vec<U> = Vec::new();
    let mut pieces: Vec<U> = Vec::new();
    for (g, m) in factor_dense(&img, p, rng) {
        distinct.push(g.clone());
        pieces.extend(std::iter::repeat_n(g, m as usize));
    }
    if distinct.len() > MAX_RECOMBINATION {
        return Ok(Err(distinct.len()));
    }
    let mut found = smallest_true_factor(ring, &shifted, &distinct, distinct.len(), &w, p);
    if found.is_none() && pieces.len() > distinct.len() {
        if pieces.len() > MAX_RECOMBINATION {
            return Ok(Err(pieces.len()));
        }
        found = smallest_true_factor(ring, &shifted, &pieces, pieces.len() / 2, &w, p);
    }
    Ok(Ok(match found {
        None => (f.clone(), ring.one()),
        Some(g) => {
            let g = shift(&g, false);
            let q = f.exact_div(&g).expect("shifted factor divides");
            (g, q)
        }
    }))
}

/// Factor of `f` whose image is a product of the fewest univariate pieces
/// (at most `max_size` of them); such a factor is irreducible.
fn smallest_true_factor(
    ring: &Ring,
    f: &Poly,
    pieces: &[U],
    max_size: usize,
    w: &[usize],
    p: u64,
) -> Option<Poly> {
    let k = pieces.len();
    for size in 1..=max_size {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut prod = vec![1u64];
            for &i in &idx {
                prod = mul(&prod, &pieces[i], p);
            }
            let g = from_image(ring, &prod, w);
            if !g.is_constant() && f.exact_div(&g).is_some() {
                return Some(g);
            }
            if !next_combination(&mut idx, k) {
                break;
            }
        }
    }
    None
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let size = idx.len();
    for i in (0..size).rev() {
        if idx[i] < n - size + i {
            idx[i] += 1;
            for j in (i + 1)..size {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
