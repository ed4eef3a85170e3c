//! Buchberger's algorithm on submodules of free modules `R^g`.
//!
//! Ideals are the rank-one case. Elements are dense component vectors; the module
//! order is position-over-term or term-over-position on top of the ring order.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::polycore::{Coeff, Monomial, Poly, Ring, Term};

/// Element of a free module, one polynomial per component.
pub type Vector = Vec<Poly>;

/// Extension of the ring order to `R^g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ModuleOrder {
    /// Component first (lower index is larger), then the ring order.
    #[default]
    Pot,
    /// Ring order first, ties broken by component (lower index is larger).
    Top,
}

pub fn zero_vector(ring: &Ring, rank: usize) -> Vector {
    vec![ring.zero(); rank]
}

pub fn unit_vector(ring: &Ring, rank: usize, i: usize) -> Vector {
    let mut v = zero_vector(ring, rank);
    v[i] = ring.one();
    v
}

pub fn is_zero_vector(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

pub fn vec_add(a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(v: &[Poly], f: &Poly) -> Vector {
    v.iter().map(|x| x.mul(f)).collect()
}

fn vec_sub_mul_term(v: &mut [Poly], c: &Coeff, m: &Monomial, g: &[Poly]) {
    for (x, y) in v.iter_mut().zip(g) {
        if !y.is_zero() {
            x.sub_mul_term(c, m, y);
        }
    }
}

/// Leading position and term.
pub fn lead(v: &[Poly], mo: ModuleOrder) -> Option<(usize, &Term)> {
    match mo {
        ModuleOrder::Pot => v
            .iter()
            .enumerate()
            .find_map(|(i, p)| p.lt().map(|t| (i, t))),
        ModuleOrder::Top => {
            let mut best: Option<(usize, &Term)> = None;
            for (i, p) in v.iter().enumerate() {
                if let Some(t) = p.lt() {
                    match best {
                        None => best = Some((i, t)),
                        Some((_, b)) => {
                            if p.ring().order().compare(&t.mon, &b.mon) == Ordering::Greater {
                                best = Some((i, t));
                            }
                        }
                    }
                }
            }
            best
        }
    }
}

fn cmp_lead(
    ring: &Ring,
    mo: ModuleOrder,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    let order = ring.order();
    match mo {
        ModuleOrder::Pot => b.0.cmp(&a.0).then_with(|| order.compare(a.1, b.1)),
        ModuleOrder::Top => order.compare(a.1, b.1).then_with(|| b.0.cmp(&a.0)),
    }
}

fn monic_vector(v: Vector, mo: ModuleOrder) -> Vector {
    let Some((_, t)) = lead(&v, mo) else { return v };
    let field = v[0].ring().field();
    if field.is_one(&t.coeff) {
        return v;
    }
    let inv = field.inv(&t.coeff);
    v.iter().map(|p| p.scale(&inv)).collect()
}

struct Basis {
    mo: ModuleOrder,
    elems: Vec<Vector>,
    leads: Vec<(usize, Monomial)>,
}

impl Basis {
    fn find_divisor(&self, comp: usize, mon: &Monomial) -> Option<usize> {
        self.leads
            .iter()
            .position(|(c, m)| *c == comp && m.divides(mon))
    }

    /// Full reduction: every term of the result is irreducible.
    fn reduce(&self, v: Vector) -> Vector {
        reduce_with(v, self.mo, |comp, mon| {
            self.find_divisor(comp, mon)
                .map(|i| (&self.elems[i][..], &self.leads[i].1))
        })
    }
}

/// Division algorithm against an arbitrary divisor lookup returning a monic element
/// and its leading monomial.
fn reduce_with<'a, F>(mut work: Vector, mo: ModuleOrder, find: F) -> Vector
where
    F: Fn(usize, &Monomial) -> Option<(&'a [Poly], &'a Monomial)>,
{
    if work.is_empty() {
        return work;
    }
    let ring = work[0].ring().clone();
    let field = ring.field();
    let mut rem: Vector = zero_vector(&ring, work.len());
    loop {
        let Some((comp, t)) = lead(&work, mo) else {
            break;
        };
        let (comp, t) = (comp, t.clone());
        match find(comp, &t.mon) {
            Some((g, glm)) => {
                let m = t.mon.div(glm);
                let gc = lead(g, mo).map(|(_, gt)| gt.coeff.clone()).unwrap();
                let c = if field.is_one(&gc) {
                    t.coeff.clone()
                } else {
                    field.div(&t.coeff, &gc)
                };
                vec_sub_mul_term(&mut work, &c, &m, g);
            }
            None => {
                let term = work[comp].pop_lead().unwrap();
                rem[comp].push_smallest(term);
            }
        }
    }
    rem
}

/// Normal form of `v` modulo a Gröbner basis `gb` (any basis works as a divisor
/// set, but the result is canonical only for a Gröbner basis).
pub fn normal_form(v: Vector, gb: &[Vector], mo: ModuleOrder) -> Vector {
    let leads: Vec<(usize, Monomial)> = gb
        .iter()
        .map(|g| {
            let (c, t) = lead(g, mo).expect("zero element in basis");
            (c, t.mon.clone())
        })
        .collect();
    reduce_with(v, mo, |comp, mon| {
        leads
            .iter()
            .position(|(c, m)| *c == comp && m.divides(mon))
            .map(|i| (&gb[i][..], &leads[i].1))
    })
}

fn spoly(f: &[Poly], g: &[Poly], mo: ModuleOrder) -> Vector {
    let (_, tf) = lead(f, mo).unwrap();
    let (_, tg) = lead(g, mo).unwrap();
    let l = tf.mon.lcm(&tg.mon);
    let field = f[0].ring().field();
    let mf = l.div(&tf.mon);
    let mg = l.div(&tg.mon);
    let cf = field.inv(&tf.coeff);
    let cg = field.inv(&tg.coeff);
    f.iter()
        .zip(g)
        .map(|(a, b)| a.mul_term(&cf, &mf).sub(&b.mul_term(&cg, &mg)))
        .collect()
}

/// Reduced Gröbner basis of the submodule generated by `gens` (all of length `rank`).
/// Output elements are monic and sorted by descending leading term.
pub fn groebner(ring: &Ring, rank: usize, gens: Vec<Vector>, mo: ModuleOrder) -> Vec<Vector> {
    let mut basis = Basis {
        mo,
        elems: Vec::new(),
        leads: Vec::new(),
    };
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: Vec<(usize, usize, u32, Monomial)> = Vec::new();

    let add = |basis: &mut Basis,
               pending: &mut HashSet<(usize, usize)>,
               queue: &mut Vec<(usize, usize, u32, Monomial)>,
               v: Vector| {
        let v = monic_vector(v, mo);
        let (c, t) = lead(&v, mo).unwrap();
        let (c, m) = (c, t.mon.clone());
        let idx = basis.elems.len();
        for (j, (cj, mj)) in basis.leads.iter().enumerate() {
            if *cj != c {
                continue;
            }
            if rank == 1 && m.coprime(mj) {
                continue;
            }
            let l = m.lcm(mj);
            pending.insert((j, idx));
            queue.push((j, idx, l.degree(), l));
        }
        basis.elems.push(v);
        basis.leads.push((c, m));
    };

    let mut inputs: Vec<Vector> = gens.into_iter().filter(|v| !is_zero_vector(v)).collect();
    inputs.sort_by(|a, b| {
        let la = lead(a, mo).unwrap();
        let lb = lead(b, mo).unwrap();
        cmp_lead(ring, mo, (la.0, &la.1.mon), (lb.0, &lb.1.mon))
    });
    for v in inputs {
        debug_assert_eq!(v.len(), rank);
        let r = basis.reduce(v);
        if !is_zero_vector(&r) {
            add(&mut basis, &mut pending, &mut queue, r);
        }
    }

    let order = ring.order();
    while !queue.is_empty() {
        let mut best = 0;
        for k in 1..queue.len() {
            let (a, b) = (&queue[k], &queue[best]);
            let o = a.2.cmp(&b.2).then_with(|| order.compare(&a.3, &b.3));
            if o == Ordering::Less {
                best = k;
            }
        }
        let (i, j, _, l) = queue.swap_remove(best);
        pending.remove(&(i, j));
        let comp = basis.leads[i].0;
        let chain = (0..basis.elems.len()).any(|k| {
            k != i
                && k != j
                && basis.leads[k].0 == comp
                && basis.leads[k].1.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&basis.elems[i], &basis.elems[j], mo);
        let r = basis.reduce(s);
        if !is_zero_vector(&r) {
            add(&mut basis, &mut pending, &mut queue, r);
        }
    }

    interreduce(ring, basis.elems, mo)
}

/// Minimalizes and fully tail-reduces a Gröbner basis.
fn interreduce(ring: &Ring, elems: Vec<Vector>, mo: ModuleOrder) -> Vec<Vector> {
    let leads: Vec<(usize, Monomial)> = elems
        .iter()
        .map(|g| {
            let (c, t) = lead(g, mo).unwrap();
            (c, t.mon.clone())
        })
        .collect();
    let mut keep = Vec::new();
    for i in 0..elems.len() {
        let redundant = (0..elems.len()).any(|j| {
            j != i
                && leads[j].0 == leads[i].0
                && leads[j].1.divides(&leads[i].1)
                && (leads[j].1 != leads[i].1 || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let min: Vec<Vector> = keep.iter().map(|&i| elems[i].clone()).collect();
    let mut out: Vec<Vector> = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let (c, t) = lead(&min[k], mo).unwrap();
        let (c, t) = (c, t.clone());
        let mut rest = min[k].clone();
        rest[c].pop_lead();
        let others: Vec<Vector> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, v)| v.clone())
            .collect();
        let mut red = normal_form(rest, &others, mo);
        let field = ring.field();
        let inv = field.inv(&t.coeff);
        let mut head = Poly::monomial(ring, field.one(), t.mon.clone());
        head = head.add(&red[c].scale(&inv));
        for (idx, p) in red.iter_mut().enumerate() {
            if idx == c {
                *p = head.clone();
            } else {
                *p = p.scale(&inv);
            }
        }
        out.push(red);
    }
    out.sort_by(|a, b| {
        let la = lead(a, mo).unwrap();
        let lb = lead(b, mo).unwrap();
        cmp_lead(ring, mo, (lb.0, &lb.1.mon), (la.0, &la.1.mon))
    });
    out
}

/// Checks that every S-vector of `gb` reduces to zero.
pub fn is_groebner(gb: &[Vector], mo: ModuleOrder) -> bool {
    for i in 0..gb.len() {
        for j in (i + 1)..gb.len() {
            let (ci, _) = lead(&gb[i], mo).unwrap();
            let (cj, _) = lead(&gb[j], mo).unwrap();
            if ci != cj {
                continue;
            }
            let s = spoly(&gb[i], &gb[j], mo);
            if !is_zero_vector(&normal_form(s, gb, mo)) {
                return false;
            }
        }
    }
    true
}

/// Generators of the module of relations among `vectors` (elements of `R^rank`),
/// read off from a Gröbner basis of the graph module `(v_i, e_i)` under a
/// position-over-term order that eliminates the first `rank` components.
pub fn syzygies(ring: &Ring, rank: usize, vectors: &[Vector]) -> Vec<Vector> {
    let m = vectors.len();
    if m == 0 {
        return Vec::new();
    }
    let gens: Vec<Vector> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut w = v.clone();
            w.extend(unit_vector(ring, m, i));
            w
        })
        .collect();
    let gb = groebner(ring, rank + m, gens, ModuleOrder::Pot);
    gb.into_iter()
        .filter(|w| is_zero_vector(&w[..rank]))
        .map(|w| w[rank..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Field;

    fn ring() -> Ring {
        Ring::grevlex(Field::prime(32003).unwrap(), ["x", "y", "z"]).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Poly {
        r.parse_poly(s).unwrap()
    }

    #[test]
    fn ideal_basis_is_reduced() {
        let r = ring();
        let gb = groebner(
            &r,
            1,
            vec![vec![p(&r, "x+y")], vec![p(&r, "x-y")]],
            ModuleOrder::Pot,
        );
        let s: Vec<String> = gb.iter().map(|v| v[0].to_string()).collect();
        assert_eq!(s, ["x", "y"]);
    }

    #[test]
    fn module_syzygy_of_koszul_pair() {
        let r = ring();
        let syz = syzygies(&r, 1, &[vec![p(&r, "x")], vec![p(&r, "y")]]);
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        assert!(s[0].mul(&p(&r, "x")).add(&s[1].mul(&p(&r, "y"))).is_zero());
        assert_eq!(s[0].total_degree(), Some(1));
    }

    #[test]
    fn top_order_certificate() {
        let r = ring();
        let gens = vec![
            vec![p(&r, "x"), p(&r, "y^2")],
            vec![p(&r, "y"), p(&r, "z")],
            vec![p(&r, "z^2"), p(&r, "x*y")],
        ];
        for mo in [ModuleOrder::Pot, ModuleOrder::Top] {
            let gb = groebner(&r, 2, gens.clone(), mo);
            assert!(is_groebner(&gb, mo));
            for g in &gens {
                assert!(is_zero_vector(&normal_form(g.clone(), &gb, mo)));
            }
        }
    }
}
