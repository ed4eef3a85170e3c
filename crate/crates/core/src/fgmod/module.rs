use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::engine::{
    self, is_zero_vector, unit_vector, zero_vector, ModuleOrder, Vector,
};
use crate::groebner::{Dimension, Ideal};
use crate::polycore::{Poly, Ring};

/// A finitely generated module `R^rank / im(relations)`.
///
/// Presentations are never compared structurally; use invariants
/// (annihilator, associated primes, dimension, vanishing).
#[derive(Clone)]
pub struct Module {
    ring: Ring,
    rank: usize,
    relations: Vec<Vector>,
    gb: Arc<OnceLock<Vec<Vector>>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(rank {}, {})", self.rank, self.matrix_text())
    }
}

impl Module {
    pub fn new(ring: &Ring, rank: usize, relations: Vec<Vector>) -> Result<Module> {
        for r in &relations {
            if r.len() != rank {
                return Err(Error::MalformedInput(format!(
                    "relation of length {} in a free module of rank {rank}",
                    r.len()
                )));
            }
            crate::groebner::check_ring(ring, r)?;
        }
        Ok(Module::from_parts(ring, rank, relations))
    }

    pub(crate) fn from_parts(ring: &Ring, rank: usize, relations: Vec<Vector>) -> Module {
        let relations = relations
            .into_iter()
            .filter(|r| !is_zero_vector(r))
            .collect();
        Module {
            ring: ring.clone(),
            rank,
            relations,
            gb: Arc::new(OnceLock::new()),
        }
    }

    /// Module presented by a matrix given as rows; each column is a relation.
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Poly>>) -> Result<Module> {
        let rank = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::MalformedInput("ragged matrix".into()));
        }
        let cols = (0..ncols)
            .map(|c| rows.iter().map(|row| row[c].clone()).collect())
            .collect();
        Module::new(ring, rank, cols)
    }

    pub fn free(ring: &Ring, rank: usize) -> Module {
        Module::from_parts(ring, rank, Vec::new())
    }

    /// `R/I`.
    pub fn cyclic(ideal: &Ideal) -> Module {
        let rels = ideal.gb().iter().map(|g| vec![g.clone()]).collect();
        Module::from_parts(ideal.ring(), 1, rels)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    /// Rows of the relation matrix, in canonical text.
    pub fn matrix_text(&self) -> String {
        let rows: Vec<String> = (0..self.rank)
            .map(|i| {
                let cells: Vec<String> = self.relations.iter().map(|c| c[i].to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    /// Gröbner basis of the relation submodule (position over term).
    pub fn gb(&self) -> &[Vector] {
        self.gb.get_or_init(|| {
            engine::groebner(
                &self.ring,
                self.rank,
                self.relations.clone(),
                ModuleOrder::Pot,
            )
        })
    }

    pub fn normal_form(&self, v: &[Poly]) -> Result<Vector> {
        if v.len() != self.rank {
            return Err(Error::MalformedInput(format!(
                "vector of length {} for a module of rank {}",
                v.len(),
                self.rank
            )));
        }
        crate::groebner::check_ring(&self.ring, v)?;
        Ok(engine::normal_form(v.to_vec(), self.gb(), ModuleOrder::Pot))
    }

    /// `v` lies in the relation submodule.
    pub fn is_relation(&self, v: &[Poly]) -> bool {
        is_zero_vector(&engine::normal_form(
            v.to_vec(),
            self.gb(),
            ModuleOrder::Pot,
        ))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rank).all(|i| self.is_relation(&unit_vector(&self.ring, self.rank, i)))
    }

    /// `Ann(M) = ⋂_i (relations : e_i)`.
    pub fn annihilator(&self) -> Ideal {
        let m = self.pruned();
        let mut acc = Ideal::unit(&m.ring);
        for i in 0..m.rank {
            let mut vecs = vec![unit_vector(&m.ring, m.rank, i)];
            vecs.extend(m.gb().iter().cloned());
            let syz = engine::syzygies(&m.ring, m.rank, &vecs);
            let colon = Ideal::from_gens(&m.ring, syz.into_iter().map(|s| s[0].clone()).collect());
            acc = acc.intersect_unchecked(&colon);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// `M / (x_1, …, x_j) M`.
    pub fn quotient_by(&self, xs: &[Poly]) -> Result<Module> {
        crate::groebner::check_ring(&self.ring, xs)?;
        let mut rels = self.relations.clone();
        for x in xs {
            for l in 0..self.rank {
                let mut v = zero_vector(&self.ring, self.rank);
                v[l] = x.clone();
                rels.push(v);
            }
        }
        Ok(Module::from_parts(&self.ring, self.rank, rels))
    }

    /// `M / I M`.
    pub fn quotient_by_ideal(&self, ideal: &Ideal) -> Result<Module> {
        self.ring.ensure_same(ideal.ring(), "quotient by ideal")?;
        self.quotient_by(ideal.gb())
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        self.ring.ensure_same(&other.ring, "direct sum")?;
        let rank = self.rank + other.rank;
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut v = r.clone();
            v.extend(zero_vector(&self.ring, other.rank));
            rels.push(v);
        }
        for r in &other.relations {
            let mut v = zero_vector(&self.ring, self.rank);
            v.extend(r.iter().cloned());
            rels.push(v);
        }
        Ok(Module::from_parts(&self.ring, rank, rels))
    }

    /// Isomorphic presentation with every generator killed by a relation with a
    /// unit entry eliminated.
    pub fn pruned(&self) -> Module {
        let mut rank = self.rank;
        let mut rels: Vec<Vector> = self.relations.clone();
        let field = self.ring.field();
        loop {
            let pivot = rels
                .iter()
                .enumerate()
                .find_map(|(c, col)| col.iter().position(Poly::is_unit).map(|r| (c, r)));
            let Some((c, r)) = pivot else { break };
            let col = rels.swap_remove(c);
            let u_inv = field.inv(col[r].lc().unwrap());
            for v in rels.iter_mut() {
                if v[r].is_zero() {
                    continue;
                }
                let factor = v[r].scale(&u_inv);
                for (k, e) in v.iter_mut().enumerate() {
                    if !col[k].is_zero() {
                        *e = e.sub(&factor.mul(&col[k]));
                    }
                }
                debug_assert!(v[r].is_zero());
            }
            for v in rels.iter_mut() {
                v.remove(r);
            }
            rank -= 1;
            rels.retain(|v| !is_zero_vector(v));
        }
        if rank == self.rank {
            return self.clone();
        }
        Module::from_parts(&self.ring, rank, rels)
    }

    /// Drops relations that lie in the submodule generated by the others.
    pub fn minimized(&self) -> Module {
        let rels = minimize_generators(&self.ring, self.rank, self.gb().to_vec());
        Module::from_parts(&self.ring, self.rank, rels)
    }

    /// Krull dimension of the support, `dim R/Ann(M)`; `-1` for the zero module.
    pub fn dim(&self) -> Dimension {
        self.annihilator().dim()
    }

    /// Some power of `I` kills the module: `I ⊆ √Ann(M)`.
    pub fn is_torsion_for(&self, ideal: &Ideal) -> Result<bool> {
        self.ring.ensure_same(ideal.ring(), "torsion test")?;
        let ann = self.annihilator();
        for g in ideal.gb() {
            if !ann.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Greedy removal of generators lying in the span of the remaining ones.
pub(crate) fn minimize_generators(ring: &Ring, rank: usize, mut gens: Vec<Vector>) -> Vec<Vector> {
    gens.retain(|v| !is_zero_vector(v));
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        let others: Vec<Vector> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let gb = engine::groebner(ring, rank, others, ModuleOrder::Pot);
        if is_zero_vector(&engine::normal_form(gens[i].clone(), &gb, ModuleOrder::Pot)) {
            gens.remove(i);
        }
    }
    gens
}
