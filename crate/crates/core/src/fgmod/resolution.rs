use super::module::{minimize_generators, Module};
use crate::groebner::engine::{self, is_zero_vector, unit_vector, zero_vector, Vector};
use crate::polycore::{Poly, Ring};

/// Free resolution `F_0 ← F_1 ← … ← F_L`; `maps[i]` holds the columns of
/// `d_{i+1}: F_{i+1} → F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Ring,
    pub ranks: Vec<usize>,
    pub maps: Vec<Vec<Vector>>,
}

impl Resolution {
    /// Entry of `d_{i+1}` at (row `a`, column `b`).
    pub fn entry(&self, i: usize, a: usize, b: usize) -> &Poly {
        &self.maps[i][b][a]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.ranks.iter().rposition(|&r| r > 0).unwrap_or(0)
    }

    /// `d_i ∘ d_{i+1} = 0` at every stage.
    pub fn is_complex(&self) -> bool {
        for i in 1..self.maps.len() {
            for col in &self.maps[i] {
                // d_i applied to a column of d_{i+1}
                let mut img = zero_vector(&self.ring, self.ranks[i - 1]);
                for (b, coef) in col.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    for (a, e) in img.iter_mut().enumerate() {
                        *e = e.add(&self.maps[i - 1][b][a].mul(coef));
                    }
                }
                if !is_zero_vector(&img) {
                    return false;
                }
            }
        }
        true
    }
}

/// Resolves `m` by iterated syzygies, pruning redundant generators at each stage.
/// The first `length + 1` differentials are computed (fewer if the resolution
/// terminates).
pub fn free_resolution(m: &Module, length: usize) -> Resolution {
    let m = m.pruned();
    let ring = m.ring().clone();
    let mut ranks = vec![m.rank()];
    let mut maps: Vec<Vec<Vector>> = Vec::new();
    if m.rank() == 0 {
        return Resolution { ring, ranks, maps };
    }
    let mut cols = minimize_generators(&ring, m.rank(), m.relations().to_vec());
    for stage in 0..=length {
        ranks.push(cols.len());
        maps.push(cols.clone());
        if cols.is_empty() || stage == length {
            break;
        }
        let rank = ranks[stage];
        let syz = engine::syzygies(&ring, rank, &cols);
        cols = minimize_generators(&ring, cols.len(), syz);
    }
    Resolution { ring, ranks, maps }
}

/// Presentation of the subquotient `A / B` of `R^rank` where `B ⊆ A`.
pub(crate) fn subquotient(ring: &Ring, rank: usize, a: &[Vector], b: &[Vector]) -> Module {
    let a: Vec<Vector> = a.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
    let p = a.len();
    if p == 0 {
        return Module::free(ring, 0);
    }
    let mut all = a.clone();
    all.extend(b.iter().cloned());
    let syz = engine::syzygies(ring, rank, &all);
    let rels: Vec<Vector> = syz.into_iter().map(|s| s[..p].to_vec()).collect();
    Module::from_parts(ring, p, rels).pruned()
}

pub(crate) fn identity_columns(ring: &Ring, rank: usize) -> Vec<Vector> {
    (0..rank).map(|i| unit_vector(ring, rank, i)).collect()
}
