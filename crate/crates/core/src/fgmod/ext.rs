use super::module::Module;
use super::resolution::{free_resolution, subquotient, Resolution};
use crate::error::Result;
use crate::groebner::engine::{zero_vector, Vector};

/// `Ext^j(M, N)` as a presentation, with its index.
#[derive(Clone, Debug)]
pub struct ExtModule {
    pub index: usize,
    pub module: Module,
}

/// Relations of `N^copies` inside `R^(copies * rank N)`.
fn block_relations(n: &Module, copies: usize) -> Vec<Vector> {
    let g = n.rank();
    let ring = n.ring();
    let mut out = Vec::new();
    for a in 0..copies {
        for r in n.relations() {
            let mut v = zero_vector(ring, copies * g);
            for (s, e) in r.iter().enumerate() {
                v[a * g + s] = e.clone();
            }
            out.push(v);
        }
    }
    out
}

/// Image in `Hom(F_{i+1}, N) = N^{b_{i+1}}` of the basis of `Hom(F_i, N) = N^{b_i}`
/// under precomposition with `d_{i+1}`.
fn dual_map_images(res: &Resolution, i: usize, n: &Module) -> Vec<Vector> {
    let g = n.rank();
    let ring = n.ring();
    let (bi, bj) = (res.rank(i), res.rank(i + 1));
    let mut out = Vec::with_capacity(bi * g);
    for a in 0..bi {
        for s in 0..g {
            let mut v = zero_vector(ring, bj * g);
            for b in 0..bj {
                v[b * g + s] = res.entry(i, a, b).clone();
            }
            out.push(v);
        }
    }
    out
}

/// Cohomology of `Hom(F_•, N)` at stage `j` for a resolution `F_•` of the first
/// argument. `Ext^0` is `Hom(M, N)`.
pub fn ext_from_resolution(res: &Resolution, j: usize, n: &Module) -> Module {
    let ring = n.ring();
    let g = n.rank();
    let bj = res.rank(j);
    if bj == 0 || g == 0 {
        return Module::free(ring, 0);
    }
    let dim_j = bj * g;
    // cycles: u with d*(u) ∈ relations of N^{b_{j+1}}
    let bnext = res.rank(j + 1);
    let cycles: Vec<Vector> = if bnext == 0 {
        super::resolution::identity_columns(ring, dim_j)
    } else {
        let mut vecs = dual_map_images(res, j, n);
        let targets = block_relations(n, bnext);
        vecs.extend(targets);
        let syz = crate::groebner::engine::syzygies(ring, bnext * g, &vecs);
        syz.into_iter().map(|s| s[..dim_j].to_vec()).collect()
    };
    let mut boundaries = block_relations(n, bj);
    if j > 0 {
        boundaries.extend(dual_map_images(res, j - 1, n));
    }
    subquotient(ring, dim_j, &cycles, &boundaries)
}

/// `Ext^j(M, N)` from a free resolution of `M` (the first argument only).
pub fn ext(j: usize, m: &Module, n: &Module) -> Result<ExtModule> {
    m.ring().ensure_same(n.ring(), "Ext")?;
    let res = free_resolution(m, j);
    let n = n.pruned();
    Ok(ExtModule {
        index: j,
        module: ext_from_resolution(&res, j, &n),
    })
}

pub fn hom(m: &Module, n: &Module) -> Result<Module> {
    Ok(ext(0, m, n)?.module)
}

/// `Hom(M, N)` straight from the presentation of `M`, without a resolution:
/// tuples `φ ∈ N^a` killed by every relation of `M`.
pub fn hom_from_presentation(m: &Module, n: &Module) -> Result<Module> {
    m.ring().ensure_same(n.ring(), "Hom")?;
    let ring = n.ring();
    let n = n.pruned();
    let (a, g) = (m.rank(), n.rank());
    if a == 0 || g == 0 {
        return Ok(Module::free(ring, 0));
    }
    let rels = m.relations();
    let dim = a * g;
    let cycles: Vec<Vector> = if rels.is_empty() {
        super::resolution::identity_columns(ring, dim)
    } else {
        let c = rels.len();
        let mut vecs = Vec::with_capacity(dim);
        for i in 0..a {
            for s in 0..g {
                let mut v = zero_vector(ring, c * g);
                for (b, col) in rels.iter().enumerate() {
                    v[b * g + s] = col[i].clone();
                }
                vecs.push(v);
            }
        }
        vecs.extend(block_relations(&n, c));
        crate::groebner::engine::syzygies(ring, c * g, &vecs)
            .into_iter()
            .map(|s| s[..dim].to_vec())
            .collect()
    };
    Ok(subquotient(ring, dim, &cycles, &block_relations(&n, a)))
}

/// `Ext^j(M, N)` for `j = 0..=top`, sharing one resolution.
pub fn ext_range(top: usize, m: &Module, n: &Module) -> Result<Vec<ExtModule>> {
    m.ring().ensure_same(n.ring(), "Ext")?;
    let res = free_resolution(m, top);
    let n = n.pruned();
    Ok((0..=top)
        .map(|j| ExtModule {
            index: j,
            module: ext_from_resolution(&res, j, &n),
        })
        .collect())
}
