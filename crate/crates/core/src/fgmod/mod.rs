//! Finitely generated modules as cokernels of relation matrices: module Gröbner
//! bases, syzygies, free resolutions, Hom and Ext, annihilators, quotients by
//! sequences, support dimension and torsion tests.

mod ext;
mod module;
mod resolution;

pub use ext::{ext, ext_from_resolution, ext_range, hom, hom_from_presentation, ExtModule};
pub use module::Module;
pub use resolution::{free_resolution, Resolution};

use crate::error::Result;
use crate::groebner::engine::{self, Vector};
use crate::polycore::Ring;

/// Generators of the relations among `vectors` (elements of `R^rank`), and a
/// presentation of the syzygy module they generate.
pub fn syzygies(ring: &Ring, rank: usize, vectors: &[Vector]) -> Result<(Vec<Vector>, Module)> {
    for v in vectors {
        if v.len() != rank {
            return Err(crate::Error::MalformedInput(format!(
                "vector of length {} in a free module of rank {rank}",
                v.len()
            )));
        }
        crate::groebner::check_ring(ring, v)?;
    }
    let gens = engine::syzygies(ring, rank, vectors);
    let second = engine::syzygies(ring, vectors.len(), &gens);
    let module = Module::new(ring, gens.len(), second)?;
    Ok((gens, module))
}
