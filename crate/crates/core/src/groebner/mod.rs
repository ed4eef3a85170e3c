//! Buchberger engine and the ideal toolkit: membership, elimination, intersection,
//! colon, saturation, radical membership and Krull dimension.

pub mod engine;
mod ideal;

pub use engine::{ModuleOrder, Vector};
pub(crate) use ideal::check_ring;
pub use ideal::{Dimension, Ideal};
