//! Exact computation of dimension-filtered associated-prime sets of (generalized)
//! local cohomology modules over polynomial rings localized at the origin.
//!
//! The crate is layered bottom-up: [`polycore`] (coefficients and polynomials),
//! [`groebner`] (ideals), [`fgmod`] (finitely generated modules, resolutions, Ext),
//! [`decomp`] (minimal and associated primes), [`dimdepth`] (sequences in dimension
//! greater than `k` and `depth_k`), [`theorems`] (the associated-prime set formulas
//! and their Ext oracles) and [`graded`] (graded families and stabilization).

pub mod decomp;
pub mod dimdepth;
pub mod error;
pub mod fgmod;
pub mod graded;
pub mod groebner;
pub mod polycore;
pub mod theorems;

pub use error::{Error, Result};
