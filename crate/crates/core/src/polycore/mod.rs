//! Coefficient fields, monomials, monomial orders and multivariate polynomials.

mod field;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use field::{inv_mod, is_prime, Coeff, Field, DEFAULT_CHARACTERISTIC};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{format_monomial, ArithOp, Poly, Term};
pub use ring::Ring;

#[cfg(test)]
mod tests;
