use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::field::{Coeff, Field};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// Polynomial ring `k[x_1..x_n]` with a fixed monomial order, read as a local ring
/// at the maximal ideal generated by all variables.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new<S: Into<String>>(
        field: Field,
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::MalformedInput(
                "a ring needs at least one variable".into(),
            ));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(Error::MalformedInput(format!("duplicate variable {v}")));
            }
        }
        Ok(Ring(Arc::new(RingData { field, vars, order })))
    }

    /// Grevlex ring, the canonical setting for ideals and modules.
    pub fn grevlex<S: Into<String>>(
        field: Field,
        vars: impl IntoIterator<Item = S>,
    ) -> Result<Ring> {
        Ring::new(field, vars, MonomialOrder::Grevlex)
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        if order == self.order() {
            return self.clone();
        }
        Ring(Arc::new(RingData {
            field: self.field(),
            vars: self.0.vars.clone(),
            order,
        }))
    }

    /// Same field, new variable list and order.
    pub fn with_vars(&self, vars: Vec<String>, order: MonomialOrder) -> Ring {
        Ring(Arc::new(RingData {
            field: self.field(),
            vars,
            order,
        }))
    }

    /// Name not clashing with any current variable, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut i = 0;
        while self.var_index(&name).is_some() {
            i += 1;
            name = format!("{base}{i}");
        }
        name
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self, self.field().one())
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        Poly::constant(self, c)
    }

    pub fn int(&self, v: i64) -> Poly {
        Poly::constant(self, self.field().from_i64(v))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::monomial(self, self.field().one(), Monomial::var(self.nvars(), i))
    }

    pub fn var_by_name(&self, name: &str) -> Option<Poly> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn vars_as_polys(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn ensure_same(&self, other: &Ring, what: &str) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch(format!(
                "{what}: {} vs {}",
                self, other
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.vars().join(","))
    }
}
