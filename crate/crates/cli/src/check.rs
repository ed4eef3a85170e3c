//! Name resolution and context checks: a syntactically valid session is accepted
//! only if every name is declared before use, every call matches its signature,
//! and all objects of one declaration or command share a ring.

use std::collections::HashMap;

use lcass_core::polycore::{Field, Ring};

use crate::syntax::{
    parse_syntax, Command, Decl, FieldSpec, GradedDef, ModuleExpr, Node, ParseError,
    ParseErrorKind, PolyText, Pos, Session, Value,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ring,
    Ideal,
    Module,
    Graded,
    Int,
}

impl Kind {
    fn name(&self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Ideal => "ideal",
            Kind::Module => "module",
            Kind::Graded => "graded family",
            Kind::Int => "integer",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Ideal,
    /// A module name, an inline module, or a ring (free of rank one).
    Module,
    Graded,
    Int,
    PolyList,
    IntList,
    IdealList,
}

#[derive(Clone, Copy, Debug)]
pub struct Param {
    pub name: &'static str,
    pub kind: ParamKind,
    pub required: bool,
}

const fn req(name: &'static str, kind: ParamKind) -> Param {
    Param {
        name,
        kind,
        required: true,
    }
}

const fn opt(name: &'static str, kind: ParamKind) -> Param {
    Param {
        name,
        kind,
        required: false,
    }
}

use ParamKind as P;

macro_rules! sig {
    ($($p:expr),* $(,)?) => {{
        const S: &[Param] = &[$($p),*];
        S
    }};
}

/// Parameters of each command head.
pub fn signature(head: &[String]) -> &'static [Param] {
    let h: Vec<&str> = head.iter().map(String::as_str).collect();
    match h.as_slice() {
        ["gb"] | ["minprimes"] => sig![req("ideal", P::Ideal)],
        ["assprimes"] | ["ann"] | ["dim"] | ["oracle", "ass"] => sig![req("module", P::Module)],
        ["resolution"] => sig![req("module", P::Module), opt("length", P::Int)],
        ["ext"] => sig![req("j", P::Int), req("m", P::Module), req("n", P::Module)],
        ["depthk"] | ["depth"] => sig![
            req("ideal", P::Ideal),
            req("n", P::Module),
            req("k", P::Int)
        ],
        ["asslch"] => sig![
            req("ideal", P::Ideal),
            req("m", P::Module),
            req("n", P::Module),
            req("k", P::Int),
            req("l", P::Int)
        ],
        ["toplch"] => sig![
            req("ideal", P::Ideal),
            req("m", P::Module),
            req("n", P::Module)
        ],
        ["extass"] => sig![
            req("ideal", P::Ideal),
            req("n", P::Module),
            req("k", P::Int),
            req("l", P::Int),
            opt("t", P::Int),
            opt("exps", P::IntList),
        ],
        ["powerinv"] => sig![
            req("seq", P::PolyList),
            req("n", P::Module),
            req("k", P::Int),
            req("exps", P::IntList)
        ],
        ["starset"] => sig![
            req("seq", P::PolyList),
            req("n", P::Module),
            req("ideal", P::Ideal),
            req("k", P::Int),
            req("j", P::Int),
            opt("permutable", P::Int),
        ],
        ["avoid"] => sig![req("ideal", P::Ideal), req("primes", P::IdealList)],
        ["component"] => sig![req("family", P::Graded), req("n", P::Int)],
        ["stabilize", "ass"] => sig![req("family", P::Graded)],
        ["stabilize", "depthk"] | ["commonseq"] => sig![
            req("family", P::Graded),
            req("ideal", P::Ideal),
            req("k", P::Int)
        ],
        ["stabilize", "asslch"] => sig![
            req("ideal", P::Ideal),
            req("m", P::Module),
            req("family", P::Graded),
            req("k", P::Int),
            req("l", P::Int),
        ],
        ["oracle", "asslch", "vs", "ext"] => sig![
            req("ideal", P::Ideal),
            req("n", P::Module),
            req("k", P::Int),
            req("l", P::Int)
        ],
        ["kernel"] => sig![req("m", P::Module), req("n", P::Module)],
        _ => &[],
    }
}

/// Arguments of a command matched to its parameters.
pub fn bind(cmd: &Command, pos: Pos) -> Result<Vec<Option<Value>>, ParseError> {
    let params = signature(&cmd.head);
    let mut out: Vec<Option<Value>> = vec![None; params.len()];
    let syntax = |msg: String| ParseError::new(ParseErrorKind::Syntax, pos, msg);
    let mut next = 0;
    for arg in &cmd.args {
        let slot = match &arg.name {
            Some(n) => params
                .iter()
                .position(|p| p.name == n)
                .ok_or_else(|| syntax(format!("{} has no parameter '{n}'", cmd.head_text())))?,
            None => {
                while next < params.len() && out[next].is_some() {
                    next += 1;
                }
                if next == params.len() {
                    return Err(syntax(format!(
                        "too many arguments for {}",
                        cmd.head_text()
                    )));
                }
                next
            }
        };
        if out[slot].is_some() {
            return Err(syntax(format!(
                "parameter '{}' given twice",
                params[slot].name
            )));
        }
        out[slot] = Some(arg.value.clone());
    }
    for (p, v) in params.iter().zip(&out) {
        if p.required && v.is_none() {
            return Err(syntax(format!(
                "missing argument '{}' of {}",
                p.name,
                cmd.head_text()
            )));
        }
    }
    Ok(out)
}

pub fn make_ring(field: &FieldSpec, vars: &[String]) -> lcass_core::Result<Ring> {
    let f = match field {
        FieldSpec::Zp(p) => {
            let p = u32::try_from(*p).map_err(|_| {
                lcass_core::Error::MalformedInput(format!("characteristic {p} is too large"))
            })?;
            Field::prime(p)?
        }
        FieldSpec::Qq => Field::Rationals,
    };
    Ring::grevlex(f, vars.iter().cloned())
}

#[derive(Clone, Debug)]
struct Symbol {
    kind: Kind,
    ring: Option<Ring>,
}

struct Checker {
    symbols: HashMap<String, Symbol>,
    active: Option<Ring>,
    pos: Pos,
}

impl Checker {
    fn err(&self, kind: ParseErrorKind, msg: String) -> ParseError {
        ParseError::new(kind, self.pos, msg)
    }

    fn lookup(&self, name: &str, want: &[Kind]) -> Result<&Symbol, ParseError> {
        let s = self.symbols.get(name).ok_or_else(|| {
            self.err(
                ParseErrorKind::UndeclaredName,
                format!("'{name}' is not declared"),
            )
        })?;
        if !want.contains(&s.kind) {
            return Err(self.err(
                ParseErrorKind::Syntax,
                format!(
                    "'{name}' is a {}, expected a {}",
                    s.kind.name(),
                    want[0].name()
                ),
            ));
        }
        Ok(s)
    }

    fn active(&self) -> Result<Ring, ParseError> {
        self.active.clone().ok_or_else(|| {
            self.err(
                ParseErrorKind::UndeclaredName,
                "no ring has been declared".into(),
            )
        })
    }

    fn same(&self, a: &Ring, b: &Ring, what: &str) -> Result<(), ParseError> {
        if a != b {
            return Err(self.err(
                ParseErrorKind::ContextMismatch,
                format!("{what}: {a} vs {b}"),
            ));
        }
        Ok(())
    }

    fn poly(&self, ring: &Ring, p: &PolyText) -> Result<(), ParseError> {
        ring.parse_poly(&p.0).map(|_| ()).map_err(|e| {
            // an unknown identifier is either an undeclared name or a bad variable
            let unknown =
                p.0.split(|c: char| !c.is_ascii_alphanumeric() && c != '_')
                    .find(|w| {
                        w.chars()
                            .next()
                            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                            && ring.var_index(w).is_none()
                    });
            match unknown {
                Some(w) if self.symbols.contains_key(w) => self.err(
                    ParseErrorKind::ContextMismatch,
                    format!("'{w}' is not a polynomial of {ring}"),
                ),
                Some(w) => self.err(
                    ParseErrorKind::UndeclaredName,
                    format!("'{w}' is neither declared nor a variable of {ring}"),
                ),
                None => self.err(ParseErrorKind::Syntax, e.to_string()),
            }
        })
    }

    fn module(&self, m: &ModuleExpr) -> Result<Ring, ParseError> {
        match m {
            ModuleExpr::Name(n) => Ok(self
                .lookup(n, &[Kind::Module, Kind::Ring])?
                .ring
                .clone()
                .unwrap()),
            ModuleExpr::Coker(rows) => {
                let ring = self.active()?;
                let ncols = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|r| r.len() != ncols) {
                    return Err(self.err(ParseErrorKind::Syntax, "ragged matrix".into()));
                }
                for p in rows.iter().flatten() {
                    self.poly(&ring, p)?;
                }
                Ok(ring)
            }
            ModuleExpr::Quotient { ring, ideal } => {
                let r = self.lookup(ring, &[Kind::Ring])?.ring.clone().unwrap();
                let i = self.lookup(ideal, &[Kind::Ideal])?.ring.clone().unwrap();
                self.same(&r, &i, "quotient")?;
                Ok(r)
            }
            ModuleExpr::Free { ring, .. } => {
                Ok(self.lookup(ring, &[Kind::Ring])?.ring.clone().unwrap())
            }
        }
    }

    fn decl(&mut self, d: &Decl) -> Result<(), ParseError> {
        if self.symbols.contains_key(d.name()) {
            return Err(self.err(
                ParseErrorKind::Syntax,
                format!("'{}' is declared twice", d.name()),
            ));
        }
        let sym = match d {
            Decl::Ring { field, vars, .. } => {
                let ring = make_ring(field, vars)
                    .map_err(|e| self.err(ParseErrorKind::Syntax, e.to_string()))?;
                self.active = Some(ring.clone());
                Symbol {
                    kind: Kind::Ring,
                    ring: Some(ring),
                }
            }
            Decl::Ideal { gens, .. } => {
                let ring = self.active()?;
                for g in gens {
                    self.poly(&ring, g)?;
                }
                Symbol {
                    kind: Kind::Ideal,
                    ring: Some(ring),
                }
            }
            Decl::Module { def, .. } => Symbol {
                kind: Kind::Module,
                ring: Some(self.module(def)?),
            },
            Decl::Graded {
                def: GradedDef::Rees { ideal, module },
                ..
            } => {
                let i = self.lookup(ideal, &[Kind::Ideal])?.ring.clone().unwrap();
                let m = self.module(module)?;
                self.same(&i, &m, "rees")?;
                Symbol {
                    kind: Kind::Graded,
                    ring: Some(i),
                }
            }
            Decl::Graded {
                def:
                    GradedDef::Custom {
                        vars,
                        degrees,
                        matrix,
                        algebra,
                    },
                ..
            } => {
                let base = self.active()?;
                let alg = lcass_core::graded::GradedAlgebraSpec::polynomial(&base, vars)
                    .map_err(|e| self.err(ParseErrorKind::Syntax, e.to_string()))?;
                let total = alg.total().clone();
                if matrix.len() != degrees.len() {
                    return Err(self.err(
                        ParseErrorKind::Syntax,
                        format!(
                            "{} matrix rows for {} generator degrees",
                            matrix.len(),
                            degrees.len()
                        ),
                    ));
                }
                let ncols = matrix.first().map_or(0, Vec::len);
                if matrix.iter().any(|r| r.len() != ncols) {
                    return Err(self.err(ParseErrorKind::Syntax, "ragged matrix".into()));
                }
                for p in matrix.iter().flatten().chain(algebra) {
                    self.poly(&total, p)?;
                }
                Symbol {
                    kind: Kind::Graded,
                    ring: Some(base),
                }
            }
            Decl::Int { .. } => Symbol {
                kind: Kind::Int,
                ring: None,
            },
        };
        self.symbols.insert(d.name().to_string(), sym);
        Ok(())
    }

    fn command(&mut self, c: &Command) -> Result<(), ParseError> {
        let bound = bind(c, self.pos)?;
        let params = signature(&c.head);
        let mut ring: Option<Ring> = None;
        let mut polys: Vec<&PolyText> = Vec::new();
        let mut idents: Vec<&String> = Vec::new();
        for (p, v) in params.iter().zip(&bound) {
            let Some(v) = v else { continue };
            let mismatch = |what: &str| {
                ParseError::new(
                    ParseErrorKind::Syntax,
                    self.pos,
                    format!("argument '{}' must be {what}", p.name),
                )
            };
            let r = match (p.kind, v) {
                (P::Ideal, Value::Ident(n)) => self.lookup(n, &[Kind::Ideal])?.ring.clone(),
                (P::Graded, Value::Ident(n)) => self.lookup(n, &[Kind::Graded])?.ring.clone(),
                (P::Module, Value::Ident(n)) => Some(self.module(&ModuleExpr::Name(n.clone()))?),
                (P::Module, Value::Module(m)) => Some(self.module(m)?),
                (P::Int, Value::Int(_)) => None,
                (P::Int, Value::Ident(n)) => {
                    self.lookup(n, &[Kind::Int])?;
                    None
                }
                (P::IntList, Value::List(xs)) => {
                    for x in xs {
                        match x {
                            Value::Int(_) => {}
                            Value::Ident(n) => {
                                self.lookup(n, &[Kind::Int])?;
                            }
                            _ => return Err(mismatch("a list of integers")),
                        }
                    }
                    None
                }
                (P::PolyList, Value::List(xs)) => {
                    for x in xs {
                        match x {
                            Value::Poly(t) => polys.push(t),
                            Value::Ident(n) => idents.push(n),
                            Value::Int(_) => {}
                            _ => return Err(mismatch("a list of polynomials")),
                        }
                    }
                    None
                }
                (P::IdealList, Value::List(xs)) => {
                    let mut r = None;
                    for x in xs {
                        let Value::Ident(n) = x else {
                            return Err(mismatch("a list of ideal names"));
                        };
                        let ri = self.lookup(n, &[Kind::Ideal])?.ring.clone();
                        match (&r, ri) {
                            (Some(r0), Some(ri)) => self.same(r0, &ri, &c.head_text())?,
                            (None, ri) => r = ri,
                            _ => {}
                        }
                    }
                    r
                }
                (P::Ideal, _) => return Err(mismatch("an ideal name")),
                (P::IdealList, _) => return Err(mismatch("a list of ideal names")),
                (P::Graded, _) => return Err(mismatch("a graded family name")),
                (P::Module, _) => return Err(mismatch("a module")),
                (P::Int, _) => return Err(mismatch("an integer")),
                (P::IntList, _) => return Err(mismatch("a list of integers")),
                (P::PolyList, _) => return Err(mismatch("a list of polynomials")),
            };
            if let Some(r) = r {
                match &ring {
                    None => ring = Some(r),
                    Some(r0) => self.same(r0, &r, &c.head_text())?,
                }
            }
        }
        if !polys.is_empty() || !idents.is_empty() {
            let ring = ring.clone().map_or_else(|| self.active(), Ok)?;
            for t in polys {
                self.poly(&ring, t)?;
            }
            for n in idents {
                if ring.var_index(n).is_none() {
                    self.poly(&ring, &PolyText(n.clone()))?;
                }
            }
        }
        for cl in &c.clauses {
            if cl.key == "window" && !matches!(cl.value, crate::syntax::ClauseValue::Int(_))
                || cl.key != "window" && !matches!(cl.value, crate::syntax::ClauseValue::Range(..))
            {
                return Err(self.err(ParseErrorKind::Syntax, format!("malformed clause '{cl}'")));
            }
        }
        Ok(())
    }
}

/// Parses and checks a session.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let session = parse_syntax(text)?;
    let mut ck = Checker {
        symbols: HashMap::new(),
        active: None,
        pos: Pos::default(),
    };
    for item in &session.items {
        ck.pos = item.pos;
        match &item.node {
            Node::Decl(d) => ck.decl(d)?,
            Node::Command(c) => ck.command(c)?,
        }
    }
    Ok(session)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(text: &str) -> ParseErrorKind {
        parse_session(text).unwrap_err().kind
    }

    #[test]
    fn accepts_spec_session() {
        let s = parse_session(
            "ring S = zp(32003)[x,y]; ideal I = x^2, x*y; compute assprimes quotient(S, I);",
        )
        .unwrap();
        assert_eq!(s.items.len(), 3);
    }

    #[test]
    fn ideal_before_ring_is_undeclared() {
        assert_eq!(kind("ideal I = x;"), ParseErrorKind::UndeclaredName);
        assert_eq!(
            kind("ring S = zp(7)[x]; compute gb(J);"),
            ParseErrorKind::UndeclaredName
        );
        assert_eq!(
            kind("ring S = zp(7)[x]; ideal I = z;"),
            ParseErrorKind::UndeclaredName
        );
    }

    #[test]
    fn mixed_rings_are_a_context_mismatch() {
        let text = "ring S = zp(7)[x,y]; ideal I = x; ring T = zp(11)[x,y]; ideal J = y; \
                    compute depthk(I, quotient(T, J), -1);";
        assert_eq!(kind(text), ParseErrorKind::ContextMismatch);
        let text = "ring S = zp(7)[x]; ideal I = x; ring T = zp(7)[y]; module M = quotient(T, I);";
        assert_eq!(kind(text), ParseErrorKind::ContextMismatch);
    }

    #[test]
    fn signature_errors_are_syntax_errors() {
        let pre = "ring S = zp(7)[x,y]; ideal I = x;";
        assert_eq!(
            kind(&format!("{pre} compute depthk(I, S);")),
            ParseErrorKind::Syntax
        );
        assert_eq!(
            kind(&format!("{pre} compute depthk(I, S, -1, 2);")),
            ParseErrorKind::Syntax
        );
        assert_eq!(
            kind(&format!("{pre} compute depthk(I, S, q=1);")),
            ParseErrorKind::Syntax
        );
        assert_eq!(
            kind(&format!("{pre} compute gb(S);")),
            ParseErrorKind::Syntax
        );
        assert!(parse_session(&format!("{pre} compute depthk(I, S, k=-1);")).is_ok());
        assert!(parse_session(&format!(
            "{pre} int k = 0; compute depthk(n=S, ideal=I, k=k);"
        ))
        .is_ok());
    }

    #[test]
    fn sequence_literals_are_checked_in_the_command_ring() {
        let pre = "ring S = zp(7)[x,y];";
        assert!(parse_session(&format!("{pre} compute powerinv([x, y], S, -1, [2, 2]);")).is_ok());
        assert_eq!(
            kind(&format!("{pre} compute powerinv([x, w], S, -1, [2, 2]);")),
            ParseErrorKind::UndeclaredName
        );
    }
}
