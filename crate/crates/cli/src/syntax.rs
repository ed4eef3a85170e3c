//! Lexer, syntax tree, parser and printer of the session language.
//!
//! ```text
//! session := (decl | command)* ;
//! decl    := "ring" name "=" field "[" names "]" ";"
//!          | "ideal" name "=" polylist ";"
//!          | "module" name "=" module ";"
//!          | "graded" name "=" ("rees" "(" name "," module ")" | "custom" gradedspec) ";"
//!          | "int" name "=" int ";" ;
//! field   := "zp" "(" prime ")" | "qq" ;
//! module  := name | "coker" matrix | "quotient" "(" name "," name ")" | "free" "(" name "," int ")" ;
//! gradedspec := "[" names "]" "degrees" "[" ints "]" "matrix" matrix "algebra" "[" polylist "]" ;
//! command := ("compute" | "check") head ( "(" args ")" | value ) clause* ";" ;
//! args    := arg ("," arg)* ;  arg := [name "="] value ;
//! value   := int | poly | module | "[" values "]" ;
//! clause  := ("range" | "t" | "exps") int ".." int | "window" int ;
//! ```
//!
//! Comments run from `#` to the end of the line. Matrices are lists of rows;
//! each column is a relation.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Sym(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UndeclaredName,
    ContextMismatch,
}

impl ParseErrorKind {
    pub fn name(&self) -> &'static str {
        match self {
            ParseErrorKind::Syntax => "syntax-error",
            ParseErrorKind::UndeclaredName => "undeclared-name",
            ParseErrorKind::ContextMismatch => "context-mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{}: {message} at {pos}", kind.name())]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            pos,
            message: message.into(),
        }
    }

    fn syntax(pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Syntax, pos, message)
    }
}

const SYMBOLS: [&str; 14] = [
    "..", "(", ")", "[", "]", ",", ";", "=", "+", "-", "*", "^", "/", ".",
];

pub fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let pos = Pos {
                line: li + 1,
                col: i + 1,
            };
            let c = chars[i];
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse()
                    .map_err(|_| ParseError::syntax(pos, format!("integer {s} is too large")))?;
                out.push((Tok::Int(n), pos));
            } else {
                let rest: String = chars[i..].iter().take(2).collect();
                let sym = SYMBOLS
                    .iter()
                    .find(|s| rest.starts_with(**s))
                    .ok_or_else(|| {
                        ParseError::syntax(pos, format!("unexpected character {c:?}"))
                    })?;
                out.push((Tok::Sym(sym), pos));
                i += sym.len();
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Zp(u64),
    Qq,
}

/// A polynomial literal in normalized token text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyText(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    Name(String),
    /// Rows of the relation matrix.
    Coker(Vec<Vec<PolyText>>),
    Quotient {
        ring: String,
        ideal: String,
    },
    Free {
        ring: String,
        rank: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedDef {
    Rees {
        ideal: String,
        module: ModuleExpr,
    },
    Custom {
        vars: Vec<String>,
        degrees: Vec<u64>,
        matrix: Vec<Vec<PolyText>>,
        algebra: Vec<PolyText>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Ring {
        name: String,
        field: FieldSpec,
        vars: Vec<String>,
    },
    Ideal {
        name: String,
        gens: Vec<PolyText>,
    },
    Module {
        name: String,
        def: ModuleExpr,
    },
    Graded {
        name: String,
        def: GradedDef,
    },
    Int {
        name: String,
        value: i64,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Ring { name, .. }
            | Decl::Ideal { name, .. }
            | Decl::Module { name, .. }
            | Decl::Graded { name, .. }
            | Decl::Int { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    /// A bare identifier; resolved later to a declaration or a variable.
    Ident(String),
    Poly(PolyText),
    Module(ModuleExpr),
    List(Vec<Value>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub name: Option<String>,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseValue {
    Int(i64),
    Range(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub key: String,
    pub value: ClauseValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Compute,
    Check,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub head: Vec<String>,
    pub args: Vec<Arg>,
    pub clauses: Vec<Clause>,
}

impl Command {
    pub fn head_text(&self) -> String {
        self.head.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Decl(Decl),
    Command(Command),
}

/// A node with its source position. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct Item {
    pub node: Node,
    pub pos: Pos,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl Eq for Item {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    pub items: Vec<Item>,
}

/// Command heads, as sequences of words.
pub const COMMAND_HEADS: &[(Verb, &[&str])] = &[
    (Verb::Compute, &["gb"]),
    (Verb::Compute, &["minprimes"]),
    (Verb::Compute, &["assprimes"]),
    (Verb::Compute, &["ann"]),
    (Verb::Compute, &["dim"]),
    (Verb::Compute, &["resolution"]),
    (Verb::Compute, &["ext"]),
    (Verb::Compute, &["depthk"]),
    (Verb::Compute, &["asslch"]),
    (Verb::Compute, &["toplch"]),
    (Verb::Compute, &["extass"]),
    (Verb::Compute, &["powerinv"]),
    (Verb::Compute, &["starset"]),
    (Verb::Compute, &["avoid"]),
    (Verb::Compute, &["component"]),
    (Verb::Compute, &["commonseq"]),
    (Verb::Compute, &["stabilize", "ass"]),
    (Verb::Compute, &["stabilize", "depthk"]),
    (Verb::Compute, &["stabilize", "asslch"]),
    (Verb::Check, &["oracle", "asslch", "vs", "ext"]),
    (Verb::Check, &["oracle", "ass"]),
    (Verb::Check, &["depth"]),
    (Verb::Check, &["kernel"]),
];

pub const CLAUSE_KEYS: &[&str] = &["range", "window", "t", "exps"];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn describe(&self) -> String {
        self.peek()
            .map_or("end of input".to_string(), |t| format!("'{t}'"))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == s)
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.is_sym(s) {
            self.at += 1;
            Ok(())
        } else {
            Err(ParseError::syntax(
                self.pos(),
                format!("expected '{s}', found {}", self.describe()),
            ))
        }
    }

    fn expect_keyword(&mut self, s: &str) -> Result<(), ParseError> {
        if self.is_ident(s) {
            self.at += 1;
            Ok(())
        } else {
            Err(ParseError::syntax(
                self.pos(),
                format!("expected '{s}', found {}", self.describe()),
            ))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(ParseError::syntax(
                self.pos(),
                format!("expected a name, found {}", self.describe()),
            )),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.at += 1;
                Ok(n)
            }
            _ => Err(ParseError::syntax(
                self.pos(),
                format!("expected an integer, found {}", self.describe()),
            )),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.is_sym("-");
        if neg {
            self.at += 1;
        }
        let pos = self.pos();
        let n = i64::try_from(self.uint()?)
            .map_err(|_| ParseError::syntax(pos, "integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn list<T>(
        &mut self,
        close: &str,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.is_sym(close) {
            self.at += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.is_sym(",") {
                self.at += 1;
            } else {
                self.expect_sym(close)?;
                return Ok(out);
            }
        }
    }

    /// Tokens of a polynomial literal up to a separator at depth zero.
    fn poly(&mut self) -> Result<PolyText, ParseError> {
        let start = self.pos();
        let mut depth = 0usize;
        let mut text = String::new();
        let mut prev: Option<Tok> = None;
        loop {
            let Some(t) = self.peek().cloned() else { break };
            match &t {
                Tok::Sym(",") | Tok::Sym(";") | Tok::Sym("]") if depth == 0 => break,
                Tok::Sym(")") if depth == 0 => break,
                Tok::Sym("(") => depth += 1,
                Tok::Sym(")") => depth -= 1,
                Tok::Sym("+") | Tok::Sym("-") | Tok::Sym("*") | Tok::Sym("^") | Tok::Sym("/") => {}
                Tok::Ident(_) | Tok::Int(_) => {
                    // juxtaposed identifiers would read as one name
                    if matches!(prev, Some(Tok::Ident(_))) && matches!(t, Tok::Ident(_)) {
                        break;
                    }
                }
                _ => {
                    return Err(ParseError::syntax(
                        self.pos(),
                        format!("unexpected '{t}' in a polynomial"),
                    ))
                }
            }
            let binary = matches!(
                prev,
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Sym(")"))
            );
            match &t {
                Tok::Sym(s @ ("+" | "-")) if binary => text.push_str(&format!(" {s} ")),
                other => text.push_str(&other.to_string()),
            }
            prev = Some(t);
            self.at += 1;
        }
        if text.is_empty() {
            return Err(ParseError::syntax(
                start,
                format!("expected a polynomial, found {}", self.describe()),
            ));
        }
        if depth != 0 {
            return Err(ParseError::syntax(self.pos(), "unbalanced parentheses"));
        }
        Ok(PolyText(text))
    }

    fn matrix(&mut self) -> Result<Vec<Vec<PolyText>>, ParseError> {
        self.expect_sym("[")?;
        self.list("]", |p| {
            p.expect_sym("[")?;
            p.list("]", Parser::poly)
        })
    }

    fn module_expr(&mut self) -> Result<ModuleExpr, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "coker" => {
                self.at += 1;
                Ok(ModuleExpr::Coker(self.matrix()?))
            }
            Some(Tok::Ident(s)) if s == "quotient" && self.peek2() == Some(&Tok::Sym("(")) => {
                self.at += 2;
                let ring = self.ident()?;
                self.expect_sym(",")?;
                let ideal = self.ident()?;
                self.expect_sym(")")?;
                Ok(ModuleExpr::Quotient { ring, ideal })
            }
            Some(Tok::Ident(s)) if s == "free" && self.peek2() == Some(&Tok::Sym("(")) => {
                self.at += 2;
                let ring = self.ident()?;
                self.expect_sym(",")?;
                let rank = self.uint()?;
                self.expect_sym(")")?;
                Ok(ModuleExpr::Free { ring, rank })
            }
            _ => Ok(ModuleExpr::Name(self.ident()?)),
        }
    }

    fn decl(&mut self, kw: &str) -> Result<Decl, ParseError> {
        let name = self.ident()?;
        self.expect_sym("=")?;
        let d = match kw {
            "ring" => {
                let field = if self.is_ident("qq") {
                    self.at += 1;
                    FieldSpec::Qq
                } else {
                    self.expect_keyword("zp")?;
                    self.expect_sym("(")?;
                    let p = self.uint()?;
                    self.expect_sym(")")?;
                    FieldSpec::Zp(p)
                };
                self.expect_sym("[")?;
                let vars = self.list("]", Parser::ident)?;
                Decl::Ring { name, field, vars }
            }
            "ideal" => {
                let mut gens = vec![self.poly()?];
                while self.is_sym(",") {
                    self.at += 1;
                    gens.push(self.poly()?);
                }
                Decl::Ideal { name, gens }
            }
            "module" => Decl::Module {
                name,
                def: self.module_expr()?,
            },
            "graded" => {
                if self.is_ident("rees") {
                    self.at += 1;
                    self.expect_sym("(")?;
                    let ideal = self.ident()?;
                    self.expect_sym(",")?;
                    let module = self.module_expr()?;
                    self.expect_sym(")")?;
                    Decl::Graded {
                        name,
                        def: GradedDef::Rees { ideal, module },
                    }
                } else {
                    self.expect_keyword("custom")?;
                    self.expect_sym("[")?;
                    let vars = self.list("]", Parser::ident)?;
                    self.expect_keyword("degrees")?;
                    self.expect_sym("[")?;
                    let degrees = self.list("]", Parser::uint)?;
                    self.expect_keyword("matrix")?;
                    let matrix = self.matrix()?;
                    self.expect_keyword("algebra")?;
                    self.expect_sym("[")?;
                    let algebra = self.list("]", Parser::poly)?;
                    Decl::Graded {
                        name,
                        def: GradedDef::Custom {
                            vars,
                            degrees,
                            matrix,
                            algebra,
                        },
                    }
                }
            }
            "int" => Decl::Int {
                name,
                value: self.int()?,
            },
            _ => unreachable!(),
        };
        self.expect_sym(";")?;
        Ok(d)
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        if self.is_sym("[") {
            self.at += 1;
            return Ok(Value::List(self.list("]", Parser::value)?));
        }
        let start = self.at;
        // a signed integer on its own
        if let Ok(n) = self.int() {
            if matches!(
                self.peek(),
                None | Some(Tok::Sym(",")) | Some(Tok::Sym(")")) | Some(Tok::Sym("]"))
            ) {
                return Ok(Value::Int(n));
            }
        }
        self.at = start;
        match (self.peek(), self.peek2()) {
            (Some(Tok::Ident(s)), Some(Tok::Sym("("))) if s == "quotient" || s == "free" => {
                return Ok(Value::Module(self.module_expr()?));
            }
            (Some(Tok::Ident(s)), Some(Tok::Sym("["))) if s == "coker" => {
                return Ok(Value::Module(self.module_expr()?))
            }
            (
                Some(Tok::Ident(s)),
                Some(Tok::Sym(",")) | Some(Tok::Sym(")")) | Some(Tok::Sym("]")) | None,
            ) => {
                let s = s.clone();
                self.at += 1;
                return Ok(Value::Ident(s));
            }
            _ => {}
        }
        Ok(Value::Poly(self.poly()?))
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        if let (Some(Tok::Ident(n)), Some(Tok::Sym("="))) = (self.peek(), self.peek2()) {
            let name = n.clone();
            self.at += 2;
            return Ok(Arg {
                name: Some(name),
                value: self.value()?,
            });
        }
        Ok(Arg {
            name: None,
            value: self.value()?,
        })
    }

    fn command(&mut self, verb: Verb) -> Result<Command, ParseError> {
        let pos = self.pos();
        let mut head: Vec<String> = Vec::new();
        loop {
            let Some(Tok::Ident(w)) = self.peek() else {
                break;
            };
            let mut probe = head.clone();
            probe.push(w.clone());
            let extends = COMMAND_HEADS.iter().any(|(v, h)| {
                *v == verb && h.len() >= probe.len() && h[..probe.len()] == probe[..]
            });
            if !extends {
                break;
            }
            head = probe;
            self.at += 1;
        }
        if !COMMAND_HEADS.iter().any(|(v, h)| *v == verb && *h == head) {
            let verb_word = if verb == Verb::Compute {
                "compute"
            } else {
                "check"
            };
            return Err(ParseError::syntax(
                pos,
                format!(
                    "unknown {verb_word} command starting at {}",
                    self.describe()
                ),
            ));
        }
        let args = if self.is_sym("(") {
            self.at += 1;
            self.list(")", Parser::arg)?
        } else {
            vec![Arg {
                name: None,
                value: self.value()?,
            }]
        };
        let mut clauses = Vec::new();
        while let Some(Tok::Ident(k)) = self.peek() {
            let key = k.clone();
            if !CLAUSE_KEYS.contains(&key.as_str()) {
                return Err(ParseError::syntax(
                    self.pos(),
                    format!("unknown clause '{key}'"),
                ));
            }
            self.at += 1;
            let a = self.int()?;
            let value = if self.is_sym("..") {
                self.at += 1;
                ClauseValue::Range(a, self.int()?)
            } else {
                ClauseValue::Int(a)
            };
            clauses.push(Clause { key, value });
        }
        self.expect_sym(";")?;
        Ok(Command {
            verb,
            head,
            args,
            clauses,
        })
    }
}

/// Syntax only; see [`crate::check`] for name and context resolution.
pub fn parse_syntax(text: &str) -> Result<Session, ParseError> {
    let toks = lex(text)?;
    let end = Pos {
        line: text.lines().count().max(1),
        col: text.lines().last().map_or(1, |l| l.chars().count() + 1),
    };
    let mut p = Parser { toks, at: 0, end };
    let mut items = Vec::new();
    while p.peek().is_some() {
        let pos = p.pos();
        let kw = p.ident()?;
        let node = match kw.as_str() {
            "ring" | "ideal" | "module" | "graded" | "int" => Node::Decl(p.decl(&kw)?),
            "compute" => Node::Command(p.command(Verb::Compute)?),
            "check" => Node::Command(p.command(Verb::Check)?),
            other => {
                return Err(ParseError::syntax(
                    pos,
                    format!("expected a declaration or command, found '{other}'"),
                ))
            }
        };
        items.push(Item { node, pos });
    }
    Ok(Session { items })
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for PolyText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn matrix_text(m: &[Vec<PolyText>]) -> String {
    format!(
        "[{}]",
        m.iter()
            .map(|r| format!("[{}]", join(r)))
            .collect::<Vec<_>>()
            .join(", ")
    )
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Name(n) => write!(f, "{n}"),
            ModuleExpr::Coker(m) => write!(f, "coker {}", matrix_text(m)),
            ModuleExpr::Quotient { ring, ideal } => write!(f, "quotient({ring}, {ideal})"),
            ModuleExpr::Free { ring, rank } => write!(f, "free({ring}, {rank})"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Ident(s) => write!(f, "{s}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Module(m) => write!(f, "{m}"),
            Value::List(v) => write!(f, "[{}]", join(v)),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}={}", self.value),
            None => write!(f, "{}", self.value),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            ClauseValue::Int(n) => write!(f, "{} {n}", self.key),
            ClauseValue::Range(a, b) => write!(f, "{} {a}..{b}", self.key),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = if self.verb == Verb::Compute {
            "compute"
        } else {
            "check"
        };
        write!(f, "{verb} {}({})", self.head_text(), join(&self.args))?;
        for c in &self.clauses {
            write!(f, " {c}")?;
        }
        write!(f, ";")
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Ring { name, field, vars } => {
                let fs = match field {
                    FieldSpec::Zp(p) => format!("zp({p})"),
                    FieldSpec::Qq => "qq".into(),
                };
                write!(f, "ring {name} = {fs}[{}];", vars.join(", "))
            }
            Decl::Ideal { name, gens } => write!(f, "ideal {name} = {};", join(gens)),
            Decl::Module { name, def } => write!(f, "module {name} = {def};"),
            Decl::Graded {
                name,
                def: GradedDef::Rees { ideal, module },
            } => {
                write!(f, "graded {name} = rees({ideal}, {module});")
            }
            Decl::Graded {
                name,
                def:
                    GradedDef::Custom {
                        vars,
                        degrees,
                        matrix,
                        algebra,
                    },
            } => write!(
                f,
                "graded {name} = custom [{}] degrees [{}] matrix {} algebra [{}];",
                vars.join(", "),
                join(degrees),
                matrix_text(matrix),
                join(algebra)
            ),
            Decl::Int { name, value } => write!(f, "int {name} = {value};"),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Decl(d) => write!(f, "{d}"),
            Node::Command(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{}", item.node)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_ranges_and_negatives() {
        let toks: Vec<Tok> = lex("range 0..12 k=-1")
            .unwrap()
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        assert_eq!(
            toks,
            vec![
                Tok::Ident("range".into()),
                Tok::Int(0),
                Tok::Sym(".."),
                Tok::Int(12),
                Tok::Ident("k".into()),
                Tok::Sym("="),
                Tok::Sym("-"),
                Tok::Int(1)
            ]
        );
    }

    #[test]
    fn parses_the_three_node_session() {
        let s = parse_syntax(
            "ring S = zp(32003)[x,y]; ideal I = x^2, x*y; compute assprimes quotient(S, I);",
        )
        .unwrap();
        assert_eq!(s.items.len(), 3);
        let Node::Command(c) = &s.items[2].node else {
            panic!()
        };
        assert_eq!(c.head, vec!["assprimes"]);
        assert_eq!(
            c.args[0].value,
            Value::Module(ModuleExpr::Quotient {
                ring: "S".into(),
                ideal: "I".into()
            })
        );
    }

    #[test]
    fn negative_integer_argument() {
        let s = parse_syntax("compute depthk(I, S, -1);").unwrap();
        let Node::Command(c) = &s.items[0].node else {
            panic!()
        };
        assert_eq!(c.args[2].value, Value::Int(-1));
    }

    #[test]
    fn polynomials_are_normalized() {
        let s = parse_syntax("ideal I = x^2+3*x*y -y, -x;").unwrap();
        let Node::Decl(Decl::Ideal { gens, .. }) = &s.items[0].node else {
            panic!()
        };
        assert_eq!(
            gens,
            &vec![PolyText("x^2 + 3*x*y - y".into()), PolyText("-x".into())]
        );
    }

    #[test]
    fn positions_are_reported() {
        let e = parse_syntax("ring S = zp(7)[x];\nideal I = x,;").unwrap_err();
        assert_eq!(
            (e.kind, e.pos),
            (ParseErrorKind::Syntax, Pos { line: 2, col: 13 })
        );
        let e = parse_syntax("compute frobnicate(I);").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 9 });
    }

    #[test]
    fn printing_round_trips() {
        let text =
            "ring S = zp(32003)[x, y];\nideal I = x^2, x*y;\nmodule M = coker [[x, y], [0, x]];\n\
                    graded G = custom [u] degrees [0] matrix [[x*u]] algebra [];\n\
                    compute stabilize asslch(I, S, G, k=0, l=1) range 0..10 window 3;\n\
                    check oracle asslch vs ext(I, M, -1, 1) t 1..3;\n";
        let s = parse_syntax(text).unwrap();
        assert_eq!(parse_syntax(&s.to_string()).unwrap(), s);
    }
}
