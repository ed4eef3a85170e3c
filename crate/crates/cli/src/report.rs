//! Running a session and serializing the results.

use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};

use lcass_core::Error;

use crate::check::parse_session;
use crate::eval::{Env, Settings};
use crate::syntax::{Node, ParseError};

pub const TOOL: &str = "lcass";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_FIELD: i32 = 4;
pub const EXIT_TIMEOUT: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Exit code for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedField(_) => EXIT_FIELD,
        Error::MalformedInput(_) | Error::ContextMismatch(_) => EXIT_PARSE,
        _ => EXIT_DOMAIN,
    }
}

/// Stable kebab-case name of an engine error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::MalformedInput(_) => "malformed-input",
        Error::ContextMismatch(_) => "context-mismatch",
        Error::UnsupportedField(_) => "unsupported-field",
        Error::NotInMaximalIdeal(_) => "not-in-maximal-ideal",
        Error::NotLocal(_) => "not-local",
        Error::NoAvoider(_) => "no-avoider",
        Error::FieldTooSmall => "field-too-small",
        Error::ExceedsDepth { .. } => "exceeds-depth",
        Error::NoTop => "no-top",
        Error::NotASequence { .. } => "not-a-sequence",
        Error::TooManyPermutations(_) => "too-many-permutations",
        Error::Inconclusive(_) => "inconclusive",
        Error::NotHomogeneous(_) => "not-homogeneous",
    }
}

fn sha256(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// The report document and the process exit code.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: Json,
    pub exit_code: i32,
}

impl RunOutcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => render_text(&self.report),
        }
    }
}

fn parse_failure(text: &str, e: &ParseError, settings: &Settings) -> RunOutcome {
    let report = json!({
        "tool": TOOL,
        "version": VERSION,
        "seed": settings.seed,
        "input_sha256": sha256(text),
        "settings": settings.to_json(),
        "parse_error": {
            "kind": e.kind.name(),
            "line": e.pos.line,
            "col": e.pos.col,
            "message": e.message,
            "exit_code": EXIT_PARSE,
        },
        "results": [],
    });
    RunOutcome {
        report,
        exit_code: EXIT_PARSE,
    }
}

/// Parses and runs `text`. Every node is attempted; a failing node records its
/// error and the run continues. The exit code is that of the first failure.
///
/// `on_entry` sees each entry as soon as it is produced.
pub fn run_session_with(
    text: &str,
    settings: &Settings,
    mut on_entry: impl FnMut(&Json),
) -> RunOutcome {
    let session = match parse_session(text) {
        Ok(s) => s,
        Err(e) => return parse_failure(text, &e, settings),
    };
    let mut env = Env::default();
    let mut results = Vec::new();
    let mut code = EXIT_OK;
    for (index, item) in session.items.iter().enumerate() {
        let printed = item.node.to_string();
        let outcome = match &item.node {
            Node::Decl(d) => env.declare(d).map(|()| json!({ "declared": d.name() })),
            Node::Command(c) => env.run(c, settings),
        };
        let mut entry = json!({
            "index": index,
            "line": item.pos.line,
            "node": printed,
            "node_sha256": sha256(&printed),
        });
        match outcome {
            Ok(result) => {
                entry["status"] = json!("ok");
                entry["result"] = result;
            }
            Err(e) => {
                let c = exit_code(&e);
                if code == EXIT_OK {
                    code = c;
                }
                entry["status"] = json!("error");
                entry["error"] =
                    json!({ "kind": error_kind(&e), "message": e.to_string(), "exit_code": c });
            }
        }
        on_entry(&entry);
        results.push(entry);
    }
    let report = json!({
        "tool": TOOL,
        "version": VERSION,
        "seed": settings.seed,
        "input_sha256": sha256(text),
        "settings": settings.to_json(),
        "results": results,
    });
    RunOutcome {
        report,
        exit_code: code,
    }
}

pub fn run_session(text: &str, settings: &Settings) -> RunOutcome {
    run_session_with(text, settings, |_| {})
}

fn scalar_text(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => "-".into(),
        Json::Array(xs) => format!(
            "[{}]",
            xs.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
        ),
        Json::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn text_value(out: &mut String, key: &str, v: &Json, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Json::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in m {
                text_value(out, k, x, indent + 2);
            }
        }
        Json::Array(xs) if xs.iter().any(|x| x.is_object()) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for x in xs {
                let Json::Object(m) = x else { continue };
                let row: Vec<String> = m
                    .iter()
                    .map(|(k, v)| format!("{k}={}", scalar_text(v)))
                    .collect();
                out.push_str(&format!("{pad}  | {}\n", row.join("  ")));
            }
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", scalar_text(v))),
    }
}

/// Human-readable rendering: one block per node, nested values indented and
/// lists of records shown as rows.
pub fn render_text(report: &Json) -> String {
    let mut out = format!(
        "{} {}  seed {}  input {}\n",
        report["tool"].as_str().unwrap_or(TOOL),
        report["version"].as_str().unwrap_or(VERSION),
        report["seed"],
        report["input_sha256"].as_str().unwrap_or("")
    );
    if let Some(e) = report.get("parse_error") {
        out.push_str(&format!(
            "{} at line {}, col {}: {}\n",
            e["kind"].as_str().unwrap_or(""),
            e["line"],
            e["col"],
            e["message"].as_str().unwrap_or("")
        ));
    }
    for entry in report["results"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "\n[{}] line {}: {}\n",
            entry["index"],
            entry["line"],
            entry["node"].as_str().unwrap_or("")
        ));
        if let Some(e) = entry.get("error") {
            out.push_str(&format!(
                "  error {}: {}\n",
                e["kind"].as_str().unwrap_or(""),
                e["message"].as_str().unwrap_or("")
            ));
        } else if let Some(Json::Object(m)) = entry.get("result") {
            for (k, v) in m {
                text_value(&mut out, k, v, 2);
            }
        }
    }
    out
}
