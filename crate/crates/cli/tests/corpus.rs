use std::path::{Path, PathBuf};

use lcass::report::{run_session, EXIT_DOMAIN, EXIT_FIELD, EXIT_PARSE};
use lcass::{parse_session, Format, Settings};

fn corpus_files(sub: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(sub);
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "lch"))
        .collect();
    files.sort();
    files
}

fn all_files() -> Vec<PathBuf> {
    let mut v = corpus_files("");
    v.extend(corpus_files("errors"));
    v
}

/// Set `LCASS_BLESS=1` to rewrite the golden files.
#[test]
fn golden_reports() {
    let bless = std::env::var("LCASS_BLESS").is_ok_and(|v| v == "1");
    let mut stale = Vec::new();
    for f in all_files() {
        let text = std::fs::read_to_string(&f).unwrap();
        let out = run_session(&text, &Settings::default()).render(Format::Json);
        let golden = f.with_extension("golden.json");
        if bless {
            std::fs::write(&golden, &out).unwrap();
            continue;
        }
        match std::fs::read_to_string(&golden) {
            Ok(g) if g == out => {}
            _ => stale.push(f.display().to_string()),
        }
    }
    assert!(
        stale.is_empty(),
        "reports differ from golden files: {stale:?}"
    );
}

#[test]
fn printing_round_trips_on_the_corpus() {
    for f in all_files() {
        let text = std::fs::read_to_string(&f).unwrap();
        let Ok(s) = parse_session(&text) else {
            continue;
        };
        let printed = s.to_string();
        assert_eq!(parse_session(&printed).unwrap(), s, "{}", f.display());
        assert_eq!(parse_session(&printed).unwrap().to_string(), printed);
    }
}

#[test]
fn every_error_kind_is_reached() {
    let mut seen = Vec::new();
    for f in corpus_files("errors") {
        let text = std::fs::read_to_string(&f).unwrap();
        let expect = text
            .lines()
            .find_map(|l| l.strip_prefix("# expect: "))
            .unwrap_or_else(|| panic!("{} has no expectation", f.display()))
            .trim()
            .to_string();
        let run = run_session(&text, &Settings::default());
        let kinds: Vec<&str> = run
            .report
            .get("parse_error")
            .into_iter()
            .chain(
                run.report["results"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .filter_map(|r| r.get("error")),
            )
            .filter_map(|e| e["kind"].as_str())
            .collect();
        assert_eq!(kinds, [expect.as_str()], "{}", f.display());
        let code = match expect.as_str() {
            "syntax-error" | "undeclared-name" | "context-mismatch" | "malformed-input" => {
                EXIT_PARSE
            }
            "unsupported-field" => EXIT_FIELD,
            _ => EXIT_DOMAIN,
        };
        assert_eq!(run.exit_code, code, "{}", f.display());
        seen.push(expect);
    }
    seen.sort();
    let documented = [
        "context-mismatch",
        "exceeds-depth",
        "field-too-small",
        "inconclusive",
        "malformed-input",
        "no-avoider",
        "no-top",
        "not-a-sequence",
        "not-homogeneous",
        "not-in-maximal-ideal",
        "not-local",
        "syntax-error",
        "too-many-permutations",
        "undeclared-name",
        "unsupported-field",
    ];
    assert_eq!(seen, documented);
}

#[test]
fn positive_corpus_runs_cleanly() {
    for f in corpus_files("") {
        let run = run_session(&std::fs::read_to_string(&f).unwrap(), &Settings::default());
        assert_eq!(run.exit_code, 0, "{}", f.display());
    }
}

#[test]
fn parse_errors_carry_positions() {
    let run = run_session(
        "ring S = zp(32003)[x, y];\nideal I = x +;\n",
        &Settings::default(),
    );
    let e = &run.report["parse_error"];
    assert_eq!(e["kind"], "syntax-error");
    assert_eq!(e["line"], 2);
}

#[test]
fn failing_nodes_do_not_stop_the_session() {
    let text = "ring S = zp(32003)[x, y];\nideal M = x, y;\ncompute asslch(M, S, S, -1, 3);\ncompute depthk(M, S, -1);\n";
    let run = run_session(text, &Settings::default());
    let results = run.report["results"].as_array().unwrap();
    assert_eq!(results[2]["status"], "error");
    assert_eq!(results[3]["status"], "ok");
    assert_eq!(results[3]["result"]["depth"], 2);
    assert_eq!(run.exit_code, EXIT_DOMAIN);
}

#[test]
fn seed_changes_witnesses_not_sets() {
    let text =
        "ring S = zp(32003)[x, y, z];\nideal I = x, y;\nmodule N = coker [[x, y, 0], [0, x, z]];\n\
                compute asslch(I, S, N, -1, 1);\n";
    let a = run_session(text, &Settings::default());
    let b = run_session(
        text,
        &Settings {
            seed: 4242,
            ..Settings::default()
        },
    );
    let ra = &a.report["results"][3]["result"];
    let rb = &b.report["results"][3]["result"];
    assert_eq!(ra["union"], rb["union"]);
    assert_eq!(ra["depth"], rb["depth"]);
}

#[test]
fn text_format_lists_every_node() {
    let text =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/session.lch"))
            .unwrap();
    let out = run_session(&text, &Settings::default()).render(Format::Text);
    assert!(
        out.contains("[2] line 1: compute assprimes(quotient(S, I));"),
        "{out}"
    );
    assert!(out.contains("primes: [(x), (x, y)]"), "{out}");
    assert!(out.contains("depth: 1"), "{out}");
}
