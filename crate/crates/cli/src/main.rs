use std::io::Read;
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};
use serde_json::json;

use lcass::report::{run_session_with, RunOutcome, EXIT_PARSE, EXIT_TIMEOUT, TOOL, VERSION};
use lcass::{parse_session, Format, Settings};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Run an `.lch` session and emit a report.
#[derive(Parser, Debug)]
#[command(name = "lcass", version)]
struct Cli {
    /// Session file, or `-` for standard input.
    input: PathBuf,
    #[arg(long, env = "LCASS_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, env = "LCASS_FORMAT", value_enum, default_value = "json")]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long, env = "LCASS_OUT")]
    out: Option<PathBuf>,
    /// Stabilization window length.
    #[arg(long, env = "LCASS_WINDOW", default_value_t = 3)]
    window: usize,
    /// Sampled degrees for graded families, inclusive `lo..hi`.
    #[arg(long, env = "LCASS_RANGE", default_value = "0..12", value_parser = parse_range::<usize>)]
    range: (usize, usize),
    /// Powers `t` used by the Ext oracle, inclusive `lo..hi`.
    #[arg(long, env = "LCASS_T_RANGE", default_value = "1..3", value_parser = parse_range::<u32>)]
    t_range: (u32, u32),
    /// Exponents for generator-power ideals in the Ext oracle, inclusive `lo..hi`.
    #[arg(long, env = "LCASS_EXPS_RANGE", default_value = "1..2", value_parser = parse_range::<u32>)]
    exps_range: (u32, u32),
    /// Abort after this many seconds, reporting the nodes finished so far.
    #[arg(long, env = "LCASS_TIMEOUT_SECS")]
    timeout_secs: Option<u64>,
    /// Print the canonical form of the session and exit.
    #[arg(long)]
    print: bool,
    /// Per-node wall-times on standard error.
    #[arg(long, env = "LCASS_TIMINGS")]
    timings: bool,
}

fn parse_range<T: std::str::FromStr + PartialOrd + Copy>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {s}"))?;
    let lo: T = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound {a}"))?;
    let hi: T = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound {b}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn emit(cli: &Cli, text: &str) {
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("lcass: cannot write {}: {e}", p.display());
                std::process::exit(1);
            }
        }
        None => print!("{text}"),
    }
}

fn main() {
    let cli = Cli::parse();
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("lcass: cannot read {}: {e}", cli.input.display());
            std::process::exit(1);
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    if cli.print {
        match parse_session(&text) {
            Ok(s) => emit(&cli, &s.to_string()),
            Err(e) => {
                eprintln!("lcass: {} at {}: {}", e.kind.name(), e.pos, e.message);
                std::process::exit(EXIT_PARSE);
            }
        }
        return;
    }
    let settings = Settings {
        seed: cli.seed,
        window: cli.window,
        range: cli.range,
        t_range: cli.t_range,
        exps_range: cli.exps_range,
    };

    let (entry_tx, entry_rx) = mpsc::channel();
    let (done_tx, done_rx) = mpsc::channel();
    let worker_text = text.clone();
    let worker_settings = settings.clone();
    let timings = cli.timings;
    std::thread::spawn(move || {
        let mut last = Instant::now();
        let outcome = run_session_with(&worker_text, &worker_settings, |entry| {
            if timings {
                eprintln!(
                    "[{}] {:.3}s {}",
                    entry["index"],
                    last.elapsed().as_secs_f64(),
                    entry["node"].as_str().unwrap_or("")
                );
                last = Instant::now();
            }
            let _ = entry_tx.send(entry.clone());
        });
        let _ = done_tx.send(outcome);
    });

    let outcome = match cli.timeout_secs {
        None => done_rx.recv().expect("worker finished"),
        Some(secs) => match done_rx.recv_timeout(Duration::from_secs(secs)) {
            Ok(o) => o,
            Err(_) => {
                let results: Vec<_> = entry_rx.try_iter().collect();
                let report = json!({
                    "tool": TOOL,
                    "version": VERSION,
                    "seed": settings.seed,
                    "settings": settings.to_json(),
                    "timeout_secs": secs,
                    "timed_out": true,
                    "results": results,
                });
                RunOutcome {
                    report,
                    exit_code: EXIT_TIMEOUT,
                }
            }
        },
    };
    emit(&cli, &outcome.render(format));
    std::process::exit(outcome.exit_code);
}
