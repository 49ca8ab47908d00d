//! The `gnpforge` command line: argument parsing, configuration, caching and
//! JSON/CSV reports around the `gnpforge-core` library.

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use gnpforge_core::{Error, Result};
use serde_json::Value;

use args::{Cli, Command, Format};
use cache::Entry;
use config::RunConfig;
use report::{error_body, timestamp, write_csv, write_json, ErrorBody, ErrorReport, Report, Table};

/// Parses `argv`, runs the command and writes the report to `out` and a short
/// summary to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return usage_error(e, out, err),
    };
    let command_echo = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
    let config = match RunConfig::resolve(&cli) {
        Ok(c) => c,
        Err(e) => return fail(command_echo, None, &e, out, err),
    };
    match produce(&cli.command, &config, err) {
        Ok(entry) => emit(&cli.command, command_echo, config, entry, out, err),
        Err(e) => fail(command_echo, Some(config), &e, out, err),
    }
}

fn usage_error(e: clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
        let _ = write!(out, "{}", e.render());
        return report::EXIT_OK;
    }
    let _ = write!(err, "{}", e.render());
    let doc = ErrorReport {
        command: Value::Null,
        config: None,
        timestamp: timestamp(),
        error: ErrorBody { kind: "usage", message: e.kind().to_string(), exit_code: report::EXIT_INVALID },
    };
    let _ = write_json(out, &doc);
    report::EXIT_INVALID
}

fn fail(command: Value, config: Option<RunConfig>, e: &Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let body = error_body(e);
    let code = body.exit_code;
    let _ = writeln!(err, "error: {e}");
    let doc = ErrorReport { command, config, timestamp: timestamp(), error: body };
    let _ = write_json(out, &doc);
    code
}

fn produce(command: &Command, config: &RunConfig, err: &mut dyn Write) -> Result<Entry> {
    let key = cache::key(command, config);
    if let Some(dir) = &config.cache_dir {
        if let Some(hit) = cache::load(dir, &key) {
            let _ = writeln!(err, "cache hit {key}");
            return Ok(hit);
        }
        let _ = writeln!(err, "cache miss {key}");
    }
    let entry = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(|| commands::execute(command, config))?,
        None => commands::execute(command, config)?,
    };
    if let Some(dir) = &config.cache_dir {
        if let Err(e) = cache::store(dir, &key, &entry) {
            let _ = writeln!(err, "warning: cannot write cache: {e}");
        }
    }
    Ok(entry)
}

fn emit(command: &Command, echo: Value, config: RunConfig, entry: Entry, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let code = if entry.findings.is_empty() { report::EXIT_OK } else { report::EXIT_FINDINGS };
    let _ = writeln!(err, "{}", summary(command, &entry.payload));
    for w in &entry.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    for f in &entry.findings {
        let _ = writeln!(err, "finding: {f}");
    }
    let table = (config.format == Format::Csv).then(|| table(command, &entry.payload)).flatten();
    if config.format == Format::Csv && table.is_none() {
        let _ = writeln!(err, "{} has no tabular form; writing JSON", command.name());
    }
    let written = match table {
        Some(t) => write_csv(out, &t),
        None => {
            let doc = Report {
                command: echo,
                config,
                timestamp: timestamp(),
                payload: entry.payload,
                findings: entry.findings,
                warnings: entry.warnings,
            };
            write_json(out, &doc)
        }
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return report::EXIT_INVALID;
    }
    code
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn vertex_text(v: &Value) -> String {
    match v.as_array() {
        Some(a) if a.len() == 2 => format!("({}, {})", text(&a[0]), text(&a[1])),
        _ => "none".into(),
    }
}

/// CSV rows for the commands with tabular payloads.
pub fn table(command: &Command, payload: &Value) -> Option<Table> {
    let rows = |key: &str| payload.get(key).and_then(Value::as_array).cloned().unwrap_or_default();
    match command {
        Command::Density { .. } => {
            let argmins: Vec<u64> = rows("argmins").iter().filter_map(Value::as_u64).collect();
            Some(Table {
                header: vec!["n", "min_weight", "minimal"],
                rows: rows("table")
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let n = i as u64 + 1;
                        vec![n.to_string(), text(s), argmins.contains(&n).to_string()]
                    })
                    .collect(),
            })
        }
        Command::Verify { .. } => Some(Table {
            header: vec!["first_vertex_x", "first_vertex_y", "hasse_nonzero", "count"],
            rows: rows("strata")
                .iter()
                .map(|s| {
                    let v = s["first_vertex"].as_array().cloned().unwrap_or_default();
                    vec![
                        v.first().map(text).unwrap_or_default(),
                        v.get(1).map(text).unwrap_or_default(),
                        text(&s["hasse_nonzero"]),
                        text(&s["count"]),
                    ]
                })
                .collect(),
        }),
        Command::ScanSs { .. } => Some(Table {
            header: vec!["first_slope", "count"],
            rows: rows("slopes").iter().map(|s| vec![text(&s["slope"]), text(&s["count"])]).collect(),
        }),
        _ => None,
    }
}

fn summary(command: &Command, payload: &Value) -> String {
    let name = command.name();
    match command {
        Command::Density { .. } => {
            format!("{name}: delta = {}, minimal lengths {}", text(&payload["delta"]), payload["argmins"])
        }
        Command::Minimal { length: Some(n), .. } => format!(
            "{name}: {} witnesses of length {n} and weight {}",
            payload["witnesses"].as_array().map_or(0, Vec::len),
            payload["min_weight"]
        ),
        Command::Minimal { .. } => format!(
            "{name}: {} orbits, Sigma = {}, N = {}",
            payload["orbits"].as_array().map_or(0, Vec::len),
            payload["sigma"],
            payload["N"]
        ),
        Command::Predict { .. } => format!(
            "{name}: {}, vertex {}, H = {}",
            text(&payload["status"]),
            vertex_text(&payload["vertex"]),
            payload["hasse"].get("text").map_or("none".into(), text)
        ),
        Command::Oracle { .. } => format!(
            "{name}: first vertex {}, {} coefficients",
            vertex_text(&payload["first_vertex"]),
            payload["l_coeffs"].as_array().map_or(0, Vec::len)
        ),
        Command::Verify { .. } => format!(
            "{name}: {} polynomials, {} mismatches",
            payload["polynomials"], payload["mismatch_count"]
        ),
        Command::ScanSs { .. } => format!(
            "{name}: {} polynomials, {} supersingular, {} off the expected first slope {}",
            payload["polynomials"],
            payload["supersingular"],
            payload["off_prediction"],
            text(&payload["expected_first_slope"])
        ),
        Command::DworkCheck { .. } => format!(
            "{name}: det residue {} against H = {}, {} cyclic minors, {} subsets",
            payload["minor"]["det_residue"],
            payload["minor"]["hasse_value"],
            payload["cyclic"].as_array().map_or(0, Vec::len),
            payload["subsets"].as_array().map_or(0, Vec::len)
        ),
    }
}
