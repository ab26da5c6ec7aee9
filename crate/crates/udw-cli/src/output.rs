//! Output writers: CSV with a '#'-prefixed provenance header carrying the
//! full resolved scenario, and a JSON result envelope embedding the same.
//! Floats are written with Rust's shortest round-trip formatting, so files
//! are bit-comparable across runs.

use crate::scenario::Scenario;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// RFC 4180 quoting; numeric fields pass through untouched.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// '#'-prefixed provenance block with the resolved scenario.
pub fn provenance_block(scenario: &Scenario) -> String {
    let mut out = String::from("# udw scenario (resolved)\n");
    for line in scenario.to_toml().lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

pub fn write_csv(
    path: &Path,
    scenario: &Scenario,
    header: &str,
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(provenance_block(scenario).as_bytes())?;
    writeln!(f, "{header}")?;
    for row in rows {
        let quoted: Vec<String> = row.iter().map(|s| csv_field(s)).collect();
        writeln!(f, "{}", quoted.join(","))?;
    }
    Ok(())
}

/// JSON envelope: `{ "scenario": ..., "result": ... }`.
pub fn write_json<T: Serialize>(
    path: &Path,
    scenario: &Scenario,
    result: &T,
) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        scenario: &'a Scenario,
        result: &'a T,
    }
    let text = serde_json::to_string_pretty(&Envelope { scenario, result })
        .expect("results serialise to JSON");
    std::fs::write(path, text + "\n")
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
