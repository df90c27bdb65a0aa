//! Report rendering (JSON, CSV) and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::{Check, CliError, Format, RunConfig};

#[derive(Clone, Debug, Serialize)]
pub struct Report<'a> {
    pub suite: &'a str,
    pub checks: &'a [Check],
    pub config: &'a RunConfig,
}

/// One table cell. Numbers serialise as shortest round-trip decimals.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Flag(bool),
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct TableDoc<'a> {
    command: &'a str,
    columns: &'a [String],
    rows: &'a [Vec<Cell>],
    config: &'a RunConfig,
}

/// Shortest decimal that parses back to the same f64.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        ryu::Buffer::new().format_finite(v).to_string()
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Format(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn to_csv(columns: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Format(e.to_string());
    w.write_record(columns).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Format(e.to_string()))
}

pub fn render_report(report: &Report<'_>, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let columns: Vec<String> = ["name", "measured", "tolerance", "pass"].map(String::from).to_vec();
            to_csv(
                &columns,
                report.checks.iter().map(|c| {
                    vec![
                        c.name.clone(),
                        format_float(c.measured),
                        format_float(c.tolerance),
                        c.pass.to_string(),
                    ]
                }),
            )
        }
    }
}

pub fn render_table(table: &Table, cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => to_json(&TableDoc {
            command: &cfg.command,
            columns: &table.columns,
            rows: &table.rows,
            config: cfg,
        }),
        Format::Csv => to_csv(
            &table.columns,
            table.rows.iter().map(|r| r.iter().map(Cell::csv_text).collect()),
        ),
    }
}

/// Writes to stdout, or to `out` through a temporary file in the same
/// directory that is renamed into place only once fully written.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0, 1e-300, -2.5e17, std::f64::consts::PI] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_float(0.1), "0.1");
    }

    #[test]
    fn csv_uses_lf_and_header() {
        let t = Table {
            columns: vec!["r".into(), "e1e3_re".into()],
            rows: vec![vec![Cell::Num(0.5), Cell::Num(-1.0)]],
        };
        let cfg = RunConfig {
            format: Format::Csv,
            ..RunConfig::new("eval", 2, 2)
        };
        let text = render_table(&t, &cfg).unwrap();
        assert_eq!(text, "r,e1e3_re\n0.5,-1.0\n");
    }

    #[test]
    fn json_key_order_is_stable() {
        let cfg = RunConfig::new("verify", 2, 2);
        let checks = [Check::at_most("x", 0.0, 1.0)];
        let text = render_report(&Report { suite: "algebra", checks: &checks, config: &cfg }, Format::Json).unwrap();
        let suite = text.find("\"suite\"").unwrap();
        let checks_at = text.find("\"checks\"").unwrap();
        let config = text.find("\"config\"").unwrap();
        assert!(suite < checks_at && checks_at < config);
        let name = text.find("\"name\"").unwrap();
        let pass = text.find("\"pass\"").unwrap();
        assert!(name < pass);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        emit("first\n", Some(&path)).unwrap();
        emit("second\n", Some(&path)).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
