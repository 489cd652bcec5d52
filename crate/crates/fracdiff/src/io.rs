//! CSV in and out.
//!
//! Numbers are written in scientific notation with 17 significant digits,
//! which round-trips every f64. Rust's float formatting ignores the locale,
//! and rows end in a bare `\n`.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use fracdiff_core::solver::SampledField;

use crate::error::{CliError, CliResult};

/// Relative tolerance on node positions when checking that a grid is uniform.
const UNIFORM_TOL: f64 = 1e-9;

/// Format a number with 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// An optional number; empty when absent.
pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// Read a field from CSV with header `x,value`.
///
/// Malformed rows are usage errors that name the line. A grid that is not
/// uniform and increasing is a grid error.
pub fn read_field(path: &Path) -> CliResult<SampledField> {
    let file = File::open(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_field(file).map_err(|e| e.context(path.display()))
}

/// [`read_field`] on any reader.
pub fn parse_field(input: impl Read) -> CliResult<SampledField> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "value" {
        return Err(CliError::usage("line 1: expected header `x,value`"));
    }
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::usage(format!("line {line}: {e}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| -> CliResult<f64> {
            let raw = record.get(i).unwrap_or("");
            let v: f64 = raw.parse().map_err(|_| CliError::usage(format!("line {line}: {name} `{raw}` is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::usage(format!("line {line}: {name} must be finite")))
            }
        };
        if record.len() != 2 {
            return Err(CliError::usage(format!("line {line}: expected 2 fields, found {}", record.len())));
        }
        xs.push(field(0, "x")?);
        values.push(field(1, "value")?);
    }
    if xs.len() < 2 {
        return Err(CliError::grid(format!("need at least two grid points, found {}", xs.len())));
    }
    let n = xs.len();
    let dx = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    if dx <= 0.0 {
        return Err(CliError::grid("x must increase"));
    }
    for (i, &x) in xs.iter().enumerate() {
        if (x - (xs[0] + dx * i as f64)).abs() > UNIFORM_TOL * dx.max(xs[0].abs().max(xs[n - 1].abs())) {
            return Err(CliError::grid(format!("row {} (x = {x}): grid is not uniform", i + 1)));
        }
    }
    Ok(SampledField::new(xs[0], dx, values)?)
}

/// Destination of CSV output: a file or stdout.
pub fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Write a header and rows of pre-formatted fields.
pub fn write_csv(out: impl Write, header: &[&str], rows: &[Vec<String>]) -> CliResult<usize> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(rows.len())
}

/// Write a field as `x,<column>`.
pub fn write_field(out: impl Write, column: &str, field: &SampledField) -> CliResult<usize> {
    let rows: Vec<Vec<String>> = field.xs().zip(field.values()).map(|(x, &v)| vec![num(x), num(v)]).collect();
    write_csv(out, &["x", column], &rows)
}
