//! CSV encodings used by the harness. Reals are written with 17 significant
//! digits so that every value reads back bit-identically.

use super::{HarnessError, HarnessResult};
use crate::pareto::ObjectiveVector;
use std::fs;
use std::io::Write;
use std::path::Path;

/// `%.17g`-style formatting: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn format_real(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

pub(crate) fn create_parent(path: &Path) -> HarnessResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
        }
    }
    Ok(())
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> HarnessResult<()> {
    create_parent(path)?;
    let mut f = fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    f.write_all(bytes).map_err(|e| HarnessError::io(path, e))
}

pub(crate) fn read_file(path: &Path) -> HarnessResult<String> {
    fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))
}

fn table(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Front CSV: header `f1,f2[,..]`, one point per row.
pub fn encode_front(points: &[ObjectiveVector]) -> String {
    let m = points.first().map_or(2, |p| p.len());
    table(
        &numbered("f", m),
        points.iter().map(|p| p.iter().map(|&v| format_real(v)).collect()),
    )
}

/// Positions CSV: header `x1,..,xn`, one decision vector per row.
pub fn encode_positions(positions: &[Vec<f64>]) -> String {
    let n = positions.first().map_or(0, Vec::len);
    table(
        &numbered("x", n),
        positions.iter().map(|p| p.iter().map(|&v| format_real(v)).collect()),
    )
}

fn parse_numeric_table(text: &str, prefix: &str, source: &str) -> HarnessResult<Vec<Vec<f64>>> {
    let bad = |msg: String| HarnessError::Usage(format!("{source}: {msg}"));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let expected = numbered(prefix, header.len());
    if header.is_empty() || header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(bad(format!("expected header `{}`", expected.join(","))));
    }
    let mut rows = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let row = rec
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| bad(format!("row {}: `{f}`: {e}", line + 2))))
            .collect::<HarnessResult<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn decode_front(text: &str, source: &str) -> HarnessResult<Vec<ObjectiveVector>> {
    let rows = parse_numeric_table(text, "f", source)?;
    Ok(rows.into_iter().map(ObjectiveVector::new).collect())
}

pub fn decode_positions(text: &str, source: &str) -> HarnessResult<Vec<Vec<f64>>> {
    parse_numeric_table(text, "x", source)
}

pub fn write_front(path: &Path, points: &[ObjectiveVector]) -> HarnessResult<()> {
    write_file(path, encode_front(points).as_bytes())
}

pub fn read_front(path: &Path) -> HarnessResult<Vec<ObjectiveVector>> {
    decode_front(&read_file(path)?, &path.display().to_string())
}
