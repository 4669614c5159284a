//! Number formatting and the three output formats.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use qgenocchi::exactalg::CanonicalParts;
use qgenocchi::Rational;
use serde_json::{json, Number, Value};

use crate::args::Format;

/// Fixed-point rendering of an exact rational with `digits` fractional
/// digits, rounded half away from zero.
pub fn fixed(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = r * Rational::from_integer(scale);
    let magnitude = scaled.abs();
    let mut units = magnitude.floor().to_integer();
    if (magnitude - Rational::from_integer(units.clone())) * BigInt::from(2)
        >= Rational::from_integer(1.into())
    {
        units += 1;
    }
    let text = format!(
        "{:0>width$}",
        units.to_string(),
        width = digits as usize + 1
    );
    let (int, frac) = text.split_at(text.len() - digits as usize);
    let sign = if r.is_negative() && !units.is_zero() {
        "-"
    } else {
        ""
    };
    format!("{sign}{int}.{frac}")
}

/// Fixed-point rendering of a float through its exact binary value.
pub fn fixed_f64(v: f64, digits: u32) -> String {
    match Rational::from_float(v) {
        Some(r) => fixed(&r, digits),
        None => v.to_string(),
    }
}

/// Error bounds and residuals: three significant digits, scientific.
pub fn sci(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.3e}")
    }
}

pub fn big_number(n: &BigInt) -> Value {
    Value::Number(
        n.to_string()
            .parse::<Number>()
            .expect("integer literal is valid JSON"),
    )
}

pub fn canonical_json(parts: &CanonicalParts) -> Value {
    json!({
        "num": parts.num.iter().map(big_number).collect::<Vec<_>>(),
        "den": parts.den.iter().map(big_number).collect::<Vec<_>>(),
        "scale": parts.scale_text(),
    })
}

/// One command's result in all three renderings.
pub struct Output {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub pretty: String,
}

pub fn render(out: &Output, format: Format) -> Result<String, String> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&out.json).map_err(|e| e.to_string())?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.header).map_err(|e| e.to_string())?;
            for row in &out.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
        Format::Pretty => Ok(out.pretty.clone()),
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut text = line(header.to_vec());
    for row in rows {
        text += &line(row.iter().map(String::as_str).collect());
    }
    text
}
