//! Parsers for the textual arguments: exact decimals, complex literals,
//! residue classes and depth pairs.

use num_complex::Complex64;
use qgenocchi::exactalg::parse_exact;
use qgenocchi::fermint::DepthConfig;
use qgenocchi::qzeta::PartialSpec;
use qgenocchi::Rational;

/// Decimal or fraction text as an exact rational: `0.5` is `1/2`.
pub fn parse_decimal(name: &str, text: &str) -> Result<Rational, String> {
    parse_exact(text.trim()).ok_or_else(|| {
        format!("--{name}: expected a decimal like 0.5 or a fraction like 1/2, got {text:?}")
    })
}

fn parse_real(text: &str) -> Option<f64> {
    let t = text.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Complex literal `a+bi`, `a-bi`, `a`, `bi` or `i` with decimal parts.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let err = || format!("--s: expected a complex literal like 2+3i, got {text:?}");
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return parse_real(&t)
            .map(|re| Complex64::new(re, 0.0))
            .ok_or_else(err);
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .last()
        .map(|(i, _)| i);
    let (re_text, im_text) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im_text {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        other => parse_real(other),
    };
    match (parse_real(re_text), im) {
        (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
        _ => Err(err()),
    }
}

fn parse_pair(name: &str, text: &str) -> Result<(u64, u64), String> {
    let err = || format!("--{name}: expected two nonnegative integers \"a,b\", got {text:?}");
    let (a, b) = text.split_once(',').ok_or_else(err)?;
    let a = a.trim().parse().map_err(|_| err())?;
    let b = b.trim().parse().map_err(|_| err())?;
    Ok((a, b))
}

pub fn parse_partial(text: &str) -> Result<PartialSpec, String> {
    let (a, f) = parse_pair("partial", text)?;
    PartialSpec::new(a, f).map_err(|e| format!("--partial: {e}"))
}

pub fn parse_depth(text: &str) -> Result<DepthConfig, String> {
    let (p, n) = parse_pair("depth", text)?;
    let n = u32::try_from(n).map_err(|_| format!("--depth: exponent {n} is too large"))?;
    DepthConfig::new(p, n).map_err(|e| format!("--depth: {e}"))
}
