use std::ffi::OsString;
use std::fmt::Write as _;

use clap::Parser;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use qgenocchi::classical::{bernoulli, genocchi_via_recurrence, riemann_neg};
use qgenocchi::fermint::{depth_error_bound, fermionic_sum, DepthConfig};
use qgenocchi::numeric::hp;
use qgenocchi::qgenocchi::{
    qbracket, qgenocchi_eval_series, qgenocchi_poly_at, qgenocchi_poly_sym,
};
use qgenocchi::qzeta::{
    partial_zeta_q, reduction_rhs, zeta_q, zeta_q_partial_sum, PartialSpec, ZetaPoint,
};
use qgenocchi::verify::{run_suite, Measure, Suite, VerifyReport};
use qgenocchi::{Estimate, Rational, SeriesConfig};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Mode, OutputArgs, SuiteArg};
use crate::parse::{parse_complex, parse_decimal, parse_depth, parse_partial};
use crate::render::{align, canonical_json, fixed, fixed_f64, render, sci, Output};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub const MAX_TERMS_ENV: &str = "QGENOCCHI_MAX_TERMS";

/// A completed command: its output and whether its own checks passed.
struct Outcome {
    output: Output,
    failures: Vec<String>,
}

impl Outcome {
    fn ok(output: Output) -> Self {
        Outcome {
            output,
            failures: Vec::new(),
        }
    }
}

/// Parse `args`, run the command and write its output. Returns the process
/// exit code: 0 success, 1 verification failure, 2 usage or domain error.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match series_config(&cli.output).and_then(|cfg| dispatch(&cli, &cfg)) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let text = match render(&outcome.output, cli.output.format) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    match &cli.output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{text}"),
    }
    if outcome.failures.is_empty() {
        EXIT_OK
    } else {
        for f in &outcome.failures {
            eprintln!("FAILED {f}");
        }
        EXIT_FAILED
    }
}

/// `--tol` and `--max-terms`, with the environment variable acting as a
/// ceiling on whatever the flag or default gives.
fn series_config(out: &OutputArgs) -> Result<SeriesConfig, String> {
    let defaults = SeriesConfig::default();
    let mut max_terms = out.max_terms.unwrap_or(defaults.max_terms);
    if let Ok(text) = std::env::var(MAX_TERMS_ENV) {
        let ceiling: usize = text
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_TERMS_ENV} must be a positive integer, got {text:?}"))?;
        max_terms = max_terms.min(ceiling);
    }
    SeriesConfig::new(out.tol.unwrap_or(defaults.tol), max_terms).map_err(|e| e.to_string())
}

fn dispatch(cli: &Cli, cfg: &SeriesConfig) -> Result<Outcome, String> {
    let digits = cli.output.precision;
    match &cli.command {
        Command::Classical { nmax } => Ok(Outcome::ok(classical(*nmax, digits))),
        Command::Qpoly { n } => Ok(Outcome::ok(qpoly(*n))),
        Command::Eval {
            n,
            q,
            x,
            mode,
            depth,
        } => eval(*n, q, x, *mode, depth.as_deref(), cfg, digits),
        Command::Zeta {
            s,
            x,
            q,
            partial,
            cross_check,
        } => zeta(s, x, q, partial.as_deref(), *cross_check, cfg, digits),
        Command::Verify { suite } => Ok(verify(*suite, cfg)),
    }
}

fn classical(nmax: usize, digits: u32) -> Output {
    let header = vec![
        "n",
        "value_exact",
        "value_decimal",
        "bernoulli_exact",
        "bernoulli_decimal",
        "zeta_exact",
        "zeta_decimal",
    ];
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in 0..=nmax {
        let g = genocchi_via_recurrence(n);
        let b = bernoulli(n);
        let z = riemann_neg(n).ok();
        let z_exact = z.as_ref().map(|z| z.to_string()).unwrap_or_default();
        let z_decimal = z.as_ref().map(|z| fixed(z, digits)).unwrap_or_default();
        rows.push(vec![
            n.to_string(),
            g.to_string(),
            fixed(&g, digits),
            b.to_string(),
            fixed(&b, digits),
            z_exact.clone(),
            z_decimal.clone(),
        ]);
        json_rows.push(json!({
            "n": n,
            "genocchi": g.to_string(),
            "genocchi_decimal": fixed(&g, digits),
            "bernoulli": b.to_string(),
            "bernoulli_decimal": fixed(&b, digits),
            "zeta_one_minus_n": z.as_ref().map(|_| Value::String(z_exact)).unwrap_or(Value::Null),
            "zeta_one_minus_n_decimal": z.as_ref().map(|_| Value::String(z_decimal)).unwrap_or(Value::Null),
        }));
    }
    let pretty_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r[0].clone(), r[1].clone(), r[3].clone(), r[5].clone()])
        .collect();
    let pretty = align(&["n", "G_n", "B_n", "zeta(1-n)"], &pretty_rows);
    Output {
        json: json!({ "command": "classical", "nmax": nmax, "rows": json_rows }),
        header,
        rows,
        pretty,
    }
}

fn qpoly(n: usize) -> Output {
    let poly = qgenocchi_poly_sym(n).poly;
    let mut rows = Vec::new();
    let mut coefficients = Vec::new();
    let mut pretty = format!("G_{{{n},q}}(x)\n");
    for (power, c) in poly.coeffs().iter().enumerate() {
        let parts = c.canonical_parts();
        let list = |v: &[num_bigint::BigInt]| {
            v.iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        rows.push(vec![
            power.to_string(),
            c.to_string(),
            list(&parts.num),
            list(&parts.den),
            parts.scale_text(),
        ]);
        coefficients.push(
            json!({ "power": power, "value": c.to_string(), "canonical": canonical_json(&parts) }),
        );
        let _ = writeln!(pretty, "  x^{power}: {c}");
    }
    if poly.is_zero() {
        pretty.push_str("  0\n");
    }
    Output {
        json: json!({ "command": "qpoly", "n": n, "coefficients": coefficients }),
        header: vec!["power", "value_exact", "num", "den", "scale"],
        rows,
        pretty,
    }
}

struct ModeResult {
    mode: &'static str,
    exact: Option<Rational>,
    value: f64,
    bound: f64,
    terms: usize,
}

fn eval(
    n: usize,
    q_text: &str,
    x_text: &str,
    mode: Mode,
    depth: Option<&str>,
    cfg: &SeriesConfig,
    digits: u32,
) -> Result<Outcome, String> {
    let q = parse_decimal("q", q_text)?;
    let x = parse_decimal("x", x_text)?;
    if !(q > Rational::zero() && q < Rational::one()) {
        return Err(format!("--q must lie in (0, 1), got {q}"));
    }
    let depth = depth.map(parse_depth).transpose()?;
    let exponent = u32::try_from(n).map_err(|_| format!("--n {n} is too large"))?;
    let mut results = Vec::new();
    if matches!(mode, Mode::Symbolic | Mode::All) {
        let exact = qgenocchi_poly_at(n + 1, &q)
            .map_err(|e| e.to_string())?
            .eval(&x)
            / Rational::from_integer((n + 1).into());
        let value = exact.to_f64().unwrap_or(f64::NAN);
        results.push(ModeResult {
            mode: "symbolic",
            exact: Some(exact),
            value,
            bound: 0.0,
            terms: 0,
        });
    }
    if matches!(mode, Mode::Series | Mode::All) {
        let e = qgenocchi_eval_series(exponent, hp(&x), hp(&q), cfg).map_err(|e| e.to_string())?;
        results.push(ModeResult {
            mode: "series",
            exact: None,
            value: e.value,
            bound: e.bound,
            terms: e.terms,
        });
    }
    if matches!(mode, Mode::Integral | Mode::All) {
        let (qf, xf) = (
            q.to_f64().unwrap_or(f64::NAN),
            x.to_f64().unwrap_or(f64::NAN),
        );
        let depth = match depth {
            Some(d) => d,
            None => DepthConfig::for_tolerance(3, qf, cfg.tol).map_err(|e| e.to_string())?,
        };
        let power = n as i32;
        let value = fermionic_sum(
            |y| (xf + qbracket(y, qf).unwrap_or(f64::NAN)).powi(power),
            qf,
            &depth,
        )
        .map_err(|e| e.to_string())?;
        let sup = (xf.abs() + 1.0 / (1.0 - qf)).powi(power);
        let rounding = 16.0 * f64::EPSILON * sup / (1.0 - qf);
        let bound = depth_error_bound(sup, qf, &depth) + rounding;
        let terms = depth.size() as usize;
        results.push(ModeResult {
            mode: "integral",
            exact: None,
            value,
            bound,
            terms,
        });
    }

    let mut failures = Vec::new();
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            let diff = (a.value - b.value).abs();
            let allowance =
                a.bound + b.bound + 4.0 * f64::EPSILON * a.value.abs().max(b.value.abs());
            if diff.is_nan() || diff > allowance {
                failures.push(format!(
                    "{} vs {}: difference {} exceeds bounds {}",
                    a.mode,
                    b.mode,
                    sci(diff),
                    sci(allowance)
                ));
            }
        }
    }

    let header = vec!["mode", "value_exact", "value_decimal", "bound", "terms"];
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            let exact = r.exact.as_ref().map(|e| e.to_string()).unwrap_or_default();
            let decimal = match &r.exact {
                Some(e) => fixed(e, digits),
                None => fixed_f64(r.value, digits),
            };
            vec![
                r.mode.to_string(),
                exact,
                decimal,
                sci(r.bound),
                r.terms.to_string(),
            ]
        })
        .collect();
    let json_results: Vec<Value> = results
        .iter()
        .zip(&rows)
        .map(|(r, row)| {
            json!({
                "mode": r.mode,
                "exact": r.exact.as_ref().map(|e| Value::String(e.to_string())).unwrap_or(Value::Null),
                "decimal": row[2],
                "bound": row[3],
                "terms": r.terms,
            })
        })
        .collect();
    let mut pretty = format!("G_{{{},q}}(x)/{} at q = {q}, x = {x}\n", n + 1, n + 1);
    pretty += &align(&header, &rows);
    if results.len() > 1 {
        let verdict = if failures.is_empty() {
            "modes agree within bounds"
        } else {
            "modes DISAGREE"
        };
        let _ = writeln!(pretty, "{verdict}");
    }
    let json = json!({
        "command": "eval",
        "n": n,
        "q": q.to_string(),
        "x": x.to_string(),
        "results": json_results,
        "agree": failures.is_empty(),
    });
    Ok(Outcome {
        output: Output {
            json,
            header,
            rows,
            pretty,
        },
        failures,
    })
}

fn complex_text(z: Complex64, digits: u32) -> (String, String) {
    (fixed_f64(z.re, digits), fixed_f64(z.im, digits))
}

fn zeta(
    s_text: &str,
    x_text: &str,
    q_text: &str,
    partial: Option<&str>,
    cross_check: bool,
    cfg: &SeriesConfig,
    digits: u32,
) -> Result<Outcome, String> {
    let s = parse_complex(s_text)?;
    let x = parse_decimal("x", x_text)?;
    let q = parse_decimal("q", q_text)?;
    if !(x > Rational::zero() && x <= Rational::one()) {
        return Err(format!("--x must lie in (0, 1], got {x}"));
    }
    let pt = ZetaPoint::from_rationals(s, &x, &q).map_err(|e| e.to_string())?;
    let spec = partial.map(parse_partial).transpose()?;

    let mut entries: Vec<(&'static str, Estimate<Complex64>)> = Vec::new();
    let main = match &spec {
        Some(spec) => ("partial", partial_zeta_q(&pt, spec, cfg)),
        None => ("zeta", zeta_q(&pt, cfg)),
    };
    let main_est = main.1.map_err(|e| e.to_string())?;
    entries.push((main.0, main_est));

    let mut failures = Vec::new();
    let mut check_json = Value::Null;
    if cross_check {
        let (method, other) = cross_check_value(&pt, spec.as_ref(), &x, &q, cfg)?;
        let residual = (main_est.value - other.value).norm();
        let allowance = main_est.bound + other.bound + cfg.tol;
        let passed = residual <= allowance;
        if !passed {
            failures.push(format!(
                "{method}: residual {} exceeds {}",
                sci(residual),
                sci(allowance)
            ));
        }
        entries.push((method, other));
        check_json = json!({
            "method": method,
            "residual": sci(residual),
            "allowance": sci(allowance),
            "passed": passed,
        });
    }

    let header = vec!["quantity", "value_re", "value_im", "bound", "terms"];
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|(name, e)| {
            let (re, im) = complex_text(e.value, digits);
            vec![name.to_string(), re, im, sci(e.bound), e.terms.to_string()]
        })
        .collect();
    let s_text = if s.im == 0.0 {
        format!("{}", s.re)
    } else {
        format!("{}{:+}i", s.re, s.im)
    };
    let mut pretty = format!("s = {s_text}, x = {x}, q = {q}");
    if let Some(spec) = &spec {
        let _ = write!(pretty, ", a = {}, F = {}", spec.a(), spec.modulus());
    }
    pretty.push('\n');
    pretty += &align(&header, &rows);
    if let Some(obj) = check_json.as_object() {
        let _ = writeln!(
            pretty,
            "cross-check {}: residual {} ({})",
            obj["method"].as_str().unwrap_or_default(),
            obj["residual"].as_str().unwrap_or_default(),
            if failures.is_empty() { "pass" } else { "FAIL" }
        );
    }
    let values: Vec<Value> = entries
        .iter()
        .zip(&rows)
        .map(|((name, e), row)| json!({ "quantity": name, "re": row[1], "im": row[2], "bound": row[3], "terms": e.terms }))
        .collect();
    let json = json!({
        "command": "zeta",
        "s": { "re": fixed_f64(s.re, digits), "im": fixed_f64(s.im, digits) },
        "x": x.to_string(),
        "q": q.to_string(),
        "partial": spec.map(|p| json!({ "a": p.a(), "F": p.modulus() })).unwrap_or(Value::Null),
        "values": values,
        "cross_check": check_json,
    });
    Ok(Outcome {
        output: Output {
            json,
            header,
            rows,
            pretty,
        },
        failures,
    })
}

/// An independent value for the same quantity: the reduction theorem for
/// partial functions, the exact polynomial at `s = -n`, or a ten-fold
/// over-summation otherwise.
fn cross_check_value(
    pt: &ZetaPoint,
    spec: Option<&PartialSpec>,
    x: &Rational,
    q: &Rational,
    cfg: &SeriesConfig,
) -> Result<(&'static str, Estimate<Complex64>), String> {
    if let Some(spec) = spec {
        let rhs = reduction_rhs(pt, spec, cfg).map_err(|e| e.to_string())?;
        return Ok(("reduction", rhs));
    }
    let s = pt.s();
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && s.re >= -200.0 {
        let n = (-s.re) as usize;
        let exact = qgenocchi_poly_sym(n + 1)
            .poly
            .eval(q, x)
            .map_err(|e| e.to_string())?
            / Rational::from_integer((n + 1).into());
        let value = Complex64::new(exact.to_f64().unwrap_or(f64::NAN), 0.0);
        return Ok((
            "interpolation",
            Estimate {
                value,
                bound: f64::EPSILON * value.norm(),
                terms: 0,
            },
        ));
    }
    let terms = zeta_q(pt, cfg).map_err(|e| e.to_string())?.terms;
    Ok(("oversummation", zeta_q_partial_sum(pt, 10 * terms)))
}

fn verify(suite: SuiteArg, cfg: &SeriesConfig) -> Outcome {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Symbolic => Suite::Symbolic,
        SuiteArg::Numeric => Suite::Numeric,
        SuiteArg::Integral => Suite::Integral,
        SuiteArg::Zeta => Suite::Zeta,
    };
    let report = run_suite(suite, cfg);
    let failures = report
        .failures()
        .map(|c| {
            let detail = c
                .detail
                .as_deref()
                .map(|d| format!(" ({d})"))
                .unwrap_or_default();
            format!(
                "{} [{}] residual {}{detail}",
                c.name,
                c.params,
                residual_text(c.measure)
            )
        })
        .collect();
    Outcome {
        output: verify_output(suite, &report),
        failures,
    }
}

fn residual_text(m: Measure) -> String {
    match m {
        Measure::Exact => "exact".to_string(),
        Measure::Numeric(v) => sci(v),
    }
}

fn verify_output(suite: Suite, report: &VerifyReport) -> Output {
    let header = vec!["check", "params", "status", "residual", "seconds"];
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.params.clone(),
                if c.passed { "pass" } else { "fail" }.to_string(),
                residual_text(c.measure),
                format!("{:.3}", c.seconds),
            ]
        })
        .collect();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .zip(&rows)
        .map(|(c, row)| {
            json!({
                "check": row[0],
                "params": row[1],
                "status": row[2],
                "residual": row[3],
                "seconds": row[4],
                "detail": c.detail.clone().map(Value::String).unwrap_or(Value::Null),
            })
        })
        .collect();
    let failed = report.failures().count();
    let mut pretty = align(&header, &rows);
    let _ = writeln!(
        pretty,
        "{} checks, {} failed, total {:.3} s: {}",
        report.checks.len(),
        failed,
        report.seconds,
        if report.passed() { "PASS" } else { "FAIL" }
    );
    let json = json!({
        "command": "verify",
        "suite": suite.name(),
        "passed": report.passed(),
        "total_checks": report.checks.len(),
        "failed": failed,
        "seconds": format!("{:.3}", report.seconds),
        "checks": checks,
    });
    Output {
        json,
        header,
        rows,
        pretty,
    }
}
