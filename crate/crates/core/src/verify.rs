//! The identity-verification harness: every invariant of the library run
//! over its fixed parameter grid, one [`CheckResult`] per grid point.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::classical::{genocchi_poly, genocchi_via_bernoulli, genocchi_via_recurrence};
use crate::error::{Error, Result};
use crate::exactalg::{rat, rat_int, PolyQ, QXPoly, RatFuncQ, Rational};
use crate::fermint::{fermionic_sum, integral_equation_residual, DepthConfig};
use crate::numeric::{hp, SeriesConfig};
use crate::qgenocchi::{
    addition_expand, generating_function_eval, generating_function_taylor, multiplication_check,
    qbracket, qbracket_neg, qgenocchi_eval_series, qgenocchi_number_sym, qgenocchi_poly_sym,
};
use crate::qzeta::{
    genocchi_zeta_classical, interpolation_residual, partial_zeta_q, reduction_corollary,
    reduction_residual, zeta_q, zeta_q_leading_term, zeta_q_partial_sum, PartialSpec, ZetaPoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Symbolic,
    Numeric,
    Integral,
    Zeta,
}

impl Suite {
    pub const PARTS: [Suite; 4] = [
        Suite::Symbolic,
        Suite::Numeric,
        Suite::Integral,
        Suite::Zeta,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Symbolic => "symbolic",
            Suite::Numeric => "numeric",
            Suite::Integral => "integral",
            Suite::Zeta => "zeta",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "symbolic" => Ok(Suite::Symbolic),
            "numeric" => Ok(Suite::Numeric),
            "integral" => Ok(Suite::Integral),
            "zeta" => Ok(Suite::Zeta),
            _ => Err(Error::domain(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a check measured: exact equality, or a numeric residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Measure {
    Exact,
    Numeric(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub params: String,
    pub passed: bool,
    pub measure: Measure,
    /// Error text when the check could not be evaluated.
    pub detail: Option<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub seconds: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Recorder {
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn exact(&mut self, name: &str, params: String, f: impl FnOnce() -> Result<bool>) {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.push(name, params, passed, Measure::Exact, detail, start);
    }

    /// Passes when the residual is finite and at most `limit`.
    fn numeric(&mut self, name: &str, params: String, f: impl FnOnce() -> Result<(f64, f64)>) {
        let start = Instant::now();
        let (passed, measure, detail) = match f() {
            Ok((residual, limit)) => (
                residual.is_finite() && residual <= limit,
                Measure::Numeric(residual),
                None,
            ),
            Err(e) => (false, Measure::Numeric(f64::NAN), Some(e.to_string())),
        };
        self.push(name, params, passed, measure, detail, start);
    }

    fn push(
        &mut self,
        name: &str,
        params: String,
        passed: bool,
        measure: Measure,
        detail: Option<String>,
        start: Instant,
    ) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            params,
            passed,
            measure,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
}

/// Run one suite (or all of them, in order) and collect the report.
pub fn run_suite(suite: Suite, cfg: &SeriesConfig) -> VerifyReport {
    let start = Instant::now();
    let parts: Vec<Suite> = if suite == Suite::All {
        Suite::PARTS.to_vec()
    } else {
        vec![suite]
    };
    let mut rec = Recorder { checks: Vec::new() };
    for part in parts {
        match part {
            Suite::Symbolic => symbolic(&mut rec),
            Suite::Numeric => numeric(&mut rec, cfg),
            Suite::Integral => integral(&mut rec),
            Suite::Zeta => zeta(&mut rec, cfg),
            Suite::All => unreachable!(),
        }
    }
    VerifyReport {
        checks: rec.checks,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Small fixed rational functions used for the field-axiom checks.
fn sample_ratfuncs() -> Vec<RatFuncQ> {
    let p = |c: &[i64]| PolyQ::from_ints(c);
    let f = |n: &[i64], d: &[i64]| RatFuncQ::new(p(n), p(d)).expect("nonzero denominator");
    vec![
        f(&[0, -2], &[1, 0, 1]),
        f(&[1, 1], &[1, -1]),
        f(&[3], &[2, 0, 0, 1]),
        f(&[-1, 0, 2], &[1, 1]),
        RatFuncQ::q(),
        RatFuncQ::from_rational(rat(-7, 3)),
    ]
}

fn symbolic(rec: &mut Recorder) {
    let samples = sample_ratfuncs();
    for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            let c = &samples[(i + j + 1) % samples.len()];
            rec.exact("ratfunc_field_axioms", format!("a={i} b={j}"), || {
                let assoc = &(a + b) + c == a + &(b + c);
                let distrib = a * &(b + c) == &(a * b) + &(a * c);
                let inverse = a.inv().is_none_or(|inv| (a * &inv).is_one());
                let eval_hom = [rat(1, 2), rat(-3, 5), rat(5, 7)].iter().all(|q0| {
                    match (a.eval(q0), b.eval(q0), (a * b).eval(q0)) {
                        (Ok(x), Ok(y), Ok(z)) => x * y == z,
                        _ => true,
                    }
                });
                let subst_hom = (a * b).subst_qpow(3) == &a.subst_qpow(3) * &b.subst_qpow(3)
                    && a.subst_qpow(2).subst_qpow(3) == a.subst_qpow(6);
                let reduce_idem =
                    RatFuncQ::new(a.num().clone(), a.den().clone()).is_ok_and(|r| r == *a);
                Ok(assoc && distrib && inverse && eval_hom && subst_hom && reduce_idem)
            });
        }
    }
    for n in 0..=6 {
        rec.exact("compose_affine_chain_rule", format!("n={n}"), || {
            let p = qgenocchi_poly_sym(n).poly;
            let (alpha, beta) = (&samples[1], &samples[0]);
            let identity = p.compose_affine(&RatFuncQ::one(), &RatFuncQ::zero()) == p;
            let chain = p.compose_affine(alpha, beta).derivative()
                == p.derivative().compose_affine(alpha, beta).scale(alpha);
            Ok(identity && chain)
        });
    }

    for n in 0..=60 {
        rec.exact("genocchi_theorem", format!("n={n}"), || {
            let g = genocchi_via_recurrence(n);
            Ok(genocchi_via_bernoulli(n) == g && g.is_integer())
        });
    }
    for k in 1..=30usize {
        rec.exact("genocchi_sign_alternation", format!("k={k}"), || {
            let g = genocchi_via_recurrence(2 * k);
            Ok((g > Rational::zero()) == (k % 2 == 0))
        });
    }
    for n in 1..=20usize {
        rec.exact("classical_appell", format!("n={n}"), || {
            let p = genocchi_poly(n);
            let derivative_ok = p.derivative() == genocchi_poly(n - 1).scale(&rat_int(n as i64));
            Ok(p.coeff(0) == genocchi_via_recurrence(n) && derivative_ok)
        });
    }
    for n in 1..=15usize {
        rec.exact("appell_derivative", format!("n={n}"), || {
            let lhs = qgenocchi_poly_sym(n).poly.derivative();
            let rhs = qgenocchi_poly_sym(n - 1)
                .poly
                .scale(&RatFuncQ::from_int(n as i64));
            Ok(lhs == rhs)
        });
    }
    let numbers: Vec<_> = (0..=15).map(qgenocchi_number_sym).collect();
    for n in 0..=15usize {
        rec.exact("addition_formula", format!("n={n}"), || {
            Ok(addition_expand(n, &numbers)? == qgenocchi_poly_sym(n))
        });
    }
    for n in 0..=20usize {
        rec.exact("q_to_1_limit", format!("n={n}"), || {
            let poly = qgenocchi_poly_sym(n);
            let number_ok =
                qgenocchi_number_sym(n).value.eval(&rat_int(1))? == genocchi_via_recurrence(n);
            let poly_ok = poly.poly.eval_q(&rat_int(1))? == genocchi_poly(n);
            Ok(number_ok && poly_ok)
        });
    }
    for n in 0..=20usize {
        rec.exact("degree_and_leading_coefficient", format!("n={n}"), || {
            Ok(qgenocchi_poly_sym(n).has_expected_shape())
        });
    }
    for d in [1usize, 3, 5] {
        for n in 0..=6usize {
            rec.exact("multiplication_formula", format!("d={d} n={n}"), || {
                Ok(multiplication_check(n, d)? == QXPoly::zero())
            });
        }
    }
}

fn rational_grid_q() -> [Rational; 3] {
    [rat(3, 10), rat(1, 2), rat(9, 10)]
}

fn numeric(rec: &mut Recorder, cfg: &SeriesConfig) {
    let series_cfg = SeriesConfig {
        tol: cfg.tol.min(1e-11),
        ..*cfg
    };
    for q in rational_grid_q() {
        for x in [rat_int(0), rat(1, 2), rat_int(1)] {
            for n in 0..=10usize {
                rec.numeric("explicit_vs_series", format!("n={n} q={q} x={x}"), || {
                    let est = qgenocchi_eval_series(n as u32, hp(&x), hp(&q), &series_cfg)?;
                    let exact =
                        qgenocchi_poly_sym(n + 1).poly.eval(&q, &x)? / rat_int(n as i64 + 1);
                    Ok((
                        (est.value - exact.to_f64().unwrap_or(f64::NAN)).abs(),
                        1e-10,
                    ))
                });
            }
        }
    }
    for q in [rat(1, 2), rat(7, 10)] {
        for x in [rat_int(0), rat(3, 10)] {
            for t in [-0.2, -0.1, 0.1, 0.2] {
                rec.numeric(
                    "generating_function_two_forms",
                    format!("x={x} t={t} q={q}"),
                    || {
                        let gf_cfg = SeriesConfig { tol: 1e-12, ..*cfg };
                        let closed = generating_function_eval(
                            x.to_f64().unwrap_or(f64::NAN),
                            t,
                            hp(&q),
                            &gf_cfg,
                        )?;
                        let taylor = generating_function_taylor(&x, t, &q, &gf_cfg)?;
                        Ok(((closed.value - taylor.value).abs(), 1e-8))
                    },
                );
            }
        }
    }
}

fn integral(rec: &mut Recorder) {
    for q in [rat(1, 2), rat(7, 10)] {
        let qf = q.to_f64().unwrap_or(f64::NAN);
        for x in [rat_int(0), rat(1, 2), rat_int(1)] {
            let xf = x.to_f64().unwrap_or(f64::NAN);
            for n in 0..=6i32 {
                let f = move |y: f64| (xf + qbracket(y, qf).unwrap_or(f64::NAN)).powi(n);
                let params = format!("n={n} q={q} x={x} p=3");
                rec.numeric("fermionic_oracle", params.clone(), || {
                    let depth = DepthConfig::for_tolerance(3, qf, 1e-12)?;
                    let sum = fermionic_sum(f, qf, &depth)?;
                    let exact = qgenocchi_poly_sym(n as usize + 1).poly.eval(&q, &x)?
                        / rat_int(n as i64 + 1);
                    Ok(((sum - exact.to_f64().unwrap_or(f64::NAN)).abs(), 1e-8))
                });
                rec.numeric("integral_equation", params, || {
                    let depth = DepthConfig::for_tolerance(3, qf, 1e-12)?;
                    Ok((integral_equation_residual(f, qf, &depth)?, 1e-8))
                });
            }
        }
        for depth in 1..=4u32 {
            rec.numeric(
                "normalizer_closed_form",
                format!("q={q} p=3 N={depth}"),
                || {
                    let size = 3u64.pow(depth);
                    let closed = (1.0 + qf.powf(size as f64)) / (1.0 + qf);
                    Ok(((qbracket_neg(size, qf)? - closed).abs(), 1e-15))
                },
            );
        }
    }
    for q in [0.5, 0.7, 0.8] {
        // |S_{N+1} - S_N| <= C q^(3^N) for f(y) = (1/2 + [y]_q)^3, with
        // C = 4 [2]_q B^3 / (1 - q), B = 1/2 + 1/(1-q).
        let f = move |y: f64| (0.5 + qbracket(y, q).unwrap_or(f64::NAN)).powi(3);
        let c = 4.0 * (1.0 + q) * (0.5 + 1.0 / (1.0 - q)).powi(3) / (1.0 - q);
        for depth in 1..=3u32 {
            rec.numeric(
                "depth_convergence_order",
                format!("q={q} p=3 N={depth}"),
                || {
                    let a = fermionic_sum(f, q, &DepthConfig::new(3, depth)?)?;
                    let b = fermionic_sum(f, q, &DepthConfig::new(3, depth + 1)?)?;
                    let scale = c * q.powf(3f64.powi(depth as i32));
                    // Ratio to the predicted envelope; rounding floor of 1e-14.
                    Ok(((b - a).abs() / (scale + 1e-14), 1.0))
                },
            );
        }
    }
}

fn zeta_s_grid() -> [Complex64; 5] {
    [
        Complex64::new(-3.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(2.0, 3.0),
    ]
}

fn fmt_s(s: Complex64) -> String {
    if s.im == 0.0 {
        format!("{}", s.re)
    } else {
        format!("{}{:+}i", s.re, s.im)
    }
}

fn zeta(rec: &mut Recorder, cfg: &SeriesConfig) {
    let zcfg = SeriesConfig {
        tol: cfg.tol.min(1e-12),
        ..*cfg
    };

    for im in [0.0, 1.0, 5.0] {
        for re in -5..=5 {
            let s = Complex64::new(re as f64, im);
            rec.numeric(
                "zeta_entire_in_s",
                format!("s={} x=1/2 q=1/2", fmt_s(s)),
                || {
                    let pt = ZetaPoint::from_rationals(s, &rat(1, 2), &rat(1, 2))?;
                    let est = zeta_q(&pt, &zcfg)?;
                    let brute = zeta_q_partial_sum(&pt, 10 * est.terms);
                    Ok(((est.value - brute.value).norm(), est.bound + brute.bound))
                },
            );
        }
    }
    for q in rational_grid_q() {
        for x in [rat(1, 4), rat(1, 2), rat_int(1)] {
            for n in 0..=8usize {
                rec.numeric("interpolation", format!("n={n} x={x} q={q}"), || {
                    Ok((interpolation_residual(n, &x, &q, &zcfg)?.residual, 1e-10))
                });
            }
        }
    }
    for f in [1u64, 3, 5] {
        for q in [rat(1, 2), rat(7, 10)] {
            for x in [rat(1, 2), rat_int(1)] {
                for s in zeta_s_grid() {
                    let params = format!("F={f} s={} x={x} q={q}", fmt_s(s));
                    rec.numeric("residue_partition", params, || {
                        let pt = ZetaPoint::from_rationals(s, &x, &q)?;
                        let whole = zeta_q(&pt, &zcfg)?;
                        let mut total = zeta_q_leading_term(&pt);
                        let mut bound = whole.bound;
                        for a in 0..f {
                            let part = partial_zeta_q(&pt, &PartialSpec::new(a, f)?, &zcfg)?;
                            total += part.value;
                            bound += part.bound;
                        }
                        Ok(((total - whole.value).norm(), bound.max(1e-12)))
                    });
                    for a in 0..f {
                        let params = format!("a={a} F={f} s={} x={x} q={q}", fmt_s(s));
                        rec.numeric("partial_zeta_reduction", params, || {
                            let pt = ZetaPoint::from_rationals(s, &x, &q)?;
                            Ok((
                                reduction_residual(&pt, &PartialSpec::new(a, f)?, &zcfg)?.residual,
                                1e-10,
                            ))
                        });
                    }
                }
                for n in 0..=4usize {
                    for a in 0..f {
                        let params = format!("n={n} a={a} F={f} x={x} q={q}");
                        rec.numeric("reduction_corollary", params, || {
                            let spec = PartialSpec::new(a, f)?;
                            let pt = ZetaPoint::from_rationals(
                                Complex64::new(-(n as f64), 0.0),
                                &x,
                                &q,
                            )?;
                            let lhs = partial_zeta_q(&pt, &spec, &zcfg)?;
                            let exact = reduction_corollary(n, &x, &q, &spec)?
                                .to_f64()
                                .unwrap_or(f64::NAN);
                            Ok(((lhs.value - Complex64::new(exact, 0.0)).norm(), 1e-10))
                        });
                    }
                }
            }
        }
    }

    rec.exact(
        "q_to_1_monotone_gap",
        "s=2 x=1 q=0.9;0.99;0.999".to_string(),
        || {
            let s = Complex64::new(2.0, 0.0);
            let limit = genocchi_zeta_classical(s, 1.0, &zcfg)?.value;
            let mut gaps = Vec::new();
            for q in [0.9, 0.99, 0.999] {
                let pt = ZetaPoint::new(s, 1.0, q)?;
                gaps.push((zeta_q(&pt, &zcfg)?.value - limit).norm());
            }
            Ok(gaps.windows(2).all(|w| w[1] < w[0]))
        },
    );
    let classical_cfg = SeriesConfig { tol: 1e-12, ..*cfg };
    rec.numeric("classical_zeta_closed_form", "s=2 x=1".to_string(), || {
        let v = genocchi_zeta_classical(Complex64::new(2.0, 0.0), 1.0, &classical_cfg)?;
        Ok((
            (v.value - Complex64::new(std::f64::consts::PI.powi(2) / 6.0, 0.0)).norm(),
            1e-10,
        ))
    });
    rec.numeric("classical_zeta_closed_form", "s=1 x=1".to_string(), || {
        let v = genocchi_zeta_classical(Complex64::new(1.0, 0.0), 1.0, &classical_cfg)?;
        Ok((
            (v.value - Complex64::new(2.0 * std::f64::consts::LN_2, 0.0)).norm(),
            1e-10,
        ))
    });
    for x in [rat(1, 4), rat(1, 2), rat_int(1)] {
        for n in 0..=6usize {
            rec.numeric(
                "classical_zeta_interpolation",
                format!("n={n} x={x}"),
                || {
                    let v = genocchi_zeta_classical(
                        Complex64::new(-(n as f64), 0.0),
                        hp(&x),
                        &classical_cfg,
                    )?;
                    let exact = genocchi_poly(n + 1).eval(&x) / rat_int(n as i64 + 1);
                    Ok((
                        (v.value - Complex64::new(exact.to_f64().unwrap_or(f64::NAN), 0.0)).norm(),
                        1e-8,
                    ))
                },
            );
        }
    }
}
