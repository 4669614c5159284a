//! The acceptance criteria, each at its pinned tolerance and time limit.
//! Prints one line per criterion and exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use qgenocchi::classical::{genocchi_poly, genocchi_via_bernoulli, genocchi_via_recurrence};
use qgenocchi::exactalg::{rat, rat_int};
use qgenocchi::fermint::{fermionic_sum, integral_equation_residual, DepthConfig};
use qgenocchi::numeric::hp;
use qgenocchi::qgenocchi::{
    addition_expand, generating_function_eval, generating_function_taylor, multiplication_check,
    qbracket, qgenocchi_eval_series, qgenocchi_number_sym, qgenocchi_poly_sym,
};
use qgenocchi::qzeta::{
    genocchi_zeta_classical, interpolation_residual, reduction_corollary, reduction_residual,
    reduction_rhs, PartialSpec, ZetaPoint,
};
use qgenocchi::{QXPoly, RatFuncQ, Rational, SeriesConfig};

type Check = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f64_of(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn binary() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qgenocchi"));
    cmd.env_remove("QGENOCCHI_MAX_TERMS");
    cmd
}

fn classical_table() -> Check {
    let out = binary()
        .args(["classical", "12", "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit status {:?}", out.status.code())
    })?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let expected = [
        (1, "1"),
        (2, "-1"),
        (4, "1"),
        (6, "-3"),
        (8, "17"),
        (10, "-155"),
        (12, "2073"),
    ];
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    ensure(rows.len() == 13, || format!("{} rows", rows.len()))?;
    for (n, g) in expected {
        ensure(rows[n][1] == g, || {
            format!("G_{n} = {} (want {g})", rows[n][1])
        })?;
    }
    for n in (3..=11).step_by(2) {
        ensure(rows[n][1] == "0", || format!("G_{n} = {}", rows[n][1]))?;
    }
    Ok(())
}

fn genocchi_theorem() -> Check {
    for n in 0..=60 {
        ensure(
            genocchi_via_bernoulli(n) == genocchi_via_recurrence(n),
            || format!("n = {n}"),
        )?;
    }
    Ok(())
}

fn addition_and_appell() -> Check {
    let numbers: Vec<_> = (0..=15).map(qgenocchi_number_sym).collect();
    for n in 0..=15usize {
        let poly = qgenocchi_poly_sym(n);
        ensure(
            addition_expand(n, &numbers).map_err(|e| e.to_string())? == poly,
            || format!("addition, n = {n}"),
        )?;
        if n >= 1 {
            let lower = qgenocchi_poly_sym(n - 1)
                .poly
                .scale(&RatFuncQ::from_int(n as i64));
            ensure(poly.poly.derivative() == lower, || {
                format!("derivative, n = {n}")
            })?;
        }
    }
    Ok(())
}

fn q_to_one() -> Check {
    for n in 0..=20 {
        let at_one = qgenocchi_number_sym(n)
            .value
            .eval(&rat_int(1))
            .map_err(|e| e.to_string())?;
        ensure(at_one == genocchi_via_recurrence(n), || {
            format!("n = {n}: {at_one}")
        })?;
    }
    Ok(())
}

fn explicit_vs_series() -> Check {
    let cfg = SeriesConfig::with_tol(1e-11);
    for q in [rat(3, 10), rat(1, 2), rat(9, 10)] {
        for x in [rat_int(0), rat(1, 2), rat_int(1)] {
            for n in 0..=10usize {
                let est = qgenocchi_eval_series(n as u32, hp(&x), hp(&q), &cfg)
                    .map_err(|e| e.to_string())?;
                let exact = qgenocchi_poly_sym(n + 1)
                    .poly
                    .eval(&q, &x)
                    .map_err(|e| e.to_string())?
                    / rat_int(n as i64 + 1);
                let err = (est.value - f64_of(&exact)).abs();
                ensure(err <= 1e-10 && est.bound <= 1e-10, || {
                    format!(
                        "n = {n}, q = {q}, x = {x}: error {err:e}, bound {:e}",
                        est.bound
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn fermionic_oracle() -> Check {
    for q in [rat(1, 2), rat(7, 10)] {
        let qf = f64_of(&q);
        let depth = DepthConfig::for_tolerance(3, qf, 1e-12).map_err(|e| e.to_string())?;
        ensure(qf.powf(depth.size() as f64) < 1e-12, || {
            "depth too shallow".into()
        })?;
        for x in [rat_int(0), rat(1, 2), rat_int(1)] {
            let xf = f64_of(&x);
            for n in 0..=6i32 {
                let f = |y: f64| (xf + qbracket(y, qf).unwrap()).powi(n);
                let sum = fermionic_sum(f, qf, &depth).map_err(|e| e.to_string())?;
                let exact = qgenocchi_poly_sym(n as usize + 1)
                    .poly
                    .eval(&q, &x)
                    .map_err(|e| e.to_string())?
                    / rat_int(i64::from(n) + 1);
                let err = (sum - f64_of(&exact)).abs();
                ensure(err <= 1e-8, || {
                    format!("oracle n = {n}, q = {q}, x = {x}: {err:e}")
                })?;
                let residual =
                    integral_equation_residual(f, qf, &depth).map_err(|e| e.to_string())?;
                ensure(residual <= 1e-8, || {
                    format!("integral equation n = {n}, q = {q}, x = {x}: {residual:e}")
                })?;
            }
        }
    }
    Ok(())
}

fn generating_function() -> Check {
    let cfg = SeriesConfig::with_tol(1e-12);
    for x in [rat_int(0), rat(3, 10)] {
        for t in [-0.2, -0.1, 0.1, 0.2] {
            for q in [rat(1, 2), rat(7, 10)] {
                let closed = generating_function_eval(f64_of(&x), t, hp(&q), &cfg)
                    .map_err(|e| e.to_string())?;
                let taylor =
                    generating_function_taylor(&x, t, &q, &cfg).map_err(|e| e.to_string())?;
                let err = (closed.value - taylor.value).abs();
                ensure(err <= 1e-8, || {
                    format!("x = {x}, t = {t}, q = {q}: {err:e}")
                })?;
            }
        }
    }
    Ok(())
}

fn multiplication() -> Check {
    for d in [1, 3, 5] {
        for n in 0..=6 {
            let residual = multiplication_check(n, d).map_err(|e| e.to_string())?;
            ensure(residual == QXPoly::zero(), || {
                format!("d = {d}, n = {n}: {residual}")
            })?;
        }
    }
    Ok(())
}

fn interpolation() -> Check {
    let cfg = SeriesConfig::with_tol(1e-12);
    for q in [rat(3, 10), rat(1, 2), rat(9, 10)] {
        for x in [rat(1, 4), rat(1, 2), rat_int(1)] {
            for n in 0..=8 {
                let r = interpolation_residual(n, &x, &q, &cfg).map_err(|e| e.to_string())?;
                ensure(r.residual <= 1e-10, || {
                    format!("n = {n}, x = {x}, q = {q}: {:e}", r.residual)
                })?;
            }
        }
    }
    Ok(())
}

fn partial_reduction() -> Check {
    let cfg = SeriesConfig::with_tol(1e-12);
    let s_grid = [
        Complex64::new(-3.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(2.0, 3.0),
    ];
    for f in [1, 3, 5] {
        for a in 0..f {
            let spec = PartialSpec::new(a, f).map_err(|e| e.to_string())?;
            for x in [rat(1, 2), rat_int(1)] {
                for q in [rat(1, 2), rat(7, 10)] {
                    for s in s_grid {
                        let pt = ZetaPoint::from_rationals(s, &x, &q).map_err(|e| e.to_string())?;
                        let r = reduction_residual(&pt, &spec, &cfg).map_err(|e| e.to_string())?;
                        ensure(r.residual <= 1e-10, || {
                            format!(
                                "a = {a}, F = {f}, s = {s}, x = {x}, q = {q}: {:e}",
                                r.residual
                            )
                        })?;
                    }
                    for n in 0..=4usize {
                        let pt =
                            ZetaPoint::from_rationals(Complex64::new(-(n as f64), 0.0), &x, &q)
                                .map_err(|e| e.to_string())?;
                        let rhs = reduction_rhs(&pt, &spec, &cfg).map_err(|e| e.to_string())?;
                        let exact =
                            reduction_corollary(n, &x, &q, &spec).map_err(|e| e.to_string())?;
                        let err = (rhs.value - Complex64::new(f64_of(&exact), 0.0)).norm();
                        ensure(err <= 1e-10, || {
                            format!(
                                "corollary n = {n}, a = {a}, F = {f}, x = {x}, q = {q}: {err:e}"
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn classical_zeta() -> Check {
    let cfg = SeriesConfig::with_tol(1e-12);
    let v =
        genocchi_zeta_classical(Complex64::new(2.0, 0.0), 1.0, &cfg).map_err(|e| e.to_string())?;
    let err = (v.value - Complex64::new(std::f64::consts::PI.powi(2) / 6.0, 0.0)).norm();
    ensure(err <= 1e-10, || format!("s = 2: {err:e}"))?;
    for x in [rat(1, 10), rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1)] {
        for n in 0..=6usize {
            let v = genocchi_zeta_classical(Complex64::new(-(n as f64), 0.0), hp(&x), &cfg)
                .map_err(|e| e.to_string())?;
            let exact = genocchi_poly(n + 1).eval(&x) / rat_int(n as i64 + 1);
            let err = (v.value - Complex64::new(f64_of(&exact), 0.0)).norm();
            ensure(err <= 1e-8, || format!("s = -{n}, x = {x}: {err:e}"))?;
        }
    }
    Ok(())
}

fn verify_all() -> Check {
    let out = binary()
        .args(["verify", "all", "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(0), || {
        format!("exit status {:?}: {stderr}", out.status.code())
    })
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "classical table reproduction",
            Duration::from_secs(1),
            classical_table,
        ),
        (
            "Genocchi's theorem for n <= 60",
            Duration::from_secs(1),
            genocchi_theorem,
        ),
        (
            "addition formula and Appell derivative for n <= 15",
            Duration::from_secs(30),
            addition_and_appell,
        ),
        (
            "q -> 1 limit for n <= 20",
            Duration::from_secs(30),
            q_to_one,
        ),
        (
            "explicit formula against series, 1e-10",
            Duration::from_secs(10),
            explicit_vs_series,
        ),
        (
            "fermionic sum oracle and integral equation, 1e-8",
            Duration::from_secs(30),
            fermionic_oracle,
        ),
        (
            "generating function two forms, 1e-8",
            Duration::from_secs(10),
            generating_function,
        ),
        (
            "multiplication formula residual is zero",
            Duration::from_secs(60),
            multiplication,
        ),
        (
            "zeta interpolation at s = -n, 1e-10",
            Duration::from_secs(10),
            interpolation,
        ),
        (
            "partial zeta reduction and corollary, 1e-10",
            Duration::from_secs(30),
            partial_reduction,
        ),
        (
            "classical Genocchi zeta sanity",
            Duration::from_secs(10),
            classical_zeta,
        ),
        ("verify all exits 0", Duration::from_secs(180), verify_all),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= *limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (took longer than {} s)", limit.as_secs()),
            (Err(msg), _) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "criterion {:>2}: {verdict:<4}  {name}  [{:.3} s]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
