//! Zeta-type functions interpolating the modified q-Genocchi polynomials.
//!
//! ```text
//! zeta_q(s, x)       = [2]_q sum_{m>=0} (-1)^m q^m / (x + [m]_q)^s
//! H_q(s, x : a, F)   = [2]_q sum_{m>0, m = a mod F} (-1)^m q^m / (x + [m]_q)^s
//! ```
//!
//! The `q^m` factor makes both series converge for every complex `s`, so
//! they are summed directly with a rigorous geometric tail bound. At
//! `s = -n` the first one equals `G_{n+1,q}(x) / (n+1)`.
//!
//! Integer `s` is summed in double-double precision; other `s` use `f64`
//! complex arithmetic with `base^(-s) = exp(-s ln base)` on the positive
//! real base `x + [m]_q`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::numeric::{
    check_q, complex_neg_power, hp, hp_powi, hp_qbracket_int, integer_exponent, Accumulator,
    Estimate, SeriesConfig, SeriesScalar,
};
use crate::qgenocchi::{qgenocchi_poly_at, qgenocchi_poly_sym};

/// Evaluation site `(s, x, q)`.
///
/// Any `x > 0` is accepted because the reduction theorem shifts `x` past 1;
/// [`ZetaPoint::in_definition_domain`] reports whether `0 < x <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaPoint {
    s: Complex64,
    x: TwoFloat,
    q: TwoFloat,
}

impl ZetaPoint {
    pub fn new(s: Complex64, x: impl Into<TwoFloat>, q: impl Into<TwoFloat>) -> Result<Self> {
        let (x, q) = (x.into(), q.into());
        check_q(q)?;
        if x.hi() <= 0.0 || !x.hi().is_finite() {
            return Err(Error::domain(format!("x must be positive, got {}", x.hi())));
        }
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::domain("s must be finite"));
        }
        Ok(ZetaPoint { s, x, q })
    }

    /// Exact rationals are converted without binary rounding of the inputs.
    pub fn from_rationals(s: Complex64, x: &Rational, q: &Rational) -> Result<Self> {
        Self::new(s, hp(x), hp(q))
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn x(&self) -> TwoFloat {
        self.x
    }

    pub fn q(&self) -> TwoFloat {
        self.q
    }

    pub fn in_definition_domain(&self) -> bool {
        self.x.hi() > 0.0 && self.x <= TwoFloat::from(1.0)
    }
}

/// Residue class `m = a (mod F)` with odd `F` and `0 <= a < F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialSpec {
    a: u64,
    modulus: u64,
}

impl PartialSpec {
    pub fn new(a: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 || modulus.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "modulus F must be odd and positive, got {modulus}"
            )));
        }
        if a >= modulus {
            return Err(Error::domain(format!(
                "residue a = {a} must be below F = {modulus}"
            )));
        }
        Ok(PartialSpec { a, modulus })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// `|LHS - RHS|` of an identity together with the combined truncation bound
/// of both sides.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub residual: f64,
    pub bound: f64,
}

/// Sum `sum_j (-1)^m q^m g(x + [m]_q)` over `m = start + j * stride`
/// (skipping `m = 0` when asked), without the `[2]_q` prefactor.
///
/// `sup_g` bounds `|g|` on `[x, x + 1/(1-q))`; the tail after index `m_J`
/// is then at most `q^(m_{J+1}) / (1 - q^stride) * sup_g`.
#[allow(clippy::too_many_arguments)]
fn residue_series<T: SeriesScalar>(
    x: TwoFloat,
    q: TwoFloat,
    start: u64,
    stride: u64,
    skip_zero: bool,
    g: impl Fn(TwoFloat) -> T,
    sup_g: f64,
    cfg: &SeriesConfig,
) -> Result<Estimate<T>> {
    cfg.validate()?;
    let q_stride = hp_powi(q, stride as i32);
    let stride_bracket = hp_qbracket_int(stride, q);
    let geometric = sup_g / (1.0 - q_stride.hi());

    let mut acc = Accumulator::<T>::new();
    let mut m = start;
    let mut qpow = hp_powi(q, start as i32);
    let mut bracket = hp_qbracket_int(start, q);
    let mut summed = 0usize;
    for _ in 0..cfg.max_terms {
        if !(skip_zero && m == 0) {
            let term = g(x + bracket) * T::from_hp(qpow);
            acc.push(if m.is_multiple_of(2) { term } else { -term });
            summed += 1;
        }
        bracket += qpow * stride_bracket;
        qpow *= q_stride;
        m += stride;
        let tail = geometric * qpow.hi();
        if tail <= cfg.tol {
            return Ok(Estimate {
                value: acc.sum,
                bound: tail + acc.rounding(summed),
                terms: summed,
            });
        }
    }
    Err(Error::Truncation {
        terms: cfg.max_terms,
        bound: geometric * qpow.hi(),
    })
}

/// `sup |base^(-s)|` over `base in [x, x + 1/(1-q)]`.
fn power_sup(x: f64, q: f64, s_re: f64) -> f64 {
    let lo = x.powf(-s_re);
    let hi = (x + 1.0 / (1.0 - q)).powf(-s_re);
    lo.max(hi)
}

/// Dispatch between the double-double integer path and the complex path.
fn residue_series_any(
    s: Complex64,
    x: TwoFloat,
    q: TwoFloat,
    start: u64,
    stride: u64,
    skip_zero: bool,
    cfg: &SeriesConfig,
) -> Result<Estimate<Complex64>> {
    let sup = power_sup(x.hi(), q.hi(), s.re);
    let est = match integer_exponent(s) {
        Some(k) => {
            let e = residue_series(x, q, start, stride, skip_zero, |b| hp_powi(b, -k), sup, cfg)?;
            // Rounding the double-double result to f64 costs up to one ulp.
            let value = e.value.to_complex();
            Estimate {
                value,
                bound: e.bound + f64::EPSILON * value.norm(),
                terms: e.terms,
            }
        }
        None => residue_series(
            x,
            q,
            start,
            stride,
            skip_zero,
            |b| complex_neg_power(b.hi() + b.lo(), s),
            sup,
            cfg,
        )?,
    };
    Ok(est)
}

fn scale_estimate(e: Estimate<Complex64>, factor: Complex64) -> Estimate<Complex64> {
    Estimate {
        value: e.value * factor,
        bound: e.bound * factor.norm(),
        terms: e.terms,
    }
}

/// `zeta_q(s, x)`, summed until the tail bound
/// `[2]_q q^(M+1) / (1-q) * max(x^(-Re s), (x + 1/(1-q))^(-Re s))` is below
/// `cfg.tol`.
pub fn zeta_q(pt: &ZetaPoint, cfg: &SeriesConfig) -> Result<Estimate<Complex64>> {
    let two_q = 1.0 + pt.q.hi() + pt.q.lo();
    let inner_cfg = SeriesConfig {
        tol: cfg.tol / two_q,
        ..*cfg
    };
    let e = residue_series_any(pt.s, pt.x, pt.q, 0, 1, false, &inner_cfg)?;
    Ok(scale_estimate(e, Complex64::new(two_q, 0.0)))
}

/// Plain partial sum of `zeta_q` over `m < terms` in `f64` complex
/// arithmetic, no tail logic. Serves as the over-summation oracle; the bound
/// is its rounding allowance only.
pub fn zeta_q_partial_sum(pt: &ZetaPoint, terms: usize) -> Estimate<Complex64> {
    let q = pt.q.hi() + pt.q.lo();
    let x = pt.x.hi() + pt.x.lo();
    let mut acc = Accumulator::<Complex64>::new();
    let mut qpow = 1.0;
    let mut bracket = 0.0;
    for m in 0..terms {
        let t = complex_neg_power(x + bracket, pt.s) * qpow;
        acc.push(if m % 2 == 0 { t } else { -t });
        bracket += qpow;
        qpow *= q;
    }
    let two_q = 1.0 + q;
    Estimate {
        value: acc.sum * two_q,
        bound: two_q * acc.rounding(terms),
        terms,
    }
}

/// `H_q(s, x : a, F)`. The residue class excludes `m = 0`, so `a = 0` starts
/// at `m = F`.
pub fn partial_zeta_q(
    pt: &ZetaPoint,
    spec: &PartialSpec,
    cfg: &SeriesConfig,
) -> Result<Estimate<Complex64>> {
    let two_q = 1.0 + pt.q.hi() + pt.q.lo();
    let inner_cfg = SeriesConfig {
        tol: cfg.tol / two_q,
        ..*cfg
    };
    let e = residue_series_any(pt.s, pt.x, pt.q, spec.a, spec.modulus, true, &inner_cfg)?;
    Ok(scale_estimate(e, Complex64::new(two_q, 0.0)))
}

/// The `m = 0` term `[2]_q x^(-s)` that the partial function leaves out.
pub fn zeta_q_leading_term(pt: &ZetaPoint) -> Complex64 {
    let two_q = 1.0 + pt.q.hi() + pt.q.lo();
    match integer_exponent(pt.s) {
        Some(k) => {
            let v = TwoFloat::from(two_q) * hp_powi(pt.x, -k);
            Complex64::new(v.hi() + v.lo(), 0.0)
        }
        None => complex_neg_power(pt.x.hi() + pt.x.lo(), pt.s) * two_q,
    }
}

/// Right-hand side of the reduction theorem,
///
/// ```text
/// (-1)^a q^(a(1-s)) [2]_q / ([F]_q^s [2]_{q^F}) * zeta_{q^F}(s, (x + [a]_q) / (q^a [F]_q)),
/// ```
///
/// minus the `m = 0` term when `a = 0`, matching the `m > 0` convention of
/// [`partial_zeta_q`].
pub fn reduction_rhs(
    pt: &ZetaPoint,
    spec: &PartialSpec,
    cfg: &SeriesConfig,
) -> Result<Estimate<Complex64>> {
    let (a, f) = (spec.a, spec.modulus);
    let q = pt.q;
    let q_f = hp_powi(q, f as i32);
    let bracket_f = hp_qbracket_int(f, q);
    let q_a = hp_powi(q, a as i32);
    let shifted = (pt.x + hp_qbracket_int(a, q)) / (q_a * bracket_f);
    let two_q = TwoFloat::from(1.0) + q;
    let two_qf = TwoFloat::from(1.0) + q_f;
    let sign = if a % 2 == 0 { 1.0 } else { -1.0 };

    let prefactor = match integer_exponent(pt.s) {
        Some(k) => {
            let v = hp_powi(q, a as i32 * (1 - k)) * two_q / (hp_powi(bracket_f, k) * two_qf)
                * TwoFloat::from(sign);
            Complex64::new(v.hi() + v.lo(), 0.0)
        }
        None => {
            let (qf, bf) = (q.hi() + q.lo(), bracket_f.hi() + bracket_f.lo());
            let q_part = ((Complex64::new(1.0, 0.0) - pt.s) * (a as f64 * qf.ln())).exp();
            let f_part = (-pt.s * bf.ln()).exp();
            q_part * f_part * sign * (two_q.hi() + two_q.lo()) / (two_qf.hi() + two_qf.lo())
        }
    };
    let inner_pt = ZetaPoint::new(pt.s, shifted, q_f)?;
    let scale = prefactor.norm().max(f64::MIN_POSITIVE);
    let inner_cfg = SeriesConfig {
        tol: cfg.tol / scale.max(1.0),
        ..*cfg
    };
    let mut e = scale_estimate(zeta_q(&inner_pt, &inner_cfg)?, prefactor);
    if a == 0 {
        e.value -= zeta_q_leading_term(pt);
    }
    Ok(e)
}

/// `|H_q(s, x : a, F) - RHS|` with both sides summed independently.
pub fn reduction_residual(
    pt: &ZetaPoint,
    spec: &PartialSpec,
    cfg: &SeriesConfig,
) -> Result<Residual> {
    let lhs = partial_zeta_q(pt, spec, cfg)?;
    let rhs = reduction_rhs(pt, spec, cfg)?;
    Ok(Residual {
        residual: (lhs.value - rhs.value).norm(),
        bound: lhs.bound + rhs.bound,
    })
}

/// Exact `H_q(-n, x : a, F)` from the closing corollary of the reduction
/// theorem,
///
/// ```text
/// (-1)^a q^(a(n+1)) [2]_q [F]_q^n / [2]_{q^F} * G_{n+1,q^F}(x') / (n+1),
/// x' = (x + [a]_q) / (q^a [F]_q),
/// ```
///
/// with the `m = 0` term `[2]_q x^n` removed when `a = 0`.
pub fn reduction_corollary(
    n: usize,
    x: &Rational,
    q: &Rational,
    spec: &PartialSpec,
) -> Result<Rational> {
    let one = Rational::one();
    let (a, f) = (spec.a as usize, spec.modulus as usize);
    let bracket = |m: usize| {
        (0..m)
            .map(|i| num_traits::pow(q.clone(), i))
            .fold(Rational::zero(), |s, t| s + t)
    };
    let q_f = num_traits::pow(q.clone(), f);
    let q_a = num_traits::pow(q.clone(), a);
    let bracket_f = bracket(f);
    let shifted = (x + bracket(a)) / (&q_a * &bracket_f);
    let g = qgenocchi_poly_at(n + 1, &q_f)?.eval(&shifted) / Rational::from_integer((n + 1).into());
    let sign = if a % 2 == 0 {
        one.clone()
    } else {
        -one.clone()
    };
    let prefactor =
        sign * num_traits::pow(q.clone(), a * (n + 1)) * (&one + q) * num_traits::pow(bracket_f, n)
            / (&one + &q_f);
    let mut value = prefactor * g;
    if a == 0 {
        value -= (&one + q) * num_traits::pow(x.clone(), n);
    }
    Ok(value)
}

/// `|zeta_q(-n, x) - G_{n+1,q}(x) / (n+1)|` with the right side evaluated
/// exactly from the symbolic polynomial.
pub fn interpolation_residual(
    n: usize,
    x: &Rational,
    q: &Rational,
    cfg: &SeriesConfig,
) -> Result<Residual> {
    let pt = ZetaPoint::from_rationals(Complex64::new(-(n as f64), 0.0), x, q)?;
    let series = zeta_q(&pt, cfg)?;
    let exact = qgenocchi_poly_sym(n + 1).poly.eval(q, x)? / Rational::from_integer((n + 1).into());
    let exact = exact.to_f64().unwrap_or(f64::NAN);
    Ok(Residual {
        residual: (series.value - Complex64::new(exact, 0.0)).norm(),
        bound: series.bound,
    })
}

/// Weights `w_k` of the Cohen-Rodriguez-Villegas-Zagier acceleration of
/// degree `n`: `sum_k (-1)^k a_k ~ sum_{k<n} w_k a_k`. Exact rationals, since
/// the normaliser `d_n = T_n(3)` is an integer.
pub fn cvz_weights(n: usize) -> Vec<Rational> {
    // T_n(3) via T_{k+1} = 6 T_k - T_{k-1}.
    let (mut t_prev, mut t_cur) = (BigInt::one(), BigInt::from(3));
    if n == 0 {
        t_cur = BigInt::one();
    }
    for _ in 1..n {
        let next = BigInt::from(6) * &t_cur - &t_prev;
        t_prev = std::mem::replace(&mut t_cur, next);
    }
    let d = Rational::from_integer(t_cur);
    let nn = n as i64;
    let mut b = -Rational::one();
    let mut c = -d.clone();
    let mut weights = Vec::with_capacity(n);
    for k in 0..nn {
        c = &b - &c;
        weights.push(&c / &d);
        let num = Rational::from_integer(((k + nn) * (k - nn)).into());
        let den =
            Rational::new((2 * k + 1).into(), 2.into()) * Rational::from_integer((k + 1).into());
        b = b * num / den;
    }
    weights
}

fn cvz_sum<T: SeriesScalar>(weights: &[TwoFloat], terms: &[T]) -> (T, f64) {
    let mut acc = Accumulator::<T>::new();
    for (w, a) in weights.iter().zip(terms) {
        acc.push(*a * T::from_hp(*w));
    }
    (acc.sum, acc.rounding(weights.len()))
}

/// Degree increments for the acceleration; the estimate of degree `n` is
/// accepted once it agrees with degree `n - CVZ_STEP`.
const CVZ_STEP: usize = 20;
const CVZ_MAX_DEGREE: usize = 600;

fn accelerate<T: SeriesScalar>(
    term: impl Fn(usize) -> T,
    cfg: &SeriesConfig,
) -> Result<Estimate<Complex64>> {
    cfg.validate()?;
    let max_degree = cfg.max_terms.min(CVZ_MAX_DEGREE);
    let terms: Vec<T> = (0..max_degree).map(&term).collect();
    let mut previous: Option<Complex64> = None;
    let mut degree = CVZ_STEP.min(max_degree);
    let mut last_diff = f64::INFINITY;
    loop {
        let weights: Vec<TwoFloat> = cvz_weights(degree).iter().map(hp).collect();
        let (value, rounding) = cvz_sum(&weights, &terms[..degree]);
        let value = value.to_complex();
        if let Some(prev) = previous {
            last_diff = (value - prev).norm();
            if last_diff + rounding <= cfg.tol {
                return Ok(Estimate {
                    value,
                    bound: last_diff + rounding,
                    terms: degree,
                });
            }
        }
        previous = Some(value);
        if degree >= max_degree {
            return Err(Error::Truncation {
                terms: degree,
                bound: last_diff,
            });
        }
        degree = (degree + CVZ_STEP).min(max_degree);
    }
}

/// The classical Genocchi zeta function `2 sum_{m>=0} (-1)^m / (x + m)^s`,
/// the `q -> 1` limit of [`zeta_q`]. Terms decay only polynomially (or grow,
/// for `Re s <= 0`), so the alternating series is resummed with CVZ
/// acceleration.
pub fn genocchi_zeta_classical(
    s: Complex64,
    x: impl Into<TwoFloat>,
    cfg: &SeriesConfig,
) -> Result<Estimate<Complex64>> {
    let x = x.into();
    if x.hi().is_nan() || x.hi() <= 0.0 {
        return Err(Error::domain(format!("x must be positive, got {}", x.hi())));
    }
    let half_cfg = SeriesConfig {
        tol: cfg.tol / 2.0,
        ..*cfg
    };
    let e = match integer_exponent(s) {
        Some(k) => accelerate(|m| hp_powi(x + TwoFloat::from(m as f64), -k), &half_cfg)?,
        None => {
            let xf = x.hi() + x.lo();
            accelerate(|m| complex_neg_power(xf + m as f64, s), &half_cfg)?
        }
    };
    Ok(Estimate {
        value: e.value * 2.0,
        bound: 2.0 * e.bound,
        terms: e.terms,
    })
}

/// Direct partial sum `2 sum_{m<terms} (-1)^m (x + m)^(-s)`, for checking
/// the accelerated value where the series converges.
pub fn genocchi_zeta_partial_sum(s: Complex64, x: f64, terms: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..terms {
        let t = complex_neg_power(x + m as f64, s);
        sum += if m % 2 == 0 { t } else { -t };
    }
    sum * 2.0
}
