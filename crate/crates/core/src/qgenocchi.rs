//! Modified q-Genocchi numbers and polynomials.
//!
//! `G_{n,q}(x)` is defined through the fermionic integral
//! `G_{n+1,q}(x) / (n+1) = I_{-q}((x + [y]_q)^n)`. Symbolically it is built
//! from the explicit double sum
//!
//! ```text
//! G_{n+1,q}(x)/(n+1) = [2]_q sum_{k<=n} sum_{j<=k} C(n,k) C(k,j) (1-q)^{-k}
//!                      x^{n-k} (-1)^j / (1 + q^{j+1})
//! ```
//!
//! and numerically from the alternating series
//! `[2]_q sum_m (-1)^m q^m (x + [m]_q)^n`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exactalg::{binomial, binomial_row, PolyQ, QXPoly, RatFuncQ, Rational};
use crate::numeric::{check_q, hp_powi, Accumulator, Estimate, SeriesConfig};

/// `[m]_q = 1 + q + ... + q^(m-1)` as an exact polynomial in `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBracketSym {
    pub m: usize,
    pub value: RatFuncQ,
}

pub fn qbracket_sym(m: usize) -> QBracketSym {
    let value = RatFuncQ::from_poly(PolyQ::new(vec![Rational::one(); m]));
    QBracketSym { m, value }
}

/// `[x]_q = (1 - q^x) / (1 - q)` for real `x` and `0 < q < 1`.
pub fn qbracket(x: f64, q: f64) -> Result<f64> {
    check_q(TwoFloat::from(q))?;
    Ok((1.0 - q.powf(x)) / (1.0 - q))
}

/// `[m]_{-q} = (1 - (-q)^m) / (1 + q)` at a nonnegative integer.
pub fn qbracket_neg(m: u64, q: f64) -> Result<f64> {
    check_q(TwoFloat::from(q))?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((1.0 - sign * q.powf(m as f64)) / (1.0 + q))
}

/// `[m]_{-q}` as a reduced rational function; for odd `m` this is
/// `(1 + q^m) / (1 + q)`, a polynomial.
pub fn qbracket_neg_sym(m: usize) -> RatFuncQ {
    let mut num = vec![Rational::zero(); m + 1];
    num[0] = Rational::one();
    num[m] -= if m.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    RatFuncQ::new(PolyQ::new(num), PolyQ::from_ints(&[1, 1])).expect("1 + q is nonzero")
}

/// `G_{n,q}`: the modified q-Genocchi number as a rational function of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGenocchiNumber {
    pub n: usize,
    pub value: RatFuncQ,
}

/// `G_{n,q}(x)`: the modified q-Genocchi polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGenocchiPoly {
    pub n: usize,
    pub poly: QXPoly,
}

impl QGenocchiNumber {
    /// Value at `q = 1`, the classical `G_n`.
    ///
    /// Panics if the reduced form has a pole at `q = 1`, which would break
    /// the type invariant.
    pub fn q_to_1(&self) -> Rational {
        self.value
            .eval(&Rational::one())
            .unwrap_or_else(|_| panic!("G_{{{},q}} has a pole at q = 1", self.n))
    }
}

impl QGenocchiPoly {
    /// Coefficientwise value at `q = 1`, the classical `G_n(x)`.
    pub fn q_to_1(&self) -> PolyQ {
        self.poly
            .eval_q(&Rational::one())
            .unwrap_or_else(|e| panic!("G_{{{},q}}(x): {e}", self.n))
    }

    pub fn number(&self) -> QGenocchiNumber {
        QGenocchiNumber {
            n: self.n,
            value: self.poly.coeff(0),
        }
    }

    /// Degree `n - 1`, leading coefficient `n`, or the zero polynomial for
    /// `n = 0`.
    pub fn has_expected_shape(&self) -> bool {
        if self.n == 0 {
            return self.poly.is_zero();
        }
        self.poly.degree() == Some(self.n - 1)
            && self.poly.coeff(self.n - 1) == RatFuncQ::from_int(self.n as i64)
    }
}

/// `G_{k+1,q} / (k+1) = [2]_q (1-q)^{-k} sum_{j<=k} C(k,j) (-1)^j / (1 + q^{j+1})`.
///
/// Memoised: entries are filled in index order under the lock, so each one
/// is computed exactly once.
fn explicit_inner(k: usize) -> RatFuncQ {
    static TABLE: OnceLock<Mutex<Vec<RatFuncQ>>> = OnceLock::new();
    let table = TABLE.get_or_init(Default::default);
    let mut table = table.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= k {
        let next = explicit_inner_uncached(table.len());
        table.push(next);
    }
    table[k].clone()
}

fn explicit_inner_uncached(k: usize) -> RatFuncQ {
    let row = binomial_row(k);
    let mut sum = RatFuncQ::zero();
    for (j, c) in row.iter().enumerate() {
        let mut den = vec![Rational::zero(); j + 2];
        den[0] = Rational::one();
        den[j + 1] = Rational::one();
        let sign = if j % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let term = RatFuncQ::new(
            PolyQ::constant(Rational::from_integer(sign * c)),
            PolyQ::new(den),
        )
        .expect("1 + q^(j+1) is nonzero");
        sum = &sum + &term;
    }
    let two_q = RatFuncQ::from_poly(PolyQ::from_ints(&[1, 1]));
    let one_minus_q = PolyQ::from_ints(&[1, -1]).pow(k as u32);
    let scale = RatFuncQ::new(PolyQ::one(), one_minus_q).expect("nonzero");
    &(&two_q * &scale) * &sum
}

/// `G_{n,q}` from the explicit formula at `x = 0`: only the `k = n - 1`
/// term survives (with `0^0 = 1`).
pub fn qgenocchi_number_sym(n: usize) -> QGenocchiNumber {
    let value = match n {
        0 => RatFuncQ::zero(),
        _ => explicit_inner(n - 1).scale(&Rational::from_integer(n.into())),
    };
    QGenocchiNumber { n, value }
}

/// `G_{n,q}(x)` from the full explicit double sum.
pub fn qgenocchi_poly_sym(n: usize) -> QGenocchiPoly {
    if n == 0 {
        return QGenocchiPoly {
            n,
            poly: QXPoly::zero(),
        };
    }
    let m = n - 1;
    let row = binomial_row(m);
    let nn = Rational::from_integer(n.into());
    // x^(m-k) carries C(m, k) * inner(k); the whole sum is G_{n,q}(x) / n.
    let coeffs = (0..=m)
        .map(|p| {
            let k = m - p;
            explicit_inner(k).scale(&(Rational::from_integer(row[k].clone()) * &nn))
        })
        .collect();
    QGenocchiPoly {
        n,
        poly: QXPoly::new(coeffs),
    }
}

/// Umbral expansion `G_{n,q}(x) = sum_k C(n,k) G_{k,q} x^(n-k)`.
///
/// `numbers` must hold `G_{k,q}` at position `k` for every `k <= n`.
pub fn addition_expand(n: usize, numbers: &[QGenocchiNumber]) -> Result<QGenocchiPoly> {
    let row = binomial_row(n);
    let mut coeffs = vec![RatFuncQ::zero(); n + 1];
    for k in 0..=n {
        let g = numbers
            .get(k)
            .filter(|g| g.n == k)
            .ok_or(Error::MissingIndex(k))?;
        coeffs[n - k] = g.value.scale(&Rational::from_integer(row[k].clone()));
    }
    Ok(QGenocchiPoly {
        n,
        poly: QXPoly::new(coeffs),
    })
}

/// `G_{n,q}(x)` with `q` fixed to an exact rational, straight from the
/// explicit double sum. Much cheaper than specialising the symbolic form.
pub fn qgenocchi_poly_at(n: usize, q0: &Rational) -> Result<PolyQ> {
    if n == 0 {
        return Ok(PolyQ::zero());
    }
    let one = Rational::one();
    if *q0 == one {
        return Err(Error::Pole { at: q0.clone() });
    }
    let m = n - 1;
    let two_q = &one + q0;
    let inv_one_minus = (&one - q0).recip();
    let mut inner = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let mut sum = Rational::zero();
        let mut qpow = q0.clone();
        for (j, c) in binomial_row(k).into_iter().enumerate() {
            let den = &one + &qpow;
            if den.is_zero() {
                return Err(Error::Pole { at: q0.clone() });
            }
            let term = Rational::from_integer(c) / den;
            if j % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            qpow *= q0;
        }
        inner.push(&two_q * num_traits::pow(inv_one_minus.clone(), k) * sum);
    }
    let nn = Rational::from_integer(n.into());
    Ok(PolyQ::new(
        (0..=m)
            .map(|p| {
                let k = m - p;
                &inner[k] * Rational::from_integer(binomial(m, k)) * &nn
            })
            .collect(),
    ))
}

/// Residual of the multiplication formula for odd `d`:
///
/// ```text
/// G_{n+1,q}(x) - [d]_q^n / [d]_{-q} sum_{a<d} (-1)^a q^{a(n+1)}
///                G_{n+1,q^d}((x + [a]_q) / (q^a [d]_q))
/// ```
///
/// The identity holds exactly, so the result should be the zero polynomial.
pub fn multiplication_check(n: usize, d: usize) -> Result<QXPoly> {
    if d == 0 || d.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "multiplication formula needs odd d >= 1, got {d}"
        )));
    }
    let lhs = qgenocchi_poly_sym(n + 1).poly;
    let base = lhs.subst_qpow(d);
    let d_q = qbracket_sym(d).value;
    let d_neg_q = qbracket_neg_sym(d);
    let q = RatFuncQ::q();
    let mut rhs = QXPoly::zero();
    for a in 0..d {
        let q_a = q.powi(a as i32).expect("q^a");
        let denom = &q_a * &d_q;
        let alpha = denom.inv().expect("q^a [d]_q is nonzero");
        let beta = &qbracket_sym(a).value * &alpha;
        let weight = q.powi((a * (n + 1)) as i32).expect("power of q");
        let weight = if a % 2 == 0 { weight } else { -weight };
        rhs = &rhs + &base.compose_affine(&alpha, &beta).scale(&weight);
    }
    let prefactor = &d_q.powi(n as i32).expect("power") / &d_neg_q;
    Ok(&lhs - &rhs.scale(&prefactor))
}

/// `G_{n+1,q}(x) / (n+1)` from the alternating series, truncated once
/// `[2]_q q^(M+1) / (1-q) * (|x| + 1/(1-q))^n <= tol`.
pub fn qgenocchi_eval_series(
    n: u32,
    x: impl Into<TwoFloat>,
    q: impl Into<TwoFloat>,
    cfg: &SeriesConfig,
) -> Result<Estimate<f64>> {
    let (x, q) = (x.into(), q.into());
    check_q(q)?;
    cfg.validate()?;
    let one = TwoFloat::from(1.0);
    let qf = q.hi();
    let two_q = one + q;
    let reach = (x.hi().abs() + 1.0 / (1.0 - qf)).powi(n as i32);
    let tail_scale = two_q.hi() * reach / (1.0 - qf);

    let mut acc = Accumulator::<TwoFloat>::new();
    let mut qpow = one; // q^m
    let mut bracket = TwoFloat::from(0.0); // [m]_q
    let mut tail_q = qf; // q^(m+1) in f64 for the bound
    for m in 0..cfg.max_terms {
        let term = qpow * hp_powi(x + bracket, n as i32);
        acc.push(if m % 2 == 0 { term } else { -term });
        bracket += qpow;
        qpow *= q;
        let tail = tail_scale * tail_q;
        tail_q *= qf;
        if tail <= cfg.tol {
            let terms = m + 1;
            let value = two_q * acc.sum;
            return Ok(Estimate {
                value: value.hi() + value.lo(),
                bound: tail + two_q.hi() * acc.rounding(terms) + f64::EPSILON * value.hi().abs(),
                terms,
            });
        }
    }
    Err(Error::Truncation {
        terms: cfg.max_terms,
        bound: tail_scale * tail_q / qf,
    })
}

/// `F_q(x; t) = [2]_q t sum_m (-1)^m q^m e^{(x + [m]_q) t}`, truncated by
/// the bound `[2]_q |t| e^{(|x| + 1/(1-q))|t|} q^(M+1) / (1-q)`.
pub fn generating_function_eval(
    x: f64,
    t: f64,
    q: impl Into<TwoFloat>,
    cfg: &SeriesConfig,
) -> Result<Estimate<f64>> {
    let q = q.into();
    check_q(q)?;
    cfg.validate()?;
    let qf = q.hi() + q.lo();
    if t == 0.0 {
        return Ok(Estimate {
            value: 0.0,
            bound: 0.0,
            terms: 0,
        });
    }
    let two_q = 1.0 + qf;
    let tail_scale = two_q * t.abs() * ((x.abs() + 1.0 / (1.0 - qf)) * t.abs()).exp() / (1.0 - qf);
    let mut acc = Accumulator::<TwoFloat>::new();
    let mut qpow = 1.0;
    let mut bracket = 0.0;
    for m in 0..cfg.max_terms {
        let term = TwoFloat::from(qpow * ((x + bracket) * t).exp());
        acc.push(if m % 2 == 0 { term } else { -term });
        bracket += qpow;
        qpow *= qf;
        let tail = tail_scale * qpow;
        if tail <= cfg.tol {
            let sum = acc.sum.hi() + acc.sum.lo();
            return Ok(Estimate {
                value: two_q * t * sum,
                bound: tail + 4.0 * f64::EPSILON * two_q * t.abs() * acc.abs_sum,
                terms: m + 1,
            });
        }
    }
    Err(Error::Truncation {
        terms: cfg.max_terms,
        bound: tail_scale * qpow,
    })
}

/// The Taylor side of the generating function, `sum_n G_{n,q}(x) t^n / n!`,
/// with exact coefficients at rational `(q, x)`. The truncation order is
/// raised until `[2]_q |t| / (1-q) * (B|t|)^N / N! / (1 - B|t|/(N+1))`,
/// `B = |x| + 1/(1-q)`, drops below `tol`.
pub fn generating_function_taylor(
    x: &Rational,
    t: f64,
    q: &Rational,
    cfg: &SeriesConfig,
) -> Result<Estimate<f64>> {
    use num_traits::ToPrimitive;
    let qf = q.to_f64().unwrap_or(f64::NAN);
    check_q(TwoFloat::from(qf))?;
    cfg.validate()?;
    let xf = x.to_f64().unwrap_or(f64::NAN);
    let reach = (xf.abs() + 1.0 / (1.0 - qf)) * t.abs();
    let lead = (1.0 + qf) * t.abs() / (1.0 - qf);

    let mut value = 0.0;
    let mut t_over_fact = 1.0; // t^n / n!
    let mut reach_pow = 1.0; // reach^N / N!
    for order in 0..cfg.max_terms {
        if order > 0 {
            let g = qgenocchi_poly_at(order, q)?.eval(x);
            value += g.to_f64().unwrap_or(f64::NAN) * t_over_fact;
        }
        t_over_fact *= t / (order as f64 + 1.0);
        reach_pow *= reach / (order as f64 + 1.0);
        let ratio = reach / (order as f64 + 2.0);
        if ratio < 1.0 {
            let tail = lead * reach_pow / (1.0 - ratio);
            if tail <= cfg.tol {
                return Ok(Estimate {
                    value,
                    bound: tail,
                    terms: order + 1,
                });
            }
        }
    }
    Err(Error::Truncation {
        terms: cfg.max_terms,
        bound: f64::INFINITY,
    })
}
