//! Exact arithmetic kernel.
//!
//! Everything q-dependent is carried as a [`RatFuncQ`], a reduced quotient of
//! two [`PolyQ`] with a monic denominator, so structural equality coincides
//! with mathematical equality. Polynomials in `x` over that field are
//! [`QXPoly`].

mod poly;
mod qxpoly;
mod ratfunc;

pub use poly::PolyQ;
pub use qxpoly::QXPoly;
pub use ratfunc::{CanonicalParts, RatFuncQ};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision exact rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parse a plain decimal literal (`-0.125`, `3`, `.5`) or a fraction `a/b`
/// into an exact rational without passing through binary floating point.
pub fn parse_exact(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let scale = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = Rational::new(mantissa, scale);
    Some(if neg { -value } else { value })
}
