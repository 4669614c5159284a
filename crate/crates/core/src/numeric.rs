//! Numeric evaluation policy and shared helpers.
//!
//! Real-valued series run in double-double precision ([`TwoFloat`]): the
//! alternating sums for `q` near 1 cancel terms of size `1e9` down to values
//! of order one, which plain `f64` cannot resolve to `1e-10`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::ToPrimitive;
pub use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Truncation policy for every numeric series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesConfig {
    /// Absolute tolerance the rigorous tail bound must reach.
    pub tol: f64,
    /// Hard ceiling on the number of summed terms (or the acceleration degree).
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            tol: 1e-15,
            max_terms: 1_000_000,
        }
    }
}

impl SeriesConfig {
    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        let cfg = SeriesConfig { tol, max_terms };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tol(tol: f64) -> Self {
        SeriesConfig {
            tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::domain(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        Ok(())
    }
}

/// A truncated series value with the bound it was certified to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    /// Tail bound plus accumulated rounding allowance.
    pub bound: f64,
    pub terms: usize,
}

/// Real parameter `q` must lie in the open interval `(0, 1)`.
pub fn check_q(q: TwoFloat) -> Result<()> {
    let q = q.hi();
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("q must lie in (0, 1), got {q}")))
    }
}

/// Nearest double-double to an exact rational.
pub fn hp(r: &Rational) -> TwoFloat {
    let hi = r.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() || hi == 0.0 {
        return TwoFloat::from(hi);
    }
    let exact_hi = Rational::from_float(hi).expect("finite float");
    let lo = (r - exact_hi).to_f64().unwrap_or(0.0);
    TwoFloat::new_add(hi, lo)
}

pub fn hp_ratio(num: i64, den: i64) -> TwoFloat {
    TwoFloat::from(num as f64) / TwoFloat::from(den as f64)
}

/// `v^e` with `v^0 = 1` even for `v = 0` (twofloat leaves `0^0` undefined).
pub fn hp_powi(v: TwoFloat, e: i32) -> TwoFloat {
    if e == 0 {
        TwoFloat::from(1.0)
    } else {
        v.powi(e)
    }
}

/// `[x]_q = (1 - q^x) / (1 - q)` at a nonnegative integer, as the finite sum
/// `1 + q + ... + q^(m-1)`.
pub fn hp_qbracket_int(m: u64, q: TwoFloat) -> TwoFloat {
    let mut acc = TwoFloat::from(0.0);
    let mut pow = TwoFloat::from(1.0);
    for _ in 0..m {
        acc += pow;
        pow *= q;
    }
    acc
}

/// Scalars the series engine can accumulate: double-double reals and
/// `f64` complexes.
pub trait SeriesScalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Relative rounding per operation, used for the rounding allowance.
    const ROUNDOFF: f64;
    fn zero() -> Self;
    fn from_hp(v: TwoFloat) -> Self;
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;
}

impl SeriesScalar for TwoFloat {
    const ROUNDOFF: f64 = 1e-30;
    fn zero() -> Self {
        TwoFloat::from(0.0)
    }
    fn from_hp(v: TwoFloat) -> Self {
        v
    }
    fn magnitude(&self) -> f64 {
        self.hi().abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.hi() + self.lo(), 0.0)
    }
}

impl SeriesScalar for Complex64 {
    const ROUNDOFF: f64 = 4.0 * f64::EPSILON;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_hp(v: TwoFloat) -> Self {
        Complex64::new(v.hi() + v.lo(), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Running sum that also tracks `sum |term|` for the rounding allowance.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Accumulator<T> {
    pub sum: T,
    pub abs_sum: f64,
}

impl<T: SeriesScalar> Accumulator<T> {
    pub fn new() -> Self {
        Accumulator {
            sum: T::zero(),
            abs_sum: 0.0,
        }
    }

    pub fn push(&mut self, term: T) {
        self.sum = self.sum + term;
        self.abs_sum += term.magnitude();
    }

    pub fn rounding(&self, terms: usize) -> f64 {
        // Each term carries a few operations of error; summation adds one more.
        T::ROUNDOFF * self.abs_sum * (8.0 + (terms as f64).log2().max(0.0))
    }
}

/// Exactly `s` when it is a real integer small enough to use as an exponent.
pub fn integer_exponent(s: Complex64) -> Option<i32> {
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() <= 1_000.0 {
        Some(s.re as i32)
    } else {
        None
    }
}

/// `base^(-s)` for a positive real base, principal branch.
pub fn complex_neg_power(base: f64, s: Complex64) -> Complex64 {
    (-s * base.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn rational_to_double_double() {
        let nine_tenths = hp(&rat(9, 10));
        // 9/10 is not a binary fraction; the low word carries the correction.
        assert_ne!(nine_tenths.lo(), 0.0);
        let back = nine_tenths * TwoFloat::from(10.0) - TwoFloat::from(9.0);
        assert!(back.hi().abs() < 1e-30);
        assert_eq!(hp(&rat(1, 2)), TwoFloat::from(0.5));
    }

    #[test]
    fn brackets_at_integers() {
        let q = TwoFloat::from(0.5);
        assert_eq!(hp_qbracket_int(0, q), TwoFloat::from(0.0));
        assert_eq!(hp_qbracket_int(2, q), TwoFloat::from(1.5));
        assert_eq!(hp_qbracket_int(3, q), TwoFloat::from(1.75));
    }

    #[test]
    fn zero_to_the_zero() {
        assert_eq!(hp_powi(TwoFloat::from(0.0), 0), TwoFloat::from(1.0));
        assert_eq!(hp_powi(TwoFloat::from(2.0), -2), TwoFloat::from(0.25));
    }

    #[test]
    fn config_validation() {
        assert!(SeriesConfig::new(0.0, 10).is_err());
        assert!(SeriesConfig::new(1e-9, 0).is_err());
        assert!(SeriesConfig::new(1e-9, 10).is_ok());
        assert!(check_q(TwoFloat::from(1.0)).is_err());
        assert!(check_q(TwoFloat::from(0.0)).is_err());
        assert!(check_q(TwoFloat::from(0.3)).is_ok());
    }

    #[test]
    fn integer_exponent_detection() {
        assert_eq!(integer_exponent(Complex64::new(-3.0, 0.0)), Some(-3));
        assert_eq!(integer_exponent(Complex64::new(2.0, 3.0)), None);
        assert_eq!(integer_exponent(Complex64::new(0.5, 0.0)), None);
    }
}
