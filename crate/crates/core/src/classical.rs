//! Classical Bernoulli and Genocchi sequences, exact.
//!
//! Convention: `B_1 = -1/2`. Under it `G_2n = 2 (1 - 2^2n) B_2n` reproduces
//! `G_2 = -1`, `G_4 = 1`, `G_6 = -3`, ...

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{binomial_row, PolyQ, Rational};

/// Bernoulli numbers grown on demand from
/// `sum_{k=0}^{n} C(n+1, k) B_k = 0`, `B_0 = 1`.
#[derive(Clone, Debug)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        BernoulliCache {
            values: vec![Rational::one()],
        }
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: usize) -> Rational {
        while self.values.len() <= n {
            let m = self.values.len();
            let value = if m >= 3 && m % 2 == 1 {
                Rational::zero()
            } else {
                let row = binomial_row(m + 1);
                let acc: Rational = self
                    .values
                    .iter()
                    .zip(&row)
                    .map(|(b, c)| b * Rational::from_integer(c.clone()))
                    .sum();
                -acc / Rational::from_integer(row[m].clone())
            };
            self.values.push(value);
        }
        self.values[n].clone()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Genocchi numbers grown on demand from the recurrence obtained by clearing
/// the denominator of `2t / (e^t + 1)`:
/// `G_n + sum_{k=0}^{n} C(n, k) G_k = 2 [n = 1]`.
#[derive(Clone, Debug)]
pub struct GenocchiCache {
    values: Vec<Rational>,
}

impl Default for GenocchiCache {
    fn default() -> Self {
        GenocchiCache {
            values: vec![Rational::zero()],
        }
    }
}

impl GenocchiCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: usize) -> Rational {
        while self.values.len() <= n {
            let m = self.values.len();
            let row = binomial_row(m);
            let partial: Rational = self
                .values
                .iter()
                .zip(&row)
                .map(|(g, c)| g * Rational::from_integer(c.clone()))
                .sum();
            let rhs = if m == 1 {
                Rational::from_integer(2.into())
            } else {
                Rational::zero()
            };
            self.values
                .push((rhs - partial) / Rational::from_integer(2.into()));
        }
        self.values[n].clone()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

fn bernoulli_cache() -> &'static Mutex<BernoulliCache> {
    static CACHE: OnceLock<Mutex<BernoulliCache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn genocchi_cache() -> &'static Mutex<GenocchiCache> {
    static CACHE: OnceLock<Mutex<GenocchiCache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Exact `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    bernoulli_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(n)
}

/// `G_n` through Genocchi's theorem `G_2k = 2 (1 - 2^2k) B_2k`.
pub fn genocchi_via_bernoulli(n: usize) -> Rational {
    match n {
        0 => Rational::zero(),
        1 => Rational::one(),
        _ if n % 2 == 1 => Rational::zero(),
        _ => {
            let factor = BigInt::from(2) * (BigInt::one() - (BigInt::one() << n));
            Rational::from_integer(factor) * bernoulli(n)
        }
    }
}

/// `G_n` straight from the generating-function recurrence.
pub fn genocchi_via_recurrence(n: usize) -> Rational {
    genocchi_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(n)
}

/// `G_n(x) = sum_k C(n, k) G_k x^(n-k)`, as a polynomial in `x`.
pub fn genocchi_poly(n: usize) -> PolyQ {
    let row = binomial_row(n);
    PolyQ::new(
        (0..=n)
            .map(|p| Rational::from_integer(row[p].clone()) * genocchi_via_recurrence(n - p))
            .collect(),
    )
}

/// `-B_n / n` for `n >= 1`, the value of `zeta(1 - n)`.
///
/// With `B_1 = -1/2` the `n = 1` entry is `+1/2`; the Riemann value
/// `zeta(0)` is `-1/2`, so the identity only matches for `n >= 2`.
pub fn riemann_neg(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("zeta(1 - n) needs n >= 1; s = 1 is a pole"));
    }
    Ok(-bernoulli(n) / Rational::from_integer(n.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int};

    /// Akiyama-Tanigawa produces the B_1 = +1/2 convention; it shares no code
    /// with the recurrence above.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = (0..=n).map(|m| rat(1, m as i64 + 1)).collect();
        for m in 0..=n {
            a[m] = rat(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = rat_int(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), rat_int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(9), rat_int(0));
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        for n in 0..=30 {
            let expect = if n == 1 {
                rat(-1, 2)
            } else {
                akiyama_tanigawa(n)
            };
            assert_eq!(bernoulli(n), expect, "B_{n}");
        }
    }

    #[test]
    fn genocchi_table() {
        let table = [
            (0, 0),
            (1, 1),
            (2, -1),
            (4, 1),
            (6, -3),
            (8, 17),
            (10, -155),
            (12, 2073),
            (7, 0),
        ];
        for (n, g) in table {
            assert_eq!(genocchi_via_bernoulli(n), rat_int(g), "theorem route G_{n}");
            assert_eq!(
                genocchi_via_recurrence(n),
                rat_int(g),
                "recurrence route G_{n}"
            );
        }
    }

    #[test]
    fn routes_agree_and_are_integers() {
        for n in 0..=60 {
            let g = genocchi_via_recurrence(n);
            assert_eq!(genocchi_via_bernoulli(n), g, "G_{n}");
            assert!(g.is_integer());
        }
    }

    #[test]
    fn even_signs_alternate() {
        for k in 1..=30 {
            let g = genocchi_via_recurrence(2 * k);
            let positive = g > rat_int(0);
            assert_eq!(positive, k % 2 == 0, "sign of G_{}", 2 * k);
        }
    }

    #[test]
    fn polynomial_examples_and_appell() {
        assert!(genocchi_poly(0).is_zero());
        assert_eq!(genocchi_poly(1), PolyQ::from_ints(&[1]));
        assert_eq!(genocchi_poly(2), PolyQ::from_ints(&[-1, 2]));
        for n in 1..=20 {
            let p = genocchi_poly(n);
            assert_eq!(p.coeff(0), genocchi_via_recurrence(n));
            assert_eq!(
                p.derivative(),
                genocchi_poly(n - 1).scale(&rat_int(n as i64))
            );
        }
    }

    #[test]
    fn riemann_values() {
        assert_eq!(riemann_neg(1).unwrap(), rat(1, 2));
        assert_eq!(riemann_neg(2).unwrap(), rat(-1, 12));
        assert_eq!(riemann_neg(3).unwrap(), rat_int(0));
        assert!(matches!(riemann_neg(0), Err(Error::Domain(_))));
    }
}
