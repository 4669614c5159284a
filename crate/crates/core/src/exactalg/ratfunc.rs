use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::fmt_poly;
use super::{PolyQ, Rational};
use crate::error::{Error, Result};

/// Reduced rational function `num / den` in the indeterminate `q`.
///
/// Invariants: `den` is nonzero and monic, `gcd(num, den) = 1`, and zero is
/// `0 / 1`. Every constructor and operator re-establishes them, so `==` is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: PolyQ,
    den: PolyQ,
}

/// Integer-coefficient form of a [`RatFuncQ`]: value = `scale * num / den`.
///
/// `den` is primitive with a positive leading coefficient and `scale` is
/// `1/k` for the least positive integer `k` that makes `num` integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalParts {
    pub num: Vec<BigInt>,
    pub den: Vec<BigInt>,
    pub scale: Rational,
}

impl RatFuncQ {
    /// Reduce `num / den` to canonical form.
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        Ok(Self::reduce_unchecked(num, den))
    }

    fn reduce_unchecked(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Self::normalize_lead(num, den)
    }

    /// Assumes `gcd(num, den) = 1`; only makes `den` monic.
    fn normalize_lead(num: PolyQ, den: PolyQ) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFuncQ { num, den }
        } else {
            let inv = lc.recip();
            RatFuncQ {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFuncQ {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyQ::one())
    }

    pub fn q() -> Self {
        Self::from_poly(PolyQ::var())
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFuncQ {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(PolyQ::constant(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize_lead(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn powi(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFuncQ {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact value at `q0`.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole { at: q0.clone() });
        }
        Ok(self.num.eval(q0) / d)
    }

    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.num.eval_f64(q0) / self.den.eval_f64(q0)
    }

    /// Substitute `q -> q^d`. Both parts stay coprime under the substitution,
    /// and a monic denominator stays monic, so no re-reduction is needed.
    pub fn subst_qpow(&self, d: usize) -> Self {
        assert!(d >= 1, "substitution exponent must be positive");
        RatFuncQ {
            num: self.num.subst_pow(d),
            den: self.den.subst_pow(d),
        }
    }

    pub fn canonical_parts(&self) -> CanonicalParts {
        let (_, den) = self.den.primitive_integer();
        // den is monic, so den_int = L * den with L = leading coefficient of
        // the primitive integer form.
        let lead = Rational::from_integer(den.last().cloned().unwrap_or_else(BigInt::one));
        let num_q = self.num.scale(&lead);
        let k = num_q
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let kq = Rational::from_integer(k.clone());
        let num = num_q
            .coeffs()
            .iter()
            .map(|c| (c * &kq).to_integer())
            .collect();
        CanonicalParts {
            num,
            den,
            scale: Rational::new(BigInt::one(), k),
        }
    }

    pub fn from_canonical_parts(parts: &CanonicalParts) -> Result<Self> {
        let num = PolyQ::from_bigints(&parts.num).scale(&parts.scale);
        Self::new(num, PolyQ::from_bigints(&parts.den))
    }
}

impl CanonicalParts {
    pub fn scale_text(&self) -> String {
        format!("{}/{}", self.scale.numer(), self.scale.denom())
    }
}

impl Default for RatFuncQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add<&RatFuncQ> for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFuncQ::from_poly(&self.num + &rhs.num);
        }
        // Henrici: with g = gcd(b, d), a/b + c/d = t / (b d/g) where
        // t = a (d/g) + c (b/g), and only gcd(t, g) can cancel.
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RatFuncQ::normalize_lead(num, den);
        }
        let b1 = self.den.exact_div(&g);
        let d1 = rhs.den.exact_div(&g);
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return RatFuncQ::zero();
        }
        let h = t.gcd(&g);
        let (t, g) = if h.is_one() {
            (t, g)
        } else {
            (t.exact_div(&h), g.exact_div(&h))
        };
        RatFuncQ::normalize_lead(t, &(&b1 * &d1) * &g)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub<&RatFuncQ> for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Mul<&RatFuncQ> for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        // Cross-cancel: (a/b)(c/d) with g1 = gcd(a, d), g2 = gcd(c, b).
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel = |p: &PolyQ, g: &PolyQ| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g)
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        RatFuncQ::normalize_lead(num, den)
    }
}

impl Div<&RatFuncQ> for &RatFuncQ {
    type Output = RatFuncQ;
    /// Panics on division by zero, like rational division.
    fn div(self, rhs: &RatFuncQ) -> RatFuncQ {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFuncQ> for RatFuncQ {
            type Output = RatFuncQ;
            fn $m(self, rhs: RatFuncQ) -> RatFuncQ {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFuncQ> for RatFuncQ {
            type Output = RatFuncQ;
            fn $m(self, rhs: &RatFuncQ) -> RatFuncQ {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -&self
    }
}

impl std::iter::Sum for RatFuncQ {
    fn sum<I: Iterator<Item = RatFuncQ>>(iter: I) -> Self {
        iter.fold(RatFuncQ::zero(), |acc, v| &acc + &v)
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_poly(&self.num, "q", f);
        }
        write!(f, "(")?;
        fmt_poly(&self.num, "q", f)?;
        write!(f, ")/(")?;
        fmt_poly(&self.den, "q", f)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int};

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFuncQ {
        RatFuncQ::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), RatFuncQ::from_poly(p(&[1, 1])));
        let z = rf(&[0], &[3, 1]);
        assert!(z.is_zero());
        assert!(z.den().is_one());
        let h = rf(&[2, 2], &[4]);
        assert!(h.den().is_one());
        assert_eq!(h.num(), &PolyQ::new(vec![rat(1, 2), rat(1, 2)]));
        assert!(matches!(
            RatFuncQ::new(p(&[1]), PolyQ::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            RatFuncQ::from_poly(p(&[1, 1])).eval(&rat_int(1)).unwrap(),
            rat_int(2)
        );
        let pole = rf(&[1], &[1, -1]);
        assert_eq!(pole.eval(&rat_int(1)), Err(Error::Pole { at: rat_int(1) }));
        // -2q/(1+q^2) at 1/2: numerator -1, denominator 5/4.
        let g2 = rf(&[0, -2], &[1, 0, 1]);
        let half = rat(1, 2);
        assert_eq!(g2.num().eval(&half) / g2.den().eval(&half), rat(-4, 5));
        assert_eq!(g2.eval(&half).unwrap(), rat(-4, 5));
    }

    #[test]
    fn subst_examples() {
        assert_eq!(
            RatFuncQ::from_poly(p(&[1, 1])).subst_qpow(3),
            RatFuncQ::from_poly(p(&[1, 0, 0, 1]))
        );
        assert_eq!(rf(&[1], &[1, 1]).subst_qpow(2), rf(&[1], &[1, 0, 1]));
        assert_eq!(
            rf(&[0, -2], &[1, 0, 1]).subst_qpow(3),
            rf(&[0, 0, 0, -2], &[1, 0, 0, 0, 0, 0, 1])
        );
        let f = rf(&[3, 1], &[1, 0, 2]);
        assert_eq!(f.subst_qpow(1), f);
    }

    #[test]
    fn henrici_paths_agree_with_naive_reduction() {
        let a = rf(&[1], &[1, 1]);
        let b = rf(&[1, 0, 1], &[-1, 0, 1]);
        let naive = RatFuncQ::new(
            &(a.num() * b.den()) + &(b.num() * a.den()),
            a.den() * b.den(),
        )
        .unwrap();
        assert_eq!(&a + &b, naive);
        assert!((&a - &a).is_zero());
        assert_eq!(&a * &a.inv().unwrap(), RatFuncQ::one());
    }

    #[test]
    fn canonical_parts_example() {
        let g2 = rf(&[0, -2], &[1, 0, 1]);
        let parts = g2.canonical_parts();
        assert_eq!(parts.num, vec![BigInt::from(0), BigInt::from(-2)]);
        assert_eq!(
            parts.den,
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(parts.scale_text(), "1/1");
        let odd = RatFuncQ::new(PolyQ::new(vec![rat(1, 3), rat(1, 2)]), p(&[1, 2])).unwrap();
        let parts = odd.canonical_parts();
        assert_eq!(parts.den, vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(parts.scale, rat(1, 6));
        assert_eq!(RatFuncQ::from_canonical_parts(&parts).unwrap(), odd);
    }

    #[test]
    fn display() {
        assert_eq!(rf(&[0, -2], &[1, 0, 1]).to_string(), "(-2*q)/(1 + q^2)");
        assert_eq!(RatFuncQ::from_int(3).to_string(), "3");
    }
}
