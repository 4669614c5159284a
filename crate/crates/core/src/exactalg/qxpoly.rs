use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{RatFuncQ, Rational};
use crate::error::{Error, Result};

/// Polynomial in `x` whose coefficients are rational functions of `q`,
/// ascending degree, trailing zeros stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QXPoly {
    coeffs: Vec<RatFuncQ>,
}

impl QXPoly {
    pub fn new(mut coeffs: Vec<RatFuncQ>) -> Self {
        while coeffs.last().is_some_and(RatFuncQ::is_zero) {
            coeffs.pop();
        }
        QXPoly { coeffs }
    }

    pub fn zero() -> Self {
        QXPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: RatFuncQ) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::new(vec![RatFuncQ::zero(), RatFuncQ::one()])
    }

    pub fn coeffs(&self) -> &[RatFuncQ] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFuncQ {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer(i.into())))
                .collect(),
        )
    }

    /// `P(alpha * x + beta)`, expanded.
    pub fn compose_affine(&self, alpha: &RatFuncQ, beta: &RatFuncQ) -> Self {
        let inner = QXPoly::new(vec![beta.clone(), alpha.clone()]);
        // Horner in the composed argument.
        self.coeffs.iter().rev().fold(QXPoly::zero(), |acc, c| {
            &(&acc * &inner) + &QXPoly::constant(c.clone())
        })
    }

    /// Apply `q -> q^d` to every coefficient.
    pub fn subst_qpow(&self, d: usize) -> Self {
        QXPoly {
            coeffs: self.coeffs.iter().map(|c| c.subst_qpow(d)).collect(),
        }
    }

    /// Specialise `q` exactly, leaving a polynomial in `x` over the rationals.
    pub fn eval_q(&self, q0: &Rational) -> Result<super::PolyQ> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                c.eval(q0).map_err(|_| Error::PoleInCoefficient {
                    index,
                    at: q0.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(super::PolyQ::new(coeffs))
    }

    pub fn eval(&self, q0: &Rational, x0: &Rational) -> Result<Rational> {
        Ok(self.eval_q(q0)?.eval(x0))
    }
}

impl Add<&QXPoly> for &QXPoly {
    type Output = QXPoly;
    fn add(self, rhs: &QXPoly) -> QXPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QXPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&QXPoly> for &QXPoly {
    type Output = QXPoly;
    fn sub(self, rhs: &QXPoly) -> QXPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QXPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&QXPoly> for &QXPoly {
    type Output = QXPoly;
    fn mul(self, rhs: &QXPoly) -> QXPoly {
        if self.is_zero() || rhs.is_zero() {
            return QXPoly::zero();
        }
        let mut out = vec![RatFuncQ::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QXPoly::new(out)
    }
}

impl Neg for &QXPoly {
    type Output = QXPoly;
    fn neg(self) -> QXPoly {
        QXPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for QXPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (c.is_one(), i) {
                (true, 0) => write!(f, "1")?,
                (true, _) => write!(f, "{power}")?,
                (false, 0) => write!(f, "[{c}]")?,
                (false, _) => write!(f, "[{c}]*{power}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int, PolyQ};

    fn rf(n: &[i64], d: &[i64]) -> RatFuncQ {
        RatFuncQ::new(PolyQ::from_ints(n), PolyQ::from_ints(d)).unwrap()
    }

    fn c(v: i64) -> RatFuncQ {
        RatFuncQ::from_int(v)
    }

    #[test]
    fn compose_affine_examples() {
        let x2 = QXPoly::new(vec![c(0), c(0), c(1)]);
        assert_eq!(x2.compose_affine(&c(1), &c(0)), x2);
        let q = RatFuncQ::q();
        assert_eq!(
            QXPoly::x().compose_affine(&q, &c(1)),
            QXPoly::new(vec![c(1), q.clone()])
        );
        assert_eq!(x2.compose_affine(&c(0), &q), QXPoly::constant(&q * &q));
    }

    #[test]
    fn derivative_examples() {
        let x3 = QXPoly::new(vec![c(0), c(0), c(0), c(1)]);
        assert_eq!(x3.derivative(), QXPoly::new(vec![c(0), c(0), c(3)]));
        assert!(QXPoly::constant(rf(&[1], &[1, 1])).derivative().is_zero());
        let p = QXPoly::new(vec![c(0), c(1), RatFuncQ::q()]);
        assert_eq!(
            p.derivative(),
            QXPoly::new(vec![c(1), RatFuncQ::q().scale(&rat_int(2))])
        );
    }

    #[test]
    fn eval_examples() {
        let half = rat(1, 2);
        let p = QXPoly::new(vec![RatFuncQ::q(), c(1)]);
        assert_eq!(p.eval(&half, &half).unwrap(), rat_int(1));
        assert_eq!(QXPoly::zero().eval(&half, &rat(3, 7)).unwrap(), rat_int(0));
        let g2 = QXPoly::new(vec![rf(&[0, -2], &[1, 0, 1]), c(2)]);
        assert_eq!(g2.eval(&half, &rat_int(0)).unwrap(), rat(-4, 5));
        let poles = QXPoly::new(vec![c(1), rf(&[1], &[-1, 1])]);
        assert_eq!(
            poles.eval(&rat_int(1), &rat_int(0)),
            Err(Error::PoleInCoefficient {
                index: 1,
                at: rat_int(1)
            })
        );
    }
}
