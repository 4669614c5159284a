//! Finite-depth fermionic q-integral.
//!
//! `I_{-q}(f)` is approximated by the normalised sum
//! `S_N = (1 / [p^N]_{-q}) sum_{y < p^N} f(y) (-q)^y` for real `0 < q < 1`.
//! As `N` grows this tends to `[2]_q sum_m (-1)^m q^m f(m)`, which makes it
//! an independent oracle for the series and symbolic routes.

use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::numeric::check_q;
use crate::qgenocchi::qbracket_neg;

/// Largest `p^N` the summation is allowed to visit.
pub const DEPTH_BUDGET: u64 = 10_000_000;

/// Odd prime `p` and depth exponent `N`; the sum runs over `p^N` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DepthConfig {
    p: u64,
    depth: u32,
}

impl DepthConfig {
    pub fn new(p: u64, depth: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::domain(format!("p must be an odd prime, got {p}")));
        }
        if depth == 0 {
            return Err(Error::domain("depth exponent must be at least 1"));
        }
        match p.checked_pow(depth) {
            Some(size) if size <= DEPTH_BUDGET => Ok(DepthConfig { p, depth }),
            _ => Err(Error::domain(format!(
                "{p}^{depth} exceeds the summation budget of {DEPTH_BUDGET}"
            ))),
        }
    }

    /// Smallest depth with `q^(p^N) < tol`.
    pub fn for_tolerance(p: u64, q: f64, tol: f64) -> Result<Self> {
        check_q(TwoFloat::from(q))?;
        let mut depth = 1;
        loop {
            let cfg = Self::new(p, depth)?;
            if q.powf(cfg.size() as f64) < tol {
                return Ok(cfg);
            }
            depth += 1;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.depth)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `S_N` for `f` at depth `p^N`, accumulated in ascending `y` with
/// error-free two-sum compensation.
pub fn fermionic_sum(f: impl Fn(f64) -> f64, q: f64, depth: &DepthConfig) -> Result<f64> {
    check_q(TwoFloat::from(q))?;
    let size = depth.size();
    let mut acc = TwoFloat::from(0.0);
    let mut weight = 1.0; // (-q)^y
    for y in 0..size {
        if weight == 0.0 {
            break;
        }
        acc += f(y as f64) * weight;
        weight *= -q;
    }
    let norm = qbracket_neg(size, q)?;
    Ok((acc.hi() + acc.lo()) / norm)
}

/// Distance from `S_N` to its limit for `|f| <= sup_f` on the nonnegative
/// integers: both the normaliser and the truncated tail move the value by at
/// most `[2]_q q^(p^N) sup_f / (1 - q)`.
pub fn depth_error_bound(sup_f: f64, q: f64, depth: &DepthConfig) -> f64 {
    2.0 * (1.0 + q) * q.powf(depth.size() as f64) * sup_f / (1.0 - q)
}

/// `|q S_N(f(. + 1)) + S_N(f) - [2]_q f(0)|`, the defect of the fermionic
/// integral equation at finite depth.
pub fn integral_equation_residual(
    f: impl Fn(f64) -> f64,
    q: f64,
    depth: &DepthConfig,
) -> Result<f64> {
    let shifted = fermionic_sum(|y| f(y + 1.0), q, depth)?;
    let plain = fermionic_sum(&f, q, depth)?;
    Ok((q * shifted + plain - (1.0 + q) * f(0.0)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgenocchi::qbracket;

    fn bracket(q: f64) -> impl Fn(f64) -> f64 {
        move |y| qbracket(y, q).unwrap()
    }

    #[test]
    fn depth_guard() {
        assert!(DepthConfig::new(3, 14).is_ok());
        assert!(DepthConfig::new(3, 15).is_err());
        assert!(DepthConfig::new(9, 2).is_err());
        assert!(DepthConfig::new(2, 5).is_err());
        assert!(DepthConfig::new(5, 0).is_err());
        let d = DepthConfig::for_tolerance(3, 0.7, 1e-12).unwrap();
        assert_eq!(d.depth(), 4);
        assert!(0.7f64.powf(d.size() as f64) < 1e-12);
    }

    #[test]
    fn constant_matches_geometric_closed_form() {
        for (q, n) in [(0.5f64, 1), (0.5, 2), (0.7, 3)] {
            let depth = DepthConfig::new(3, n).unwrap();
            let size = depth.size() as i32;
            // sum_{y<P} (-q)^y = (1 - (-q)^P) / (1 + q) = [P]_{-q}.
            let partial = (1.0 - (-q).powi(size)) / (1.0 + q);
            let expect = partial / qbracket_neg(depth.size(), q).unwrap();
            let got = fermionic_sum(|_| 1.0, q, &depth).unwrap();
            assert!((got - expect).abs() < 1e-15);
            assert!((got - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn bracket_integrand_gives_half_g2() {
        let depth = DepthConfig::new(3, 10).unwrap();
        let v = fermionic_sum(bracket(0.5), 0.5, &depth).unwrap();
        assert!((v + 0.4).abs() < 1e-8, "{v}");
    }

    #[test]
    fn integral_equation_examples() {
        let depth = DepthConfig::new(3, 2).unwrap();
        assert!(integral_equation_residual(|_| 2.5, 0.4, &depth).unwrap() < 1e-15);
        let depth = DepthConfig::new(3, 12).unwrap();
        assert!(integral_equation_residual(bracket(0.5), 0.5, &depth).unwrap() <= 1e-8);
        let depth = DepthConfig::new(3, 14).unwrap();
        let f = |y: f64| (0.3 + qbracket(y, 0.7).unwrap()).powi(2);
        assert!(integral_equation_residual(f, 0.7, &depth).unwrap() <= 1e-6);
    }

    #[test]
    fn normalizer_closed_form_for_odd_sizes() {
        for n in 1..=4 {
            let size = 3u64.pow(n);
            let q: f64 = 0.6;
            let closed = (1.0 + q.powf(size as f64)) / (1.0 + q);
            assert!((qbracket_neg(size, q).unwrap() - closed).abs() < 1e-15);
        }
    }

    #[test]
    fn error_bound_covers_the_limit() {
        // f(y) = [y]_q has limit -0.4 at q = 1/2 and |f| <= 2.
        for n in 1..=4 {
            let depth = DepthConfig::new(3, n).unwrap();
            let v = fermionic_sum(bracket(0.5), 0.5, &depth).unwrap();
            assert!((v + 0.4).abs() <= depth_error_bound(2.0, 0.5, &depth) + 1e-15);
        }
    }

    #[test]
    fn successive_depths_collapse() {
        let q = 0.8;
        let f = |y: f64| (0.5 + qbracket(y, q).unwrap()).powi(3);
        let s: Vec<f64> = (1..=4)
            .map(|n| fermionic_sum(f, q, &DepthConfig::new(3, n).unwrap()).unwrap())
            .collect();
        for n in 0..3 {
            let diff = (s[n + 1] - s[n]).abs();
            // C = 4 [2]_q B^3 / (1 - q) with B = 0.5 + 1/(1 - q).
            let c = 4.0 * (1.0 + q) * (0.5 + 1.0 / (1.0 - q)).powi(3) / (1.0 - q);
            let scale = q.powf(3f64.powi(n as i32 + 1));
            assert!(
                diff <= c * scale + 1e-14,
                "depth {} diff {diff} scale {scale}",
                n + 1
            );
        }
    }
}
