//! Gamma, Beta and binomial coefficients, evaluated in log space.

use num_traits::Float;

use crate::error::{invalid, Result};

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(invalid("gamma requires x > 0"));
    }
    Ok(libm::tgamma(x))
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(invalid("beta requires x, y > 0"));
    }
    Ok((ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp())
}

/// Generalized binomial coefficient `Γ(a+1) / (Γ(b+1) Γ(a-b+1))`; exact
/// product form when both arguments are nonnegative integers.
pub fn binom(a: f64, b: f64) -> Result<f64> {
    if !(b >= 0.0 && a >= b) {
        return Err(invalid("binom requires 0 <= b <= a"));
    }
    if a.fract() == 0.0 && b.fract() == 0.0 && a <= 170.0 {
        let (a, b) = (a as u64, b as u64);
        let k = b.min(a - b);
        let mut acc = 1.0;
        for i in 0..k {
            acc = acc * (a - i) as f64 / (i + 1) as f64;
        }
        return Ok(acc.round());
    }
    Ok((ln_gamma(a + 1.0) - ln_gamma(b + 1.0) - ln_gamma(a - b + 1.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 24.0 * 1e-12);
        assert!((gamma(0.5).unwrap() - core::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!(gamma(0.0).is_err());
    }

    #[test]
    fn beta_values() {
        assert!((beta(2.0, 3.0).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!((2.0 * beta(2.0, 3.0).unwrap() - 1.0 / binom(4.0, 2.0).unwrap()).abs() < 1e-15);
        assert!(beta(-1.0, 1.0).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binom(10.0, 3.0).unwrap(), 120.0);
        assert_eq!(binom(9.0, 0.0).unwrap(), 1.0);
        assert!((binom(2.5, 1.0).unwrap() - 2.5).abs() < 1e-12);
    }
}
