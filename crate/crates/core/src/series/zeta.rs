//! Bernoulli numbers and even zeta values as exact multiples of powers of π.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, Scalar};

/// B₀..B_m with B₁ = −1/2 and B_odd = 0 beyond index 1.
pub fn bernoulli_numbers(m: u32) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m as usize + 1);
    for k in 0..=m {
        if k == 0 {
            b.push(BigRational::one());
            continue;
        }
        if k > 1 && k % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += binomial(k + 1, j as u32) * bj;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b
}

pub fn bernoulli(m: u32) -> BigRational {
    bernoulli_numbers(m).pop().unwrap_or_else(BigRational::one)
}

/// q · π^power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiValue {
    pub coefficient: BigRational,
    pub power: u32,
}

impl PiValue {
    pub fn new(coefficient: BigRational, power: u32) -> Self {
        PiValue { coefficient, power }
    }

    pub fn mul(&self, other: &Self) -> Self {
        PiValue::new(&self.coefficient * &other.coefficient, self.power + other.power)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        PiValue::new(&self.coefficient * q, self.power)
    }

    /// Ratio of two values with the same π-power.
    pub fn ratio(&self, other: &Self) -> Option<BigRational> {
        if self.power != other.power || other.coefficient.is_zero() {
            return None;
        }
        Some(&self.coefficient / &other.coefficient)
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.power as i32)
    }
}

impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·π^{}", self.coefficient.render(), self.power)
    }
}

fn check_even(s: u32) -> Result<u32> {
    if s == 0 || s % 2 == 1 {
        return Err(Error::Precondition(format!("expected a positive even argument, got {s}")));
    }
    Ok(s / 2)
}

fn pow2(e: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

/// ζ(s) for even s ≥ 2: (−1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!).
pub fn zeta_even(s: u32) -> Result<PiValue> {
    let k = check_even(s)?;
    let b = bernoulli(s);
    let sign = if k % 2 == 1 { b } else { -b };
    Ok(PiValue::new(sign * pow2(s) / (factorial(s) * BigRational::from_integer(2.into())), s))
}

/// ζ(s)/(2πi)^s = −B_s/(2·s!) for even s ≥ 2.
pub fn zeta_over_2pii(s: u32) -> Result<BigRational> {
    check_even(s)?;
    Ok(-bernoulli(s) / (factorial(s) * BigRational::from_integer(2.into())))
}

/// Σ_{n≥1} (n − 1/2)^{−s} = (2^s − 1) ζ(s).
pub fn lambda_half(s: u32) -> Result<PiValue> {
    let z = zeta_even(s)?;
    Ok(z.scale(&(pow2(s) - BigRational::one())))
}

/// λ(s)/(2πi)^s.
pub fn lambda_over_2pii(s: u32) -> Result<BigRational> {
    Ok(zeta_over_2pii(s)? * (pow2(s) - BigRational::one()))
}

/// Σ_{n≥1} (n − shift)^{−s} in floating point: `terms` direct terms summed
/// smallest first, plus an Euler–Maclaurin estimate of the remainder.
pub fn shifted_power_sum(s: u32, shift: f64, terms: usize) -> f64 {
    let s = s as i32;
    let partial: f64 = (1..=terms).rev().map(|l| (l as f64 - shift).powi(-s)).sum();
    let a = terms as f64 - shift;
    let tail = a.powi(1 - s) / (s - 1) as f64 - a.powi(-s) / 2.0 + s as f64 * a.powi(-s - 1) / 12.0;
    partial + tail
}

/// ζ(s)/(2πi)^s from [`shifted_power_sum`], for even s.
pub fn zeta_over_2pii_numeric(s: u32, terms: usize) -> f64 {
    i_power_sign(s) as f64 * shifted_power_sum(s, 0.0, terms) / (2.0 * std::f64::consts::PI).powi(s as i32)
}

/// Sign of (2πi)^s relative to (2π)^s, for cross-checks.
pub fn i_power_sign(s: u32) -> i32 {
    if (s / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(7), rat(0, 1));
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_even(2).unwrap(), PiValue::new(rat(1, 6), 2));
        assert_eq!(zeta_even(4).unwrap(), PiValue::new(rat(1, 90), 4));
        assert_eq!(zeta_over_2pii(2).unwrap(), rat(-1, 24));
        assert_eq!(zeta_over_2pii(4).unwrap(), rat(1, 1440));
        assert!(zeta_even(3).is_err());
        assert!(zeta_even(0).is_err());
        // ζ(2k)/(2πi)^{2k} agrees with the π-form
        for s in (2..=12).step_by(2) {
            let z = zeta_even(s).unwrap();
            let two_pow = BigRational::from_integer(BigInt::one() << s);
            let via_pi = z.coefficient / two_pow * BigRational::from_integer(i_power_sign(s).into());
            assert_eq!(via_pi, zeta_over_2pii(s).unwrap());
        }
    }

    #[test]
    fn zeta_numeric_summation() {
        for s in [2, 4, 6] {
            let exact = num_traits::ToPrimitive::to_f64(&zeta_over_2pii(s).unwrap()).unwrap();
            assert!((zeta_over_2pii_numeric(s, 1000) - exact).abs() < 1e-12, "s = {s}");
        }
        assert!((shifted_power_sum(2, 0.0, 1000) - zeta_even(2).unwrap().to_f64()).abs() < 1e-12);
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_half(2).unwrap(), PiValue::new(rat(1, 2), 2));
        assert_eq!(lambda_half(4).unwrap(), PiValue::new(rat(1, 6), 4));
        assert_eq!(lambda_half(2).unwrap().ratio(&zeta_even(2).unwrap()), Some(rat(3, 1)));
        let direct: f64 = (1..200_000).map(|n| 1.0 / (n as f64 - 0.5).powi(2)).sum();
        // midpoint rule for the tail Σ_{n≥N} (n − 1/2)^{−2} ≈ ∫_{N−1}^∞ x^{−2} dx
        let tail = 1.0 / (200_000.0 - 1.0);
        assert!((direct + tail - lambda_half(2).unwrap().to_f64()).abs() < 1e-10);
    }
}
