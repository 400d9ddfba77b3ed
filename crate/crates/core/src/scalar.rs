//! Coefficient rings.
//!
//! Every algebraic structure in this crate is generic over a [`Scalar`]. The
//! exact paths use [`BigRational`] or Gaussian rationals
//! (`Complex<BigRational>`); `f64` and `Complex<f64>` exist for numeric
//! cross-checks only.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// A commutative field of characteristic zero.
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> + Send + Sync + 'static {
    fn from_rational(q: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Canonical text form, used by golden renderings.
    fn render(&self) -> String;
}

/// A scalar field containing a square root of -1.
pub trait ComplexScalar: Scalar {
    fn i() -> Self;
    fn conj(&self) -> Self;
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        format!("{self:e}")
    }
}

impl Scalar for Complex<BigRational> {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }

    fn render(&self) -> String {
        let re = &self.re;
        let im = &self.im;
        match (re.is_zero(), im.is_zero()) {
            (_, true) => re.render(),
            (true, false) => render_imaginary(im),
            (false, false) => {
                let sign = if im.is_negative() { "-" } else { "+" };
                format!("({}{}{})", re.render(), sign, render_imaginary(&im.abs()))
            }
        }
    }
}

fn render_imaginary(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if (-im.clone()).is_one() {
        "-i".to_string()
    } else {
        format!("{}i", im.render())
    }
}

impl ComplexScalar for Complex<BigRational> {
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

impl Scalar for Complex<f64> {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(f64::from_rational(q), 0.0)
    }

    fn render(&self) -> String {
        format!("({:e}{:+e}i)", self.re, self.im)
    }
}

impl ComplexScalar for Complex<f64> {
    fn i() -> Self {
        Complex::new(0.0, 1.0)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

/// Shorthand for an exact rational.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact integer as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// n! as an exact rational.
pub fn factorial(n: u32) -> BigRational {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    BigRational::from_integer(acc)
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u32, k: u32) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Parses "a", "-a" or "a/b" into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Qi = Complex<BigRational>;

    #[test]
    fn gaussian_unit_squares_to_minus_one() {
        let i = Qi::i();
        assert_eq!(i.clone() * i, Qi::from_i64(-1));
    }

    #[test]
    fn renders_are_canonical() {
        assert_eq!(rat(2, 4).render(), "1/2");
        assert_eq!(Qi::new(rat(1, 2), rat(-3, 1)).render(), "(1/2-3i)");
        assert_eq!(Qi::new(int(0), int(-1)).render(), "-i");
    }

    #[test]
    fn parse_rational_accepts_fractions() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
    }
}
