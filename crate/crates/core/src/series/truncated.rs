use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// c₀ + c₁x + … + c_N x^N, computed exactly modulo x^{N+1}.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![S::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, S::one())
    }

    pub fn constant(order: usize, c: S) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series x.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = S::one();
        }
        s
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> S) -> Self {
        TruncatedSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_fn(order, |i| self.coeff(i))
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    fn common(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.common(other), |i| self.coeff(i) + other.coeff(i))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.common(other), |i| self.coeff(i) - other.coeff(i))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_fn(self.order(), |i| self.coeff(i) * c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self::from_fn(n, |k| (0..=k).fold(S::zero(), |acc, i| acc + self.coeff(i) * other.coeff(k - i)))
    }

    /// Multiplicative inverse; needs c₀ ≠ 0.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::NotInvertible("series with zero constant term".into()));
        }
        let inv0 = S::one() / c0;
        let mut out: Vec<S> = vec![inv0.clone()];
        for k in 1..=self.order() {
            let acc = (1..=k).fold(S::zero(), |acc, i| acc + self.coeff(i) * out[k - i].clone());
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self::from_coeffs(out))
    }

    /// Formal derivative, keeping the order.
    fn derivative(&self) -> Self {
        Self::from_fn(self.order(), |i| self.coeff(i + 1) * S::from_i64(i as i64 + 1))
    }

    /// exp(f) for f with zero constant term, via f′·exp(f) = exp(f)′.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        let d = self.derivative();
        let mut out = vec![S::one()];
        for k in 1..=self.order() {
            // k·e_k = Σ_{j=1}^{k} j f_j e_{k−j}
            let acc = (1..=k).fold(S::zero(), |acc, j| acc + d.coeff(j - 1) * out[k - j].clone());
            out.push(acc / S::from_i64(k as i64));
        }
        Ok(Self::from_coeffs(out))
    }

    /// log(f) for f with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeff(0) != S::one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let q = self.derivative().mul(&self.inverse()?);
        Ok(Self::from_fn(self.order(), |i| if i == 0 { S::zero() } else { q.coeff(i - 1) / S::from_i64(i as i64) }))
    }

    /// self(inner(x)) for inner with zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::Precondition("inner series must have zero constant term".into()));
        }
        let n = self.common(inner);
        let mut out = Self::zero(n);
        // Horner evaluation
        for i in (0..=n).rev() {
            out = out.mul(&inner.truncate(n)).add(&Self::constant(n, self.coeff(i)));
        }
        Ok(out)
    }

    /// f(x) ↦ f(c·x).
    pub fn rescale_argument(&self, c: &S) -> Self {
        let mut p = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * p.clone());
            p = p * c.clone();
        }
        Self::from_coeffs(out)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.render(),
                1 => format!("{}*x", c.render()),
                _ => format!("{}*x^{i}", c.render()),
            })
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("{body} + O(x^{})", self.order() + 1)
    }
}

impl<S: Scalar> fmt::Debug for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
