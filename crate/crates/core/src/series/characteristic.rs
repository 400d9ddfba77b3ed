//! The characteristic series of the L-genus and their zeta-product forms.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::scalar::{factorial, Scalar};
use crate::series::truncated::TruncatedSeries;
use crate::series::zeta::{lambda_over_2pii, zeta_over_2pii};

fn half_power<S: Scalar>(k: usize) -> S {
    S::one() / S::from_i64(1i64 << k)
}

/// sinh(x/2)/(x/2) = Σ x^{2k}/(4^k (2k+1)!).
pub fn series_sinh_half<S: Scalar>(order: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_fn(order, |i| {
        if i % 2 == 1 {
            S::zero()
        } else {
            half_power::<S>(i) / S::from_rational(&factorial(i as u32 + 1))
        }
    })
}

/// cosh(x/2) = Σ x^{2k}/(4^k (2k)!).
pub fn series_cosh_half<S: Scalar>(order: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_fn(order, |i| {
        if i % 2 == 1 {
            S::zero()
        } else {
            half_power::<S>(i) / S::from_rational(&factorial(i as u32))
        }
    })
}

/// cosh(x) = Σ x^{2k}/(2k)!.
pub fn series_cosh_full<S: Scalar>(order: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_fn(order, |i| {
        if i % 2 == 1 {
            S::zero()
        } else {
            S::one() / S::from_rational(&factorial(i as u32))
        }
    })
}

/// (x/2)/tanh(x/2) = cosh(x/2) · (x/2)/sinh(x/2).
pub fn l_series<S: Scalar>(order: usize) -> TruncatedSeries<S> {
    let inv = series_sinh_half::<S>(order).inverse().expect("sinh(x/2)/(x/2) has constant term 1");
    series_cosh_half::<S>(order).mul(&inv)
}

/// −Σ_k x^{2k}·2c_k/(2k) for the given sequence c_k.
fn zeta_exponent(order: usize, c: impl Fn(u32) -> Result<BigRational>) -> Result<TruncatedSeries<BigRational>> {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for s in (2..=order as u32).step_by(2) {
        coeffs[s as usize] = -c(s)? * BigRational::from_integer(2.into()) / BigRational::from_integer(s.into());
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// exp(−Σ x^{2k}·2ζ(2k)/(2k(2πi)^{2k})).
pub fn sinh_product_form(order: usize) -> Result<TruncatedSeries<BigRational>> {
    zeta_exponent(order, zeta_over_2pii)?.exp()
}

/// exp(−Σ x^{2k}·2λ(2k)/(2k(2πi)^{2k})) with λ(s) = Σ (n − 1/2)^{−s}.
pub fn cosh_product_form(order: usize) -> Result<TruncatedSeries<BigRational>> {
    zeta_exponent(order, lambda_over_2pii)?.exp()
}

/// log of the L-series assembled from the two product forms:
/// Σ x^{2k}·2(ζ(2k) − λ(2k))/(2k(2πi)^{2k}).
pub fn log_l_series_from_zeta(order: usize) -> Result<TruncatedSeries<BigRational>> {
    let zeta = zeta_exponent(order, zeta_over_2pii)?;
    let lambda = zeta_exponent(order, lambda_over_2pii)?;
    Ok(lambda.sub(&zeta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub power: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentialFormsReport {
    pub order: usize,
    /// sinh(x/2)/(x/2) against the ζ-product form.
    pub sinh_half: Option<Mismatch>,
    /// cosh(x/2) against the λ-product form.
    pub cosh_half: Option<Mismatch>,
    /// cosh(x) against the same λ-product form.
    pub cosh_full: Option<Mismatch>,
}

impl ExponentialFormsReport {
    /// Both identities that should hold do hold.
    pub fn product_formulas_hold(&self) -> bool {
        self.sinh_half.is_none() && self.cosh_half.is_none()
    }

    /// Which reading of the cosh display matches the product: "cosh(x/2)", "cosh(x)", or "neither".
    pub fn cosh_reading(&self) -> &'static str {
        match (&self.cosh_half, &self.cosh_full) {
            (None, Some(_)) => "cosh(x/2)",
            (Some(_), None) => "cosh(x)",
            (None, None) => "both",
            (Some(_), Some(_)) => "neither",
        }
    }
}

fn first_mismatch(expected: &TruncatedSeries<BigRational>, actual: &TruncatedSeries<BigRational>) -> Option<Mismatch> {
    (0..=expected.order().min(actual.order())).find(|&i| expected.coeff(i) != actual.coeff(i)).map(|i| Mismatch {
        power: i,
        expected: expected.coeff(i).render(),
        actual: actual.coeff(i).render(),
    })
}

/// Compares the Taylor series with the zeta-product forms up to x^order.
pub fn verify_exponential_forms(order: usize) -> Result<ExponentialFormsReport> {
    let sinh_prod = sinh_product_form(order)?;
    let cosh_prod = cosh_product_form(order)?;
    Ok(ExponentialFormsReport {
        order,
        sinh_half: first_mismatch(&sinh_prod, &series_sinh_half(order)),
        cosh_half: first_mismatch(&cosh_prod, &series_cosh_half(order)),
        cosh_full: first_mismatch(&cosh_prod, &series_cosh_full(order)),
    })
}

/// Checks log(l_series) against the zeta-assembled exponent, returning the
/// first disagreeing power if any.
pub fn check_log_l_series(order: usize) -> Result<Option<Mismatch>> {
    let direct = l_series::<BigRational>(order).log()?;
    Ok(first_mismatch(&log_l_series_from_zeta(order)?, &direct))
}
