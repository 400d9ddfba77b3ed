//! Exact power series, zeta values and characteristic classes.

pub mod characteristic;
pub mod graded;
pub mod truncated;
pub mod zeta;

pub use characteristic::{
    check_log_l_series, cosh_product_form, l_series, log_l_series_from_zeta, series_cosh_full, series_cosh_half,
    series_sinh_half, sinh_product_form, verify_exponential_forms, ExponentialFormsReport, Mismatch,
};
pub use graded::{
    convert_basis, monomial_key, multiplicative_sequence, pontryagin_to_powersums, powersums_to_pontryagin, weight,
    Basis, GradedPolynomial,
};
pub use truncated::TruncatedSeries;
pub use zeta::{
    bernoulli, bernoulli_numbers, i_power_sign, lambda_half, lambda_over_2pii, shifted_power_sum, zeta_even,
    zeta_over_2pii, zeta_over_2pii_numeric, PiValue,
};

use crate::error::Result;
use num_rational::BigRational;

/// Default truncation K: classes up to p_K, cohomological degree 4K.
pub const DEFAULT_TRUNCATION: usize = 4;

/// x/tanh(x), the series (x/2)/tanh(x/2) at doubled argument.
pub fn hirzebruch_series(order: usize) -> TruncatedSeries<BigRational> {
    l_series::<BigRational>(order).rescale_argument(&BigRational::from_integer(2.into()))
}

/// L₁..L_K, the Hirzebruch L-polynomials of x/tanh(x).
///
/// The sequence of (x/2)/tanh(x/2) itself is 4^{−k}·L_k in weight k.
pub fn l_polynomials(k_max: usize) -> Result<Vec<GradedPolynomial<BigRational>>> {
    multiplicative_sequence(&hirzebruch_series(2 * k_max), k_max)
}
