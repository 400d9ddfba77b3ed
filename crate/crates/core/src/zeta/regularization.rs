//! Zeta-regularized products and inverse-power traces of d/dt on the circle of length r.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::berezin::BoundaryCondition;
use crate::scalar::{rat, Scalar};
use crate::series::zeta::{lambda_over_2pii, zeta_over_2pii};

/// a·log r + b·log 2π + c·log 2, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogLinear {
    pub log_r: BigRational,
    pub log_two_pi: BigRational,
    pub log_two: BigRational,
}

impl LogLinear {
    pub fn log_r(c: BigRational) -> Self {
        LogLinear { log_r: c, ..Default::default() }
    }

    pub fn log_two_pi(c: BigRational) -> Self {
        LogLinear { log_two_pi: c, ..Default::default() }
    }

    pub fn log_two(c: BigRational) -> Self {
        LogLinear { log_two: c, ..Default::default() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LogLinear { log_r: &self.log_r * c, log_two_pi: &self.log_two_pi * c, log_two: &self.log_two * c }
    }
}

impl Add for LogLinear {
    type Output = LogLinear;
    fn add(self, o: LogLinear) -> LogLinear {
        LogLinear {
            log_r: self.log_r + o.log_r,
            log_two_pi: self.log_two_pi + o.log_two_pi,
            log_two: self.log_two + o.log_two,
        }
    }
}

impl Neg for LogLinear {
    type Output = LogLinear;
    fn neg(self) -> LogLinear {
        self.scale(&-BigRational::one())
    }
}

impl Sub for LogLinear {
    type Output = LogLinear;
    fn sub(self, o: LogLinear) -> LogLinear {
        self + (-o)
    }
}

/// 2^{two_exponent} · r^{r_exponent} with r the symbolic circle length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RPower {
    #[serde(serialize_with = "ser_rational")]
    pub r_exponent: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub two_exponent: BigRational,
}

fn ser_rational<Sr: serde::Serializer>(q: &BigRational, s: Sr) -> std::result::Result<Sr::Ok, Sr::Error> {
    s.serialize_str(&q.render())
}

impl RPower {
    pub fn one() -> Self {
        RPower { r_exponent: BigRational::zero(), two_exponent: BigRational::zero() }
    }

    pub fn r(exponent: BigRational) -> Self {
        RPower { r_exponent: exponent, two_exponent: BigRational::zero() }
    }

    pub fn is_one(&self) -> bool {
        self.r_exponent.is_zero() && self.two_exponent.is_zero()
    }

    pub fn pow(&self, q: &BigRational) -> Self {
        RPower { r_exponent: &self.r_exponent * q, two_exponent: &self.two_exponent * q }
    }

    pub fn inverse(&self) -> Self {
        self.pow(&-BigRational::one())
    }

    /// exp of a symbolic logarithm; fails if a log 2π part survives.
    pub fn from_log(log: &LogLinear) -> Result<Self> {
        if !log.log_two_pi.is_zero() {
            return Err(Error::Convention(format!("log 2π coefficient {} does not cancel", log.log_two_pi.render())));
        }
        Ok(RPower { r_exponent: log.log_r.clone(), two_exponent: log.log_two.clone() })
    }
}

impl Mul for RPower {
    type Output = RPower;
    fn mul(self, o: RPower) -> RPower {
        RPower { r_exponent: self.r_exponent + o.r_exponent, two_exponent: self.two_exponent + o.two_exponent }
    }
}

impl fmt::Display for RPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.two_exponent.is_zero() {
            parts.push(format!("2^({})", self.two_exponent.render()));
        }
        if !self.r_exponent.is_zero() {
            parts.push(format!("r^({})", self.r_exponent.render()));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// −ζ′_seq(0) for ζ_seq(s) = (r/2π)^{ns}·Σ_k w_k^{−ns}, given the base
/// Dirichlet series' value and derivative at 0.
fn minus_derivative_at_zero(n: u32, value_at_zero: &BigRational, derivative_at_zero: &LogLinear) -> LogLinear {
    let n = BigRational::from_integer(n.into());
    // d/ds (r/2π)^{ns} at 0 is n·(log r − log 2π)
    let from_prefactor =
        (LogLinear::log_r(BigRational::one()) - LogLinear::log_two_pi(BigRational::one())).scale(&(&n * value_at_zero));
    -(from_prefactor + derivative_at_zero.scale(&n))
}

/// The zeta-regularized product of {(2πk/r)^n}_{k≥1}: r^{n/2}.
///
/// Uses ζ(0) = −1/2 and ζ′(0) = −½·log 2π; the 2π terms cancel.
pub fn regularized_product_power(n: u32) -> Result<RPower> {
    if n == 0 {
        return Err(Error::Precondition("exponent n must be positive".into()));
    }
    let zeta0 = rat(-1, 2);
    let zeta_prime0 = LogLinear::log_two_pi(rat(-1, 2));
    RPower::from_log(&minus_derivative_at_zero(n, &zeta0, &zeta_prime0))
}

/// The zeta-regularized product of {(2π(k − 1/2)/r)^n}_{k≥1}: 2^{n/2}.
///
/// Here the Dirichlet series is λ(s) = (2^s − 1)ζ(s), so λ(0) = 0 and
/// λ′(0) = ζ(0)·log 2 = −½·log 2; the r-dependence drops out.
pub fn antiperiodic_product_power(n: u32) -> Result<RPower> {
    if n == 0 {
        return Err(Error::Precondition("exponent n must be positive".into()));
    }
    let lambda0 = BigRational::zero();
    let lambda_prime0 = LogLinear::log_two(rat(-1, 2));
    RPower::from_log(&minus_derivative_at_zero(n, &lambda0, &lambda_prime0))
}

/// Tr((d/dt)^{−2k}) = coefficient·r^{2k} on the given boundary condition,
/// periodic modes excluding l = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseTrace {
    pub coefficient: BigRational,
    pub r_power: u32,
}

impl InverseTrace {
    pub fn to_f64(&self, r: f64) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.coefficient).unwrap_or(f64::NAN) * r.powi(self.r_power as i32)
    }
}

/// 2Σ_{l≥1} r^{2k}/(2πi·w_l)^{2k} with w_l = l (periodic) or l − 1/2 (antiperiodic).
pub fn trace_inv_power(bc: BoundaryCondition, two_k: u32) -> Result<InverseTrace> {
    let collapsed = match bc {
        BoundaryCondition::Periodic => zeta_over_2pii(two_k)?,
        BoundaryCondition::Antiperiodic => lambda_over_2pii(two_k)?,
    };
    Ok(InverseTrace { coefficient: collapsed * BigRational::from_integer(2.into()), r_power: two_k })
}

/// The same trace from 2Σ r^{2k}/(2πi·w_l)^{2k} over the first `modes` modes,
/// with an Euler–Maclaurin remainder.
pub fn trace_inv_power_numeric(bc: BoundaryCondition, two_k: u32, r: f64, modes: usize) -> f64 {
    let shift = match bc {
        BoundaryCondition::Periodic => 0.0,
        BoundaryCondition::Antiperiodic => 0.5,
    };
    let sign = crate::series::i_power_sign(two_k) as f64;
    2.0 * sign * r.powi(two_k as i32) / (2.0 * std::f64::consts::PI).powi(two_k as i32)
        * crate::series::shifted_power_sum(two_k, shift, modes)
}
