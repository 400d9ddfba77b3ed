//! Exact algebra for supersymmetric sigma models on super circles: Grassmann
//! engines, supersymmetric sections, characteristic series, zeta-regularized
//! superdeterminants and manifold characteristic numbers.

pub mod cli;
pub mod error;
pub mod grassmann;
pub mod manifold;
pub mod scalar;
pub mod series;
pub mod susy;
pub mod verify;
pub mod zeta;

use num_complex::Complex;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use scalar::{ComplexScalar, Scalar};

/// Exact rationals.
pub type Rational = BigRational;
/// Exact Gaussian rationals ℚ(i).
pub type GaussianRational = Complex<BigRational>;
/// Grassmann algebra over ℚ(i).
pub type Grassmann = grassmann::GrassmannElement<GaussianRational>;
/// Floating-point Grassmann algebra.
pub type GrassmannF64 = grassmann::GrassmannElement<Complex<f64>>;
