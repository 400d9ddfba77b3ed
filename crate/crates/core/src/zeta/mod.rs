//! Zeta-regularized determinants of the circle kinetic operators.

pub mod corpus;
pub mod matrix;
pub mod operator;
pub mod regularization;
pub mod report;

pub use crate::grassmann::berezin::BoundaryCondition;
pub use matrix::NilpotentMatrix;
pub use operator::{
    curvature_to_ph, fredholm_log_det, fredholm_log_pf, l_class_in_ph, sdet, substitute_ph, zeta_det, zeta_pf,
    ConcreteCurvature, CurvatureTraces, FormalCurvature, KineticOperator, KineticTriple, Mode, OperatorKind,
    Superdeterminant, TraceRing, ZetaValue, RADIUS,
};
pub use regularization::{
    antiperiodic_product_power, regularized_product_power, trace_inv_power, trace_inv_power_numeric, InverseTrace,
    LogLinear, RPower,
};
pub use report::{concrete_report, formal_report, SdetReport};
