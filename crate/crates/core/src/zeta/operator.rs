//! Kinetic operators on the super circle, their Fredholm factors and the
//! zeta superdeterminant. Formal and concrete curvature share one pipeline
//! through [`CurvatureTraces`].

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::grassmann::berezin::{boundary_conditions, BoundaryCondition, Component};
use crate::grassmann::GrassmannElement;
use crate::scalar::{factorial, rat, ComplexScalar, Scalar};
use crate::series::{convert_basis, l_series, multiplicative_sequence, Basis, GradedPolynomial};
use crate::zeta::matrix::NilpotentMatrix;
use crate::zeta::regularization::{regularized_product_power, trace_inv_power, RPower};

/// Name of the even variable standing for the circle length in concrete mode.
pub const RADIUS: &str = "r";

/// Commutative coefficient ring of the Fredholm expansions.
pub trait TraceRing: Clone + PartialEq + Debug {
    fn ring_add(&self, other: &Self) -> Self;
    fn scale_rational(&self, c: &BigRational) -> Self;
    fn ring_exp(&self) -> Result<Self>;
    fn is_ring_zero(&self) -> bool;
}

impl<S: Scalar> TraceRing for GradedPolynomial<S> {
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale(&S::from_rational(c))
    }
    fn ring_exp(&self) -> Result<Self> {
        self.exp()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl<S: Scalar> TraceRing for GrassmannElement<S> {
    fn ring_add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale(&S::from_rational(c))
    }
    fn ring_exp(&self) -> Result<Self> {
        self.exp_nilpotent()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Formal,
    Concrete,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Formal => "formal",
            Mode::Concrete => "concrete",
        }
    }
}

/// Source of the scaled traces r^j·Tr((iℛ)^j).
pub trait CurvatureTraces {
    type Value: TraceRing;
    fn dimension(&self) -> usize;
    fn mode(&self) -> Mode;
    fn zero(&self) -> Self::Value;
    /// None once this and every higher power vanishes identically.
    fn scaled_trace(&self, j: u32) -> Option<Self::Value>;
}

/// Tr((iℛ)^{2k}) treated as the free generator 2(2k)!·ph_k / r^{2k}.
#[derive(Clone, Debug)]
pub struct FormalCurvature {
    pub n: usize,
    pub k_max: usize,
}

impl FormalCurvature {
    pub fn new(n: usize, k_max: usize) -> Self {
        FormalCurvature { n, k_max }
    }
}

impl CurvatureTraces for FormalCurvature {
    type Value = GradedPolynomial<BigRational>;

    fn dimension(&self) -> usize {
        self.n
    }

    fn mode(&self) -> Mode {
        Mode::Formal
    }

    fn zero(&self) -> Self::Value {
        GradedPolynomial::zero(Basis::Character, self.k_max)
    }

    fn scaled_trace(&self, j: u32) -> Option<Self::Value> {
        if j as usize > 2 * self.k_max {
            return None;
        }
        if j % 2 == 1 {
            return Some(self.zero());
        }
        let k = (j / 2) as usize;
        let c = factorial(j) * BigRational::from_integer(2.into());
        Some(GradedPolynomial::var(Basis::Character, self.k_max, k).scale(&c))
    }
}

/// A concrete curvature matrix; r enters as the even variable [`RADIUS`].
#[derive(Clone, Debug)]
pub struct ConcreteCurvature<S: ComplexScalar> {
    curvature: NilpotentMatrix<S>,
    powers: Vec<NilpotentMatrix<S>>,
}

impl<S: ComplexScalar> ConcreteCurvature<S> {
    pub fn new(curvature: NilpotentMatrix<S>) -> Self {
        let powers = curvature.scale(&S::i()).powers();
        ConcreteCurvature { curvature, powers }
    }

    pub fn curvature(&self) -> &NilpotentMatrix<S> {
        &self.curvature
    }
}

impl<S: ComplexScalar> CurvatureTraces for ConcreteCurvature<S> {
    type Value = GrassmannElement<S>;

    fn dimension(&self) -> usize {
        self.curvature.dimension()
    }

    fn mode(&self) -> Mode {
        Mode::Concrete
    }

    fn zero(&self) -> Self::Value {
        GrassmannElement::zero()
    }

    fn scaled_trace(&self, j: u32) -> Option<Self::Value> {
        let p = self.powers.get(j as usize)?;
        Some(GrassmannElement::even_pow(RADIUS, j as i32) * p.trace())
    }
}

/// Σ_{j≥1} weight(j)·Tr(A^j)·Tr((d/dt)^{−j}) with A = iℛ.
///
/// Odd j contribute nothing: the trace of an odd power of an antisymmetric
/// matrix vanishes, and this is enforced.
fn fredholm_series<C: CurvatureTraces>(
    c: &C,
    bc: BoundaryCondition,
    weight: impl Fn(u32) -> BigRational,
) -> Result<C::Value> {
    let mut acc = c.zero();
    let mut j = 1u32;
    while let Some(trace) = c.scaled_trace(j) {
        if j % 2 == 1 {
            if !trace.is_ring_zero() {
                return Err(Error::Precondition(format!(
                    "trace of odd power {j} of the curvature is nonzero; the matrix is not antisymmetric"
                )));
            }
        } else {
            let t = trace_inv_power(bc, j)?;
            acc = acc.ring_add(&trace.scale_rational(&(weight(j) * t.coefficient)));
        }
        j += 1;
    }
    Ok(acc)
}

/// log det_Fr(Id − iℛ⊗(d/dt)^{−1}) = −Σ_{j≥1} Tr(A^j)Tr(D^{−j})/j.
pub fn fredholm_log_det<C: CurvatureTraces>(c: &C, bc: BoundaryCondition) -> Result<C::Value> {
    fredholm_series(c, bc, |j| -BigRational::one() / BigRational::from_integer(j.into()))
}

/// log pf_Fr(Id + iℛ⊗(d/dt)^{−1}) = ½Σ_{j≥1} (−1)^{j+1} Tr(A^j)Tr(D^{−j})/j.
pub fn fredholm_log_pf<C: CurvatureTraces>(c: &C, bc: BoundaryCondition) -> Result<C::Value> {
    fredholm_series(c, bc, |j| {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        rat(sign, 2 * j as i64)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OperatorKind {
    /// d² − iℛd on the even fluctuation a.
    A,
    /// d on η₁.
    Eta1,
    /// d + iℛ on η₂.
    Eta2,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::A => "D_a",
            OperatorKind::Eta1 => "D_eta1",
            OperatorKind::Eta2 => "D_eta2",
        }
    }

    fn component(self) -> Component {
        match self {
            OperatorKind::A => Component::A,
            OperatorKind::Eta1 => Component::Eta1,
            OperatorKind::Eta2 => Component::Eta2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KineticOperator {
    pub kind: OperatorKind,
    pub n: usize,
    pub boundary: BoundaryCondition,
}

impl KineticOperator {
    /// Boundary conditions read off the holonomy of the periodic-antiperiodic circle.
    pub fn periodic_antiperiodic(kind: OperatorKind, n: usize) -> Result<Self> {
        let bcs = boundary_conditions::<crate::GaussianRational>()?;
        let boundary = bcs[&kind.component()];
        Ok(KineticOperator { kind, n, boundary })
    }

    pub fn periodic_periodic(kind: OperatorKind, n: usize) -> Self {
        KineticOperator { kind, n, boundary: BoundaryCondition::Periodic }
    }
}

/// r-power times exp(log_fredholm).
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaValue<R> {
    pub free: RPower,
    pub log_fredholm: R,
}

fn check_dimension<C: CurvatureTraces>(op: &KineticOperator, c: &C) -> Result<()> {
    if op.n != c.dimension() {
        return Err(Error::Structure(format!(
            "{} acts on rank {} but the curvature has rank {}",
            op.kind.name(),
            op.n,
            c.dimension()
        )));
    }
    Ok(())
}

/// det_ζ of the second-order operator D_a = (Id − iℛ⊗d⁻¹)·d².
pub fn zeta_det<C: CurvatureTraces>(op: &KineticOperator, c: &C) -> Result<ZetaValue<C::Value>> {
    check_dimension(op, c)?;
    if op.kind != OperatorKind::A {
        return Err(Error::Precondition(format!("{} is fermionic; use zeta_pf", op.kind.name())));
    }
    // eigenvalues −(2πl/r)², l ≠ 0: each l ≥ 1 contributes (2πl/r)⁴ per rank
    let free = regularized_product_power(4)?.pow(&BigRational::from_integer(op.n.into()));
    Ok(ZetaValue { free, log_fredholm: fredholm_log_det(c, op.boundary)? })
}

/// pf_ζ of a first-order fermionic operator.
///
/// Both free Pfaffians are taken as r^{n/2}, the regularized product of
/// {2πl/r}; the shifted spectrum of the antiperiodic case is not re-regularized.
pub fn zeta_pf<C: CurvatureTraces>(op: &KineticOperator, c: &C) -> Result<ZetaValue<C::Value>> {
    check_dimension(op, c)?;
    let free = regularized_product_power(1)?.pow(&BigRational::from_integer(op.n.into()));
    let log_fredholm = match op.kind {
        OperatorKind::A => {
            return Err(Error::Precondition("D_a is bosonic; use zeta_det".into()));
        }
        OperatorKind::Eta1 => c.zero(),
        OperatorKind::Eta2 => fredholm_log_pf(c, op.boundary)?,
    };
    Ok(ZetaValue { free, log_fredholm })
}

/// The operator triple (D_a, D_η₁, D_η₂).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KineticTriple {
    pub a: KineticOperator,
    pub eta1: KineticOperator,
    pub eta2: KineticOperator,
}

impl KineticTriple {
    pub fn periodic_antiperiodic(n: usize) -> Result<Self> {
        Ok(KineticTriple {
            a: KineticOperator::periodic_antiperiodic(OperatorKind::A, n)?,
            eta1: KineticOperator::periodic_antiperiodic(OperatorKind::Eta1, n)?,
            eta2: KineticOperator::periodic_antiperiodic(OperatorKind::Eta2, n)?,
        })
    }

    pub fn periodic_periodic(n: usize) -> Self {
        KineticTriple {
            a: KineticOperator::periodic_periodic(OperatorKind::A, n),
            eta1: KineticOperator::periodic_periodic(OperatorKind::Eta1, n),
            eta2: KineticOperator::periodic_periodic(OperatorKind::Eta2, n),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Superdeterminant<R> {
    pub free: RPower,
    pub log: R,
    pub value: R,
}

/// pf_ζ(D_η₁)·pf_ζ(D_η₂)/det_ζ(D_a)^{1/2}, with the square root taken by
/// halving the exponent.
pub fn sdet<C: CurvatureTraces>(triple: &KineticTriple, c: &C) -> Result<Superdeterminant<C::Value>> {
    let pf1 = zeta_pf(&triple.eta1, c)?;
    let pf2 = zeta_pf(&triple.eta2, c)?;
    let det = zeta_det(&triple.a, c)?;
    let free = pf1.free * pf2.free * det.free.pow(&rat(-1, 2));
    if !free.is_one() {
        return Err(Error::Convention(format!("free parts do not cancel: {free}")));
    }
    let log = pf1.log_fredholm.ring_add(&pf2.log_fredholm).ring_add(&det.log_fredholm.scale_rational(&rat(-1, 2)));
    let value = log.ring_exp()?;
    Ok(Superdeterminant { free, log, value })
}

/// The multiplicative sequence of (x/2)/tanh(x/2), written in ph₁..ph_K.
pub fn l_class_in_ph(k_max: usize) -> Result<GradedPolynomial<BigRational>> {
    let parts = multiplicative_sequence(&l_series::<BigRational>(2 * k_max), k_max)?;
    let total = parts.iter().fold(GradedPolynomial::one(Basis::Pontryagin, k_max), |acc, p| acc.add(p));
    convert_basis(&total)
}

/// (ir)^{2k}·½·Tr(ℛ^{2k})/(2k)!, the value of ph_k on a concrete curvature.
pub fn curvature_to_ph<S: ComplexScalar>(curvature: &NilpotentMatrix<S>, k: u32) -> GrassmannElement<S> {
    let powers = curvature.powers();
    let Some(p) = powers.get(2 * k as usize) else {
        return GrassmannElement::zero();
    };
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let c = S::from_rational(&(rat(sign, 2) / factorial(2 * k)));
    (GrassmannElement::even_pow(RADIUS, 2 * k as i32) * p.trace()).scale(&c)
}

/// Substitutes ph_k ↦ values[k−1] into a rational ph-polynomial.
pub fn substitute_ph<S: Scalar>(
    poly: &GradedPolynomial<BigRational>,
    values: &[GrassmannElement<S>],
) -> GrassmannElement<S> {
    let mut acc = GrassmannElement::zero();
    for (e, c) in poly.terms() {
        let mut m = GrassmannElement::scalar(S::from_rational(c));
        for (i, &ei) in e.iter().enumerate() {
            for _ in 0..ei {
                m = m * values[i].clone();
            }
        }
        acc = acc + m;
    }
    acc
}
