//! Periodic-antiperiodic super circles: the lattice action, the invariant
//! projection, descent of isometries and the induced action on fields.
//!
//! Conventions (all checked by tests):
//! * the lattice generator R = (r, ρ₁) acts on the right after the holonomy
//!   r₊r₋, so μ_R(p) = r₊r₋(p)·R;
//! * a translation g acts on the universal cover by p ↦ p·g⁻¹, a
//!   time-reversal element A by p ↦ A(p);
//! * fields φ₀ transform by φ₀ ↦ φ₀ ∘ f⁻¹ for the induced map f on ℝ^{0|1}.

use crate::error::{Error, Result};
use crate::grassmann::element::GrassmannElement;
use crate::grassmann::point::{
    act_time_reversal, act_time_reversal_r11, inverse_r12, multiply_r11, multiply_r12, Arity, R11Law, SuperPoint,
    TimeReversal, TimeSign,
};
use crate::scalar::ComplexScalar;

/// Fresh odd coordinate on ℝ^{0|1} used for induced maps.
pub const BASE_COORD: &str = "θ";

/// An isometry of the universal cover ℝ^{1|2}.
#[derive(Clone, Debug, PartialEq)]
pub enum Isometry<S: ComplexScalar> {
    /// Super translation by an ℝ^{1|2} point (u, ν₁, ν₂).
    Translation(SuperPoint<S>),
    /// A time-reversal element.
    Reversal(TimeReversal),
}

impl<S: ComplexScalar> Isometry<S> {
    /// The map on the universal cover.
    pub fn apply(&self, p: &SuperPoint<S>) -> Result<SuperPoint<S>> {
        match self {
            Isometry::Translation(g) => multiply_r12(p, &inverse_r12(g)?),
            Isometry::Reversal(a) => act_time_reversal(*a, p, TimeSign::Reverse),
        }
    }
}

/// μ_R(p) = r₊r₋(p)·(r, ρ₁, 0).
pub fn mu_r<S: ComplexScalar>(p: &SuperPoint<S>, generator: &SuperPoint<S>) -> Result<SuperPoint<S>> {
    if generator.arity() != Arity::R11 {
        return Err(Error::Structure("lattice generator must lie in ℝ^{1|1}".into()));
    }
    let held = act_time_reversal(TimeReversal::PA_HOLONOMY, p, TimeSign::Reverse)?;
    multiply_r12(&held, &generator.include_r11()?)
}

/// proj_R(t, θ₁, θ₂) = θ₁ − ρ₁ t / r.
pub fn proj_r<S: ComplexScalar>(p: &SuperPoint<S>, generator: &SuperPoint<S>) -> Result<SuperPoint<S>> {
    if p.arity() != Arity::R12 || generator.arity() != Arity::R11 {
        return Err(Error::Structure("proj_R expects an ℝ^{1|2} point and ℝ^{1|1} generator".into()));
    }
    let r_inv = generator.even().inverse()?;
    let theta = p.odd(0).clone() - generator.odd(0) * &(p.even() * &r_inv);
    SuperPoint::r01(theta)
}

/// Outcome of testing whether an isometry descends to the super circle.
#[derive(Clone, Debug, PartialEq)]
pub enum Descent<S: ComplexScalar> {
    Descends {
        /// Target generator R′ with μ_{R′} ∘ F = F ∘ μ_R.
        generator: SuperPoint<S>,
        /// Generator of the same lattice with positive body.
        positive_generator: SuperPoint<S>,
    },
    /// The equivariance equation fails; carries LHS − RHS on a generic point.
    NotDescending { residual: SuperPoint<S> },
}

impl<S: ComplexScalar> Descent<S> {
    pub fn descends(&self) -> bool {
        matches!(self, Descent::Descends { .. })
    }
}

fn r11_inverse<S: ComplexScalar>(p: &SuperPoint<S>) -> Result<SuperPoint<S>> {
    SuperPoint::r11(-p.even().clone(), -p.odd(0).clone())
}

fn generic_point<S: ComplexScalar>() -> SuperPoint<S> {
    SuperPoint::generic_r12("t", "θ1", "θ2")
}

/// Decides whether `iso` descends to a map S×_R ℝ^{1|2} → S×_{R′} ℝ^{1|2}.
pub fn descend_check<S: ComplexScalar>(iso: &Isometry<S>, generator: &SuperPoint<S>) -> Result<Descent<S>> {
    let target = match iso {
        Isometry::Translation(g) => {
            // conjugation g R g⁻¹, projected to ℝ^{1|1}
            let c = multiply_r12(&multiply_r12(g, &generator.include_r11()?)?, &inverse_r12(g)?)?;
            SuperPoint::r11(c.even().clone(), c.odd(0).clone())?
        }
        Isometry::Reversal(a) => act_time_reversal_r11(*a, generator, TimeSign::Reverse)?,
    };
    let p = generic_point::<S>();
    let lhs = mu_r(&iso.apply(&p)?, &target)?;
    let rhs = iso.apply(&mu_r(&p, generator)?)?;
    let residual = lhs.difference(&rhs)?;
    if !residual.is_zero() {
        return Ok(Descent::NotDescending { residual });
    }
    let positive_generator = match iso {
        Isometry::Reversal(a) if a.reverses_time() => r11_inverse(&target)?,
        _ => target.clone(),
    };
    Ok(Descent::Descends { generator: target, positive_generator })
}

/// An odd-affine map θ ↦ constant + linear·θ on ℝ^{0|1}.
#[derive(Clone, Debug, PartialEq)]
pub struct OddAffineMap<S: ComplexScalar> {
    pub constant: GrassmannElement<S>,
    pub linear: GrassmannElement<S>,
}

impl<S: ComplexScalar> OddAffineMap<S> {
    pub fn apply(&self, theta: &GrassmannElement<S>) -> GrassmannElement<S> {
        self.constant.clone() + theta * &self.linear
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.linear.inverse()?;
        Ok(OddAffineMap { constant: -(&self.constant * &inv), linear: inv })
    }

    /// The map as an element in the coordinate [`BASE_COORD`].
    pub fn as_element(&self) -> GrassmannElement<S> {
        self.apply(&GrassmannElement::odd(BASE_COORD))
    }
}

/// The unique map f with proj_{R′} ∘ F = f ∘ proj_R, found by eliminating θ₁
/// in favour of θ = proj_R(p), then checked exactly.
pub fn induced_base_map<S: ComplexScalar>(iso: &Isometry<S>, generator: &SuperPoint<S>) -> Result<OddAffineMap<S>> {
    let target = match descend_check(iso, generator)? {
        Descent::Descends { positive_generator, .. } => positive_generator,
        Descent::NotDescending { residual } => {
            return Err(Error::Precondition(format!("isometry does not descend, residual {residual:?}")))
        }
    };
    let p = generic_point::<S>();
    let image = proj_r(&iso.apply(&p)?, &target)?.odd(0).clone();
    let r_inv = generator.even().inverse()?;
    let theta1 = GrassmannElement::odd(BASE_COORD) + generator.odd(0) * &(GrassmannElement::even("t") * r_inv);
    let eliminated = image.substitute_odd("θ1", &theta1)?;
    for coord in ["t", "θ1", "θ2"] {
        if eliminated.depends_on(coord) {
            return Err(Error::Convention(format!(
                "no odd-affine map on ℝ^{{0|1}}: image still depends on {coord}: {eliminated}"
            )));
        }
    }
    let (constant, linear) = eliminated.split_odd(BASE_COORD);
    let map = OddAffineMap { constant, linear };
    let square = map.apply(proj_r(&p, generator)?.odd(0));
    if square != image {
        return Err(Error::Convention(format!("square fails to commute: {square} vs {image}")));
    }
    Ok(map)
}

/// State (r, ρ₁, x, ψ) of a field on a super circle, with φ₀ = x + θψ.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState<S: ComplexScalar> {
    pub r: GrassmannElement<S>,
    pub rho: GrassmannElement<S>,
    pub x: GrassmannElement<S>,
    pub psi: GrassmannElement<S>,
}

impl<S: ComplexScalar> FieldState<S> {
    /// Generic symbols r, ρ1, x, ψ.
    pub fn generic() -> Self {
        FieldState {
            r: GrassmannElement::even("r"),
            rho: GrassmannElement::odd("ρ1"),
            x: GrassmannElement::even("x"),
            psi: GrassmannElement::odd("ψ"),
        }
    }

    pub fn generator(&self) -> Result<SuperPoint<S>> {
        SuperPoint::r11(self.r.clone(), self.rho.clone())
    }
}

/// (u,ν₁)·(r,ρ₁,x,ψ) = (r+2iν₁ρ₁, ρ₁, x+(ν₁−ρ₁u/r)ψ, (1+iρ₁ν₁/r)ψ).
pub fn action_on_fields<S: ComplexScalar>(g: &SuperPoint<S>, state: &FieldState<S>) -> Result<FieldState<S>> {
    if g.arity() != Arity::R11 {
        return Err(Error::Structure("field action takes an ℝ^{1|1} element".into()));
    }
    let i = S::i();
    let u = g.even();
    let nu = g.odd(0);
    let r_inv = state.r.inverse()?;
    let r = state.r.clone() + (nu * &state.rho).scale(&S::from_i64(2)).scale(&i);
    let shift = nu.clone() - &(&state.rho * u) * &r_inv;
    let x = state.x.clone() + &shift * &state.psi;
    let scale = GrassmannElement::one() + (&(&state.rho * nu) * &r_inv).scale(&i);
    let psi = &scale * &state.psi;
    Ok(FieldState { r, rho: state.rho.clone(), x, psi })
}

/// Recomputes the field action as φ₀ ∘ f⁻¹ with f from [`induced_base_map`] and
/// compares with [`action_on_fields`] on generic symbols.
pub fn verify_action_on_fields<S: ComplexScalar>(g: &SuperPoint<S>) -> Result<FieldState<S>> {
    let state = FieldState::<S>::generic();
    let iso = Isometry::Translation(g.include_r11()?);
    let generator = state.generator()?;
    let target = match descend_check(&iso, &generator)? {
        Descent::Descends { positive_generator, .. } => positive_generator,
        Descent::NotDescending { .. } => return Err(Error::Convention("ℝ^{1|1} translation failed to descend".into())),
    };
    let f = induced_base_map(&iso, &generator)?;
    let phi0 = state.x.clone() + GrassmannElement::odd(BASE_COORD) * state.psi.clone();
    let pulled = phi0.substitute_odd(BASE_COORD, &f.inverse()?.as_element())?;
    let (x, psi) = pulled.split_odd(BASE_COORD);
    let composite = FieldState { r: target.even().clone(), rho: target.odd(0).clone(), x, psi };
    let formula = action_on_fields(g, &state)?;
    if composite != formula {
        return Err(Error::Convention(format!("field action {formula:?} disagrees with composite {composite:?}")));
    }
    Ok(formula)
}

/// Whether acting by g then g′ equals acting by g′·g under `law`.
pub fn field_action_respects_law<S: ComplexScalar>(g: &SuperPoint<S>, g2: &SuperPoint<S>, law: R11Law) -> Result<bool> {
    let state = FieldState::<S>::generic();
    let sequential = action_on_fields(g2, &action_on_fields(g, &state)?)?;
    let combined = action_on_fields(&multiply_r11(g2, g, law)?, &state)?;
    Ok(sequential == combined)
}

/// Whether the inclusion ℝ^{1|1} → ℝ^{1|2}, (u,ν) ↦ (u,ν,0), is a
/// homomorphism under `law`.
pub fn inclusion_is_homomorphism<S: ComplexScalar>(law: R11Law) -> Result<bool> {
    let a = SuperPoint::<S>::r11(GrassmannElement::even("u"), GrassmannElement::odd("ν"))?;
    let b = SuperPoint::<S>::r11(GrassmannElement::even("u'"), GrassmannElement::odd("ν'"))?;
    let lhs = multiply_r11(&a, &b, law)?.include_r11()?;
    let rhs = multiply_r12(&a.include_r11()?, &b.include_r11()?)?;
    Ok(lhs == rhs)
}
