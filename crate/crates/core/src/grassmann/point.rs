//! Points of the super translation groups and the time-reversal group.

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::element::GrassmannElement;
use crate::scalar::ComplexScalar;

/// Dimension type of a superdomain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    /// ℝ^{1|2}
    R12,
    /// ℝ^{1|1}
    R11,
    /// ℝ^{0|1}
    R01,
}

impl Arity {
    pub fn odd_count(self) -> usize {
        match self {
            Arity::R12 => 2,
            Arity::R11 | Arity::R01 => 1,
        }
    }

    pub fn has_even(self) -> bool {
        !matches!(self, Arity::R01)
    }
}

/// An S-point of a superdomain: one even coordinate (absent for ℝ^{0|1}) and a
/// fixed number of odd coordinates.
#[derive(Clone, PartialEq)]
pub struct SuperPoint<S: ComplexScalar> {
    arity: Arity,
    even: GrassmannElement<S>,
    odd: Vec<GrassmannElement<S>>,
}

impl<S: ComplexScalar> SuperPoint<S> {
    pub fn new(arity: Arity, even: GrassmannElement<S>, odd: Vec<GrassmannElement<S>>) -> Result<Self> {
        if odd.len() != arity.odd_count() {
            return Err(Error::Structure(format!(
                "{arity:?} point needs {} odd parts, got {}",
                arity.odd_count(),
                odd.len()
            )));
        }
        if !even.is_even() {
            return Err(Error::Structure(format!("even coordinate {} is not even", even.render())));
        }
        if !arity.has_even() && !even.is_zero() {
            return Err(Error::Structure("ℝ^{0|1} has no even coordinate".into()));
        }
        if let Some(bad) = odd.iter().find(|o| !o.is_odd()) {
            return Err(Error::Structure(format!("odd coordinate {} is not odd", bad.render())));
        }
        Ok(SuperPoint { arity, even, odd })
    }

    /// (t, θ₁, θ₂) ∈ ℝ^{1|2}.
    pub fn r12(t: GrassmannElement<S>, th1: GrassmannElement<S>, th2: GrassmannElement<S>) -> Result<Self> {
        Self::new(Arity::R12, t, vec![th1, th2])
    }

    /// (t, θ) ∈ ℝ^{1|1}.
    pub fn r11(t: GrassmannElement<S>, th: GrassmannElement<S>) -> Result<Self> {
        Self::new(Arity::R11, t, vec![th])
    }

    /// θ ∈ ℝ^{0|1}.
    pub fn r01(th: GrassmannElement<S>) -> Result<Self> {
        Self::new(Arity::R01, GrassmannElement::zero(), vec![th])
    }

    /// The generic ℝ^{1|2} point with coordinates named by the arguments.
    pub fn generic_r12(t: &str, th1: &str, th2: &str) -> Self {
        SuperPoint {
            arity: Arity::R12,
            even: GrassmannElement::even(t),
            odd: vec![GrassmannElement::odd(th1), GrassmannElement::odd(th2)],
        }
    }

    pub fn identity(arity: Arity) -> Self {
        SuperPoint { arity, even: GrassmannElement::zero(), odd: vec![GrassmannElement::zero(); arity.odd_count()] }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn even(&self) -> &GrassmannElement<S> {
        &self.even
    }

    pub fn odd(&self, i: usize) -> &GrassmannElement<S> {
        &self.odd[i]
    }

    pub fn odd_parts(&self) -> &[GrassmannElement<S>] {
        &self.odd
    }

    fn expect(&self, arity: Arity) -> Result<()> {
        if self.arity != arity {
            return Err(Error::Structure(format!("expected {arity:?} point, got {:?}", self.arity)));
        }
        Ok(())
    }

    /// Embeds an ℝ^{1|1} point as (t, θ, 0) ∈ ℝ^{1|2}.
    pub fn include_r11(&self) -> Result<Self> {
        self.expect(Arity::R11)?;
        Ok(SuperPoint {
            arity: Arity::R12,
            even: self.even.clone(),
            odd: vec![self.odd[0].clone(), GrassmannElement::zero()],
        })
    }

    /// Coordinate-wise difference; zero iff the points agree.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.expect(other.arity)?;
        Ok(SuperPoint {
            arity: self.arity,
            even: self.even.clone() - other.even.clone(),
            odd: self.odd.iter().zip(&other.odd).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.iter().all(|o| o.is_zero())
    }

    /// Applies `f` to every coordinate.
    pub fn map(&self, f: impl Fn(&GrassmannElement<S>) -> Result<GrassmannElement<S>>) -> Result<Self> {
        Ok(SuperPoint { arity: self.arity, even: f(&self.even)?, odd: self.odd.iter().map(&f).collect::<Result<_>>()? })
    }
}

impl<S: ComplexScalar> fmt::Debug for SuperPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.arity.has_even() {
            write!(f, "{}", self.even)?;
            if !self.odd.is_empty() {
                write!(f, "; ")?;
            }
        }
        let odd: Vec<String> = self.odd.iter().map(|o| o.render()).collect();
        write!(f, "{})", odd.join("; "))
    }
}

/// Group law of ℝ^{1|2}:
/// (t,θ₁,θ₂)·(t′,θ₁′,θ₂′) = (t+t′+iθ₁θ₁′+iθ₂θ₂′, θ₁+θ₁′, θ₂+θ₂′).
pub fn multiply_r12<S: ComplexScalar>(p: &SuperPoint<S>, q: &SuperPoint<S>) -> Result<SuperPoint<S>> {
    p.expect(Arity::R12)?;
    q.expect(Arity::R12)?;
    let i = S::i();
    let even = p.even.clone() + q.even.clone() + (&p.odd[0] * &q.odd[0]).scale(&i) + (&p.odd[1] * &q.odd[1]).scale(&i);
    Ok(SuperPoint {
        arity: Arity::R12,
        even,
        odd: vec![p.odd[0].clone() + q.odd[0].clone(), p.odd[1].clone() + q.odd[1].clone()],
    })
}

/// Two-sided inverse in ℝ^{1|2}: (−t, −θ₁, −θ₂).
pub fn inverse_r12<S: ComplexScalar>(p: &SuperPoint<S>) -> Result<SuperPoint<S>> {
    p.expect(Arity::R12)?;
    Ok(SuperPoint { arity: Arity::R12, even: -p.even.clone(), odd: p.odd.iter().map(|o| -o.clone()).collect() })
}

/// Group law used on ℝ^{1|1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R11Law {
    /// (u+u′+iνν′, ν+ν′): the restriction of the ℝ^{1|2} law.
    Restricted,
    /// (u+u′+νν′, ν+ν′).
    Real,
}

/// Product in ℝ^{1|1} under the chosen law.
pub fn multiply_r11<S: ComplexScalar>(p: &SuperPoint<S>, q: &SuperPoint<S>, law: R11Law) -> Result<SuperPoint<S>> {
    p.expect(Arity::R11)?;
    q.expect(Arity::R11)?;
    let nn = &p.odd[0] * &q.odd[0];
    let nn = match law {
        R11Law::Restricted => nn.scale(&S::i()),
        R11Law::Real => nn,
    };
    Ok(SuperPoint {
        arity: Arity::R11,
        even: p.even.clone() + q.even.clone() + nn,
        odd: vec![p.odd[0].clone() + q.odd[0].clone()],
    })
}

/// Element of the time-reversal group T ≅ ℤ/4 × ℤ/2, written r₋^a (r₊r₋)^b.
///
/// r₋ ↦ (1,0) generates the ℤ/4 factor and r₊ = r₋³(r₊r₋) ↦ (3,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeReversal {
    minus_power: u8,
    holonomy: u8,
}

impl TimeReversal {
    pub const IDENTITY: TimeReversal = TimeReversal { minus_power: 0, holonomy: 0 };
    pub const R_MINUS: TimeReversal = TimeReversal { minus_power: 1, holonomy: 0 };
    pub const R_PLUS: TimeReversal = TimeReversal { minus_power: 3, holonomy: 1 };
    /// r₊r₋, the periodic-antiperiodic holonomy.
    pub const PA_HOLONOMY: TimeReversal = TimeReversal { minus_power: 0, holonomy: 1 };

    pub fn new(minus_power: u8, holonomy: u8) -> Self {
        TimeReversal { minus_power: minus_power % 4, holonomy: holonomy % 2 }
    }

    /// Normal form of a word in the generators.
    pub fn from_word(word: &[TimeReversal]) -> Self {
        word.iter().fold(Self::IDENTITY, |acc, g| acc.compose(*g))
    }

    pub fn compose(self, other: Self) -> Self {
        Self::new(self.minus_power + other.minus_power, self.holonomy + other.holonomy)
    }

    pub fn inverse(self) -> Self {
        Self::new(4 - self.minus_power, self.holonomy)
    }

    /// All eight group elements.
    pub fn elements() -> Vec<Self> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..2 {
                out.push(Self::new(a, b));
            }
        }
        out
    }

    pub fn minus_power(self) -> u8 {
        self.minus_power
    }

    pub fn holonomy(self) -> u8 {
        self.holonomy
    }

    /// Whether the element reverses the orientation of ℝ.
    pub fn reverses_time(self) -> bool {
        // r₋ and r₊ both reverse; r₊r₋ preserves
        self.minus_power % 2 == 1
    }

    /// Powers of i by which θ₁ and θ₂ are multiplied.
    fn odd_phases(self) -> (u8, u8) {
        // r₋: θ₁ ↦ −iθ₁ (i³), θ₂ ↦ iθ₂; r₊r₋: θ₁ ↦ θ₁, θ₂ ↦ −θ₂
        let a = self.minus_power as u32;
        let b = self.holonomy as u32;
        (((3 * a) % 4) as u8, ((a + 2 * b) % 4) as u8)
    }
}

/// How time-reversing elements act on the even coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TimeSign {
    /// t ↦ −t for time-reversing elements: the only choice making T act by
    /// group automorphisms.
    #[default]
    Reverse,
    /// t ↦ t for every element.
    Preserve,
}

fn i_power<S: ComplexScalar>(k: u8) -> S {
    match k % 4 {
        0 => S::one(),
        1 => S::i(),
        2 => -S::one(),
        _ => -S::i(),
    }
}

/// Action of T on ℝ^{1|2}: r₊ ↦ (∓t, iθ₁, iθ₂), r₋ ↦ (∓t, −iθ₁, iθ₂).
pub fn act_time_reversal<S: ComplexScalar>(
    g: TimeReversal,
    p: &SuperPoint<S>,
    sign: TimeSign,
) -> Result<SuperPoint<S>> {
    p.expect(Arity::R12)?;
    let (a, b) = g.odd_phases();
    let even = if g.reverses_time() && sign == TimeSign::Reverse { -p.even.clone() } else { p.even.clone() };
    Ok(SuperPoint {
        arity: Arity::R12,
        even,
        odd: vec![p.odd[0].scale(&i_power::<S>(a)), p.odd[1].scale(&i_power::<S>(b))],
    })
}

/// Action of T on ℝ^{1|1} ⊂ ℝ^{1|2}, through the first odd coordinate.
pub fn act_time_reversal_r11<S: ComplexScalar>(
    g: TimeReversal,
    p: &SuperPoint<S>,
    sign: TimeSign,
) -> Result<SuperPoint<S>> {
    p.expect(Arity::R11)?;
    let image = act_time_reversal(g, &p.include_r11()?, sign)?;
    SuperPoint::r11(image.even.clone(), image.odd[0].clone())
}

/// Element of the semidirect product ℝ^{1|2} ⋊ T.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanElement<S: ComplexScalar> {
    pub translation: SuperPoint<S>,
    pub reversal: TimeReversal,
}

impl<S: ComplexScalar> EuclideanElement<S> {
    /// (p, g)·(p′, g′) = (p·g(p′), gg′).
    pub fn compose(&self, other: &Self, sign: TimeSign) -> Result<Self> {
        let moved = act_time_reversal(self.reversal, &other.translation, sign)?;
        Ok(EuclideanElement {
            translation: multiply_r12(&self.translation, &moved)?,
            reversal: self.reversal.compose(other.reversal),
        })
    }

    /// Left action on the model space: x ↦ p·g(x).
    pub fn act(&self, x: &SuperPoint<S>, sign: TimeSign) -> Result<SuperPoint<S>> {
        multiply_r12(&self.translation, &act_time_reversal(self.reversal, x, sign)?)
    }
}

/// Checks g(p·q) = g(p)·g(q) on generic points for every element of T.
///
/// This is the consistency oracle fixing [`TimeSign`].
pub fn time_reversal_is_automorphism<S: ComplexScalar>(sign: TimeSign) -> Result<bool> {
    let p = SuperPoint::<S>::generic_r12("t", "θ1", "θ2");
    let q = SuperPoint::<S>::generic_r12("t'", "θ1'", "θ2'");
    let pq = multiply_r12(&p, &q)?;
    for g in TimeReversal::elements() {
        let lhs = act_time_reversal(g, &pq, sign)?;
        let rhs = multiply_r12(&act_time_reversal(g, &p, sign)?, &act_time_reversal(g, &q, sign)?)?;
        if !lhs.difference(&rhs)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GaussianRational, Grassmann};

    fn pt(t: &str, a: &str, b: &str) -> SuperPoint<GaussianRational> {
        SuperPoint::generic_r12(t, a, b)
    }

    #[test]
    fn identity_is_neutral() {
        let p = pt("t", "θ1", "θ2");
        let e = SuperPoint::identity(Arity::R12);
        assert_eq!(multiply_r12(&e, &p).unwrap(), p);
        assert_eq!(multiply_r12(&p, &e).unwrap(), p);
    }

    #[test]
    fn product_matches_group_law_display() {
        let p = pt("t", "θ1", "θ2");
        let q = pt("t'", "θ1'", "θ2'");
        let i = GaussianRational::i();
        let expected_even = Grassmann::even("t")
            + Grassmann::even("t'")
            + (Grassmann::odd("θ1") * Grassmann::odd("θ1'")).scale(&i)
            + (Grassmann::odd("θ2") * Grassmann::odd("θ2'")).scale(&i);
        let pq = multiply_r12(&p, &q).unwrap();
        assert_eq!(pq.even(), &expected_even);
        assert_eq!(pq.odd(0), &(Grassmann::odd("θ1") + Grassmann::odd("θ1'")));
    }

    #[test]
    fn arity_mismatch_is_structural() {
        let p = pt("t", "θ1", "θ2");
        let q = SuperPoint::r11(Grassmann::even("u"), Grassmann::odd("ν")).unwrap();
        assert!(matches!(multiply_r12(&p, &q), Err(Error::Structure(_))));
        assert!(SuperPoint::<GaussianRational>::new(Arity::R12, Grassmann::zero(), vec![]).is_err());
    }

    #[test]
    fn associativity_and_inverse() {
        let p = pt("a", "α1", "α2");
        let q = pt("b", "β1", "β2");
        let r = pt("c", "γ1", "γ2");
        let left = multiply_r12(&multiply_r12(&p, &q).unwrap(), &r).unwrap();
        let right = multiply_r12(&p, &multiply_r12(&q, &r).unwrap()).unwrap();
        assert_eq!(left, right);
        let inv = inverse_r12(&p).unwrap();
        assert!(multiply_r12(&p, &inv).unwrap().is_zero());
        assert!(multiply_r12(&inv, &p).unwrap().is_zero());
    }

    #[test]
    fn time_reversal_relations() {
        let rp = TimeReversal::R_PLUS;
        let rm = TimeReversal::R_MINUS;
        let four = |g: TimeReversal| g.compose(g).compose(g).compose(g);
        assert_eq!(four(rp), TimeReversal::IDENTITY);
        assert_eq!(four(rm), TimeReversal::IDENTITY);
        assert_eq!(rp.compose(rp), rm.compose(rm));
        assert_eq!(rp.compose(rm), rm.compose(rp));
        assert_eq!(TimeReversal::elements().len(), 8);
        assert_eq!(rp.compose(rm), TimeReversal::PA_HOLONOMY);
    }

    #[test]
    fn action_is_a_group_action() {
        let p = pt("t", "θ1", "θ2");
        for g in TimeReversal::elements() {
            for h in TimeReversal::elements() {
                let lhs = act_time_reversal(g.compose(h), &p, TimeSign::Reverse).unwrap();
                let rhs =
                    act_time_reversal(g, &act_time_reversal(h, &p, TimeSign::Reverse).unwrap(), TimeSign::Reverse)
                        .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn generator_displays() {
        let p = pt("t", "θ1", "θ2");
        let i = GaussianRational::i();
        let img = act_time_reversal(TimeReversal::R_PLUS, &p, TimeSign::Reverse).unwrap();
        assert_eq!(img.even(), &-Grassmann::even("t"));
        assert_eq!(img.odd(0), &Grassmann::odd("θ1").scale(&i));
        assert_eq!(img.odd(1), &Grassmann::odd("θ2").scale(&i));
        let img = act_time_reversal(TimeReversal::R_MINUS, &p, TimeSign::Reverse).unwrap();
        assert_eq!(img.odd(0), &Grassmann::odd("θ1").scale(&-i.clone()));
        assert_eq!(img.odd(1), &Grassmann::odd("θ2").scale(&i));
        // r₊r₋ is the PA holonomy: t and θ₁ fixed, θ₂ negated
        let img = act_time_reversal(TimeReversal::PA_HOLONOMY, &p, TimeSign::Reverse).unwrap();
        assert_eq!(img.even(), &Grassmann::even("t"));
        assert_eq!(img.odd(0), &Grassmann::odd("θ1"));
        assert_eq!(img.odd(1), &-Grassmann::odd("θ2"));
    }

    #[test]
    fn automorphism_oracle_pins_time_sign() {
        assert!(time_reversal_is_automorphism::<GaussianRational>(TimeSign::Reverse).unwrap());
        assert!(!time_reversal_is_automorphism::<GaussianRational>(TimeSign::Preserve).unwrap());
    }

    #[test]
    fn semidirect_product_is_associative() {
        let mk = |t: &str, a: &str, b: &str, g| EuclideanElement { translation: pt(t, a, b), reversal: g };
        let x = mk("a", "α1", "α2", TimeReversal::R_PLUS);
        let y = mk("b", "β1", "β2", TimeReversal::R_MINUS);
        let z = mk("c", "γ1", "γ2", TimeReversal::R_PLUS);
        let s = TimeSign::Reverse;
        let l = x.compose(&y, s).unwrap().compose(&z, s).unwrap();
        let r = x.compose(&y.compose(&z, s).unwrap(), s).unwrap();
        assert_eq!(l, r);
        let p = pt("t", "θ1", "θ2");
        let lhs = x.compose(&y, s).unwrap().act(&p, s).unwrap();
        let rhs = x.act(&y.act(&p, s).unwrap(), s).unwrap();
        assert_eq!(lhs, rhs);
    }
}
