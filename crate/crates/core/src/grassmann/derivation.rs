//! Invariant vector fields on ℝ^{1|2} acting on superfunctions.
//!
//! A superfunction is a [`GrassmannElement`] in the coordinates `t`, `θ1`,
//! `θ2` (plus any parameters).

use crate::grassmann::element::GrassmannElement;
use crate::scalar::ComplexScalar;

pub const T: &str = "t";
pub const THETA1: &str = "θ1";
pub const THETA2: &str = "θ2";

/// Which odd direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddIndex {
    One,
    Two,
}

impl OddIndex {
    pub fn coordinate(self) -> &'static str {
        match self {
            OddIndex::One => THETA1,
            OddIndex::Two => THETA2,
        }
    }
}

/// Which of the two families of odd vector fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariance {
    /// ∂θ − iθ∂t, squaring to −i∂t; commutes with left translations.
    Right,
    /// ∂θ + iθ∂t, squaring to +i∂t; commutes with right translations,
    /// which is how isometries act on the universal cover.
    Left,
}

pub fn d_t<S: ComplexScalar>(f: &GrassmannElement<S>) -> GrassmannElement<S> {
    f.d_even(T)
}

/// Dᵢ f for the right-invariant field Dᵢ = ∂θᵢ − iθᵢ∂t.
pub fn apply_d<S: ComplexScalar>(i: OddIndex, f: &GrassmannElement<S>) -> GrassmannElement<S> {
    apply_invariant(i, Invariance::Right, f)
}

pub fn apply_invariant<S: ComplexScalar>(
    i: OddIndex,
    kind: Invariance,
    f: &GrassmannElement<S>,
) -> GrassmannElement<S> {
    let theta = i.coordinate();
    let sign = match kind {
        Invariance::Right => -S::i(),
        Invariance::Left => S::i(),
    };
    f.d_odd(theta) + (GrassmannElement::odd(theta) * d_t(f)).scale(&sign)
}

/// Supercommutator of two odd fields applied to f: D_a D_b f + D_b D_a f.
pub fn anticommutator<S: ComplexScalar>(
    a: OddIndex,
    b: OddIndex,
    kind: Invariance,
    f: &GrassmannElement<S>,
) -> GrassmannElement<S> {
    let ab = apply_invariant(a, kind, &apply_invariant(b, kind, f));
    let ba = apply_invariant(b, kind, &apply_invariant(a, kind, f));
    ab + ba
}

/// Spanning monomials t^a θ₁^b θ₂^c with a ≤ `max_t`, times an optional
/// extra odd parameter so that odd-parity inputs are exercised too.
pub fn test_monomials<S: ComplexScalar>(max_t: i32) -> Vec<GrassmannElement<S>> {
    let mut out = Vec::new();
    for a in 0..=max_t {
        for b in 0..2 {
            for c in 0..2 {
                let mut m = GrassmannElement::even_pow(T, a);
                if b == 1 {
                    m = m * GrassmannElement::odd(THETA1);
                }
                if c == 1 {
                    m = m * GrassmannElement::odd(THETA2);
                }
                out.push(m.clone());
                out.push(GrassmannElement::odd("χ") * m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GaussianRational, Grassmann};

    #[test]
    fn d1_on_generator() {
        assert_eq!(apply_d(OddIndex::One, &Grassmann::odd(THETA1)), Grassmann::one());
    }

    #[test]
    fn squares_and_commutator() {
        let i = GaussianRational::i();
        for f in test_monomials::<GaussianRational>(4) {
            let target = d_t(&f).scale(&-i.clone());
            for k in [OddIndex::One, OddIndex::Two] {
                assert_eq!(apply_d(k, &apply_d(k, &f)), target, "D² on {f}");
            }
            assert!(anticommutator(OddIndex::One, OddIndex::Two, Invariance::Right, &f).is_zero());
        }
    }

    #[test]
    fn left_invariant_square_flips_sign() {
        let i = GaussianRational::i();
        for f in test_monomials::<GaussianRational>(4) {
            let sq =
                apply_invariant(OddIndex::One, Invariance::Left, &apply_invariant(OddIndex::One, Invariance::Left, &f));
            assert_eq!(sq, d_t(&f).scale(&i));
        }
    }

    #[test]
    fn d_is_an_odd_derivation() {
        let f = Grassmann::odd(THETA1) * Grassmann::even(T);
        let g = Grassmann::odd(THETA2) + Grassmann::even_pow(T, 2);
        let lhs = apply_d(OddIndex::One, &(f.clone() * g.clone()));
        // f is odd: D(fg) = (Df)g − f(Dg)
        let rhs = apply_d(OddIndex::One, &f) * g.clone() - f * apply_d(OddIndex::One, &g);
        assert_eq!(lhs, rhs);
    }

    /// f ∘ (p ↦ p·g) or f ∘ (p ↦ g·p) with g = (u, ν1, ν2).
    fn translate(f: &Grassmann, right: bool) -> Grassmann {
        use crate::grassmann::point::{multiply_r12, SuperPoint};
        let p = SuperPoint::generic_r12(T, THETA1, THETA2);
        let g = SuperPoint::generic_r12("u", "ν1", "ν2");
        let q = if right { multiply_r12(&p, &g).unwrap() } else { multiply_r12(&g, &p).unwrap() };
        let renamed = f
            .substitute_even(T, &Grassmann::even("s"))
            .unwrap()
            .substitute_odd(THETA1, &Grassmann::odd("σ1"))
            .unwrap()
            .substitute_odd(THETA2, &Grassmann::odd("σ2"))
            .unwrap();
        renamed
            .substitute_even("s", q.even())
            .unwrap()
            .substitute_odd("σ1", q.odd(0))
            .unwrap()
            .substitute_odd("σ2", q.odd(1))
            .unwrap()
    }

    #[test]
    fn invariance_under_translations() {
        for f in test_monomials::<GaussianRational>(3) {
            for k in [OddIndex::One, OddIndex::Two] {
                // ∂θ + iθ∂t commutes with right translations
                let lhs = apply_invariant(k, Invariance::Left, &translate(&f, true));
                let rhs = translate(&apply_invariant(k, Invariance::Left, &f), true);
                assert_eq!(lhs, rhs, "{f}");
                // ∂θ − iθ∂t commutes with left translations
                let lhs = apply_d(k, &translate(&f, false));
                let rhs = translate(&apply_d(k, &f), false);
                assert_eq!(lhs, rhs, "{f}");
            }
        }
    }
}
