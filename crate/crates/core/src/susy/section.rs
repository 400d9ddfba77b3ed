use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{ComplexScalar, Scalar};
use crate::susy::form::PolyForm;
use crate::GaussianRational;

/// Key of a section component: r^{twice_q/2} times ρ^{rho}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectionKey {
    pub twice_q: i32,
    pub rho: bool,
}

/// Σ c · r^q · ρ^a · α with q ∈ ½ℤ, a ∈ {0,1} and α a polynomial form.
#[derive(Clone, PartialEq)]
pub struct Section<S: ComplexScalar> {
    n: usize,
    parts: BTreeMap<SectionKey, PolyForm<S>>,
}

impl<S: ComplexScalar> Section<S> {
    pub fn zero(n: usize) -> Self {
        Section { n, parts: BTreeMap::new() }
    }

    /// r^{twice_q/2} ⊗ α, or r^{twice_q/2} ρ ⊗ α when `rho`.
    pub fn term(twice_q: i32, rho: bool, form: PolyForm<S>) -> Self {
        let mut s = Self::zero(form.dimension());
        s.insert(SectionKey { twice_q, rho }, form);
        s
    }

    fn insert(&mut self, key: SectionKey, form: PolyForm<S>) {
        assert_eq!(form.dimension(), self.n, "section and form dimensions differ");
        let merged = match self.parts.remove(&key) {
            Some(existing) => existing + form,
            None => form,
        };
        if !merged.is_zero() {
            self.parts.insert(key, merged);
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> impl Iterator<Item = (&SectionKey, &PolyForm<S>)> {
        self.parts.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn depends_on_rho(&self) -> bool {
        self.parts.keys().any(|k| k.rho)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (k, f) in &self.parts {
            out.insert(*k, f.scale(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, f) in &other.parts {
            out.insert(*k, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// Q = 2iρ d/dr + d − i(ρ/r)·deg, with ρ anticommuting with d.
    pub fn apply_q(&self) -> Self {
        let i = S::i();
        let mut out = Self::zero(self.n);
        for (k, alpha) in &self.parts {
            if k.rho {
                out.insert(*k, -alpha.d());
            } else {
                let radial = alpha.scale(&S::from_i64(k.twice_q as i64)) - alpha.deg_operator();
                out.insert(SectionKey { twice_q: k.twice_q - 2, rho: true }, radial.scale(&i));
                out.insert(*k, alpha.d());
            }
        }
        out
    }

    pub fn q_squared(&self) -> Self {
        self.apply_q().apply_q()
    }

    /// −(i/r)·ρ⊗d applied to the section.
    pub fn minus_i_rho_d_over_r(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (k, alpha) in &self.parts {
            if !k.rho {
                out.insert(SectionKey { twice_q: k.twice_q - 2, rho: true }, alpha.d().scale(&-S::i()));
            }
        }
        out
    }

    pub fn is_supersymmetric(&self) -> bool {
        self.apply_q().is_zero()
    }

    /// Residues mod 4 of the 𝓛-weights of all terms; ρ counts as one degree.
    pub fn grade(&self) -> BTreeSet<u8> {
        let mut out = BTreeSet::new();
        for (k, f) in &self.parts {
            for (m, _) in f.terms() {
                out.insert(((m.degree() + k.rho as u32) % 4) as u8);
            }
        }
        out
    }

    /// Whether this is a section of 𝓛^k.
    pub fn is_section_of(&self, k: i64) -> bool {
        let g = self.grade();
        g.is_empty() || (g.len() == 1 && g.contains(&(k.rem_euclid(4) as u8)))
    }

    /// Graded product: (r^q ρ^a α)(r^p ρ^b β) = (−1)^{|α| b} r^{q+p} ρ^{a+b} α∧β.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "sections over different spaces");
        let mut out = Self::zero(self.n);
        for (ka, fa) in &self.parts {
            for (kb, fb) in &other.parts {
                if ka.rho && kb.rho {
                    continue;
                }
                let key = SectionKey { twice_q: ka.twice_q + kb.twice_q, rho: ka.rho || kb.rho };
                let mut even = fa.clone();
                let mut odd = fa.clone();
                for deg in fa.degrees() {
                    if deg % 2 == 0 {
                        odd = odd - fa.component(deg);
                    } else {
                        even = even - fa.component(deg);
                    }
                }
                let prod = if kb.rho { even.wedge(fb) - odd.wedge(fb) } else { fa.wedge(fb) };
                out.insert(key, prod);
            }
        }
        out
    }

    /// The closed-form representative Σ (2π)^{−k/2} ω_k.
    pub fn to_cocycle(&self) -> Result<Cocycle<S>> {
        if !self.is_supersymmetric() {
            return Err(Error::Precondition("section is not supersymmetric".into()));
        }
        if self.depends_on_rho() {
            return Err(Error::Precondition("section depends on ρ".into()));
        }
        let mut parts = BTreeMap::new();
        for (k, f) in &self.parts {
            parts.insert(k.twice_q, f.clone());
        }
        Ok(Cocycle { n: self.n, parts })
    }

    pub fn render(&self) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        self.parts
            .iter()
            .map(|(k, f)| {
                let r =
                    if k.twice_q % 2 == 0 { format!("r^{}", k.twice_q / 2) } else { format!("r^({}/2)", k.twice_q) };
                let rho = if k.rho { "ρ" } else { "1" };
                format!("{r}⊗{rho}⊗({})", f.render())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: ComplexScalar> fmt::Debug for Section<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// coefficient · (2π)^{−k/2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPiPower {
    pub coefficient: BigRational,
    pub k: i32,
}

impl TwoPiPower {
    pub fn new(coefficient: BigRational, k: i32) -> Self {
        TwoPiPower { coefficient, k }
    }

    pub fn unit(k: i32) -> Self {
        Self::new(BigRational::one(), k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coefficient * &other.coefficient, self.k + other.k)
    }

    /// Exponent of 2π as a rational: −k/2.
    pub fn exponent(&self) -> BigRational {
        BigRational::new(BigInt::from(-self.k), BigInt::from(2))
    }

    pub fn render(&self) -> String {
        let e = self.exponent();
        let exp = if e.is_integer() { e.numer().to_string() } else { format!("{}/{}", e.numer(), e.denom()) };
        format!("{}*(2π)^({exp})", self.coefficient.render())
    }
}

/// A closed-form representative Σ_k (2π)^{−k/2} ω_k, keyed by k.
#[derive(Clone, PartialEq)]
pub struct Cocycle<S: ComplexScalar> {
    n: usize,
    parts: BTreeMap<i32, PolyForm<S>>,
}

impl<S: ComplexScalar> Cocycle<S> {
    /// Builds from (2π)-tagged closed forms; the tag must match the degree.
    pub fn from_parts(n: usize, parts: Vec<(TwoPiPower, PolyForm<S>)>) -> Result<Self> {
        let mut out = Cocycle { n, parts: BTreeMap::new() };
        for (p, w) in parts {
            if w.is_zero() {
                continue;
            }
            if w.deg() != Some(p.k as u32) || p.k < 0 {
                return Err(Error::Precondition(format!("form {w} does not have degree {}", p.k)));
            }
            if !w.is_closed() {
                return Err(Error::Precondition(format!("form {w} is not closed")));
            }
            let w = w.scale(&S::from_rational(&p.coefficient));
            let merged = match out.parts.remove(&p.k) {
                Some(e) => e + w,
                None => w,
            };
            if !merged.is_zero() {
                out.parts.insert(p.k, merged);
            }
        }
        Ok(out)
    }

    pub fn parts(&self) -> Vec<(TwoPiPower, PolyForm<S>)> {
        self.parts.iter().map(|(k, w)| (TwoPiPower::unit(*k), w.clone())).collect()
    }

    /// Inverse of [`Section::to_cocycle`]: (2π)^{−k/2} ω ↦ r^{k/2} ⊗ ω.
    pub fn to_section(&self) -> Section<S> {
        let mut s = Section::zero(self.n);
        for (k, w) in &self.parts {
            s.insert(SectionKey { twice_q: *k, rho: false }, w.clone());
        }
        s
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Cocycle { n: self.n, parts: BTreeMap::new() };
        for (ka, wa) in &self.parts {
            for (kb, wb) in &other.parts {
                let w = wa.wedge(wb);
                let merged = match out.parts.remove(&(ka + kb)) {
                    Some(e) => e + w,
                    None => w,
                };
                if !merged.is_zero() {
                    out.parts.insert(ka + kb, merged);
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        self.parts().iter().map(|(p, w)| format!("{}*({})", p.render(), w.render())).collect::<Vec<_>>().join(" + ")
    }
}

impl<S: ComplexScalar> fmt::Debug for Cocycle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn ratio_parts(q: &BigRational) -> (String, String) {
    (q.numer().to_string(), q.denom().to_string())
}

impl Cocycle<GaussianRational> {
    /// One JSON record per monomial.
    pub fn to_json(&self) -> Value {
        let mut out = Vec::new();
        for (k, w) in &self.parts {
            let exponent = -(*k as f64) / 2.0;
            for (m, c) in w.terms() {
                let (num, den) = ratio_parts(&c.re);
                let mut rec = json!({
                    "coeff_num": num,
                    "coeff_den": den,
                    "two_pi_exponent": exponent,
                    "monomial": m.exponents,
                    "form_indices": m.form_indices(),
                });
                if !c.im.is_zero() {
                    let (inum, iden) = ratio_parts(&c.im);
                    rec["coeff_im_num"] = json!(inum);
                    rec["coeff_im_den"] = json!(iden);
                }
                out.push(rec);
            }
        }
        Value::Array(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannElement;
    use crate::Grassmann;

    type Q = GaussianRational;
    type Form = PolyForm<Q>;
    type Sec = Section<Q>;

    fn mono(n: usize, e: &[u32], dx: &[usize]) -> Form {
        Form::monomial(n, Q::one(), e, dx).unwrap()
    }

    /// Image in the Grassmann algebra: xⱼ even, dxⱼ ↦ odd ψⱼ, ρ odd, r even.
    fn to_grassmann(s: &Sec) -> Grassmann {
        let mut out = Grassmann::zero();
        for (k, f) in s.parts() {
            assert!(k.twice_q % 2 == 0, "oracle needs integer r-powers");
            let mut prefix = Grassmann::even_pow("r", k.twice_q / 2);
            if k.rho {
                prefix = prefix * Grassmann::odd("ρ");
            }
            for (m, c) in f.terms() {
                let mut t = prefix.clone().scale(c);
                for (j, e) in m.exponents.iter().enumerate() {
                    t = t * Grassmann::even_pow(&format!("x{}", j + 1), *e as i32);
                }
                for j in m.form_indices() {
                    t = t * Grassmann::odd(&format!("ψ{j}"));
                }
                out = out + t;
            }
        }
        out
    }

    /// Infinitesimal ν-action read off from
    /// (r,ρ,x,ψ) ↦ (r + 2iνρ, ρ, x + νψ, (1 + iρν/r)ψ) at u = 0.
    fn q_oracle(g: &Grassmann, n: usize) -> Grassmann {
        let i = Q::i();
        let nu = Grassmann::odd("ν");
        let rho = Grassmann::odd("ρ");
        let r = Grassmann::even("r");
        // rename the coordinates so the substitution is simultaneous
        let mut h = g.substitute_even("r", &Grassmann::even("R")).unwrap();
        for j in 1..=n {
            h = h
                .substitute_even(&format!("x{j}"), &Grassmann::even(&format!("X{j}")))
                .unwrap()
                .substitute_odd(&format!("ψ{j}"), &Grassmann::odd(&format!("Ψ{j}")))
                .unwrap();
        }
        let r_new = r.clone() + (nu.clone() * rho.clone()).scale(&(i.clone() * Q::from_i64(2)));
        h = h.substitute_even("R", &r_new).unwrap();
        let scale = Grassmann::one() + (rho * nu.clone() * Grassmann::even_pow("r", -1)).scale(&i);
        for j in 1..=n {
            let psi = Grassmann::odd(&format!("ψ{j}"));
            let x_new = Grassmann::even(&format!("x{j}")) + nu.clone() * psi.clone();
            h = h
                .substitute_even(&format!("X{j}"), &x_new)
                .unwrap()
                .substitute_odd(&format!("Ψ{j}"), &(scale.clone() * psi))
                .unwrap();
        }
        h.d_odd("ν")
    }

    fn spanning_sections(n: usize) -> Vec<Sec> {
        let mut out = Vec::new();
        let exps: Vec<Vec<u32>> = vec![
            vec![0; n],
            {
                let mut e = vec![0; n];
                e[0] = 1;
                e
            },
            {
                let mut e = vec![0; n];
                e[n - 1] = 2;
                e[0] = 1;
                e
            },
        ];
        let masks: Vec<Vec<usize>> = vec![vec![], vec![1], vec![n], vec![1, 2], (1..=n).collect()];
        for twice_q in [-4, -2, 0, 2, 4] {
            for e in &exps {
                for dx in &masks {
                    for rho in [false, true] {
                        out.push(Sec::term(twice_q, rho, mono(n, e, dx)));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn q_agrees_with_infinitesimal_action() {
        for n in [2, 3] {
            for s in spanning_sections(n) {
                let lhs = to_grassmann(&s.apply_q());
                let rhs = q_oracle(&to_grassmann(&s), n);
                assert_eq!(lhs, rhs, "section {s:?}");
            }
        }
    }

    #[test]
    fn q_squared_closed_form() {
        for n in [2, 3, 5] {
            for s in spanning_sections(n) {
                assert_eq!(s.q_squared(), s.minus_i_rho_d_over_r(), "section {s:?}");
            }
            for twice_q in [-3, -1, 1, 3] {
                let s = Sec::term(
                    twice_q,
                    false,
                    mono(
                        n,
                        &{
                            let mut e = vec![0; n];
                            e[0] = 2;
                            e
                        },
                        &[2],
                    ),
                );
                assert_eq!(s.q_squared(), s.minus_i_rho_d_over_r());
            }
        }
        let s = Sec::term(0, false, mono(2, &[1, 0], &[2]));
        let expected = Sec::term(-2, true, mono(2, &[0, 0], &[1, 2]).scale(&-Q::i()));
        assert_eq!(s.q_squared(), expected);
    }

    #[test]
    fn kernel_examples() {
        assert!(Sec::term(0, false, Form::one(2)).is_supersymmetric());
        let omega = mono(4, &[0, 0, 0, 0], &[1, 2]);
        assert!(Sec::term(2, false, omega.clone()).is_supersymmetric());
        assert!(!Sec::term(4, false, omega).is_supersymmetric());
        assert!(Sec::zero(3).is_supersymmetric());
        let alpha = mono(3, &[0, 0, 1], &[1, 2]);
        let q = Sec::term(2, false, alpha.clone()).apply_q();
        assert_eq!(q, Sec::term(2, false, alpha.d()));
        assert!(!q.is_zero());
        let closed_deg2 = mono(3, &[1, 0, 0], &[1, 2]);
        assert!(Sec::term(2, false, closed_deg2).is_supersymmetric());
    }

    #[test]
    fn q_is_odd_and_shifts_weight() {
        for s in spanning_sections(3) {
            let q = s.apply_q();
            if q.is_zero() {
                continue;
            }
            let g: Vec<u8> = s.grade().into_iter().collect();
            let shifted: BTreeSet<u8> = g.iter().map(|w| (w + 1) % 4).collect();
            assert_eq!(q.grade(), shifted, "{s:?}");
        }
    }

    #[test]
    fn grade_examples() {
        assert_eq!(Sec::term(4, false, mono(4, &[0; 4], &[1, 2, 3, 4])).grade(), BTreeSet::from([0]));
        assert_eq!(Sec::term(1, false, mono(4, &[0; 4], &[1])).grade(), BTreeSet::from([1]));
        let s =
            Sec::term(1, false, mono(5, &[0; 5], &[1])).add(&Sec::term(5, false, mono(5, &[0; 5], &[1, 2, 3, 4, 5])));
        assert_eq!(s.grade(), BTreeSet::from([1]));
        assert!(s.is_section_of(5));
    }

    #[test]
    fn product_is_graded_and_weight_additive() {
        let a = Sec::term(1, false, mono(3, &[1, 0, 0], &[2]));
        let b = Sec::term(0, true, mono(3, &[0, 1, 0], &[]));
        let ab = a.product(&b);
        let ba = b.product(&a);
        // both factors odd: they anticommute
        assert_eq!(ab, ba.scale(&-Q::one()));
        let wa = *a.grade().iter().next().unwrap();
        let wb = *b.grade().iter().next().unwrap();
        assert_eq!(ab.grade(), BTreeSet::from([(wa + wb) % 4]));
        // Leibniz rule for Q
        let lhs = ab.apply_q();
        let rhs = a.apply_q().product(&b).add(&a.product(&b.apply_q()).scale(&-Q::one()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_matches_grassmann_product() {
        let secs = spanning_sections(3);
        for a in secs.iter().step_by(7) {
            for b in secs.iter().step_by(5) {
                assert_eq!(to_grassmann(&a.product(b)), to_grassmann(a) * to_grassmann(b));
            }
        }
    }

    #[test]
    fn cocycle_roundtrip_and_cup_product() {
        let w = mono(4, &[0; 4], &[1, 2]);
        let s = Sec::term(2, false, w.clone());
        let c = s.to_cocycle().unwrap();
        assert_eq!(c.parts(), vec![(TwoPiPower::unit(2), w.clone())]);
        assert_eq!(c.parts()[0].0.render(), "1*(2π)^(-1)");
        assert_eq!(c.to_section(), s);
        let one = Sec::term(0, false, Form::one(4)).to_cocycle().unwrap();
        assert_eq!(one.parts(), vec![(TwoPiPower::unit(0), Form::one(4))]);
        let v = Sec::term(2, false, mono(4, &[0; 4], &[3, 4]));
        let lhs = s.product(&v).to_cocycle().unwrap();
        let rhs = c.wedge(&v.to_cocycle().unwrap());
        assert_eq!(lhs, rhs);
        assert!(Sec::term(4, false, w).to_cocycle().is_err());
        let j = c.to_json();
        assert_eq!(j[0]["two_pi_exponent"], json!(-1.0));
        assert_eq!(j[0]["form_indices"], json!([1, 2]));
    }

    #[test]
    fn grassmann_image_is_faithful_on_forms() {
        let f = mono(2, &[1, 0], &[2]);
        let g = to_grassmann(&Sec::term(0, false, f));
        assert_eq!(g, GrassmannElement::even("x1") * GrassmannElement::odd("ψ2"));
    }
}
