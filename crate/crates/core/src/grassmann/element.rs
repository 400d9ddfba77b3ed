//! Supernumbers: a finite exterior algebra on named odd generators, tensored
//! with Laurent polynomials in named even indeterminates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A named generator. Ordering is lexicographic on the name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A basis monomial: an ordered product of distinct odd generators times a
/// Laurent monomial in even indeterminates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Term {
    odd: Vec<Symbol>,
    even: BTreeMap<Symbol, i32>,
}

impl Term {
    pub fn one() -> Self {
        Term::default()
    }

    pub fn odd_part(&self) -> &[Symbol] {
        &self.odd
    }

    pub fn even_part(&self) -> &BTreeMap<Symbol, i32> {
        &self.even
    }

    pub fn even_exponent(&self, var: &Symbol) -> i32 {
        self.even.get(var).copied().unwrap_or(0)
    }

    fn parity(&self) -> Parity {
        Parity::of_degree(self.odd.len())
    }

    /// Product of two basis monomials with its reordering sign, or `None` when
    /// an odd generator repeats.
    fn product(&self, other: &Term) -> Option<(bool, Term)> {
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() && j < other.odd.len() {
            match self.odd[i].cmp(&other.odd[j]) {
                std::cmp::Ordering::Less => {
                    odd.push(self.odd[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // other.odd[j] jumps over the remaining left generators
                    if (self.odd.len() - i) % 2 == 1 {
                        negative = !negative;
                    }
                    odd.push(other.odd[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        odd.extend_from_slice(&self.odd[i..]);
        odd.extend_from_slice(&other.odd[j..]);
        let mut even = self.even.clone();
        for (v, e) in &other.even {
            let entry = even.entry(v.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                even.remove(v);
            }
        }
        Some((negative, Term { odd, even }))
    }

    fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.odd.is_empty() {
            parts.push(self.odd.iter().map(|s| s.name().to_string()).collect::<Vec<_>>().join("∧"));
        }
        for (v, e) in &self.even {
            if *e == 1 {
                parts.push(v.name().to_string());
            } else {
                parts.push(format!("{}^{}", v.name(), e));
            }
        }
        parts.join("*")
    }
}

/// An element of the Grassmann algebra with coefficients in `S`.
///
/// Terms are stored in canonical form: odd generators strictly increasing,
/// zero coefficients dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct GrassmannElement<S: Scalar> {
    terms: BTreeMap<Term, S>,
}

impl<S: Scalar> Default for GrassmannElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> GrassmannElement<S> {
    pub fn zero() -> Self {
        GrassmannElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(Term::one(), c);
        out
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(S::from_i64(n))
    }

    /// The odd generator named `name`.
    pub fn odd(name: &str) -> Self {
        let term = Term { odd: vec![Symbol::new(name)], even: BTreeMap::new() };
        let mut out = Self::zero();
        out.add_term(term, S::one());
        out
    }

    /// The even indeterminate named `name`.
    pub fn even(name: &str) -> Self {
        Self::even_pow(name, 1)
    }

    /// `name^exponent`; negative exponents are allowed.
    pub fn even_pow(name: &str, exponent: i32) -> Self {
        let mut even = BTreeMap::new();
        if exponent != 0 {
            even.insert(Symbol::new(name), exponent);
        }
        let mut out = Self::zero();
        out.add_term(Term { odd: Vec::new(), even }, S::one());
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Term, S)>) -> Self {
        let mut out = Self::zero();
        for (t, c) in terms {
            out.add_term(t, c);
        }
        out
    }

    fn add_term(&mut self, term: Term, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&term) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&term);
                }
            }
            None => {
                self.terms.insert(term, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GrassmannElement { terms: self.terms.iter().map(|(t, v)| (t.clone(), v.clone() * c.clone())).collect() }
    }

    /// Parity if the element is homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for t in self.terms.keys() {
            let p = t.parity();
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.is_zero() || self.parity() == Some(Parity::Odd)
    }

    /// Part of the element free of odd generators.
    pub fn body(&self) -> Self {
        GrassmannElement {
            terms: self.terms.iter().filter(|(t, _)| t.odd.is_empty()).map(|(t, c)| (t.clone(), c.clone())).collect(),
        }
    }

    /// Part of the element carrying at least one odd generator.
    pub fn soul(&self) -> Self {
        self.clone() - self.body()
    }

    /// Coefficient of the pure scalar monomial.
    pub fn constant_term(&self) -> S {
        self.terms.get(&Term::one()).cloned().unwrap_or_else(S::zero)
    }

    /// Multiplicative inverse of an even element whose body is a single
    /// invertible monomial.
    pub fn inverse(&self) -> Result<Self> {
        let body = self.body();
        if body.terms.len() != 1 {
            return Err(Error::NotInvertible(format!("body of {} is not a single monomial", self.render())));
        }
        let (bt, bc) = body.terms.iter().next().unwrap();
        let mut inv_even = BTreeMap::new();
        for (v, e) in &bt.even {
            inv_even.insert(v.clone(), -e);
        }
        let body_inv =
            GrassmannElement::from_terms([(Term { odd: Vec::new(), even: inv_even }, S::one() / bc.clone())]);
        // self = body (1 + n), n nilpotent
        let n = body_inv.clone() * self.soul();
        let minus_n = -n;
        let mut sum = Self::one();
        let mut power = Self::one();
        loop {
            power = power * minus_n.clone();
            if power.is_zero() {
                break;
            }
            sum = sum + power.clone();
        }
        Ok(body_inv * sum)
    }

    /// exp of an element with no body; the series terminates.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.body().is_zero() {
            return Err(Error::Precondition(format!("exp needs a nilpotent argument, got {}", self.render())));
        }
        let mut sum = Self::one();
        let mut power = Self::one();
        let mut k = 0i64;
        loop {
            k += 1;
            power = (power * self.clone()).scale(&(S::one() / S::from_i64(k)));
            if power.is_zero() {
                break;
            }
            sum = sum + power.clone();
        }
        Ok(sum)
    }

    /// Left derivative with respect to an odd generator.
    pub fn d_odd(&self, gen: &str) -> Self {
        let gen = Symbol::new(gen);
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            if let Some(pos) = t.odd.iter().position(|s| *s == gen) {
                let mut odd = t.odd.clone();
                odd.remove(pos);
                let c = if pos % 2 == 1 { -c.clone() } else { c.clone() };
                out.add_term(Term { odd, even: t.even.clone() }, c);
            }
        }
        out
    }

    /// Derivative with respect to an even indeterminate.
    pub fn d_even(&self, var: &str) -> Self {
        let var = Symbol::new(var);
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            let e = t.even_exponent(&var);
            if e == 0 {
                continue;
            }
            let mut even = t.even.clone();
            if e == 1 {
                even.remove(&var);
            } else {
                even.insert(var.clone(), e - 1);
            }
            out.add_term(Term { odd: t.odd.clone(), even }, c.clone() * S::from_i64(e as i64));
        }
        out
    }

    /// Splits `self = a + gen·b` with `a`, `b` free of `gen`.
    pub fn split_odd(&self, gen: &str) -> (Self, Self) {
        let b = self.d_odd(gen);
        let a = self.clone() - Self::odd(gen) * b.clone();
        (a, b)
    }

    /// Replaces the odd generator `gen` by the odd element `value`.
    pub fn substitute_odd(&self, gen: &str, value: &Self) -> Result<Self> {
        if !value.is_odd() {
            return Err(Error::Structure(format!("odd generator {gen} substituted by non-odd {}", value.render())));
        }
        let (a, b) = self.split_odd(gen);
        Ok(a + value.clone() * b)
    }

    /// Replaces the even indeterminate `var` by the even element `value`.
    pub fn substitute_even(&self, var: &str, value: &Self) -> Result<Self> {
        if !value.is_even() {
            return Err(Error::Structure(format!(
                "even indeterminate {var} substituted by non-even {}",
                value.render()
            )));
        }
        let sym = Symbol::new(var);
        let mut inv: Option<Self> = None;
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            let e = t.even_exponent(&sym);
            let mut rest = t.clone();
            rest.even.remove(&sym);
            let base = if e >= 0 {
                value.clone()
            } else {
                if inv.is_none() {
                    inv = Some(value.inverse()?);
                }
                inv.clone().unwrap()
            };
            let mut factor = Self::one();
            for _ in 0..e.unsigned_abs() {
                factor = factor * base.clone();
            }
            out = out + GrassmannElement::from_terms([(rest, c.clone())]) * factor;
        }
        Ok(out)
    }

    /// True when every term contains the odd generator `gen`.
    pub fn in_ideal_of(&self, gen: &str) -> bool {
        let gen = Symbol::new(gen);
        self.terms.keys().all(|t| t.odd.contains(&gen))
    }

    /// True when some term involves the named symbol (odd or even).
    pub fn depends_on(&self, name: &str) -> bool {
        let sym = Symbol::new(name);
        self.terms.keys().any(|t| t.odd.contains(&sym) || t.even.contains_key(&sym))
    }

    /// Largest odd degree occurring in the element.
    pub fn max_odd_degree(&self) -> usize {
        self.terms.keys().map(|t| t.odd.len()).max().unwrap_or(0)
    }

    /// Smallest odd degree occurring in the element.
    pub fn min_odd_degree(&self) -> usize {
        self.terms.keys().map(|t| t.odd.len()).min().unwrap_or(0)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&S) -> S) -> Self {
        GrassmannElement::from_terms(self.terms.iter().map(|(t, c)| (t.clone(), f(c))))
    }

    /// Canonical string: terms in sorted order, generators in index order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(t, c)| {
                let m = t.render();
                if m.is_empty() {
                    c.render()
                } else {
                    format!("{}*{}", c.render(), m)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: Scalar> fmt::Debug for GrassmannElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<S: Scalar> fmt::Display for GrassmannElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<S: Scalar> Add for GrassmannElement<S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (t, c) in rhs.terms {
            self.add_term(t, c);
        }
        self
    }
}

impl<S: Scalar> Sub for GrassmannElement<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for GrassmannElement<S> {
    type Output = Self;

    fn neg(self) -> Self {
        GrassmannElement { terms: self.terms.into_iter().map(|(t, c)| (t, -c)).collect() }
    }
}

impl<S: Scalar> Mul for GrassmannElement<S> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, S: Scalar> Mul<&'a GrassmannElement<S>> for &'a GrassmannElement<S> {
    type Output = GrassmannElement<S>;

    fn mul(self, rhs: &GrassmannElement<S>) -> GrassmannElement<S> {
        let mut out = GrassmannElement::zero();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &rhs.terms {
                if let Some((negative, t)) = ta.product(tb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(t, if negative { -c } else { c });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianRational;

    type G = GrassmannElement<GaussianRational>;

    #[test]
    fn odd_generators_anticommute() {
        let a = G::odd("a");
        let b = G::odd("b");
        assert_eq!(a.clone() * b.clone(), -(b * a.clone()));
        assert!((a.clone() * a).is_zero());
    }

    #[test]
    fn laurent_cancellation() {
        let r = G::even("r");
        let rinv = G::even_pow("r", -1);
        assert_eq!(r * rinv, G::one());
    }

    #[test]
    fn inverse_of_unit_with_soul() {
        let x = G::even("r") + G::odd("a") * G::odd("b");
        let inv = x.inverse().unwrap();
        assert_eq!(x * inv, G::one());
    }

    #[test]
    fn inverse_rejects_sum_body() {
        let x = G::even("r") + G::one();
        assert!(x.inverse().is_err());
    }

    #[test]
    fn odd_derivative_has_koszul_sign() {
        let ab = G::odd("a") * G::odd("b");
        assert_eq!(ab.d_odd("a"), G::odd("b"));
        assert_eq!(ab.d_odd("b"), -G::odd("a"));
    }

    #[test]
    fn substitution_is_multiplicative() {
        let e = G::odd("a") * G::odd("c") * G::even("t");
        let val = G::odd("b") + G::odd("c") * G::even("t");
        let s = e.substitute_odd("a", &val).unwrap();
        assert_eq!(s, G::odd("b") * G::odd("c") * G::even("t"));
    }

    #[test]
    fn exp_of_nilpotent() {
        let n = G::odd("a") * G::odd("b");
        assert_eq!(n.exp_nilpotent().unwrap(), G::one() + n);
    }

    #[test]
    fn render_is_sorted() {
        let e = G::odd("b") * G::odd("a")
            + G::even("t").scale(&GaussianRational::new(crate::scalar::rat(1, 2), crate::scalar::int(0)));
        assert_eq!(e.render(), "1/2*t + -1*a∧b");
    }
}
