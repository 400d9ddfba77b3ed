//! Graded polynomials in Pontryagin classes p_k or Pontryagin characters ph_k
//! (both of cohomological degree 4k), Newton conversions between them, and
//! Hirzebruch multiplicative sequences.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};
use crate::series::truncated::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// Pontryagin classes p₁, p₂, …
    Pontryagin,
    /// Pontryagin characters ph₁, ph₂, …
    Character,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Pontryagin => "p",
            Basis::Character => "ph",
        }
    }
}

/// Canonical key of a monomial, e.g. "p1^2", "p1p2"; "1" for the unit.
pub fn monomial_key(basis: Basis, exponents: &[u32]) -> String {
    let mut s = String::new();
    for (i, &e) in exponents.iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&format!("{}{}", basis.symbol(), i + 1)),
            _ => s.push_str(&format!("{}{}^{}", basis.symbol(), i + 1, e)),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Weight Σ k·e_k of an exponent vector; the degree is 4·weight.
pub fn weight(exponents: &[u32]) -> u32 {
    exponents.iter().enumerate().map(|(i, e)| (i as u32 + 1) * e).sum()
}

/// Polynomial in p₁..p_K (or ph₁..ph_K), truncated above weight K.
#[derive(Clone, PartialEq)]
pub struct GradedPolynomial<S: Scalar> {
    basis: Basis,
    k_max: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> GradedPolynomial<S> {
    pub fn zero(basis: Basis, k_max: usize) -> Self {
        GradedPolynomial { basis, k_max, terms: BTreeMap::new() }
    }

    pub fn constant(basis: Basis, k_max: usize, c: S) -> Self {
        let mut p = Self::zero(basis, k_max);
        p.insert(vec![0; k_max], c);
        p
    }

    pub fn one(basis: Basis, k_max: usize) -> Self {
        Self::constant(basis, k_max, S::one())
    }

    /// The generator of index k (1-based).
    pub fn var(basis: Basis, k_max: usize, k: usize) -> Self {
        assert!((1..=k_max).contains(&k), "generator index {k} outside 1..={k_max}");
        let mut e = vec![0; k_max];
        e[k - 1] = 1;
        let mut p = Self::zero(basis, k_max);
        p.insert(e, S::one());
        p
    }

    pub fn monomial(basis: Basis, k_max: usize, exponents: Vec<u32>, c: S) -> Self {
        assert_eq!(exponents.len(), k_max);
        let mut p = Self::zero(basis, k_max);
        p.insert(exponents, c);
        p
    }

    fn insert(&mut self, e: Vec<u32>, c: S) {
        if weight(&e) as usize > self.k_max {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> S {
        self.terms.get(exponents).cloned().unwrap_or_else(S::zero)
    }

    fn compatible(&self, other: &Self) {
        assert_eq!(self.basis, other.basis, "mixing p and ph polynomials");
        assert_eq!(self.k_max, other.k_max, "mixing truncation orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.basis, self.k_max);
        for (e, v) in &self.terms {
            out.insert(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.compatible(other);
        let mut out = Self::zero(self.basis, self.k_max);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.basis, self.k_max), |acc, _| acc.mul(self))
    }

    /// Homogeneous part of the given weight (degree 4·weight).
    pub fn component(&self, w: u32) -> Self {
        let mut out = Self::zero(self.basis, self.k_max);
        for (e, c) in &self.terms {
            if weight(e) == w {
                out.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn constant_term(&self) -> S {
        self.coefficient(&vec![0; self.k_max])
    }

    /// exp of a polynomial without constant term, truncated at weight K.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        let mut out = Self::one(self.basis, self.k_max);
        let mut power = Self::one(self.basis, self.k_max);
        for j in 1..=self.k_max {
            power = power.mul(self).scale(&(S::one() / S::from_i64(j as i64)));
            out = out.add(&power);
        }
        Ok(out)
    }

    /// Replaces generator k by `images[k-1]`.
    pub fn substitute(&self, images: &[GradedPolynomial<S>]) -> Result<Self> {
        if images.len() < self.k_max {
            return Err(Error::Structure(format!("need {} images, got {}", self.k_max, images.len())));
        }
        let target = &images[0];
        let mut out = Self::zero(target.basis, target.k_max);
        for (e, c) in &self.terms {
            let mut m = Self::constant(target.basis, target.k_max, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                m = m.mul(&images[i].pow(ei));
            }
            out = out.add(&m);
        }
        Ok(out)
    }

    /// Numeric value at p_k = values[k-1].
    pub fn evaluate(&self, values: &[S]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                for _ in 0..ei {
                    t = t * values.get(i).cloned().unwrap_or_else(S::zero);
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coefficients<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedPolynomial<T> {
        let mut out = GradedPolynomial::zero(self.basis, self.k_max);
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| weight(a).cmp(&weight(b)).then(b.cmp(a)));
        keys.iter()
            .map(|e| {
                let c = &self.terms[*e];
                let key = monomial_key(self.basis, e);
                if key == "1" {
                    c.render()
                } else {
                    format!("{}*{}", c.render(), key)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: Scalar> fmt::Debug for GradedPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<S: Scalar> fmt::Display for GradedPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn json_int(n: &num_bigint::BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

impl GradedPolynomial<BigRational> {
    /// [{monomial: [e₁..e_K], num, den}], ordered by weight then monomial.
    pub fn to_json(&self) -> Value {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| weight(a).cmp(&weight(b)).then(b.cmp(a)));
        Value::Array(
            keys.into_iter()
                .map(|e| {
                    let c = &self.terms[e];
                    json!({"monomial": e, "num": json_int(c.numer()), "den": json_int(c.denom())})
                })
                .collect(),
        )
    }
}

/// ph_k = P_k/(2k)! as polynomials in p, where P_k = Σ x_j^{2k} and p_i are
/// the elementary symmetric functions of the x_j².
pub fn pontryagin_to_powersums<S: Scalar>(k_max: usize) -> Vec<GradedPolynomial<S>> {
    let b = Basis::Pontryagin;
    let e = |i: usize| GradedPolynomial::<S>::var(b, k_max, i);
    let mut power_sums: Vec<GradedPolynomial<S>> = Vec::new();
    for k in 1..=k_max {
        let mut pk = e(k).scale(&S::from_i64(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
        for i in 1..k {
            let term = e(i).mul(&power_sums[k - i - 1]);
            pk = if i % 2 == 1 { pk.add(&term) } else { pk.sub(&term) };
        }
        power_sums.push(pk);
    }
    power_sums
        .into_iter()
        .enumerate()
        .map(|(i, pk)| pk.scale(&(S::one() / S::from_rational(&factorial(2 * (i as u32 + 1))))))
        .collect()
}

/// p_k as polynomials in ph, inverting [`pontryagin_to_powersums`].
pub fn powersums_to_pontryagin<S: Scalar>(k_max: usize) -> Vec<GradedPolynomial<S>> {
    let b = Basis::Character;
    let power_sum =
        |i: usize| GradedPolynomial::<S>::var(b, k_max, i).scale(&S::from_rational(&factorial(2 * i as u32)));
    let mut e: Vec<GradedPolynomial<S>> = vec![GradedPolynomial::one(b, k_max)];
    for k in 1..=k_max {
        let mut acc = GradedPolynomial::zero(b, k_max);
        for i in 1..=k {
            let term = e[k - i].mul(&power_sum(i));
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        e.push(acc.scale(&(S::one() / S::from_i64(k as i64))));
    }
    e.into_iter().skip(1).collect()
}

/// Rewrites a p-polynomial in ph or vice versa.
pub fn convert_basis<S: Scalar>(poly: &GradedPolynomial<S>) -> Result<GradedPolynomial<S>> {
    let k = poly.k_max();
    match poly.basis() {
        Basis::Pontryagin => poly.substitute(&powersums_to_pontryagin(k)),
        Basis::Character => poly.substitute(&pontryagin_to_powersums(k)),
    }
}

type Multi<S> = BTreeMap<Vec<u32>, S>;

fn multi_mul<S: Scalar>(a: &Multi<S>, b: &Multi<S>, cap: u32) -> Multi<S> {
    let mut out: Multi<S> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<u32>() > cap {
                continue;
            }
            let entry = out.entry(e).or_insert_with(S::zero);
            *entry = entry.clone() + ca.clone() * cb.clone();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The multiplicative sequence of an even series Q with Q(0) = 1: the
/// weight-k parts L_1..L_K of Π_j Q(x_j) written in p_i = e_i(x_1², …).
///
/// Uses K variables y_j = x_j², enough to separate all monomials of weight ≤ K.
pub fn multiplicative_sequence<S: Scalar>(q: &TruncatedSeries<S>, k_max: usize) -> Result<Vec<GradedPolynomial<S>>> {
    if q.coeff(0) != S::one() || !q.is_even() {
        return Err(Error::Precondition("series must be even with constant term 1".into()));
    }
    if q.order() < 2 * k_max {
        return Err(Error::Precondition(format!("series order {} below 2K = {}", q.order(), 2 * k_max)));
    }
    let cap = k_max as u32;
    let n = k_max;
    let mut product: Multi<S> = BTreeMap::from([(vec![0; n], S::one())]);
    for j in 0..n {
        let mut factor: Multi<S> = BTreeMap::new();
        for m in 0..=k_max {
            let c = q.coeff(2 * m);
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[j] = m as u32;
                factor.insert(e, c);
            }
        }
        product = multi_mul(&product, &factor, cap);
    }
    // e_i(y) as multivariate polynomials
    let mut elementary: Vec<Multi<S>> = Vec::new();
    for i in 1..=n {
        let mut ei: Multi<S> = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == i {
                let e = (0..n).map(|j| (mask >> j) & 1).collect();
                ei.insert(e, S::one());
            }
        }
        elementary.push(ei);
    }
    let mut result = GradedPolynomial::zero(Basis::Pontryagin, k_max);
    while let Some((lead, c)) = product.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        // leading monomial of a symmetric polynomial is a partition
        let mut a = vec![0u32; n];
        for i in 0..n {
            let next = if i + 1 < n { lead[i + 1] } else { 0 };
            if lead[i] < next {
                return Err(Error::Convention("product is not symmetric".into()));
            }
            a[i] = lead[i] - next;
        }
        let mut m: Multi<S> = BTreeMap::from([(vec![0; n], c.clone())]);
        for (i, &ai) in a.iter().enumerate() {
            for _ in 0..ai {
                m = multi_mul(&m, &elementary[i], cap);
            }
        }
        for (e, v) in m {
            let entry = product.entry(e.clone()).or_insert_with(S::zero);
            *entry = entry.clone() - v;
            if entry.is_zero() {
                product.remove(&e);
            }
        }
        result.insert(a, c);
    }
    Ok((1..=k_max as u32).map(|w| result.component(w)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::series::characteristic::l_series;
    use crate::series::hirzebruch_series;
    use crate::Rational;

    type P = GradedPolynomial<Rational>;

    fn p(k_max: usize, i: usize) -> P {
        P::var(Basis::Pontryagin, k_max, i)
    }

    #[test]
    fn hirzebruch_l_polynomials() {
        let l = multiplicative_sequence(&hirzebruch_series(8), 4).unwrap();
        let k = 4;
        assert_eq!(l[0], p(k, 1).scale(&rat(1, 3)));
        assert_eq!(l[1], p(k, 2).scale(&rat(7, 45)).sub(&p(k, 1).pow(2).scale(&rat(1, 45))));
        let l3 = p(k, 3)
            .scale(&rat(62, 945))
            .sub(&p(k, 1).mul(&p(k, 2)).scale(&rat(13, 945)))
            .add(&p(k, 1).pow(3).scale(&rat(2, 945)));
        assert_eq!(l[2], l3);
        assert_eq!(l[0].render(), "1/3*p1");
    }

    #[test]
    fn newton_examples() {
        let ph = pontryagin_to_powersums::<Rational>(3);
        assert_eq!(ph[0], p(3, 1).scale(&rat(1, 2)));
        assert_eq!(ph[1], p(3, 1).pow(2).sub(&p(3, 2).scale(&rat(2, 1))).scale(&rat(1, 24)));
        let m = p(3, 1).mul(&p(3, 2));
        let there = convert_basis(&m).unwrap();
        assert_eq!(there.basis(), Basis::Character);
        assert_eq!(convert_basis(&there).unwrap(), m);
    }

    /// Oracle: log Π Q(x_j) = Σ_m c_m P_m with log Q(√y) = Σ c_m y^m.
    fn via_log(q: &TruncatedSeries<Rational>, k_max: usize) -> P {
        let log = q.log().unwrap();
        let ph = pontryagin_to_powersums::<Rational>(k_max);
        let mut exponent = P::zero(Basis::Pontryagin, k_max);
        for m in 1..=k_max {
            let power_sum = ph[m - 1].scale(&factorial(2 * m as u32));
            exponent = exponent.add(&power_sum.scale(&log.coeff(2 * m)));
        }
        exponent.exp().unwrap()
    }

    #[test]
    fn symmetric_expansion_matches_log_route() {
        for k_max in 1..=5 {
            let q = l_series::<Rational>(2 * k_max);
            let direct = multiplicative_sequence(&q, k_max).unwrap();
            let oracle = via_log(&q, k_max);
            for w in 1..=k_max {
                assert_eq!(direct[w - 1], oracle.component(w as u32), "weight {w}");
            }
        }
    }

    #[test]
    fn whitney_multiplicativity() {
        // L(V ⊕ W) = L(V)L(W) weight by weight, with p(V ⊕ W) = p(V)p(W)
        let k = 4;
        let l = multiplicative_sequence(&hirzebruch_series(8), k).unwrap();
        let pv = [rat(1, 1), rat(3, 1), rat(2, 1), rat(-7, 3)];
        let pw = [rat(1, 1), rat(-1, 2), rat(5, 1), rat(4, 1)];
        let mut sum = vec![rat(0, 1); k];
        for i in 0..=3 {
            for j in 0..=3 {
                if (1..=k).contains(&(i + j)) {
                    sum[i + j - 1] += &pv[i] * &pw[j];
                }
            }
        }
        let graded = |w: usize, v: &[Rational]| {
            if w == 0 {
                rat(1, 1)
            } else {
                l[w - 1].evaluate(v)
            }
        };
        for w in 1..=k {
            let rhs = (0..=w).fold(rat(0, 1), |acc, a| acc + graded(a, &pv[1..]) * graded(w - a, &pw[1..]));
            assert_eq!(graded(w, &sum), rhs, "weight {w}");
        }
    }

    #[test]
    fn json_shape() {
        let l1 = p(2, 1).scale(&rat(1, 3));
        let j = l1.to_json();
        assert_eq!(j, json!([{"monomial": [1, 0], "num": 1, "den": 3}]));
        assert_eq!(monomial_key(Basis::Pontryagin, &[2, 0]), "p1^2");
        assert_eq!(monomial_key(Basis::Pontryagin, &[1, 1]), "p1p2");
        assert_eq!(monomial_key(Basis::Character, &[0, 0]), "1");
    }
}
