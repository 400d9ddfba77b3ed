//! Polynomial differential forms on ℝⁿ.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_DIMENSION: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormMonomial {
    /// Exponents of x₁..xₙ.
    pub exponents: Vec<u32>,
    /// Bit j set means dx_{j+1} is present; the wedge is taken in index order.
    pub mask: u32,
}

impl FormMonomial {
    pub fn degree(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn poly_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// 1-based indices of the dx factors.
    pub fn form_indices(&self) -> Vec<usize> {
        (0..32).filter(|j| self.mask & (1 << j) != 0).map(|j| j + 1).collect()
    }
}

fn wedge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // count pairs i ∈ a, j ∈ b with i > j
    let mut inversions = 0;
    for j in 0..32 {
        if b & (1 << j) != 0 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    Some(inversions % 2 == 1)
}

#[derive(Clone, PartialEq)]
pub struct PolyForm<S: Scalar> {
    n: usize,
    terms: BTreeMap<FormMonomial, S>,
}

impl<S: Scalar> PolyForm<S> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIMENSION, "ambient dimension {n} too large");
        PolyForm { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: S) -> Self {
        Self::monomial(n, c, &vec![0; n], &[]).expect("constant form is well formed")
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, S::one())
    }

    /// c·x^exponents dx_{i₁}∧…∧dx_{i_p} with 1-based indices, in the given order.
    pub fn monomial(n: usize, c: S, exponents: &[u32], dx: &[usize]) -> Result<Self> {
        if exponents.len() != n {
            return Err(Error::Structure(format!("expected {n} exponents, got {}", exponents.len())));
        }
        let mut out = Self::zero(n);
        let mut mask = 0u32;
        let mut negative = false;
        for &i in dx {
            if i == 0 || i > n {
                return Err(Error::Structure(format!("dx index {i} outside 1..={n}")));
            }
            match wedge_sign(mask, 1 << (i - 1)) {
                None => return Ok(out),
                Some(s) => {
                    negative ^= s;
                    mask |= 1 << (i - 1);
                }
            }
        }
        let c = if negative { -c } else { c };
        out.insert(FormMonomial { exponents: exponents.to_vec(), mask }, c);
        Ok(out)
    }

    pub fn x(n: usize, i: usize) -> Result<Self> {
        let mut e = vec![0; n];
        if i == 0 || i > n {
            return Err(Error::Structure(format!("x index {i} outside 1..={n}")));
        }
        e[i - 1] = 1;
        Self::monomial(n, S::one(), &e, &[])
    }

    pub fn dx(n: usize, i: usize) -> Result<Self> {
        Self::monomial(n, S::one(), &vec![0; n], &[i])
    }

    fn insert(&mut self, m: FormMonomial, c: S) {
        let entry = self.terms.entry(m.clone()).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (FormMonomial, S)>) -> Self {
        let mut out = Self::zero(n);
        for (m, c) in terms {
            out.insert(m, c);
        }
        out
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormMonomial, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())))
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.n, other.n, "forms on different ambient spaces");
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.check_dim(other);
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(neg) = wedge_sign(a.mask, b.mask) {
                    let exponents = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
                    let c = ca.clone() * cb.clone();
                    out.insert(FormMonomial { exponents, mask: a.mask | b.mask }, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            for j in 0..self.n {
                let e = m.exponents[j];
                if e == 0 {
                    continue;
                }
                if let Some(neg) = wedge_sign(1 << j, m.mask) {
                    let mut exponents = m.exponents.clone();
                    exponents[j] -= 1;
                    let c = c.clone() * S::from_i64(e as i64);
                    out.insert(FormMonomial { exponents, mask: m.mask | (1 << j) }, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// The degree if homogeneous (zero counts as homogeneous of every degree).
    pub fn deg(&self) -> Option<u32> {
        let degrees = self.degrees();
        match degrees.len() {
            0 => Some(0),
            1 => degrees.into_iter().next(),
            _ => None,
        }
    }

    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|m| m.degree()).collect()
    }

    /// Euler operator: multiplies each homogeneous piece by its degree.
    pub fn deg_operator(&self) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * S::from_i64(m.degree() as i64))),
        )
    }

    pub fn component(&self, degree: u32) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().filter(|(m, _)| m.degree() == degree).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// Radial homotopy operator K with dK + Kd = id on forms of positive
    /// degree: K(x^m dx_I) = x^m ι_E dx_I / (|m| + |I|).
    pub fn homotopy(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let p = m.degree();
            if p == 0 {
                continue;
            }
            let weight = S::from_i64((m.poly_degree() + p) as i64);
            let indices: Vec<usize> = (0..self.n).filter(|j| m.mask & (1 << j) != 0).collect();
            for (pos, &j) in indices.iter().enumerate() {
                let mut exponents = m.exponents.clone();
                exponents[j] += 1;
                let coeff = c.clone() / weight.clone();
                out.insert(
                    FormMonomial { exponents, mask: m.mask & !(1 << j) },
                    if pos % 2 == 1 { -coeff } else { coeff },
                );
            }
        }
        out
    }

    /// Exactness on ℝⁿ: degree-zero parts must vanish, the rest must be closed.
    pub fn is_exact(&self) -> bool {
        self.component(0).is_zero() && self.is_closed() && self.homotopy().d() == *self
    }

    /// A primitive β with dβ = self, when one exists.
    pub fn primitive(&self) -> Option<Self> {
        if self.is_exact() {
            Some(self.homotopy())
        } else {
            None
        }
    }

    /// Equality modulo exact forms.
    pub fn cohomologous(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_exact()
    }

    pub fn max_poly_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.poly_degree()).max().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                for (j, &e) in m.exponents.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("x{}", j + 1)),
                        _ => factors.push(format!("x{}^{}", j + 1, e)),
                    }
                }
                let dx: Vec<String> = m.form_indices().iter().map(|i| format!("dx{i}")).collect();
                if !dx.is_empty() {
                    factors.push(dx.join("∧"));
                }
                if factors.is_empty() {
                    c.render()
                } else {
                    format!("{}*{}", c.render(), factors.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: Scalar> fmt::Debug for PolyForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<S: Scalar> fmt::Display for PolyForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<S: Scalar> Add for PolyForm<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.check_dim(&rhs);
        for (m, c) in rhs.terms {
            self.insert(m, c);
        }
        self
    }
}

impl<S: Scalar> Neg for PolyForm<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Sub for PolyForm<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = PolyForm<Rational>;

    fn mono(n: usize, e: &[u32], dx: &[usize]) -> F {
        F::monomial(n, Rational::one(), e, dx).unwrap()
    }

    use num_traits::One;

    #[test]
    fn anticommutation_and_degree() {
        let a = F::dx(3, 1).unwrap();
        let b = F::dx(3, 2).unwrap();
        assert_eq!(a.wedge(&b), -b.wedge(&a));
        assert!(a.wedge(&a).is_zero());
        assert_eq!(mono(3, &[0, 0, 0], &[2, 1]), -mono(3, &[0, 0, 0], &[1, 2]));
        assert_eq!(a.wedge(&b).deg(), Some(2));
    }

    #[test]
    fn d_squares_to_zero() {
        let f = mono(3, &[2, 1, 3], &[]) + mono(3, &[1, 0, 2], &[2]) + mono(3, &[0, 3, 1], &[1, 3]);
        assert!(f.d().d().is_zero());
        assert_eq!(F::x(2, 1).unwrap().d(), F::dx(2, 1).unwrap());
    }

    #[test]
    fn closedness_examples() {
        assert!(mono(2, &[1, 0], &[1, 2]).is_closed());
        let f = mono(3, &[0, 0, 1], &[1, 2]);
        assert!(!f.is_closed());
        assert_eq!(f.d(), mono(3, &[0, 0, 0], &[1, 2, 3]));
    }

    #[test]
    fn homotopy_formula() {
        let forms = [
            mono(3, &[0, 0, 0], &[1, 2]),
            mono(3, &[1, 2, 0], &[3]),
            mono(3, &[2, 0, 1], &[1, 3]),
            mono(3, &[0, 0, 0], &[1, 2, 3]),
        ];
        for w in forms {
            let lhs = w.d().homotopy() + w.homotopy().d();
            assert_eq!(lhs, w);
        }
        assert!(mono(2, &[0, 0], &[1, 2]).is_exact());
        assert!(!F::one(2).is_exact());
        assert!(!mono(2, &[0, 1], &[1]).is_exact());
        assert!(mono(2, &[0, 1], &[1]).cohomologous(&-mono(2, &[1, 0], &[2])));
    }
}
