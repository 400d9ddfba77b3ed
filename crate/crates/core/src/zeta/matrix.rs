use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::scalar::Scalar;

/// Square matrix over the nilpotent even part of a Grassmann algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentMatrix<S: Scalar> {
    n: usize,
    entries: Vec<GrassmannElement<S>>,
    antisymmetric: bool,
}

impl<S: Scalar> NilpotentMatrix<S> {
    pub fn zero(n: usize) -> Self {
        NilpotentMatrix { n, entries: vec![GrassmannElement::zero(); n * n], antisymmetric: true }
    }

    /// Validates that every entry is even and nilpotent, and records whether Mᵀ = −M.
    pub fn new(rows: Vec<Vec<GrassmannElement<S>>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|row| row.len() != n) {
            return Err(Error::Structure("matrix is not square".into()));
        }
        let entries: Vec<GrassmannElement<S>> = rows.into_iter().flatten().collect();
        for (idx, e) in entries.iter().enumerate() {
            if !e.is_zero() && !e.is_even() {
                return Err(Error::Structure(format!("entry {idx} is not even: {e}")));
            }
            if !e.body().is_zero() {
                return Err(Error::Structure(format!("entry {idx} is not nilpotent: {e}")));
            }
        }
        let mut m = NilpotentMatrix { n, entries, antisymmetric: false };
        m.antisymmetric = m.transpose().add(&m).is_zero();
        Ok(m)
    }

    /// Like [`NilpotentMatrix::new`] but insists on antisymmetry.
    pub fn antisymmetric(rows: Vec<Vec<GrassmannElement<S>>>) -> Result<Self> {
        let m = Self::new(rows)?;
        if !m.antisymmetric {
            return Err(Error::Structure("matrix is not antisymmetric".into()));
        }
        Ok(m)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetric
    }

    pub fn get(&self, i: usize, j: usize) -> &GrassmannElement<S> {
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn from_entries(n: usize, entries: Vec<GrassmannElement<S>>) -> Self {
        let mut m = NilpotentMatrix { n, entries, antisymmetric: false };
        m.antisymmetric = (0..n).all(|i| (0..n).all(|j| (m.get(i, j).clone() + m.get(j, i).clone()).is_zero()));
        m
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        NilpotentMatrix { n, entries, antisymmetric: self.antisymmetric }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() + b.clone()).collect();
        Self::from_entries(self.n, entries)
    }

    pub fn scale(&self, c: &S) -> Self {
        NilpotentMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
            antisymmetric: self.antisymmetric,
        }
    }

    /// Entries commute, being even, so the product is the ordinary one.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = GrassmannElement::zero();
                for k in 0..n {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        Self::from_entries(n, entries)
    }

    pub fn trace(&self) -> GrassmannElement<S> {
        (0..self.n).fold(GrassmannElement::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// M⁰, M¹, … up to the last nonzero power.
    pub fn powers(&self) -> Vec<Self> {
        let mut identity = Self::zero(self.n);
        for i in 0..self.n {
            identity.entries[i * self.n + i] = GrassmannElement::one();
        }
        identity.antisymmetric = self.n == 0;
        let mut out = vec![identity];
        let mut current = self.clone();
        while !current.is_zero() {
            out.push(current.clone());
            current = current.mul(self);
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&GrassmannElement<S>) -> GrassmannElement<T>) -> NilpotentMatrix<T> {
        NilpotentMatrix { n: self.n, entries: self.entries.iter().map(f).collect(), antisymmetric: self.antisymmetric }
    }
}
