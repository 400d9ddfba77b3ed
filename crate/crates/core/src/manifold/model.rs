use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::manifold::pontryagin::{partitions, PontryaginData};
use crate::scalar::Scalar;
use crate::series::{l_polynomials, GradedPolynomial};

/// A rational cohomology class as coefficients on the basis.
pub type Class = BTreeMap<usize, BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: u32,
}

/// Finite graded-commutative ring with a fundamental-class functional.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyModel {
    pub name: String,
    pub dimension: u32,
    pub basis: Vec<BasisElement>,
    unit: usize,
    products: BTreeMap<(usize, usize), Class>,
    pub fundamental: usize,
    /// p_i as classes, keyed by i ≥ 1.
    pub pontryagin: BTreeMap<u32, Class>,
    pub signature: BigInt,
}

fn koszul(a: u32, b: u32) -> BigRational {
    if a % 2 == 1 && b % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

fn add_into(acc: &mut Class, other: &Class, c: &BigRational) {
    for (i, v) in other {
        let e = acc.entry(*i).or_insert_with(BigRational::zero);
        *e += v * c;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

pub fn render_class(model: &CohomologyModel, class: &Class) -> String {
    if class.is_empty() {
        return "0".into();
    }
    class.iter().map(|(i, c)| format!("{}*{}", c.render(), model.basis[*i].name)).collect::<Vec<_>>().join(" + ")
}

impl CohomologyModel {
    /// Builds and validates a model. Products with the degree-0 unit are
    /// implicit; a product given in one order fixes the other by graded commutativity.
    pub fn new(
        name: impl Into<String>,
        dimension: u32,
        basis: Vec<BasisElement>,
        listed_products: Vec<(usize, usize, Class)>,
        fundamental: usize,
        pontryagin: BTreeMap<u32, Class>,
        signature: BigInt,
    ) -> Result<Self> {
        let name = name.into();
        let units: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].degree == 0).collect();
        if units.len() != 1 {
            return Err(Error::Validation(format!(
                "{name}: need exactly one degree-0 basis element, found {}",
                units.len()
            )));
        }
        let unit = units[0];
        if fundamental >= basis.len() || basis[fundamental].degree != dimension {
            return Err(Error::Validation(format!(
                "{name}: fundamental class must be a basis element of degree {dimension}"
            )));
        }
        if let Some(b) = basis.iter().find(|b| b.degree > dimension) {
            return Err(Error::Validation(format!("{name}: basis element {} exceeds the dimension", b.name)));
        }
        let mut products: BTreeMap<(usize, usize), Class> = BTreeMap::new();
        for (a, b, result) in listed_products {
            for i in result.keys() {
                if basis[*i].degree != basis[a].degree + basis[b].degree {
                    return Err(Error::Validation(format!(
                        "{name}: {}·{} has a component {} of the wrong degree",
                        basis[a].name, basis[b].name, basis[*i].name
                    )));
                }
            }
            if let Some(prev) = products.get(&(a, b)) {
                if prev != &result {
                    return Err(Error::Validation(format!(
                        "{name}: product {}·{} listed twice",
                        basis[a].name, basis[b].name
                    )));
                }
            }
            products.insert((a, b), result);
        }
        // fill in the opposite orders and check graded commutativity
        let keys: Vec<(usize, usize)> = products.keys().cloned().collect();
        for (a, b) in keys {
            let sign = koszul(basis[a].degree, basis[b].degree);
            let mut swapped = Class::new();
            add_into(&mut swapped, &products[&(a, b)], &sign);
            match products.get(&(b, a)) {
                Some(existing) if existing != &swapped => {
                    return Err(Error::Validation(format!(
                        "{name}: graded commutativity fails for ({}, {})",
                        basis[a].name, basis[b].name
                    )));
                }
                Some(_) => {}
                None => {
                    products.insert((b, a), swapped);
                }
            }
        }
        for (i, class) in &pontryagin {
            for j in class.keys() {
                if basis[*j].degree != 4 * i {
                    return Err(Error::Validation(format!(
                        "{name}: p{i} has a component of degree {}",
                        basis[*j].degree
                    )));
                }
            }
        }
        let model = CohomologyModel { name, dimension, basis, unit, products, fundamental, pontryagin, signature };
        model.check_associative()?;
        Ok(model)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.basis.len();
        let deg = |i: usize| self.basis[i].degree;
        for a in (0..n).filter(|&a| a != self.unit) {
            for b in (0..n).filter(|&b| b != self.unit) {
                for c in (0..n).filter(|&c| c != self.unit) {
                    if deg(a) + deg(b) + deg(c) > self.dimension {
                        continue;
                    }
                    let left = self.mul(&self.mul(&self.basis_class(a), &self.basis_class(b)), &self.basis_class(c));
                    let right = self.mul(&self.basis_class(a), &self.mul(&self.basis_class(b), &self.basis_class(c)));
                    if left != right {
                        return Err(Error::Validation(format!(
                            "{}: associativity fails on ({}, {}, {})",
                            self.name, self.basis[a].name, self.basis[b].name, self.basis[c].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn basis_class(&self, i: usize) -> Class {
        Class::from([(i, BigRational::one())])
    }

    pub fn unit(&self) -> Class {
        self.basis_class(self.unit)
    }

    fn mul_basis(&self, a: usize, b: usize) -> Class {
        if a == self.unit {
            return self.basis_class(b);
        }
        if b == self.unit {
            return self.basis_class(a);
        }
        self.products.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, x: &Class, y: &Class) -> Class {
        let mut out = Class::new();
        for (a, ca) in x {
            for (b, cb) in y {
                add_into(&mut out, &self.mul_basis(*a, *b), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, x: &Class, e: u32) -> Class {
        (0..e).fold(self.unit(), |acc, _| self.mul(&acc, x))
    }

    /// ⟨x, [X]⟩: the coefficient of the fundamental class.
    pub fn evaluate(&self, x: &Class) -> BigRational {
        x.get(&self.fundamental).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn pontryagin_class(&self, i: u32) -> Class {
        self.pontryagin.get(&i).cloned().unwrap_or_default()
    }

    /// Substitutes p_i ↦ the model's p_i into a p-polynomial.
    pub fn evaluate_polynomial(&self, poly: &GradedPolynomial<BigRational>) -> Class {
        let mut out = Class::new();
        for (e, c) in poly.terms() {
            let mut m = self.unit();
            for (i, &ei) in e.iter().enumerate() {
                m = self.mul(&m, &self.pow(&self.pontryagin_class(i as u32 + 1), ei));
            }
            add_into(&mut out, &m, c);
        }
        out
    }

    /// 1 + L₁ + L₂ + … evaluated on the model's Pontryagin classes.
    pub fn l_class(&self, k_cap: usize) -> Result<Class> {
        let k = (self.dimension / 4) as usize;
        if k > k_cap {
            return Err(Error::Precondition(format!(
                "{} has dimension {} beyond the truncation 4K = {}",
                self.name,
                self.dimension,
                4 * k_cap
            )));
        }
        let mut total = self.unit();
        if k > 0 {
            for lk in l_polynomials(k)? {
                add_into(&mut total, &self.evaluate_polynomial(&lk), &BigRational::one());
            }
        }
        Ok(total)
    }

    /// Pontryagin numbers read off from the ring.
    pub fn pontryagin_data(&self) -> Result<PontryaginData> {
        let k = (self.dimension / 4) as usize;
        let mut numbers = BTreeMap::new();
        for e in partitions(k) {
            let mut m = self.unit();
            for (i, &ei) in e.iter().enumerate() {
                m = self.mul(&m, &self.pow(&self.pontryagin_class(i as u32 + 1), ei));
            }
            let v = self.evaluate(&m);
            if !v.is_integer() {
                return Err(Error::Validation(format!("{}: non-integral Pontryagin number", self.name)));
            }
            if !v.is_zero() {
                numbers.insert(e, v.to_integer());
            }
        }
        PontryaginData::new(self.name.clone(), self.dimension, numbers, self.signature.clone())
    }

    /// Tensor product ring of M×N with Whitney-sum Pontryagin classes.
    pub fn product(&self, other: &CohomologyModel) -> Result<CohomologyModel> {
        let n2 = other.basis.len();
        let idx = |a: usize, b: usize| a * n2 + b;
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .flat_map(|x| {
                other.basis.iter().map(move |y| BasisElement {
                    name: if x.degree == 0 && y.degree == 0 {
                        "1".to_string()
                    } else {
                        format!("{}⊗{}", x.name, y.name)
                    },
                    degree: x.degree + y.degree,
                })
            })
            .collect();
        let embed = |x: &Class, y: &Class| -> Class {
            let mut out = Class::new();
            for (a, ca) in x {
                for (b, cb) in y {
                    out.insert(idx(*a, *b), ca * cb);
                }
            }
            out
        };
        let nonzero = |m: &CohomologyModel| -> Vec<(usize, usize, Class)> {
            let n = m.basis.len();
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| (a, b, m.mul_basis(a, b)))
                .filter(|(_, _, c)| !c.is_empty())
                .collect()
        };
        let (left, right) = (nonzero(self), nonzero(other));
        let mut products = Vec::new();
        for (a1, a2, x) in &left {
            for (b1, b2, y) in &right {
                // (x1⊗y1)(x2⊗y2) = (−1)^{|y1||x2|} x1x2 ⊗ y1y2
                let sign = koszul(other.basis[*b1].degree, self.basis[*a2].degree);
                let mut result = embed(x, y);
                for v in result.values_mut() {
                    *v *= &sign;
                }
                result.retain(|_, v| !v.is_zero());
                products.push((idx(*a1, *b1), idx(*a2, *b2), result));
            }
        }
        let k = (self.dimension + other.dimension) / 4;
        let total = |m: &CohomologyModel| -> Class {
            let mut t = m.unit();
            for c in m.pontryagin.values() {
                add_into(&mut t, c, &BigRational::one());
            }
            t
        };
        let p_total = embed(&total(self), &total(other));
        let mut pontryagin = BTreeMap::new();
        for i in 1..=k {
            let part: Class =
                p_total.iter().filter(|(j, _)| basis[**j].degree == 4 * i).map(|(j, c)| (*j, c.clone())).collect();
            if !part.is_empty() {
                pontryagin.insert(i, part);
            }
        }
        let name = format!("{}x{}", self.name, other.name);
        CohomologyModel::new(
            name,
            self.dimension + other.dimension,
            basis,
            products,
            idx(self.fundamental, other.fundamental),
            pontryagin,
            &self.signature * &other.signature,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    pub(crate) fn cp2() -> CohomologyModel {
        let basis = vec![
            BasisElement { name: "1".into(), degree: 0 },
            BasisElement { name: "h".into(), degree: 2 },
            BasisElement { name: "h2".into(), degree: 4 },
        ];
        CohomologyModel::new(
            "cp2",
            4,
            basis,
            vec![(1, 1, Class::from([(2, rat(1, 1))]))],
            2,
            BTreeMap::from([(1, Class::from([(2, rat(3, 1))]))]),
            BigInt::one(),
        )
        .unwrap()
    }

    #[test]
    fn ring_arithmetic() {
        let m = cp2();
        let h = m.basis_class(1);
        assert_eq!(m.evaluate(&m.mul(&h, &h)), rat(1, 1));
        assert_eq!(m.pow(&h, 3), Class::new());
        assert_eq!(m.pontryagin_data().unwrap().number(&[1]), BigInt::from(3));
        let l = m.l_class(4).unwrap();
        assert_eq!(m.evaluate(&l), rat(1, 1));
        assert_eq!(render_class(&m, &l), "1*1 + 1*h2");
    }

    #[test]
    fn validation_failures() {
        let basis = vec![
            BasisElement { name: "1".into(), degree: 0 },
            BasisElement { name: "a".into(), degree: 2 },
            BasisElement { name: "b".into(), degree: 2 },
            BasisElement { name: "v".into(), degree: 4 },
        ];
        let v = |c: i64| Class::from([(3, rat(c, 1))]);
        // wrong degree
        let err = CohomologyModel::new(
            "x",
            4,
            basis.clone(),
            vec![(1, 1, Class::from([(2, rat(1, 1))]))],
            3,
            BTreeMap::new(),
            BigInt::zero(),
        );
        assert!(matches!(err, Err(Error::Validation(_))));
        // odd classes must anticommute: two degree-1 classes listed as commuting
        let odd = vec![
            BasisElement { name: "1".into(), degree: 0 },
            BasisElement { name: "x".into(), degree: 1 },
            BasisElement { name: "y".into(), degree: 1 },
            BasisElement { name: "xy".into(), degree: 2 },
        ];
        let xy = Class::from([(3, rat(1, 1))]);
        let err = CohomologyModel::new(
            "t2",
            2,
            odd,
            vec![(1, 2, xy.clone()), (2, 1, xy)],
            3,
            BTreeMap::new(),
            BigInt::zero(),
        );
        assert!(err.unwrap_err().to_string().contains("commutativity"));
        let ok =
            CohomologyModel::new("ab", 4, basis, vec![(1, 1, v(1)), (2, 2, v(-1))], 3, BTreeMap::new(), BigInt::zero());
        assert!(ok.is_ok());
    }

    #[test]
    fn non_associative_structure_constants_are_rejected() {
        // h·h = h2, h·h2 = h3 in degree 6, but h2·h2 listed as 0 in dimension 8 with h·h3 = h4
        let basis: Vec<BasisElement> = (0..5)
            .map(|i| BasisElement { name: if i == 0 { "1".into() } else { format!("h{i}") }, degree: 2 * i })
            .collect();
        let c = |i: usize| Class::from([(i, rat(1, 1))]);
        let products =
            vec![(1, 1, c(2)), (1, 2, c(3)), (1, 3, c(4)), (2, 2, c(4).into_keys().map(|k| (k, rat(2, 1))).collect())];
        let err = CohomologyModel::new("bad", 8, basis, products, 4, BTreeMap::new(), BigInt::zero()).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn product_ring() {
        let m = cp2();
        let sq = m.product(&m).unwrap();
        assert_eq!(sq.dimension, 8);
        let data = sq.pontryagin_data().unwrap();
        assert_eq!(data.number(&[2, 0]), BigInt::from(18));
        assert_eq!(data.number(&[0, 1]), BigInt::from(9));
        assert_eq!(sq.evaluate(&sq.l_class(4).unwrap()), rat(1, 1));
    }
}
