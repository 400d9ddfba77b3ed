use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{l_polynomials, monomial_key, weight, Basis};

/// Parses "p1^2", "p1p2", "p1*p2" or "1" into an exponent vector of length k.
pub fn parse_partition(key: &str, k: usize) -> Result<Vec<u32>> {
    let mut e = vec![0u32; k];
    let key = key.trim();
    if key == "1" {
        return Ok(e);
    }
    let bad = |msg: &str| Error::Validation(format!("partition key {key:?}: {msg}"));
    let mut rest = key;
    while !rest.is_empty() {
        rest = rest.trim_start_matches('*');
        let Some(after_p) = rest.strip_prefix('p') else {
            return Err(bad("expected p<i>"));
        };
        let digits: String = after_p.chars().take_while(|c| c.is_ascii_digit()).collect();
        let index: usize = digits.parse().map_err(|_| bad("missing class index"))?;
        rest = &after_p[digits.len()..];
        let mut power = 1u32;
        if let Some(after_hat) = rest.strip_prefix('^') {
            let digits: String = after_hat.chars().take_while(|c| c.is_ascii_digit()).collect();
            power = digits.parse().map_err(|_| bad("missing exponent"))?;
            rest = &after_hat[digits.len()..];
        }
        if index == 0 || index > k {
            return Err(bad(&format!("class index {index} outside 1..={k}")));
        }
        e[index - 1] += power;
    }
    if weight(&e) as usize != k {
        return Err(bad(&format!("weight {} differs from dimension/4 = {k}", weight(&e))));
    }
    Ok(e)
}

/// All exponent vectors of weight k over p₁..p_k, in increasing order.
pub fn partitions(k: usize) -> Vec<Vec<u32>> {
    fn go(i: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = i as u32 + 1;
        for e in 0..=remaining / w {
            cur[i] = e;
            go(i + 1, remaining - e * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, k as u32, &mut vec![0; k], &mut out);
    out
}

/// Characteristic numbers ⟨p_λ, [M]⟩ of a closed oriented 4k-manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PontryaginData {
    pub name: String,
    pub dimension: u32,
    pub numbers: BTreeMap<Vec<u32>, BigInt>,
    pub signature: BigInt,
}

impl PontryaginData {
    pub fn new(
        name: impl Into<String>,
        dimension: u32,
        numbers: BTreeMap<Vec<u32>, BigInt>,
        signature: BigInt,
    ) -> Result<Self> {
        if !dimension.is_multiple_of(4) {
            return Err(Error::Validation(format!("dimension {dimension} is not divisible by 4")));
        }
        let k = (dimension / 4) as usize;
        for e in numbers.keys() {
            if e.len() != k || weight(e) as usize != k {
                return Err(Error::Validation(format!(
                    "partition {} does not have weight {k}",
                    monomial_key(Basis::Pontryagin, e)
                )));
            }
        }
        Ok(PontryaginData { name: name.into(), dimension, numbers, signature })
    }

    /// The one-point space.
    pub fn point() -> Self {
        PontryaginData {
            name: "pt".into(),
            dimension: 0,
            numbers: BTreeMap::from([(vec![], BigInt::one())]),
            signature: BigInt::one(),
        }
    }

    pub fn k(&self) -> usize {
        (self.dimension / 4) as usize
    }

    pub fn number(&self, partition: &[u32]) -> BigInt {
        self.numbers.get(partition).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Pontryagin numbers keyed "p1^2", "p2", … in canonical order.
    pub fn keyed_numbers(&self) -> BTreeMap<String, BigInt> {
        self.numbers.iter().map(|(e, v)| (monomial_key(Basis::Pontryagin, e), v.clone())).collect()
    }
}

/// ⟨L_k(p₁..p_k), [M]⟩ with L_k the Hirzebruch polynomial.
pub fn l_genus(m: &PontryaginData, k_cap: usize) -> Result<BigRational> {
    let k = m.k();
    if k == 0 {
        return Ok(BigRational::from_integer(m.number(&[])));
    }
    if k > k_cap {
        return Err(Error::Precondition(format!(
            "{} has dimension {} beyond the truncation 4K = {}",
            m.name,
            m.dimension,
            4 * k_cap
        )));
    }
    let lk = l_polynomials(k)?.pop().expect("k ≥ 1");
    let mut total = BigRational::zero();
    for (e, c) in lk.terms() {
        match m.numbers.get(e) {
            Some(v) => total += c * BigRational::from_integer(v.clone()),
            None => {
                log::warn!("{}: Pontryagin number {} missing, taken as 0", m.name, monomial_key(Basis::Pontryagin, e))
            }
        }
    }
    Ok(total)
}

type Bigraded = BTreeMap<(Vec<u32>, Vec<u32>), BigInt>;

/// Pontryagin numbers of M×N from p(M×N) = p(M)·p(N) over the rationals.
pub fn product_manifold(m: &PontryaginData, n: &PontryaginData) -> Result<PontryaginData> {
    let (km, kn) = (m.k(), n.k());
    let k = km + kn;
    let mut numbers = BTreeMap::new();
    for lambda in partitions(k) {
        // expand Π_j (Σ_{a+b=j} p_a(M) p_b(N))^{λ_j}, keeping bidegree ≤ (km, kn)
        let mut poly: Bigraded = BTreeMap::from([((vec![0; km], vec![0; kn]), BigInt::one())]);
        for (j, &ej) in lambda.iter().enumerate() {
            let j = j + 1;
            for _ in 0..ej {
                let mut next: Bigraded = BTreeMap::new();
                for ((x, y), c) in &poly {
                    for a in 0..=j {
                        let b = j - a;
                        if a > km || b > kn {
                            continue;
                        }
                        let mut x2 = x.clone();
                        let mut y2 = y.clone();
                        if a > 0 {
                            x2[a - 1] += 1;
                        }
                        if b > 0 {
                            y2[b - 1] += 1;
                        }
                        if weight(&x2) as usize > km || weight(&y2) as usize > kn {
                            continue;
                        }
                        *next.entry((x2, y2)).or_insert_with(BigInt::zero) += c;
                    }
                }
                poly = next;
            }
        }
        let value: BigInt = poly
            .iter()
            .filter(|((x, y), _)| weight(x) as usize == km && weight(y) as usize == kn)
            .map(|((x, y), c)| c * m.number(x) * n.number(y))
            .sum();
        if !value.is_zero() {
            numbers.insert(lambda, value);
        }
    }
    let name = if n.dimension == 0 {
        m.name.clone()
    } else if m.dimension == 0 {
        n.name.clone()
    } else {
        format!("{}x{}", m.name, n.name)
    };
    PontryaginData::new(name, m.dimension + n.dimension, numbers, &m.signature * &n.signature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn data(name: &str, dim: u32, entries: &[(&str, i64)], sig: i64) -> PontryaginData {
        let k = (dim / 4) as usize;
        let numbers = entries.iter().map(|(key, v)| (parse_partition(key, k).unwrap(), BigInt::from(*v))).collect();
        PontryaginData::new(name, dim, numbers, BigInt::from(sig)).unwrap()
    }

    #[test]
    fn partition_keys() {
        assert_eq!(parse_partition("p1^2", 2).unwrap(), vec![2, 0]);
        assert_eq!(parse_partition("p1p2", 3).unwrap(), vec![1, 1, 0]);
        assert_eq!(parse_partition("p1*p2", 3).unwrap(), vec![1, 1, 0]);
        assert!(parse_partition("p1", 2).is_err());
        assert!(parse_partition("q1", 1).is_err());
        assert_eq!(partitions(3), vec![vec![0, 0, 1], vec![1, 1, 0], vec![3, 0, 0]]);
        assert_eq!(partitions(4).len(), 5);
    }

    #[test]
    fn genera() {
        assert_eq!(l_genus(&data("cp2", 4, &[("p1", 3)], 1), 4).unwrap(), rat(1, 1));
        assert_eq!(l_genus(&data("k3", 4, &[("p1", -48)], -16), 4).unwrap(), rat(-16, 1));
        assert_eq!(l_genus(&data("hp2", 8, &[("p1^2", 4), ("p2", 7)], 1), 4).unwrap(), rat(1, 1));
        assert_eq!(l_genus(&PontryaginData::point(), 4).unwrap(), rat(1, 1));
        let big = PontryaginData::new("x", 20, BTreeMap::new(), BigInt::zero()).unwrap();
        assert!(l_genus(&big, 4).is_err());
        assert!(PontryaginData::new("bad", 6, BTreeMap::new(), BigInt::zero()).is_err());
        // missing entries count as zero
        assert_eq!(l_genus(&data("partial", 8, &[("p2", 45)], 7), 4).unwrap(), rat(7, 1));
    }

    #[test]
    fn products() {
        let cp2 = data("cp2", 4, &[("p1", 3)], 1);
        let k3 = data("k3", 4, &[("p1", -48)], -16);
        let sq = product_manifold(&cp2, &cp2).unwrap();
        assert_eq!(sq.keyed_numbers().get("p1^2"), Some(&BigInt::from(18)));
        assert_eq!(sq.keyed_numbers().get("p2"), Some(&BigInt::from(9)));
        assert_eq!(l_genus(&sq, 4).unwrap(), rat(1, 1));
        let kc = product_manifold(&k3, &cp2).unwrap();
        assert_eq!(kc.number(&[2, 0]), BigInt::from(-288));
        assert_eq!(kc.number(&[0, 1]), BigInt::from(-144));
        assert_eq!(l_genus(&kc, 4).unwrap(), rat(-16, 1));
        let same = product_manifold(&cp2, &PontryaginData::point()).unwrap();
        assert_eq!(same, cp2);
    }
}
