//! JSON manifold documents.
//!
//! ```json
//! {"name": "cp2", "dimension": 4, "kind": "cohomology_model", "signature": 1,
//!  "basis": [{"name": "1", "degree": 0}, {"name": "h", "degree": 2}, {"name": "h2", "degree": 4}],
//!  "products": [{"left": "h", "right": "h", "result": [{"basis": "h2", "coeff": 1}]}],
//!  "fundamental": "h2",
//!  "pontryagin_classes": {"p1": [{"basis": "h2", "coeff": 3}]}}
//! ```
//!
//! `kind: "pontryagin_numbers"` documents carry `pontryagin_numbers` such as
//! `{"p1^2": 4, "p2": 7}` instead of a ring. A ring document may also list
//! `pontryagin_numbers`; they must agree with the ring. `note` is free text.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::manifold::model::{BasisElement, Class, CohomologyModel};
use crate::manifold::pontryagin::{parse_partition, PontryaginData};
use crate::scalar::parse_rational;

#[derive(Clone, Debug, PartialEq)]
pub enum ManifoldDocument {
    Numbers(PontryaginData),
    Model(CohomologyModel),
}

impl ManifoldDocument {
    pub fn name(&self) -> &str {
        match self {
            ManifoldDocument::Numbers(d) => &d.name,
            ManifoldDocument::Model(m) => &m.name,
        }
    }

    pub fn pontryagin_data(&self) -> Result<PontryaginData> {
        match self {
            ManifoldDocument::Numbers(d) => Ok(d.clone()),
            ManifoldDocument::Model(m) => m.pontryagin_data(),
        }
    }

    pub fn model(&self) -> Option<&CohomologyModel> {
        match self {
            ManifoldDocument::Model(m) => Some(m),
            ManifoldDocument::Numbers(_) => None,
        }
    }
}

const KEYS: [&str; 11] = [
    "name",
    "dimension",
    "kind",
    "pontryagin_numbers",
    "signature",
    "basis",
    "products",
    "fundamental",
    "pontryagin_classes",
    "note",
    "$schema",
];

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::parse(format!("{path}.{key}"), "missing field"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::parse(path, "expected a string"))
}

fn as_u32(v: &Value, path: &str) -> Result<u32> {
    v.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

/// Integers, or strings holding integers or fractions a/b.
fn as_rational(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| Error::parse(path, "expected an integer or a fraction string")),
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| Error::parse(path, format!("cannot read {s:?} as a rational")))
        }
        _ => Err(Error::parse(path, "expected an integer or a fraction string")),
    }
}

fn as_integer(v: &Value, path: &str) -> Result<BigInt> {
    let q = as_rational(v, path)?;
    if !q.is_integer() {
        return Err(Error::parse(path, "expected an integer"));
    }
    Ok(q.to_integer())
}

fn read_numbers(v: &Value, k: usize, path: &str) -> Result<BTreeMap<Vec<u32>, BigInt>> {
    let obj = as_object(v, path)?;
    let mut out = BTreeMap::new();
    for (key, value) in obj {
        let p = format!("{path}.{key}");
        let e = parse_partition(key, k).map_err(|e| Error::parse(&p, e.to_string()))?;
        out.insert(e, as_integer(value, &p)?);
    }
    Ok(out)
}

fn read_class(v: &Value, index: &BTreeMap<String, usize>, path: &str) -> Result<Class> {
    let mut class = Class::new();
    for (j, entry) in as_array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{j}]");
        let obj = as_object(entry, &p)?;
        let name = as_str(field(obj, "basis", &p)?, &format!("{p}.basis"))?;
        let i = *index
            .get(name)
            .ok_or_else(|| Error::parse(format!("{p}.basis"), format!("unknown basis element {name:?}")))?;
        let c = as_rational(field(obj, "coeff", &p)?, &format!("{p}.coeff"))?;
        *class.entry(i).or_insert_with(|| BigRational::from_integer(0.into())) += c;
    }
    class.retain(|_, v| *v != BigRational::from_integer(0.into()));
    Ok(class)
}

pub fn parse_document(v: &Value) -> Result<ManifoldDocument> {
    let root = "$";
    let obj = as_object(v, root)?;
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Error::parse(format!("$.{k}"), "unknown field"));
    }
    let name = as_str(field(obj, "name", root)?, "$.name")?.to_string();
    let dimension = as_u32(field(obj, "dimension", root)?, "$.dimension")?;
    let signature = as_integer(field(obj, "signature", root)?, "$.signature")?;
    let kind = as_str(field(obj, "kind", root)?, "$.kind")?;
    if dimension % 4 != 0 {
        return Err(Error::Validation(format!("{name}: dimension {dimension} is not divisible by 4")));
    }
    let k = (dimension / 4) as usize;
    match kind {
        "pontryagin_numbers" => {
            let numbers = read_numbers(field(obj, "pontryagin_numbers", root)?, k, "$.pontryagin_numbers")?;
            Ok(ManifoldDocument::Numbers(PontryaginData::new(name, dimension, numbers, signature)?))
        }
        "cohomology_model" => {
            let mut basis = Vec::new();
            let mut index = BTreeMap::new();
            for (j, b) in as_array(field(obj, "basis", root)?, "$.basis")?.iter().enumerate() {
                let p = format!("$.basis[{j}]");
                let bo = as_object(b, &p)?;
                let bname = as_str(field(bo, "name", &p)?, &format!("{p}.name"))?.to_string();
                let degree = as_u32(field(bo, "degree", &p)?, &format!("{p}.degree"))?;
                if index.insert(bname.clone(), j).is_some() {
                    return Err(Error::parse(format!("{p}.name"), format!("duplicate basis name {bname:?}")));
                }
                basis.push(BasisElement { name: bname, degree });
            }
            let lookup = |name: &str, p: &str| -> Result<usize> {
                index.get(name).copied().ok_or_else(|| Error::parse(p, format!("unknown basis element {name:?}")))
            };
            let mut products = Vec::new();
            if let Some(list) = obj.get("products") {
                for (j, entry) in as_array(list, "$.products")?.iter().enumerate() {
                    let p = format!("$.products[{j}]");
                    let eo = as_object(entry, &p)?;
                    let l = lookup(as_str(field(eo, "left", &p)?, &format!("{p}.left"))?, &format!("{p}.left"))?;
                    let r = lookup(as_str(field(eo, "right", &p)?, &format!("{p}.right"))?, &format!("{p}.right"))?;
                    let result = read_class(field(eo, "result", &p)?, &index, &format!("{p}.result"))?;
                    products.push((l, r, result));
                }
            }
            let fundamental = lookup(as_str(field(obj, "fundamental", root)?, "$.fundamental")?, "$.fundamental")?;
            let mut pontryagin = BTreeMap::new();
            if let Some(pc) = obj.get("pontryagin_classes") {
                for (key, value) in as_object(pc, "$.pontryagin_classes")? {
                    let p = format!("$.pontryagin_classes.{key}");
                    let i: u32 = key
                        .strip_prefix('p')
                        .and_then(|d| d.parse().ok())
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| Error::parse(&p, "expected a key p<i>"))?;
                    pontryagin.insert(i, read_class(value, &index, &p)?);
                }
            }
            let model = CohomologyModel::new(name, dimension, basis, products, fundamental, pontryagin, signature)?;
            if let Some(listed) = obj.get("pontryagin_numbers") {
                let listed = read_numbers(listed, k, "$.pontryagin_numbers")?;
                let derived = model.pontryagin_data()?;
                if listed != derived.numbers {
                    return Err(Error::Validation(format!(
                        "{}: listed Pontryagin numbers disagree with the ring ({:?})",
                        model.name,
                        derived.keyed_numbers()
                    )));
                }
            }
            Ok(ManifoldDocument::Model(model))
        }
        other => Err(Error::parse("$.kind", format!("unknown kind {other:?}"))),
    }
}

pub fn load_manifold(text: &str) -> Result<ManifoldDocument> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("$ (line {}, column {})", e.line(), e.column()), e.to_string()))?;
    parse_document(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn cp2_doc() -> Value {
        json!({
            "name": "cp2", "dimension": 4, "kind": "cohomology_model", "signature": 1,
            "basis": [{"name": "1", "degree": 0}, {"name": "h", "degree": 2}, {"name": "h2", "degree": 4}],
            "products": [{"left": "h", "right": "h", "result": [{"basis": "h2", "coeff": 1}]}],
            "fundamental": "h2",
            "pontryagin_classes": {"p1": [{"basis": "h2", "coeff": 3}]},
            "pontryagin_numbers": {"p1": 3}
        })
    }

    #[test]
    fn loads_ring_and_numbers() {
        let doc = parse_document(&cp2_doc()).unwrap();
        assert_eq!(doc.name(), "cp2");
        assert_eq!(doc.pontryagin_data().unwrap().number(&[1]), BigInt::from(3));
        let nums = load_manifold(r#"{"name":"hp2","dimension":8,"kind":"pontryagin_numbers","pontryagin_numbers":{"p1^2":4,"p2":"7"},"signature":1}"#).unwrap();
        assert!(nums.model().is_none());
        assert_eq!(nums.pontryagin_data().unwrap().number(&[0, 1]), BigInt::from(7));
    }

    #[test]
    fn parse_errors_carry_paths() {
        let mut bad = cp2_doc();
        bad["basis"][1]["degree"] = json!("two");
        match parse_document(&bad) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "$.basis[1].degree"),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let mut bad = cp2_doc();
        bad["products"][0]["result"][0]["basis"] = json!("h3");
        assert!(matches!(parse_document(&bad), Err(Error::Parse { .. })));
        let mut bad = cp2_doc();
        bad["colour"] = json!("blue");
        assert!(matches!(parse_document(&bad), Err(Error::Parse { .. })));
        assert!(matches!(load_manifold("{"), Err(Error::Parse { .. })));
        let mut bad = cp2_doc();
        bad["kind"] = json!("simplicial");
        assert!(matches!(parse_document(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn validation_errors() {
        let mut bad = cp2_doc();
        bad["pontryagin_numbers"] = json!({"p1": 4});
        assert!(matches!(parse_document(&bad), Err(Error::Validation(_))));
        let mut bad = cp2_doc();
        bad["dimension"] = json!(6);
        assert!(matches!(parse_document(&bad), Err(Error::Validation(_))));
    }
}
