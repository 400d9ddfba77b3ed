use std::path::Path;

use crate::error::{Error, Result};
use crate::manifold::document::{load_manifold, ManifoldDocument};
use crate::manifold::model::CohomologyModel;
use crate::manifold::pontryagin::PontryaginData;

const SOURCES: [(&str, &str); 4] = [
    ("cp2", include_str!("../../builtins/cp2.json")),
    ("cp4", include_str!("../../builtins/cp4.json")),
    ("hp2", include_str!("../../builtins/hp2.json")),
    ("k3", include_str!("../../builtins/k3.json")),
];

const PRODUCTS: [(&str, &str, &str); 2] = [("cp2xcp2", "cp2", "cp2"), ("k3xcp2", "k3", "cp2")];

/// Names accepted by [`model`], in listing order.
pub fn names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).chain(PRODUCTS.iter().map(|(n, _, _)| *n)).collect()
}

pub fn model(name: &str) -> Result<CohomologyModel> {
    if let Some((_, text)) = SOURCES.iter().find(|(n, _)| *n == name) {
        return match load_manifold(text)? {
            ManifoldDocument::Model(m) => Ok(m),
            ManifoldDocument::Numbers(_) => Err(Error::Validation(format!("builtin {name} carries no ring"))),
        };
    }
    if let Some((_, a, b)) = PRODUCTS.iter().find(|(n, _, _)| *n == name) {
        return model(a)?.product(&model(b)?);
    }
    Err(Error::Usage(format!("unknown builtin manifold {name:?}; known: {}", names().join(", "))))
}

pub fn data(name: &str) -> Result<PontryaginData> {
    model(name)?.pontryagin_data()
}

/// Resolves `builtin:NAME` or a path to a JSON document.
pub fn resolve(source: &str) -> Result<ManifoldDocument> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return model(name).map(ManifoldDocument::Model);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_manifold(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::pontryagin::l_genus;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn every_builtin_satisfies_the_signature_theorem() {
        for name in names() {
            let d = data(name).unwrap();
            assert_eq!(l_genus(&d, 4).unwrap(), BigRational::from_integer(d.signature.clone()), "{name}");
        }
    }

    #[test]
    fn product_rings_match_numeric_products() {
        let m = model("k3xcp2").unwrap();
        assert_eq!(m.name, "k3xcp2");
        assert_eq!(m.basis.len(), 24 * 3);
        let d = m.pontryagin_data().unwrap();
        assert_eq!(d.number(&[2, 0]), BigInt::from(-288));
        assert_eq!(d.number(&[0, 1]), BigInt::from(-144));
        assert_eq!(data("cp4").unwrap().number(&[2, 0]), BigInt::from(25));
    }

    #[test]
    fn resolution() {
        assert!(matches!(resolve("builtin:cp2"), Ok(ManifoldDocument::Model(_))));
        assert!(matches!(resolve("builtin:rp2"), Err(Error::Usage(_))));
        assert!(matches!(resolve("/nonexistent/m.json"), Err(Error::Io(_))));
    }
}
