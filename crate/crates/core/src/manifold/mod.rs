//! Closed oriented manifolds: Pontryagin numbers, rational cohomology rings,
//! L-genera and pushforwards to a point.

pub mod builtin;
pub mod document;
pub mod expr;
pub mod model;
pub mod pontryagin;

use num_rational::BigRational;

use crate::error::Result;

pub use document::{load_manifold, parse_document, ManifoldDocument};
pub use expr::parse_class;
pub use model::{render_class, BasisElement, Class, CohomologyModel};
pub use pontryagin::{l_genus, parse_partition, partitions, product_manifold, PontryaginData};

/// ∫_M s·L(M), the pushforward of s·L to a point.
pub fn pushforward(class: &Class, model: &CohomologyModel, k_cap: usize) -> Result<BigRational> {
    let l = model.l_class(k_cap)?;
    Ok(model.evaluate(&model.mul(class, &l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn pushforwards() {
        for name in builtin::names() {
            let m = builtin::model(name).unwrap();
            let genus = l_genus(&m.pontryagin_data().unwrap(), 4).unwrap();
            assert_eq!(pushforward(&m.unit(), &m, 4).unwrap(), genus, "{name}");
            assert_eq!(pushforward(&Class::new(), &m, 4).unwrap(), rat(0, 1));
        }
        let cp2 = builtin::model("cp2").unwrap();
        assert_eq!(pushforward(&parse_class("h^2", &cp2).unwrap(), &cp2, 4).unwrap(), rat(1, 1));
        // L(cp2) = 1 + h², so ∫ h·L vanishes by degree and ∫ (1 + h²)·L = 2
        assert_eq!(pushforward(&parse_class("h", &cp2).unwrap(), &cp2, 4).unwrap(), rat(0, 1));
        assert_eq!(pushforward(&parse_class("1 + h^2", &cp2).unwrap(), &cp2, 4).unwrap(), rat(2, 1));
    }
}
