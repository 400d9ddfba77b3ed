//! Fixed concrete curvature matrices ℛ(ψ₁,ψ₁) built from constant
//! antisymmetric matrices tensored with even two-forms in the odd generators ψ¹, ψ², ….

use crate::grassmann::GrassmannElement;
use crate::scalar::Scalar;
use crate::zeta::matrix::NilpotentMatrix;
use crate::GaussianRational;

type G = GrassmannElement<GaussianRational>;

#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: &'static str,
    /// Number of odd generators ψ¹..ψ^m the entries live in.
    pub generators: usize,
    pub curvature: NilpotentMatrix<GaussianRational>,
}

fn psi(i: usize) -> G {
    G::odd(&format!("ψ{i}"))
}

fn two_form(pairs: &[(usize, usize, i64)]) -> G {
    pairs.iter().fold(G::zero(), |acc, &(a, b, c)| acc + (psi(a) * psi(b)).scale(&GaussianRational::from_i64(c)))
}

fn tensor(blocks: &[(&[[i64; 4]; 4], G)]) -> NilpotentMatrix<GaussianRational> {
    let rows = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    blocks.iter().fold(G::zero(), |acc, (f, w)| acc + w.scale(&GaussianRational::from_i64(f[i][j])))
                })
                .collect()
        })
        .collect();
    NilpotentMatrix::antisymmetric(rows).expect("corpus matrices are antisymmetric and nilpotent")
}

const F: [[i64; 4]; 4] = [[0, 1, 2, 0], [-1, 0, 0, 3], [-2, 0, 0, 1], [0, -3, -1, 0]];
const H: [[i64; 4]; 4] = [[0, 0, 1, 1], [0, 0, -1, 2], [-1, 1, 0, 0], [-1, -2, 0, 0]];

/// n = 4, ℛ = F⊗(ψ¹ψ² + ψ³ψ⁴) in four generators; only ph₁ survives.
pub fn rank_one_n4() -> CorpusInstance {
    CorpusInstance {
        name: "n4-four-generators",
        generators: 4,
        curvature: tensor(&[(&F, two_form(&[(1, 2, 1), (3, 4, 1)]))]),
    }
}

/// n = 4, ℛ = F⊗ω₁ + H⊗ω₂ in eight generators; ph₁ and ph₂ both survive.
pub fn two_block_n4() -> CorpusInstance {
    CorpusInstance {
        name: "n4-eight-generators",
        generators: 8,
        curvature: tensor(&[
            (&F, two_form(&[(1, 2, 1), (3, 4, 1)])),
            (&H, two_form(&[(5, 6, 1), (7, 8, 2), (1, 5, 1)])),
        ]),
    }
}

/// n = 2 rotation block in six generators.
pub fn rotation_n2() -> CorpusInstance {
    let w = two_form(&[(1, 2, 1), (3, 4, -1), (5, 6, 3)]);
    let curvature = NilpotentMatrix::antisymmetric(vec![vec![G::zero(), w.clone()], vec![-w, G::zero()]])
        .expect("rotation block is antisymmetric");
    CorpusInstance { name: "n2-six-generators", generators: 6, curvature }
}

pub fn instances() -> Vec<CorpusInstance> {
    vec![rank_one_n4(), two_block_n4(), rotation_n2()]
}

pub fn by_name(name: &str) -> Option<CorpusInstance> {
    instances().into_iter().find(|i| i.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::operator::curvature_to_ph;

    #[test]
    fn instances_are_nontrivial() {
        for inst in instances() {
            assert!(inst.curvature.is_antisymmetric());
            assert!(!curvature_to_ph(&inst.curvature, 1).is_zero(), "{}", inst.name);
        }
        assert!(curvature_to_ph(&rank_one_n4().curvature, 2).is_zero());
        assert!(!curvature_to_ph(&two_block_n4().curvature, 2).is_zero());
        assert!(by_name("n2-six-generators").is_some());
        assert!(by_name("missing").is_none());
    }
}
