//! Brute-force homology of a resolution over a finite cyclic group.
//!
//! Each summand is realized inside ℚ^N through the regular representation,
//! boundaries become rational matrices, and homology dimensions come from exact
//! ranks. For finite `G` the von Neumann dimension of a ℚG-module is its
//! ℚ-dimension divided by `|G|`.

mod matrix;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{ChainComplexSpec, ComplexKind, Summand};
use crate::foxcalc::GroupRingElement;
use crate::presentations::{one_relator_invariants, Presentation};
use crate::rational::Q;
use crate::words::{VagueCardinal, Word};

pub use matrix::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("cyclic model needs order at least 1")]
    ZeroOrder,
    #[error("model has {found} generator images but the alphabet has {expected}")]
    ImageCount { expected: usize, found: usize },
    #[error("relator {index} maps to {image} mod {n}, not to the identity")]
    RelatorNotKilled { index: usize, image: u64, n: u64 },
    #[error("the group is not finite cyclic, so no regular-representation model applies")]
    NotFiniteCyclic,
    #[error("the oracle only realizes one-relator resolutions")]
    UnsupportedComplex,
    #[error("image of d{degree} leaves the realized submodule")]
    NotInvariant { degree: usize },
    #[error("d{degree} d{} is not the zero matrix", degree - 1)]
    NonzeroComposite { degree: usize },
}

/// A homomorphism from the free group onto ℤ/N, given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCyclicModel {
    n: u64,
    images: Vec<u64>,
}

impl FiniteCyclicModel {
    pub fn new(n: u64, images: Vec<i64>) -> Result<Self, OracleError> {
        if n == 0 {
            return Err(OracleError::ZeroOrder);
        }
        let images = images.into_iter().map(|k| k.rem_euclid(n as i64) as u64).collect();
        Ok(FiniteCyclicModel { n, images })
    }

    /// The group of a finite one-relator presentation: trivial for `d = 0`,
    /// and `ℤ/m` generated by the only generator for `d = 1`.
    pub fn for_presentation(p: &Presentation) -> Result<Self, OracleError> {
        let inv = one_relator_invariants(p).map_err(|_| OracleError::NotFiniteCyclic)?;
        match (inv.d, inv.order) {
            (0, _) => Self::new(1, Vec::new()),
            (1, VagueCardinal::Finite(n)) => Self::new(n, vec![1]),
            _ => Err(OracleError::NotFiniteCyclic),
        }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn project(&self, w: &Word) -> u64 {
        let n = self.n as i128;
        let s: i128 = w.letters().iter().map(|l| l.sign() as i128 * self.images[l.generator] as i128).sum();
        s.rem_euclid(n) as u64
    }
}

/// The `N × N` matrix of right multiplication by the image of `a` on row vectors.
pub fn regular_representation(a: &GroupRingElement, model: &FiniteCyclicModel) -> RationalMatrix {
    let n = model.n as usize;
    let mut m = RationalMatrix::zeros(n, n);
    for (w, c) in a.terms() {
        let k = model.project(w) as usize;
        for i in 0..n {
            m.add_at(i, (i + k) % n, c);
        }
    }
    m
}

pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// A resolution realized over ℚ: each degree is a subspace of `ℚ^{N·s}` with
/// `s` the number of summands, given by a basis of row vectors.
#[derive(Debug, Clone)]
pub struct RealizedComplex {
    pub n: u64,
    /// `bases[k]` spans the degree-`k` module.
    pub bases: Vec<RationalMatrix>,
    /// `maps[k - 1]` is the basis of degree `k` pushed through `∂ₖ`.
    pub maps: Vec<RationalMatrix>,
}

fn summand_basis(s: &Summand, model: &FiniteCyclicModel) -> RationalMatrix {
    match s {
        Summand::Free => RationalMatrix::identity(model.n as usize),
        Summand::Twisted(e) => regular_representation(e.element(), model).row_space_basis(),
    }
}

pub fn realize_complex(spec: &ChainComplexSpec, model: &FiniteCyclicModel) -> Result<RealizedComplex, OracleError> {
    if spec.kind != ComplexKind::OneRelator {
        return Err(OracleError::UnsupportedComplex);
    }
    if model.rank() != spec.alphabet.len() {
        return Err(OracleError::ImageCount { expected: spec.alphabet.len(), found: model.rank() });
    }
    for (index, r) in spec.relators.iter().enumerate() {
        let image = model.project(r);
        if image != 0 {
            return Err(OracleError::RelatorNotKilled { index, image, n: model.n });
        }
    }
    let n = model.n as usize;
    let bases: Vec<RationalMatrix> = spec
        .modules()
        .iter()
        .map(|m| RationalMatrix::block_diagonal(&m.summands.iter().map(|s| summand_basis(s, model)).collect::<Vec<_>>()))
        .collect();

    let full: Vec<RationalMatrix> = (1..=spec.top_degree())
        .map(|k| {
            let b = spec.boundary(k);
            let mut d = RationalMatrix::zeros(n * b.rows(), n * b.cols());
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    d.paste(n * i, n * j, &regular_representation(b.get(i, j), model));
                }
            }
            d
        })
        .collect();

    let mut maps = Vec::with_capacity(full.len());
    for k in 1..=spec.top_degree() {
        let image = &bases[k] * &full[k - 1];
        if bases[k - 1].vstack(&image).rank() != bases[k - 1].rows() {
            return Err(OracleError::NotInvariant { degree: k });
        }
        if k >= 2 && !(&image * &full[k - 2]).is_zero() {
            return Err(OracleError::NonzeroComposite { degree: k });
        }
        maps.push(image);
    }
    Ok(RealizedComplex { n: model.n, bases, maps })
}

/// Everything the oracle measured, indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    #[serde(rename = "N")]
    pub n: u64,
    /// ℚ-dimension of each realized module.
    pub block_dims: Vec<usize>,
    /// `ranks[k]` is the rank of `∂ₖ`; `ranks[0] = 0`.
    pub ranks: Vec<usize>,
    /// Unaugmented homology.
    pub homology_dims: Vec<usize>,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub vn_dims: Vec<Q>,
}

impl OracleReport {
    /// Whether the augmented complex `⋯ → C₀ → ℚ → 0` is exact: no homology
    /// above degree zero, and `H₀ ≅ ℚ`.
    pub fn is_resolution(&self) -> bool {
        self.homology_dims.first() == Some(&1) && self.homology_dims[1..].iter().all(|&h| h == 0)
    }

    /// `(degree, dim ker ∂ₙ, dim im ∂ₙ₊₁)` for every degree above zero.
    pub fn kernel_image_dims(&self) -> Vec<(usize, usize, usize)> {
        (1..self.block_dims.len())
            .map(|k| (k, self.block_dims[k] - self.ranks[k], self.ranks.get(k + 1).copied().unwrap_or(0)))
            .collect()
    }
}

pub fn von_neumann_dims(realized: &RealizedComplex) -> OracleReport {
    let block_dims: Vec<usize> = realized.bases.iter().map(RationalMatrix::rows).collect();
    let mut ranks = vec![0];
    ranks.extend(realized.maps.iter().map(RationalMatrix::rank));
    let homology_dims: Vec<usize> = (0..block_dims.len())
        .map(|k| block_dims[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect();
    let vn_dims = homology_dims
        .iter()
        .map(|&h| Q::new((h as i64).into(), (realized.n as i64).into()))
        .collect();
    OracleReport { n: realized.n, block_dims, ranks, homology_dims, vn_dims }
}

/// Builds, realizes and measures the resolution of a finite one-relator group.
pub fn oracle_for_presentation(p: &Presentation) -> Result<OracleReport, OracleError> {
    let model = FiniteCyclicModel::for_presentation(p)?;
    let spec = crate::complexes::build_one_relator_complex(p).map_err(|_| OracleError::NotFiniteCyclic)?;
    Ok(von_neumann_dims(&realize_complex(&spec, &model)?))
}
