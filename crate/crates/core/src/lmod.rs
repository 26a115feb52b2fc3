//! Basis extraction for a factorization `A·B = 0` through a rank-two free
//! module over a field, with `A` of shape `X × 2` and `B` of shape `2 × Y`.
//!
//! Over a field, `A ≠ 0`, `B ≠ 0` and `AB = 0` force both to have rank one.
//! The construction takes `v₁` to be a nonzero row `x₀` of `A` and `v₂ = (1, 0)`,
//! after swapping the two coordinates if the first row of `B` vanishes.
//! Then `span(v₁) = ker B = im A`, and `B` is injective on `span(v₂)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::rational::{parse_q, serde_q_vec, Q};
use crate::vnoracle::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmodError {
    #[error("A must have two columns, found {0}")]
    AShape(usize),
    #[error("B must have two rows, found {0}")]
    BShape(usize),
    #[error("A is zero")]
    ZeroA,
    #[error("B is zero")]
    ZeroB,
    #[error("AB is not zero")]
    NonzeroProduct,
    #[error("bad matrix entry: {0}")]
    BadEntry(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColumnFactorization {
    a: RationalMatrix,
    b: RationalMatrix,
}

impl TwoColumnFactorization {
    pub fn new(a: RationalMatrix, b: RationalMatrix) -> Result<Self, LmodError> {
        if a.cols() != 2 {
            return Err(LmodError::AShape(a.cols()));
        }
        if b.rows() != 2 {
            return Err(LmodError::BShape(b.rows()));
        }
        if a.is_zero() {
            return Err(LmodError::ZeroA);
        }
        if b.is_zero() {
            return Err(LmodError::ZeroB);
        }
        if !(&a * &b).is_zero() {
            return Err(LmodError::NonzeroProduct);
        }
        Ok(TwoColumnFactorization { a, b })
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &RationalMatrix {
        &self.b
    }

    /// `a_{x,k}` in working coordinates.
    fn a_at(&self, x: usize, k: usize, swapped: bool) -> &Q {
        self.a.get(x, if swapped { 1 - k } else { k })
    }

    /// `b_{k,y}` in working coordinates.
    fn b_at(&self, k: usize, y: usize, swapped: bool) -> &Q {
        self.b.get(if swapped { 1 - k } else { k }, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x0: usize,
    pub y0: usize,
    /// Whether the two coordinates were exchanged so that `b_{1,y₀} ≠ 0`.
    pub swapped: bool,
}

/// Vectors are in the caller's coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LmodBasis {
    #[serde(with = "serde_q_vec")]
    pub v1: Vec<Q>,
    #[serde(with = "serde_q_vec")]
    pub v2: Vec<Q>,
    pub witness: Witness,
}

pub fn lmod_basis(f: &TwoColumnFactorization) -> LmodBasis {
    let x0 = (0..f.a.rows()).find(|&x| !f.a.row(x).iter().all(Q::is_zero)).expect("A is nonzero");
    let first_row_y0 = (0..f.b.cols()).find(|&y| !f.b.get(0, y).is_zero());
    let (y0, swapped) = match first_row_y0 {
        Some(y) => (y, false),
        None => ((0..f.b.cols()).find(|&y| !f.b.get(1, y).is_zero()).expect("B is nonzero"), true),
    };
    let v1 = f.a.row(x0).to_vec();
    let v2 = if swapped { vec![Q::zero(), Q::one()] } else { vec![Q::one(), Q::zero()] };
    LmodBasis { v1, v2, witness: Witness { x0, y0, swapped } }
}

fn det(u: &[Q], v: &[Q]) -> Q {
    &u[0] * &v[1] - &u[1] * &v[0]
}

fn times_b(v: &[Q], b: &RationalMatrix) -> Vec<Q> {
    (0..b.cols()).map(|y| &v[0] * b.get(0, y) + &v[1] * b.get(1, y)).collect()
}

/// The five conditions that make `{v₁, v₂}` realize exactness.
pub fn lmod_verify(f: &TwoColumnFactorization, v1: &[Q], v2: &[Q]) -> bool {
    v1.len() == 2
        && v2.len() == 2
        && !det(v1, v2).is_zero()
        && times_b(v1, &f.b).iter().all(Q::is_zero)
        && (0..f.a.rows()).all(|x| det(f.a.row(x), v1).is_zero())
        && !times_b(v2, &f.b).iter().all(Q::is_zero)
        && f.b.rank() == 1
}

/// `a_{x₀,2} ≠ 0` and `a_{x₀,1} = −a_{x₀,2}·b_{2,y₀}·b_{1,y₀}⁻¹`, in working coordinates.
pub fn proof_identity_holds(f: &TwoColumnFactorization, w: &Witness) -> bool {
    let a1 = f.a_at(w.x0, 0, w.swapped);
    let a2 = f.a_at(w.x0, 1, w.swapped);
    let b1 = f.b_at(0, w.y0, w.swapped);
    let b2 = f.b_at(1, w.y0, w.swapped);
    !a2.is_zero() && !b1.is_zero() && *a1 == -(a2 * b2 / b1)
}

/// A rational given either as a JSON integer or as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry(pub Q);

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(Entry(Q::from_integer(n.into()))),
            Repr::Text(s) => parse_q(&s).map(Entry).map_err(serde::de::Error::custom),
        }
    }
}

/// `{"A": [[..], ..], "B": [[..], [..]]}`
#[derive(Debug, Clone, Deserialize)]
pub struct LmodInput {
    #[serde(rename = "A")]
    pub a: Vec<Vec<Entry>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Entry>>,
}

fn matrix(rows: &[Vec<Entry>], name: &str) -> Result<RationalMatrix, LmodError> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(LmodError::BadEntry(format!("{name} is ragged")));
    }
    Ok(RationalMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|e| e.0.clone()).collect()).collect()))
}

impl LmodInput {
    pub fn factorization(&self) -> Result<TwoColumnFactorization, LmodError> {
        TwoColumnFactorization::new(matrix(&self.a, "A")?, matrix(&self.b, "B")?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LmodOutcome {
    #[serde(flatten)]
    pub basis: LmodBasis,
    pub verified: bool,
    pub proof_identity: bool,
}

pub fn lmod_demo(f: &TwoColumnFactorization) -> LmodOutcome {
    let basis = lmod_basis(f);
    let verified = lmod_verify(f, &basis.v1, &basis.v2);
    let proof_identity = proof_identity_holds(f, &basis.witness);
    LmodOutcome { basis, verified, proof_identity }
}
