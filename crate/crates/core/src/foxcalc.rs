//! The rational group ring ℚF of a free group and left Fox derivatives.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_q, int, parse_q, Q};
use crate::words::{Alphabet, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("idempotent needs a nontrivial root")]
    EmptyRoot,
    #[error("idempotent order must be positive")]
    ZeroOrder,
    #[error("bad coefficient: {0}")]
    BadCoefficient(String),
}

/// A finite ℚ-linear combination of reduced words. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, Q>,
}

/// One term of the serialized form of a [`GroupRingElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub word: String,
    pub coeff: String,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(w, Q::one())
    }

    pub fn monomial(w: Word, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        GroupRingElement { terms }
    }

    /// `w − 1`
    pub fn minus_one(w: Word) -> Self {
        &Self::from_word(w) - &Self::one()
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Q)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in it {
            e.add_term(w, c);
        }
        e
    }

    fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in shortlex word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GroupRingElement { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> Q {
        self.coeff(&Word::identity())
    }

    pub fn min_rank(&self) -> usize {
        self.terms.keys().map(Word::min_rank).max().unwrap_or(0)
    }

    pub fn to_doc(&self, alphabet: &Alphabet) -> Vec<TermDoc> {
        self.terms
            .iter()
            .map(|(w, c)| TermDoc { word: alphabet.format_word(w), coeff: format_q(c) })
            .collect()
    }

    pub fn from_doc(alphabet: &Alphabet, doc: &[TermDoc]) -> Result<Self, FoxError> {
        let mut e = Self::zero();
        for t in doc {
            let w = alphabet.parse_word(&t.word)?;
            let c = parse_q(&t.coeff).map_err(FoxError::BadCoefficient)?;
            e.add_term(w, c);
        }
        Ok(e)
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(&-Q::one())
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.multiply(v), a * b);
            }
        }
        out
    }
}

impl std::iter::Sum for GroupRingElement {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GroupRingElement::zero(), |acc, x| &acc + &x)
    }
}

/// ℚF for a fixed alphabet; the checked entry points reject foreign generators.
#[derive(Debug, Clone)]
pub struct GroupRing<'a> {
    alphabet: &'a Alphabet,
}

impl<'a> GroupRing<'a> {
    pub fn new(alphabet: &'a Alphabet) -> Self {
        GroupRing { alphabet }
    }

    fn check(&self, a: &GroupRingElement) -> Result<(), WordError> {
        let r = a.min_rank();
        if r > self.alphabet.len() {
            return Err(WordError::AlphabetMismatch { rank: self.alphabet.len(), found: r - 1 });
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement, WordError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a + b)
    }

    pub fn mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement, WordError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a * b)
    }

    pub fn scale(&self, c: &Q, a: &GroupRingElement) -> Result<GroupRingElement, WordError> {
        self.check(a)?;
        Ok(a.scale(c))
    }

    /// `∂r/∂x` for the generator named `x`.
    pub fn fox_derivative(&self, r: &Word, x: &str) -> Result<GroupRingElement, WordError> {
        self.alphabet.check(r)?;
        let i = self.alphabet.index_of(x).ok_or_else(|| WordError::UnknownGenerator(x.to_owned()))?;
        Ok(fox_derivative(r, i))
    }
}

/// Left Fox derivative `∂r/∂x` of a reduced word with respect to generator `x`.
///
/// Each occurrence of `x` contributes its prefix; each occurrence of `x⁻¹`
/// contributes minus its prefix including that letter.
pub fn fox_derivative(r: &Word, x: usize) -> GroupRingElement {
    let letters = r.letters();
    let mut out = GroupRingElement::zero();
    for (i, l) in letters.iter().enumerate() {
        if l.generator != x {
            continue;
        }
        if l.inverse {
            out.add_term(Word::reduce(letters[..=i].iter().copied()), -Q::one());
        } else {
            out.add_term(Word::reduce(letters[..i].iter().copied()), Q::one());
        }
    }
    out
}

/// Fox derivative of an arbitrary, possibly unreduced, letter sequence.
pub fn fox_derivative_raw(letters: &[Letter], x: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &l in letters {
        let next = prefix.multiply(&Word::reduce([l]));
        if l.generator == x {
            if l.inverse {
                out.add_term(next.clone(), -Q::one());
            } else {
                out.add_term(prefix.clone(), Q::one());
            }
        }
        prefix = next;
    }
    out
}

/// `1 + c + c² + ⋯ + c^{m−1}`
pub fn geometric_sum(c: &Word, m: u64) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut p = Word::identity();
    for _ in 0..m {
        out.add_term(p.clone(), Q::one());
        p = p.multiply(c);
    }
    out
}

/// `∂(q^m)/∂x` computed as `(Σ_{i<m} qⁱ)·∂q/∂x`.
pub fn fox_power_factorization(q: &Word, m: u64, x: usize) -> GroupRingElement {
    &geometric_sum(q, m) * &fox_derivative(q, x)
}

/// `e = (1/m) Σ_{i<m} cⁱ`, the averaging element of the cyclic subgroup generated by `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idempotent {
    order: u64,
    root: Word,
    element: GroupRingElement,
}

impl Idempotent {
    pub fn new(root: Word, order: u64) -> Result<Self, FoxError> {
        if root.is_identity() {
            return Err(FoxError::EmptyRoot);
        }
        if order == 0 {
            return Err(FoxError::ZeroOrder);
        }
        let element = geometric_sum(&root, order).scale(&Q::new(1.into(), order.into()));
        Ok(Idempotent { order, root, element })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn root(&self) -> &Word {
        &self.root
    }

    pub fn element(&self) -> &GroupRingElement {
        &self.element
    }

    /// `m·e = Σ_{i<m} cⁱ`
    pub fn norm_element(&self) -> GroupRingElement {
        self.element.scale(&int(self.order as i64))
    }
}

pub fn make_idempotent(c: &Word, m: u64) -> Result<Idempotent, FoxError> {
    Idempotent::new(c.clone(), m)
}
