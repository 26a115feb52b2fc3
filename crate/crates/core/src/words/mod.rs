//! Freely reduced words in a free group of finite rank.
//!
//! A [`Word`] stores generator indices, not names; names live in an
//! [`Alphabet`], which also owns the textual word grammar. Every `Word` is
//! freely reduced, so structural equality is equality in the free group.

mod literal;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::Q;

pub use literal::{Alphabet, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("malformed exponent {0:?}")]
    MalformedExponent(String),
    #[error("unbalanced brackets in {0:?}")]
    UnbalancedBracket(String),
    #[error("unexpected character {found:?} at offset {offset}")]
    UnexpectedChar { found: char, offset: usize },
    #[error("word uses generator #{found} but the alphabet has rank {rank}")]
    AlphabetMismatch { rank: usize, found: usize },
    #[error("the empty word has no root")]
    EmptyWord,
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub const fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word.
///
/// Ordering is shortlex: shorter words first, then lexicographic on letters
/// (lower generator index first, `x` before `x^-1`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(index: usize) -> Self {
        Word { letters: vec![Letter::pos(index)] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in raw {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word { letters: stack }
    }

    fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| !p[0].cancels(p[1])));
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, plus one; 0 for the identity.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        // cancel across the seam only
        let mut k = 0;
        let (a, b) = (&self.letters, &other.letters);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k].cancels(b[k]) {
            k += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * k);
        letters.extend_from_slice(&a[..a.len() - k]);
        letters.extend_from_slice(&b[k..]);
        Word::from_reduced(letters)
    }

    pub fn inverse(&self) -> Word {
        Word::from_reduced(self.letters.iter().rev().map(|l| l.inv()).collect())
    }

    /// `self^k`; negative `k` powers the inverse.
    pub fn pow(&self, k: i64) -> Word {
        if k == 0 || self.is_identity() {
            return Word::identity();
        }
        let (conj, core) = self.cyclic_reduce();
        let base = if k > 0 {
            core.letters.clone()
        } else {
            core.letters.iter().rev().map(|l| l.inv()).collect()
        };
        let reps = k.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(2 * conj.len() + base.len() * reps);
        letters.extend_from_slice(&conj.letters);
        for _ in 0..reps {
            letters.extend_from_slice(&base);
        }
        letters.extend(conj.letters.iter().rev().map(|l| l.inv()));
        Word::from_reduced(letters)
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, CyclicWord) {
        let l = &self.letters;
        let (mut i, mut j) = (0usize, l.len());
        while j >= i + 2 && l[i].cancels(l[j - 1]) {
            i += 1;
            j -= 1;
        }
        (
            Word::from_reduced(l[..i].to_vec()),
            CyclicWord { letters: l[i..j].to_vec() },
        )
    }

    /// The largest `m` with `self = q^m`, or ∞ for the identity.
    pub fn exponent(&self) -> VagueCardinal {
        if self.is_identity() {
            return VagueCardinal::Infinite;
        }
        VagueCardinal::Finite(self.cyclic_reduce().1.exponent())
    }

    /// Returns `(q, m)` with `q^m = self`, `m` maximal and `q` not a proper power.
    pub fn root(&self) -> Result<(Word, u64), WordError> {
        if self.is_identity() {
            return Err(WordError::EmptyWord);
        }
        let (conj, core) = self.cyclic_reduce();
        let m = core.exponent();
        let period = core.len() / m as usize;
        let q = conj
            .multiply(&Word::from_reduced(core.letters[..period].to_vec()))
            .multiply(&conj.inverse());
        Ok((q, m))
    }

    /// Image in the abelianization ℤ^rank.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank.max(self.min_rank())];
        for l in &self.letters {
            v[l.generator] += l.sign();
        }
        v
    }

    /// Exponent sum of a single generator.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.sign())
            .sum()
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.multiply(v).multiply(&u.inverse()).multiply(&v.inverse())
    }

    /// `[x₁,x₂][x₃,x₄]⋯[x_{2g−1},x_{2g}]` on generators `0..2g`.
    pub fn surface_relator(genus: usize) -> Word {
        (0..genus).fold(Word::identity(), |acc, j| {
            acc.multiply(&Word::commutator(&Word::generator(2 * j), &Word::generator(2 * j + 1)))
        })
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::reduce(iter)
    }
}

/// A cyclically reduced word: freely reduced and first/last letters not mutually inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word::from_reduced(self.letters.clone())
    }

    fn has_period(&self, p: usize) -> bool {
        self.letters.iter().enumerate().all(|(i, l)| *l == self.letters[i % p])
    }

    /// Largest `m` such that the word is a block repeated `m` times.
    ///
    /// Scans divisors `p` of the length in increasing order; the first `p`
    /// that is a period gives the largest exponent `len / p`.
    pub fn exponent(&self) -> u64 {
        let n = self.letters.len();
        if n == 0 {
            return 1;
        }
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| self.has_period(p))
            .map(|p| (n / p) as u64)
            .unwrap_or(1)
    }
}

/// An element of ℕ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VagueCardinal {
    Finite(u64),
    Infinite,
}

impl VagueCardinal {
    pub fn is_finite(self) -> bool {
        matches!(self, VagueCardinal::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            VagueCardinal::Finite(n) => Some(n),
            VagueCardinal::Infinite => None,
        }
    }

    /// `1/n`, with `1/∞ = 0`. Panics on zero.
    pub fn reciprocal(self) -> Q {
        match self {
            VagueCardinal::Finite(0) => panic!("reciprocal of zero"),
            VagueCardinal::Finite(n) => Q::new(BigInt::from(1), BigInt::from(n)),
            VagueCardinal::Infinite => Q::zero(),
        }
    }
}

impl PartialOrd for VagueCardinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VagueCardinal {
    fn cmp(&self, other: &Self) -> Ordering {
        use VagueCardinal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for VagueCardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VagueCardinal::Finite(n) => write!(f, "{n}"),
            VagueCardinal::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for VagueCardinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            VagueCardinal::Finite(n) => s.serialize_u64(*n),
            VagueCardinal::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for VagueCardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(n) => Ok(VagueCardinal::Finite(n)),
            Repr::S(s) if s == "infinity" => Ok(VagueCardinal::Infinite),
            Repr::S(s) => Err(serde::de::Error::custom(format!("not a vague cardinal: {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const X: Letter = Letter::pos(0);
    const XI: Letter = Letter::neg(0);
    const Y: Letter = Letter::pos(1);
    const YI: Letter = Letter::neg(1);

    fn w(ls: &[Letter]) -> Word {
        Word::reduce(ls.iter().copied())
    }

    fn naive_reduce(mut v: Vec<Letter>) -> Vec<Letter> {
        loop {
            match (0..v.len().saturating_sub(1)).find(|&i| v[i].cancels(v[i + 1])) {
                Some(i) => {
                    v.drain(i..i + 2);
                }
                None => return v,
            }
        }
    }

    fn brute_exponent(core: &[Letter]) -> u64 {
        let n = core.len();
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .filter(|&d| {
                let block = &core[..n / d];
                block.repeat(d) == core
            })
            .max()
            .unwrap_or(1) as u64
    }

    fn letter() -> impl Strategy<Value = Letter> {
        (0usize..3, any::<bool>()).prop_map(|(generator, inverse)| Letter { generator, inverse })
    }

    fn word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(letter(), 0..max).prop_map(Word::reduce)
    }

    #[test]
    fn reduce_examples() {
        assert!(w(&[X, XI]).is_identity());
        assert_eq!(w(&[X, Y, YI, X]).letters(), &[X, X]);
    }

    #[test]
    fn multiply_and_invert_examples() {
        assert_eq!(w(&[X, Y]).multiply(&w(&[YI])), w(&[X]));
        assert_eq!(Word::identity().multiply(&w(&[X, Y])), w(&[X, Y]));
        assert_eq!(w(&[X, Y]).inverse().letters(), &[YI, XI]);
        assert!(Word::identity().inverse().is_identity());
    }

    #[test]
    fn power_examples() {
        assert_eq!(w(&[X]).pow(3).letters(), &[X, X, X]);
        assert_eq!(w(&[X, Y]).pow(-1).letters(), &[YI, XI]);
        assert!(w(&[X, Y]).pow(0).is_identity());
        // conjugated power keeps the conjugator once
        let c = w(&[X, Y, XI]);
        assert_eq!(c.pow(3).letters(), &[X, Y, Y, Y, XI]);
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (c, core) = w(&[X, Y, XI]).cyclic_reduce();
        assert_eq!(c, w(&[X]));
        assert_eq!(core.letters(), &[Y]);
        let (c, core) = w(&[X, Y]).cyclic_reduce();
        assert!(c.is_identity());
        assert_eq!(core.letters(), &[X, Y]);
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(Word::identity().exponent(), VagueCardinal::Infinite);
        assert_eq!(w(&[X]).exponent(), VagueCardinal::Finite(1));
        assert_eq!(w(&[X, Y, X, Y, X, Y]).exponent(), VagueCardinal::Finite(3));
        assert_eq!(w(&[X, Y, XI, YI]).exponent(), VagueCardinal::Finite(1));
    }

    #[test]
    fn root_examples() {
        assert_eq!(w(&[X, Y, X, Y]).root().unwrap(), (w(&[X, Y]), 2));
        assert_eq!(w(&[X]).root().unwrap(), (w(&[X]), 1));
        assert_eq!(Word::identity().root(), Err(WordError::EmptyWord));
        // root of a conjugated power is conjugated
        let r = w(&[Y, X, X, X, YI]);
        assert_eq!(r.root().unwrap(), (w(&[Y, X, YI]), 3));
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w(&[X, Y, XI, YI]).exponent_sums(2), vec![0, 0]);
        assert_eq!(w(&[X, X, YI]).exponent_sums(2), vec![2, -1]);
    }

    #[test]
    fn surface_relator_genus_two() {
        let r = Word::surface_relator(2);
        let l = |g, inv| Letter { generator: g, inverse: inv };
        assert_eq!(
            r.letters(),
            &[
                l(0, false), l(1, false), l(0, true), l(1, true),
                l(2, false), l(3, false), l(2, true), l(3, true)
            ]
        );
    }

    #[test]
    fn vague_cardinal_order_and_reciprocal() {
        assert!(VagueCardinal::Finite(100) < VagueCardinal::Infinite);
        assert_eq!(VagueCardinal::Infinite.reciprocal(), Q::zero());
        assert_eq!(VagueCardinal::Finite(4).reciprocal(), Q::new(1.into(), 4.into()));
        let s = serde_json::to_string(&[VagueCardinal::Finite(3), VagueCardinal::Infinite]).unwrap();
        assert_eq!(s, r#"[3,"infinity"]"#);
        let back: Vec<VagueCardinal> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![VagueCardinal::Finite(3), VagueCardinal::Infinite]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn reduce_matches_naive(raw in prop::collection::vec(letter(), 0..=60)) {
            let fast = Word::reduce(raw.clone());
            prop_assert_eq!(fast.letters(), &naive_reduce(raw)[..]);
        }

        #[test]
        fn reduce_idempotent(u in word(30)) {
            prop_assert_eq!(Word::reduce(u.letters().iter().copied()), u);
        }

        #[test]
        fn multiply_associative(u in word(20), v in word(20), x in word(20)) {
            prop_assert_eq!(u.multiply(&v).multiply(&x), u.multiply(&v.multiply(&x)));
            prop_assert!(u.multiply(&u.inverse()).is_identity());
            prop_assert_eq!(u.inverse().inverse(), u);
        }

        #[test]
        fn power_is_iterated_multiply(u in word(15), k in -8i64..=8) {
            let base = if k >= 0 { u.clone() } else { u.inverse() };
            let folded = (0..k.abs()).fold(Word::identity(), |acc, _| acc.multiply(&base));
            prop_assert_eq!(u.pow(k), folded);
        }

        #[test]
        fn cyclic_reduce_recomposes(u in word(30)) {
            let (c, core) = u.cyclic_reduce();
            let l = core.letters();
            if l.len() >= 2 {
                prop_assert!(!l[0].cancels(l[l.len() - 1]));
            }
            prop_assert_eq!(c.multiply(&core.to_word()).multiply(&c.inverse()), u);
        }

        #[test]
        fn exponent_matches_brute_force(u in word(40)) {
            let (_, core) = u.cyclic_reduce();
            if !core.is_empty() {
                prop_assert_eq!(core.exponent(), brute_exponent(core.letters()));
            }
        }

        #[test]
        fn root_round_trip(q in word(12), m in 1u64..=6) {
            let (q, _) = match q.root() { Ok(r) => r, Err(_) => return Ok(()) };
            let r = q.pow(m as i64);
            let (q2, m2) = r.root().unwrap();
            prop_assert_eq!(m2, m);
            prop_assert_eq!(q2.pow(m2 as i64), r);
            prop_assert_eq!(q2.exponent(), VagueCardinal::Finite(1));
        }

        #[test]
        fn exponent_multiplies(q in word(12), k in 1i64..=8) {
            if let VagueCardinal::Finite(e) = q.exponent() {
                prop_assert_eq!(q.pow(k).exponent(), VagueCardinal::Finite(e * k as u64));
            }
        }

        #[test]
        fn exponent_sums_additive(u in word(20), v in word(20)) {
            let a = u.exponent_sums(3);
            let b = v.exponent_sums(3);
            let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert_eq!(u.multiply(&v).exponent_sums(3), s);
        }
    }
}
