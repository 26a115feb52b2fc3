//! Presentations, their classification, and presentation-level invariants.

mod dehn;
mod parse;

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{int, Q};
use crate::words::{Alphabet, VagueCardinal, Word, WordError};

pub use dehn::{dehn_trivial, SurfaceGroup};
pub use parse::{parse_presentation, ParseError, ParseErrorKind};

/// A hypothesis the user asserts about the group. Never inferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assumption {
    LeftOrderable,
    CdAtLeast3,
}

impl Assumption {
    pub fn name(self) -> &'static str {
        match self {
            Assumption::LeftOrderable => "left-orderable",
            Assumption::CdAtLeast3 => "cd>=3",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "left-orderable" => Some(Assumption::LeftOrderable),
            "cd>=3" => Some(Assumption::CdAtLeast3),
            _ => None,
        }
    }
}

/// A user-supplied claim that the extra surface relator is `beta^m` with `m` its exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDeclaration {
    pub beta: Word,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    assumptions: BTreeSet<Assumption>,
    root_declaration: Option<RootDeclaration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    OneRelator,
    SurfacePlusOne { genus: usize },
    TwoRelator,
    General,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::OneRelator => "one-relator",
            Classification::SurfacePlusOne { .. } => "surface-plus-one",
            Classification::TwoRelator => "two-relator",
            Classification::General => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("expected a {expected} presentation, found {found}")]
    WrongClassification { expected: &'static str, found: &'static str },
    #[error("the extra relator is trivial in the surface group")]
    TrivialSurfaceRelator,
    #[error("root declaration rejected: {0}")]
    RootDeclarationFailed(String),
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, WordError> {
        for r in &relators {
            alphabet.check(r)?;
        }
        Ok(Presentation { alphabet, relators, assumptions: BTreeSet::new(), root_declaration: None })
    }

    pub fn with_assumption(mut self, a: Assumption) -> Self {
        self.assumptions.insert(a);
        self
    }

    pub fn with_root_declaration(mut self, d: RootDeclaration) -> Self {
        self.root_declaration = Some(d);
        self
    }

    /// The free group of the given rank, as a relator-free presentation.
    pub fn free(rank: usize) -> Self {
        let names: Vec<String> = (1..=rank).map(|i| format!("x{i}")).collect();
        Presentation::new(Alphabet::new(&names).expect("valid names"), Vec::new()).expect("no relators")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn assumptions(&self) -> impl Iterator<Item = Assumption> + '_ {
        self.assumptions.iter().copied()
    }

    pub fn assumes(&self, a: Assumption) -> bool {
        self.assumptions.contains(&a)
    }

    pub fn root_declaration(&self) -> Option<&RootDeclaration> {
        self.root_declaration.as_ref()
    }

    /// Syntactic classification; the surface relator must appear verbatim, first.
    pub fn classify(&self) -> Classification {
        let d = self.alphabet.len();
        match self.relators.len() {
            0 | 1 => Classification::OneRelator,
            2 if d >= 2 && d.is_multiple_of(2) && self.relators[0] == Word::surface_relator(d / 2) => {
                Classification::SurfacePlusOne { genus: d / 2 }
            }
            2 => Classification::TwoRelator,
            _ => Classification::General,
        }
    }

    fn expect_class(&self, expected: &'static str, ok: bool) -> Result<(), PresentationError> {
        if ok {
            Ok(())
        } else {
            Err(PresentationError::WrongClassification { expected, found: self.classify().name() })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneRelatorInvariants {
    pub d: u64,
    pub m: VagueCardinal,
    /// Root of the relator; the identity when `m = ∞`.
    pub root: Word,
    pub chi: Q,
    pub order: VagueCardinal,
}

/// `d`, `m`, `χ = 1 − d + 1/m` and `|G|` of a one-relator presentation.
pub fn one_relator_invariants(p: &Presentation) -> Result<OneRelatorInvariants, PresentationError> {
    p.expect_class("one-relator", p.classify() == Classification::OneRelator)?;
    let d = p.alphabet.len() as u64;
    let r = p.relators.first().cloned().unwrap_or_default();
    let (root, m) = match r.root() {
        Ok((q, m)) => (q, VagueCardinal::Finite(m)),
        Err(_) => (Word::identity(), VagueCardinal::Infinite),
    };
    let chi = int(1) - int(d as i64) + m.reciprocal();
    let order = match (d, m) {
        (0, _) => VagueCardinal::Finite(1),
        (1, VagueCardinal::Finite(m)) => VagueCardinal::Finite(m),
        _ => VagueCardinal::Infinite,
    };
    Ok(OneRelatorInvariants { d, m, root, chi, order })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentStatus {
    ComputedExact,
    DeclaredVerified,
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub genus: usize,
    pub m: u64,
    pub m_status: ExponentStatus,
    /// The extra relator as given.
    pub alpha: Word,
    /// `q` with `q^m` equal in the surface group to a conjugate of `alpha`.
    pub root: Word,
    pub chi: Q,
    pub cd_q: u32,
    pub order: VagueCardinal,
}

impl SurfaceInvariants {
    pub fn is_conditional(&self) -> bool {
        self.m_status == ExponentStatus::LowerBoundOnly
    }
}

/// Invariants of `⟨x₁..x_{2g} | [x₁,x₂]⋯[x_{2g−1},x_{2g}], α⟩`.
///
/// For genus one the surface group is ℤ², so the exponent of `α` is the gcd of
/// its exponent sums. For higher genus the exponent comes from a verified root
/// declaration when present; otherwise the free-group exponent of a Dehn-reduced
/// cyclic conjugate of `α` is used, which is only a lower bound.
pub fn surface_invariants(p: &Presentation) -> Result<SurfaceInvariants, PresentationError> {
    let genus = match p.classify() {
        Classification::SurfacePlusOne { genus } => genus,
        other => {
            return Err(PresentationError::WrongClassification {
                expected: "surface-plus-one",
                found: other.name(),
            })
        }
    };
    let alpha = p.relators[1].clone();
    if alpha.is_identity() {
        return Err(PresentationError::TrivialSurfaceRelator);
    }
    let (m, m_status, root) = if genus == 1 {
        genus_one_exponent(&alpha, p.root_declaration())?
    } else {
        higher_genus_exponent(genus, &alpha, p.root_declaration())?
    };
    let two = int(2);
    let raw = &two - int(2 * genus as i64) + Q::new(1.into(), m.into());
    let chi = if raw < Q::zero() { raw } else { Q::zero() };
    Ok(SurfaceInvariants {
        genus,
        m,
        m_status,
        alpha,
        root,
        chi,
        cd_q: genus.min(2) as u32,
        order: VagueCardinal::Infinite,
    })
}

fn genus_one_exponent(
    alpha: &Word,
    decl: Option<&RootDeclaration>,
) -> Result<(u64, ExponentStatus, Word), PresentationError> {
    let v = alpha.exponent_sums(2);
    let (a, b) = (v[0], v[1]);
    if a == 0 && b == 0 {
        return Err(PresentationError::TrivialSurfaceRelator);
    }
    let m = a.gcd(&b) as u64;
    let root = Word::generator(0).pow(a / m as i64).multiply(&Word::generator(1).pow(b / m as i64));
    if let Some(d) = decl {
        let bv = d.beta.exponent_sums(2);
        if d.m != m || bv[0] * m as i64 != a || bv[1] * m as i64 != b {
            return Err(PresentationError::RootDeclarationFailed(format!(
                "in genus one the exponent is gcd = {m}, and beta^{} must match the exponent sums ({a}, {b})",
                d.m
            )));
        }
    }
    Ok((m, ExponentStatus::ComputedExact, root))
}

fn higher_genus_exponent(
    genus: usize,
    alpha: &Word,
    decl: Option<&RootDeclaration>,
) -> Result<(u64, ExponentStatus, Word), PresentationError> {
    let s = SurfaceGroup::new(genus).expect("genus >= 2");
    if s.is_trivial(alpha) {
        return Err(PresentationError::TrivialSurfaceRelator);
    }
    // proper powers in F stay proper powers in S, so both are lower bounds
    let (q_free, m_free) = alpha.root().expect("alpha is nontrivial");
    let core = s.cyclic_core(alpha);
    let (q_core, m_core) = core.root().expect("nontrivial in S");
    let (lower_root, lower) = if m_core > m_free { (q_core, m_core) } else { (q_free, m_free) };

    match decl {
        Some(d) => {
            if d.m < lower {
                return Err(PresentationError::RootDeclarationFailed(format!(
                    "declared exponent {} is below the proven lower bound {lower}",
                    d.m
                )));
            }
            let diff = alpha.multiply(&d.beta.pow(-(d.m as i64)));
            if !s.is_trivial(&diff) {
                return Err(PresentationError::RootDeclarationFailed(format!(
                    "alpha is not beta^{} in the surface group",
                    d.m
                )));
            }
            Ok((d.m, ExponentStatus::DeclaredVerified, d.beta.clone()))
        }
        None => Ok((lower, ExponentStatus::LowerBoundOnly, lower_root)),
    }
}
