//! Length-two free/twisted resolutions as symbolic chain complexes over ℚF.
//!
//! Modules are direct sums of summands, each a copy of ℚG (free) or ℚGe for an
//! idempotent `e`. A boundary `∂ₖ` is a matrix of group-ring elements acting on
//! row vectors by right multiplication: row `i` of `∂ₖ` is the image of the
//! `i`-th summand of degree `k`.

mod document;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foxcalc::{fox_derivative, fox_power_factorization, FoxError, GroupRingElement, Idempotent};
use crate::presentations::{
    one_relator_invariants, surface_invariants, Classification, ExponentStatus, Presentation, PresentationError,
};
use crate::words::{Alphabet, VagueCardinal, Word};

pub use document::{ComplexDocument, DocumentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Fox(#[from] FoxError),
    #[error("no resolution is implemented for {0} presentations")]
    Unsupported(&'static str),
    #[error("genus {0} needs the genus-{1} builder")]
    WrongGenus(usize, &'static str),
    #[error("boundary {degree} has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape { degree: usize, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Summand {
    Free,
    /// `ℚG·e`; also stands in for `ℚ[G/C]` when `e` averages over `C`.
    Twisted(Idempotent),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleSpec {
    pub summands: Vec<Summand>,
}

impl ModuleSpec {
    pub fn free(rank: usize) -> Self {
        ModuleSpec { summands: vec![Summand::Free; rank] }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

/// Dense row-major matrix of group-ring elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        GroupRingMatrix { rows, cols, entries: vec![GroupRingElement::zero(); rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<GroupRingElement>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            entries.extend(row);
        }
        GroupRingMatrix { rows: n, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut GroupRingElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[GroupRingElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexKind {
    OneRelator,
    Surface,
    GenusOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexSpec {
    pub kind: ComplexKind,
    pub alphabet: Alphabet,
    /// Indexed by degree.
    modules: Vec<ModuleSpec>,
    /// `boundaries[k - 1]` is `∂ₖ`.
    boundaries: Vec<GroupRingMatrix>,
    /// One lift per row of `∂₂`, the word whose `r − 1` that row must reproduce.
    pub relators: Vec<Word>,
    /// Set when the twisted summand uses an unverified exponent.
    pub conditional: bool,
}

impl ChainComplexSpec {
    pub fn new(
        kind: ComplexKind,
        alphabet: Alphabet,
        modules: Vec<ModuleSpec>,
        boundaries: Vec<GroupRingMatrix>,
        relators: Vec<Word>,
        conditional: bool,
    ) -> Result<Self, ComplexError> {
        assert_eq!(boundaries.len() + 1, modules.len().max(1), "one boundary per positive degree");
        for (k, b) in boundaries.iter().enumerate() {
            let (want_rows, want_cols) = (modules[k + 1].len(), modules[k].len());
            if (b.rows, b.cols) != (want_rows, want_cols) {
                return Err(ComplexError::Shape { degree: k + 1, rows: b.rows, cols: b.cols, want_rows, want_cols });
            }
        }
        Ok(ChainComplexSpec { kind, alphabet, modules, boundaries, relators, conditional })
    }

    pub fn top_degree(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, degree: usize) -> &ModuleSpec {
        &self.modules[degree]
    }

    pub fn modules(&self) -> &[ModuleSpec] {
        &self.modules
    }

    /// `∂ₖ` for `k ≥ 1`.
    pub fn boundary(&self, k: usize) -> &GroupRingMatrix {
        &self.boundaries[k - 1]
    }

    pub fn boundary_mut(&mut self, k: usize) -> &mut GroupRingMatrix {
        &mut self.boundaries[k - 1]
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument::from_spec(self)
    }
}

fn column_of_generators(d: usize) -> GroupRingMatrix {
    GroupRingMatrix::from_rows(1, (0..d).map(|j| vec![GroupRingElement::minus_one(Word::generator(j))]).collect())
}

/// `0 → ℚGe → ⊕_X ℚG → ℚG`, with the degree-two summand dropped when `m = ∞`.
pub fn build_one_relator_complex(p: &Presentation) -> Result<ChainComplexSpec, ComplexError> {
    let inv = one_relator_invariants(p)?;
    let d = p.alphabet().len();
    let r = p.relators().first().cloned().unwrap_or_default();
    let (top, rows, relators) = match inv.m {
        VagueCardinal::Finite(m) => {
            let e = Idempotent::new(inv.root.clone(), m)?;
            let row: Vec<_> = (0..d).map(|j| fox_derivative(&r, j)).collect();
            (ModuleSpec { summands: vec![Summand::Twisted(e)] }, vec![row], vec![r])
        }
        VagueCardinal::Infinite => (ModuleSpec::default(), Vec::new(), Vec::new()),
    };
    ChainComplexSpec::new(
        ComplexKind::OneRelator,
        p.alphabet().clone(),
        vec![ModuleSpec::free(1), ModuleSpec::free(d), top],
        vec![column_of_generators(d), GroupRingMatrix::from_rows(d, rows)],
        relators,
        false,
    )
}

/// `0 → ℚG ⊕ ℚGe → ⊕_{2g} ℚG → ℚG` for a genus `g ≥ 2` surface plus one relator.
///
/// The second row uses `r₂ = q₂^m`, where `q₂` is the verified declared root or,
/// lacking one, the lower-bound root; the latter marks the complex conditional.
pub fn build_surface_complex(p: &Presentation) -> Result<ChainComplexSpec, ComplexError> {
    let inv = surface_invariants(p)?;
    if inv.genus < 2 {
        return Err(ComplexError::WrongGenus(inv.genus, "one"));
    }
    let d = 2 * inv.genus;
    let r1 = p.relators()[0].clone();
    let e = Idempotent::new(inv.root.clone(), inv.m)?;
    let row1: Vec<_> = (0..d).map(|j| fox_derivative(&r1, j)).collect();
    let row2: Vec<_> = (0..d).map(|j| fox_power_factorization(&inv.root, inv.m, j)).collect();
    let r2 = inv.root.pow(inv.m as i64);
    ChainComplexSpec::new(
        ComplexKind::Surface,
        p.alphabet().clone(),
        vec![
            ModuleSpec::free(1),
            ModuleSpec::free(d),
            ModuleSpec { summands: vec![Summand::Free, Summand::Twisted(e)] },
        ],
        vec![column_of_generators(d), GroupRingMatrix::from_rows(d, vec![row1, row2])],
        vec![r1, r2],
        inv.m_status == ExponentStatus::LowerBoundOnly,
    )
}

/// `0 → ℚGe →(x−1) ℚGe → ℚ` for genus one, where `xC` generates `G/C ≅ ℤ`.
/// When `m = 1` the summands are free.
pub fn build_genus1_complex(p: &Presentation) -> Result<ChainComplexSpec, ComplexError> {
    let inv = surface_invariants(p)?;
    if inv.genus != 1 {
        return Err(ComplexError::WrongGenus(inv.genus, "two-or-more"));
    }
    let x = quotient_generator(&inv.root);
    let summand = if inv.m == 1 { Summand::Free } else { Summand::Twisted(Idempotent::new(inv.root.clone(), inv.m)?) };
    let module = ModuleSpec { summands: vec![summand] };
    ChainComplexSpec::new(
        ComplexKind::GenusOne,
        p.alphabet().clone(),
        vec![module.clone(), module],
        vec![GroupRingMatrix::from_rows(1, vec![vec![GroupRingElement::minus_one(x)]])],
        Vec::new(),
        false,
    )
}

/// A word whose image generates `ℤ²/⟨(a, b)⟩` for a primitive root `x₁^a x₂^b`.
pub fn quotient_generator(root: &Word) -> Word {
    let v = root.exponent_sums(2);
    let (a, b) = (v[0], v[1]);
    if b.abs() == 1 {
        return Word::generator(0);
    }
    if a.abs() == 1 {
        return Word::generator(1);
    }
    let (g, s, t) = complement(a, b);
    debug_assert_eq!(g, 1);
    Word::generator(0).pow(s).multiply(&Word::generator(1).pow(t))
}

/// `(g, s, t)` with `g = gcd(a, b)` and `a·t − b·s = g`.
fn complement(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0, -t0, s0)
}

/// Builds whichever resolution applies to `p`.
pub fn build_complex(p: &Presentation) -> Result<ChainComplexSpec, ComplexError> {
    match p.classify() {
        Classification::OneRelator => build_one_relator_complex(p),
        Classification::SurfacePlusOne { genus: 1 } => build_genus1_complex(p),
        Classification::SurfacePlusOne { .. } => build_surface_complex(p),
        other => Err(ComplexError::Unsupported(other.name())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks `∂₂∂₁ = 0` and `ε∂₁ = 0` without a word-problem solver.
///
/// Row `i` of `∂₂` composed with `∂₁ = (xⱼ − 1)ᵀ` must equal `rᵢ − 1` exactly in
/// ℚF, which is zero in ℚG. For the genus-one complex, `∂₁` need only be
/// killed by the augmentation. Every check is recorded; none short-circuits.
pub fn verify_composites_zero(spec: &ChainComplexSpec) -> VerificationReport {
    let mut checks = Vec::new();

    if spec.top_degree() >= 1 {
        let d1 = spec.boundary(1);
        for i in 0..d1.rows() {
            let ok = d1.row(i).iter().all(|a| a.augmentation() == num_traits::Zero::zero());
            checks.push(Check {
                name: format!("augmentation kills row {} of d1", i + 1),
                passed: ok,
                detail: (!ok).then(|| format!("row {} has nonzero augmentation", i + 1)),
            });
        }
    }

    if spec.top_degree() >= 2 {
        let d2 = spec.boundary(2);
        let d1 = spec.boundary(1);
        for i in 0..d2.rows() {
            let composite: GroupRingElement =
                (0..d2.cols()).map(|j| d2.get(i, j) * d1.get(j, 0)).sum();
            let lift = match spec.relators.get(i) {
                Some(r) => GroupRingElement::minus_one(r.clone()),
                None => {
                    checks.push(Check {
                        name: format!("row {} of d2 composes to r{} - 1", i + 1, i + 1),
                        passed: false,
                        detail: Some(format!("no relator recorded for row {}", i + 1)),
                    });
                    continue;
                }
            };
            let residue = &composite - &lift;
            let ok = residue.is_zero();
            checks.push(Check {
                name: format!("row {} of d2 composes to r{} - 1", i + 1, i + 1),
                passed: ok,
                detail: (!ok).then(|| {
                    let terms: Vec<String> = residue
                        .terms()
                        .take(4)
                        .map(|(w, c)| format!("{}*{}", crate::rational::format_q(c), spec.alphabet.format_word(w)))
                        .collect();
                    format!("row {} leaves residue {}{}", i + 1, terms.join(" + "), if residue.num_terms() > 4 { " + ..." } else { "" })
                }),
            });
        }
    }
    VerificationReport { checks }
}
