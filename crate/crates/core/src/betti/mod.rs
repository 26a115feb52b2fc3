//! L²-Betti numbers from presentation invariants, plus an oracle cross-check
//! for finite groups.

mod report;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::complexes::{build_one_relator_complex, ChainComplexSpec};
use crate::presentations::{
    one_relator_invariants, surface_invariants, Assumption, Classification, ExponentStatus, OneRelatorInvariants,
    Presentation, PresentationError, SurfaceInvariants,
};
use crate::rational::{int, Q};
use crate::vnoracle::{realize_complex, von_neumann_dims, FiniteCyclicModel};
use crate::words::VagueCardinal;

pub use report::{
    Betti, BettiReport, EulerCharacteristic, ExponentReport, OutcomeStatus, Tail, VerificationOutcome,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("assumptions required: {}", .0.join(", "))]
    MissingAssumptions(Vec<&'static str>),
    #[error("no formula covers {0} presentations")]
    Unsupported(&'static str),
    #[error("unknown group {0:?}; known groups: thompson-F")]
    UnknownGroup(String),
}

fn clamp(x: &Q) -> Q {
    if x.is_positive() {
        x.clone()
    } else {
        Q::zero()
    }
}

/// `b₀ = max{χ, 0}`, `b₁ = max{−χ, 0}`, `bₙ = 0` for `n ≥ 2`.
pub fn betti_one_relator(inv: &OneRelatorInvariants) -> BettiReport {
    BettiReport {
        classification: Classification::OneRelator.name().to_owned(),
        name: None,
        d: Some(inv.d),
        g: None,
        m: Some(ExponentReport { value: inv.m, status: ExponentStatus::ComputedExact }),
        chi: Some(EulerCharacteristic::Finite(inv.chi.clone())),
        order: inv.order,
        betti: Betti { b0: clamp(&inv.chi), b1: clamp(&-&inv.chi), b2: Q::zero(), tail: Tail::ZeroFromTwo },
        cd: None,
        assumptions: Vec::new(),
        conditional: false,
        verification: None,
        notes: Vec::new(),
        source: None,
    }
}

/// `bₙ = −δₙ,₁ χ`; all zero in genus one.
pub fn betti_surface(inv: &SurfaceInvariants) -> BettiReport {
    let conditional = inv.is_conditional();
    let mut notes = Vec::new();
    if conditional {
        notes.push(format!(
            "m = {} is a lower bound for the exponent of the extra relator in the surface group; declare a root to make it exact",
            inv.m
        ));
    }
    BettiReport {
        classification: Classification::SurfacePlusOne { genus: inv.genus }.name().to_owned(),
        name: None,
        d: Some(2 * inv.genus as u64),
        g: Some(inv.genus),
        m: Some(ExponentReport { value: VagueCardinal::Finite(inv.m), status: inv.m_status }),
        chi: Some(EulerCharacteristic::Finite(inv.chi.clone())),
        order: inv.order,
        betti: Betti { b0: Q::zero(), b1: -&inv.chi, b2: Q::zero(), tail: Tail::ZeroFromTwo },
        cd: Some(inv.cd_q),
        assumptions: Vec::new(),
        conditional,
        verification: None,
        notes,
        source: None,
    }
}

/// `(0, |X| − 2, 0)` for a two-relator group assumed left-orderable with
/// `cd ≥ 3`; higher degrees are left undetermined.
pub fn betti_two_relator_conditional(p: &Presentation) -> Result<BettiReport, BettiError> {
    let class = p.classify();
    if class != Classification::TwoRelator {
        return Err(PresentationError::WrongClassification { expected: "two-relator", found: class.name() }.into());
    }
    let needed = [Assumption::LeftOrderable, Assumption::CdAtLeast3];
    let missing: Vec<_> = needed.iter().filter(|a| !p.assumes(**a)).map(|a| a.name()).collect();
    if !missing.is_empty() {
        return Err(BettiError::MissingAssumptions(missing));
    }
    let d = p.alphabet().len() as i64;
    Ok(BettiReport {
        classification: class.name().to_owned(),
        name: None,
        d: Some(d as u64),
        g: None,
        m: None,
        chi: None,
        order: VagueCardinal::Infinite,
        betti: Betti { b0: Q::zero(), b1: int(d - 2), b2: Q::zero(), tail: Tail::UndeterminedFromThree },
        cd: None,
        assumptions: needed.iter().map(|a| a.name().to_owned()).collect(),
        conditional: true,
        verification: None,
        notes: Vec::new(),
        source: None,
    })
}

/// Advisory notes about the asserted hypotheses. Never changes any value.
///
/// A left-orderable two-generator group with `b₁ ≠ 0` is free of rank two, so
/// asserting left-orderability for a two-generator presentation with a
/// relator and positive `b₁` is contradictory.
pub fn consistency_flags(p: &Presentation, report: &BettiReport) -> Vec<String> {
    let mut notes = Vec::new();
    let has_relator = p.relators().iter().any(|r| !r.is_identity());
    if p.alphabet().len() == 2 && p.assumes(Assumption::LeftOrderable) && !report.betti.b1.is_zero() && has_relator {
        let torsion = match report.m.as_ref().map(|m| m.value) {
            Some(VagueCardinal::Finite(m)) if m > 1 => {
                format!(", yet the relator is a proper power (m = {m}) so the group has torsion and is not left-orderable")
            }
            _ => String::new(),
        };
        notes.push(format!(
            "inconsistent assumptions: a left-orderable two-generator group with b1 != 0 is free of rank two{torsion}"
        ));
    }
    notes
}

pub fn known_group(name: &str) -> Result<BettiReport, BettiError> {
    match name {
        "thompson-F" => Ok(BettiReport {
            classification: "known".to_owned(),
            name: Some(name.to_owned()),
            d: None,
            g: None,
            m: None,
            chi: None,
            order: VagueCardinal::Infinite,
            betti: Betti { b0: Q::zero(), b1: Q::zero(), b2: Q::zero(), tail: Tail::ZeroFromTwo },
            cd: None,
            assumptions: Vec::new(),
            conditional: false,
            verification: None,
            notes: Vec::new(),
            source: Some("W. Lück, L2-Invariants: Theory and Applications to Geometry and K-Theory (2002), Theorem 7.10".to_owned()),
        }),
        other => Err(BettiError::UnknownGroup(other.to_owned())),
    }
}

/// Dispatches on the classification and attaches consistency notes.
pub fn analyze(p: &Presentation) -> Result<BettiReport, BettiError> {
    let mut report = match p.classify() {
        Classification::OneRelator => betti_one_relator(&one_relator_invariants(p)?),
        Classification::SurfacePlusOne { .. } => betti_surface(&surface_invariants(p)?),
        Classification::TwoRelator => betti_two_relator_conditional(p)?,
        Classification::General => return Err(BettiError::Unsupported("general")),
    };
    report.assumptions = p.assumptions().map(|a| a.name().to_owned()).collect();
    let flags = consistency_flags(p, &report);
    report.notes.extend(flags);
    Ok(report)
}

/// Compares the report's `(b₀, b₁, b₂)` with the oracle's for a finite group.
/// Infinite groups are skipped.
pub fn cross_validate(p: &Presentation, report: &BettiReport) -> VerificationOutcome {
    let model = match FiniteCyclicModel::for_presentation(p) {
        Ok(m) => m,
        Err(_) => return VerificationOutcome::skipped(report, "the group is infinite; no finite oracle applies"),
    };
    match build_one_relator_complex(p) {
        Ok(spec) => cross_validate_complex(&spec, &model, report),
        Err(e) => VerificationOutcome::failed(report, None, e.to_string()),
    }
}

/// As [`cross_validate`], on an explicit complex and model.
pub fn cross_validate_complex(
    spec: &ChainComplexSpec,
    model: &FiniteCyclicModel,
    report: &BettiReport,
) -> VerificationOutcome {
    let realized = match realize_complex(spec, model) {
        Ok(r) => r,
        Err(e) => return VerificationOutcome::failed(report, None, e.to_string()),
    };
    let oracle = von_neumann_dims(&realized);
    let got: Vec<Q> = oracle.vn_dims.iter().take(3).cloned().collect();
    if !oracle.is_resolution() {
        return VerificationOutcome::failed(report, Some(got), "realized complex is not exact".to_owned());
    }
    if got == report.betti.values() {
        VerificationOutcome::passed(report, got)
    } else {
        VerificationOutcome::failed(report, Some(got), "oracle and formula disagree".to_owned())
    }
}

#[cfg(test)]
mod tests;
