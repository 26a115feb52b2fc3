//! JSON form of a [`ChainComplexSpec`]. Modules and boundaries are listed from
//! the top degree down, each tagged with its degree.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ChainComplexSpec, ComplexError, ComplexKind, GroupRingMatrix, ModuleSpec, Summand};
use crate::foxcalc::{FoxError, GroupRingElement, Idempotent, TermDoc};
use crate::words::{Alphabet, WordError};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed complex document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Fox(#[from] FoxError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub kind: ComplexKind,
    pub alphabet: Alphabet,
    pub conditional: bool,
    pub modules: Vec<ModuleDoc>,
    pub boundaries: Vec<BoundaryDoc>,
    pub relators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub degree: usize,
    pub summands: Vec<SummandDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SummandDoc {
    Free,
    Twisted { root: String, order: u64, idempotent: Vec<TermDoc> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDoc {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<TermDoc>>>,
}

impl ComplexDocument {
    pub fn from_spec(spec: &ChainComplexSpec) -> Self {
        let a = &spec.alphabet;
        let modules = (0..spec.modules.len())
            .rev()
            .map(|degree| ModuleDoc {
                degree,
                summands: spec.modules[degree]
                    .summands
                    .iter()
                    .map(|s| match s {
                        Summand::Free => SummandDoc::Free,
                        Summand::Twisted(e) => SummandDoc::Twisted {
                            root: a.format_word(e.root()),
                            order: e.order(),
                            idempotent: e.element().to_doc(a),
                        },
                    })
                    .collect(),
            })
            .collect();
        let boundaries = (1..=spec.boundaries.len())
            .rev()
            .map(|k| {
                let b = spec.boundary(k);
                BoundaryDoc {
                    degree: k,
                    rows: b.rows(),
                    cols: b.cols(),
                    entries: (0..b.rows()).map(|i| b.row(i).iter().map(|x| x.to_doc(a)).collect()).collect(),
                }
            })
            .collect();
        ComplexDocument {
            kind: spec.kind,
            alphabet: a.clone(),
            conditional: spec.conditional,
            modules,
            boundaries,
            relators: spec.relators.iter().map(|r| a.format_word(r)).collect(),
        }
    }

    /// Rebuilds the spec. Boundary entries are taken as given (so a tampered
    /// matrix loads and then fails verification), but idempotents must match
    /// their root and order.
    pub fn to_spec(&self) -> Result<ChainComplexSpec, DocumentError> {
        let a = &self.alphabet;
        let n = self.modules.len();
        let mut modules = vec![ModuleSpec::default(); n];
        let mut seen = vec![false; n];
        for m in &self.modules {
            if m.degree >= n || std::mem::replace(&mut seen[m.degree], true) {
                return Err(DocumentError::Inconsistent(format!("module degrees must be {}..0 without repeats", n.saturating_sub(1))));
            }
            modules[m.degree].summands = m
                .summands
                .iter()
                .map(|s| summand(a, s))
                .collect::<Result<_, _>>()?;
        }
        let nb = n.saturating_sub(1);
        if self.boundaries.len() != nb {
            return Err(DocumentError::Inconsistent(format!("expected {nb} boundaries, found {}", self.boundaries.len())));
        }
        let mut boundaries: Vec<Option<GroupRingMatrix>> = vec![None; nb];
        for b in &self.boundaries {
            if b.degree == 0 || b.degree > nb || boundaries[b.degree - 1].is_some() {
                return Err(DocumentError::Inconsistent(format!("bad or repeated boundary degree {}", b.degree)));
            }
            if b.entries.len() != b.rows || b.entries.iter().any(|r| r.len() != b.cols) {
                return Err(DocumentError::Inconsistent(format!("boundary {} entries do not match {}x{}", b.degree, b.rows, b.cols)));
            }
            let rows = b
                .entries
                .iter()
                .map(|r| r.iter().map(|t| GroupRingElement::from_doc(a, t)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            boundaries[b.degree - 1] = Some(GroupRingMatrix::from_rows(b.cols, rows));
        }
        let relators = self.relators.iter().map(|r| a.parse_word(r)).collect::<Result<Vec<_>, _>>()?;
        Ok(ChainComplexSpec::new(
            self.kind,
            a.clone(),
            modules,
            boundaries.into_iter().map(|b| b.expect("every degree filled")).collect(),
            relators,
            self.conditional,
        )?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

fn summand(a: &Alphabet, s: &SummandDoc) -> Result<Summand, DocumentError> {
    match s {
        SummandDoc::Free => Ok(Summand::Free),
        SummandDoc::Twisted { root, order, idempotent } => {
            let e = Idempotent::new(a.parse_word(root)?, *order)?;
            if &GroupRingElement::from_doc(a, idempotent)? != e.element() {
                return Err(DocumentError::Inconsistent(format!("idempotent does not match root {root} of order {order}")));
            }
            Ok(Summand::Twisted(e))
        }
    }
}
