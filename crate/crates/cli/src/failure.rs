use std::path::Path;

use serde::Serialize;

use l2betti::betti::BettiError;
use l2betti::complexes::{ComplexError, DocumentError};
use l2betti::lmod::LmodError;
use l2betti::presentations::{ParseError, PresentationError};
use l2betti::vnoracle::OracleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Io,
    Parse,
    Precondition,
}

/// A command that could not produce its document.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub message: String,
}

impl Failure {
    pub fn new(kind: Kind, message: impl ToString) -> Self {
        Failure { kind, file: None, line: None, message: message.to_string() }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Failure::new(Kind::Io, e).at(path)
    }

    pub fn at(mut self, path: &Path) -> Self {
        self.file = Some(path.display().to_string());
        self
    }

    /// 2 for unreadable or malformed input, 3 for unmet preconditions.
    pub fn exit_code(&self) -> u8 {
        match self.kind {
            Kind::Io | Kind::Parse => 2,
            Kind::Precondition => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure { kind: Kind::Parse, file: None, line: (e.line > 0).then_some(e.line), message: e.kind.to_string() }
    }
}

macro_rules! precondition {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::new(Kind::Precondition, e)
            }
        }
    )*};
}

precondition!(BettiError, PresentationError, ComplexError, OracleError, LmodError);

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::new(Kind::Parse, e)
    }
}
