//! The line-oriented presentation file format.
//!
//! ```text
//! # comment
//! gens x1 x2 x3 x4          exactly once
//! surface 2                 optional; alphabet must be x1..x4, prepends the surface relator
//! rel x1^3                  zero or more
//! declare-root x1 3         optional; beta literal then m
//! assume left-orderable     optional
//! assume cd>=3              optional
//! ```

use std::fmt;

use thiserror::Error;

use super::{Assumption, Presentation, RootDeclaration};
use crate::words::{Alphabet, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("missing required `{0}` line")]
    MissingSection(&'static str),
    #[error("`{0}` may appear only once")]
    DuplicateSection(&'static str),
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("unknown assumption {0:?} (expected `left-orderable` or `cd>=3`)")]
    UnknownAssumption(String),
    #[error("expected a positive integer, found {0:?}")]
    BadInteger(String),
    #[error("`surface {genus}` requires the alphabet x1 .. x{}", 2 * genus)]
    SurfaceAlphabet { genus: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; 0 when the error is not tied to a line.
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "line {}: {}", self.line, self.kind)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, kind: impl Into<ParseErrorKind>) -> Result<T, ParseError> {
    Err(ParseError { line, kind: kind.into() })
}

fn positive(line: usize, s: &str) -> Result<u64, ParseError> {
    match s.parse::<u64>() {
        Ok(n) if n > 0 => Ok(n),
        _ => err(line, ParseErrorKind::BadInteger(s.to_owned())),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let lines: Vec<(usize, &str, &str)> = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                return None;
            }
            let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            Some((i + 1, head, rest.trim()))
        })
        .collect();

    let mut alphabet = None;
    for &(n, head, rest) in &lines {
        if head == "gens" {
            if alphabet.is_some() {
                return err(n, ParseErrorKind::DuplicateSection("gens"));
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            alphabet = Some(Alphabet::new(&names).or_else(|e| err(n, e))?);
        }
    }
    let alphabet = match alphabet {
        Some(a) => a,
        None => return err(0, ParseErrorKind::MissingSection("gens")),
    };

    let mut relators = Vec::new();
    let mut surface: Option<usize> = None;
    let mut declaration = None;
    let mut assumptions = Vec::new();
    for &(n, head, rest) in &lines {
        match head {
            "gens" => {}
            "rel" => relators.push(alphabet.parse_word(rest).or_else(|e| err(n, e))?),
            "surface" => {
                if surface.is_some() {
                    return err(n, ParseErrorKind::DuplicateSection("surface"));
                }
                let g = positive(n, rest)? as usize;
                if alphabet != Alphabet::surface(g) {
                    return err(n, ParseErrorKind::SurfaceAlphabet { genus: g });
                }
                surface = Some(g);
            }
            "declare-root" => {
                if declaration.is_some() {
                    return err(n, ParseErrorKind::DuplicateSection("declare-root"));
                }
                let (lit, m) = rest.rsplit_once(char::is_whitespace).unwrap_or(("", rest));
                let m = positive(n, m.trim())?;
                let beta = alphabet.parse_word(lit).or_else(|e| err(n, e))?;
                declaration = Some(RootDeclaration { beta, m });
            }
            "assume" => match Assumption::from_name(rest) {
                Some(a) => assumptions.push(a),
                None => return err(n, ParseErrorKind::UnknownAssumption(rest.to_owned())),
            },
            other => return err(n, ParseErrorKind::UnknownDirective(other.to_owned())),
        }
    }
    if let Some(g) = surface {
        relators.insert(0, Word::surface_relator(g));
    }

    let mut p = Presentation::new(alphabet, relators).expect("relators were parsed over the alphabet");
    for a in assumptions {
        p = p.with_assumption(a);
    }
    if let Some(d) = declaration {
        p = p.with_root_declaration(d);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(text: &str) -> ParseErrorKind {
        parse_presentation(text).unwrap_err().kind
    }

    #[test]
    fn commutator_relator() {
        let p = parse_presentation("gens x y\nrel [x,y]").unwrap();
        assert_eq!(p.alphabet().len(), 2);
        assert_eq!(p.alphabet().format_word(&p.relators()[0]), "x y x^-1 y^-1");
    }

    #[test]
    fn power_relator() {
        let p = parse_presentation("gens x\nrel x^5").unwrap();
        assert_eq!(p.relators()[0], Word::generator(0).pow(5));
    }

    #[test]
    fn comments_blank_lines_and_directives() {
        let text = "# a surface\n\n gens x1 x2 x3 x4   # four gens\nsurface 2\nrel x1^2\ndeclare-root x1 2\nassume left-orderable\nassume cd>=3\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.relators()[0], Word::surface_relator(2));
        assert_eq!(p.root_declaration().unwrap().m, 2);
        assert_eq!(p.assumptions().count(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(kind("gens x\nrel x^"), ParseErrorKind::Word(WordError::MalformedExponent(_))));
        assert!(matches!(kind("gens x\nrel y"), ParseErrorKind::Word(WordError::UnknownGenerator(_))));
        assert!(matches!(kind("gens x y\nrel [x,y"), ParseErrorKind::Word(WordError::UnbalancedBracket(_))));
        assert!(matches!(kind("gens x x"), ParseErrorKind::Word(WordError::DuplicateGenerator(_))));
        assert_eq!(kind("rel x"), ParseErrorKind::MissingSection("gens"));
        assert_eq!(kind("gens x\ngens y"), ParseErrorKind::DuplicateSection("gens"));
        assert!(matches!(kind("gens x\nrelator x"), ParseErrorKind::UnknownDirective(_)));
        assert!(matches!(kind("gens x\nassume amenable"), ParseErrorKind::UnknownAssumption(_)));
        assert_eq!(kind("gens a b\nsurface 1"), ParseErrorKind::SurfaceAlphabet { genus: 1 });
        assert!(matches!(kind("gens x\ndeclare-root x 0"), ParseErrorKind::BadInteger(_)));
    }

    #[test]
    fn error_line_numbers() {
        let e = parse_presentation("gens x\n\nrel x^").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.to_string().starts_with("line 3:"));
    }

    #[test]
    fn whitespace_stability() {
        let a = parse_presentation("gens x y\nrel [x,y]^2").unwrap();
        let b = parse_presentation("  gens   x\ty  \n\n rel  [ x , y ] ^ 2  \n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.classify(), b.classify());
    }
}
