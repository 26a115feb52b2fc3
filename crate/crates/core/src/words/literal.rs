//! Generator names and the word-literal grammar.
//!
//! ```text
//! word   := factor*
//! factor := atom ('^' ['+'|'-'] digits)?
//! atom   := name | '1' | '[' word ',' word ']' | '(' word ')'
//! ```
//!
//! Whitespace separates tokens and is otherwise ignored. A run of name
//! characters is split into generators by longest match against the
//! alphabet, so with generators `x1 x2` the literal `x1x2` is `x1·x2`.
//! `[u,v]` is `u v u⁻¹ v⁻¹` and `1` is the empty word.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Generator(String);

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl Generator {
    pub fn new(name: &str) -> Result<Self, WordError> {
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) => (c.is_alphabetic() || c == '_') && chars.all(is_name_char),
            None => false,
        };
        if ok {
            Ok(Generator(name.to_owned()))
        } else {
            Err(WordError::InvalidGeneratorName(name.to_owned()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Generator {
    type Error = WordError;
    fn try_from(s: String) -> Result<Self, WordError> {
        Generator::new(&s)
    }
}

impl From<Generator> for String {
    fn from(g: Generator) -> String {
        g.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ordered, finite set of named generators.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Generator>", into = "Vec<Generator>")]
pub struct Alphabet {
    gens: Vec<Generator>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl TryFrom<Vec<Generator>> for Alphabet {
    type Error = WordError;
    fn try_from(gens: Vec<Generator>) -> Result<Self, WordError> {
        Alphabet::from_generators(gens)
    }
}

impl From<Alphabet> for Vec<Generator> {
    fn from(a: Alphabet) -> Self {
        a.gens
    }
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, WordError> {
        let gens = names
            .iter()
            .map(|n| Generator::new(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Alphabet::from_generators(gens)
    }

    pub fn from_generators(gens: Vec<Generator>) -> Result<Self, WordError> {
        let mut index = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.0.clone(), i).is_some() {
                return Err(WordError::DuplicateGenerator(g.0.clone()));
            }
        }
        Ok(Alphabet { gens, index })
    }

    /// `x1 .. x{2g}`, the alphabet of a genus-`g` surface presentation.
    pub fn surface(genus: usize) -> Self {
        let names: Vec<String> = (1..=2 * genus).map(|i| format!("x{i}")).collect();
        Alphabet::new(&names).expect("surface names are valid")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn generator_word(&self, name: &str) -> Result<Word, WordError> {
        self.index_of(name)
            .map(Word::generator)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_owned()))
    }

    /// Rejects words that mention generators outside this alphabet.
    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.letters().iter().find(|l| l.generator >= self.len()) {
            Some(l) => Err(WordError::AlphabetMismatch { rank: self.len(), found: l.generator }),
            None => Ok(()),
        }
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word, WordError> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.multiply(v))
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut p = Parser { alphabet: self, src: text, pos: 0 };
        let w = p.word()?;
        p.skip_ws();
        match p.peek() {
            None => Ok(w),
            Some(']') | Some(')') | Some(',') => Err(WordError::UnbalancedBracket(text.to_owned())),
            Some(c) => Err(WordError::UnexpectedChar { found: c, offset: p.pos }),
        }
    }

    /// Prints `w` in the literal grammar, collapsing runs into powers.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_owned();
        }
        let mut parts: Vec<String> = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let n = (j - i) as i64 * l.sign();
            let name = self.name(l.generator);
            parts.push(if n == 1 { name.to_owned() } else { format!("{name}^{n}") });
            i = j;
        }
        parts.join(" ")
    }
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut acc = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(']') | Some(')') | Some(',') => return Ok(acc),
                _ => {
                    let f = self.factor()?;
                    acc = acc.multiply(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word, WordError> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.bump();
        self.skip_ws();
        let start = self.pos;
        let mut text = String::new();
        if let Some(c @ ('-' | '+')) = self.peek() {
            text.push(c);
            self.bump();
            self.skip_ws();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
        }
        if text.is_empty() {
            text.push_str(self.src[start..].trim());
        }
        match text.parse::<i64>() {
            Ok(k) if k != 0 => Ok(atom.pow(k)),
            _ => Err(WordError::MalformedExponent(format!("^{text}"))),
        }
    }

    fn atom(&mut self) -> Result<Word, WordError> {
        match self.peek() {
            Some('[') => {
                self.bump();
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some('(') => {
                self.bump();
                let u = self.word()?;
                self.expect(')')?;
                Ok(u)
            }
            Some(c) if is_name_char(c) => self.names(),
            Some(c) => Err(WordError::UnexpectedChar { found: c, offset: self.pos }),
            None => Err(WordError::UnbalancedBracket(self.src.to_owned())),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), WordError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(']' | ')' | ',') => Err(WordError::UnbalancedBracket(self.src.to_owned())),
            None => Err(WordError::UnbalancedBracket(self.src.to_owned())),
            Some(c) => Err(WordError::UnexpectedChar { found: c, offset: self.pos }),
        }
    }

    /// A run of name characters: either `1` or one or more generator names.
    ///
    /// Only the last generator in the run binds to a following exponent.
    fn names(&mut self) -> Result<Word, WordError> {
        let start = self.pos;
        while self.peek().is_some_and(is_name_char) {
            self.bump();
        }
        let run = &self.src[start..self.pos];
        if run == "1" {
            return Ok(Word::identity());
        }
        if run.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(WordError::UnknownGenerator(run.to_owned()));
        }
        let mut letters: Vec<Letter> = Vec::new();
        let mut rest = run;
        while !rest.is_empty() {
            let cut = rest
                .char_indices()
                .map(|(i, c)| i + c.len_utf8())
                .rev()
                .find(|&i| self.alphabet.index_of(&rest[..i]).is_some())
                .ok_or_else(|| WordError::UnknownGenerator(rest.to_owned()))?;
            letters.push(Letter::pos(self.alphabet.index_of(&rest[..cut]).unwrap()));
            rest = &rest[cut..];
        }
        // Exponents bind to the last generator only: rewind so `factor` sees it alone.
        if letters.len() > 1 {
            let last = letters.pop().unwrap();
            let last_len = self.alphabet.name(last.generator).len();
            self.pos -= last_len;
        }
        Ok(Word::reduce(letters))
    }
}
