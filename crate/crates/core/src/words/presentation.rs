use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{abelianization, parse_word, Abelianization, Alphabet, Display, GenId, ParseError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relator {relator} uses undeclared generator #{gen}")]
    UndeclaredGenerator { relator: usize, gen: u32 },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
    #[error("presentation must look like `<gens | relators>`")]
    Shape,
    #[error("relator {index}: {source}")]
    Relator { index: usize, source: ParseError },
}

/// A finite presentation `<generators | relators>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if !valid_ident(g) {
                return Err(PresentationError::BadName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.generators().find(|g| g.index() >= generators.len()) {
                return Err(PresentationError::UndeclaredGenerator { relator: i, gen: g.0 });
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Free group on `generators`.
    pub fn free<S: AsRef<str>>(generators: &[S]) -> Result<Self, PresentationError> {
        Self::new(generators.iter().map(|s| s.as_ref().to_string()).collect(), Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::from_names(&self.generators)
    }

    pub fn generator(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g == name).map(|i| GenId(i as u32))
    }

    pub fn format_word(&self, w: &Word) -> String {
        Display { word: w, alphabet: &self.generators }.to_string()
    }

    pub fn abelianization(&self) -> Abelianization {
        abelianization(self)
    }

    /// Tietze move: deletes generator `g`, substituting `replacement`
    /// (which must not mention `g`) into every relator. Generator ids above
    /// `g` shift down by one.
    pub fn eliminate(&self, g: GenId, replacement: &Word) -> Self {
        assert!(
            replacement.generators().all(|x| x != g),
            "replacement mentions the eliminated generator"
        );
        let shift = |x: GenId| if x.0 > g.0 { GenId(x.0 - 1) } else { x };
        let replacement = replacement.substitute(|x| Word::gen(shift(x)));
        let relators = self
            .relators
            .iter()
            .map(|r| r.substitute(|x| if x == g { replacement.clone() } else { Word::gen(shift(x)) }))
            .collect();
        let mut generators = self.generators.clone();
        generators.remove(g.index());
        Presentation { generators, relators }
    }

    /// Drops empty relators and relators equal to an earlier one up to
    /// cyclic permutation and inversion.
    pub fn dedup_relators(&self) -> Self {
        let mut kept: Vec<Word> = Vec::new();
        for r in &self.relators {
            let r = r.cyclic_reduce();
            if r.is_empty() || kept.iter().any(|k| k.same_relator(&r)) {
                continue;
            }
            kept.push(r);
        }
        Presentation { generators: self.generators.clone(), relators: kept }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {}", self.generators.join(", "))?;
        if !self.relators.is_empty() {
            let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
            write!(f, " | {}", rels.join(", "))?;
        }
        f.write_str(" >")
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// Parses `< a, b | r1, r2 >`; the relator part may be omitted.
    fn from_str(s: &str) -> Result<Self, PresentationError> {
        let body = s
            .trim()
            .strip_prefix('<')
            .and_then(|b| b.strip_suffix('>'))
            .ok_or(PresentationError::Shape)?;
        let (gens, rels) = body.split_once('|').unwrap_or((body, ""));
        let generators: Vec<String> = gens
            .split(',')
            .map(|g| g.trim().to_string())
            .filter(|g| !g.is_empty())
            .collect();
        let alphabet = Alphabet::from_names(&generators);
        let relators = rels
            .split(',')
            .filter(|r| !r.trim().is_empty())
            .enumerate()
            .map(|(index, r)| {
                parse_word(r, &alphabet).map_err(|source| PresentationError::Relator { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(generators, relators)
    }
}
