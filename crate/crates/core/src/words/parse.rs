use thiserror::Error;

use super::{Alphabet, Display, GenId, Letter, Word};

/// Parenthesised powers may not expand past this many syllables.
const MAX_SYLLABLES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown generator `{name}` at column {}", .pos + 1)]
    UnknownGenerator { name: String, pos: usize },
    #[error("malformed exponent at column {}", .pos + 1)]
    MalformedExponent { pos: usize },
    #[error("unbalanced parenthesis at column {}", .pos + 1)]
    UnbalancedParen { pos: usize },
    #[error("unexpected character `{ch}` at column {}", .pos + 1)]
    UnexpectedChar { ch: char, pos: usize },
    #[error("power at column {} expands past {MAX_SYLLABLES} syllables", .pos + 1)]
    TooLarge { pos: usize },
}

impl ParseError {
    /// Zero-based byte offset of the offending input.
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnknownGenerator { pos, .. }
            | ParseError::MalformedExponent { pos }
            | ParseError::UnbalancedParen { pos }
            | ParseError::UnexpectedChar { pos, .. }
            | ParseError::TooLarge { pos } => *pos,
        }
    }
}

/// Parses `text` using the grammar
///
/// ```text
/// word  := term*
/// term  := atom ("^" int)?
/// atom  := ident | "(" word ")"
/// ident := letter (letter | digit | "_")*
/// int   := "-"? digit+
/// ```
///
/// with optional whitespace between terms. An identifier that is not a
/// generator but spells a run of one-character generators (`at` with
/// generators `a`, `t`) is read as that run, with any exponent binding to
/// the last character.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    parse_word_with(text, &|name| alphabet.get(name))
}

pub fn parse_word_with(
    text: &str,
    resolve: &dyn Fn(&str) -> Option<GenId>,
) -> Result<Word, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        resolve,
    };
    let w = p.word(0)?;
    p.skip_ws();
    if let Some(&c) = p.src.get(p.pos) {
        return Err(if c == b')' {
            ParseError::UnbalancedParen { pos: p.pos }
        } else {
            let ch = text[p.pos..].chars().next().unwrap_or('?');
            ParseError::UnexpectedChar { ch, pos: p.pos }
        });
    }
    Ok(Word { letters: w }.free_reduce())
}

/// Space-separated `gen^exp` syllables; exponent 1 is omitted and the
/// empty word prints as the empty string.
pub fn format_word(w: &Word, alphabet: &Alphabet) -> String {
    Display { word: w, alphabet: alphabet.names() }.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<GenId>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn word(&mut self, depth: usize) -> Result<Vec<Letter>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let Some(&c) = self.src.get(self.pos) else {
                return Ok(out);
            };
            let start = self.pos;
            let mut prefix = Vec::new();
            let atom: Vec<Letter> = if c == b'(' {
                self.pos += 1;
                let inner = self.word(depth + 1)?;
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b')') {
                    return Err(ParseError::UnbalancedParen { pos: start });
                }
                self.pos += 1;
                Word { letters: inner }.free_reduce().letters
            } else if c == b')' {
                if depth == 0 {
                    return Err(ParseError::UnbalancedParen { pos: start });
                }
                return Ok(out);
            } else if c.is_ascii_alphabetic() {
                let name = self.ident();
                match (self.resolve)(name) {
                    Some(g) => vec![Letter { gen: g, exp: 1 }],
                    None => {
                        let (run, last) = self.split_run(name, start)?;
                        prefix = run;
                        vec![last]
                    }
                }
            } else {
                let ch = std::str::from_utf8(&self.src[start..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('?');
                return Err(ParseError::UnexpectedChar { ch, pos: start });
            };
            out.extend(prefix);
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'^') {
                let caret = self.pos;
                self.pos += 1;
                self.skip_ws();
                let k = self.int().ok_or(ParseError::MalformedExponent { pos: caret })?;
                out.extend(raise(atom, k, start)?);
            } else {
                out.extend(atom);
            }
            if out.len() > MAX_SYLLABLES {
                return Err(ParseError::TooLarge { pos: start });
            }
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier")
    }

    /// `at` read as `a t` when both are single-character generators.
    /// Returns the leading run and the final letter separately so that an
    /// exponent binds to the last character only.
    fn split_run(&self, name: &str, start: usize) -> Result<(Vec<Letter>, Letter), ParseError> {
        let unknown = || ParseError::UnknownGenerator { name: name.to_string(), pos: start };
        let mut run = Vec::with_capacity(name.len());
        for (i, ch) in name.char_indices() {
            let g = (self.resolve)(&name[i..i + ch.len_utf8()]).ok_or_else(unknown)?;
            run.push(Letter { gen: g, exp: 1 });
        }
        if run.len() < 2 {
            return Err(unknown());
        }
        let last = run.pop().expect("nonempty run");
        Ok((run, last))
    }

    fn int(&mut self) -> Option<i64> {
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }
}

fn raise(atom: Vec<Letter>, k: i64, pos: usize) -> Result<Vec<Letter>, ParseError> {
    if atom.len() == 1 {
        let l = atom[0];
        let exp = l.exp.checked_mul(k).ok_or(ParseError::MalformedExponent { pos })?;
        return Ok(vec![Letter { gen: l.gen, exp }]);
    }
    if atom.len().saturating_mul(k.unsigned_abs() as usize) > MAX_SYLLABLES {
        return Err(ParseError::TooLarge { pos });
    }
    Ok(Word { letters: atom }.pow(k).letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abt() -> Alphabet {
        Alphabet::from_names(&["a", "b", "t"])
    }

    fn parse(s: &str) -> Result<Word, ParseError> {
        parse_word(s, &abt())
    }

    fn pairs(w: &Word) -> Vec<(u32, i64)> {
        w.letters().iter().map(|l| (l.gen.0, l.exp)).collect()
    }

    #[test]
    fn tokenizes_conjugate() {
        let w = parse("t^-1 a^2 t").unwrap();
        assert_eq!(pairs(&w), vec![(2, -1), (0, 2), (2, 1)]);
        assert_eq!(format_word(&w, &abt()), "t^-1 a^2 t");
    }

    #[test]
    fn expands_parenthesised_power() {
        assert_eq!(pairs(&parse("(a b)^2").unwrap()), vec![(0, 1), (1, 1), (0, 1), (1, 1)]);
        assert_eq!(pairs(&parse("(a b)^-1").unwrap()), vec![(1, -1), (0, -1)]);
        assert_eq!(pairs(&parse("((a)^2 b)^2 b^-1").unwrap()), vec![(0, 2), (1, 1), (0, 2)]);
        assert!(parse("()^5").unwrap().is_empty());
    }

    #[test]
    fn zero_power_and_empty() {
        assert!(parse("a^0").unwrap().is_empty());
        assert!(parse("").unwrap().is_empty());
        assert!(parse("   ").unwrap().is_empty());
        assert!(parse("a a^-1").unwrap().is_empty());
    }

    #[test]
    fn juxtaposed_single_letters() {
        assert_eq!(pairs(&parse("at").unwrap()), vec![(0, 1), (2, 1)]);
        assert_eq!(pairs(&parse("ata^-1").unwrap()), vec![(0, 1), (2, 1), (0, -1)]);
        assert_eq!(pairs(&parse("a^2b^-1").unwrap()), vec![(0, 2), (1, -1)]);
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(
            parse("a x"),
            Err(ParseError::UnknownGenerator { name: "x".into(), pos: 2 })
        );
        assert_eq!(parse("a^"), Err(ParseError::MalformedExponent { pos: 1 }));
        assert_eq!(parse("a^-"), Err(ParseError::MalformedExponent { pos: 1 }));
        assert_eq!(parse("a^99999999999999999999"), Err(ParseError::MalformedExponent { pos: 1 }));
        assert_eq!(parse("(a b"), Err(ParseError::UnbalancedParen { pos: 0 }));
        assert_eq!(parse("a b)"), Err(ParseError::UnbalancedParen { pos: 3 }));
        assert_eq!(parse("a * b"), Err(ParseError::UnexpectedChar { ch: '*', pos: 2 }));
        assert!(matches!(parse("(a b)^4000000"), Err(ParseError::TooLarge { .. })));
        assert_eq!(parse("a x").unwrap_err().to_string(), "unknown generator `x` at column 3");
    }

    #[test]
    fn multi_character_generators() {
        let al = Alphabet::from_names(&["v1_a", "e0", "e0_bar"]);
        let w = parse_word("e0^-1 v1_a e0 e0_bar", &al).unwrap();
        assert_eq!(format_word(&w, &al), "e0^-1 v1_a e0 e0_bar");
    }
}
