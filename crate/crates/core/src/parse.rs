//! Word expressions.
//!
//! ```text
//! word := WS* (atom (WS+ atom)*)? WS*
//! atom := "a" INT ("^" SINT)?
//! ```
//!
//! `INT ≥ 1` is the type index, the optional signed exponent is the letter's
//! value (default 1). The empty string, and the literal `e` that
//! [`format_word`] emits for the empty word, both denote the empty word.

use crate::error::ParseError;
use crate::family::GroupFamily;
use crate::word::{Letter, Word};

pub fn parse_word(family: &dyn GroupFamily, text: &str) -> Result<Word, ParseError> {
    if text.trim() == "e" {
        return Ok(Word::empty());
    }
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        family,
    }
    .word()
}

pub fn format_word(family: &dyn GroupFamily, word: &Word) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let mut out = String::new();
    for (i, letter) in word.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push('a');
        out.push_str(&letter.type_index().to_string());
        let exponent = family.render(letter.type_index(), letter.value());
        if exponent != "1" {
            out.push('^');
            out.push_str(&exponent);
        }
    }
    out
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    family: &'a dyn GroupFamily,
}

impl Parser<'_> {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> usize {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.column(),
            message: message.into(),
        }
    }

    fn word(mut self) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        self.skip_ws();
        while self.peek().is_some() {
            letters.push(self.atom()?);
            let gap = self.skip_ws();
            if self.peek().is_some() && gap == 0 {
                return Err(self.syntax("expected whitespace between letters"));
            }
        }
        Ok(Word::new(letters))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or_default()
    }

    fn atom(&mut self) -> Result<Letter, ParseError> {
        if self.peek() != Some(b'a') {
            return Err(self.syntax("expected `a<type>`"));
        }
        self.pos += 1;
        let type_column = self.column();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(ParseError::Syntax {
                position: type_column,
                message: "expected a type index after `a`".to_string(),
            });
        }
        let type_index: u32 = digits.parse().map_err(|_| ParseError::Syntax {
            position: type_column,
            message: format!("type index `{digits}` is too large"),
        })?;
        if type_index == 0 {
            return Err(ParseError::ZeroTypeIndex {
                position: type_column,
            });
        }

        let mut raw = 1;
        let exponent_column = self.column();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let negative = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let digits = self.digits();
            if digits.is_empty() {
                return Err(ParseError::MalformedExponent {
                    position: exponent_column,
                });
            }
            let literal = if negative {
                format!("-{digits}")
            } else {
                digits.to_string()
            };
            raw = literal.parse().map_err(|_| ParseError::MalformedExponent {
                position: exponent_column,
            })?;
            if self.peek().is_some_and(|b| !b.is_ascii_whitespace()) {
                return Err(ParseError::MalformedExponent {
                    position: exponent_column,
                });
            }
        }
        let value = self
            .family
            .canonicalize(type_index, raw)
            .ok_or(ParseError::InvalidValue {
                position: exponent_column,
                value: raw,
            })?;
        Ok(Letter::new(type_index, value))
    }
}
