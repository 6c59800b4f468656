//! Text notation for group elements.
//!
//! Free generators are written `a, b, c, d, f, g, …` (the letter `e` is
//! reserved for the identity) and their inverses in upper case. Lattice
//! vectors are written `(x1,x2,…)`. Exact ends use `prefix.period`, so
//! `a.a` is `a^∞` and `.ab` is `(ab)^∞`; an empty period marks a
//! finite-precision end.

use std::str::FromStr;

use super::word::{FreeWord, Letter};
use crate::error::{Error, Result};

pub const IDENTITY: &str = "e";

const ALPHABET: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

/// Largest free rank expressible in the notation.
pub const MAX_RANK: u8 = ALPHABET.len() as u8;

pub fn letter_char(l: Letter) -> char {
    let c = ALPHABET[usize::from(l.unsigned_abs()) - 1] as char;
    if l < 0 {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

pub fn parse_letter(c: char) -> Option<Letter> {
    let lower = c.to_ascii_lowercase();
    let idx = ALPHABET.iter().position(|&b| b as char == lower)? as Letter + 1;
    if c.is_ascii_uppercase() {
        Some(-idx)
    } else {
        Some(idx)
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == IDENTITY || s == "1" {
            return Ok(FreeWord::identity());
        }
        let letters = s
            .chars()
            .map(|c| parse_letter(c).ok_or_else(|| Error::Parse(format!("bad generator letter {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeWord::from_letters(letters).expect("parsed letters are nonzero"))
    }
}

pub(crate) fn parse_lattice(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("lattice vector must look like (x,y,..): {s:?}")))?;
    inner
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

/// Splits a list on commas that are not inside parentheses.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let tail = s[start..].trim();
    if !tail.is_empty() || !out.is_empty() {
        out.push(tail);
    }
    out.retain(|t| !t.is_empty());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_round_trip() {
        for l in 1..=MAX_RANK as Letter {
            assert_eq!(parse_letter(letter_char(l)), Some(l));
            assert_eq!(parse_letter(letter_char(-l)), Some(-l));
        }
        assert_eq!(parse_letter('e'), None);
    }

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(split_top_level("(1,0),(0,2)"), vec!["(1,0)", "(0,2)"]);
        assert_eq!(split_top_level("a, ab"), vec!["a", "ab"]);
        assert!(split_top_level("").is_empty());
    }
}
