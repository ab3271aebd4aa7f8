//! Finite words over `Σ_k = {0, …, k-1}`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// A finite word with an explicit alphabet size.
///
/// Serialized as a plain digit string (`"0110"`); alphabets larger than ten
/// continue with lowercase letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    alphabet_size: u8,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(symbols: Vec<u8>, alphabet_size: u8) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size as usize > DIGITS.len() {
            return Err(Error::InvalidAlphabet(alphabet_size as usize));
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(Error::SymbolOutOfRange { symbol, alphabet_size });
        }
        Ok(Self { alphabet_size, symbols })
    }

    pub fn empty(alphabet_size: u8) -> Self {
        Self { alphabet_size, symbols: Vec::new() }
    }

    /// Binary word from a slice already known to be over `{0, 1}`.
    pub fn binary(symbols: &[u8]) -> Self {
        debug_assert!(symbols.iter().all(|&s| s < 2));
        Self { alphabet_size: 2, symbols: symbols.to_vec() }
    }

    /// Parses a digit string over an alphabet of the given size.
    pub fn parse(text: &str, alphabet_size: u8) -> Result<Self> {
        let symbols = text
            .bytes()
            .map(|b| {
                DIGITS
                    .iter()
                    .position(|&d| d == b.to_ascii_lowercase())
                    .map(|p| p as u8)
                    .ok_or_else(|| Error::WordParse(text.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, alphabet_size)
    }

    /// Maps each distinct character to a symbol in order of first appearance,
    /// so `"alfalfa"` becomes `0120120` over a 3-letter alphabet.
    pub fn from_letters(text: &str) -> Self {
        let mut seen: Vec<char> = Vec::new();
        let symbols = text
            .chars()
            .map(|c| match seen.iter().position(|&s| s == c) {
                Some(p) => p as u8,
                None => {
                    seen.push(c);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Self { alphabet_size: seen.len().max(1) as u8, symbols }
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: u8) -> usize {
        self.symbols.iter().filter(|&&s| s == letter).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word { alphabet_size: self.alphabet_size.max(other.alphabet_size), symbols }
    }

    pub fn contains_factor(&self, factor: &[u8]) -> bool {
        factor.is_empty() || self.symbols.windows(factor.len()).any(|w| w == factor)
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.symbols
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", DIGITS[s as usize] as char)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses a binary word unless a digit forces a larger alphabet.
    fn from_str(s: &str) -> Result<Self> {
        let max = s
            .bytes()
            .map(|b| {
                DIGITS
                    .iter()
                    .position(|&d| d == b.to_ascii_lowercase())
                    .ok_or_else(|| Error::WordParse(s.to_string()))
            })
            .try_fold(1usize, |acc, p| p.map(|p| acc.max(p)))?;
        Self::parse(s, (max + 1) as u8)
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}
