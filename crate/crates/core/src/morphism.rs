//! Uniform morphisms and finite substitutions.
//!
//! Built-ins: the Thue–Morse morphism `mu`, the 21-uniform morphism `h21`
//! from `Σ_4` to `Σ_2`, the projection `f` (`0,3 ↦ 0`), and the substitution
//! `g` (`0 ↦ {0, 3}`).

use std::fmt;

use crate::{Error, Result, Word};

const H21_IMAGES: [&str; 4] = [
    "011010011001001101001",
    "100101100100110010110",
    "100101100110110010110",
    "011010011011001101001",
];

/// A morphism whose letter images all have the same length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMorphism {
    codomain_size: u8,
    width: usize,
    images: Vec<Vec<u8>>,
}

impl UniformMorphism {
    pub fn new(images: Vec<Vec<u8>>, codomain_size: u8) -> Result<Self> {
        let width = images.first().map(Vec::len).ok_or_else(|| Error::InvalidMorphism("no images".into()))?;
        if width == 0 {
            return Err(Error::InvalidMorphism("images must be nonempty".into()));
        }
        if images.len() > u8::MAX as usize {
            return Err(Error::InvalidMorphism("domain alphabet too large".into()));
        }
        for (a, image) in images.iter().enumerate() {
            if image.len() != width {
                return Err(Error::InvalidMorphism(format!(
                    "image of {a} has length {}, expected {width}",
                    image.len()
                )));
            }
            if let Some(&symbol) = image.iter().find(|&&s| s >= codomain_size) {
                return Err(Error::SymbolOutOfRange { symbol, alphabet_size: codomain_size });
            }
        }
        Ok(Self { codomain_size, width, images })
    }

    /// Thue–Morse: `0 ↦ 01`, `1 ↦ 10`.
    pub fn thue_morse() -> Self {
        Self { codomain_size: 2, width: 2, images: vec![vec![0, 1], vec![1, 0]] }
    }

    /// The 21-uniform morphism `Σ_4 → Σ_2` whose images of squarefree words
    /// avoid `7/3⁺`-powers.
    pub fn h21() -> Self {
        let images = H21_IMAGES.iter().map(|s| s.bytes().map(|b| b - b'0').collect()).collect();
        Self { codomain_size: 2, width: 21, images }
    }

    /// Projection `Σ_4 → Σ_3`: `0, 3 ↦ 0`, `1 ↦ 1`, `2 ↦ 2`.
    pub fn projection_f() -> Self {
        Self { codomain_size: 3, width: 1, images: vec![vec![0], vec![1], vec![2], vec![0]] }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "mu" => Some(Self::thue_morse()),
            "h21" | "h" => Some(Self::h21()),
            "f" => Some(Self::projection_f()),
            _ => None,
        }
    }

    /// Parses `a -> image` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let rules = parse_rules(text)?;
        let images: Vec<Vec<u8>> = rules
            .into_iter()
            .map(|alternatives| match alternatives.as_slice() {
                [single] => Ok(single.clone()),
                _ => Err(Error::InvalidMorphism("a morphism has exactly one image per letter".into())),
            })
            .collect::<Result<_>>()?;
        let codomain = images.iter().flatten().copied().max().map_or(2, |m| (m + 1).max(2));
        Self::new(images, codomain)
    }

    pub fn domain_size(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn codomain_size(&self) -> u8 {
        self.codomain_size
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn apply_slice(&self, w: &[u8]) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(w.len() * self.width);
        for &a in w {
            let image = self
                .images
                .get(a as usize)
                .ok_or(Error::SymbolOutOfRange { symbol: a, alphabet_size: self.domain_size() })?;
            out.extend_from_slice(image);
        }
        Ok(out)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        Word::new(self.apply_slice(w)?, self.codomain_size)
    }

    /// Length-`n` prefix of the fixed point starting with `seed`.
    pub fn iterate(&self, seed: u8, target_length: usize) -> Result<Word> {
        let prolongable = self.codomain_size == self.domain_size()
            && self.images.get(seed as usize).is_some_and(|im| im[0] == seed)
            && self.width >= 2;
        if !prolongable {
            return Err(Error::NotProlongable(seed));
        }
        if target_length == 0 {
            return Err(Error::InvalidArgument("target length must be at least 1".into()));
        }
        let mut w = vec![seed];
        while w.len() < target_length {
            w = self.apply_slice(&w)?;
        }
        w.truncate(target_length);
        Word::new(w, self.codomain_size)
    }

    /// `m^k(w)`.
    pub fn power(&self, w: &[u8], k: u32) -> Result<Vec<u8>> {
        (0..k).try_fold(w.to_vec(), |acc, _| self.apply_slice(&acc))
    }
}

impl fmt::Display for UniformMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, image) in self.images.iter().enumerate() {
            let image = Word::new(image.clone(), self.codomain_size).map_err(|_| fmt::Error)?;
            writeln!(f, "{a} -> {image}")?;
        }
        Ok(())
    }
}

/// `μ(w)` for a binary slice.
pub fn mu(w: &[u8]) -> Vec<u8> {
    w.iter().flat_map(|&a| [a, 1 - a]).collect()
}

/// The `v` with `μ(v) = w`, if any.
pub fn mu_inverse(w: &[u8]) -> Option<Vec<u8>> {
    if !w.len().is_multiple_of(2) {
        return None;
    }
    w.chunks_exact(2)
        .map(|pair| match pair {
            [0, 1] => Some(0),
            [1, 0] => Some(1),
            _ => None,
        })
        .collect()
}

/// A map from letters to nonempty finite sets of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    codomain_size: u8,
    images: Vec<Vec<Vec<u8>>>,
}

impl Substitution {
    pub fn new(images: Vec<Vec<Vec<u8>>>, codomain_size: u8) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidMorphism("no images".into()));
        }
        for (a, set) in images.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidMorphism(format!("image set of {a} is empty")));
            }
            if let Some(&symbol) = set.iter().flatten().find(|&&s| s >= codomain_size) {
                return Err(Error::SymbolOutOfRange { symbol, alphabet_size: codomain_size });
            }
        }
        let images = images
            .into_iter()
            .map(|mut set| {
                set.sort();
                set.dedup();
                set
            })
            .collect();
        Ok(Self { codomain_size, images })
    }

    /// `0 ↦ {0, 3}`, `1 ↦ {1}`, `2 ↦ {2}` from `Σ_3` to `Σ_4`.
    pub fn g() -> Self {
        Self { codomain_size: 4, images: vec![vec![vec![0], vec![3]], vec![vec![1]], vec![vec![2]]] }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        (name == "g").then(Self::g)
    }

    /// Parses `a -> w1 | w2 | …` lines (a comma also separates alternatives).
    pub fn parse(text: &str) -> Result<Self> {
        let images = parse_rules(text)?;
        let codomain = images.iter().flatten().flatten().copied().max().map_or(2, |m| (m + 1).max(2));
        Self::new(images, codomain)
    }

    pub fn domain_size(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn codomain_size(&self) -> u8 {
        self.codomain_size
    }

    pub fn images(&self, letter: u8) -> &[Vec<u8>] {
        &self.images[letter as usize]
    }

    /// Number of words `expand` produces.
    pub fn expansion_size(&self, w: &[u8]) -> Result<u128> {
        w.iter().try_fold(1u128, |acc, &a| {
            let set = self.images.get(a as usize).ok_or(Error::SymbolOutOfRange {
                symbol: a,
                alphabet_size: self.domain_size(),
            })?;
            Ok(acc.saturating_mul(set.len() as u128))
        })
    }

    /// Lazily yields every word obtained by choosing one image per position,
    /// in lexicographic order of the choices.
    pub fn expand_iter<'a>(&'a self, w: &'a [u8]) -> Result<Expansion<'a>> {
        self.expansion_size(w)?;
        Ok(Expansion { substitution: self, source: w, choice: vec![0; w.len()], done: false })
    }

    pub fn expand(&self, w: &Word) -> Result<Vec<Word>> {
        self.expand_iter(w)?
            .map(|symbols| Word::new(symbols, self.codomain_size))
            .collect()
    }
}

/// Iterator returned by [`Substitution::expand_iter`].
pub struct Expansion<'a> {
    substitution: &'a Substitution,
    source: &'a [u8],
    choice: Vec<usize>,
    done: bool,
}

impl Iterator for Expansion<'_> {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let word = self
            .source
            .iter()
            .zip(&self.choice)
            .flat_map(|(&a, &c)| self.substitution.images[a as usize][c].iter().copied())
            .collect();
        // odometer, last position fastest
        self.done = true;
        for i in (0..self.source.len()).rev() {
            let options = self.substitution.images[self.source[i] as usize].len();
            if self.choice[i] + 1 < options {
                self.choice[i] += 1;
                self.done = false;
                break;
            }
            self.choice[i] = 0;
        }
        Some(word)
    }
}

fn parse_rules(text: &str) -> Result<Vec<Vec<Vec<u8>>>> {
    let mut rules: Vec<(u8, Vec<Vec<u8>>)> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (letter, rhs) = line
            .split_once("->")
            .ok_or_else(|| Error::InvalidMorphism(format!("expected `a -> image`, got {line:?}")))?;
        let letter: Word = letter.trim().parse()?;
        let &[letter] = letter.symbols() else {
            return Err(Error::InvalidMorphism(format!("left side must be one letter in {line:?}")));
        };
        let alternatives = rhs
            .split(['|', ','])
            .map(|alt| alt.trim().parse::<Word>().map(Word::into_symbols))
            .collect::<Result<Vec<_>>>()?;
        rules.push((letter, alternatives));
    }
    rules.sort_by_key(|(a, _)| *a);
    for (expected, (a, _)) in rules.iter().enumerate() {
        if *a as usize != expected {
            return Err(Error::InvalidMorphism(format!("letters must be 0..k without gaps or repeats (at {a})")));
        }
    }
    Ok(rules.into_iter().map(|(_, alts)| alts).collect())
}
