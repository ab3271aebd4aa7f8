//! Exact rational exponents and avoidance thresholds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A nonnegative rational kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    /// Panics on a zero denominator.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Self { num: num / g, den: den / g }
    }

    pub fn integer(n: u64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Threshold `α` for power avoidance.
///
/// A closed bound forbids factors of exponent `≥ α`; an open bound (`α⁺`)
/// forbids only exponents strictly greater than `α`. Overlap-free is `2+`,
/// cubefree is `3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExponentBound {
    alpha: Ratio,
    open: bool,
}

impl ExponentBound {
    pub fn new(num: u64, den: u64, open: bool) -> Result<Self> {
        let text = format!("{num}/{den}{}", if open { "+" } else { "" });
        if den == 0 {
            return Err(Error::BoundParse { input: text, reason: "zero denominator".into() });
        }
        if num < den {
            return Err(Error::BoundParse { input: text, reason: "exponent below 1".into() });
        }
        Ok(Self { alpha: Ratio::new(num, den), open })
    }

    pub fn closed(num: u64, den: u64) -> Self {
        Self::new(num, den, false).expect("valid closed bound")
    }

    pub fn open(num: u64, den: u64) -> Self {
        Self::new(num, den, true).expect("valid open bound")
    }

    pub fn overlap_free() -> Self {
        Self::open(2, 1)
    }

    pub fn cubefree() -> Self {
        Self::closed(3, 1)
    }

    pub fn squarefree() -> Self {
        Self::closed(2, 1)
    }

    pub fn alpha(&self) -> Ratio {
        self.alpha
    }

    pub fn num(&self) -> u64 {
        self.alpha.num
    }

    pub fn den(&self) -> u64 {
        self.alpha.den
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    /// Whether a factor of the given length and period breaks the bound.
    #[inline]
    pub fn violated_by(&self, length: usize, period: usize) -> bool {
        let lhs = length as u128 * self.alpha.den as u128;
        let rhs = self.alpha.num as u128 * period as u128;
        if self.open {
            lhs > rhs
        } else {
            lhs >= rhs
        }
    }

    /// Whether an exact exponent breaks the bound.
    pub fn violated_by_exponent(&self, exponent: Ratio) -> bool {
        match exponent.cmp(&self.alpha) {
            Ordering::Greater => true,
            Ordering::Equal => !self.open,
            Ordering::Less => false,
        }
    }

    /// Shortest length of a violating factor with period `period`:
    /// `⌈α·p⌉` for closed bounds, `⌊α·p⌋ + 1` for open ones.
    #[inline]
    pub fn min_violating_length(&self, period: usize) -> usize {
        let scaled = self.alpha.num as u128 * period as u128;
        let den = self.alpha.den as u128;
        let len = if self.open { scaled / den + 1 } else { scaled.div_ceil(den) };
        len as usize
    }
}

impl fmt::Display for ExponentBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.alpha, if self.open { "+" } else { "" })
    }
}

impl FromStr for ExponentBound {
    type Err = Error;

    /// Grammar: `<int>[/<int>][+]`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::BoundParse { input: s.to_string(), reason: reason.to_string() };
        let trimmed = s.trim();
        let (body, open) = match trimmed.strip_suffix('+') {
            Some(body) => (body, true),
            None => (trimmed, false),
        };
        let parse_int = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("expected <int>[/<int>][+]"));
            }
            t.parse().map_err(|_| err("integer out of range"))
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(body)?, 1),
        };
        if den == 0 {
            return Err(err("zero denominator"));
        }
        if num < den {
            return Err(err("exponent below 1"));
        }
        Ok(Self { alpha: Ratio::new(num, den), open })
    }
}

impl Serialize for ExponentBound {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExponentBound {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
