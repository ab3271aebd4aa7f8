//! Periods, exponents, and fractional-power violations.
//!
//! All comparisons are integer cross-multiplications; nothing here touches
//! floating point.

use serde::Serialize;

use crate::{Error, ExponentBound, Ratio, Result, Word};

/// A factor `w[start..start+length)` with period `period` whose exponent
/// `length/period` breaks a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub start: usize,
    pub length: usize,
    pub period: usize,
    pub exponent: Ratio,
}

/// Smallest `p ≥ 1` with `w[i] = w[i+p]` for all valid `i`.
pub fn minimal_period(w: &[u8]) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    // Prefix function: period = |w| - longest proper border.
    let mut border = vec![0usize; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = border[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i] = k;
    }
    Ok(w.len() - border[w.len() - 1])
}

/// `|w| / minimal_period(w)` in lowest terms.
pub fn word_exponent(w: &[u8]) -> Result<Ratio> {
    let p = minimal_period(w)?;
    Ok(Ratio::new(w.len() as u64, p as u64))
}

/// Shortest violating suffix of `w`, as `(length, period)` with the smallest
/// violating period.
#[inline]
pub(crate) fn suffix_violation(w: &[u8], bound: &ExponentBound) -> Option<(usize, usize)> {
    let n = w.len();
    for p in 1..=n {
        let len = bound.min_violating_length(p);
        if len > n {
            // min_violating_length is nondecreasing in p
            break;
        }
        let start = n - len;
        if (start..n - p).all(|i| w[i] == w[i + p]) {
            return Some((len, p));
        }
    }
    None
}

/// Whether `w` is free, assuming `w` minus its last symbol already is.
///
/// Only suffixes of `w` are inspected.
pub fn extension_safe(w: &[u8], bound: &ExponentBound) -> bool {
    suffix_violation(w, bound).is_none()
}

/// The violation with the smallest end index, then the smallest period, or
/// `None` if `w` is free for `bound`.
pub fn find_violation(w: &[u8], bound: &ExponentBound) -> Option<Violation> {
    (1..=w.len()).find_map(|end| {
        suffix_violation(&w[..end], bound).map(|(length, period)| Violation {
            start: end - length,
            length,
            period,
            exponent: Ratio::new(length as u64, period as u64),
        })
    })
}

pub fn is_free(w: &[u8], bound: &ExponentBound) -> bool {
    find_violation(w, bound).is_none()
}

impl Word {
    pub fn is_free(&self, bound: &ExponentBound) -> bool {
        is_free(self, bound)
    }
}

/// Length of the longest run ending at `w.len()` with period `p`.
fn periodic_suffix_len(w: &[u8], p: usize) -> usize {
    let n = w.len();
    if p >= n {
        return n;
    }
    let matched = (0..n - p).rev().take_while(|&i| w[i] == w[i + p]).count();
    matched + p
}

/// Largest `|x|` over square factors `xx` of `w` (0 when squarefree).
pub fn max_square_period(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n / 2)
        .rev()
        .find(|&p| {
            let mut run = 0;
            for i in 0..n - p {
                if w[i] == w[i + p] {
                    run += 1;
                    if run >= p {
                        return true;
                    }
                } else {
                    run = 0;
                }
            }
            false
        })
        .unwrap_or(0)
}

/// Whether appending the last symbol of `w` created a cube or a square `xx`
/// with `|x| ≥ min_square_period`.
pub(crate) fn extension_avoids_cubes_and_long_squares(w: &[u8], min_square_period: usize) -> bool {
    let n = w.len();
    (1..=n / 2).all(|p| {
        let run = periodic_suffix_len(w, p);
        run < 3 * p && (p < min_square_period || run < 2 * p)
    })
}
