//! The exponential family of `7/3⁺`-power-free words: a squarefree ternary
//! word, shifted to maximize zeros, expanded by `g` and mapped through `h`.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::list_free_over;
use crate::morphism::{Substitution, UniformMorphism};
use crate::repetition::{find_violation, is_free, max_square_period};
use crate::{Error, ExponentBound, Result, Word};

/// Square factors `xx` in members never have `|x|` above this.
pub const MAX_SQUARE_PERIOD: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    /// Lexicographically least squarefree ternary word of length `m`.
    pub source: Word,
    /// `source` after the zero-maximizing shift.
    pub shifted: Word,
    /// Number of zeros in `shifted`.
    pub zeros: usize,
    pub member_length: usize,
    pub members: Vec<Word>,
    /// Largest `|x|` over square factors `xx` of any member.
    pub max_square_period: usize,
}

/// Lexicographically least squarefree word of length `m` over `Σ_3`.
pub fn squarefree_ternary(m: usize) -> Word {
    list_free_over(3, &ExponentBound::squarefree(), m)
        .next()
        .expect("squarefree ternary words exist at every length")
}

/// Maps `b ↦ b − a (mod 3)` for the most frequent letter `a` (smallest on ties).
pub fn shift_maximize_zeros(w: &Word) -> Result<Word> {
    if w.alphabet_size() > 3 {
        return Err(Error::InvalidArgument(format!("{w} is not a ternary word")));
    }
    if !is_free(w, &ExponentBound::squarefree()) {
        return Err(Error::NotSquarefree(w.to_string()));
    }
    let a = (0..3u8).max_by_key(|&a| (w.count(a), std::cmp::Reverse(a))).unwrap_or(0);
    Word::new(w.iter().map(|&b| (b + 3 - a) % 3).collect(), 3)
}

/// Builds and verifies the family `h(g(x'))` for `m ≥ 1`.
pub fn build_family(m: usize) -> Result<FamilyReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let source = squarefree_ternary(m);
    let shifted = shift_maximize_zeros(&source)?;
    let h = UniformMorphism::h21();
    let open = ExponentBound::open(7, 3);
    let members: Vec<Word> = Substitution::g()
        .expand_iter(&shifted)?
        .map(|x| Word::new(h.apply_slice(&x)?, 2))
        .collect::<Result<_>>()?;

    let square_periods: Vec<usize> = members
        .par_iter()
        .map(|w| {
            if let Some(v) = find_violation(w, &open) {
                return Err(Error::Consistency(format!("member {w} has a {} power at {}", v.exponent, v.start)));
            }
            let p = max_square_period(w);
            if p > MAX_SQUARE_PERIOD {
                return Err(Error::Consistency(format!("member {w} has a square of period {p}")));
            }
            Ok(p)
        })
        .collect::<Result<_>>()?;

    let zeros = shifted.count(0);
    if members.len() != 1usize << zeros {
        return Err(Error::Consistency(format!("expected 2^{zeros} members, got {}", members.len())));
    }
    Ok(FamilyReport {
        source,
        zeros,
        member_length: 21 * m,
        max_square_period: square_periods.into_iter().max().unwrap_or(0),
        shifted,
        members,
    })
}
