//! Factorizations `x = u·μ(y)·v` of `α`-power-free binary words for
//! `2 < α ≤ 7/3`, and the chain obtained by iterating them.

use serde::Serialize;

use crate::morphism::{mu, mu_inverse};
use crate::repetition::is_free;
use crate::{Error, ExponentBound, Ratio, Result, Word};

/// Candidates for `u` and `v`, in the order used to break ties.
pub const AFFIXES: [&[u8]; 5] = [&[], &[0], &[1], &[0, 0], &[1, 1]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub u: Word,
    pub y: Word,
    pub v: Word,
}

impl Factorization {
    pub fn reconstruct(&self) -> Word {
        Word::binary(&[&self.u[..], &mu(&self.y), &self.v[..]].concat())
    }
}

/// `x = u_1 μ(u_2) ⋯ μ^{t-1}(u_t) μ^t(core) μ^{t-1}(v_t) ⋯ v_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionChain {
    /// `u_1, …, u_t`
    pub prefixes: Vec<Word>,
    pub core: Word,
    /// `v_t, …, v_1`
    pub suffixes: Vec<Word>,
    pub depth: usize,
}

impl DecompositionChain {
    pub fn reconstruct(&self) -> Word {
        let t = self.depth;
        let mut out = Vec::new();
        for (i, u) in self.prefixes.iter().enumerate() {
            out.extend(mu_power(u, i));
        }
        out.extend(mu_power(&self.core, t));
        for (j, v) in self.suffixes.iter().enumerate() {
            out.extend(mu_power(v, t - 1 - j));
        }
        Word::binary(&out)
    }
}

fn mu_power(w: &[u8], k: usize) -> Vec<u8> {
    (0..k).fold(w.to_vec(), |acc, _| mu(&acc))
}

fn check_applicable(bound: &ExponentBound) -> Result<()> {
    let alpha = bound.alpha();
    let in_range = !bound.is_open() && alpha > Ratio::integer(2) && alpha <= Ratio::new(7, 3);
    if in_range {
        Ok(())
    } else {
        Err(Error::StructureTheoremInapplicable(bound.to_string()))
    }
}

/// All `(u, y, v)` with `u, v ∈ {ε, 0, 1, 00, 11}` and `x = u·μ(y)·v`, in
/// affix order, without any freeness requirement on `y`.
pub fn mu_factorizations(x: &[u8]) -> Vec<Factorization> {
    let mut out = Vec::new();
    for u in AFFIXES {
        for v in AFFIXES {
            if u.len() + v.len() > x.len() || !x.starts_with(u) || !x.ends_with(v) {
                continue;
            }
            if let Some(y) = mu_inverse(&x[u.len()..x.len() - v.len()]) {
                out.push(Factorization { u: Word::binary(u), y: Word::binary(&y), v: Word::binary(v) });
            }
        }
    }
    out
}

/// The factorizations of `x` whose `y` is also `bound`-free.
pub fn factorizations(x: &[u8], bound: &ExponentBound) -> Vec<Factorization> {
    mu_factorizations(x).into_iter().filter(|f| is_free(&f.y, bound)).collect()
}

/// Every factorization of a `bound`-free word `x`, for closed bounds with
/// `2 < α ≤ 7/3`; never empty for valid input.
pub fn factor_once(x: &Word, bound: &ExponentBound) -> Result<Vec<Factorization>> {
    check_applicable(bound)?;
    check_binary_free(x, bound)?;
    Ok(factorizations(x, bound))
}

fn check_binary_free(x: &Word, bound: &ExponentBound) -> Result<()> {
    if let Some(&symbol) = x.iter().find(|&&s| s > 1) {
        return Err(Error::SymbolOutOfRange { symbol, alphabet_size: 2 });
    }
    if !is_free(x, bound) {
        return Err(Error::NotFree { word: x.to_string(), bound: bound.to_string() });
    }
    Ok(())
}

/// Iterates [`factor_once`] until the next `y` would be empty.
///
/// At each step the first factorization in affix order with a nonempty `y`
/// is taken (for `|x| ≥ 7` there is only one). The last nonempty word is the
/// core, so `1 ≤ |core| ≤ 4` for nonempty input.
pub fn chain(x: &Word, bound: &ExponentBound) -> Result<DecompositionChain> {
    check_applicable(bound)?;
    check_binary_free(x, bound)?;
    let mut prefixes = Vec::new();
    let mut suffixes = Vec::new();
    let mut current = Word::binary(x);
    loop {
        let candidates = factorizations(&current, bound);
        if candidates.is_empty() {
            return Err(Error::Consistency(format!("no factorization of {current} for {bound}")));
        }
        let Some(step) = candidates.into_iter().find(|f| !f.y.is_empty()) else {
            break;
        };
        prefixes.push(step.u);
        suffixes.push(step.v);
        current = step.y;
    }
    suffixes.reverse();
    let depth = prefixes.len();
    Ok(DecompositionChain { prefixes, core: current, suffixes, depth })
}

/// `⌈66 · n^{log₂ 25}⌉`, an upper bound on the number of free words of
/// length `n`: three choices of depth, 22 cores, 25 affix pairs per level.
pub fn count_bound_witness(n: usize) -> u128 {
    assert!(n >= 1, "length must be positive");
    (66.0 * (n as f64).powf(25f64.log2())).ceil() as u128
}

/// Whether `t` lies in `(log₂ n − 3, log₂ n]`, checked as `2^t ≤ n < 2^{t+3}`.
pub fn depth_in_window(n: usize, t: usize) -> bool {
    n >= 1 && t < 64 && (1u128 << t) <= n as u128 && (n as u128) < (1u128 << (t + 3))
}
