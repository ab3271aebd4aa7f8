//! Exhaustive enumeration of bound-free words by pruned depth-first search.
//!
//! Every prefix of a free word is free, so extending only
//! [`extension_safe`](crate::extension_safe) prefixes visits exactly the free
//! words.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::repetition::suffix_violation;
use crate::{Error, ExponentBound, Result, Word};

/// Above this length, counting exponentially growing languages needs `force`.
pub const EXPONENTIAL_LENGTH_CAP: usize = 40;

/// Exact counts `c_0, …, c_N` of free binary words per length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountSeries {
    pub bound: ExponentBound,
    pub counts: Vec<u64>,
}

impl CountSeries {
    pub fn get(&self, n: usize) -> Option<u64> {
        self.counts.get(n).copied()
    }

    /// `n,count` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

/// Whether the free language for `bound` over `Σ_2` grows exponentially.
///
/// Growth is polynomial up to and including the closed bound `7/3`.
pub fn grows_exponentially(bound: &ExponentBound) -> bool {
    let seven_thirds = crate::Ratio::new(7, 3);
    bound.alpha() > seven_thirds || (bound.alpha() == seven_thirds && bound.is_open())
}

/// Search limits for [`count_free_with`].
#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Number of independent subtrees to search in parallel; 0 and 1 are serial.
    pub shards: usize,
    pub deadline: Option<Instant>,
    /// Allows exponential languages beyond [`EXPONENTIAL_LENGTH_CAP`].
    pub force: bool,
}

/// Counts free binary words of every length `0..=n_max`.
pub fn count_free(bound: &ExponentBound, n_max: usize) -> CountSeries {
    count_free_with(bound, n_max, &SearchOptions { force: true, ..Default::default() })
        .expect("no deadline set")
}

pub fn count_free_with(bound: &ExponentBound, n_max: usize, options: &SearchOptions) -> Result<CountSeries> {
    if !options.force && n_max > EXPONENTIAL_LENGTH_CAP && grows_exponentially(bound) {
        return Err(Error::BudgetExceeded(format!(
            "counting {bound}-free words to length {n_max} grows exponentially; cap is {EXPONENTIAL_LENGTH_CAP} without force"
        )));
    }
    let safe = |w: &[u8]| suffix_violation(w, bound).is_none();
    let expired = AtomicBool::new(false);
    let shards = options.shards.max(1);
    // shallowest depth with at least `shards` subtrees
    let depth = (shards.next_power_of_two().trailing_zeros() as usize).min(n_max);

    let mut counts = vec![0u64; n_max + 1];
    let mut roots = Vec::new();
    let mut buf = Vec::new();
    collect_to_depth(&mut buf, 2, depth, &safe, &mut counts, &mut roots);

    let search = |root: &Vec<u8>| {
        let mut local = vec![0u64; n_max + 1];
        let mut buf = root.clone();
        let mut ticks = 0u32;
        dfs_count(&mut buf, 2, n_max, &safe, &mut local, &mut |_: &[u8]| {
            ticks = ticks.wrapping_add(1);
            if ticks.is_multiple_of(4096) {
                if let Some(deadline) = options.deadline {
                    if Instant::now() > deadline {
                        expired.store(true, Ordering::Relaxed);
                    }
                }
            }
            !expired.load(Ordering::Relaxed)
        });
        local
    };
    let partials: Vec<Vec<u64>> =
        if shards > 1 { roots.par_iter().map(search).collect() } else { roots.iter().map(search).collect() };
    if expired.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(format!("search deadline reached while counting {bound}-free words")));
    }
    for local in partials {
        for (total, c) in counts.iter_mut().zip(local) {
            *total += c;
        }
    }
    // roots were counted at their own depth by collect_to_depth
    Ok(CountSeries { bound: *bound, counts })
}

/// Counts nodes shallower than `depth` and collects the free words of length `depth`.
fn collect_to_depth<F: Fn(&[u8]) -> bool>(
    buf: &mut Vec<u8>,
    k: u8,
    depth: usize,
    safe: &F,
    counts: &mut [u64],
    roots: &mut Vec<Vec<u8>>,
) {
    if buf.len() == depth {
        roots.push(buf.clone());
        return;
    }
    counts[buf.len()] += 1;
    for a in 0..k {
        buf.push(a);
        if safe(buf) {
            collect_to_depth(buf, k, depth, safe, counts, roots);
        }
        buf.pop();
    }
}

/// Counts every node in the subtree at `buf`, including `buf` itself.
/// `keep_going` is polled once per node; returning false abandons the search.
fn dfs_count<F: Fn(&[u8]) -> bool, G: FnMut(&[u8]) -> bool>(
    buf: &mut Vec<u8>,
    k: u8,
    n_max: usize,
    safe: &F,
    counts: &mut [u64],
    keep_going: &mut G,
) {
    if !keep_going(buf) {
        return;
    }
    counts[buf.len()] += 1;
    if buf.len() == n_max {
        return;
    }
    for a in 0..k {
        buf.push(a);
        if safe(buf) {
            dfs_count(buf, k, n_max, safe, counts, keep_going);
        }
        buf.pop();
    }
}

/// Lexicographic stream of the length-`n` words over `Σ_k` accepted by an
/// incremental suffix predicate.
///
/// `safe(w)` is called only when `w` minus its last letter was accepted.
pub struct FreeWords<F> {
    alphabet_size: u8,
    length: usize,
    safe: F,
    buf: Vec<u8>,
    last_ok: bool,
    started: bool,
    done: bool,
}

impl<F: FnMut(&[u8]) -> bool> FreeWords<F> {
    pub fn new(alphabet_size: u8, length: usize, safe: F) -> Self {
        Self { alphabet_size, length, safe, buf: Vec::with_capacity(length), last_ok: false, started: false, done: false }
    }

    /// Longest word reachable in the search tree, stopping at `cap`.
    pub fn longest(alphabet_size: u8, cap: usize, mut safe: F) -> (usize, u64) {
        fn go<F: FnMut(&[u8]) -> bool>(buf: &mut Vec<u8>, k: u8, cap: usize, safe: &mut F, best: &mut (usize, u64)) {
            match buf.len().cmp(&best.0) {
                std::cmp::Ordering::Greater => *best = (buf.len(), 1),
                std::cmp::Ordering::Equal => best.1 += 1,
                std::cmp::Ordering::Less => {}
            }
            if buf.len() == cap {
                return;
            }
            for a in 0..k {
                buf.push(a);
                if safe(buf) {
                    go(buf, k, cap, safe, best);
                }
                buf.pop();
            }
        }
        let mut best = (0, 0);
        go(&mut Vec::new(), alphabet_size, cap, &mut safe, &mut best);
        best
    }
}

impl<F: FnMut(&[u8]) -> bool> Iterator for FreeWords<F> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if self.length == 0 {
            self.done = true;
            return Some(Word::empty(self.alphabet_size));
        }
        loop {
            if !self.started {
                self.started = true;
                self.buf.push(0);
            } else if self.last_ok && self.buf.len() < self.length {
                self.buf.push(0);
            } else {
                loop {
                    match self.buf.last_mut() {
                        None => {
                            self.done = true;
                            return None;
                        }
                        Some(c) if *c + 1 < self.alphabet_size => {
                            *c += 1;
                            break;
                        }
                        Some(_) => {
                            self.buf.pop();
                        }
                    }
                }
            }
            self.last_ok = (self.safe)(&self.buf);
            if self.last_ok && self.buf.len() == self.length {
                return Some(Word::new(self.buf.clone(), self.alphabet_size).expect("symbols below alphabet size"));
            }
        }
    }
}

/// Every `bound`-free binary word of length `n`, in lexicographic order.
pub fn list_free(bound: &ExponentBound, n: usize) -> FreeWords<impl FnMut(&[u8]) -> bool> {
    list_free_over(2, bound, n)
}

/// As [`list_free`] over `Σ_k`.
pub fn list_free_over(
    alphabet_size: u8,
    bound: &ExponentBound,
    n: usize,
) -> FreeWords<impl FnMut(&[u8]) -> bool> {
    let bound = *bound;
    FreeWords::new(alphabet_size, n, move |w: &[u8]| suffix_violation(w, &bound).is_none())
}
