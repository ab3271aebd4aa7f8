//! Exhaustive certificates for the finite claims about `h`, `μ`, and small
//! binary words. Each check enumerates an explicit universe and lists every
//! counterexample it finds.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::enumerate::{list_free, list_free_over, FreeWords};
use crate::morphism::UniformMorphism;
use crate::repetition::{extension_avoids_cubes_and_long_squares, find_violation, max_square_period};
use crate::{Error, ExponentBound, Result, Word};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub universe_size: usize,
    /// Expected universe size, when it is known in advance.
    pub expected_universe: Option<usize>,
    pub failures: Vec<String>,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CheckReport {
    fn new(name: &str, expected_universe: Option<usize>) -> Self {
        Self {
            check_name: name.to_string(),
            universe_size: 0,
            expected_universe,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn finish(mut self, started: Instant) -> Self {
        self.elapsed = started.elapsed();
        self
    }

    pub fn universe_matches(&self) -> bool {
        self.expected_universe.is_none_or(|n| n == self.universe_size)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.universe_matches()
    }
}

/// Names accepted by [`run_check`].
pub const CHECKS: [&str; 7] =
    ["h_squares", "h_powers", "fact_i", "fact_ii", "large_squares_0", "large_squares_1", "dekking"];

pub fn run_check(name: &str) -> Result<CheckReport> {
    match name {
        "h_squares" => Ok(check_h_squares()),
        "h_powers" => Ok(check_h_powers()),
        "fact_i" => Ok(check_fact_i()),
        "fact_ii" => Ok(check_fact_ii()),
        "large_squares_0" => check_large_squares(0),
        "large_squares_1" => check_large_squares(1),
        "dekking" => Ok(check_dekking_bound()),
        _ => Err(Error::InvalidArgument(format!("unknown check {name:?}; expected one of {CHECKS:?}"))),
    }
}

fn squarefree_quaternary(n: usize) -> impl Iterator<Item = Word> {
    list_free_over(4, &ExponentBound::squarefree(), n)
}

/// `h` maps the 264 squarefree words of length 5 over `Σ_4` to words with no
/// square `yy`, `|y| > 13`.
pub fn check_h_squares() -> CheckReport {
    let started = Instant::now();
    let h = UniformMorphism::h21();
    let mut report = CheckReport::new("h_squares", Some(264));
    for w in squarefree_quaternary(5) {
        report.universe_size += 1;
        let image = h.apply_slice(&w).expect("letters of Σ_4");
        let p = max_square_period(&image);
        if p > 13 {
            report.failures.push(format!("h({w}) contains a square with |y| = {p}"));
        }
    }
    report.finish(started)
}

/// `h` maps the 36 squarefree words of length 3 over `Σ_4` to `7/3⁺`-free words.
pub fn check_h_powers() -> CheckReport {
    let started = Instant::now();
    let h = UniformMorphism::h21();
    let bound = ExponentBound::open(7, 3);
    let mut report = CheckReport::new("h_powers", Some(36));
    for w in squarefree_quaternary(3) {
        report.universe_size += 1;
        let image = h.apply_slice(&w).expect("letters of Σ_4");
        if image.len() != 63 {
            report.failures.push(format!("h({w}) has length {}", image.len()));
        }
        if let Some(v) = find_violation(&image, &bound) {
            report.failures.push(format!(
                "h({w}) contains a {}-power at {} (period {})",
                v.exponent, v.start, v.period
            ));
        }
    }
    report.finish(started)
}

/// If `h(ab) = t·h(c)·u` with `t, u` nonempty, then `u` is a prefix of no `h(d)`.
pub fn check_fact_i() -> CheckReport {
    let started = Instant::now();
    let h = UniformMorphism::h21();
    let width = h.width();
    let mut report = CheckReport::new("fact_i", Some(64 * (width + 1)));
    for a in 0..4u8 {
        for b in 0..4u8 {
            let hab = h.apply_slice(&[a, b]).expect("letters of Σ_4");
            for c in 0..4u8 {
                for offset in 0..=width {
                    report.universe_size += 1;
                    if &hab[offset..offset + width] != h.image(c) || offset == 0 || offset == width {
                        continue;
                    }
                    let u = &hab[offset + width..];
                    for d in (0..4u8).filter(|&d| h.image(d).starts_with(u)) {
                        report.failures.push(format!(
                            "h({a}{b}) = t·h({c})·u with |t| = {offset} and u a prefix of h({d})"
                        ));
                    }
                }
            }
        }
    }
    report.finish(started)
}

/// If `h(a) = st`, `h(b) = uv`, `h(c) = sv` then `a = c` or `b = c`; also no
/// two distinct images share a prefix or a suffix of length 11.
pub fn check_fact_ii() -> CheckReport {
    let started = Instant::now();
    let h = UniformMorphism::h21();
    let width = h.width();
    let mut report = CheckReport::new("fact_ii", Some(64 * (width + 1) + 12));
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for split in 0..=width {
                    report.universe_size += 1;
                    let (hc_s, hc_v) = h.image(c).split_at(split);
                    if h.image(a).starts_with(hc_s) && h.image(b).ends_with(hc_v) && a != c && b != c {
                        report.failures.push(format!(
                            "h({c}) = s·v with s a prefix of h({a}) and v a suffix of h({b}), |s| = {split}"
                        ));
                    }
                }
            }
        }
    }
    for a in 0..4u8 {
        for b in a + 1..4 {
            report.universe_size += 2;
            let (ha, hb) = (h.image(a), h.image(b));
            if ha[..11] == hb[..11] {
                report.failures.push(format!("h({a}) and h({b}) share a prefix of length 11"));
            }
            if ha[width - 11..] == hb[width - 11..] {
                report.failures.push(format!("h({a}) and h({b}) share a suffix of length 11"));
            }
        }
    }
    report.finish(started)
}

/// Every `7/3`-free binary word of length `2^{n+5}` contains `μ^{n+2}(0)`,
/// hence the square `μ^n(1)μ^n(1)`.
pub fn check_large_squares(level: u32) -> Result<CheckReport> {
    if level > 1 {
        return Err(Error::BudgetExceeded(format!("large-squares level {level} exceeds desk scale (max 1)")));
    }
    let started = Instant::now();
    let mu = UniformMorphism::thue_morse();
    let needle = mu.power(&[0], level + 2)?;
    let square = mu.power(&[1, 1], level)?;
    let mut report = CheckReport::new(&format!("large_squares_{level}"), None);
    for w in list_free(&ExponentBound::closed(7, 3), 1 << (level + 5)) {
        report.universe_size += 1;
        if !w.contains_factor(&needle) {
            report.failures.push(format!("{w} lacks {}", Word::binary(&needle)));
        } else if !w.contains_factor(&square) {
            report.failures.push(format!("{w} lacks the square {}", Word::binary(&square)));
        }
    }
    Ok(report.finish(started))
}

/// Longest binary word avoiding cubes and squares `xx` with `|x| ≥ 3`.
pub fn dekking_longest() -> (usize, u64) {
    FreeWords::longest(2, 64, |w: &[u8]| extension_avoids_cubes_and_long_squares(w, 3))
}

/// The longest such word has length 29, and none has length 30.
pub fn check_dekking_bound() -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("dekking", None);
    let (longest, how_many) = dekking_longest();
    let survivors_30 =
        FreeWords::new(2, 30, |w: &[u8]| extension_avoids_cubes_and_long_squares(w, 3)).count();
    report.universe_size = how_many as usize;
    if longest != 29 {
        report.failures.push(format!("longest word has length {longest}, expected 29"));
    }
    if survivors_30 != 0 {
        report.failures.push(format!("{survivors_30} words of length 30 survive"));
    }
    report.finish(started)
}

pub fn run_all() -> Vec<CheckReport> {
    CHECKS.iter().map(|name| run_check(name).expect("known check")).collect()
}
