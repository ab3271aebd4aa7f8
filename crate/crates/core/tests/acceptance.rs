//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p repwords --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use repwords::construct::{build_family, MAX_SQUARE_PERIOD};
use repwords::decompose::{chain, count_bound_witness, depth_in_window, factor_once};
use repwords::enumerate::{count_free, list_free};
use repwords::growth::{build_automaton, count_avoiding, dominant_root, minimal_forbidden, ForbiddenSet};
use repwords::morphism::mu;
use repwords::repetition::{is_free, max_square_period};
use repwords::verify::{check_dekking_bound, check_fact_i, check_fact_ii, check_h_powers, check_h_squares, CheckReport};
use repwords::{ExponentBound, Word};

const GOLDEN: [(&str, &str, &str); 4] = [
    ("A", "2+", include_str!("../../../golden/A_overlap_free.csv")),
    ("B", "7/3", include_str!("../../../golden/B_7-3.csv")),
    ("C", "7/3+", include_str!("../../../golden/C_7-3+.csv")),
    ("D", "3", include_str!("../../../golden/D_cubefree.csv")),
];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed <= Duration::from_secs(limit_secs), || {
        format!("took {:.2}s, limit {limit_secs}s", elapsed.as_secs_f64())
    })
}

fn golden_row(text: &str) -> Vec<u64> {
    text.lines()
        .skip(1)
        .map(|line| line.split_once(',').expect("n,count").1.parse().expect("integer count"))
        .collect()
}

fn bound(s: &str) -> ExponentBound {
    s.parse().expect("valid bound")
}

fn exact_c_row() -> Vec<u64> {
    count_free(&bound("7/3+"), 28).counts
}

fn all_binary(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << n).map(move |bits| (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect())
}

fn table_reproduction() -> Outcome {
    let started = Instant::now();
    for (name, b, text) in GOLDEN {
        let expected = golden_row(text);
        ensure(expected.len() == 29, || format!("golden row {name} has {} entries", expected.len()))?;
        let got = count_free(&bound(b), 28).counts;
        if let Some(n) = (0..=28).find(|&n| got[n] != expected[n]) {
            return Err(format!("{name}_{n} = {} but table says {}", got[n], expected[n]));
        }
    }
    let elapsed = started.elapsed();
    let b_row = golden_row(GOLDEN[1].2);
    let spot = [(0, 10, 44), (1, 9, 40), (2, 28, 3292), (3, 28, 108664)];
    for (row, n, value) in spot {
        ensure(golden_row(GOLDEN[row].2)[n] == value, || format!("spot value {n} in row {row}"))?;
    }
    for n in 1..=28 {
        ensure(count_bound_witness(n) >= b_row[n] as u128, || format!("witness below B_{n}"))?;
    }
    within(elapsed, 10)?;
    Ok(format!("A, B, C, D rows exact for 0 ≤ n ≤ 28 in {:.2}s; B_n ≤ 66·n^log2(25)", elapsed.as_secs_f64()))
}

fn golden_ratio_bound() -> Outcome {
    let l = ForbiddenSet::minimal(["000", "111"].map(|w| w.parse::<Word>().unwrap()));
    let a = build_automaton(&l);
    let e = count_avoiding(&a, 30);
    for n in 3..=30 {
        ensure(e[n] == &e[n - 1] + &e[n - 2], || format!("E_{n} ≠ E_{} + E_{}", n - 1, n - 2))?;
    }
    let root = dominant_root(&a, 1e-12).map_err(|e| e.to_string())?.dominant_root;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    ensure((root - 1.6180339887).abs() <= 1e-9, || format!("root {root}"))?;
    Ok(format!("E_n = E_(n-1) + E_(n-2) for 3..=30; root {root:.12} (φ = {phi:.12})"))
}

fn fifty_eight_word_bound() -> Outcome {
    let started = Instant::now();
    let l = minimal_forbidden(&bound("7/3+"), 10).map_err(|e| e.to_string())?;
    ensure(l.len() == 58, || format!("{} forbidden words", l.len()))?;
    ensure(l.max_word_length() == 24, || format!("max length {}", l.max_word_length()))?;
    for w in ["000", "111", "01010", "10101", "110110010011011001001101"] {
        let w: Word = w.parse().unwrap();
        ensure(l.words().contains(&w), || format!("{w} missing"))?;
    }
    let a = build_automaton(&l);
    let est = dominant_root(&a, 1e-10).map_err(|e| e.to_string())?;
    ensure((est.dominant_root - 1.22990049).abs() <= 1e-6, || format!("root {}", est.dominant_root))?;
    let upper = count_avoiding(&a, 28);
    let exact = exact_c_row();
    for n in 0..=28 {
        ensure(upper[n] >= BigUint::from(exact[n]), || format!("E_{n} = {} < C_{n} = {}", upper[n], exact[n]))?;
    }
    within(started.elapsed(), 5)?;
    Ok(format!(
        "58 words, max length 24, {} live states, root {:.10}, E_n ≥ C_n for n ≤ 28",
        a.live_states(),
        est.dominant_root
    ))
}

fn certificates() -> Outcome {
    let started = Instant::now();
    let reports: Vec<CheckReport> = vec![check_h_squares(), check_h_powers(), check_fact_i(), check_fact_ii()];
    ensure(reports[0].universe_size == 264, || format!("h_squares universe {}", reports[0].universe_size))?;
    ensure(reports[1].universe_size == 36, || format!("h_powers universe {}", reports[1].universe_size))?;
    for r in &reports {
        ensure(r.failures.is_empty(), || format!("{}: {:?}", r.check_name, r.failures))?;
        ensure(r.universe_matches(), || format!("{}: universe {}", r.check_name, r.universe_size))?;
    }
    within(started.elapsed(), 1)?;
    let sizes: Vec<String> = reports.iter().map(|r| format!("{}={}", r.check_name, r.universe_size)).collect();
    Ok(format!("zero failures ({})", sizes.join(", ")))
}

fn structure_theorem() -> Outcome {
    let started = Instant::now();
    let b = bound("7/3");
    let mut words = 0;
    for n in 7..=16 {
        for x in list_free(&b, n) {
            words += 1;
            let fs = factor_once(&x, &b).map_err(|e| e.to_string())?;
            ensure(fs.len() == 1, || format!("{x} has {} factorizations", fs.len()))?;
            ensure(fs[0].reconstruct() == x, || format!("{x} does not reconstruct"))?;
            ensure(is_free(&fs[0].y, &b), || format!("y = {} not free", fs[0].y))?;
            let c = chain(&x, &b).map_err(|e| e.to_string())?;
            ensure(c.reconstruct() == x, || format!("chain of {x} does not reconstruct"))?;
            ensure(depth_in_window(n, c.depth), || format!("{x}: depth {} outside window", c.depth))?;
        }
    }
    within(started.elapsed(), 5)?;
    Ok(format!("{words} words with 7 ≤ |x| ≤ 16: unique factorization, reconstruction, depth window"))
}

fn mu_equivalence() -> Outcome {
    let bounds = ["9/4", "7/3", "5/2", "3"].map(bound);
    let mut cases = 0;
    for n in 0..=12 {
        for w in all_binary(n) {
            let image = mu(&w);
            for b in &bounds {
                cases += 1;
                ensure(is_free(&w, b) == is_free(&image, b), || format!("{w:?} under {b}"))?;
            }
        }
    }
    let square = bound("2");
    ensure(is_free(&[0, 1], &square), || "01 should be squarefree".into())?;
    ensure(mu(&[0, 1]) == [0, 1, 1, 0], || "μ(01) ≠ 0110".into())?;
    ensure(!is_free(&[0, 1, 1, 0], &square), || "0110 should contain a square".into())?;
    Ok(format!("{cases} (word, α) cases agree; 01 squarefree but μ(01) = 0110 is not"))
}

fn exponential_family() -> Outcome {
    let started = Instant::now();
    let open = bound("7/3+");
    let mut summary = Vec::new();
    for m in [3usize, 6, 9, 12] {
        let report = build_family(m).map_err(|e| e.to_string())?;
        let r = report.zeros;
        ensure(report.members.len() == 1 << r, || format!("m={m}: {} members, r={r}", report.members.len()))?;
        ensure(r >= m.div_ceil(3), || format!("m={m}: r={r}"))?;
        ensure((report.members.len() as f64) >= 2f64.powf(21.0 * m as f64 / 63.0), || format!("m={m}: too few"))?;
        for w in &report.members {
            ensure(w.len() == 21 * m, || format!("m={m}: member length {}", w.len()))?;
            ensure(is_free(w, &open), || format!("m={m}: {w} not 7/3+-free"))?;
            let p = max_square_period(w);
            ensure(p <= MAX_SQUARE_PERIOD, || format!("m={m}: square with |x| = {p}"))?;
        }
        summary.push(format!("m={m}: 2^{r}"));
    }
    within(started.elapsed(), 30)?;
    Ok(summary.join(", "))
}

fn large_squares() -> Outcome {
    let started = Instant::now();
    let b = bound("7/3");
    let mut sizes = Vec::new();
    for (len, needle) in [(32usize, "0110"), (64, "01101001")] {
        let needle: Word = needle.parse().unwrap();
        let mut count = 0;
        for w in list_free(&b, len) {
            count += 1;
            ensure(w.contains_factor(&needle), || format!("{w} lacks {needle}"))?;
        }
        sizes.push(format!("B_{len} = {count}"));
    }
    Ok(format!("all contain the Thue–Morse factor ({}) in {:.2}s", sizes.join(", "), started.elapsed().as_secs_f64()))
}

fn dekking() -> Outcome {
    let report = check_dekking_bound();
    ensure(report.failures.is_empty(), || report.failures.join("; "))?;
    let (longest, _) = repwords::verify::dekking_longest();
    ensure(longest == 29, || format!("longest {longest}"))?;
    Ok(format!("longest word avoiding cubes and squares |x| ≥ 3 has length {longest}; none of length 30"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("AC1 table reproduction", table_reproduction),
        ("AC2 golden-ratio bound", golden_ratio_bound),
        ("AC3 58-word bound", fifty_eight_word_bound),
        ("AC4 h certificates", certificates),
        ("AC5 structure theorem", structure_theorem),
        ("AC6 mu-equivalence", mu_equivalence),
        ("AC7 exponential family", exponential_family),
        ("AC8 large squares", large_squares),
        ("AC9 Dekking bound", dekking),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
