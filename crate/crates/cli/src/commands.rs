use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use serde_json::{json, Value};

use repwords::construct::build_family;
use repwords::decompose::{chain, factor_once};
use repwords::enumerate::{count_free_with, list_free, SearchOptions};
use repwords::growth::{build_automaton, count_avoiding, minimal_forbidden, spectral_radius};
use repwords::verify::{run_all, run_check, CheckReport};
use repwords::{find_violation, word_exponent, ExponentBound, Word};

use crate::{
    CheckArgs, Cli, Command, ConstructArgs, DecomposeArgs, EnumerateArgs, Format, GrowthArgs, TablesArgs,
    VerifyArgs,
};

/// `(file stem, bound)` for each count row, in table order.
pub const TABLE_ROWS: [(&str, &str); 4] =
    [("A_overlap_free", "2+"), ("B_7-3", "7/3"), ("C_7-3+", "7/3+"), ("D_cubefree", "3")];

const TABLE_MAX_N: usize = 28;

const BUILTIN_GOLDEN: [&str; 4] = [
    include_str!("../../../golden/A_overlap_free.csv"),
    include_str!("../../../golden/B_7-3.csv"),
    include_str!("../../../golden/C_7-3+.csv"),
    include_str!("../../../golden/D_cubefree.csv"),
];

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let deadline = cli
        .budget_seconds
        .map(|s| Duration::try_from_secs_f64(s).context("budget must be a nonnegative number of seconds"))
        .transpose()?
        .map(|d| Instant::now() + d);
    match &cli.command {
        Command::Check(args) => check(args),
        Command::Enumerate(args) => enumerate(args, deadline),
        Command::Decompose(args) => decompose(args),
        Command::Construct(args) => construct(args),
        Command::Growth(args) => growth(args),
        Command::Verify(args) => verify(args),
        Command::Tables(args) => tables(args, deadline),
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn emit_json(value: &Value) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn parse_word(text: &str) -> Result<Word> {
    Ok(text.parse::<Word>()?)
}

fn check(args: &CheckArgs) -> Result<ExitCode> {
    let word = parse_word(&args.word)?;
    let violation = find_violation(&word, &args.bound);
    let exponent = word_exponent(&word).ok().map(|e| e.to_string());
    emit_json(&json!({
        "schema": "repwords.check/1",
        "word": word.to_string(),
        "bound": args.bound.to_string(),
        "free": violation.is_none(),
        "exponent": exponent,
        "violation": violation.map(|v| json!({
            "start": v.start,
            "length": v.length,
            "period": v.period,
            "exponent": v.exponent.to_string(),
            "factor": Word::new(word[v.start..v.start + v.length].to_vec(), word.alphabet_size())
                .map(|w| w.to_string())
                .unwrap_or_default(),
        })),
    }))?;
    Ok(if violation.is_none() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn enumerate(args: &EnumerateArgs, deadline: Option<Instant>) -> Result<ExitCode> {
    if args.list {
        let mut out = String::new();
        for (i, w) in list_free(&args.bound, args.max_n).enumerate() {
            if deadline.is_some_and(|d| i % 1024 == 0 && Instant::now() > d) {
                return Err(repwords::Error::BudgetExceeded("listing deadline reached".into()).into());
            }
            out.push_str(&w.to_string());
            out.push('\n');
        }
        emit(&out)?;
        return Ok(ExitCode::SUCCESS);
    }
    let started = Instant::now();
    let options = SearchOptions { shards: args.shards as usize, deadline, force: args.force };
    if args.verbose {
        eprintln!("counting {}-free words up to length {} ({} shards)", args.bound, args.max_n, args.shards);
    }
    let series = count_free_with(&args.bound, args.max_n, &options)?;
    if args.verbose {
        let nodes: u64 = series.counts.iter().sum();
        eprintln!("visited {nodes} nodes in {:.3}s", started.elapsed().as_secs_f64());
    }
    match args.format {
        Format::Csv => emit(&series.to_csv())?,
        Format::Json => emit_json(&json!({
            "schema": "repwords.enumerate/1",
            "bound": series.bound.to_string(),
            "max_n": args.max_n,
            "counts": series.counts,
        }))?,
        Format::Text => {
            let lines: String = series.counts.iter().enumerate().map(|(n, c)| format!("{n:>4} {c}\n")).collect();
            emit(&lines)?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn decompose(args: &DecomposeArgs) -> Result<ExitCode> {
    let word = parse_word(&args.word)?;
    let c = chain(&word, &args.bound)?;
    let words = |ws: &[Word]| ws.iter().map(Word::to_string).collect::<Vec<_>>();
    let mut value = json!({
        "schema": "repwords.decompose/1",
        "word": word.to_string(),
        "bound": args.bound.to_string(),
        "prefixes": words(&c.prefixes),
        "core": c.core.to_string(),
        "suffixes": words(&c.suffixes),
        "depth": c.depth,
    });
    if args.all_factorizations {
        let fs = factor_once(&word, &args.bound)?;
        value["factorizations"] = fs
            .iter()
            .map(|f| json!({"u": f.u.to_string(), "y": f.y.to_string(), "v": f.v.to_string()}))
            .collect();
    }
    emit_json(&value)?;
    Ok(ExitCode::SUCCESS)
}

fn construct(args: &ConstructArgs) -> Result<ExitCode> {
    let m = args.m as usize;
    let report = build_family(m)?;
    if let Some(path) = &args.emit {
        let text: String = report.members.iter().map(|w| format!("{w}\n")).collect();
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let n = report.member_length;
    emit_json(&json!({
        "schema": "repwords.construct/1",
        "m": m,
        "source": report.source.to_string(),
        "shifted": report.shifted.to_string(),
        "zeros": report.zeros,
        "member_count": report.members.len(),
        "member_length": n,
        "lower_bound": 2f64.powf(n as f64 / 63.0),
        "max_square_period": report.max_square_period,
        "all_members_free": true,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn growth(args: &GrowthArgs) -> Result<ExitCode> {
    let forbidden = minimal_forbidden(&args.bound, args.max_period)?;
    if let Some(path) = &args.export_forbidden {
        fs::write(path, forbidden.to_lines()).with_context(|| format!("writing {}", path.display()))?;
    }
    let automaton = build_automaton(&forbidden);
    let (root, tolerance, iterations) = spectral_radius(&automaton.transfer_matrix(), args.tol)?;
    let counts: Vec<Value> = count_avoiding(&automaton, args.counts)
        .into_iter()
        .map(|c| match u64::try_from(&c) {
            Ok(small) => json!(small),
            Err(_) => json!(c.to_string()),
        })
        .collect();
    emit_json(&json!({
        "schema": "repwords.growth/1",
        "bound": args.bound.to_string(),
        "max_period": args.max_period,
        "forbidden_count": forbidden.len(),
        "max_word_length": forbidden.max_word_length(),
        "live_states": automaton.live_states(),
        "dominant_root": root,
        "tolerance": tolerance,
        "iterations": iterations,
        "counts": counts,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn report_json(report: &CheckReport, timings: bool) -> Value {
    let mut value = json!({
        "check_name": report.check_name,
        "universe_size": report.universe_size,
        "expected_universe": report.expected_universe,
        "universe_matches": report.universe_matches(),
        "failures": report.failures,
        "passed": report.passed(),
    });
    if timings {
        value["elapsed"] = json!(report.elapsed.as_secs_f64());
    }
    value
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let reports = match &args.selection.check {
        Some(name) => vec![run_check(name)?],
        None => run_all(),
    };
    let passed = reports.iter().all(CheckReport::passed);
    for r in reports.iter().filter(|r| !r.passed()) {
        eprintln!("FAILED {}: universe {} (expected {:?})", r.check_name, r.universe_size, r.expected_universe);
        for f in &r.failures {
            eprintln!("  {f}");
        }
    }
    emit_json(&json!({
        "schema": "repwords.verify/1",
        "passed": passed,
        "reports": reports.iter().map(|r| report_json(r, args.timings)).collect::<Vec<_>>(),
    }))?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn tables(args: &TablesArgs, deadline: Option<Instant>) -> Result<ExitCode> {
    let mut all_match = true;
    let mut rows = Vec::new();
    for (i, (stem, bound)) in TABLE_ROWS.iter().enumerate() {
        let bound: ExponentBound = bound.parse()?;
        let options = SearchOptions { shards: 1, deadline, force: false };
        let produced = count_free_with(&bound, TABLE_MAX_N, &options)?.to_csv();
        let golden = match &args.golden_dir {
            Some(dir) => {
                let path = dir.join(format!("{stem}.csv"));
                fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?
            }
            None => BUILTIN_GOLDEN[i].to_string(),
        };
        let mismatches: Vec<String> = diff_lines(&golden, &produced);
        all_match &= mismatches.is_empty();
        rows.push((stem, bound, mismatches));
    }
    match args.format {
        Format::Json => emit_json(&json!({
            "schema": "repwords.tables/1",
            "max_n": TABLE_MAX_N,
            "matches": all_match,
            "rows": rows.iter().map(|(stem, bound, mismatches)| json!({
                "name": stem,
                "bound": bound.to_string(),
                "matches": mismatches.is_empty(),
                "diff": mismatches,
            })).collect::<Vec<_>>(),
        }))?,
        _ => {
            let mut out = String::new();
            for (stem, bound, mismatches) in &rows {
                let status = if mismatches.is_empty() { "ok" } else { "MISMATCH" };
                out.push_str(&format!("{stem} ({bound}): {status}\n"));
                for m in mismatches {
                    out.push_str(&format!("  {m}\n"));
                }
            }
            emit(&out)?;
        }
    }
    Ok(if all_match { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Line-by-line differences as `-expected` / `+produced` pairs.
fn diff_lines(expected: &str, produced: &str) -> Vec<String> {
    let e: Vec<&str> = expected.lines().collect();
    let p: Vec<&str> = produced.lines().collect();
    let mut out = Vec::new();
    for i in 0..e.len().max(p.len()) {
        match (e.get(i), p.get(i)) {
            (Some(a), Some(b)) if a == b => {}
            (a, b) => {
                if let Some(a) = a {
                    out.push(format!("-{a}"));
                }
                if let Some(b) = b {
                    out.push(format!("+{b}"));
                }
            }
        }
    }
    out
}
