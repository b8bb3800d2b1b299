use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{p2a3_from, p2q2a3_from, FormOutcome, FormWitness, RejectReason};
use super::trace::{trace_case, CaseLabel, CaseTrace, Side};
use super::{MAX_COROLLARY_X, MAX_THEOREM_X};
use crate::arith::{factor, gcd};
use crate::{Error, Result, VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScanKind {
    Theorem,
    Corollary,
}

/// Worker and progress settings. None of them affect the report body.
#[derive(Clone, Copy)]
pub struct ScanOptions<'a> {
    /// Worker threads; 0 uses rayon's global pool.
    pub jobs: usize,
    pub block_size: u64,
    /// Called with `(values_done, values_total)` after each block.
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

impl Default for ScanOptions<'_> {
    fn default() -> Self {
        ScanOptions { jobs: 0, block_size: 4096, progress: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanStatistics {
    pub values_scanned: u64,
    pub rejections: BTreeMap<RejectReason, u64>,
    /// Side that produced the first rejection (theorem scans).
    pub by_side: BTreeMap<Side, u64>,
    /// Non-degenerate values per case label (theorem scans).
    pub by_case: BTreeMap<CaseLabel, u64>,
    /// `gcd((2x)³ − 1, (2x)³ + 1) = 1` checks (corollary scans).
    pub coprime_checks: u64,
    pub coprime_failures: u64,
}

impl ScanStatistics {
    fn merge(&mut self, other: ScanStatistics) {
        self.values_scanned += other.values_scanned;
        for (k, v) in other.rejections {
            *self.rejections.entry(k).or_default() += v;
        }
        for (k, v) in other.by_side {
            *self.by_side.entry(k).or_default() += v;
        }
        for (k, v) in other.by_case {
            *self.by_case.entry(k).or_default() += v;
        }
        self.coprime_checks += other.coprime_checks;
        self.coprime_failures += other.coprime_failures;
    }

    fn reject(&mut self, reason: RejectReason) {
        *self.rejections.entry(reason).or_default() += 1;
    }

    pub fn total_rejections(&self) -> u64 {
        self.rejections.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Counterexample {
    Theorem { trace: Box<CaseTrace> },
    Corollary { x: i64, witness: FormWitness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub kind: ScanKind,
    /// Inclusive range.
    pub x_lo: i64,
    pub x_hi: i64,
    /// Ascending in `x`.
    pub counterexamples: Vec<Counterexample>,
    pub statistics: ScanStatistics,
    pub tool_version: String,
    /// Wall-clock time; excluded from the serialized body so reports are
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Partial {
    counterexamples: Vec<Counterexample>,
    statistics: ScanStatistics,
}

fn check_range(x_lo: i64, x_hi: i64, max: i64, what: &'static str) -> Result<()> {
    if x_lo > x_hi {
        return Err(Error::domain(format!("empty range: {x_lo} > {x_hi}")));
    }
    if x_lo.unsigned_abs() > max as u64 || x_hi.unsigned_abs() > max as u64 {
        return Err(Error::RangeOverflow { what, max: max as i128 });
    }
    Ok(())
}

/// Splits `[x_lo, x_hi]` into blocks, runs `block` on each in parallel and
/// merges the partial results in block order.
fn run_blocks<F>(x_lo: i64, x_hi: i64, opts: &ScanOptions<'_>, block: F) -> Result<Partial>
where
    F: Fn(i64, i64) -> Result<Partial> + Sync,
{
    let total = (x_hi - x_lo) as u64 + 1;
    let size = opts.block_size.max(1);
    let n_blocks = total.div_ceil(size);
    let done = AtomicU64::new(0);

    let work = || -> Result<Vec<Partial>> {
        (0..n_blocks)
            .into_par_iter()
            .map(|i| {
                let lo = x_lo + (i * size) as i64;
                let hi = (lo as i128 + size as i128 - 1).min(x_hi as i128) as i64;
                let part = block(lo, hi)?;
                if let Some(report) = opts.progress {
                    let n = done.fetch_add((hi - lo) as u64 + 1, Ordering::Relaxed) + (hi - lo) as u64 + 1;
                    report(n, total);
                }
                Ok(part)
            })
            .collect()
    };
    let parts = if opts.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::domain(format!("cannot start {} workers: {e}", opts.jobs)))?;
        pool.install(work)?
    } else {
        work()?
    };

    let mut merged = Partial { counterexamples: Vec::new(), statistics: ScanStatistics::default() };
    for part in parts {
        merged.counterexamples.extend(part.counterexamples);
        merged.statistics.merge(part.statistics);
    }
    Ok(merged)
}

fn case_of(x: i64) -> CaseLabel {
    match x.rem_euclid(3) {
        0 => CaseLabel::Case1,
        2 => CaseLabel::Case2,
        _ => CaseLabel::Case3,
    }
}

fn side_outcome(r: i128, s: i128) -> Result<FormOutcome> {
    let f = factor(r)?.mul(&factor(s)?);
    Ok(p2a3_from(r * s, &f))
}

fn theorem_block(lo: i64, hi: i64) -> Result<Partial> {
    let mut stats = ScanStatistics::default();
    let mut found = Vec::new();
    for x in lo..=hi {
        stats.values_scanned += 1;
        if (-1..=1).contains(&x) {
            stats.reject(RejectReason::Degenerate);
            continue;
        }
        *stats.by_case.entry(case_of(x)).or_default() += 1;
        let xi = x as i128;
        let minus = side_outcome(xi - 1, xi * xi + xi + 1)?;
        if let Some(reason) = minus.reason() {
            stats.reject(reason);
            *stats.by_side.entry(Side::Minus).or_default() += 1;
            continue;
        }
        let plus = side_outcome(xi + 1, xi * xi - xi + 1)?;
        if let Some(reason) = plus.reason() {
            stats.reject(reason);
            *stats.by_side.entry(Side::Plus).or_default() += 1;
            continue;
        }
        found.push(Counterexample::Theorem { trace: Box::new(trace_case(x)?) });
    }
    Ok(Partial { counterexamples: found, statistics: stats })
}

/// Classifies `x³ − 1` and `x³ + 1` as `p²·a³` for every `x` in
/// `[x_lo, x_hi]`, recording a full trace for any `x` where both succeed.
///
/// `x ∈ {−1, 0, 1}` is counted as DEGENERATE. The minus side is tried first
/// and a rejection there skips the plus side.
pub fn theorem_scan(x_lo: i64, x_hi: i64, opts: &ScanOptions<'_>) -> Result<SearchReport> {
    check_range(x_lo, x_hi, MAX_THEOREM_X, "|x| (x³ ± 1 must fit in 128 bits)")?;
    let start = Instant::now();
    let merged = run_blocks(x_lo, x_hi, opts, theorem_block)?;
    Ok(SearchReport {
        kind: ScanKind::Theorem,
        x_lo,
        x_hi,
        counterexamples: merged.counterexamples,
        statistics: merged.statistics,
        tool_version: VERSION.to_string(),
        elapsed: start.elapsed(),
    })
}

fn corollary_block(lo: i64, hi: i64) -> Result<Partial> {
    let mut stats = ScanStatistics::default();
    let mut found = Vec::new();
    for x in lo..=hi {
        stats.values_scanned += 1;
        if x == 0 {
            stats.reject(RejectReason::Degenerate);
            continue;
        }
        let t = 2 * x as i128;
        let (a, b) = (t * t * t - 1, t * t * t + 1);
        stats.coprime_checks += 1;
        if gcd(a, b) != 1 {
            stats.coprime_failures += 1;
        }
        let f = factor(a)?.mul(&factor(b)?);
        match p2q2a3_from(a * b, &f) {
            FormOutcome::Rejected(reason) => stats.reject(reason),
            FormOutcome::Witness(witness) => found.push(Counterexample::Corollary { x, witness }),
        }
    }
    Ok(Partial { counterexamples: found, statistics: stats })
}

/// Classifies `(2x)⁶ − 1` as `p²·q²·a³` for every `x` in `[x_lo, x_hi]`,
/// checking `gcd((2x)³ − 1, (2x)³ + 1) = 1` along the way.
pub fn corollary_scan(x_lo: i64, x_hi: i64, opts: &ScanOptions<'_>) -> Result<SearchReport> {
    check_range(x_lo, x_hi, MAX_COROLLARY_X, "|x| ((2x)⁶ − 1 must fit in 128 bits)")?;
    let start = Instant::now();
    let merged = run_blocks(x_lo, x_hi, opts, corollary_block)?;
    Ok(SearchReport {
        kind: ScanKind::Corollary,
        x_lo,
        x_hi,
        counterexamples: merged.counterexamples,
        statistics: merged.statistics,
        tool_version: VERSION.to_string(),
        elapsed: start.elapsed(),
    })
}
