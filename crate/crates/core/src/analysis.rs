//! Run-law verification reports, partial sums `S_w(n)`, zero
//! densities and `max_no_cubes` estimates.
//!
//! Every report carries the word spec, horizon and minimum cube period it
//! was computed with, and renders both as JSON and as aligned text.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::automata::{compile_str, patterns, split_tail_lengths, AutomataError, Dfa};
use crate::repetitions::{cube_marks, CubeMarkSequence};
use crate::runlen::{census, runs_of, SymbolRun};
use crate::words::{fibonacci_prefix, WordError, WordSpec};
use crate::zeckendorf::{fib_number, zeck_encode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("checkpoints must be positive and strictly ascending")]
    BadCheckpoints,
    #[error("invalid range: {0}")]
    BadRange(String),
}

/// Cube marks of the first `horizon` symbols of `spec`.
pub fn marks_for(
    spec: &WordSpec,
    horizon: usize,
    min_period: usize,
) -> Result<CubeMarkSequence, WordError> {
    Ok(cube_marks(&spec.prefix(horizon)?, min_period))
}

fn check_ascending(checkpoints: &[usize]) -> Result<(), AnalysisError> {
    if checkpoints.first() == Some(&0) || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AnalysisError::BadCheckpoints);
    }
    Ok(())
}

/// Prefix sums of a 0/1 sequence: `out[n]` = number of ones in `bits[..n]`.
fn prefix_ones(bits: &[u8]) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.len() + 1);
    out.push(0);
    let mut acc = 0;
    for &b in bits {
        acc += b as usize;
        out.push(acc);
    }
    out
}

// ---------------------------------------------------------------------------
// Partial sums and comparisons
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSumRow {
    pub n: usize,
    #[serde(rename = "S")]
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSumTable {
    pub word: String,
    pub horizon: usize,
    pub min_period: usize,
    pub rows: Vec<PartialSumRow>,
}

/// `S_w(n)` (cube-ending positions `< n`) at each checkpoint.
pub fn partial_sums(
    spec: &WordSpec,
    checkpoints: &[usize],
    min_period: usize,
) -> Result<PartialSumTable, AnalysisError> {
    check_ascending(checkpoints)?;
    let horizon = checkpoints.last().copied().unwrap_or(0);
    let marks = marks_for(spec, horizon, min_period)?;
    let sums = prefix_ones(&marks.bits);
    Ok(PartialSumTable {
        word: spec.to_string(),
        horizon,
        min_period,
        rows: checkpoints
            .iter()
            .map(|&n| PartialSumRow { n, s: sums[n] })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumComparison {
    pub word_a: String,
    pub word_b: String,
    pub n_lo: usize,
    pub n_hi: usize,
    pub min_period: usize,
    pub greater: usize,
    pub equal: usize,
    pub less: usize,
    /// `S_a(n) > S_b(n)` at every `n` in range.
    pub strict_dominance: bool,
    /// Points where `S_a(n) ≤ S_b(n)`, as `(n, S_a, S_b)`.
    pub exceptions: Vec<(usize, usize, usize)>,
    /// Every point, as `(n, S_a, S_b)`.
    pub rows: Vec<(usize, usize, usize)>,
}

/// Sign of `S_a(n) − S_b(n)` for every `n` in `[n_lo, n_hi]`.
pub fn compare_sums(
    a: &WordSpec,
    b: &WordSpec,
    n_lo: usize,
    n_hi: usize,
    min_period: usize,
) -> Result<SumComparison, AnalysisError> {
    if n_lo < 1 || n_lo > n_hi {
        return Err(AnalysisError::BadRange(format!(
            "need 1 <= n_lo <= n_hi, got {n_lo}..{n_hi}"
        )));
    }
    let sa = prefix_ones(&marks_for(a, n_hi, min_period)?.bits);
    let sb = prefix_ones(&marks_for(b, n_hi, min_period)?.bits);
    let rows: Vec<(usize, usize, usize)> = (n_lo..=n_hi).map(|n| (n, sa[n], sb[n])).collect();
    let greater = rows.iter().filter(|r| r.1 > r.2).count();
    let equal = rows.iter().filter(|r| r.1 == r.2).count();
    let exceptions: Vec<_> = rows.iter().filter(|r| r.1 <= r.2).copied().collect();
    Ok(SumComparison {
        word_a: a.to_string(),
        word_b: b.to_string(),
        n_lo,
        n_hi,
        min_period,
        greater,
        equal,
        less: rows.len() - greater - equal,
        strict_dominance: exceptions.is_empty(),
        exceptions,
        rows,
    })
}

// ---------------------------------------------------------------------------
// Density and max_no_cubes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    pub n: usize,
    pub zeros: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub word: String,
    pub horizon: usize,
    pub min_period: usize,
    pub rows: Vec<DensityRow>,
}

/// `Z(n) = n − S_w(n)` and `Z(n)/n` at each checkpoint.
pub fn density_report(
    spec: &WordSpec,
    checkpoints: &[usize],
    min_period: usize,
) -> Result<DensityReport, AnalysisError> {
    let sums = partial_sums(spec, checkpoints, min_period)?;
    Ok(DensityReport {
        word: sums.word,
        horizon: sums.horizon,
        min_period,
        rows: sums
            .rows
            .iter()
            .map(|r| DensityRow {
                n: r.n,
                zeros: r.n - r.s,
                fraction: (r.n - r.s) as f64 / r.n as f64,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxNoCubesEstimate {
    pub word: String,
    pub horizon: usize,
    pub burn_in: usize,
    pub min_period: usize,
    pub recurrence_threshold: usize,
    /// Complete 0-run lengths past `burn_in` with their counts.
    pub census: BTreeMap<usize, usize>,
    /// Lengths seen at least `recurrence_threshold` times.
    pub recurring: Vec<usize>,
    pub estimate: Option<usize>,
    /// Always set: "infinitely many" is extrapolated from a finite horizon.
    pub conjecture: bool,
}

pub fn max_no_cubes_estimate(
    spec: &WordSpec,
    horizon: usize,
    burn_in: usize,
    recurrence_threshold: usize,
    min_period: usize,
) -> Result<MaxNoCubesEstimate, AnalysisError> {
    if horizon <= burn_in {
        return Err(AnalysisError::BadRange(format!(
            "horizon {horizon} must exceed burn-in {burn_in}"
        )));
    }
    if recurrence_threshold < 2 {
        return Err(AnalysisError::BadRange(
            "recurrence threshold must be at least 2".into(),
        ));
    }
    let marks = marks_for(spec, horizon, min_period)?;
    let c = census(&marks.bits, 0, burn_in);
    let recurring: Vec<usize> = c
        .counts
        .iter()
        .filter(|(_, &n)| n >= recurrence_threshold)
        .map(|(&len, _)| len)
        .collect();
    Ok(MaxNoCubesEstimate {
        word: spec.to_string(),
        horizon,
        burn_in,
        min_period,
        recurrence_threshold,
        estimate: recurring.last().copied(),
        recurring,
        census: c.counts,
        conjecture: true,
    })
}

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Offending positions or values, capped for readability.
    pub counterexamples: Vec<String>,
}

const MAX_COUNTEREXAMPLES: usize = 20;

impl Check {
    fn new(name: &str, counterexamples: Vec<String>, detail: String) -> Self {
        let mut counterexamples = counterexamples;
        counterexamples.truncate(MAX_COUNTEREXAMPLES);
        Check {
            name: name.to_string(),
            passed: counterexamples.is_empty(),
            detail,
            counterexamples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub word: String,
    pub horizon: usize,
    pub min_period: usize,
    pub checks: Vec<Check>,
    /// Facts gathered along the way (first runs, counts) that are not
    /// pass/fail themselves.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Compiled patterns used by the theorem checks.
struct Patterns {
    one_run: Dfa,
    head: Dfa,
    w: Dfa,
    zero8: Dfa,
    zero7: Dfa,
}

impl Patterns {
    fn new() -> Self {
        let c = |p: &str| compile_str(p).expect("built-in pattern parses");
        Patterns {
            one_run: c(patterns::ONE_RUN_START),
            head: c(patterns::ONE_RUN_HEAD),
            w: c(patterns::ONE_RUN_TAIL),
            zero8: c(patterns::ZERO_RUN_8),
            zero7: c(patterns::ZERO_RUN_7),
        }
    }
}

/// Run length predicted from `|w|`: `F_{2n+2} − 1` when `|w| = 2n`,
/// `F_{2n+3} − 1` when `|w| = 2n + 1`. Both cases are `F_{|w|+2} − 1`.
pub fn one_run_length(w_len: usize) -> u64 {
    fib_number::<u64>(w_len + 2).expect("index is positive") - 1
}

fn fib_word_marks(horizon: usize, min_period: usize) -> Vec<u8> {
    cube_marks(&fibonacci_prefix(horizon), min_period).bits
}

fn zeck_string(n: usize) -> String {
    zeck_encode(&(n as u64)).to_string()
}

/// Runs of 1's in `cubes_f`: pattern membership of every start, the length
/// law in terms of `|w|`, and the converse direction.
pub fn verify_theorem1(horizon: usize) -> Result<VerificationReport, AnalysisError> {
    verify_theorem1_on_marks(&fib_word_marks(horizon, 1), 1)
}

/// [`verify_theorem1`] on a caller-supplied mark sequence (used to check
/// that corrupted marks are reported).
pub fn verify_theorem1_on_marks(
    bits: &[u8],
    min_period: usize,
) -> Result<VerificationReport, AnalysisError> {
    let horizon = bits.len();
    let pats = Patterns::new();
    let ones: Vec<SymbolRun> = runs_of(bits, 1)
        .into_iter()
        .filter(|r| r.complete)
        .collect();

    let mut not_matching = Vec::new();
    let mut ambiguous = Vec::new();
    let mut wrong_length = Vec::new();
    let mut empty_w = Vec::new();
    let mut verified: Vec<(usize, usize, usize)> = Vec::new();
    for run in &ones {
        let z = zeck_encode(&(run.start as u64));
        if !pats.one_run.accepts_bits(z.digits()) {
            not_matching.push(format!("start {} ({})", run.start, z));
            continue;
        }
        let splits = split_tail_lengths(&pats.head, &pats.w, z.digits());
        if splits.contains(&0) {
            empty_w.push(format!("start {} ({})", run.start, z));
        }
        let [w_len] = splits[..] else {
            ambiguous.push(format!("start {} ({}): |w| in {:?}", run.start, z, splits));
            continue;
        };
        let predicted = one_run_length(w_len);
        if predicted != run.length as u64 {
            wrong_length.push(format!(
                "start {} ({}): |w| = {}, predicted {}, observed {}",
                run.start, z, w_len, predicted, run.length
            ));
        } else {
            verified.push((run.start, run.length, w_len));
        }
    }

    // converse: every accepted start whose predicted run fits in the horizon
    let by_start: HashMap<usize, &SymbolRun> = ones.iter().map(|r| (r.start, r)).collect();
    let mut missing = Vec::new();
    let mut accepted_in_range = 0usize;
    for i in pats.one_run.accepted_integers(horizon as u64)? {
        let i = i as usize;
        let z = zeck_encode(&(i as u64));
        let splits = split_tail_lengths(&pats.head, &pats.w, z.digits());
        let Some(&w_len) = splits.first() else {
            continue;
        };
        let predicted = one_run_length(w_len) as usize;
        if i + predicted >= horizon {
            continue;
        }
        accepted_in_range += 1;
        match by_start.get(&i) {
            Some(run) if run.length == predicted => {}
            Some(run) => missing.push(format!(
                "{i} ({z}): run of length {} instead of {predicted}",
                run.length
            )),
            None => missing.push(format!("{i} ({z}): no run of 1's starts here")),
        }
    }

    let checks = vec![
        Check::new(
            "1-run starts match the pattern",
            not_matching,
            format!("{} complete runs of 1's checked", ones.len()),
        ),
        Check::new(
            "w is determined by the start",
            ambiguous,
            "exactly one split into head and w".into(),
        ),
        Check::new(
            "w is never empty",
            empty_w,
            "w ∈ 0(10)*(ε+1) has length ≥ 1".into(),
        ),
        Check::new(
            "run length follows |w|",
            wrong_length,
            "F_{2n+2}-1 for |w| = 2n, F_{2n+3}-1 for |w| = 2n+1".into(),
        ),
        Check::new(
            "every accepted start is a 1-run start",
            missing,
            format!("{accepted_in_range} accepted starts with complete runs"),
        ),
    ];
    let mut notes: Vec<String> = verified
        .iter()
        .take(5)
        .map(|(s, l, w)| {
            format!(
                "run of 1's at {s} ({}) with |w| = {w}, length {l}",
                zeck_string(*s)
            )
        })
        .collect();
    if let Some(longest) = ones.iter().max_by_key(|r| r.length) {
        notes.push(format!(
            "longest complete run of 1's: length {} at {}",
            longest.length, longest.start
        ));
    }
    Ok(VerificationReport {
        name: "thm1".into(),
        word: WordSpec::Fibonacci.to_string(),
        horizon,
        min_period,
        checks,
        notes,
    })
}

/// Allowed complete 0-run lengths in `cubes_f`.
pub const ZERO_RUN_LENGTHS: [usize; 6] = [1, 2, 3, 7, 8, 13];

/// Minimum number of complete 0-runs of `length` expected past position 14
/// within `horizon`.
///
/// The counts grow roughly logarithmically. On a 10^6-symbol scan the
/// sparsest lengths (7 and 8) occur 4/5 times by 10^3, 6/7 by 10^4, 9/9 by
/// 10^5 and 11/12 by 10^6, so 5 is demanded from 10^4 on and 1 below that.
pub fn zero_run_min_count(length: usize, horizon: usize) -> usize {
    if ![1, 2, 3, 7, 8].contains(&length) {
        return 0;
    }
    if horizon >= 10_000 {
        5
    } else {
        1
    }
}

/// Runs of 0's in `cubes_f`: the length set, the unique initial run of 13,
/// recurrence of the other lengths, and the start patterns for 7 and 8.
pub fn verify_theorem2(horizon: usize) -> Result<VerificationReport, AnalysisError> {
    verify_theorem2_on_marks(&fib_word_marks(horizon, 1), 1)
}

pub fn verify_theorem2_on_marks(
    bits: &[u8],
    min_period: usize,
) -> Result<VerificationReport, AnalysisError> {
    let horizon = bits.len();
    let zeros: Vec<SymbolRun> = runs_of(bits, 0)
        .into_iter()
        .filter(|r| r.complete)
        .collect();

    let unexpected: Vec<String> = zeros
        .iter()
        .filter(|r| !ZERO_RUN_LENGTHS.contains(&r.length))
        .map(|r| format!("length {} at {}", r.length, r.start))
        .collect();
    let thirteen: Vec<usize> = zeros
        .iter()
        .filter(|r| r.length == 13)
        .map(|r| r.start)
        .collect();
    let thirteen_bad = if thirteen == [0] {
        Vec::new()
    } else {
        vec![format!("runs of length 13 at {thirteen:?}")]
    };

    let later = census(bits, 0, 14);
    let mut sparse = Vec::new();
    let mut counts = Vec::new();
    for len in [1, 2, 3, 7, 8] {
        let need = zero_run_min_count(len, horizon);
        let got = later.count(len);
        counts.push(format!("{len}: {got}"));
        if got < need {
            sparse.push(format!(
                "length {len}: {got} runs, expected at least {need}"
            ));
        }
    }

    let mut checks = vec![
        Check::new(
            "0-run lengths within {1,2,3,7,8,13}",
            unexpected,
            format!("{} complete runs of 0's", zeros.len()),
        ),
        Check::new(
            "single run of length 13, at position 0",
            thirteen_bad,
            "the initial block".into(),
        ),
        Check::new(
            "lengths 1,2,3,7,8 recur past position 14",
            sparse,
            format!("counts past burn-in 14: {}", counts.join(", ")),
        ),
    ];
    checks.extend(run_start_checks(bits)?);
    Ok(VerificationReport {
        name: "thm2".into(),
        word: WordSpec::Fibonacci.to_string(),
        horizon,
        min_period,
        checks,
        notes: vec!["recurrence counts are evidence for \"infinitely many\", not a proof".into()],
    })
}

/// Starts of 0-runs of lengths 8 and 7 against `(10)^+0001` and
/// `(10)^+01001`, in both directions.
pub fn verify_run_starts(horizon: usize) -> Result<VerificationReport, AnalysisError> {
    let bits = fib_word_marks(horizon, 1);
    let checks = run_start_checks(&bits)?;
    let first8 = first_starts(&bits, 8, 5);
    let first7 = first_starts(&bits, 7, 5);
    Ok(VerificationReport {
        name: "runstarts".into(),
        word: WordSpec::Fibonacci.to_string(),
        horizon,
        min_period: 1,
        checks,
        notes: vec![
            format!("first length-8 starts: {first8:?}"),
            format!("first length-7 starts: {first7:?}"),
        ],
    })
}

fn first_starts(bits: &[u8], length: usize, k: usize) -> Vec<usize> {
    runs_of(bits, 0)
        .into_iter()
        .filter(|r| r.complete && r.length == length)
        .map(|r| r.start)
        .take(k)
        .collect()
}

fn run_start_checks(bits: &[u8]) -> Result<Vec<Check>, AnalysisError> {
    let pats = Patterns::new();
    let horizon = bits.len();
    let zeros: Vec<SymbolRun> = runs_of(bits, 0)
        .into_iter()
        .filter(|r| r.complete)
        .collect();
    let by_start: HashMap<usize, usize> = zeros.iter().map(|r| (r.start, r.length)).collect();
    let mut checks = Vec::new();
    for (length, dfa, pattern) in [
        (8, &pats.zero8, patterns::ZERO_RUN_8),
        (7, &pats.zero7, patterns::ZERO_RUN_7),
    ] {
        let forward: Vec<String> = zeros
            .iter()
            .filter(|r| r.length == length)
            .filter(|r| !dfa.accepts_bits(zeck_encode(&(r.start as u64)).digits()))
            .map(|r| format!("{} ({})", r.start, zeck_string(r.start)))
            .collect();
        let accepted = dfa.accepted_integers(horizon as u64)?;
        let mut backward = Vec::new();
        let mut in_range = 0;
        for i in accepted.into_iter().map(|i| i as usize) {
            if i + length >= horizon {
                continue;
            }
            in_range += 1;
            match by_start.get(&i) {
                Some(&l) if l == length => {}
                Some(&l) => backward.push(format!("{i}: run of length {l}")),
                None => backward.push(format!("{i}: no run of 0's starts here")),
            }
        }
        let seen = zeros.iter().filter(|r| r.length == length).count();
        checks.push(Check::new(
            &format!("length-{length} starts match {pattern}"),
            forward,
            format!("{seen} runs of length {length}"),
        ));
        checks.push(Check::new(
            &format!("every {pattern} start has a length-{length} run"),
            backward,
            format!("{in_range} accepted starts with complete runs"),
        ));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

/// Renders rows as left-aligned columns separated by two spaces.
pub fn render_columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verify {}  word={}  horizon={}  min_period={}",
            self.name, self.word, self.horizon, self.min_period
        );
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    if c.passed { "PASS" } else { "FAIL" }.to_string(),
                    c.name.clone(),
                    c.detail.clone(),
                ]
            })
            .collect();
        out.push_str(&render_columns(&["status", "check", "detail"], &rows));
        for c in self.failing() {
            for ce in &c.counterexamples {
                let _ = writeln!(out, "  counterexample [{}]: {ce}", c.name);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

impl PartialSumTable {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "sums  word={}  horizon={}  min_period={}\n",
            self.word, self.horizon, self.min_period
        );
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| vec![r.n.to_string(), r.s.to_string()])
            .collect();
        out.push_str(&render_columns(&["n", "S"], &rows));
        out
    }
}

impl DensityReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "density  word={}  horizon={}  min_period={}\n",
            self.word, self.horizon, self.min_period
        );
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.zeros.to_string(),
                    format!("{:.6}", r.fraction),
                ]
            })
            .collect();
        out.push_str(&render_columns(&["n", "Z", "Z/n"], &rows));
        out
    }
}

impl SumComparison {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "compare  a={}  b={}  n={}..{}  min_period={}\n",
            self.word_a, self.word_b, self.n_lo, self.n_hi, self.min_period
        );
        let _ = writeln!(
            out,
            "S_a > S_b at {} points, equal at {}, less at {}",
            self.greater, self.equal, self.less
        );
        let _ = writeln!(
            out,
            "strict dominance: {}",
            if self.strict_dominance { "yes" } else { "no" }
        );
        let shown: Vec<Vec<String>> = self
            .exceptions
            .iter()
            .take(MAX_COUNTEREXAMPLES)
            .map(|&(n, a, b)| vec![n.to_string(), a.to_string(), b.to_string()])
            .collect();
        if !shown.is_empty() {
            out.push_str("exceptions:\n");
            out.push_str(&render_columns(&["n", "S_a", "S_b"], &shown));
        }
        out
    }
}

impl MaxNoCubesEstimate {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "maxnocubes  word={}  horizon={}  burn_in={}  min_period={}  threshold={}\n",
            self.word, self.horizon, self.burn_in, self.min_period, self.recurrence_threshold
        );
        let rows: Vec<Vec<String>> = self
            .census
            .iter()
            .map(|(l, c)| {
                vec![
                    l.to_string(),
                    c.to_string(),
                    if *c >= self.recurrence_threshold {
                        "yes"
                    } else {
                        "no"
                    }
                    .to_string(),
                ]
            })
            .collect();
        out.push_str(&render_columns(&["length", "count", "recurring"], &rows));
        let _ = writeln!(
            out,
            "estimate: {} (conjecture from a finite horizon)",
            self.estimate.map_or("none".to_string(), |e| e.to_string())
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_law() {
        assert_eq!(one_run_length(1), 1);
        assert_eq!(one_run_length(2), 2);
        assert_eq!(one_run_length(3), 4);
        assert_eq!(one_run_length(4), 7);
        assert_eq!(one_run_length(5), 12);
    }

    #[test]
    fn checkpoint_validation() {
        let fib = WordSpec::Fibonacci;
        assert_eq!(
            partial_sums(&fib, &[0, 5], 1),
            Err(AnalysisError::BadCheckpoints)
        );
        assert_eq!(
            partial_sums(&fib, &[5, 5], 1),
            Err(AnalysisError::BadCheckpoints)
        );
        assert_eq!(partial_sums(&fib, &[1], 1).unwrap().rows[0].s, 0);
        assert!(compare_sums(&fib, &fib, 0, 5, 1).is_err());
        assert!(max_no_cubes_estimate(&fib, 10, 10, 5, 1).is_err());
        assert!(max_no_cubes_estimate(&fib, 100, 10, 1, 1).is_err());
    }

    #[test]
    fn columns_align() {
        let text = render_columns(
            &["n", "S"],
            &[
                vec!["500".into(), "353".into()],
                vec!["3000".into(), "2669".into()],
            ],
        );
        assert_eq!(text, "n     S\n500   353\n3000  2669\n");
    }

    #[test]
    fn min_count_table() {
        assert_eq!(zero_run_min_count(1, 1_000_000), 5);
        assert_eq!(zero_run_min_count(8, 100), 1);
        assert_eq!(zero_run_min_count(13, 1_000_000), 0);
    }
}
