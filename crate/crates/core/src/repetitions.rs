//! Maximal repetitions (runs), cube-ending marks and critical exponents.
//!
//! Runs are found by divide and conquer: every run of the whole word lies
//! inside exactly one recursion segment whose midpoint it straddles, and the
//! runs straddling a midpoint are recovered from four Z-function passes over
//! that segment. Total cost is `O(L log L)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::Serialize;

use crate::num::QuadraticIrrational;
use crate::words::Prefix;

/// A maximal repetition `symbols[start..=end]` with minimal period `period`
/// and exponent at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RepetitionRun {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl RepetitionRun {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exponent(&self) -> Ratio<u64> {
        Ratio::new(self.len() as u64, self.period as u64)
    }
}

/// Z-array: `z[i]` is the length of the longest common prefix of `s` and
/// `s[i..]`, with `z[0] = s.len()`.
pub(crate) fn z_function(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

const SEPARATOR: u8 = u8::MAX;

/// Z-array of `pattern ++ [SEPARATOR] ++ text`, returning only the text part:
/// entry `i` is `lcp(pattern, text[i..])`.
fn z_against(pattern: &[u8], text: &[u8]) -> Vec<usize> {
    let mut buf = Vec::with_capacity(pattern.len() + 1 + text.len());
    buf.extend_from_slice(pattern);
    buf.push(SEPARATOR);
    buf.extend_from_slice(text);
    let mut z = z_function(&buf);
    z.drain(..=pattern.len());
    z
}

fn is_globally_maximal(s: &[u8], start: usize, end: usize, p: usize) -> bool {
    let left_ok = start == 0 || s[start - 1] != s[start - 1 + p];
    let right_ok = end + 1 == s.len() || s[end + 1] != s[end + 1 - p];
    left_ok && right_ok
}

/// Collects maximal `p`-periodic intervals of `s` that lie in `[l, r)` and
/// contain both `mid − 1` and `mid`.
fn crossing_runs(s: &[u8], l: usize, mid: usize, r: usize, out: &mut Vec<RepetitionRun>) {
    let left = &s[l..mid];
    let right = &s[mid..r];
    let left_rev: Vec<u8> = left.iter().rev().copied().collect();
    let seg_rev: Vec<u8> = s[l..r].iter().rev().copied().collect();

    // lcp(s[mid..r), s[mid+p..r))
    let z_right = z_function(right);
    // lcp(s[mid..r), s[i..r)) for i in [l, r)
    let z_seg_vs_right = z_against(right, &s[l..r]);
    // common suffix of s[l..mid) and s[l..mid−p)
    let z_left_rev = z_function(&left_rev);
    // common suffix of s[l..mid) and s[l..mid+p)
    let z_left_vs_seg_rev = z_against(&left_rev, &seg_rev);

    let mut push = |start: usize, end: usize, p: usize| {
        if is_globally_maximal(s, start, end, p) {
            out.push(RepetitionRun {
                start,
                end,
                period: p,
            });
        }
    };

    let seg_len = r - l;
    for p in 1..=seg_len / 2 {
        // Anchor j = mid − p: run reaches at least p symbols left of mid.
        if mid >= l + p {
            let fwd = z_seg_vs_right[mid - p - l];
            let back = z_left_rev.get(p).copied().unwrap_or(0);
            if fwd >= 1 && back + fwd >= p {
                push(mid - p - back, mid + fwd - 1, p);
            }
        }
        // Anchor j = mid: run starts fewer than p symbols left of mid.
        if mid + p < r {
            let fwd = z_right[p];
            // seg_rev index of position mid+p−1 is r−mid−p
            let back = z_left_vs_seg_rev[r - mid - p];
            if back >= 1 && back + fwd >= p {
                push(mid - back, mid + fwd - 1 + p, p);
            }
        }
    }
}

fn collect_runs(s: &[u8], l: usize, r: usize, out: &mut Vec<RepetitionRun>) {
    if r - l < 2 {
        return;
    }
    let mid = l + (r - l) / 2;
    collect_runs(s, l, mid, out);
    collect_runs(s, mid, r, out);
    crossing_runs(s, l, mid, r, out);
}

/// All maximal repetitions of exponent ≥ 2, each once, with minimal period,
/// sorted by `(start, end)`.
pub fn find_runs(prefix: &Prefix) -> Vec<RepetitionRun> {
    find_runs_in(prefix.symbols())
}

pub fn find_runs_in(s: &[u8]) -> Vec<RepetitionRun> {
    let mut runs = Vec::new();
    collect_runs(s, 0, s.len(), &mut runs);
    // a run found with a non-minimal period p is the same interval as the
    // run of its minimal period (which divides p); keep the smallest.
    runs.sort_unstable();
    runs.dedup_by(|later, earlier| later.start == earlier.start && later.end == earlier.end);
    runs
}

/// `cubes_w` over a finite horizon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeMarkSequence {
    pub bits: Vec<u8>,
    pub min_period: usize,
}

impl CubeMarkSequence {
    pub fn horizon(&self) -> usize {
        self.bits.len()
    }

    /// Number of cube-ending positions `< n`.
    pub fn ones_before(&self, n: usize) -> usize {
        self.bits[..n.min(self.bits.len())]
            .iter()
            .filter(|&&b| b == 1)
            .count()
    }
}

/// Marks every position where a cube of period `≥ min_period` ends.
pub fn cube_marks(prefix: &Prefix, min_period: usize) -> CubeMarkSequence {
    cube_marks_from_runs(prefix.len(), &find_runs(prefix), min_period)
}

pub fn cube_marks_from_runs(
    horizon: usize,
    runs: &[RepetitionRun],
    min_period: usize,
) -> CubeMarkSequence {
    assert!(min_period >= 1, "min_period must be at least 1");
    // delta[j] counts marking intervals opening at j minus those closing.
    let mut delta = vec![0i64; horizon + 1];
    for run in runs {
        // smallest multiple of the root period that is an admissible cube period
        let q = run.period * min_period.div_ceil(run.period);
        let first_end = run.start + 3 * q - 1;
        if first_end <= run.end {
            delta[first_end] += 1;
            delta[run.end + 1] -= 1;
        }
    }
    let mut bits = Vec::with_capacity(horizon);
    let mut open = 0i64;
    for &d in &delta[..horizon] {
        open += d;
        bits.push(u8::from(open > 0));
    }
    CubeMarkSequence { bits, min_period }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("position {index} is outside the prefix of length {len}")]
pub struct IndexOutOfRange {
    pub index: usize,
    pub len: usize,
}

/// Reference semantics for a single position: is there `i ≥ 0` and
/// `n ≥ min_period` with `j = i + 3n − 1` and
/// `symbols[i+k] = symbols[i+k+n]` for all `k < 2n`?
pub fn brute_cube_ends(
    prefix: &Prefix,
    j: usize,
    min_period: usize,
) -> Result<bool, IndexOutOfRange> {
    let s = prefix.symbols();
    if j >= s.len() {
        return Err(IndexOutOfRange {
            index: j,
            len: s.len(),
        });
    }
    let found = (min_period.max(1)..=(j + 1) / 3).any(|n| {
        let i = j + 1 - 3 * n;
        (0..2 * n).all(|k| s[i + k] == s[i + k + n])
    });
    Ok(found)
}

/// Largest exponent among the runs of the prefix, or 1 when there are none.
pub fn max_exponent(prefix: &Prefix) -> Ratio<u64> {
    max_exponent_of(&find_runs(prefix))
}

pub fn max_exponent_of(runs: &[RepetitionRun]) -> Ratio<u64> {
    runs.iter()
        .map(RepetitionRun::exponent)
        .max()
        .unwrap_or_else(|| Ratio::from_integer(1))
}

/// The golden ratio and the thresholds derived from it, held as exact
/// elements of `Q(√5)`.
#[derive(Debug, Clone)]
pub struct GoldenConstants {
    pub phi: QuadraticIrrational<BigInt>,
    pub phi_squared: QuadraticIrrational<BigInt>,
    pub two_plus_phi: QuadraticIrrational<BigInt>,
}

impl Default for GoldenConstants {
    fn default() -> Self {
        let q = |p: i64, r: i64| {
            QuadraticIrrational::new(p.into(), 1.into(), 5.into(), r.into())
                .expect("sqrt(5) is irrational")
        };
        GoldenConstants {
            phi: q(1, 2),
            phi_squared: q(3, 2),
            two_plus_phi: q(5, 2),
        }
    }
}

impl GoldenConstants {
    /// Exact comparison of a rational exponent against `2 + φ`.
    pub fn cmp_two_plus_phi(&self, x: &Ratio<u64>) -> Ordering {
        self.two_plus_phi.cmp_ratio(&to_big(x)).reverse()
    }

    /// Exact comparison of a rational exponent against `φ²`.
    pub fn cmp_phi_squared(&self, x: &Ratio<u64>) -> Ordering {
        self.phi_squared.cmp_ratio(&to_big(x)).reverse()
    }
}

fn to_big(x: &Ratio<u64>) -> Ratio<BigInt> {
    Ratio::new((*x.numer()).into(), (*x.denom()).into())
}
