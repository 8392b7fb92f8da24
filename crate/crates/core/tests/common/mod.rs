//! Naive reference implementations and seeded word samplers shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cubewalk_core::words::slope;
use cubewalk_core::WordSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cube-ending test straight from the definition: some `xxx` with
/// `|x| >= min_period` occupies `[j - 3|x| + 1, j]`.
pub fn naive_cube_ends(s: &[u8], j: usize, min_period: usize) -> bool {
    (min_period..=(j + 1) / 3).any(|n| {
        let x = &s[j + 1 - 3 * n..j + 1 - 2 * n];
        s[j + 1 - 2 * n..j + 1 - n] == *x && s[j + 1 - n..=j] == *x
    })
}

pub fn naive_marks(s: &[u8], min_period: usize) -> Vec<u8> {
    (0..s.len())
        .map(|j| u8::from(naive_cube_ends(s, j, min_period)))
        .collect()
}

fn has_period(s: &[u8], p: usize) -> bool {
    (p..s.len()).all(|k| s[k] == s[k - p])
}

fn minimal_period(s: &[u8]) -> usize {
    (1..=s.len()).find(|&p| has_period(s, p)).unwrap()
}

/// Every maximal repetition as `(start, end inclusive, minimal period)`,
/// by exhaustive search over all factors. Cubic; only for short strings.
pub fn naive_runs(s: &[u8]) -> BTreeSet<(usize, usize, usize)> {
    let n = s.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let f = &s[i..=j];
            let p = minimal_period(f);
            if 2 * p > f.len() {
                continue;
            }
            let left_ok = i == 0 || s[i - 1] != s[i - 1 + p];
            let right_ok = j + 1 == n || s[j + 1] != s[j + 1 - p];
            if left_ok && right_ok {
                out.insert((i, j, p));
            }
        }
    }
    out
}

fn is_square(d: i64) -> bool {
    let r = (d as f64).sqrt().round() as i64;
    r * r == d
}

/// `count` characteristic Sturmian specs with random quadratic slopes in
/// (0, 1), reproducible from `seed`.
pub fn random_slopes(seed: u64, count: usize) -> Vec<WordSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d = rng.gen_range(2..300i64);
        if is_square(d) {
            continue;
        }
        let q = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..4i64);
        let r = rng.gen_range(2..60i64);
        let p = rng.gen_range(-60..60i64);
        let Ok(s) = slope(p, q, d, r) else { continue };
        let spec = WordSpec::SturmianSlope(s);
        if spec.validate().is_ok() {
            out.push(spec);
        }
    }
    out
}

/// The fixed specs every cross-check runs on.
pub fn named_specs() -> Vec<WordSpec> {
    vec![
        WordSpec::Fibonacci,
        WordSpec::beta_cf(),
        WordSpec::morphic_x(),
        WordSpec::Doubling,
    ]
}
