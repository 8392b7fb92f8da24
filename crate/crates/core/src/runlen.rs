//! Maximal blocks of equal symbols in a finite binary sequence.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymbolRun {
    pub symbol: u8,
    pub start: usize,
    pub length: usize,
    /// `false` when the run touches the end of the horizon, so its true
    /// length is unknown.
    pub complete: bool,
}

impl SymbolRun {
    pub fn end(&self) -> usize {
        self.start + self.length
    }
}

/// All maximal runs of `symbol`, in order.
pub fn runs_of(bits: &[u8], symbol: u8) -> Vec<SymbolRun> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < bits.len() {
        if bits[i] != symbol {
            i += 1;
            continue;
        }
        let start = i;
        while i < bits.len() && bits[i] == symbol {
            i += 1;
        }
        out.push(SymbolRun {
            symbol,
            start,
            length: i - start,
            complete: i < bits.len(),
        });
    }
    out
}

/// Run length → number of runs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RunCensus {
    pub symbol: u8,
    pub burn_in: usize,
    pub include_incomplete: bool,
    pub counts: BTreeMap<usize, usize>,
}

impl RunCensus {
    pub fn count(&self, length: usize) -> usize {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied()
    }

    pub fn total_runs(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Census of complete runs starting at or after `burn_in`.
pub fn census(bits: &[u8], symbol: u8, burn_in: usize) -> RunCensus {
    census_with(bits, symbol, burn_in, false)
}

/// Like [`census`]; with `include_incomplete` the run touching the horizon
/// is counted too (diagnostics only).
pub fn census_with(bits: &[u8], symbol: u8, burn_in: usize, include_incomplete: bool) -> RunCensus {
    let mut counts = BTreeMap::new();
    for run in runs_of(bits, symbol) {
        if run.start >= burn_in && (run.complete || include_incomplete) {
            *counts.entry(run.length).or_insert(0) += 1;
        }
    }
    RunCensus {
        symbol,
        burn_in,
        include_incomplete,
        counts,
    }
}
