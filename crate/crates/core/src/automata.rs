//! Regular patterns over `{0,1}` compiled to minimal complete DFAs, with
//! length-indexed counting and growth classification.
//!
//! Pattern syntax: `0`, `1`, `ε` (or `()`), juxtaposition for
//! concatenation, `+` for alternation, postfix `*`/`^*`, `^+` and `?`,
//! parentheses for grouping. Whitespace is ignored. `(0+10)` is
//! `0 | 10`, while `(10)^+` is one or more copies of `10`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::num::Natural;
use crate::zeckendorf::{zeck_encode, ZeckRepr};

/// Zeckendorf-string patterns for run starts in `cubes_f`.
pub mod patterns {
    /// Starts of runs of 1's in `cubes_f`: prefix part, then the `w` group.
    pub const ONE_RUN_HEAD: &str = "(10)^+0(0+10)(00)^*0";
    pub const ONE_RUN_TAIL: &str = "0(10)^*(ε+1)";
    pub const ONE_RUN_START: &str = "(10)^+0(0+10)(00)^*0 0(10)^*(ε+1)";
    /// Starts of runs of 0's of length 8.
    pub const ZERO_RUN_8: &str = "(10)^+0001";
    /// Starts of runs of 0's of length 7.
    pub const ZERO_RUN_7: &str = "(10)^+01001";
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomataError {
    #[error("pattern error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid symbol {found:?} at offset {offset}")]
    InvalidSymbol { offset: usize, found: char },
    #[error("accepted string {witness:?} is not a valid Zeckendorf representation")]
    InvalidLanguage { witness: String },
    #[error("count does not fit in the target integer type")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternExpr {
    Literal(u8),
    Epsilon,
    Concat(Vec<PatternExpr>),
    Union(Vec<PatternExpr>),
    Star(Box<PatternExpr>),
    Plus(Box<PatternExpr>),
    Optional(Box<PatternExpr>),
}

impl PatternExpr {
    fn precedence(&self) -> u8 {
        match self {
            PatternExpr::Union(v) if v.len() > 1 => 0,
            PatternExpr::Concat(v) if v.len() > 1 => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for PatternExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atom(e: &PatternExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                PatternExpr::Literal(_) | PatternExpr::Epsilon => write!(f, "{e}"),
                _ => write!(f, "({e})"),
            }
        }
        match self {
            PatternExpr::Literal(b) => write!(f, "{b}"),
            PatternExpr::Epsilon => f.write_str("ε"),
            PatternExpr::Concat(items) if items.is_empty() => f.write_str("ε"),
            PatternExpr::Union(items) if items.is_empty() => f.write_str("()"),
            PatternExpr::Concat(items) => {
                for e in items {
                    if e.precedence() < 1 {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            PatternExpr::Union(items) => {
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            PatternExpr::Star(e) => {
                atom(e, f)?;
                f.write_str("*")
            }
            PatternExpr::Plus(e) => {
                atom(e, f)?;
                f.write_str("^+")
            }
            PatternExpr::Optional(e) => {
                atom(e, f)?;
                f.write_str("?")
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn peek2(&self) -> Option<char> {
        self.chars.get(self.pos + 1).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or_else(|| self.src.len(), |&(o, _)| o)
    }

    fn error(&self, message: impl Into<String>) -> AutomataError {
        AutomataError::Parse {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn union(&mut self) -> Result<PatternExpr, AutomataError> {
        let mut alts = vec![self.concat()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            alts.push(self.concat()?);
        }
        Ok(if alts.len() == 1 {
            alts.pop().unwrap()
        } else {
            PatternExpr::Union(alts)
        })
    }

    fn concat(&mut self) -> Result<PatternExpr, AutomataError> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '+' || c == ')' {
                break;
            }
            items.push(self.postfix()?);
        }
        Ok(match items.len() {
            0 => PatternExpr::Epsilon,
            1 => items.pop().unwrap(),
            _ => PatternExpr::Concat(items),
        })
    }

    fn postfix(&mut self) -> Result<PatternExpr, AutomataError> {
        let mut e = self.atom()?;
        loop {
            match (self.peek(), self.peek2()) {
                (Some('*'), _) => {
                    self.pos += 1;
                    e = PatternExpr::Star(Box::new(e));
                }
                (Some('?'), _) => {
                    self.pos += 1;
                    e = PatternExpr::Optional(Box::new(e));
                }
                (Some('^'), Some('*')) => {
                    self.pos += 2;
                    e = PatternExpr::Star(Box::new(e));
                }
                (Some('^'), Some('+')) => {
                    self.pos += 2;
                    e = PatternExpr::Plus(Box::new(e));
                }
                (Some('^'), _) => {
                    self.pos += 1;
                    return Err(self.error("expected `*` or `+` after `^`"));
                }
                _ => return Ok(e),
            }
        }
    }

    fn atom(&mut self) -> Result<PatternExpr, AutomataError> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(PatternExpr::Literal(0))
            }
            Some('1') => {
                self.pos += 1;
                Ok(PatternExpr::Literal(1))
            }
            Some('ε') => {
                self.pos += 1;
                Ok(PatternExpr::Epsilon)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of pattern")),
        }
    }
}

impl FromStr for PatternExpr {
    type Err = AutomataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let e = p.union()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unbalanced `)`"));
        }
        Ok(e)
    }
}

// ---------------------------------------------------------------------------
// Thompson NFA
// ---------------------------------------------------------------------------

#[derive(Default)]
struct Nfa {
    eps: Vec<Vec<usize>>,
    sym: Vec<[Vec<usize>; 2]>,
}

impl Nfa {
    fn add_state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.sym.push([Vec::new(), Vec::new()]);
        self.eps.len() - 1
    }

    /// Returns (entry, exit) of the fragment for `e`.
    fn build(&mut self, e: &PatternExpr) -> (usize, usize) {
        match e {
            PatternExpr::Literal(b) => {
                let (s, t) = (self.add_state(), self.add_state());
                self.sym[s][*b as usize].push(t);
                (s, t)
            }
            PatternExpr::Epsilon => {
                let (s, t) = (self.add_state(), self.add_state());
                self.eps[s].push(t);
                (s, t)
            }
            PatternExpr::Concat(items) => {
                let (s, mut cur) = {
                    let s = self.add_state();
                    (s, s)
                };
                for item in items {
                    let (a, b) = self.build(item);
                    self.eps[cur].push(a);
                    cur = b;
                }
                (s, cur)
            }
            PatternExpr::Union(items) => {
                let (s, t) = (self.add_state(), self.add_state());
                for item in items {
                    let (a, b) = self.build(item);
                    self.eps[s].push(a);
                    self.eps[b].push(t);
                }
                (s, t)
            }
            PatternExpr::Star(inner) => {
                let (s, t) = (self.add_state(), self.add_state());
                let (a, b) = self.build(inner);
                self.eps[s].extend([a, t]);
                self.eps[b].extend([a, t]);
                (s, t)
            }
            PatternExpr::Plus(inner) => {
                let (s, t) = (self.add_state(), self.add_state());
                let (a, b) = self.build(inner);
                self.eps[s].push(a);
                self.eps[b].extend([a, t]);
                (s, t)
            }
            PatternExpr::Optional(inner) => {
                let (s, t) = (self.add_state(), self.add_state());
                let (a, b) = self.build(inner);
                self.eps[s].extend([a, t]);
                self.eps[b].push(t);
                (s, t)
            }
        }
    }

    fn closure(&self, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set = BTreeSet::new();
        let mut stack: Vec<usize> = seed.into_iter().collect();
        while let Some(q) = stack.pop() {
            if set.insert(q) {
                stack.extend(self.eps[q].iter().copied());
            }
        }
        set
    }
}

// ---------------------------------------------------------------------------
// DFA
// ---------------------------------------------------------------------------

/// Complete deterministic automaton over `{0,1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    trans: Vec<[usize; 2]>,
    initial: usize,
    accepting: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    Finite,
    Polynomial,
    Exponential,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthClass::Finite => "finite",
            GrowthClass::Polynomial => "polynomial",
            GrowthClass::Exponential => "exponential",
        })
    }
}

/// Compiles a pattern to a minimal complete DFA.
pub fn compile(pattern: &PatternExpr) -> Dfa {
    let mut nfa = Nfa::default();
    let (start, accept) = nfa.build(pattern);

    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
    let mut trans: Vec<[usize; 2]> = Vec::new();
    let init = nfa.closure([start]);
    index.insert(init.clone(), 0);
    subsets.push(init);
    trans.push([0, 0]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(d) = queue.pop_front() {
        for b in 0..2 {
            let moved: Vec<usize> = subsets[d]
                .iter()
                .flat_map(|&q| nfa.sym[q][b].iter().copied())
                .collect();
            let target = nfa.closure(moved);
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(target.clone(), id);
                    subsets.push(target);
                    trans.push([0, 0]);
                    queue.push_back(id);
                    id
                }
            };
            trans[d][b] = id;
        }
    }
    let accepting = subsets.iter().map(|s| s.contains(&accept)).collect();
    // the empty subset, if reached, is the dead state and is already total
    Dfa {
        trans,
        initial: 0,
        accepting,
    }
    .minimize()
}

/// Parses and compiles a pattern string.
pub fn compile_str(pattern: &str) -> Result<Dfa, AutomataError> {
    Ok(compile(&pattern.parse()?))
}

impl Dfa {
    /// Builds a DFA from raw parts; panics if a transition is out of range.
    pub fn from_parts(trans: Vec<[usize; 2]>, initial: usize, accepting: Vec<bool>) -> Self {
        let n = trans.len();
        assert!(initial < n && accepting.len() == n);
        assert!(trans.iter().flatten().all(|&t| t < n));
        Dfa {
            trans,
            initial,
            accepting,
        }
    }

    /// Nonempty strings with a leading 1 and no `11`.
    pub fn valid_zeckendorf() -> Self {
        // 0: start, 1: last digit 1, 2: last digit 0, 3: dead
        Dfa::from_parts(
            vec![[3, 1], [2, 3], [2, 1], [3, 3]],
            0,
            vec![false, true, true, false],
        )
    }

    pub fn empty_language() -> Self {
        Dfa::from_parts(vec![[0, 0]], 0, vec![false])
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn transition(&self, state: usize, symbol: u8) -> usize {
        self.trans[state][symbol as usize]
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn run(&self, symbols: &[u8]) -> usize {
        symbols
            .iter()
            .fold(self.initial, |q, &b| self.trans[q][b as usize])
    }

    pub fn accepts_bits(&self, symbols: &[u8]) -> bool {
        self.accepting[self.run(symbols)]
    }

    pub fn accepts(&self, s: &str) -> Result<bool, AutomataError> {
        let mut q = self.initial;
        for (offset, c) in s.chars().enumerate() {
            let b = match c {
                '0' => 0,
                '1' => 1,
                found => return Err(AutomataError::InvalidSymbol { offset, found }),
            };
            q = self.trans[q][b];
        }
        Ok(self.accepting[q])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.trans.len()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for &t in &self.trans[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.trans.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, ts) in self.trans.iter().enumerate() {
            for &t in ts {
                rev[t].push(q);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Moore partition refinement: class ids of each state at the fixed
    /// point, numbered in order of first appearance.
    fn equivalence_classes(&self) -> Vec<usize> {
        let mut class: Vec<usize> = self.accepting.iter().map(|&a| usize::from(a)).collect();
        let mut count = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
            let next: Vec<usize> = (0..self.trans.len())
                .map(|q| {
                    let sig = (class[q], class[self.trans[q][0]], class[self.trans[q][1]]);
                    let fresh = ids.len();
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            let next_count = ids.len();
            class = next;
            if next_count == count {
                return class;
            }
            count = next_count;
        }
    }

    /// `true` when all states are reachable and pairwise inequivalent.
    pub fn is_minimal(&self) -> bool {
        let classes = self.equivalence_classes();
        let distinct = classes.iter().collect::<BTreeSet<_>>().len();
        self.reachable().iter().all(|&r| r) && distinct == self.trans.len()
    }

    /// Equivalent minimal DFA, states numbered in breadth-first order from
    /// the initial state.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let keep: Vec<usize> = (0..self.trans.len()).filter(|&q| reach[q]).collect();
        let mut local = vec![usize::MAX; self.trans.len()];
        for (i, &q) in keep.iter().enumerate() {
            local[q] = i;
        }
        let trimmed = Dfa {
            trans: keep
                .iter()
                .map(|&q| [local[self.trans[q][0]], local[self.trans[q][1]]])
                .collect(),
            initial: local[self.initial],
            accepting: keep.iter().map(|&q| self.accepting[q]).collect(),
        };
        let class = trimmed.equivalence_classes();
        // BFS renumbering over classes
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut rep: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([trimmed.initial]);
        order.insert(class[trimmed.initial], 0);
        rep.push(trimmed.initial);
        while let Some(q) = queue.pop_front() {
            for &t in &trimmed.trans[q] {
                if let std::collections::hash_map::Entry::Vacant(v) = order.entry(class[t]) {
                    v.insert(rep.len());
                    rep.push(t);
                    queue.push_back(t);
                }
            }
        }
        Dfa {
            trans: rep
                .iter()
                .map(|&q| {
                    [
                        order[&class[trimmed.trans[q][0]]],
                        order[&class[trimmed.trans[q][1]]],
                    ]
                })
                .collect(),
            initial: 0,
            accepting: rep.iter().map(|&q| trimmed.accepting[q]).collect(),
        }
    }

    /// Synchronous product; a pair state accepts iff `combine` says so.
    pub fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Dfa {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut trans: Vec<[usize; 2]> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            let mut row = [0; 2];
            for (sym, slot) in row.iter_mut().enumerate() {
                let key = (self.trans[a][sym], other.trans[b][sym]);
                *slot = *index.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    pairs.len() - 1
                });
            }
            trans.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(a, b)| combine(self.accepting[a], other.accepting[b]))
            .collect();
        Dfa {
            trans,
            initial: 0,
            accepting,
        }
        .minimize()
    }

    pub fn intersect(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && b)
    }

    /// Flips acceptance (complement within all strings).
    pub fn complement(&self) -> Dfa {
        Dfa {
            trans: self.trans.clone(),
            initial: self.initial,
            accepting: self.accepting.iter().map(|a| !a).collect(),
        }
    }

    /// Number of accepted strings of length exactly `m`.
    pub fn count_length<T: Natural>(&self, m: usize) -> Result<T, AutomataError> {
        let n = self.trans.len();
        // paths into states that cannot reach acceptance never contribute,
        // and counting them would overflow bounded scalars needlessly
        let live = self.coreachable();
        let mut ways: Vec<T> = vec![T::zero(); n];
        if live[self.initial] {
            ways[self.initial] = T::one();
        }
        for _ in 0..m {
            let mut next = vec![T::zero(); n];
            for (q, w) in ways.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for &t in self.trans[q].iter().filter(|&&t| live[t]) {
                    next[t] = next[t].checked_add(w).ok_or(AutomataError::Overflow)?;
                }
            }
            ways = next;
        }
        ways.iter()
            .zip(&self.accepting)
            .filter(|(_, &a)| a)
            .try_fold(T::zero(), |acc, (w, _)| {
                acc.checked_add(w).ok_or(AutomataError::Overflow)
            })
    }

    /// States that are reachable and can reach an accepting state.
    fn useful(&self) -> Vec<bool> {
        let r = self.reachable();
        let c = self.coreachable();
        r.iter().zip(&c).map(|(&a, &b)| a && b).collect()
    }

    fn trimmed_graph(&self) -> DiGraph<usize, u8> {
        let useful = self.useful();
        let mut g = DiGraph::new();
        let mut node = vec![None; self.trans.len()];
        for q in (0..self.trans.len()).filter(|&q| useful[q]) {
            node[q] = Some(g.add_node(q));
        }
        for (q, ts) in self.trans.iter().enumerate() {
            for (sym, &t) in ts.iter().enumerate() {
                if let (Some(a), Some(b)) = (node[q], node[t]) {
                    g.add_edge(a, b, sym as u8);
                }
            }
        }
        g
    }

    /// Finite if the trimmed automaton is acyclic, exponential if some
    /// strongly connected component carries two distinct cycles (more
    /// internal edges than states), polynomial otherwise.
    pub fn growth_class(&self) -> GrowthClass {
        let g = self.trimmed_graph();
        let mut class = GrowthClass::Finite;
        for (states, edges) in scc_sizes(&g) {
            if edges > states {
                return GrowthClass::Exponential;
            }
            if edges > 0 {
                class = GrowthClass::Polynomial;
            }
        }
        class
    }

    /// For polynomial growth, the degree `k` with counts `O(m^k)`: one less
    /// than the largest number of cyclic components on a single path.
    pub fn polynomial_degree(&self) -> Option<usize> {
        if self.growth_class() != GrowthClass::Polynomial {
            return None;
        }
        let g = self.trimmed_graph();
        let sccs = tarjan_scc(&g);
        // tarjan_scc yields components in reverse topological order
        let mut comp_of = vec![0; g.node_count()];
        for (c, nodes) in sccs.iter().enumerate() {
            for n in nodes {
                comp_of[n.index()] = c;
            }
        }
        let mut best = vec![0usize; sccs.len()];
        for (c, nodes) in sccs.iter().enumerate() {
            let cyclic = nodes
                .iter()
                .any(|&n| g.neighbors(n).any(|m| comp_of[m.index()] == c));
            let downstream = nodes
                .iter()
                .flat_map(|&n| g.neighbors(n))
                .map(|m| comp_of[m.index()])
                .filter(|&d| d != c)
                .map(|d| best[d])
                .max()
                .unwrap_or(0);
            best[c] = downstream + usize::from(cyclic);
        }
        best.into_iter().max().map(|k| k.saturating_sub(1))
    }

    /// All accepted strings of length `m`, in lexicographic order.
    pub fn enumerate(&self, m: usize) -> Vec<Vec<u8>> {
        let dist = self.distance_to_accept();
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(m);
        self.walk(self.initial, m, m, &dist, &mut buf, &mut |s| {
            out.push(s.to_vec())
        });
        out
    }

    /// Shortest accepted-string distance from each state (`usize::MAX` if none).
    fn distance_to_accept(&self) -> Vec<usize> {
        let n = self.trans.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, ts) in self.trans.iter().enumerate() {
            for &t in ts {
                rev[t].push(q);
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for q in 0..n {
            if self.accepting[q] {
                dist[q] = 0;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[q] + 1;
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// Depth-first walk emitting accepted strings with lengths in
    /// `[min_len, max_len]`, shortest-first within each branch.
    fn walk(
        &self,
        q: usize,
        min_len: usize,
        max_len: usize,
        dist: &[usize],
        buf: &mut Vec<u8>,
        emit: &mut dyn FnMut(&[u8]),
    ) {
        if dist[q] == usize::MAX || buf.len() + dist[q] > max_len {
            return;
        }
        if self.accepting[q] && buf.len() >= min_len {
            emit(buf);
        }
        if buf.len() == max_len {
            return;
        }
        for b in 0..2u8 {
            buf.push(b);
            self.walk(self.trans[q][b as usize], min_len, max_len, dist, buf, emit);
            buf.pop();
        }
    }

    /// Shortest accepted string with length at most `max_len`, if any.
    fn shortest_accepted(&self, max_len: usize) -> Option<Vec<u8>> {
        let mut parent: Vec<Option<(usize, u8)>> = vec![None; self.trans.len()];
        let mut seen = vec![false; self.trans.len()];
        let mut queue = VecDeque::from([(self.initial, 0usize)]);
        seen[self.initial] = true;
        while let Some((q, depth)) = queue.pop_front() {
            if self.accepting[q] {
                let mut s = Vec::new();
                let mut cur = q;
                while let Some((p, b)) = parent[cur] {
                    s.push(b);
                    cur = p;
                }
                s.reverse();
                return Some(s);
            }
            if depth == max_len {
                continue;
            }
            for b in 0..2u8 {
                let t = self.trans[q][b as usize];
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, b));
                    queue.push_back((t, depth + 1));
                }
            }
        }
        None
    }

    /// All `n < bound` whose Zeckendorf representation is accepted, ascending.
    ///
    /// Fails if some accepted string no longer than `(bound − 1)_F` is not a
    /// canonical representation. The empty string stands for 0.
    pub fn accepted_integers(&self, bound: u64) -> Result<Vec<u64>, AutomataError> {
        if bound == 0 {
            return Ok(Vec::new());
        }
        let max_len = zeck_encode(&(bound - 1)).len();
        let canonical = zeckendorf_or_empty();
        let invalid = self.product(&canonical, |a, v| a && !v);
        if let Some(w) = invalid.shortest_accepted(max_len) {
            return Err(AutomataError::InvalidLanguage {
                witness: w.iter().map(|&b| char::from(b'0' + b)).collect(),
            });
        }
        let dist = self.distance_to_accept();
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(max_len);
        self.walk(self.initial, 0, max_len, &dist, &mut buf, &mut |s| {
            let v: u64 = ZeckRepr::from_digits(s)
                .and_then(|z| z.value())
                .expect("language checked against canonical representations");
            if v < bound {
                out.push(v);
            }
        });
        out.sort_unstable();
        Ok(out)
    }

    /// Valid Zeckendorf strings not accepted by `self`.
    pub fn complement_within_valid(&self) -> Dfa {
        Dfa::valid_zeckendorf().product(self, |v, a| v && !a)
    }

    /// Language equality, decided on the product automaton.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.product(other, |a, b| a != b)
            .shortest_accepted(usize::MAX)
            .is_none()
    }
}

/// Valid Zeckendorf strings plus the empty string (for 0).
fn zeckendorf_or_empty() -> Dfa {
    let v = Dfa::valid_zeckendorf();
    let mut accepting = v.accepting.clone();
    accepting[v.initial] = true;
    Dfa {
        trans: v.trans,
        initial: v.initial,
        accepting,
    }
}

/// (states, internal edges) for every strongly connected component.
fn scc_sizes(g: &DiGraph<usize, u8>) -> Vec<(usize, usize)> {
    let sccs = tarjan_scc(g);
    let mut comp_of = vec![0; g.node_count()];
    for (c, nodes) in sccs.iter().enumerate() {
        for n in nodes {
            comp_of[n.index()] = c;
        }
    }
    let mut edges = vec![0usize; sccs.len()];
    for e in g.raw_edges() {
        let (a, b) = (comp_of[e.source().index()], comp_of[e.target().index()]);
        if a == b {
            edges[a] += 1;
        }
    }
    sccs.iter().map(Vec::len).zip(edges).collect()
}

/// Every way to cut `s` as `head · tail` with `head ∈ L(head_dfa)` and
/// `tail ∈ L(tail_dfa)`, reported as the tail lengths (ascending).
pub fn split_tail_lengths(head_dfa: &Dfa, tail_dfa: &Dfa, s: &[u8]) -> Vec<usize> {
    let mut q = head_dfa.initial;
    let mut out = Vec::new();
    for cut in 0..=s.len() {
        if head_dfa.accepting[q] && tail_dfa.accepts_bits(&s[cut..]) {
            out.push(s.len() - cut);
        }
        if cut < s.len() {
            q = head_dfa.trans[q][s[cut] as usize];
        }
    }
    out.reverse();
    out
}
