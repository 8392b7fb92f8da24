//! Finite prefixes of the infinite binary words: the Fibonacci word, fixed
//! points of prolongable morphisms, characteristic Sturmian words (built
//! both from a continued fraction and from an exact slope), and the
//! doubling word `0 1 0² 1 0⁴ 1 0⁸ 1 ⋯`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::num::{QuadraticIrrational, SurdError};
use crate::Slope;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("morphism is not prolongable on {seed}: image {image:?} must start with the seed and have length >= 2")]
    NonProlongable { seed: u8, image: String },
    #[error("image of {0} is empty")]
    EmptyImage(u8),
    #[error("invalid continued fraction: {0}")]
    InvalidCf(String),
    #[error("slope is rational: {0}")]
    NotIrrational(String),
    #[error("slope {0} is not in the open interval (0, 1)")]
    SlopeOutOfRange(String),
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid word spec `{input}`: {field}: {message}")]
pub struct SpecParseError {
    pub input: String,
    /// The offending field, e.g. `image of 1` or `period`.
    pub field: String,
    pub message: String,
}

/// A finite binary prefix. Symbols are `0`/`1` bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Prefix(Vec<u8>);

impl Prefix {
    pub fn new(symbols: Vec<u8>) -> Self {
        assert!(symbols.iter().all(|&s| s <= 1), "symbols must be 0 or 1");
        Prefix(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bits(s: &str) -> Option<Self> {
        s.bytes()
            .map(|b| match b {
                b'0' => Some(0),
                b'1' => Some(1),
                _ => None,
            })
            .collect::<Option<Vec<u8>>>()
            .map(Prefix)
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| char::from(b'0' + b)).collect();
        f.write_str(&s)
    }
}

/// Substitution `0 → image0, 1 → image1`, iterated from `seed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub images: [Vec<u8>; 2],
    pub seed: u8,
}

impl Morphism {
    pub fn validate(&self) -> Result<(), WordError> {
        for (sym, img) in self.images.iter().enumerate() {
            if img.is_empty() {
                return Err(WordError::EmptyImage(sym as u8));
            }
        }
        let img = &self.images[self.seed as usize];
        if img.len() < 2 || img[0] != self.seed {
            return Err(WordError::NonProlongable {
                seed: self.seed,
                image: Prefix(img.clone()).to_string(),
            });
        }
        Ok(())
    }
}

/// `[0; a1, a2, …]` as a finite preperiod followed by an infinitely
/// repeated period. `preperiod[0]` is the integer part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn validate(&self) -> Result<(), WordError> {
        match self.preperiod.first() {
            Some(0) => {}
            Some(a) => {
                return Err(WordError::InvalidCf(format!(
                    "leading term must be 0, found {a}"
                )))
            }
            None => return Err(WordError::InvalidCf("missing leading term".into())),
        }
        if self.period.is_empty() {
            return Err(WordError::InvalidCf(
                "finite expansion denotes a rational slope".into(),
            ));
        }
        if let Some(k) = self
            .partial_quotients()
            .take(self.preperiod.len() + self.period.len())
            .position(|a| a < 1)
        {
            return Err(WordError::InvalidCf(format!(
                "partial quotient a{} must be >= 1",
                k + 1
            )));
        }
        Ok(())
    }

    /// `a1, a2, …` (the integer part is skipped), repeating the period forever.
    pub fn partial_quotients(&self) -> impl Iterator<Item = u64> + '_ {
        self.preperiod
            .iter()
            .skip(1)
            .copied()
            .chain(self.period.iter().copied().cycle())
    }

    /// Expansion of a quadratic irrational.
    pub fn of_slope(slope: &Slope) -> Option<Self> {
        let cf = slope.continued_fraction();
        let conv = |v: Vec<BigInt>| v.iter().map(|a| a.to_u64()).collect::<Option<Vec<u64>>>();
        Some(ContinuedFraction {
            preperiod: conv(cf.preperiod)?,
            period: conv(cf.period)?,
        })
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let (head, tail) = self
            .preperiod
            .split_first()
            .map_or((0, &[][..]), |(h, t)| (*h, t));
        write!(f, "[{head};")?;
        if !tail.is_empty() {
            write!(f, "{},", join(tail))?;
        }
        write!(f, "({})]", join(&self.period))
    }
}

/// Declarative description of an infinite binary word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSpec {
    Fibonacci,
    Morphic(Morphism),
    SturmianCf(ContinuedFraction),
    SturmianSlope(Slope),
    Doubling,
}

impl WordSpec {
    /// The morphism `0 → 0001, 1 → 1011` whose fixed point has critical
    /// exponent 10/3.
    pub fn morphic_x() -> Self {
        WordSpec::Morphic(Morphism {
            images: [vec![0, 0, 0, 1], vec![1, 0, 1, 1]],
            seed: 0,
        })
    }

    /// `c_β` for `β = (5 − √13)/6 = [0; 4, 3̄]`.
    pub fn beta_cf() -> Self {
        WordSpec::SturmianCf(ContinuedFraction {
            preperiod: vec![0, 4],
            period: vec![3],
        })
    }

    pub fn validate(&self) -> Result<(), WordError> {
        match self {
            WordSpec::Fibonacci | WordSpec::Doubling => Ok(()),
            WordSpec::Morphic(m) => m.validate(),
            WordSpec::SturmianCf(cf) => cf.validate(),
            WordSpec::SturmianSlope(s) => validate_slope(s),
        }
    }

    pub fn is_sturmian(&self) -> bool {
        matches!(
            self,
            WordSpec::Fibonacci | WordSpec::SturmianCf(_) | WordSpec::SturmianSlope(_)
        )
    }

    /// First `n` symbols of the word.
    pub fn prefix(&self, n: usize) -> Result<Prefix, WordError> {
        match self {
            WordSpec::Fibonacci => Ok(fibonacci_prefix(n)),
            WordSpec::Morphic(m) => morphic_prefix(m, n),
            WordSpec::SturmianCf(cf) => sturmian_prefix_cf(cf, n),
            WordSpec::SturmianSlope(s) => sturmian_prefix_slope(s, n),
            WordSpec::Doubling => Ok(doubling_prefix(n)),
        }
    }
}

fn validate_slope(s: &Slope) -> Result<(), WordError> {
    if !s.in_open_unit_interval() {
        return Err(WordError::SlopeOutOfRange(s.to_string()));
    }
    Ok(())
}

/// Builds a slope `(p + q√d)/r`, mapping construction failures onto the
/// word-level error kinds.
pub fn slope(p: i64, q: i64, d: i64, r: i64) -> Result<Slope, WordError> {
    let s =
        QuadraticIrrational::new(p.into(), q.into(), d.into(), r.into()).map_err(|e| match e {
            SurdError::PerfectSquare(_) | SurdError::ZeroSurdCoefficient => {
                WordError::NotIrrational(e.to_string())
            }
            other => WordError::InvalidSlope(other.to_string()),
        })?;
    validate_slope(&s)?;
    Ok(s)
}

pub fn morphic_prefix(m: &Morphism, n: usize) -> Result<Prefix, WordError> {
    m.validate()?;
    // w = σ(w[..i]) is maintained; since |σ(seed)| ≥ 2, w stays ahead of i.
    let mut w = m.images[m.seed as usize].clone();
    let mut i = 1;
    while w.len() < n {
        let sym = w[i] as usize;
        w.extend_from_slice(&m.images[sym]);
        i += 1;
    }
    w.truncate(n);
    Ok(Prefix(w))
}

pub fn fibonacci_prefix(n: usize) -> Prefix {
    let fib = Morphism {
        images: [vec![0, 1], vec![0]],
        seed: 0,
    };
    morphic_prefix(&fib, n).expect("Fibonacci morphism is prolongable")
}

/// Standard-word recursion `s₁ = 0^{a₁−1}1`, `s_{k+1} = s_k^{a_{k+1}} s_{k−1}`.
pub fn sturmian_prefix_cf(cf: &ContinuedFraction, n: usize) -> Result<Prefix, WordError> {
    cf.validate()?;
    let mut quotients = cf.partial_quotients();
    let a1 = quotients.next().expect("validated") as usize;
    let mut prev: Vec<u8> = vec![0];
    let mut cur: Vec<u8> = vec![0; a1 - 1];
    cur.push(1);
    while cur.len() < n {
        let a = quotients.next().expect("period is infinite") as usize;
        let mut next = Vec::with_capacity(cur.len() * a + prev.len());
        for _ in 0..a {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur.truncate(n);
    Ok(Prefix(cur))
}

/// Symbol `k` is `⌊(k+2)α⌋ − ⌊(k+1)α⌋`, each floor computed exactly.
pub fn sturmian_prefix_slope(alpha: &Slope, n: usize) -> Result<Prefix, WordError> {
    validate_slope(alpha)?;
    let mut out = Vec::with_capacity(n);
    let mut m = BigInt::one();
    let mut prev = alpha.floor_mul(&m);
    for _ in 0..n {
        m += 1;
        let cur = alpha.floor_mul(&m);
        let diff = &cur - &prev;
        debug_assert!(!diff.is_negative() && diff <= BigInt::one());
        out.push(if diff.is_one() { 1 } else { 0 });
        prev = cur;
    }
    Ok(Prefix(out))
}

pub fn doubling_prefix(n: usize) -> Prefix {
    let mut out = Vec::with_capacity(n);
    let mut block = 1usize;
    while out.len() < n {
        out.extend(std::iter::repeat_n(0, block));
        out.push(1);
        block *= 2;
    }
    out.truncate(n);
    Prefix(out)
}

// ---------------------------------------------------------------------------
// Text syntax
// ---------------------------------------------------------------------------

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSpec::Fibonacci => f.write_str("fib"),
            WordSpec::Doubling => f.write_str("doubling"),
            WordSpec::Morphic(m) => write!(
                f,
                "morphic:0->{},1->{};seed={}",
                Prefix(m.images[0].clone()),
                Prefix(m.images[1].clone()),
                m.seed
            ),
            WordSpec::SturmianCf(cf) => write!(f, "cf:{cf}"),
            WordSpec::SturmianSlope(s) => write!(f, "slope:{s}"),
        }
    }
}

impl FromStr for WordSpec {
    type Err = SpecParseError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |field: &str, message: &str| SpecParseError {
            input: input.to_string(),
            field: field.to_string(),
            message: message.to_string(),
        };
        if s == "fib" {
            return Ok(WordSpec::Fibonacci);
        }
        if s == "doubling" {
            return Ok(WordSpec::Doubling);
        }
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| err("kind", "expected fib, doubling, morphic:, cf: or slope:"))?;
        match kind {
            "morphic" => parse_morphic(body).map_err(|(f, m)| err(f, &m)),
            "cf" => parse_cf(body).map_err(|(f, m)| err(f, &m)),
            "slope" => parse_slope(body).map_err(|(f, m)| err(f, &m)),
            _ => Err(err("kind", &format!("unknown word kind `{kind}`"))),
        }
    }
}

type FieldError = (&'static str, String);

fn parse_bits(field: &'static str, s: &str) -> Result<Vec<u8>, FieldError> {
    Prefix::from_bits(s)
        .map(Prefix::into_symbols)
        .ok_or_else(|| (field, format!("`{s}` is not a binary string")))
}

fn parse_morphic(body: &str) -> Result<WordSpec, FieldError> {
    let (rules, seed) = body
        .split_once(";seed=")
        .ok_or(("seed", "missing `;seed=0|1`".to_string()))?;
    let seed = match seed {
        "0" => 0,
        "1" => 1,
        other => return Err(("seed", format!("`{other}` is not 0 or 1"))),
    };
    let mut images: [Option<Vec<u8>>; 2] = [None, None];
    for rule in rules.split(',') {
        let (lhs, rhs) = rule
            .split_once("->")
            .ok_or(("rule", format!("`{rule}` is not of the form a->image")))?;
        let (idx, field) = match lhs {
            "0" => (0, "image of 0"),
            "1" => (1, "image of 1"),
            other => return Err(("rule", format!("`{other}` is not 0 or 1"))),
        };
        if images[idx].is_some() {
            return Err((field, "given twice".to_string()));
        }
        images[idx] = Some(parse_bits(field, rhs)?);
    }
    let [i0, i1] = images;
    let m = Morphism {
        images: [
            i0.ok_or(("image of 0", "missing".to_string()))?,
            i1.ok_or(("image of 1", "missing".to_string()))?,
        ],
        seed,
    };
    m.validate().map_err(|e| match e {
        WordError::EmptyImage(0) => ("image of 0", e.to_string()),
        WordError::EmptyImage(_) => ("image of 1", e.to_string()),
        other => ("seed", other.to_string()),
    })?;
    Ok(WordSpec::Morphic(m))
}

fn parse_u64_list(field: &'static str, s: &str) -> Result<Vec<u64>, FieldError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| (field, format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}

fn parse_cf(body: &str) -> Result<WordSpec, FieldError> {
    let inner = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or(("brackets", "expected `[0;a1,...,(p1,...)]`".to_string()))?;
    let (head, rest) = inner.split_once(';').ok_or((
        "leading term",
        "missing `;` after the integer part".to_string(),
    ))?;
    let head: u64 = head
        .parse()
        .map_err(|_| ("leading term", format!("`{head}` is not an integer")))?;
    let (pre, period) = match rest.find('(') {
        Some(open) => {
            let close = rest.strip_suffix(')').ok_or((
                "period",
                "period group must close the expansion".to_string(),
            ))?;
            let pre = rest[..open].strip_suffix(',').unwrap_or(&rest[..open]);
            (pre, parse_u64_list("period", &close[open + 1..])?)
        }
        None => (rest, Vec::new()),
    };
    let mut preperiod = vec![head];
    preperiod.extend(parse_u64_list("partial quotients", pre)?);
    let cf = ContinuedFraction { preperiod, period };
    cf.validate().map_err(|e| {
        let field = if head != 0 {
            "leading term"
        } else if cf.period.is_empty() {
            "period"
        } else {
            "partial quotients"
        };
        (field, e.to_string())
    })?;
    Ok(WordSpec::SturmianCf(cf))
}

/// `(p+q*sqrt(d))/r`, also accepting `(p-sqrt(d))/r` and friends.
fn parse_slope(body: &str) -> Result<WordSpec, FieldError> {
    let (num, r) = body
        .rsplit_once(")/")
        .ok_or(("r", "expected `(p+q*sqrt(d))/r`".to_string()))?;
    let num = num
        .strip_prefix('(')
        .ok_or(("p", "expected `(` before p".to_string()))?;
    let sqrt_at = num
        .find("sqrt(")
        .ok_or(("d", "missing `sqrt(d)`".to_string()))?;
    let d = num[sqrt_at + 5..]
        .strip_suffix(')')
        .ok_or(("d", "unclosed `sqrt(`".to_string()))?;
    let before = &num[..sqrt_at];
    // before = p ('+'|'-') [q '*']
    let before = before.strip_suffix('*').unwrap_or(before);
    let split = before
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .next()
        .ok_or((
            "q",
            "expected `+` or `-` between p and the surd".to_string(),
        ))?;
    let p = &before[..split];
    let q_text = &before[split..];
    let q_text = match q_text {
        "+" => "1",
        "-" => "-1",
        t => t.strip_prefix('+').unwrap_or(t),
    };
    let int = |field: &'static str, t: &str| {
        t.parse::<i64>()
            .map_err(|_| (field, format!("`{t}` is not an integer")))
    };
    let (p, q, d, r) = (int("p", p)?, int("q", q_text)?, int("d", d)?, int("r", r)?);
    let s = slope(p, q, d, r).map_err(|e| {
        let field = match e {
            WordError::NotIrrational(_) => "d",
            WordError::SlopeOutOfRange(_) => "value",
            _ if r == 0 => "r",
            _ => "d",
        };
        (field, e.to_string())
    })?;
    Ok(WordSpec::SturmianSlope(s))
}
