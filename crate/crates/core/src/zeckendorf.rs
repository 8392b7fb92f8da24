//! Fibonacci numbers and canonical Zeckendorf digit strings.
//!
//! Digit strings are written most-significant digit first; the digit at
//! offset `i` from the least-significant end has weight `F_{i+2}`, so the
//! weights read `…, 8, 5, 3, 2, 1` and `"101"` denotes `3 + 1 = 4`. Zero is
//! the empty string.

use std::fmt;
use std::str::FromStr;

use crate::num::Natural;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZeckError {
    #[error("Fibonacci index {0} is out of range (indices start at 1)")]
    IndexOutOfRange(usize),
    #[error("invalid digit {found:?} at offset {offset}")]
    InvalidDigits { offset: usize, found: char },
    #[error("adjacent ones at offset {0}")]
    AdjacentOnes(usize),
    #[error("nonempty representation starts with 0")]
    LeadingZero,
    #[error("value does not fit in the target integer type")]
    Overflow,
}

/// `F_m` with `F_1 = F_2 = 1`.
pub fn fib_number<T: Natural>(m: usize) -> Result<T, ZeckError> {
    if m == 0 {
        return Err(ZeckError::IndexOutOfRange(m));
    }
    let (mut a, mut b) = (T::zero(), T::one());
    for _ in 1..m {
        let c = a.checked_add(&b).ok_or(ZeckError::Overflow)?;
        a = b;
        b = c;
    }
    Ok(b)
}

/// `F_2, F_3, …` up to and including the first term exceeding `limit`.
fn weights_beyond<T: Natural>(limit: &T) -> Vec<T> {
    let mut w = vec![T::one()];
    let mut prev = T::one();
    while w.last().unwrap() <= limit {
        let last = w.last().unwrap().clone();
        match last.checked_add(&prev) {
            Some(next) => {
                prev = last;
                w.push(next);
            }
            // the type's maximum is below the next weight: nothing larger fits
            None => break,
        }
    }
    w
}

/// A validated Zeckendorf digit string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZeckRepr {
    digits: Vec<u8>,
}

impl ZeckRepr {
    /// Digits as `0`/`1` bytes, msd first.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value<T: Natural>(&self) -> Result<T, ZeckError> {
        let mut total = T::zero();
        let (mut weight, mut prev) = (T::one(), T::one());
        for (i, &d) in self.digits.iter().rev().enumerate() {
            if i > 0 {
                let next = weight.checked_add(&prev).ok_or(ZeckError::Overflow)?;
                prev = weight;
                weight = next;
            }
            if d == 1 {
                total = total.checked_add(&weight).ok_or(ZeckError::Overflow)?;
            }
        }
        Ok(total)
    }

    /// Validates a digit slice (`0`/`1` bytes).
    pub fn from_digits(digits: &[u8]) -> Result<Self, ZeckError> {
        for (offset, &d) in digits.iter().enumerate() {
            if d > 1 {
                return Err(ZeckError::InvalidDigits {
                    offset,
                    found: char::from(b'0'.wrapping_add(d)),
                });
            }
        }
        Self::check_shape(digits)?;
        Ok(ZeckRepr {
            digits: digits.to_vec(),
        })
    }

    fn check_shape(digits: &[u8]) -> Result<(), ZeckError> {
        if digits.first() == Some(&0) {
            return Err(ZeckError::LeadingZero);
        }
        if let Some(pos) = digits.windows(2).position(|w| w == [1, 1]) {
            return Err(ZeckError::AdjacentOnes(pos));
        }
        Ok(())
    }
}

impl FromStr for ZeckRepr {
    type Err = ZeckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut digits = Vec::with_capacity(s.len());
        for (offset, c) in s.chars().enumerate() {
            match c {
                '0' => digits.push(0),
                '1' => digits.push(1),
                found => return Err(ZeckError::InvalidDigits { offset, found }),
            }
        }
        Self::check_shape(&digits)?;
        Ok(ZeckRepr { digits })
    }
}

impl fmt::Display for ZeckRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            f.write_str(if d == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Greedy Zeckendorf decomposition of `n`.
pub fn zeck_encode<T: Natural>(n: &T) -> ZeckRepr {
    if n.is_zero() {
        return ZeckRepr::default();
    }
    let weights = weights_beyond(n);
    let mut rest = n.clone();
    let mut digits = Vec::with_capacity(weights.len());
    let mut started = false;
    for w in weights.iter().rev() {
        if *w <= rest {
            rest = rest.checked_sub(w).expect("w <= rest");
            digits.push(1);
            started = true;
        } else if started {
            digits.push(0);
        }
    }
    debug_assert!(rest.is_zero());
    ZeckRepr { digits }
}

/// Inverse of [`zeck_encode`], validating the string first.
pub fn zeck_decode<T: Natural>(s: &str) -> Result<T, ZeckError> {
    s.parse::<ZeckRepr>()?.value()
}
