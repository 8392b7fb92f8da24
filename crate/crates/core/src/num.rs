//! Scalar traits shared by the counting and numeration code, plus exact
//! arithmetic on real quadratic irrationals `(p + q·√d) / r`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{
    CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Signed, ToPrimitive, Zero,
};

/// Nonnegative integer scalar used for Fibonacci numbers, Zeckendorf values
/// and path counts. Implemented for the primitive unsigned types (which
/// report overflow through `checked_add`) and for `BigUint` (which never
/// overflows).
pub trait Natural:
    Clone
    + Ord
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + FromPrimitive
    + ToPrimitive
{
}

impl<T> Natural for T where
    T: Clone
        + Ord
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + CheckedAdd
        + CheckedSub
        + FromPrimitive
        + ToPrimitive
{
}

/// Signed integer scalar for exact surd arithmetic.
pub trait SurdInt:
    Clone
    + Integer
    + Signed
    + Roots
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + fmt::Debug
    + fmt::Display
{
}

impl<T> SurdInt for T where
    T: Clone
        + Integer
        + Signed
        + Roots
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + fmt::Debug
        + fmt::Display
{
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurdError {
    #[error("radicand d = {0} must be positive")]
    NonPositiveRadicand(String),
    #[error("radicand d = {0} is a perfect square, so the value is rational")]
    PerfectSquare(String),
    #[error("denominator r must be nonzero")]
    ZeroDenominator,
    #[error("coefficient q must be nonzero, otherwise the value is rational")]
    ZeroSurdCoefficient,
    #[error("cannot combine surds with different radicands {0} and {1}")]
    RadicandMismatch(String, String),
}

/// The real number `(p + q·√d) / r` with `d > 0` not a perfect square,
/// `q ≠ 0` and `r > 0` (the sign is normalized into `p` and `q`).
///
/// All comparisons and floors are exact; nothing goes through floating point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational<T> {
    p: T,
    q: T,
    d: T,
    r: T,
}

/// `true` iff `a ≤ b·√d` for a positive non-square `d`.
fn le_surd<T: SurdInt>(a: &T, b: &T, d: &T) -> bool {
    let a2 = a.clone() * a.clone();
    let b2d = b.clone() * b.clone() * d.clone();
    if !b.is_negative() {
        // b√d ≥ 0
        !a.is_positive() || a2 <= b2d
    } else {
        // b√d < 0: need a negative with |a| ≥ |b|√d
        a.is_negative() && a2 >= b2d
    }
}

impl<T: SurdInt> QuadraticIrrational<T> {
    pub fn new(p: T, q: T, d: T, r: T) -> Result<Self, SurdError> {
        if !d.is_positive() {
            return Err(SurdError::NonPositiveRadicand(d.to_string()));
        }
        if d.sqrt() * d.sqrt() == d {
            return Err(SurdError::PerfectSquare(d.to_string()));
        }
        if r.is_zero() {
            return Err(SurdError::ZeroDenominator);
        }
        if q.is_zero() {
            return Err(SurdError::ZeroSurdCoefficient);
        }
        let (p, q, r) = if r.is_negative() {
            (-p, -q, -r)
        } else {
            (p, q, r)
        };
        Ok(QuadraticIrrational { p, q, d, r })
    }

    pub fn p(&self) -> &T {
        &self.p
    }
    pub fn q(&self) -> &T {
        &self.q
    }
    pub fn d(&self) -> &T {
        &self.d
    }
    pub fn r(&self) -> &T {
        &self.r
    }

    /// `⌊m · self⌋` for an integer multiplier `m`.
    pub fn floor_mul(&self, m: &T) -> T {
        let a = m.clone() * self.p.clone();
        let b = m.clone() * self.q.clone();
        // floor(b√d), exactly, from the integer square root of b²d.
        let s = (b.clone() * b.clone() * self.d.clone()).sqrt();
        let approx = if b.is_negative() { -s - T::one() } else { s };
        let mut k = (a.clone() + approx).div_floor(&self.r);
        // r·k ≤ a + b√d  ⇔  r·k − a ≤ b√d
        while !le_surd(&(self.r.clone() * k.clone() - a.clone()), &b, &self.d) {
            k = k - T::one();
        }
        while le_surd(
            &(self.r.clone() * (k.clone() + T::one()) - a.clone()),
            &b,
            &self.d,
        ) {
            k = k + T::one();
        }
        k
    }

    pub fn floor(&self) -> T {
        self.floor_mul(&T::one())
    }

    /// Exact comparison against a rational number.
    pub fn cmp_ratio(&self, x: &Ratio<T>) -> Ordering {
        // self < x  ⇔  p + q√d < r·x  ⇔  q√d < (r·num − p·den)/den, den > 0
        let (num, den) = if x.denom().is_negative() {
            (-x.numer().clone(), -x.denom().clone())
        } else {
            (x.numer().clone(), x.denom().clone())
        };
        let lhs = self.r.clone() * num - self.p.clone() * den.clone();
        let b = self.q.clone() * den;
        // equality is impossible for an irrational value
        if le_surd(&lhs, &b, &self.d) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn in_open_unit_interval(&self) -> bool {
        let zero = Ratio::from_integer(T::zero());
        let one = Ratio::from_integer(T::one());
        self.cmp_ratio(&zero) == Ordering::Greater && self.cmp_ratio(&one) == Ordering::Less
    }

    fn check_same_field(&self, other: &Self) -> Result<(), SurdError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(SurdError::RadicandMismatch(
                self.d.to_string(),
                other.d.to_string(),
            ))
        }
    }

    /// Field element equality: `(p + q√d)/r` compared after cross-multiplying.
    pub fn same_value(&self, other: &Self) -> bool {
        self.d == other.d
            && self.p.clone() * other.r.clone() == other.p.clone() * self.r.clone()
            && self.q.clone() * other.r.clone() == other.q.clone() * self.r.clone()
    }

    /// Sum in `Q(√d)`. Returns `None` when the surd part cancels (the sum is
    /// rational), which this type cannot represent.
    pub fn checked_add(&self, other: &Self) -> Result<Option<Self>, SurdError> {
        self.check_same_field(other)?;
        let p = self.p.clone() * other.r.clone() + other.p.clone() * self.r.clone();
        let q = self.q.clone() * other.r.clone() + other.q.clone() * self.r.clone();
        let r = self.r.clone() * other.r.clone();
        Ok(Self::reduced(p, q, self.d.clone(), r))
    }

    /// Product in `Q(√d)`; `None` when the product is rational.
    pub fn checked_mul(&self, other: &Self) -> Result<Option<Self>, SurdError> {
        self.check_same_field(other)?;
        let p =
            self.p.clone() * other.p.clone() + self.q.clone() * other.q.clone() * self.d.clone();
        let q = self.p.clone() * other.q.clone() + self.q.clone() * other.p.clone();
        let r = self.r.clone() * other.r.clone();
        Ok(Self::reduced(p, q, self.d.clone(), r))
    }

    /// Adds a rational number.
    pub fn add_ratio(&self, x: &Ratio<T>) -> Self {
        let p = self.p.clone() * x.denom().clone() + x.numer().clone() * self.r.clone();
        let q = self.q.clone() * x.denom().clone();
        let r = self.r.clone() * x.denom().clone();
        Self::reduced(p, q, self.d.clone(), r).expect("surd part is nonzero")
    }

    fn reduced(p: T, q: T, d: T, r: T) -> Option<Self> {
        if q.is_zero() {
            return None;
        }
        let g = p.gcd(&q).gcd(&r);
        let (p, q, r) = if g.is_one() || g.is_zero() {
            (p, q, r)
        } else {
            (p / g.clone(), q / g.clone(), r / g)
        };
        Self::new(p, q, d, r).ok()
    }

    /// Rough floating-point value, for display only.
    pub fn approx_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        (p + q * d.sqrt()) / r
    }
}

impl<T: SurdInt> fmt::Display for QuadraticIrrational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.p,
            sign,
            self.q.abs(),
            self.d,
            self.r
        )
    }
}

/// Continued-fraction expansion `[a0; a1, a2, …]` of a quadratic irrational,
/// split into preperiod and period (Lagrange: the period always exists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCf<T> {
    pub preperiod: Vec<T>,
    pub period: Vec<T>,
}

impl<T: SurdInt> QuadraticIrrational<T> {
    /// Runs the classical `(P + √D)/Q` recurrence until a complete quotient
    /// repeats.
    pub fn continued_fraction(&self) -> PeriodicCf<T> {
        // Rewrite as (P + √D)/Q with q folded into the radicand.
        let q_abs = self.q.abs();
        let mut big_d = q_abs.clone() * q_abs * self.d.clone();
        let (mut big_p, mut big_q) = if self.q.is_negative() {
            (-self.p.clone(), -self.r.clone())
        } else {
            (self.p.clone(), self.r.clone())
        };
        // The recurrence needs Q | D − P².
        if !(big_d.clone() - big_p.clone() * big_p.clone()).is_multiple_of(&big_q) {
            let qa = big_q.abs();
            big_p = big_p * qa.clone();
            big_d = big_d * qa.clone() * qa.clone();
            big_q = big_q * qa;
        }
        let mut seen: Vec<(T, T)> = Vec::new();
        let mut digits: Vec<T> = Vec::new();
        loop {
            if let Some(pos) = seen
                .iter()
                .position(|(sp, sq)| *sp == big_p && *sq == big_q)
            {
                let period = digits.split_off(pos);
                return PeriodicCf {
                    preperiod: digits,
                    period,
                };
            }
            seen.push((big_p.clone(), big_q.clone()));
            let a = QuadraticIrrational {
                p: big_p.clone(),
                q: T::one(),
                d: big_d.clone(),
                r: big_q.clone(),
            }
            .normalized()
            .floor();
            let next_p = a.clone() * big_q.clone() - big_p.clone();
            let next_q = (big_d.clone() - next_p.clone() * next_p.clone()) / big_q.clone();
            digits.push(a);
            big_p = next_p;
            big_q = next_q;
        }
    }

    fn normalized(self) -> Self {
        if self.r.is_negative() {
            QuadraticIrrational {
                p: -self.p,
                q: -self.q,
                d: self.d,
                r: -self.r,
            }
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn qi(p: i64, q: i64, d: i64, r: i64) -> QuadraticIrrational<BigInt> {
        QuadraticIrrational::new(p.into(), q.into(), d.into(), r.into()).unwrap()
    }

    #[test]
    fn floor_matches_float_for_small_multipliers() {
        let beta = qi(5, -1, 13, 6);
        for m in 0..2000i64 {
            let exact = beta.floor_mul(&BigInt::from(m));
            let float = (m as f64 * (5.0 - 13f64.sqrt()) / 6.0).floor() as i64;
            assert_eq!(exact, BigInt::from(float), "m = {m}");
        }
        let neg = qi(-7, 3, 2, -5);
        for m in -50..50i64 {
            let float = (m as f64 * (-7.0 + 3.0 * 2f64.sqrt()) / -5.0).floor() as i64;
            assert_eq!(neg.floor_mul(&BigInt::from(m)), BigInt::from(float));
        }
    }

    #[test]
    fn rejects_rational_inputs() {
        let r = QuadraticIrrational::<i64>::new(1, 1, 4, 3);
        assert_eq!(r, Err(SurdError::PerfectSquare("4".into())));
        assert_eq!(
            QuadraticIrrational::<i64>::new(1, 1, 5, 0),
            Err(SurdError::ZeroDenominator)
        );
        assert!(QuadraticIrrational::<i64>::new(1, 1, -5, 2).is_err());
    }

    #[test]
    fn continued_fractions_of_known_slopes() {
        let beta = qi(5, -1, 13, 6).continued_fraction();
        assert_eq!(beta.preperiod, vec![BigInt::from(0), BigInt::from(4)]);
        assert_eq!(beta.period, vec![BigInt::from(3)]);

        let fib_slope = qi(3, -1, 5, 2).continued_fraction();
        assert_eq!(fib_slope.preperiod, vec![BigInt::from(0), BigInt::from(2)]);
        assert_eq!(fib_slope.period, vec![BigInt::from(1)]);

        let sqrt2 = qi(0, 1, 2, 1).continued_fraction();
        assert_eq!(sqrt2.preperiod, vec![BigInt::from(1)]);
        assert_eq!(sqrt2.period, vec![BigInt::from(2)]);
    }

    #[test]
    fn golden_identity_in_the_field() {
        let phi = qi(1, 1, 5, 2);
        let phi_sq = phi.checked_mul(&phi).unwrap().unwrap();
        let phi_plus_one = phi.add_ratio(&Ratio::from_integer(BigInt::from(1)));
        assert!(phi_sq.same_value(&phi_plus_one));
    }

    #[test]
    fn ratio_comparison() {
        let two_plus_phi = qi(5, 1, 5, 2);
        let lo = Ratio::new(BigInt::from(3618), BigInt::from(1000));
        let hi = Ratio::new(BigInt::from(3619), BigInt::from(1000));
        assert_eq!(two_plus_phi.cmp_ratio(&lo), Ordering::Greater);
        assert_eq!(two_plus_phi.cmp_ratio(&hi), Ordering::Less);
    }
}
