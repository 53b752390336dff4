//! Exact scalar abstraction for all scored values.
//!
//! Every profit, bonus, value and ratio in the library flows through a
//! [`Scalar`]. The trait is deliberately restricted to totally ordered
//! exact types: competitive-ratio comparisons, oracle tie-breaking and
//! replay determinism all rely on `Ord` and on arithmetic without rounding,
//! so floating-point types are not admitted. The two provided
//! implementations are machine-word rationals ([`num_rational::Rational64`])
//! for small closed-form work and arbitrary-precision rationals
//! ([`num_rational::BigRational`], the crate-wide default alias
//! [`crate::Value`]) for everything whose denominators can grow.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio, Rational64};
use num_traits::{Num, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// An exact, totally ordered number type used for profits and values.
pub trait Scalar: Num + Signed + Ord + Clone + fmt::Debug + fmt::Display + 'static {
    fn from_int(v: i64) -> Self;

    /// Exact fraction; `den` must be nonzero.
    fn from_frac(num: i64, den: i64) -> Self;

    /// Lossy view for human-readable output and tolerance windows only;
    /// never used in scored comparisons.
    fn to_f64(&self) -> f64;

    fn from_count(v: usize) -> Self {
        Self::from_int(v as i64)
    }
}

impl Scalar for Rational64 {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Parses an exact scalar from the textual forms the instance schema and
/// CLI accept: `"p/q"`, a plain integer `"p"`, or a decimal literal such as
/// `"0.25"` (read literally as 25/100).
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    let s = text.trim();
    let bad = || Error::Schema(format!("cannot parse rational from {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad())?;
        let d: i64 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::Schema(format!("zero denominator in {text:?}")));
        }
        return Ok(S::from_frac(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || frac_part.len() > 18 || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.trim_start().starts_with('-');
        let whole: i64 = if int_part == "-" || int_part.is_empty() {
            0
        } else {
            int_part.trim().parse().map_err(|_| bad())?
        };
        let digits: i64 = frac_part.parse().map_err(|_| bad())?;
        let scale = 10i64.pow(frac_part.len() as u32);
        let frac = S::from_frac(if negative { -digits } else { digits }, scale);
        return Ok(S::from_int(whole) + frac);
    }
    let n: i64 = s.parse().map_err(|_| bad())?;
    Ok(S::from_int(n))
}

/// Canonical text form: reduced `p/q`, or bare `p` for integers. This is
/// the single serialization used everywhere bytes must be reproducible.
pub fn scalar_string<S: Scalar>(v: &S) -> String {
    // Display on Ratio already prints reduced `p/q` / `p`.
    format!("{v}")
}
