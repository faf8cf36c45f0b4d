//! Scalar abstraction shared by every linear-algebra routine.
//!
//! Everything in this crate is written against [`Scalar`], a thin bundle of
//! `num-traits` bounds. The exact rational field [`Q`] is what the library is
//! built and tested for; `f64` also satisfies the bound and is handy for quick
//! numerical experiments, but equality tests on floats are only meaningful
//! for inputs without rounding.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

use crate::error::Error;

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Q = BigRational;

/// Field elements the matrix code can work over.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    /// Embed a small integer.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type embeds the integers")
    }

    /// The fraction `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Display + Num + Neg<Output = T> + FromPrimitive + Send + Sync
{
}

/// Canonical text form `p/q`, with `/q` dropped when `q == 1`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p`, `-p`, or `p/q`. The result is always in lowest terms.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let bad = || Error::Format(format!("malformed rational {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Format(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(num, den))
}
