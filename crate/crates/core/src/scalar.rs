//! Scalar abstraction for set-function values.
//!
//! Every value-level algorithm in the crate is written against [`Scalar`],
//! so the same code runs over `f64`, `f32` or exact rationals.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, NumAssign, Signed, ToPrimitive};

/// A totally-ordered-enough number type for set-function values.
///
/// Strict inequalities in the width definitions are evaluated as
/// `a > b + tolerance()`; exact types use a zero tolerance.
pub trait Scalar:
    Copy
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + Sum
    + Num
    + NumAssign
    + Signed
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    /// Comparison slack.
    fn tolerance() -> Self;

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `self > other` beyond the comparison slack.
    #[inline]
    fn gt_tol(self, other: Self) -> bool {
        self > other + Self::tolerance()
    }

    /// `self <= other` up to the comparison slack.
    #[inline]
    fn le_tol(self, other: Self) -> bool {
        !self.gt_tol(other)
    }

    #[inline]
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    #[inline]
    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }
}

impl Scalar for Ratio<i64> {
    fn tolerance() -> Self {
        Ratio::from_integer(0)
    }
}

impl Scalar for Ratio<i128> {
    fn tolerance() -> Self {
        Ratio::from_integer(0)
    }
}
