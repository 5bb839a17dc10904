use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, NumAssignRef, NumRef, Signed, ToPrimitive};

use super::Rational;

/// Scalar field used by the polynomial and LP code.
///
/// Exact scalars compare against zero exactly; approximate scalars use
/// [`Scalar::tolerance`] as the pivot / feasibility threshold.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + NumRef
    + NumAssignRef
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Threshold below which a magnitude counts as zero. Zero for exact types.
    fn tolerance() -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs() <= Self::tolerance()
        }
    }

    /// `self > 0` beyond tolerance.
    fn is_positive_beyond_tol(&self) -> bool {
        *self > Self::tolerance()
    }

    /// `self < 0` beyond tolerance.
    fn is_negative_beyond_tol(&self) -> bool {
        *self < -Self::tolerance()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        Rational::from_integer(0.into())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-9
    }

    fn from_rational(r: &Rational) -> Self {
        super::rational::to_f64(r)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }

    fn from_rational(r: &Rational) -> Self {
        super::rational::to_f64(r) as f32
    }
}
