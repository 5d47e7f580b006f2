//! Scalar abstraction for the soft-value (LLR) domain.
//!
//! The decoders only compare magnitudes, and the channel and analytics
//! need standard float math plus a couple of special functions, so the
//! whole soft-value surface is generic over [`Real`]. `f64` is the
//! default used by the CLI; `f32` works where reduced precision is
//! acceptable.

use std::fmt::{Debug, Display};
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive, ToPrimitive};

pub trait Real:
    Float + FromPrimitive + ToPrimitive + AddAssign + Debug + Display + Send + Sync + 'static
{
    /// Complementary error function.
    fn complementary_erf(self) -> Self;
    /// Natural log of the gamma function.
    fn lgamma(self) -> Self;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 conversion")
    }
}

impl Real for f64 {
    fn complementary_erf(self) -> f64 {
        libm::erfc(self)
    }

    fn lgamma(self) -> f64 {
        libm::lgamma(self)
    }
}

impl Real for f32 {
    fn complementary_erf(self) -> f32 {
        libm::erfcf(self)
    }

    fn lgamma(self) -> f32 {
        libm::lgammaf(self)
    }
}
