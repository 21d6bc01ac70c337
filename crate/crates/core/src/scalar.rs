//! Scalar abstraction for the numeric kernels.
//!
//! Every analytic routine in this crate is generic over [`Real`] so that the
//! same code instantiates at `f32` and `f64`. Tolerances inside iterative
//! routines are derived from `Float::epsilon`, so reduced-precision
//! instantiations degrade gracefully rather than looping forever.

use std::fmt;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable by the numeric routines of this crate.
pub trait Real:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Euler-Mascheroni constant.
    const EULER_GAMMA: Self;
    /// Natural logarithm of two.
    const LN_2: Self;

    /// Lossy conversion from an `f64` literal embedded in generic code.
    fn of(value: f64) -> Self {
        num_traits::cast(value).expect("finite f64 literal must convert")
    }

    /// Conversion from a count (user numbers, sample sizes, ...).
    fn of_count(value: usize) -> Self {
        Self::from_usize(value).expect("count must be representable")
    }

    /// Widening conversion to `f64` for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        num_traits::cast(self).expect("scalar must convert to f64")
    }
}

impl Real for f64 {
    const EULER_GAMMA: Self = 0.577_215_664_901_532_9;
    const LN_2: Self = std::f64::consts::LN_2;
}

impl Real for f32 {
    const EULER_GAMMA: Self = 0.577_215_7;
    const LN_2: Self = std::f32::consts::LN_2;
}
