//! The scalar abstraction every solver is generic over.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, NumAssign, NumCast, Signed, ToPrimitive};

/// A signed matrix weight.
///
/// Implemented for `f32`, `f64` and the exact integer types `i32`, `i64`.
/// Integer weights make solver comparisons exact; floating weights are the
/// usual input for image-derived score maps.
pub trait Weight:
    Copy
    + PartialOrd
    + Num
    + NumAssign
    + Signed
    + NumCast
    + ToPrimitive
    + FromPrimitive
    + Sum
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Whether the value may be stored in a [`crate::Matrix`] (rejects NaN and infinities).
    fn is_admissible(self) -> bool;

    /// Whether a morphing-loop gain `g = s - s1` counts as an improvement.
    ///
    /// Exact types require `g > 0`. Floating types require `g` to exceed
    /// `sqrt(eps) * (|s| + |s1|)`: with exact aggregation `s` and `s1` can be
    /// the same rect summed along different axes, and their rounding
    /// difference must not keep the loop alive.
    fn is_gain(g: Self, s: Self, s1: Self) -> bool;

    /// Lossy widening used by metrics that are always computed in `f64`.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! float_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            #[inline]
            fn is_admissible(self) -> bool {
                self.is_finite()
            }

            #[inline]
            fn is_gain(g: Self, s: Self, s1: Self) -> bool {
                g > <$t>::EPSILON.sqrt() * (s.abs() + s1.abs())
            }
        }
    )*};
}

macro_rules! int_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            #[inline]
            fn is_admissible(self) -> bool {
                true
            }

            #[inline]
            fn is_gain(g: Self, _s: Self, _s1: Self) -> bool {
                g > 0
            }
        }
    )*};
}

float_weight!(f32, f64);
int_weight!(i32, i64);

/// Floating weights, for operations that divide (mean subtraction, blurring).
pub trait FloatWeight: Weight + num_traits::Float {}

impl FloatWeight for f32 {}
impl FloatWeight for f64 {}
