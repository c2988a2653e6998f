//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point types the library can compute with (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lift an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Lossy conversion used for diagnostics and error payloads.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Largest neck distance accepted by public entry points.
    ///
    /// For `f64` this is 25; narrower types get a smaller cap so that
    /// `sinh(4a + 2t)` on the evaluated range stays finite.
    fn max_neck() -> Self {
        let by_range = Self::max_value().ln() / Self::lit(8.0);
        Self::lit(25.0).min(by_range)
    }

    /// Default absolute quadrature tolerance: `1e-10`, floored a few
    /// hundred ulps above the type's epsilon.
    fn default_abs_tol() -> Self {
        Self::lit(1e-10).max(Self::epsilon() * Self::lit(128.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}
