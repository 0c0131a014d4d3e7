//! Scalar abstraction shared by the geometric and analytic modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating-point scalar usable by every generic routine in the crate.
///
/// Implemented for `f32` and `f64`. The tolerance methods give the
/// stopping criteria used by quadrature, root finding and the tangency
/// solver at the type's precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumCast + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for adaptive quadrature.
    fn quad_tol() -> Self;
    /// Absolute residual tolerance for scalar root finding.
    fn root_tol() -> Self;
    /// Maximum tangency residual accepted from the packing solver.
    fn solve_tol() -> Self;

    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("f64 literal representable")
    }

    /// Converts an integer into `Self`.
    #[inline]
    fn from_int(x: i64) -> Self {
        <Self as NumCast>::from(x).expect("integer representable")
    }

    /// Lossy conversion to `f64` for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        <f64 as NumCast>::from(self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn quad_tol() -> Self {
        1e-13
    }
    fn root_tol() -> Self {
        1e-12
    }
    fn solve_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn quad_tol() -> Self {
        1e-6
    }
    fn root_tol() -> Self {
        1e-5
    }
    fn solve_tol() -> Self {
        2e-4
    }
}
