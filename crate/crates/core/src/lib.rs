//! Cusp packings, Dehn filling thresholds and mutation orbits for
//! hyperbolic pretzel knots.
//!
//! Geometry and analysis are generic over a [`Real`] scalar (`f32` or
//! `f64`); the aliases below fix the scalar to `f64` with `*32` variants
//! for `f32`. Pretzel combinatorics and certification work in `f64`.

// Negated comparisons are deliberate: they reject NaN along with
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature nodes and reference values keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod commens;
pub mod dehn;
pub mod error;
pub mod hypcore;
pub mod numeric;
pub mod packing;
pub mod pretzel;
pub mod real;

pub use error::{Error, Result};
pub use real::Real;

pub type Circle = packing::GeneralizedCircle<f64>;
pub type Circle32 = packing::GeneralizedCircle<f32>;
pub type CuspRect = packing::CuspRectangle<f64>;
pub type CuspRect32 = packing::CuspRectangle<f32>;
pub type Pattern = commens::HoroballPattern<f64>;
pub type Pattern32 = commens::HoroballPattern<f32>;
pub type Tube = hypcore::TubeData<f64>;
pub type Tube32 = hypcore::TubeData<f32>;
pub type Verdict = hypcore::IsotopyVerdict<f64>;
pub type Verdict32 = hypcore::IsotopyVerdict<f32>;
pub type Slope = dehn::SlopeSpec<f64>;
pub type Slope32 = dehn::SlopeSpec<f32>;
