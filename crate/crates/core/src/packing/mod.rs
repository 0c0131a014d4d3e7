//! Circle packings of cusp cross-sections of the augmented pretzel link.
//!
//! Pictures are Euclidean, seen from a cusp at infinity, normalized so the
//! two white-face lines are `y = 0` and `y = 1` (`ell_s = 1`). The shaded
//! walls are vertical and pass through the centres of the two unit circles
//! that touch both lines.

mod circle;
mod models;
mod rect;
mod solver;
mod steiner;

pub use circle::{GeneralizedCircle, Point};
pub use models::{crossing_graph, knot_graph};
pub use rect::{
    bound_checks, chain_len, chain_name, knot_cusp_tiling, model_edges, normalized_length_lower_bound,
    normalized_slope_length, wall_circles, BoundCheck, CuspRectangle, FaceClass, KnotCuspTiling, PackedCircle,
    RectKind, D_STAR, FLOOR, ROOF,
};
pub use solver::{solve_tangency, Affine, Node, Solution, TangencyGraph};
pub use steiner::SteinerChain;

use crate::error::{Error, Result};
use crate::real::Real;

fn consistency_limit<T: Real>() -> f64 {
    (T::solve_tol().to_f64_lossy() * 100.0).max(1e-8)
}

fn check_residual<T: Real>(rect: CuspRectangle<T>) -> Result<CuspRectangle<T>> {
    if rect.residual < T::solve_tol() {
        Ok(rect)
    } else {
        Err(Error::Numerical {
            what: "rectangle packing",
            reason: "tangency residual above tolerance".into(),
            residual: rect.residual.to_f64_lossy(),
            trace: vec![],
        })
    }
}

/// Crossing-circle rectangle by Newton iteration on the symmetric model.
///
/// # Errors
/// Domain error for `n < 2`; solver errors; [`Error::Consistency`] if the
/// solved packing breaks `ell_w = 1 + D(P*)`.
pub fn solve_crossing_rectangle<T: Real>(n: usize) -> Result<CuspRectangle<T>> {
    rect::check_n(n)?;
    let (g, init) = crossing_graph::<T>(n);
    let circles = models::solve_model(&g, &init)?;
    let rect = check_residual(rect::assemble(RectKind::CrossingCircle, n, circles)?)?;
    let gap = (rect.ell_w - (T::one() + rect.d_star())).abs().to_f64_lossy();
    if gap > consistency_limit::<T>() {
        return Err(Error::Consistency {
            what: "ell_w = 1 + D(P*)",
            gap,
            limit: consistency_limit::<T>(),
        });
    }
    Ok(rect)
}

/// Crossing-circle rectangle as the image of the concentric Steiner chain
/// under inversion at a contact point of two chain circles.
pub fn steiner_cross_check<T: Real>(n: usize) -> Result<CuspRectangle<T>> {
    rect::check_n(n)?;
    check_residual(rect::assemble(
        RectKind::CrossingCircle,
        n,
        steiner::crossing_circles::<T>(n)?,
    )?)
}

/// Knot rectangle from the Newton model alone.
pub fn knot_rectangle_newton<T: Real>(n: usize) -> Result<CuspRectangle<T>> {
    rect::check_n(n)?;
    let (g, init) = knot_graph::<T>(n);
    let circles = models::solve_model(&g, &init)?;
    check_residual(rect::assemble(RectKind::KnotCusp, n, circles)?)
}

/// Knot rectangle as the image of the Steiner chain under inversion at the
/// contact of a chain circle with the inner circle, cross-checked against
/// the Newton model.
///
/// # Errors
/// Domain error for `n < 2`; solver errors; [`Error::Consistency`] when the
/// two constructions differ by more than `1e-8` in `ell_w`, `D(B)` or `D(P*)`.
pub fn solve_knot_rectangle<T: Real>(n: usize) -> Result<CuspRectangle<T>> {
    rect::check_n(n)?;
    let mobius = check_residual(rect::assemble(RectKind::KnotCusp, n, steiner::knot_circles::<T>(n)?)?)?;
    let newton = knot_rectangle_newton::<T>(n)?;
    let limit = consistency_limit::<T>();
    for (what, a, b) in [
        ("knot rectangle ell_w", mobius.ell_w, newton.ell_w),
        (
            "knot rectangle D(B)",
            mobius.circle_diameters["B"],
            newton.circle_diameters["B"],
        ),
        ("knot rectangle D(P*)", mobius.d_star(), newton.d_star()),
    ] {
        let gap = (a - b).abs().to_f64_lossy();
        if gap > limit {
            return Err(Error::Consistency { what, gap, limit });
        }
    }
    Ok(mobius)
}
