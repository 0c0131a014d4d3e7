//! Quadrature, scalar root finding and small dense linear solves.

mod linear;
mod quad;
mod root;

pub use linear::solve_dense;
pub use quad::{integrate, simpson};
pub use root::{find_root, Bracket};
