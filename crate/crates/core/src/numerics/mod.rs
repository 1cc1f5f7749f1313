//! Numerical kernels shared by the physics modules.

mod crossing;
mod phase;
mod quadrature;

pub use crossing::{find_first_crossing, Crossing, DEFAULT_SCAN_POINTS};
pub use phase::{differentiate_phase, wrap_phase};
pub use quadrature::{gauss_legendre_rule, integrate, QuadratureMethod, QuadratureSpec};
