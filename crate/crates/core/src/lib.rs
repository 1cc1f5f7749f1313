//! Closed-form numerics for an electron tunneling through a one-dimensional
//! rectangular potential barrier, and the tunneling-time quantities built on
//! top of it.
//!
//! The layers, bottom-up:
//!
//! * [`units`]: the physical constants and eV/nm conversions.
//! * [`barrier`]: wavenumbers, the stationary scattering solution and its
//!   boundary-matching residuals.
//! * [`numerics`]: quadrature, phase differentiation and first-crossing search.
//! * [`spectrum`]: the in-barrier momentum distribution and the rms
//!   kinematics derived from it.
//! * [`times`]: phase, dwell and Büttiker–Landauer times.
//! * [`depth`]: relative density, penetration depth and the uncertainty
//!   coefficient.
//! * [`sweep`]: config parsing, grid sweeps and CSV emitters used by the CLI.

// Negated comparisons reject NaN inputs along with out-of-range ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod barrier;
pub mod depth;
pub mod error;
pub mod numerics;
pub mod spectrum;
pub mod sweep;
pub mod times;
pub mod units;

pub use barrier::{BarrierProblem, StationarySolution, Wavenumbers};
pub use depth::DepthReport;
pub use error::{Error, Result};
pub use numerics::{QuadratureMethod, QuadratureSpec};
pub use spectrum::{EffectiveKinematics, MomentumSpectrum};
pub use times::TimeReport;
pub use units::PhysicalConstants;
