use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Shift a phase difference by a multiple of 2π into (−π, π].
pub fn wrap_phase(delta: f64) -> f64 {
    let mut d = delta % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

/// Central difference of `arg g` at `e0` with half-step `h`.
///
/// `domain` is the open interval the stencil must stay inside; both stencil
/// points are required to lie strictly within it.
pub fn differentiate_phase<G>(g: G, e0: f64, h: f64, domain: (f64, f64)) -> Result<f64>
where
    G: Fn(f64) -> Result<Complex64>,
{
    if !(h > 0.0) {
        return Err(Error::domain(format!("phase step must be positive, got {h}")));
    }
    let (lo, hi) = (e0 - h, e0 + h);
    if !(lo > domain.0 && hi < domain.1) {
        return Err(Error::domain(format!(
            "phase stencil [{lo:e}, {hi:e}] leaves ({:e}, {:e})",
            domain.0, domain.1
        )));
    }
    let (gp, gm) = (g(hi)?, g(lo)?);
    if gp == Complex64::new(0.0, 0.0) || gm == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("phase of a zero value is undefined"));
    }
    Ok(wrap_phase(gp.arg() - gm.arg()) / (2.0 * h))
}
