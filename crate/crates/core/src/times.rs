//! Literature tunneling times: Wigner phase time, Smith dwell time and the
//! Büttiker–Landauer traversal time, next to the rms effective time.
//!
//! Phase and dwell times each come in two independent forms, a numeric one
//! built from the amplitude / wavefunction and a closed-form one, so they can
//! certify each other.

use crate::barrier::{incident_flux, stationary_solution, transmission_amplitude, wavenumbers, BarrierProblem};
use crate::error::Result;
use crate::numerics::{differentiate_phase, integrate, QuadratureSpec};
use crate::spectrum::effective_kinematics;
use crate::units::{energy_ev_to_si, ELECTRON_MASS, EV, HBAR};
use crate::barrier::THRESHOLD_GAP_EV;

/// Default half-step for the phase derivative, eV.
pub const DEFAULT_PHASE_STEP_EV: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeReport {
    pub t_eff: f64,
    pub t_phase_numeric: f64,
    pub t_phase_analytic: f64,
    pub t_dwell_numeric: f64,
    pub t_dwell_analytic: f64,
    pub t_bl: f64,
    /// Shared denominator `4κ²k² + (2mV0/ħ²)² sinh²(κd)`, 1/m⁴.
    pub d_denominator: f64,
}

/// `2mV0/ħ²`, 1/m².
fn barrier_wavenumber_sq(p: &BarrierProblem) -> f64 {
    2.0 * ELECTRON_MASS * p.height / (HBAR * HBAR)
}

/// `4κ²k² + (2mV0/ħ²)² sinh²(κd)`.
pub fn shared_denominator(p: &BarrierProblem) -> Result<f64> {
    let wn = wavenumbers(p)?;
    let k0 = barrier_wavenumber_sq(p);
    let sh = (wn.kappa * p.thickness).sinh();
    Ok(4.0 * wn.kappa.powi(2) * wn.k.powi(2) + k0 * k0 * sh * sh)
}

/// Free-flight time over `d` plus `ħ d(arg S)/dE` by central difference.
pub fn phase_time_numeric(p: &BarrierProblem, step_ev: f64) -> Result<f64> {
    let speed = (2.0 * p.energy / ELECTRON_MASS).sqrt();
    let h = energy_ev_to_si(step_ev);
    let upper = p.height - THRESHOLD_GAP_EV * EV;
    let amplitude = |e: f64| -> Result<_> {
        let wn = wavenumbers(&p.with_energy(e)?)?;
        Ok(transmission_amplitude(wn, p.thickness))
    };
    let dphase = differentiate_phase(amplitude, p.energy, h, (0.0, upper))?;
    Ok(p.thickness / speed + HBAR * dphase)
}

pub fn phase_time_analytic(p: &BarrierProblem) -> Result<f64> {
    let wn = wavenumbers(p)?;
    let (k, kappa, d) = (wn.k, wn.kappa, p.thickness);
    let k0 = barrier_wavenumber_sq(p);
    let bracket = 2.0 * kappa * d * k * k * (kappa * kappa - k * k) + k0 * k0 * (2.0 * kappa * d).sinh();
    Ok(ELECTRON_MASS / (HBAR * k * kappa * shared_denominator(p)?) * bracket)
}

/// In-barrier probability over the incident flux.
pub fn dwell_time_numeric(p: &BarrierProblem, quadrature: &QuadratureSpec) -> Result<f64> {
    let sol = stationary_solution(p)?;
    let inside = integrate(|x| sol.psi_region2_unchecked(x).norm_sqr(), 0.0, p.thickness, quadrature)?;
    Ok(inside / incident_flux(p)?)
}

pub fn dwell_time_analytic(p: &BarrierProblem) -> Result<f64> {
    let wn = wavenumbers(p)?;
    let (k, kappa, d) = (wn.k, wn.kappa, p.thickness);
    let k0 = barrier_wavenumber_sq(p);
    let bracket = 2.0 * kappa * d * (kappa * kappa - k * k) + k0 * (2.0 * kappa * d).sinh();
    Ok(ELECTRON_MASS * k / (HBAR * kappa * shared_denominator(p)?) * bracket)
}

/// `m d / (ħ κ)`.
pub fn bl_time(p: &BarrierProblem) -> Result<f64> {
    Ok(ELECTRON_MASS * p.thickness / (HBAR * wavenumbers(p)?.kappa))
}

pub fn time_report(p: &BarrierProblem, quadrature: &QuadratureSpec, step_ev: f64) -> Result<TimeReport> {
    Ok(TimeReport {
        t_eff: effective_kinematics(p, quadrature)?.t_eff,
        t_phase_numeric: phase_time_numeric(p, step_ev)?,
        t_phase_analytic: phase_time_analytic(p)?,
        t_dwell_numeric: dwell_time_numeric(p, quadrature)?,
        t_dwell_analytic: dwell_time_analytic(p)?,
        t_bl: bl_time(p)?,
        d_denominator: shared_denominator(p)?,
    })
}
