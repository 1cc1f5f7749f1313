//! Stationary scattering off a rectangular barrier of height `V0` on `[0, d]`.
//!
//! Region 1 (`x < 0`) carries the unit incident wave plus the reflection `R`,
//! region 2 the growing and decaying modes `A e^{κx} + B e^{−κx}`, region 3
//! (`x > d`) the transmitted wave `S e^{ikx}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::units::{energy_ev_to_si, length_nm_to_si, ELECTRON_MASS, EV, HBAR};

/// Smallest `V0 − E` accepted, in eV. Closer to threshold the barrier
/// becomes transparent and `κd` too small for the opaque-regime formulas.
pub const THRESHOLD_GAP_EV: f64 = 1e-6;

/// Default momentum cutoff `K′`, 1/m.
pub const DEFAULT_KPRIME: f64 = 7.5e10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Full statement of a tunneling problem, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierProblem {
    /// Incident kinetic energy, J.
    pub energy: f64,
    /// Barrier height, J.
    pub height: f64,
    /// Barrier thickness, m.
    pub thickness: f64,
    /// Momentum cutoff `K′` for the in-barrier spectrum, 1/m.
    pub cutoff: f64,
}

impl BarrierProblem {
    pub fn new(energy: f64, height: f64, thickness: f64, cutoff: f64) -> Result<Self> {
        let p = BarrierProblem {
            energy,
            height,
            thickness,
            cutoff,
        };
        p.validate()?;
        Ok(p)
    }

    /// Build from eV / nm inputs, the units used at the CLI boundary.
    pub fn from_ev_nm(energy_ev: f64, height_ev: f64, thickness_nm: f64, cutoff: f64) -> Result<Self> {
        Self::new(
            energy_ev_to_si(energy_ev),
            energy_ev_to_si(height_ev),
            length_nm_to_si(thickness_nm),
            cutoff,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.energy, self.height, self.thickness, self.cutoff]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::domain("barrier problem contains a non-finite value"));
        }
        if !(self.energy > 0.0) {
            return Err(Error::domain(format!("energy must be positive, got {:e} J", self.energy)));
        }
        if !(self.energy < self.height) {
            return Err(Error::domain(format!(
                "energy {:e} J is not below the barrier height {:e} J",
                self.energy, self.height
            )));
        }
        if self.height - self.energy < THRESHOLD_GAP_EV * EV {
            return Err(Error::domain(format!(
                "V0 - E = {:e} eV is below the {THRESHOLD_GAP_EV:e} eV threshold guard",
                (self.height - self.energy) / EV
            )));
        }
        if !(self.thickness > 0.0) {
            return Err(Error::domain(format!("thickness must be positive, got {:e} m", self.thickness)));
        }
        if !(self.cutoff > 0.0) {
            return Err(Error::domain(format!("cutoff K' must be positive, got {:e} 1/m", self.cutoff)));
        }
        Ok(())
    }

    /// Same barrier at a different incident energy.
    pub fn with_energy(&self, energy: f64) -> Result<Self> {
        Self::new(energy, self.height, self.thickness, self.cutoff)
    }

    pub fn with_thickness(&self, thickness: f64) -> Result<Self> {
        Self::new(self.energy, self.height, thickness, self.cutoff)
    }

    pub fn with_cutoff(&self, cutoff: f64) -> Result<Self> {
        Self::new(self.energy, self.height, self.thickness, cutoff)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavenumbers {
    /// Propagating wavenumber outside the barrier, 1/m.
    pub k: f64,
    /// Decay constant inside the barrier, 1/m.
    pub kappa: f64,
}

/// `k = √(2mE)/ħ` and `κ = √(2m(V0 − E))/ħ`.
pub fn wavenumbers(p: &BarrierProblem) -> Result<Wavenumbers> {
    p.validate()?;
    Ok(Wavenumbers {
        k: (2.0 * ELECTRON_MASS * p.energy).sqrt() / HBAR,
        kappa: (2.0 * ELECTRON_MASS * (p.height - p.energy)).sqrt() / HBAR,
    })
}

/// Transmission amplitude `S` for wavenumbers `k`, `κ` and thickness `d`.
pub fn transmission_amplitude(wn: Wavenumbers, d: f64) -> Complex64 {
    let r = wn.k / wn.kappa;
    let kd = wn.kappa * d;
    let num = -2.0 * I * r * Complex64::from_polar(1.0, -wn.k * d);
    let den = (1.0 - r * r) * kd.sinh() - 2.0 * I * r * kd.cosh();
    num / den
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarySolution {
    pub problem: BarrierProblem,
    pub wn: Wavenumbers,
    /// Transmission amplitude.
    pub s: Complex64,
    /// Growing-mode coefficient in the barrier.
    pub a: Complex64,
    /// Decaying-mode coefficient in the barrier.
    pub b: Complex64,
    /// Reflection amplitude.
    pub r: Complex64,
}

/// Solve for `S`, `A`, `B` and `R`.
///
/// `A` and `B` follow from matching region 2 onto `S e^{ikx}` at `x = d`;
/// `R` then follows from matching at `x = 0`.
pub fn stationary_solution(p: &BarrierProblem) -> Result<StationarySolution> {
    let wn = wavenumbers(p)?;
    let d = p.thickness;
    let (k, kappa) = (wn.k, wn.kappa);
    let s = transmission_amplitude(wn, d);
    let ikr = I * (k / kappa);
    let transmitted_at_d = s * Complex64::from_polar(1.0, k * d);
    let a = transmitted_at_d / 2.0 * (1.0 + ikr) * (-kappa * d).exp();
    let b = transmitted_at_d / 2.0 * (1.0 - ikr) * (kappa * d).exp();
    let r = (transmitted_at_d * (-kappa * d).exp() - 1.0) * (1.0 + ikr) * (1.0 + ikr)
        / (1.0 + (k / kappa).powi(2));
    Ok(StationarySolution {
        problem: *p,
        wn,
        s,
        a,
        b,
        r,
    })
}

impl StationarySolution {
    pub fn transmission(&self) -> f64 {
        self.s.norm_sqr()
    }

    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }

    /// `e^{ikx} + R e^{−ikx}`, meaningful for `x ≤ 0`.
    pub fn psi_region1(&self, x: f64) -> Complex64 {
        let k = self.wn.k;
        Complex64::from_polar(1.0, k * x) + self.r * Complex64::from_polar(1.0, -k * x)
    }

    pub fn dpsi_region1(&self, x: f64) -> Complex64 {
        let k = self.wn.k;
        I * k * (Complex64::from_polar(1.0, k * x) - self.r * Complex64::from_polar(1.0, -k * x))
    }

    /// `A e^{κx} + B e^{−κx}` on `[0, d]`.
    pub fn psi_region2(&self, x: f64) -> Result<Complex64> {
        self.check_inside(x)?;
        Ok(self.psi_region2_unchecked(x))
    }

    pub(crate) fn psi_region2_unchecked(&self, x: f64) -> Complex64 {
        let kappa = self.wn.kappa;
        self.a * (kappa * x).exp() + self.b * (-kappa * x).exp()
    }

    pub fn dpsi_region2(&self, x: f64) -> Result<Complex64> {
        self.check_inside(x)?;
        let kappa = self.wn.kappa;
        Ok(kappa * (self.a * (kappa * x).exp() - self.b * (-kappa * x).exp()))
    }

    /// `S e^{ikx}`, meaningful for `x ≥ d`.
    pub fn psi_region3(&self, x: f64) -> Complex64 {
        self.s * Complex64::from_polar(1.0, self.wn.k * x)
    }

    pub fn dpsi_region3(&self, x: f64) -> Complex64 {
        I * self.wn.k * self.psi_region3(x)
    }

    fn check_inside(&self, x: f64) -> Result<()> {
        let d = self.problem.thickness;
        if (0.0..=d).contains(&x) {
            Ok(())
        } else {
            Err(Error::domain(format!("x = {x:e} m lies outside the barrier [0, {d:e}]")))
        }
    }
}

/// Free-function form of [`StationarySolution::psi_region2`].
pub fn psi_region2(sol: &StationarySolution, x: f64) -> Result<Complex64> {
    sol.psi_region2(x)
}

/// Incident probability flux `ħk/m` of the unit plane wave, which equals the
/// classical speed `√(2E/m)`.
pub fn incident_flux(p: &BarrierProblem) -> Result<f64> {
    Ok(HBAR * wavenumbers(p)?.k / ELECTRON_MASS)
}

/// Boundary-matching residuals, each relative to the exterior side:
///
/// `[|ψ₁−ψ₂|/|ψ₁| at 0, |ψ₁′−ψ₂′|/|ψ₁′| at 0, |ψ₂−ψ₃|/|ψ₃| at d, |ψ₂′−ψ₃′|/|ψ₃′| at d]`.
///
/// Derivative terms are compared in units of `k`, so the ratio is the same
/// as for the `/k`-scaled differences.
pub fn continuity_residual(sol: &StationarySolution) -> [f64; 4] {
    let d = sol.problem.thickness;
    let rel = |lhs: Complex64, rhs: Complex64| (lhs - rhs).norm() / lhs.norm().max(f64::MIN_POSITIVE);
    let psi2_0 = sol.psi_region2_unchecked(0.0);
    let psi2_d = sol.psi_region2_unchecked(d);
    let kappa = sol.wn.kappa;
    let dpsi2 = |x: f64| kappa * (sol.a * (kappa * x).exp() - sol.b * (-kappa * x).exp());
    [
        rel(sol.psi_region1(0.0), psi2_0),
        rel(sol.dpsi_region1(0.0), dpsi2(0.0)),
        rel(sol.psi_region3(d), psi2_d),
        rel(sol.dpsi_region3(d), dpsi2(d)),
    ]
}
