//! Momentum distribution of the in-barrier wavefunction.
//!
//! `ψ(K) = (1/√2π) ∫₀^d e^{−iKx} ψ₂(x) dx` is evaluated from its elementary
//! antiderivative; quadrature is only used for the normalization and the
//! second moment over `[−K′, K′]`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::barrier::{stationary_solution, BarrierProblem, StationarySolution};
use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadratureSpec};
use crate::units::{ELECTRON_MASS, HBAR};

/// Closed-form Fourier amplitude of region 2 at wavenumber `K`.
pub fn momentum_amplitude(sol: &StationarySolution, wavenumber: f64) -> Complex64 {
    let d = sol.problem.thickness;
    let kappa = sol.wn.kappa;
    let grow = Complex64::new(kappa, -wavenumber);
    let decay = Complex64::new(-kappa, -wavenumber);
    let term = |c: Complex64| ((c * d).exp() - 1.0) / c;
    (sol.a * term(grow) + sol.b * term(decay)) / (2.0 * PI).sqrt()
}

#[derive(Debug, Clone)]
pub struct MomentumSpectrum {
    pub solution: StationarySolution,
    /// `∫_{−K′}^{K′} |ψ(K)|² dK`.
    pub normalization: f64,
    pub quadrature: QuadratureSpec,
}

impl MomentumSpectrum {
    pub fn new(p: &BarrierProblem, quadrature: &QuadratureSpec) -> Result<Self> {
        let solution = stationary_solution(p)?;
        let cutoff = p.cutoff;
        let normalization = integrate(
            |k| momentum_amplitude(&solution, k).norm_sqr(),
            -cutoff,
            cutoff,
            quadrature,
        )?;
        if !(normalization > 0.0) {
            return Err(Error::domain("momentum distribution has zero weight inside the cutoff"));
        }
        Ok(MomentumSpectrum {
            solution,
            normalization,
            quadrature: *quadrature,
        })
    }

    pub fn cutoff(&self) -> f64 {
        self.solution.problem.cutoff
    }

    pub fn amplitude(&self, wavenumber: f64) -> Complex64 {
        momentum_amplitude(&self.solution, wavenumber)
    }

    /// Normalized density `P(K)`, in metres.
    pub fn pdf(&self, wavenumber: f64) -> Result<f64> {
        if !(wavenumber.abs() <= self.cutoff()) {
            return Err(Error::domain(format!(
                "K = {wavenumber:e} 1/m lies outside [-K', K'] with K' = {:e}",
                self.cutoff()
            )));
        }
        Ok(self.pdf_unchecked(wavenumber))
    }

    fn pdf_unchecked(&self, wavenumber: f64) -> f64 {
        self.amplitude(wavenumber).norm_sqr() / self.normalization
    }

    /// Root-mean-square wavenumber over `[−K′, K′]`.
    pub fn k_rms(&self) -> Result<f64> {
        let c = self.cutoff();
        let second = integrate(|k| k * k * self.pdf_unchecked(k), -c, c, &self.quadrature)?;
        Ok(second.sqrt())
    }
}

/// rms kinematics of the tunneling electron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveKinematics {
    /// 1/m
    pub k_rms: f64,
    /// m/s, `ħ K_rms / m`.
    pub v_rms: f64,
    /// s, `d / v_rms`.
    pub t_eff: f64,
    /// J, `m v_rms² / 2`.
    pub eps_eff: f64,
}

impl EffectiveKinematics {
    pub fn from_k_rms(k_rms: f64, thickness: f64) -> Self {
        let v_rms = k_rms * HBAR / ELECTRON_MASS;
        EffectiveKinematics {
            k_rms,
            v_rms,
            t_eff: thickness / v_rms,
            eps_eff: 0.5 * ELECTRON_MASS * v_rms * v_rms,
        }
    }
}

pub fn effective_kinematics(p: &BarrierProblem, quadrature: &QuadratureSpec) -> Result<EffectiveKinematics> {
    let spectrum = MomentumSpectrum::new(p, quadrature)?;
    Ok(EffectiveKinematics::from_k_rms(spectrum.k_rms()?, p.thickness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barrier::DEFAULT_KPRIME;
    use crate::units::{EV, SPEED_OF_LIGHT};

    fn problem(e_ev: f64, d_nm: f64) -> BarrierProblem {
        BarrierProblem::from_ev_nm(e_ev, 10.0, d_nm, DEFAULT_KPRIME).unwrap()
    }

    #[test]
    fn amplitude_at_zero_wavenumber() {
        let sol = stationary_solution(&problem(3.0, 0.7)).unwrap();
        let (kappa, d) = (sol.wn.kappa, sol.problem.thickness);
        let expect = (sol.a * ((kappa * d).exp() - 1.0) / kappa
            + sol.b * (1.0 - (-kappa * d).exp()) / kappa)
            / (2.0 * PI).sqrt();
        let got = momentum_amplitude(&sol, 0.0);
        assert!((got - expect).norm() <= 1e-13 * expect.norm());
    }

    #[test]
    fn amplitude_vanishes_with_thickness() {
        let sol = stationary_solution(&problem(5.0, 1e-4)).unwrap();
        let d = sol.problem.thickness;
        let bound = d * (sol.a.norm() + sol.b.norm()) * 1.0001 / (2.0 * PI).sqrt();
        for k in [-DEFAULT_KPRIME, 0.0, 3e10] {
            let amp = momentum_amplitude(&sol, k).norm();
            assert!(amp <= bound && amp < 1e-12, "{amp}");
        }
    }

    #[test]
    fn amplitude_matches_quadrature() {
        let oracle = QuadratureSpec::default().with_rel_tol(1e-13);
        let sol = stationary_solution(&problem(2.0, 0.8)).unwrap();
        let d = sol.problem.thickness;
        for k in [-DEFAULT_KPRIME, -0.5 * DEFAULT_KPRIME, 0.0, 0.5 * DEFAULT_KPRIME, DEFAULT_KPRIME] {
            let integrand = |x: f64| Complex64::from_polar(1.0, -k * x) * sol.psi_region2(x).unwrap();
            let re = integrate(|x| integrand(x).re, 0.0, d, &oracle).unwrap() / (2.0 * PI).sqrt();
            let im = integrate(|x| integrand(x).im, 0.0, d, &oracle).unwrap() / (2.0 * PI).sqrt();
            let got = momentum_amplitude(&sol, k);
            let scale = got.norm();
            assert!((got.re - re).abs() <= 1e-8 * scale, "K={k:e}");
            assert!((got.im - im).abs() <= 1e-8 * scale, "K={k:e}");
        }
    }

    #[test]
    fn pdf_is_normalized_and_nonnegative() {
        let spec = MomentumSpectrum::new(&problem(5.0, 0.5), &QuadratureSpec::default()).unwrap();
        let c = spec.cutoff();
        let total = integrate(|k| spec.pdf(k).unwrap(), -c, c, &QuadratureSpec::default()).unwrap();
        assert!((total - 1.0).abs() < 1e-9);
        for i in 0..=200 {
            let k = -c + 2.0 * c * i as f64 / 200.0;
            assert!(spec.pdf(k).unwrap() >= 0.0);
        }
        assert!(spec.pdf(1.01 * c).is_err());
    }

    fn interquartile_width(spec: &MomentumSpectrum) -> f64 {
        let c = spec.cutoff();
        let n = 20_000;
        let dk = 2.0 * c / n as f64;
        let mut cdf = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cdf.push(0.0);
        for i in 0..n {
            let k0 = -c + i as f64 * dk;
            acc += 0.5 * dk * (spec.pdf(k0).unwrap() + spec.pdf((k0 + dk).min(c)).unwrap());
            cdf.push(acc);
        }
        let quantile = |q: f64| {
            let i = cdf.iter().position(|v| *v >= q * acc).unwrap();
            -c + i as f64 * dk
        };
        quantile(0.75) - quantile(0.25)
    }

    #[test]
    fn width_shrinks_with_energy_for_thick_barrier() {
        let q = QuadratureSpec::default();
        let low = MomentumSpectrum::new(&problem(1.0, 1.0), &q).unwrap();
        let high = MomentumSpectrum::new(&problem(9.0, 1.0), &q).unwrap();
        assert!(interquartile_width(&high) < interquartile_width(&low));
    }

    #[test]
    fn kinematics_identities() {
        let p = problem(4.0, 0.6);
        let kin = effective_kinematics(&p, &QuadratureSpec::default()).unwrap();
        assert!(kin.k_rms > 0.0 && kin.k_rms <= p.cutoff);
        assert!((kin.v_rms - kin.k_rms * HBAR / ELECTRON_MASS).abs() <= 1e-15 * kin.v_rms);
        assert!((kin.t_eff - p.thickness / kin.v_rms).abs() <= 1e-15 * kin.t_eff);
        let eps = HBAR * HBAR * kin.k_rms * kin.k_rms / (2.0 * ELECTRON_MASS);
        assert!((kin.eps_eff - eps).abs() <= 1e-12 * eps);
        assert!(kin.v_rms < SPEED_OF_LIGHT);
    }

    #[test]
    fn k_rms_grows_with_cutoff() {
        let q = QuadratureSpec::default();
        for (e, d) in [(0.1, 1.0), (5.0, 0.3), (9.9, 0.1)] {
            let p = problem(e, d);
            let base = effective_kinematics(&p, &q).unwrap().k_rms;
            let wide = effective_kinematics(&p.with_cutoff(1.5 * p.cutoff).unwrap(), &q).unwrap().k_rms;
            assert!(wide >= base, "E={e} d={d}");
        }
    }

    #[test]
    fn deep_tunneling_energy_limit() {
        let kin = effective_kinematics(&problem(0.1, 1.0), &QuadratureSpec::default()).unwrap();
        let total = kin.eps_eff / EV + 10.0;
        assert!((total - 34.102).abs() <= 0.02 * 34.102, "{total}");
    }

    #[test]
    fn effective_time_increases_with_thickness() {
        let q = QuadratureSpec::default();
        let t: Vec<f64> = (1..=10)
            .map(|i| {
                let d = 0.1 * i as f64;
                effective_kinematics(&problem(5.0, d), &q).unwrap().t_eff
            })
            .collect();
        assert!(t.windows(2).all(|w| w[1] > w[0]), "{t:?}");
    }
}
