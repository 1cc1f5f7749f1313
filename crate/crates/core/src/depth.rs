//! Penetration depth and the energy-time uncertainty coefficient.
//!
//! The depth `s` is the first point inside the barrier where
//! `D(x) = |ψ₂(x)|²/|ψ₂(0)|²` drops to `e⁻²`. Thin barriers where `D` never
//! gets that low have no depth, and then no `τ_eff` or `ξ` either.

use crate::barrier::{stationary_solution, BarrierProblem, StationarySolution};
use crate::error::{Error, Result};
use crate::numerics::{find_first_crossing, Crossing, QuadratureSpec, DEFAULT_SCAN_POINTS};
use crate::spectrum::effective_kinematics;
use crate::units::HBAR;

/// `e⁻²` at full precision.
pub fn depth_level() -> f64 {
    (-2.0f64).exp()
}

/// `D(x)` on `[0, d]`.
pub fn relative_density(sol: &StationarySolution, x: f64) -> Result<f64> {
    let at0 = sol.psi_region2(0.0)?.norm_sqr();
    debug_assert!(at0 > 0.0);
    Ok(sol.psi_region2(x)?.norm_sqr() / at0)
}

pub fn penetration_depth(p: &BarrierProblem) -> Result<Crossing> {
    let sol = stationary_solution(p)?;
    let at0 = sol.psi_region2_unchecked(0.0).norm_sqr();
    if !(at0 > 0.0) {
        return Err(Error::domain("wavefunction vanishes at the barrier entrance"));
    }
    let density = |x: f64| sol.psi_region2_unchecked(x).norm_sqr() / at0;
    Ok(find_first_crossing(density, depth_level(), 0.0, p.thickness, DEFAULT_SCAN_POINTS))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthReport {
    pub problem: BarrierProblem,
    /// m; `None` when `D` stays above `e⁻²`.
    pub depth_s: Option<f64>,
    /// s, `depth_s / v_rms`.
    pub tau_eff: Option<f64>,
    /// `2 ε_eff τ_eff / ħ`.
    pub xi: Option<f64>,
    /// J
    pub eps_eff: f64,
}

pub fn uncertainty_report(p: &BarrierProblem, quadrature: &QuadratureSpec) -> Result<DepthReport> {
    let depth_s = penetration_depth(p)?.position();
    let kin = effective_kinematics(p, quadrature)?;
    let tau_eff = depth_s.map(|s| s / kin.v_rms);
    Ok(DepthReport {
        problem: *p,
        depth_s,
        tau_eff,
        xi: tau_eff.map(|t| 2.0 * kin.eps_eff * t / HBAR),
        eps_eff: kin.eps_eff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barrier::DEFAULT_KPRIME;
    use crate::units::{length_nm_to_si, length_si_to_nm};

    fn problem(ratio: f64, d_nm: f64) -> BarrierProblem {
        BarrierProblem::from_ev_nm(10.0 * ratio, 10.0, d_nm, DEFAULT_KPRIME).unwrap()
    }

    fn depth_nm(ratio: f64, d_nm: f64) -> Option<f64> {
        penetration_depth(&problem(ratio, d_nm)).unwrap().position().map(length_si_to_nm)
    }

    #[test]
    fn density_is_one_at_entrance() {
        let sol = stationary_solution(&problem(0.3, 0.5)).unwrap();
        assert_eq!(relative_density(&sol, 0.0).unwrap(), 1.0);
        assert!(relative_density(&sol, -1e-12).is_err());
        assert!(relative_density(&sol, 1e-9).is_err());
    }

    #[test]
    fn deep_tunneling_density_is_exponential() {
        let sol = stationary_solution(&problem(0.01, 1.0)).unwrap();
        for x_nm in [0.1, 0.2, 0.4, 0.6] {
            let x = length_nm_to_si(x_nm);
            let d = relative_density(&sol, x).unwrap();
            let approx = (-2.0 * sol.wn.kappa * x).exp();
            assert!((d / approx - 1.0).abs() < 0.05, "x={x_nm}: {d} vs {approx}");
        }
    }

    #[test]
    fn near_top_density_flattens_at_exit() {
        let sol = stationary_solution(&problem(0.99, 1.0)).unwrap();
        let d = sol.problem.thickness;
        let vals: Vec<f64> = (0..=200)
            .map(|i| relative_density(&sol, d * i as f64 / 200.0).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]));
        // |ψ|² is flat in region 3, so the slope of D vanishes at x = d.
        let entry_slope = vals[0] - vals[1];
        let exit_slope = vals[199] - vals[200];
        assert!(exit_slope < 1e-3 * entry_slope, "{entry_slope} {exit_slope}");
    }

    #[test]
    fn tabulated_depths() {
        for (ratio, d, s) in [(0.01, 1.0, 0.0621), (0.99, 1.0, 0.5065), (0.5, 0.4, 0.0874), (0.9, 0.2, 0.1357)] {
            let got = depth_nm(ratio, d).unwrap();
            assert!((got - s).abs() <= 0.002, "({ratio}, {d}): {got}");
        }
    }

    #[test]
    fn thin_barrier_has_no_depth() {
        for ratio in [0.01, 0.1, 0.5, 0.9, 0.99] {
            assert_eq!(depth_nm(ratio, 0.1), None);
        }
    }

    #[test]
    fn deep_depth_is_thickness_independent() {
        for d in [0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0] {
            let s = depth_nm(0.01, d).unwrap();
            assert!((s - 0.0621).abs() < 5e-5, "{d}: {s}");
        }
    }

    #[test]
    fn deep_depth_is_one_over_kappa() {
        for ratio in [0.01, 0.05, 0.1] {
            for d in [0.5, 0.7, 1.0] {
                let p = problem(ratio, d);
                let inv_kappa = 1.0 / stationary_solution(&p).unwrap().wn.kappa;
                let s = penetration_depth(&p).unwrap().position().unwrap();
                assert!((s - inv_kappa).abs() / inv_kappa < 0.02);
            }
        }
    }

    #[test]
    fn report_identity_and_absence() {
        let q = QuadratureSpec::default();
        let r = uncertainty_report(&problem(0.5, 0.6), &q).unwrap();
        let s = r.depth_s.unwrap();
        assert!(s > 0.0 && s < r.problem.thickness);
        let xi = 2.0 * r.eps_eff * r.tau_eff.unwrap() / HBAR;
        assert_eq!(r.xi.unwrap(), xi);
        assert!(r.xi.unwrap() > 1.5 && r.xi.unwrap() <= 5.0);

        let thin = uncertainty_report(&problem(0.5, 0.1), &q).unwrap();
        assert!(thin.depth_s.is_none() && thin.tau_eff.is_none() && thin.xi.is_none());
        assert!(thin.eps_eff > 0.0);
    }
}
