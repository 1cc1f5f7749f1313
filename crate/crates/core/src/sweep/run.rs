use rayon::prelude::*;

use super::config::SweepConfig;
use crate::barrier::{continuity_residual, stationary_solution, BarrierProblem};
use crate::depth::penetration_depth;
use crate::error::{Error, Result};
use crate::numerics::QuadratureSpec;
use crate::spectrum::{EffectiveKinematics, MomentumSpectrum};
use crate::times::{bl_time, dwell_time_analytic, dwell_time_numeric, phase_time_analytic, phase_time_numeric};
use crate::units::HBAR;

/// Computed quantities for one grid point, all SI. `None` means the value
/// could not be produced; the reason is in the record notes or error.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RecordValues {
    pub transmission: Option<f64>,
    pub reflection: Option<f64>,
    pub max_residual: Option<f64>,
    pub k_rms: Option<f64>,
    pub v_rms: Option<f64>,
    pub t_eff: Option<f64>,
    pub eps_eff: Option<f64>,
    pub t_phase_numeric: Option<f64>,
    pub t_phase_analytic: Option<f64>,
    pub t_dwell_numeric: Option<f64>,
    pub t_dwell_analytic: Option<f64>,
    pub t_bl: Option<f64>,
    pub depth_s: Option<f64>,
    pub tau_eff: Option<f64>,
    pub xi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub e_over_v0: f64,
    pub d_nm: f64,
    pub v0_ev: f64,
    pub kprime: f64,
    pub values: RecordValues,
    /// Reason codes for expected gaps, e.g. `s:no_crossing`.
    pub notes: Vec<String>,
    /// Failures at this point, one entry per failed quantity.
    pub errors: Vec<String>,
}

impl SweepRecord {
    pub fn problem(&self) -> Result<BarrierProblem> {
        BarrierProblem::from_ev_nm(self.e_over_v0 * self.v0_ev, self.v0_ev, self.d_nm, self.kprime)
    }

    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    /// Ordered by `d` then `E/V0`, both ascending.
    pub records: Vec<SweepRecord>,
}

impl SweepResult {
    pub fn find(&self, e_over_v0: f64, d_nm: f64) -> Option<&SweepRecord> {
        find_record(&self.records, e_over_v0, d_nm)
    }
}

pub(crate) fn find_record(records: &[SweepRecord], e_over_v0: f64, d_nm: f64) -> Option<&SweepRecord> {
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1.0);
    records.iter().find(|r| same(r.e_over_v0, e_over_v0) && same(r.d_nm, d_nm))
}

fn grid(cfg: &SweepConfig) -> Vec<(f64, f64)> {
    cfg.d_nm_grid
        .iter()
        .flat_map(|&d| cfg.e_over_v0_grid.iter().map(move |&e| (e, d)))
        .collect()
}

/// Evaluate every grid point, in parallel. The record order does not depend
/// on scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let records = grid(cfg)
        .into_par_iter()
        .map(|(e, d)| evaluate_point(cfg, e, d))
        .collect();
    Ok(SweepResult {
        config: cfg.clone(),
        records,
    })
}

pub fn run_sweep_sequential(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let records = grid(cfg).into_iter().map(|(e, d)| evaluate_point(cfg, e, d)).collect();
    Ok(SweepResult {
        config: cfg.clone(),
        records,
    })
}

/// All quantities at one `(E/V0, d)` point. Failures are recorded, not raised.
pub fn evaluate_point(cfg: &SweepConfig, e_over_v0: f64, d_nm: f64) -> SweepRecord {
    let mut rec = SweepRecord {
        e_over_v0,
        d_nm,
        v0_ev: cfg.v0_ev,
        kprime: cfg.kprime,
        values: RecordValues::default(),
        notes: Vec::new(),
        errors: Vec::new(),
    };
    let p = match rec.problem() {
        Ok(p) => p,
        Err(e) => {
            rec.errors.push(format!("problem: {e}"));
            return rec;
        }
    };
    fill(&mut rec, &p, &cfg.quadrature, cfg.phase_step_ev);
    rec
}

fn fill(rec: &mut SweepRecord, p: &BarrierProblem, quad: &QuadratureSpec, step_ev: f64) {
    fn keep(rec: &mut SweepRecord, what: &str, r: Result<f64>) -> Option<f64> {
        match r {
            Ok(v) if v.is_finite() => Some(v),
            Ok(v) => {
                rec.errors.push(format!("{what}: non-finite value {v}"));
                None
            }
            Err(e) => {
                rec.errors.push(format!("{what}: {e}"));
                None
            }
        }
    }

    match stationary_solution(p) {
        Ok(sol) => {
            rec.values.transmission = Some(sol.transmission());
            rec.values.reflection = Some(sol.reflection());
            rec.values.max_residual = Some(continuity_residual(&sol).into_iter().fold(0.0, f64::max));
        }
        Err(e) => rec.errors.push(format!("solution: {e}")),
    }

    let kin = MomentumSpectrum::new(p, quad)
        .and_then(|s| s.k_rms())
        .map(|k| EffectiveKinematics::from_k_rms(k, p.thickness));
    let kin = match kin {
        Ok(k) => Some(k),
        Err(e) => {
            rec.errors.push(format!("momentum: {e}"));
            None
        }
    };
    if let Some(k) = kin {
        rec.values.k_rms = Some(k.k_rms);
        rec.values.v_rms = Some(k.v_rms);
        rec.values.t_eff = Some(k.t_eff);
        rec.values.eps_eff = Some(k.eps_eff);
    }

    // A stencil that leaves the energy domain is an expected gap at grid edges.
    match phase_time_numeric(p, step_ev) {
        Ok(v) => rec.values.t_phase_numeric = keep(rec, "t_ph_num", Ok(v)),
        Err(Error::Domain(msg)) if msg.contains("stencil") => rec.notes.push("t_ph_num:stencil_clipped".into()),
        Err(e) => rec.values.t_phase_numeric = keep(rec, "t_ph_num", Err(e)),
    }
    rec.values.t_phase_analytic = keep(rec, "t_ph_ana", phase_time_analytic(p));
    rec.values.t_dwell_numeric = keep(rec, "t_dw_num", dwell_time_numeric(p, quad));
    rec.values.t_dwell_analytic = keep(rec, "t_dw_ana", dwell_time_analytic(p));
    rec.values.t_bl = keep(rec, "t_bl", bl_time(p));

    match penetration_depth(p) {
        Ok(c) => match c.position() {
            Some(s) => {
                rec.values.depth_s = Some(s);
                if let Some(k) = kin {
                    let tau = s / k.v_rms;
                    rec.values.tau_eff = Some(tau);
                    rec.values.xi = Some(2.0 * k.eps_eff * tau / HBAR);
                }
            }
            None => rec.notes.push("s:no_crossing".into()),
        },
        Err(e) => rec.errors.push(format!("depth: {e}")),
    }
}
