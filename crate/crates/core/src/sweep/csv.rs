//! CSV emitters for sweep results.
//!
//! Every file starts with `#` metadata lines (tool version, the config that
//! produced it, notes on clipped points), then a mandatory header row.
//! Numbers use six significant digits, except the `table1` depths which use
//! four decimals in nm. Missing values are empty cells.

use std::fmt::Write as _;

use super::config::{parse_config, OutputKind};
use super::run::{find_record, RecordValues, SweepRecord, SweepResult};
use crate::barrier::{continuity_residual, stationary_solution};
use crate::depth::relative_density;
use crate::error::{Error, Result};
use crate::numerics::QuadratureSpec;
use crate::spectrum::MomentumSpectrum;
use crate::units::{length_si_to_nm, EV};

pub const TABLE1_E_OVER_V0: [f64; 5] = [0.01, 0.1, 0.5, 0.9, 0.99];
pub const TABLE1_D_NM: [f64; 9] = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

const FIG1_K_POINTS: usize = 129;
const FIG4_X_POINTS: usize = 128;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Six significant digits, `%g` style: fixed notation for exponents in
/// `[-5, 6)`, scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return String::new();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..6).contains(&exp) {
        let fixed = format!("{:.*}", (5 - exp) as usize, v);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_default()
}

fn metadata(result: &SweepResult, kind: &str) -> String {
    let mut out = format!("# tunneltime {VERSION}\n# output: {kind}\n");
    for line in result.config.to_config_text().lines() {
        let _ = writeln!(out, "# config: {line}");
    }
    for r in &result.records {
        for note in r.notes.iter().filter(|n| n.ends_with("clipped")) {
            let _ = writeln!(out, "# clipped: {note} at E_over_V0={} d_nm={}", fmt_sig(r.e_over_v0), fmt_sig(r.d_nm));
        }
    }
    out
}

const RECORD_COLUMNS: [&str; 22] = [
    "E_over_V0",
    "d_nm",
    "E_eV",
    "V0_eV",
    "Kprime_per_m",
    "S2",
    "R2",
    "max_residual",
    "k_rms_per_m",
    "v_rms_m_per_s",
    "t_eff_s",
    "eps_eff_eV",
    "t_ph_num_s",
    "t_ph_ana_s",
    "t_dw_num_s",
    "t_dw_ana_s",
    "t_bl_s",
    "s_nm",
    "tau_eff_s",
    "xi",
    "notes",
    "error",
];

/// Output columns 5..20 paired with their field accessor and the factor
/// that converts SI into the column's unit.
fn value_columns(v: &mut RecordValues) -> [(&mut Option<f64>, f64); 15] {
    [
        (&mut v.transmission, 1.0),
        (&mut v.reflection, 1.0),
        (&mut v.max_residual, 1.0),
        (&mut v.k_rms, 1.0),
        (&mut v.v_rms, 1.0),
        (&mut v.t_eff, 1.0),
        (&mut v.eps_eff, 1.0 / EV),
        (&mut v.t_phase_numeric, 1.0),
        (&mut v.t_phase_analytic, 1.0),
        (&mut v.t_dwell_numeric, 1.0),
        (&mut v.t_dwell_analytic, 1.0),
        (&mut v.t_bl, 1.0),
        (&mut v.depth_s, 1e9),
        (&mut v.tau_eff, 1.0),
        (&mut v.xi, 1.0),
    ]
}

fn sanitize(s: &str) -> String {
    s.replace([',', '\n', '\r'], ";")
}

/// One row per grid point with every computed quantity.
pub fn emit_records(result: &SweepResult) -> String {
    let mut out = metadata(result, "records");
    out.push_str(&RECORD_COLUMNS.join(","));
    out.push('\n');
    for r in &result.records {
        let mut values = r.values;
        let mut row = vec![
            fmt_sig(r.e_over_v0),
            fmt_sig(r.d_nm),
            fmt_sig(r.e_over_v0 * r.v0_ev),
            fmt_sig(r.v0_ev),
            fmt_sig(r.kprime),
        ];
        row.extend(value_columns(&mut values).into_iter().map(|(v, f)| cell(v.map(|x| x * f))));
        row.push(r.notes.join(";"));
        row.push(sanitize(&r.errors.join(" | ")));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parse a records CSV written by [`emit_records`] back into a result.
///
/// The config is recovered from the `# config:` metadata lines.
pub fn parse_records(text: &str) -> Result<SweepResult> {
    let mut config_text = String::new();
    let mut records = Vec::new();
    let mut seen_header = false;
    for (idx, line) in text.lines().enumerate() {
        let err = |message: String| Error::Parse { line: idx + 1, message };
        if let Some(meta) = line.strip_prefix('#') {
            if let Some(c) = meta.trim_start().strip_prefix("config:") {
                config_text.push_str(c.trim());
                config_text.push('\n');
            }
            continue;
        }
        if !seen_header {
            if line != RECORD_COLUMNS.join(",") {
                return Err(err("unexpected header row".into()));
            }
            seen_header = true;
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != RECORD_COLUMNS.len() {
            return Err(err(format!("expected {} cells, got {}", RECORD_COLUMNS.len(), cells.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| err(format!("'{s}' is not a number")));
        let opt = |s: &str| if s.is_empty() { Ok(None) } else { num(s).map(Some) };
        let mut values = RecordValues::default();
        for ((slot, factor), text) in value_columns(&mut values).into_iter().zip(&cells[5..20]) {
            *slot = opt(text)?.map(|v| v / factor);
        }
        let split = |s: &str, sep: &str| -> Vec<String> {
            if s.is_empty() {
                Vec::new()
            } else {
                s.split(sep).map(str::to_string).collect()
            }
        };
        records.push(SweepRecord {
            e_over_v0: num(cells[0])?,
            d_nm: num(cells[1])?,
            v0_ev: num(cells[3])?,
            kprime: num(cells[4])?,
            values,
            notes: split(cells[20], ";"),
            errors: split(cells[21], " | "),
        });
    }
    if !seen_header {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: "missing header row".into(),
        });
    }
    Ok(SweepResult {
        config: parse_config(&config_text)?,
        records,
    })
}

/// Penetration depths on the published grid, E/V0 outer and d inner.
pub fn emit_table1(result: &SweepResult) -> Result<String> {
    let mut out = metadata(result, "table1");
    out.push_str("E_over_V0,d_nm,s_nm\n");
    for &e in &TABLE1_E_OVER_V0 {
        for &d in &TABLE1_D_NM {
            let r = find_record(&result.records, e, d)
                .filter(|r| r.is_ok())
                .ok_or(Error::MissingGridPoint { e_over_v0: e, d_nm: d })?;
            let s = r.values.depth_s.map(|s| format!("{:.4}", length_si_to_nm(s))).unwrap_or_default();
            let _ = writeln!(out, "{},{},{}", fmt_sig(e), fmt_sig(d), s);
        }
    }
    Ok(out)
}

/// Data behind one output kind, as CSV.
///
/// Points whose evaluation failed keep their row with empty value cells;
/// the curve outputs (`fig1`, `fig4`) skip them.
pub fn emit_figure_data(result: &SweepResult, which: OutputKind) -> Result<String> {
    if which == OutputKind::Table1 {
        return emit_table1(result);
    }
    let mut out = metadata(result, which.name());
    let header: &str = match which {
        OutputKind::Coeffs => {
            "d_nm,E_over_V0,S_re,S_im,A_re,A_im,B_re,B_im,R_re,R_im,S2,R2,res_psi_0,res_dpsi_0,res_psi_d,res_dpsi_d"
        }
        OutputKind::Momentum => "d_nm,E_over_V0,k_rms_per_m,v_rms_m_per_s,t_eff_s,eps_eff_eV",
        OutputKind::Times => "d_nm,E_over_V0,E_eV,t_eff_s,t_ph_num_s,t_ph_ana_s,t_dw_num_s,t_dw_ana_s,t_bl_s",
        OutputKind::Depth => "d_nm,E_over_V0,s_nm,tau_eff_s,xi,eps_eff_eV",
        OutputKind::Fig1 => "d_nm,E_over_V0,K_per_m,pdf_m",
        OutputKind::Fig2 => "d_nm,E_over_V0,E_eV,v_rms_m_per_s,eps_eff_eV,t_eff_s",
        OutputKind::Fig3 => "d_nm,E_over_V0,E_eV,t_ph_num_s,t_ph_ana_s,t_dw_num_s,t_dw_ana_s,t_bl_s",
        OutputKind::Fig4 => "d_nm,E_over_V0,x_nm,relative_density",
        OutputKind::Fig5 => "d_nm,E_over_V0,s_nm,tau_eff_s,xi",
        OutputKind::Fig6a => "d_nm,E_over_V0,E_eV,eps_eff_plus_V0_eV",
        OutputKind::Table1 => unreachable!(),
    };
    out.push_str(header);
    out.push('\n');
    for r in &result.records {
        let key = format!("{},{}", fmt_sig(r.d_nm), fmt_sig(r.e_over_v0));
        let e_ev = fmt_sig(r.e_over_v0 * r.v0_ev);
        let v = &r.values;
        let ev = |x: Option<f64>| cell(x.map(|x| x / EV));
        let line = match which {
            OutputKind::Coeffs => coeff_row(r),
            OutputKind::Momentum => {
                format!("{},{},{},{}", cell(v.k_rms), cell(v.v_rms), cell(v.t_eff), ev(v.eps_eff))
            }
            OutputKind::Times => format!(
                "{e_ev},{},{},{},{},{},{}",
                cell(v.t_eff),
                cell(v.t_phase_numeric),
                cell(v.t_phase_analytic),
                cell(v.t_dwell_numeric),
                cell(v.t_dwell_analytic),
                cell(v.t_bl)
            ),
            OutputKind::Depth => format!(
                "{},{},{},{}",
                cell(v.depth_s.map(length_si_to_nm)),
                cell(v.tau_eff),
                cell(v.xi),
                ev(v.eps_eff)
            ),
            OutputKind::Fig1 => {
                for (k, pdf) in momentum_curve(r, &result.config.quadrature) {
                    let _ = writeln!(out, "{key},{},{}", fmt_sig(k), fmt_sig(pdf));
                }
                continue;
            }
            OutputKind::Fig2 => format!("{e_ev},{},{},{}", cell(v.v_rms), ev(v.eps_eff), cell(v.t_eff)),
            OutputKind::Fig3 => format!(
                "{e_ev},{},{},{},{},{}",
                cell(v.t_phase_numeric),
                cell(v.t_phase_analytic),
                cell(v.t_dwell_numeric),
                cell(v.t_dwell_analytic),
                cell(v.t_bl)
            ),
            OutputKind::Fig4 => {
                for (x, dens) in density_curve(r) {
                    let _ = writeln!(out, "{key},{},{}", fmt_sig(x), fmt_sig(dens));
                }
                continue;
            }
            OutputKind::Fig5 => format!(
                "{},{},{}",
                cell(v.depth_s.map(length_si_to_nm)),
                cell(v.tau_eff),
                cell(v.xi)
            ),
            OutputKind::Fig6a => format!("{e_ev},{}", cell(v.eps_eff.map(|e| e / EV + r.v0_ev))),
            OutputKind::Table1 => unreachable!(),
        };
        let _ = writeln!(out, "{key},{line}");
    }
    Ok(out)
}

fn coeff_row(r: &SweepRecord) -> String {
    let Ok(sol) = r.problem().and_then(|p| stationary_solution(&p)) else {
        return ",".repeat(13);
    };
    let res = continuity_residual(&sol);
    let mut cells: Vec<String> = [sol.s, sol.a, sol.b, sol.r]
        .iter()
        .flat_map(|c| [fmt_sig(c.re), fmt_sig(c.im)])
        .collect();
    cells.push(fmt_sig(sol.transmission()));
    cells.push(fmt_sig(sol.reflection()));
    cells.extend(res.iter().map(|x| fmt_sig(*x)));
    cells.join(",")
}

fn momentum_curve(r: &SweepRecord, quadrature: &QuadratureSpec) -> Vec<(f64, f64)> {
    if !r.is_ok() {
        return Vec::new();
    }
    let Ok(spec) = r.problem().and_then(|p| MomentumSpectrum::new(&p, quadrature)) else {
        return Vec::new();
    };
    let c = spec.cutoff();
    (0..FIG1_K_POINTS)
        .map(|i| {
            let k = -c + 2.0 * c * i as f64 / (FIG1_K_POINTS - 1) as f64;
            (k, spec.pdf(k.clamp(-c, c)).unwrap_or(0.0))
        })
        .collect()
}

fn density_curve(r: &SweepRecord) -> Vec<(f64, f64)> {
    if !r.is_ok() {
        return Vec::new();
    }
    let Ok(sol) = r.problem().and_then(|p| stationary_solution(&p)) else {
        return Vec::new();
    };
    let d = sol.problem.thickness;
    (0..FIG4_X_POINTS)
        .filter_map(|i| {
            let x = (d * i as f64 / (FIG4_X_POINTS - 1) as f64).min(d);
            relative_density(&sol, x).ok().map(|v| (length_si_to_nm(x), v))
        })
        .collect()
}
