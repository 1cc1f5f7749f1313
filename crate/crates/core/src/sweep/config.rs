use std::fmt;

use crate::barrier::DEFAULT_KPRIME;
use crate::error::{Error, Result};
use crate::numerics::{QuadratureMethod, QuadratureSpec};
use crate::times::DEFAULT_PHASE_STEP_EV;

/// Data products a sweep can write, one CSV each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputKind {
    Coeffs,
    Momentum,
    Times,
    Depth,
    Table1,
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6a,
}

impl OutputKind {
    pub const ALL: [OutputKind; 11] = [
        OutputKind::Coeffs,
        OutputKind::Momentum,
        OutputKind::Times,
        OutputKind::Depth,
        OutputKind::Table1,
        OutputKind::Fig1,
        OutputKind::Fig2,
        OutputKind::Fig3,
        OutputKind::Fig4,
        OutputKind::Fig5,
        OutputKind::Fig6a,
    ];

    pub const FIGURES: [OutputKind; 6] = [
        OutputKind::Fig1,
        OutputKind::Fig2,
        OutputKind::Fig3,
        OutputKind::Fig4,
        OutputKind::Fig5,
        OutputKind::Fig6a,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OutputKind::Coeffs => "coeffs",
            OutputKind::Momentum => "momentum",
            OutputKind::Times => "times",
            OutputKind::Depth => "depth",
            OutputKind::Table1 => "table1",
            OutputKind::Fig1 => "fig1",
            OutputKind::Fig2 => "fig2",
            OutputKind::Fig3 => "fig3",
            OutputKind::Fig4 => "fig4",
            OutputKind::Fig5 => "fig5",
            OutputKind::Fig6a => "fig6a",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        OutputKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for OutputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub v0_ev: f64,
    pub e_over_v0_grid: Vec<f64>,
    pub d_nm_grid: Vec<f64>,
    /// 1/m
    pub kprime: f64,
    pub quadrature: QuadratureSpec,
    pub phase_step_ev: f64,
    pub outputs: Vec<OutputKind>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            v0_ev: 10.0,
            e_over_v0_grid: uniform_grid(0.01, 0.01, 99),
            d_nm_grid: uniform_grid(0.1, 0.1, 10),
            kprime: DEFAULT_KPRIME,
            quadrature: QuadratureSpec::default(),
            phase_step_ev: DEFAULT_PHASE_STEP_EV,
            outputs: OutputKind::ALL.to_vec(),
        }
    }
}

/// `start + i·step` for `i < count`, cleaned to 12 significant digits so
/// that e.g. the seventh point of a 0.01 grid prints as 0.07.
fn uniform_grid(start: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let v = start + i as f64 * step;
            format!("{v:.11e}").parse().unwrap()
        })
        .collect()
}

impl SweepConfig {
    /// Config for a single (E, d) point.
    pub fn single_point(e_ev: f64, v0_ev: f64, d_nm: f64, kprime: f64) -> Self {
        SweepConfig {
            v0_ev,
            e_over_v0_grid: vec![e_ev / v0_ev],
            d_nm_grid: vec![d_nm],
            kprime,
            ..SweepConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(msg));
        if !(self.v0_ev.is_finite() && self.v0_ev > 0.0) {
            return fail(format!("V0_eV must be positive, got {}", self.v0_ev));
        }
        if !(self.kprime.is_finite() && self.kprime > 0.0) {
            return fail(format!("Kprime must be positive, got {}", self.kprime));
        }
        if !(self.phase_step_ev.is_finite() && self.phase_step_ev > 0.0) {
            return fail(format!("phase_step_eV must be positive, got {}", self.phase_step_ev));
        }
        check_grid("E_over_V0_grid", &self.e_over_v0_grid, |v| v > 0.0 && v < 1.0, "in (0, 1)")?;
        check_grid("d_nm_grid", &self.d_nm_grid, |v| v > 0.0, "positive")?;
        if self.outputs.is_empty() {
            return fail("outputs must name at least one output".into());
        }
        self.quadrature.validate()
    }

    /// `key=value` lines that reproduce this config through [`parse_config`].
    pub fn to_config_text(&self) -> String {
        let list = |g: &[f64]| g.iter().map(|v| super::fmt_sig(*v)).collect::<Vec<_>>().join(",");
        let outputs = self.outputs.iter().map(|o| o.name()).collect::<Vec<_>>().join(",");
        format!(
            "V0_eV={}\nE_over_V0_grid={}\nd_nm_grid={}\nKprime={}\nquadrature={},{},{}\nphase_step_eV={}\noutputs={}\n",
            super::fmt_sig(self.v0_ev),
            list(&self.e_over_v0_grid),
            list(&self.d_nm_grid),
            super::fmt_sig(self.kprime),
            self.quadrature.method.name(),
            self.quadrature.panels_or_nodes,
            super::fmt_sig(self.quadrature.rel_tol),
            super::fmt_sig(self.phase_step_ev),
            outputs,
        )
    }
}

fn check_grid(name: &str, grid: &[f64], ok: impl Fn(f64) -> bool, rule: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Validation(format!("{name} must not be empty")));
    }
    if let Some(v) = grid.iter().find(|v| !(v.is_finite() && ok(**v))) {
        return Err(Error::Validation(format!("{name} values must be {rule}, got {v}")));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Validation(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

/// Parse line-oriented `key=value` config text.
///
/// Grids are comma-separated lists; a `start:step:stop` entry expands to a
/// uniform run. `quadrature` takes `method,nodes,rel_tol`. Omitted keys
/// keep their [`SweepConfig::default`] values.
pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut cfg = SweepConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let number = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| err(format!("'{}' is not a number", s.trim())))
        };
        match key {
            "V0_eV" => cfg.v0_ev = number(value)?,
            "Kprime" => cfg.kprime = number(value)?,
            "phase_step_eV" => cfg.phase_step_ev = number(value)?,
            "E_over_V0_grid" => cfg.e_over_v0_grid = parse_grid(value, &err)?,
            "d_nm_grid" => cfg.d_nm_grid = parse_grid(value, &err)?,
            "quadrature" => {
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                let [method, nodes, tol] = parts[..] else {
                    return Err(err(format!("quadrature expects method,nodes,rel_tol, got '{value}'")));
                };
                cfg.quadrature = QuadratureSpec {
                    method: QuadratureMethod::from_name(method)
                        .ok_or_else(|| err(format!("unknown quadrature method '{method}'")))?,
                    panels_or_nodes: nodes
                        .parse()
                        .map_err(|_| err(format!("'{nodes}' is not a node count")))?,
                    rel_tol: number(tol)?,
                };
            }
            "outputs" => {
                cfg.outputs = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| OutputKind::from_name(s).ok_or_else(|| err(format!("unknown output '{s}'"))))
                    .collect::<Result<_>>()?;
            }
            _ => return Err(err(format!("unknown key '{key}'"))),
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_grid(value: &str, err: &dyn Fn(String) -> Error) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim) {
        if let Some((start, rest)) = item.split_once(':') {
            let (step, stop) = rest
                .split_once(':')
                .ok_or_else(|| err(format!("range '{item}' must be start:step:stop")))?;
            let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| err(format!("'{}' is not a number", s.trim())));
            let (start, step, stop) = (parse(start)?, parse(step)?, parse(stop)?);
            if !(step > 0.0) || !(stop >= start) {
                return Err(err(format!("range '{item}' needs step > 0 and stop >= start")));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            out.extend(uniform_grid(start, step, count));
        } else {
            out.push(item.parse::<f64>().map_err(|_| err(format!("'{item}' is not a number")))?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, SweepConfig::default());
        assert_eq!(cfg.v0_ev, 10.0);
        assert_eq!(cfg.kprime, 7.5e10);
        assert_eq!(cfg.phase_step_ev, 1e-4);
        assert_eq!(cfg.e_over_v0_grid.len(), 99);
        assert_eq!(cfg.e_over_v0_grid[6], 0.07);
        assert_eq!(cfg.d_nm_grid, vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]);
    }

    #[test]
    fn malformed_number_reports_line() {
        assert_eq!(
            parse_config("V0_eV=abc"),
            Err(Error::Parse {
                line: 1,
                message: "'abc' is not a number".into()
            })
        );
        match parse_config("# header\n\nKprime=1e10\nd_nm_grid=0.1,x") {
            Err(Error::Parse { line: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_config("just words"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_config("colour=blue"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn decreasing_grid_is_rejected() {
        assert!(matches!(parse_config("E_over_V0_grid=0.5,0.1"), Err(Error::Validation(_))));
        assert!(matches!(parse_config("E_over_V0_grid=0.5,1.0"), Err(Error::Validation(_))));
        assert!(matches!(parse_config("d_nm_grid=0.0,0.5"), Err(Error::Validation(_))));
        assert!(matches!(parse_config("quadrature=gauss-legendre,4,1e-9"), Err(Error::Validation(_))));
    }

    #[test]
    fn full_config() {
        let text = "V0_eV = 8 # comment\nE_over_V0_grid=0.1:0.2:0.9\nd_nm_grid=0.2,0.4\nKprime=5e10\n\
                    quadrature=gauss-legendre,16,1e-10\nphase_step_eV=2e-4\noutputs=table1, fig3\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.v0_ev, 8.0);
        assert_eq!(cfg.e_over_v0_grid, vec![0.1, 0.3, 0.5, 0.7, 0.9]);
        assert_eq!(cfg.d_nm_grid, vec![0.2, 0.4]);
        assert_eq!(cfg.kprime, 5e10);
        assert_eq!(cfg.quadrature.method, QuadratureMethod::GaussLegendre);
        assert_eq!(cfg.quadrature.panels_or_nodes, 16);
        assert_eq!(cfg.outputs, vec![OutputKind::Table1, OutputKind::Fig3]);
    }

    #[test]
    fn config_text_round_trips() {
        let cfg = parse_config("E_over_V0_grid=0.01,0.1,0.5\noutputs=fig1").unwrap();
        assert_eq!(parse_config(&cfg.to_config_text()).unwrap(), cfg);
        let d = SweepConfig::default();
        assert_eq!(parse_config(&d.to_config_text()).unwrap(), d);
    }
}
