use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tunneltime::sweep::{
    emit_figure_data, emit_records, emit_table1, parse_config, run_sweep, OutputKind, SweepConfig,
    TABLE1_D_NM, TABLE1_E_OVER_V0,
};
use tunneltime::{Error, Result};

/// Tunneling times for an electron crossing a rectangular barrier.
#[derive(Parser, Debug)]
#[command(name = "tunneltime", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scattering coefficients S, A, B, R and continuity residuals at one point.
    Coeffs(PointArgs),
    /// rms wavenumber, velocity, effective time and energy at one point.
    Momentum(PointArgs),
    /// Effective, phase, dwell and Büttiker–Landauer times at one point.
    Times(PointArgs),
    /// Penetration depth, effective depth time and uncertainty coefficient at one point.
    Depth(PointArgs),
    /// Full grid sweep; writes records.csv plus every configured output to --out.
    Sweep(SweepArgs),
    /// Penetration-depth table on the published 5 x 9 grid.
    Table1(SweepArgs),
    /// Data for every figure (fig1..fig6a) over the configured grid.
    Figures(SweepArgs),
}

#[derive(Args, Debug)]
struct Shared {
    /// Line-oriented key=value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Barrier height in eV.
    #[arg(long = "V0-eV")]
    v0_ev: Option<f64>,
    /// Momentum cutoff K' in 1/m.
    #[arg(long = "Kprime")]
    kprime: Option<f64>,
    /// Output file (point commands, table1) or directory (sweep, figures).
    /// Single-file outputs go to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Incident energy in eV.
    #[arg(long = "E-eV")]
    e_ev: f64,
    /// Barrier thickness in nm.
    #[arg(long = "d-nm")]
    d_nm: f64,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    shared: Shared,
}

fn load_config(shared: &Shared) -> Result<SweepConfig> {
    let mut cfg = match &shared.config {
        Some(path) => parse_config(&fs::read_to_string(path)?)?,
        None => SweepConfig::default(),
    };
    if let Some(v0) = shared.v0_ev {
        cfg.v0_ev = v0;
    }
    if let Some(k) = shared.kprime {
        cfg.kprime = k;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn write_dir(dir: &Path, files: &[(String, String)]) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (name, text) in files {
        fs::write(dir.join(name), text)?;
    }
    Ok(())
}

fn point(args: &PointArgs, kind: OutputKind) -> Result<()> {
    let mut cfg = load_config(&args.shared)?;
    cfg.e_over_v0_grid = vec![args.e_ev / cfg.v0_ev];
    cfg.d_nm_grid = vec![args.d_nm];
    cfg.validate()?;
    let result = run_sweep(&cfg)?;
    if let Some(rec) = result.records.iter().find(|r| !r.is_ok()) {
        return Err(Error::Domain(rec.errors.join("; ")));
    }
    write_or_print(args.shared.out.as_deref(), &emit_figure_data(&result, kind)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Coeffs(a) => point(&a, OutputKind::Coeffs),
        Command::Momentum(a) => point(&a, OutputKind::Momentum),
        Command::Times(a) => point(&a, OutputKind::Times),
        Command::Depth(a) => point(&a, OutputKind::Depth),
        Command::Sweep(a) => {
            let cfg = load_config(&a.shared)?;
            let result = run_sweep(&cfg)?;
            let records = emit_records(&result);
            match &a.shared.out {
                None => print!("{records}"),
                Some(dir) => {
                    let mut files = vec![("records.csv".to_string(), records)];
                    for kind in &cfg.outputs {
                        files.push((format!("{kind}.csv"), emit_figure_data(&result, *kind)?));
                    }
                    write_dir(dir, &files)?;
                }
            }
            Ok(())
        }
        Command::Table1(a) => {
            let mut cfg = load_config(&a.shared)?;
            cfg.e_over_v0_grid = TABLE1_E_OVER_V0.to_vec();
            cfg.d_nm_grid = TABLE1_D_NM.to_vec();
            cfg.outputs = vec![OutputKind::Table1];
            let result = run_sweep(&cfg)?;
            write_or_print(a.shared.out.as_deref(), &emit_table1(&result)?)
        }
        Command::Figures(a) => {
            let cfg = load_config(&a.shared)?;
            let result = run_sweep(&cfg)?;
            let files = OutputKind::FIGURES
                .iter()
                .map(|k| Ok((format!("{k}.csv"), emit_figure_data(&result, *k)?)))
                .collect::<Result<Vec<_>>>()?;
            match &a.shared.out {
                Some(dir) => write_dir(dir, &files),
                None => {
                    for (_, text) in &files {
                        print!("{text}");
                    }
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tunneltime: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
