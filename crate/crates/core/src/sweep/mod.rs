//! Parameter sweeps and their CSV output.

mod config;
mod csv;
mod run;

pub use config::{parse_config, OutputKind, SweepConfig};
pub use csv::{emit_figure_data, emit_records, emit_table1, fmt_sig, parse_records, TABLE1_D_NM, TABLE1_E_OVER_V0};
pub use run::{evaluate_point, run_sweep, run_sweep_sequential, RecordValues, SweepRecord, SweepResult};
