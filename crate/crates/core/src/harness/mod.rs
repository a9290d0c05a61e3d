//! Experiment orchestration: seeded evolution, per-timestep inference,
//! aggregation over seeds, growth-rate ranking and file output.

mod config;
mod experiment;
mod output;
mod report;
mod schedule;
mod svg;

pub use config::{ExperimentConfig, OutputOptions, DEFAULT_SEEDS};
pub use experiment::{
    measure_row, run_experiment, run_unit, ComplexityTrace, Diagnostics, ExperimentResults, TracePoint,
    UnitFailure,
};
pub use output::{emit_outputs, report_json, traces_csv, CSV_HEADER};
pub use report::{growth_rate, mean_std, rank_spectrum, RuleSummary, SpectrumReport, GROWTH_MIN_T};
pub use schedule::sampling_schedule;
pub use svg::render_rule_plot;
