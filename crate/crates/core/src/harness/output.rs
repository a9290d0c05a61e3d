use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::ExperimentConfig;
use super::experiment::{ComplexityTrace, ExperimentResults, UnitFailure};
use super::report::{RuleSummary, SpectrumReport};
use super::svg::render_rule_plot;
use crate::eca::write_pbm_binary;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "rule,seed,t,c_q,c_mu,n_states,gram_dim";

/// CSV text of all trace points. Missing classical values are left empty.
pub fn traces_csv(traces: &[ComplexityTrace]) -> String {
    let mut out = String::with_capacity(64 * traces.len() * 28);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for trace in traces {
        for p in &trace.points {
            let c_mu = p.c_mu.map(|v| v.to_string()).unwrap_or_default();
            let n_states = p.n_states.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                trace.rule, trace.seed, p.t, p.c_q, c_mu, n_states, p.gram_dim
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    config: &'a ExperimentConfig,
    ranking: &'a [u8],
    rules: &'a [RuleSummary],
    failures: &'a [UnitFailure],
}

/// JSON report: configuration echo, per-rule statistics and the ranking.
pub fn report_json(
    report: &SpectrumReport,
    config: &ExperimentConfig,
    failures: &[UnitFailure],
) -> Result<String> {
    let doc = JsonReport {
        config,
        ranking: &report.ranking,
        rules: &report.rules,
        failures,
    };
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Write the requested outputs under `config.output.dir` and return the
/// paths written, in order.
pub fn emit_outputs(
    results: &ExperimentResults,
    report: &SpectrumReport,
    config: &ExperimentConfig,
) -> Result<Vec<PathBuf>> {
    if config.schedule.is_empty() {
        return Err(Error::Domain("empty sampling schedule".into()));
    }
    if results.traces.is_empty() {
        return Err(Error::Domain("no completed traces to write".into()));
    }
    let dir = &config.output.dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();

    if config.output.csv {
        let path = dir.join("traces.csv");
        write_file(&path, traces_csv(&results.traces).as_bytes())?;
        written.push(path);
    }
    if config.output.json {
        let path = dir.join("report.json");
        write_file(&path, report_json(report, config, &results.failures)?.as_bytes())?;
        written.push(path);
    }
    if config.output.svg {
        for summary in &report.rules {
            let path = dir.join(format!("rule_{:03}.svg", summary.rule));
            write_file(&path, render_rule_plot(summary).as_bytes())?;
            written.push(path);
        }
    }
    if config.output.pbm {
        for traj in &results.trajectories {
            let path = dir.join(format!("rule_{:03}_seed_{}.pbm", traj.rule_number, traj.seed));
            let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
            let mut w = BufWriter::new(file);
            write_pbm_binary(&mut w, &traj.rows)
                .and_then(|_| w.flush())
                .map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::experiment::{Diagnostics, TracePoint};
    use crate::harness::rank_spectrum;

    fn one_trace() -> Vec<ComplexityTrace> {
        vec![ComplexityTrace {
            rule: 30,
            seed: 1,
            points: [(10, 0.25), (20, 0.5), (30, 0.125)]
                .into_iter()
                .map(|(t, c)| TracePoint {
                    t,
                    c_q: c,
                    c_mu: Some(1.0),
                    n_states: Some(2),
                    gram_dim: 64,
                    diagnostics: Diagnostics::default(),
                })
                .collect(),
        }]
    }

    #[test]
    fn csv_lines() {
        let csv = traces_csv(&one_trace());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "30,1,10,0.25,1,2,64");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn writes_requested_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = ExperimentConfig::default().with_t_max(30);
        config.output.dir = dir.path().to_path_buf();
        let results = ExperimentResults {
            traces: one_trace(),
            ..Default::default()
        };
        let report = rank_spectrum(&results.traces).unwrap();
        let files = emit_outputs(&results, &report, &config).unwrap();
        let names: Vec<String> = files
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        assert_eq!(names, ["traces.csv", "report.json", "rule_030.svg"]);
        let json: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
        assert_eq!(json["ranking"], serde_json::json!([30]));
        assert_eq!(json["config"]["width"], 64_000);
    }

    #[test]
    fn empty_inputs_rejected() {
        let mut config = ExperimentConfig::default();
        let results = ExperimentResults {
            traces: one_trace(),
            ..Default::default()
        };
        let report = rank_spectrum(&results.traces).unwrap();
        config.schedule.clear();
        assert!(matches!(
            emit_outputs(&results, &report, &config),
            Err(Error::Domain(_))
        ));
        let config = ExperimentConfig::default();
        assert!(emit_outputs(&ExperimentResults::default(), &report, &config).is_err());
    }

    #[test]
    fn unwritable_path_is_named() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, b"x").unwrap();
        let mut config = ExperimentConfig::default();
        config.output.dir = blocker.join("sub");
        let results = ExperimentResults {
            traces: one_trace(),
            ..Default::default()
        };
        let report = rank_spectrum(&results.traces).unwrap();
        let err = emit_outputs(&results, &report, &config).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(err.to_string().contains("sub"));
    }
}
