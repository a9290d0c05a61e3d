use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use crate::classical::infer_classical;
use crate::eca::{kink_filter, Evolver, RuleTable, Tape, Trajectory};
use crate::error::{Error, Result};
use crate::quantum::infer_quantum;

/// Measures at one sampled timestep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub t: usize,
    pub c_q: f64,
    pub c_mu: Option<f64>,
    pub n_states: Option<usize>,
    pub gram_dim: usize,
    #[serde(skip)]
    pub diagnostics: Diagnostics,
}

/// Numerical side-information kept in memory but not written to the CSV.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub gram_trace: f64,
    pub min_eigenvalue: f64,
    /// Entropy of the length-`L` past distribution weighting the Gram matrix.
    pub past_entropy: f64,
    pub stationary_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityTrace {
    pub rule: u8,
    pub seed: u64,
    pub points: Vec<TracePoint>,
}

/// A (rule, seed) unit that could not be completed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitFailure {
    pub rule: u8,
    pub seed: u64,
    pub error: String,
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentResults {
    /// Completed traces, sorted by (rule, seed).
    pub traces: Vec<ComplexityTrace>,
    pub failures: Vec<UnitFailure>,
    /// Full trajectories, only collected when PBM output is requested.
    pub trajectories: Vec<Trajectory>,
}

/// Infer both measures for one row.
pub fn measure_row(row: &Tape, t: usize, config: &ExperimentConfig) -> Result<TracePoint> {
    let filtered;
    let row = if config.kink_filter {
        filtered = kink_filter(row);
        &filtered
    } else {
        row
    };
    let q = infer_quantum(row, config.window_l, config.futures)?;
    let classical = if config.classical {
        Some(infer_classical(row, config.window_l, config.chi2_alpha)?)
    } else {
        None
    };
    Ok(TracePoint {
        t,
        c_q: q.c_q,
        c_mu: classical.as_ref().map(|c| c.c_mu),
        n_states: classical.as_ref().map(|c| c.machine.n_states()),
        gram_dim: q.gram_dim,
        diagnostics: Diagnostics {
            gram_trace: q.trace,
            min_eigenvalue: q.min_eigenvalue,
            past_entropy: q.past_entropy,
            stationary_residual: classical.as_ref().map(|c| c.machine.stationary_residual()),
        },
    })
}

/// Evolve one seeded trajectory and measure it at every scheduled step.
pub fn run_unit(
    config: &ExperimentConfig,
    rule: u8,
    seed: u64,
) -> Result<(ComplexityTrace, Option<Trajectory>)> {
    let mut evolver = Evolver::seeded(config.width, RuleTable::new(rule), config.t_max, seed)?;
    let mut points = Vec::with_capacity(config.schedule.len());
    let mut rows = config.output.pbm.then(|| Vec::with_capacity(config.t_max));
    let mut schedule = config.schedule.iter().copied().peekable();
    while schedule.peek().is_some() {
        if !evolver.advance() {
            return Err(Error::Internal(format!(
                "schedule extends past t_max = {}",
                config.t_max
            )));
        }
        let t = evolver.t();
        let wanted = schedule.peek() == Some(&t);
        if wanted || rows.is_some() {
            let row = evolver.centre();
            if wanted {
                points.push(measure_row(&row, t, config)?);
                schedule.next();
            }
            if let Some(rows) = rows.as_mut() {
                rows.push(row);
            }
        }
    }
    if let Some(rows) = rows.as_mut() {
        while evolver.advance() {
            rows.push(evolver.centre());
        }
    }
    let trajectory = rows.map(|rows| Trajectory {
        rows,
        width: config.width,
        rule_number: rule,
        seed,
    });
    Ok((ComplexityTrace { rule, seed, points }, trajectory))
}

/// Run every (rule, seed) unit of the experiment, in parallel across units.
///
/// Units that fail are reported in `failures`; the rest complete normally.
/// Output order does not depend on scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResults> {
    config.validate()?;
    let units: Vec<(u8, u64)> = config
        .rules
        .iter()
        .flat_map(|&r| config.seeds.iter().map(move |&s| (r, s)))
        .collect();

    let work = || -> Vec<_> {
        units
            .par_iter()
            .map(|&(rule, seed)| (rule, seed, run_unit(config, rule, seed)))
            .collect()
    };
    let outcomes = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Domain(format!("cannot build thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut results = ExperimentResults::default();
    for (rule, seed, outcome) in outcomes {
        match outcome {
            Ok((trace, trajectory)) => {
                results.traces.push(trace);
                results.trajectories.extend(trajectory);
            }
            Err(e) => results.failures.push(UnitFailure {
                rule,
                seed,
                error: e.to_string(),
            }),
        }
    }
    results.traces.sort_by_key(|t| (t.rule, t.seed));
    results.trajectories.sort_by_key(|t| (t.rule_number, t.seed));
    results.failures.sort_by_key(|f| (f.rule, f.seed));
    Ok(results)
}
