use std::path::PathBuf;

use serde::Serialize;

use super::schedule::sampling_schedule;
use crate::eca::canonical_rules;
use crate::error::{Error, Result};
use crate::quantum::FuturesEstimator;
use crate::stats::MAX_WINDOW;

/// Which files an experiment writes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutputOptions {
    pub dir: PathBuf,
    pub csv: bool,
    pub json: bool,
    pub svg: bool,
    /// One binary PBM per (rule, seed) trajectory.
    pub pbm: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        OutputOptions {
            dir: PathBuf::from("out"),
            csv: true,
            json: true,
            svg: true,
            pbm: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub rules: Vec<u8>,
    pub width: usize,
    pub window_l: usize,
    pub t_max: usize,
    pub seeds: Vec<u64>,
    pub chi2_alpha: f64,
    pub schedule: Vec<usize>,
    /// Infer `C_mu` alongside `C_q`.
    pub classical: bool,
    /// Apply the kink filter to each row before inference.
    pub kink_filter: bool,
    pub futures: FuturesEstimator,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub threads: Option<usize>,
    pub output: OutputOptions,
}

pub const DEFAULT_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

impl Default for ExperimentConfig {
    fn default() -> Self {
        let t_max = 1000;
        ExperimentConfig {
            rules: canonical_rules(),
            width: 64_000,
            window_l: 6,
            t_max,
            seeds: DEFAULT_SEEDS.to_vec(),
            chi2_alpha: 0.05,
            schedule: sampling_schedule(t_max),
            classical: true,
            kink_filter: false,
            futures: FuturesEstimator::Chained,
            threads: None,
            output: OutputOptions::default(),
        }
    }
}

impl ExperimentConfig {
    /// Set `t_max` and reset the schedule to the default for it.
    pub fn with_t_max(mut self, t_max: usize) -> Self {
        self.t_max = t_max;
        self.schedule = sampling_schedule(t_max);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Domain(msg));
        if self.rules.is_empty() {
            return fail("no rules selected".into());
        }
        if self.seeds.is_empty() {
            return fail("no seeds given".into());
        }
        if self.window_l == 0 || 2 * self.window_l > MAX_WINDOW {
            return fail(format!(
                "window L = {} outside 1..={}",
                self.window_l,
                MAX_WINDOW / 2
            ));
        }
        if self.width < 2 * self.window_l {
            return fail(format!(
                "width {} is smaller than 2L = {}",
                self.width,
                2 * self.window_l
            ));
        }
        if self.t_max == 0 {
            return fail("t_max must be at least 1".into());
        }
        if !(self.chi2_alpha > 0.0 && self.chi2_alpha < 1.0) {
            return fail(format!("chi2 alpha {} outside (0, 1)", self.chi2_alpha));
        }
        if self.schedule.is_empty() {
            return fail("empty sampling schedule".into());
        }
        if !self.schedule.windows(2).all(|w| w[0] < w[1]) {
            return fail("sampling schedule must be strictly increasing".into());
        }
        if self.schedule[0] == 0 || *self.schedule.last().unwrap() > self.t_max {
            return fail(format!("sampling schedule must lie within 1..={}", self.t_max));
        }
        if self.threads == Some(0) {
            return fail("thread count must be positive".into());
        }
        Ok(())
    }
}
