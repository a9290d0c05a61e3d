use std::collections::BTreeMap;

use serde::Serialize;

use super::experiment::ComplexityTrace;
use crate::error::{Error, Result};

/// Smallest timestep used when fitting growth rates.
pub const GROWTH_MIN_T: usize = 10;

/// Seed-averaged series for one rule.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleSummary {
    pub rule: u8,
    pub n_seeds: usize,
    pub t: Vec<usize>,
    pub c_q_mean: Vec<f64>,
    pub c_q_std: Vec<f64>,
    pub c_mu_mean: Option<Vec<f64>>,
    pub c_mu_std: Option<Vec<f64>>,
    /// Bits of `C_q` gained per doubling of `t`; `None` when fewer than two
    /// sampled steps reach `t >= 10`.
    pub growth_rate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub rules: Vec<RuleSummary>,
    /// Rules by descending growth rate, ties broken by rule number; rules
    /// without a rate come last.
    pub ranking: Vec<u8>,
}

impl SpectrumReport {
    pub fn summary(&self, rule: u8) -> Option<&RuleSummary> {
        self.rules.iter().find(|s| s.rule == rule)
    }

    pub fn rate(&self, rule: u8) -> Option<f64> {
        self.summary(rule).and_then(|s| s.growth_rate)
    }
}

/// Least-squares slope of `c_q` against `log2 t` over points with `t >= 10`.
pub fn growth_rate(t: &[usize], c_q: &[f64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = t
        .iter()
        .zip(c_q)
        .filter(|(&t, _)| t >= GROWTH_MIN_T)
        .map(|(&t, &c)| ((t as f64).log2(), c))
        .collect();
    if pts.len() < 2 {
        return Err(Error::Domain(format!(
            "growth rate needs at least two points with t >= {GROWTH_MIN_T}, got {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Population mean and standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Average traces per rule across seeds and rank rules by growth rate.
pub fn rank_spectrum(traces: &[ComplexityTrace]) -> Result<SpectrumReport> {
    if traces.is_empty() {
        return Err(Error::Domain("no traces to rank".into()));
    }
    let mut by_rule: BTreeMap<u8, Vec<&ComplexityTrace>> = BTreeMap::new();
    for trace in traces {
        by_rule.entry(trace.rule).or_default().push(trace);
    }

    let mut rules = Vec::with_capacity(by_rule.len());
    for (rule, group) in by_rule {
        let t: Vec<usize> = group[0].points.iter().map(|p| p.t).collect();
        for trace in &group {
            if trace.points.iter().map(|p| p.t).ne(t.iter().copied()) {
                return Err(Error::Internal(format!(
                    "rule {rule}: seeds were sampled at different timesteps"
                )));
            }
        }
        let column = |i: usize, f: &dyn Fn(usize, usize) -> Option<f64>| -> Option<Vec<f64>> {
            (0..group.len()).map(|g| f(g, i)).collect()
        };
        let mut c_q_mean = Vec::with_capacity(t.len());
        let mut c_q_std = Vec::with_capacity(t.len());
        let mut c_mu_mean = Some(Vec::with_capacity(t.len()));
        let mut c_mu_std = Some(Vec::with_capacity(t.len()));
        for i in 0..t.len() {
            let q = column(i, &|g, i| Some(group[g].points[i].c_q)).unwrap();
            let (m, s) = mean_std(&q);
            c_q_mean.push(m);
            c_q_std.push(s);
            match column(i, &|g, i| group[g].points[i].c_mu) {
                Some(mu) => {
                    let (m, s) = mean_std(&mu);
                    if let (Some(mm), Some(ss)) = (c_mu_mean.as_mut(), c_mu_std.as_mut()) {
                        mm.push(m);
                        ss.push(s);
                    }
                }
                None => {
                    c_mu_mean = None;
                    c_mu_std = None;
                }
            }
        }
        let growth_rate = growth_rate(&t, &c_q_mean).ok();
        rules.push(RuleSummary {
            rule,
            n_seeds: group.len(),
            t,
            c_q_mean,
            c_q_std,
            c_mu_mean,
            c_mu_std,
            growth_rate,
        });
    }

    let mut ranking: Vec<(u8, Option<f64>)> = rules.iter().map(|s| (s.rule, s.growth_rate)).collect();
    ranking.sort_by(|a, b| match (a.1, b.1) {
        (Some(x), Some(y)) => y.total_cmp(&x).then(a.0.cmp(&b.0)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.0.cmp(&b.0),
    });
    Ok(SpectrumReport {
        rules,
        ranking: ranking.into_iter().map(|(r, _)| r).collect(),
    })
}
