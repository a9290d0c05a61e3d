use std::collections::BTreeMap;

use super::window::EmpiricalDistribution;
use crate::error::{Error, Result};

/// Distribution of the next `L` symbols given each observed length-`L` past.
///
/// `rows[past][future]` with both keys read leftmost-symbol-first.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalFutures {
    past_length: usize,
    future_length: usize,
    rows: BTreeMap<u32, Vec<f64>>,
}

impl ConditionalFutures {
    pub fn new(past_length: usize, future_length: usize, rows: BTreeMap<u32, Vec<f64>>) -> Result<Self> {
        for (past, row) in &rows {
            if row.len() != 1 << future_length {
                return Err(Error::Domain(format!(
                    "future row for past {past} has {} entries, expected {}",
                    row.len(),
                    1usize << future_length
                )));
            }
        }
        Ok(ConditionalFutures {
            past_length,
            future_length,
            rows,
        })
    }

    pub fn past_length(&self) -> usize {
        self.past_length
    }

    pub fn future_length(&self) -> usize {
        self.future_length
    }

    pub fn rows(&self) -> &BTreeMap<u32, Vec<f64>> {
        &self.rows
    }

    pub fn row(&self, past: u32) -> Option<&[f64]> {
        self.rows.get(&past).map(Vec::as_slice)
    }
}

/// Conditional futures by direct frequency counting of length-`2L` windows.
pub fn conditional_futures(dist2l: &EmpiricalDistribution) -> Result<ConditionalFutures> {
    let k = dist2l.window_length();
    if !k.is_multiple_of(2) {
        return Err(Error::Domain(format!("window length {k} is not 2L")));
    }
    if dist2l.total() == 0 {
        return Err(Error::Domain("empty distribution".into()));
    }
    let l = k / 2;
    let width = 1usize << l;
    let mut rows = BTreeMap::new();
    for (past, block) in dist2l.counts().chunks(width).enumerate() {
        let marginal: u64 = block.iter().sum();
        if marginal == 0 {
            continue;
        }
        let m = marginal as f64;
        rows.insert(past as u32, block.iter().map(|&c| c as f64 / m).collect());
    }
    ConditionalFutures::new(l, l, rows)
}

/// Conditional futures compiled from one-step conditionals.
///
/// `dist` holds length-`(L+1)` windows; `P(y_{0:L} | past)` is the product of
/// `P(y_i | last L symbols)` along the path, treating `L` as the Markov
/// order. A past with no observed continuation (possible only for the final
/// `L` cells of a row) falls back to the overall symbol frequencies.
pub fn chained_futures(dist: &EmpiricalDistribution) -> Result<ConditionalFutures> {
    let k = dist.window_length();
    if k < 2 {
        return Err(Error::Domain("need windows of length L + 1 with L >= 1".into()));
    }
    let l = k - 1;
    let n_pasts = 1usize << l;
    let mask = (n_pasts - 1) as u32;
    let counts = dist.counts();

    // one-step conditional probabilities, None when the past has no continuation
    let step: Vec<Option<[f64; 2]>> = (0..n_pasts)
        .map(|p| {
            let c0 = counts[p << 1];
            let c1 = counts[(p << 1) | 1];
            let n = c0 + c1;
            (n > 0).then(|| [c0 as f64 / n as f64, c1 as f64 / n as f64])
        })
        .collect();

    let ones: u64 = counts.iter().skip(1).step_by(2).sum();
    let p1 = ones as f64 / dist.total() as f64;
    let fallback = [1.0 - p1, p1];

    let mut rows = BTreeMap::new();
    for past in 0..n_pasts {
        if step[past].is_none() {
            continue;
        }
        // frontier[f] = (current past, probability) for the partial future f
        let mut frontier: Vec<(u32, f64)> = vec![(past as u32, 1.0)];
        for _ in 0..l {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for &(state, prob) in &frontier {
                let p = step[state as usize].unwrap_or(fallback);
                for (y, py) in p.into_iter().enumerate() {
                    next.push((((state << 1) | y as u32) & mask, prob * py));
                }
            }
            frontier = next;
        }
        rows.insert(past as u32, frontier.into_iter().map(|(_, p)| p).collect());
    }
    ConditionalFutures::new(l, l, rows)
}
