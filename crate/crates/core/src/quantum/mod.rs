//! Quantum statistical memory from the Gram matrix of inferred memory states.

mod gram;
mod jacobi;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use gram::{
    gram_matrix, quantum_statistical_memory, symmetric_spectrum, GramMatrix, Spectrum, CLAMP_FLOOR, TRACE_TOL,
};
pub use jacobi::{symmetric_eigenvalues, MAX_SWEEPS};

use crate::eca::Tape;
use crate::error::{Error, Result};
use crate::stats::{
    chained_futures, conditional_futures, count_windows, ConditionalFutures, EmpiricalDistribution,
};

/// How `P(future | past)` is estimated from a row.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FuturesEstimator {
    /// Product of one-step conditionals from length-`(L+1)` windows.
    #[default]
    Chained,
    /// Direct frequency counts of length-`2L` windows.
    Direct,
}

impl FromStr for FuturesEstimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chained" => Ok(FuturesEstimator::Chained),
            "direct" => Ok(FuturesEstimator::Direct),
            other => Err(Error::Domain(format!("unknown futures estimator {other:?}"))),
        }
    }
}

impl fmt::Display for FuturesEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FuturesEstimator::Chained => "chained",
            FuturesEstimator::Direct => "direct",
        })
    }
}

/// Result of quantum inference on one row, with numerical diagnostics.
#[derive(Clone, Debug)]
pub struct QuantumInference {
    pub c_q: f64,
    pub gram_dim: usize,
    pub trace: f64,
    pub min_eigenvalue: f64,
    /// Shannon entropy of the past weights used in the Gram matrix.
    pub past_entropy: f64,
}

/// Past weights and conditional futures for a row.
pub fn estimate(
    row: &Tape,
    l: usize,
    estimator: FuturesEstimator,
) -> Result<(EmpiricalDistribution, ConditionalFutures)> {
    if l == 0 {
        return Err(Error::Domain("past length L must be at least 1".into()));
    }
    match estimator {
        FuturesEstimator::Chained => {
            let dist = count_windows(row, l + 1)?;
            Ok((dist.marginalize_last()?, chained_futures(&dist)?))
        }
        FuturesEstimator::Direct => {
            let dist = count_windows(row, 2 * l)?;
            let mut past = dist.clone();
            for _ in 0..l {
                past = past.marginalize_last()?;
            }
            Ok((past, conditional_futures(&dist)?))
        }
    }
}

/// Quantum statistical memory of a row.
pub fn infer_quantum(row: &Tape, l: usize, estimator: FuturesEstimator) -> Result<QuantumInference> {
    let (past, futures) = estimate(row, l, estimator)?;
    let g = gram_matrix(&past, &futures)?;
    let trace = g.trace();
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::Numerical(format!("Gram matrix trace {trace} is not 1")));
    }
    let spectrum = symmetric_spectrum(&g)?;
    Ok(QuantumInference {
        c_q: spectrum.entropy()?,
        gram_dim: g.dimension(),
        trace,
        min_eigenvalue: spectrum.min(),
        past_entropy: past.entropy(),
    })
}
