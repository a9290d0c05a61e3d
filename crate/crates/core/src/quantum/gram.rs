use std::fmt::Write as _;

use super::jacobi::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::stats::{entropy_bits, format_key, ConditionalFutures, EmpiricalDistribution};

/// Eigenvalues in `[-CLAMP_FLOOR, 0)` are treated as zero.
pub const CLAMP_FLOOR: f64 = 1e-9;
/// Largest tolerated deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-6;

/// Overlaps of the inferred quantum memory states, weighted by past
/// probability:
///
/// `G[a][b] = sqrt(P(a) P(b)) * sum_f sqrt(P(f | a) P(f | b))`.
///
/// Its spectrum equals that of the memory steady state.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    past_length: usize,
    pasts: Vec<u32>,
    entries: Vec<f64>,
}

/// Eigenvalues in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

/// Gram matrix over the observed pasts of `past_dist` (window length `L`).
pub fn gram_matrix(past_dist: &EmpiricalDistribution, futures: &ConditionalFutures) -> Result<GramMatrix> {
    let l = past_dist.window_length();
    if futures.past_length() != l {
        return Err(Error::Domain(format!(
            "past distribution has L = {l} but futures use L = {}",
            futures.past_length()
        )));
    }
    let total = past_dist.total() as f64;
    let mut parts = Vec::with_capacity(past_dist.support_size());
    for (past, count) in past_dist.observed() {
        let row = futures.row(past).ok_or_else(|| {
            Error::Internal(format!("no conditional futures for past {}", format_key(past, l)))
        })?;
        parts.push((past, count as f64 / total, row));
    }
    Ok(GramMatrix::from_parts(l, &parts))
}

impl GramMatrix {
    /// Build from `(past, probability, conditional future vector)` triples.
    pub fn from_parts(past_length: usize, parts: &[(u32, f64, &[f64])]) -> GramMatrix {
        let d = parts.len();
        let roots: Vec<Vec<f64>> = parts
            .iter()
            .map(|(_, _, row)| row.iter().map(|p| p.sqrt()).collect())
            .collect();
        let mut entries = vec![0.0; d * d];
        for a in 0..d {
            for b in a..d {
                let overlap: f64 = roots[a].iter().zip(&roots[b]).map(|(x, y)| x * y).sum();
                let g = (parts[a].1 * parts[b].1).sqrt() * overlap;
                entries[a * d + b] = g;
                entries[b * d + a] = g;
            }
        }
        GramMatrix {
            past_length,
            pasts: parts.iter().map(|(p, _, _)| *p).collect(),
            entries,
        }
    }

    pub fn dimension(&self) -> usize {
        self.pasts.len()
    }

    pub fn past_length(&self) -> usize {
        self.past_length
    }

    pub fn pasts(&self) -> &[u32] {
        &self.pasts
    }

    /// Row-major `d x d` entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.entries[a * self.dimension() + b]
    }

    pub fn trace(&self) -> f64 {
        let d = self.dimension();
        (0..d).map(|i| self.entries[i * d + i]).sum()
    }

    /// Plain-text dump of the matrix and its spectrum, 12 significant digits.
    pub fn dump(&self, spectrum: &Spectrum) -> String {
        let d = self.dimension();
        let mut out = String::new();
        let labels: Vec<String> = self
            .pasts
            .iter()
            .map(|&p| format_key(p, self.past_length))
            .collect();
        let _ = writeln!(out, "# gram {d}x{d} pasts {}", labels.join(" "));
        for a in 0..d {
            let row: Vec<String> = (0..d).map(|b| format!("{:.11e}", self.get(a, b))).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        let eig: Vec<String> = spectrum.eigenvalues.iter().map(|x| format!("{x:.11e}")).collect();
        let _ = writeln!(out, "# spectrum\n{}", eig.join(" "));
        out
    }
}

/// All eigenvalues of `g`, descending.
pub fn symmetric_spectrum(g: &GramMatrix) -> Result<Spectrum> {
    Ok(Spectrum {
        eigenvalues: symmetric_eigenvalues(g.entries(), g.dimension())?,
    })
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Von Neumann entropy in bits after clamping eigenvalues within
    /// [`CLAMP_FLOOR`] of zero.
    pub fn entropy(&self) -> Result<f64> {
        let mut clamped = Vec::with_capacity(self.eigenvalues.len());
        for &x in &self.eigenvalues {
            if x < -CLAMP_FLOOR {
                return Err(Error::Numerical(format!(
                    "eigenvalue {x:.3e} is below the clamping floor -{CLAMP_FLOOR:e}"
                )));
            }
            clamped.push(x.max(0.0));
        }
        Ok(entropy_bits(&clamped))
    }
}

/// `-Tr(G log2 G)`.
pub fn quantum_statistical_memory(g: &GramMatrix) -> Result<f64> {
    let trace = g.trace();
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::Domain(format!("Gram matrix trace {trace} is not 1")));
    }
    symmetric_spectrum(g)?.entropy()
}
