use crate::eca::Tape;
use crate::error::{Error, Result};

/// Longest supported window; the dense count table has `2^k` slots.
pub const MAX_WINDOW: usize = 26;

/// Counts of every length-`k` window of a row.
///
/// Windows are keyed by their value read as a binary number with the
/// leftmost cell as the most significant bit, so key `0b011` is the string
/// `"011"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    window_length: usize,
    counts: Vec<u64>,
    total: u64,
}

/// Count the `W - k + 1` non-wrapping windows of length `k` in `row`.
pub fn count_windows(row: &Tape, k: usize) -> Result<EmpiricalDistribution> {
    if k == 0 || k > MAX_WINDOW {
        return Err(Error::Domain(format!(
            "window length {k} outside 1..={MAX_WINDOW}"
        )));
    }
    if k > row.width() {
        return Err(Error::WindowTooLong {
            window: k,
            width: row.width(),
        });
    }
    let mask = (1u64 << k) - 1;
    let mut counts = vec![0u64; 1 << k];
    let mut value = 0u64;
    let mut seen = 0usize;
    for (wi, &word) in row.words().iter().enumerate() {
        let bits_here = (row.width() - wi * 64).min(64);
        for b in 0..bits_here {
            value = ((value << 1) | ((word >> b) & 1)) & mask;
            seen += 1;
            if seen >= k {
                counts[value as usize] += 1;
            }
        }
    }
    let total = (row.width() - k + 1) as u64;
    Ok(EmpiricalDistribution {
        window_length: k,
        counts,
        total,
    })
}

impl EmpiricalDistribution {
    /// Build from a dense count table of length `2^k`.
    pub fn from_counts(window_length: usize, counts: Vec<u64>) -> Result<Self> {
        if window_length == 0 || window_length > MAX_WINDOW || counts.len() != 1 << window_length {
            return Err(Error::Domain(format!(
                "count table of length {} does not match window length {window_length}",
                counts.len()
            )));
        }
        let total = counts.iter().sum();
        if total == 0 {
            return Err(Error::Domain("distribution has no counts".into()));
        }
        Ok(EmpiricalDistribution {
            window_length,
            counts,
            total,
        })
    }

    pub fn window_length(&self) -> usize {
        self.window_length
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Dense table indexed by window value.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, key: u32) -> u64 {
        self.counts.get(key as usize).copied().unwrap_or(0)
    }

    pub fn probability(&self, key: u32) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(key) as f64 / self.total as f64
        }
    }

    /// Observed windows in ascending key order with their counts.
    pub fn observed(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k as u32, c))
    }

    pub fn support_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Probabilities of the observed windows, ascending key order.
    pub fn probabilities(&self) -> Vec<f64> {
        let total = self.total as f64;
        self.observed().map(|(_, c)| c as f64 / total).collect()
    }

    /// Sum over the last symbol, giving the distribution of the first
    /// `k - 1` cells of each window.
    pub fn marginalize_last(&self) -> Result<EmpiricalDistribution> {
        if self.window_length < 2 {
            return Err(Error::Domain("cannot marginalize a length-1 window".into()));
        }
        let counts = self.counts.chunks(2).map(|pair| pair[0] + pair[1]).collect();
        Ok(EmpiricalDistribution {
            window_length: self.window_length - 1,
            counts,
            total: self.total,
        })
    }

    /// Sum over the first symbol.
    pub fn marginalize_first(&self) -> Result<EmpiricalDistribution> {
        if self.window_length < 2 {
            return Err(Error::Domain("cannot marginalize a length-1 window".into()));
        }
        let half = self.counts.len() / 2;
        let counts = (0..half)
            .map(|i| self.counts[i] + self.counts[i + half])
            .collect();
        Ok(EmpiricalDistribution {
            window_length: self.window_length - 1,
            counts,
            total: self.total,
        })
    }

    /// Shannon entropy of the window distribution, in bits.
    pub fn entropy(&self) -> f64 {
        super::entropy::entropy_bits(&self.probabilities())
    }

    pub fn key_string(&self, key: u32) -> String {
        format_key(key, self.window_length)
    }
}

/// Render a window value as a `len`-character binary string.
pub fn format_key(key: u32, len: usize) -> String {
    (0..len)
        .rev()
        .map(|b| if (key >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}
