use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Two-sample chi-squared homogeneity statistic over paired histograms.
///
/// Cells empty in both samples are dropped. Returns `(statistic, dof)` with
/// `dof = occupied cells - 1`.
pub fn chi2_statistic(a: &[u64], b: &[u64]) -> (f64, usize) {
    assert_eq!(a.len(), b.len(), "histograms over different alphabets");
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let n = (na + nb) as f64;
    let mut stat = 0.0;
    let mut occupied = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        let col = x + y;
        if col == 0 {
            continue;
        }
        occupied += 1;
        let ea = na as f64 * col as f64 / n;
        let eb = nb as f64 * col as f64 / n;
        if ea > 0.0 {
            stat += (x as f64 - ea).powi(2) / ea;
        }
        if eb > 0.0 {
            stat += (y as f64 - eb).powi(2) / eb;
        }
    }
    (stat, occupied.saturating_sub(1))
}

/// Upper-tail p-value of a chi-squared statistic.
pub fn chi2_p_value(stat: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    ChiSquared::new(dof as f64).map_or(1.0, |d| d.sf(stat))
}

/// Whether two future histograms are statistically indistinguishable at
/// significance `alpha` (p-value >= alpha).
pub fn chi2_same(a: &[u64], b: &[u64], alpha: f64) -> bool {
    if a.iter().sum::<u64>() == 0 || b.iter().sum::<u64>() == 0 {
        return true;
    }
    let (stat, dof) = chi2_statistic(a, b);
    chi2_p_value(stat, dof) >= alpha
}
