use std::collections::BTreeMap;

use super::chi2::chi2_same;
use super::subtree::SubTree;
use crate::error::{Error, Result};

/// Assignment of observed length-`L` pasts to causal-state labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalPartition {
    past_length: usize,
    labels: BTreeMap<u32, usize>,
    n_states: usize,
}

impl CausalPartition {
    pub fn new(past_length: usize, labels: BTreeMap<u32, usize>) -> Result<Self> {
        let n_states = labels.values().max().map_or(0, |&m| m + 1);
        let mut used = vec![false; n_states];
        for &s in labels.values() {
            used[s] = true;
        }
        if used.iter().any(|u| !u) {
            return Err(Error::Internal("state labels are not contiguous".into()));
        }
        Ok(CausalPartition {
            past_length,
            labels,
            n_states,
        })
    }

    pub fn past_length(&self) -> usize {
        self.past_length
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn label(&self, past: u32) -> Option<usize> {
        self.labels.get(&past).copied()
    }

    pub fn labels(&self) -> &BTreeMap<u32, usize> {
        &self.labels
    }

    /// Pasts of each state, ascending.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n_states];
        for (&past, &s) in &self.labels {
            out[s].push(past);
        }
        out
    }
}

/// Group depth-`L` nodes whose depth-`L` future histograms are
/// indistinguishable under a chi-squared homogeneity test.
///
/// Nodes are visited by descending count. Ties are broken first by the
/// node's future histogram with its cells sorted, then by the smaller of the
/// past and its bitwise complement, then by the past itself. The first two
/// keys do not change when every bit of the row is complemented, so the
/// visiting order is relabeling-invariant except between a past and its own
/// complement when both keys coincide. Each node joins the first existing
/// class whose pooled histogram passes the test, otherwise it founds a new
/// class. Labels follow founding order.
pub fn merge_states(tree: &SubTree, l: usize, alpha: f64) -> Result<CausalPartition> {
    if tree.depth() < 2 * l {
        return Err(Error::Domain(format!(
            "tree depth {} is less than 2L = {}",
            tree.depth(),
            2 * l
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("chi-squared alpha {alpha} outside (0, 1)")));
    }
    let mask = (1u32 << l) - 1;
    let mut nodes: Vec<Visit> = tree
        .level(l)
        .into_iter()
        .map(|(past, idx)| {
            let hist = tree.future_histogram(idx, l);
            let mut shape = hist.clone();
            shape.sort_unstable_by(|a, b| b.cmp(a));
            Visit {
                past,
                count: tree.node(idx).count,
                shape,
                hist,
            }
        })
        .collect();
    nodes.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| b.shape.cmp(&a.shape))
            .then(a.past.min(a.past ^ mask).cmp(&b.past.min(b.past ^ mask)))
            .then(a.past.cmp(&b.past))
    });

    let mut pooled: Vec<Vec<u64>> = Vec::new();
    let mut labels = BTreeMap::new();
    for Visit { past, hist, .. } in nodes {
        let state = match pooled.iter().position(|rep| chi2_same(rep, &hist, alpha)) {
            Some(s) => {
                for (acc, h) in pooled[s].iter_mut().zip(&hist) {
                    *acc += h;
                }
                s
            }
            None => {
                pooled.push(hist);
                pooled.len() - 1
            }
        };
        labels.insert(past, state);
    }
    CausalPartition::new(l, labels)
}

struct Visit {
    past: u32,
    count: u64,
    shape: Vec<u64>,
    hist: Vec<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::build_subtree;
    use crate::eca::Tape;

    #[test]
    fn zeros_one_state() {
        let tree = build_subtree(&Tape::zeros(1000), 6).unwrap();
        assert_eq!(merge_states(&tree, 6, 0.05).unwrap().n_states(), 1);
    }

    #[test]
    fn alternating_two_states() {
        let row = Tape::periodic(&[false, true], 64_000);
        let tree = build_subtree(&row, 6).unwrap();
        let p = merge_states(&tree, 6, 0.05).unwrap();
        assert_eq!(p.n_states(), 2);
        assert_ne!(p.label(0b010101), p.label(0b101010));
    }

    #[test]
    fn bad_alpha() {
        let tree = build_subtree(&Tape::zeros(20), 2).unwrap();
        assert!(merge_states(&tree, 2, 0.0).is_err());
        assert!(merge_states(&tree, 2, 1.0).is_err());
        assert!(merge_states(&tree, 3, 0.05).is_err());
    }

    #[test]
    fn never_more_states_than_pasts() {
        let mut rng = crate::eca::seeded_rng(12);
        let row = Tape::random(4000, &mut rng);
        let tree = build_subtree(&row, 5).unwrap();
        let p = merge_states(&tree, 5, 0.05).unwrap();
        assert!(p.n_states() >= 1);
        assert!(p.n_states() <= p.labels().len());
        assert!(p.labels().len() <= 32);
    }
}
