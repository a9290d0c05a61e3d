use std::fmt::Write as _;

use super::partition::CausalPartition;
use super::subtree::SubTree;
use crate::error::{Error, Result};
use crate::stats::entropy_bits;

/// Power iteration cap for the stationary distribution.
pub const STATIONARY_MAX_ITERS: usize = 100_000;
/// Convergence threshold (max-norm change between iterates).
pub const STATIONARY_TOL: f64 = 1e-12;

/// Edge-emitting hidden Markov model over causal states.
///
/// `transitions[y][k][j]` is the probability, from state `j`, of emitting
/// `y` and moving to state `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonMachine {
    transitions: [Vec<Vec<f64>>; 2],
    stationary: Vec<f64>,
    empirical: Vec<f64>,
}

impl EpsilonMachine {
    /// Machine from explicit labelled transition matrices; the stationary
    /// distribution is computed. `weights` resolves non-ergodic machines and
    /// defaults to uniform.
    pub fn from_transitions(t0: Vec<Vec<f64>>, t1: Vec<Vec<f64>>, weights: Option<Vec<f64>>) -> Result<Self> {
        let n = t0.len();
        if n == 0 || t1.len() != n || t0.iter().chain(&t1).any(|r| r.len() != n) {
            return Err(Error::Domain(
                "transition matrices must be square and equal-sized".into(),
            ));
        }
        for j in 0..n {
            let col: f64 = (0..n).map(|k| t0[k][j] + t1[k][j]).sum();
            if (col - 1.0).abs() > 1e-9 {
                return Err(Error::Domain(format!(
                    "transitions out of state {j} sum to {col}"
                )));
            }
        }
        let empirical = weights.unwrap_or_else(|| vec![1.0 / n as f64; n]);
        let transitions = [t0, t1];
        let stationary = stationary_distribution(&transitions, &empirical)?;
        Ok(EpsilonMachine {
            transitions,
            stationary,
            empirical,
        })
    }

    pub fn n_states(&self) -> usize {
        self.stationary.len()
    }

    pub fn transitions(&self, symbol: usize) -> &[Vec<f64>] {
        &self.transitions[symbol]
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    /// Empirical past-frequency mass of each state.
    pub fn empirical_weights(&self) -> &[f64] {
        &self.empirical
    }

    /// `max_k |(sum_y T^y pi)_k - pi_k|`.
    pub fn stationary_residual(&self) -> f64 {
        let m = summed(&self.transitions);
        let next = apply(&m, &self.stationary);
        next.iter()
            .zip(&self.stationary)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Plain-text dump: one `state_from, symbol, prob, state_to` line per edge
    /// in label order, then the stationary distribution.
    pub fn edge_list(&self) -> String {
        let n = self.n_states();
        let mut out = String::from("state_from, symbol, prob, state_to\n");
        for j in 0..n {
            for y in 0..2 {
                for k in 0..n {
                    let p = self.transitions[y][k][j];
                    if p > 0.0 {
                        let _ = writeln!(out, "S{j}, {y}, {p:.12}, S{k}");
                    }
                }
            }
        }
        out.push_str("# stationary\n");
        for (j, p) in self.stationary.iter().enumerate() {
            let _ = writeln!(out, "S{j}, {p:.12}");
        }
        out
    }
}

fn summed(t: &[Vec<Vec<f64>>; 2]) -> Vec<Vec<f64>> {
    t[0].iter()
        .zip(&t[1])
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect()
}

fn apply(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Closed communicating classes of the transition graph (`j -> k` when
/// `m[k][j] > 0`), each sorted, ordered by smallest member.
fn closed_classes(m: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut reach = vec![vec![false; n]; n];
    for (j, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![j];
        row[j] = true;
        while let Some(s) = stack.pop() {
            for k in 0..n {
                if m[k][s] > 0.0 && !row[k] {
                    row[k] = true;
                    stack.push(k);
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for j in 0..n {
        if assigned[j] {
            continue;
        }
        // j is recurrent iff everything it reaches reaches it back
        let closed = (0..n).all(|k| !reach[j][k] || reach[k][j]);
        if closed {
            let class: Vec<usize> = (0..n).filter(|&k| reach[j][k]).collect();
            for &k in &class {
                assigned[k] = true;
            }
            classes.push(class);
        }
    }
    classes
}

/// Stationary vector by power iteration on the lazy chain `(I + M) / 2`,
/// which shares its fixed points with `M` and is aperiodic.
fn power_iteration(m: &[Vec<f64>], start: Vec<f64>) -> Result<Vec<f64>> {
    let mut v = start;
    let mut delta = f64::INFINITY;
    for _ in 0..STATIONARY_MAX_ITERS {
        let mv = apply(m, &v);
        let next: Vec<f64> = v.iter().zip(&mv).map(|(a, b)| 0.5 * (a + b)).collect();
        let sum: f64 = next.iter().sum();
        let next: Vec<f64> = next.iter().map(|x| x / sum).collect();
        delta = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if delta <= STATIONARY_TOL {
            return Ok(v);
        }
    }
    Err(Error::Numerical(format!(
        "stationary distribution did not converge in {STATIONARY_MAX_ITERS} iterations \
         (last change {delta:.3e}, {} states)",
        m.len()
    )))
}

/// Stationary distribution of `sum_y T^y`.
///
/// With a single recurrent class this is the unique fixed point, found by
/// power iteration from the uniform vector. With several, each class's own
/// stationary vector is weighted by the empirical mass of its states.
fn stationary_distribution(t: &[Vec<Vec<f64>>; 2], empirical: &[f64]) -> Result<Vec<f64>> {
    let m = summed(t);
    let n = m.len();
    let classes = closed_classes(&m);
    if classes.len() <= 1 {
        return power_iteration(&m, vec![1.0 / n as f64; n]);
    }
    let masses: Vec<f64> = classes
        .iter()
        .map(|c| c.iter().map(|&k| empirical[k]).sum())
        .collect();
    let total: f64 = masses.iter().sum();
    let mut pi = vec![0.0; n];
    for (class, mass) in classes.iter().zip(&masses) {
        let weight = if total > 0.0 {
            mass / total
        } else {
            1.0 / classes.len() as f64
        };
        let sub: Vec<Vec<f64>> = class
            .iter()
            .map(|&k| class.iter().map(|&j| m[k][j]).collect())
            .collect();
        let local = power_iteration(&sub, vec![1.0 / class.len() as f64; class.len()])?;
        for (&k, p) in class.iter().zip(local) {
            pi[k] = weight * p;
        }
    }
    Ok(pi)
}

/// Assemble the machine implied by a causal partition of the tree's pasts.
///
/// For a past `p` in state `j` seen `c_p` times, emitting `y` leads to the
/// state of the shifted past `p[1..] y`. `T^y[k][j]` is the `c_p`-weighted
/// average of `P(y | p)` over the pasts of `j` whose shifted past lies in
/// `k`. Shifted pasts absent from the partition (only the row's final window
/// can produce one) are dropped and the state's outgoing mass renormalized.
pub fn build_machine(tree: &SubTree, partition: &CausalPartition) -> Result<EpsilonMachine> {
    let l = partition.past_length();
    let n = partition.n_states();
    if n == 0 {
        return Err(Error::Domain("partition has no states".into()));
    }
    let mask = (1u32 << l) - 1;
    let mut t = [vec![vec![0.0; n]; n], vec![vec![0.0; n]; n]];
    let mut empirical = vec![0.0; n];
    let mut total_count = 0u64;

    for (past, idx) in tree.level(l) {
        let state = partition
            .label(past)
            .ok_or_else(|| Error::Internal(format!("past {past:b} has no causal state")))?;
        let next = tree.next_symbol_counts(idx);
        let count = tree.node(idx).count;
        total_count += count;
        empirical[state] += count as f64;
        for (y, &cy) in next.iter().enumerate() {
            if cy == 0 {
                continue;
            }
            let shifted = ((past << 1) | y as u32) & mask;
            if let Some(k) = partition.label(shifted) {
                // c_p * P(y | p) = count of p·y
                t[y][k][state] += cy as f64;
            }
        }
    }

    for j in 0..n {
        let out: f64 = (0..n).map(|k| t[0][k][j] + t[1][k][j]).sum();
        if out <= 0.0 {
            return Err(Error::Internal(format!("state S{j} has no outgoing transitions")));
        }
        for ty in &mut t {
            for row in ty.iter_mut() {
                row[j] /= out;
            }
        }
    }
    let empirical: Vec<f64> = empirical.iter().map(|c| c / total_count as f64).collect();
    let stationary = stationary_distribution(&t, &empirical)?;
    Ok(EpsilonMachine {
        transitions: t,
        stationary,
        empirical,
    })
}

/// Shannon entropy of the stationary state distribution, in bits.
pub fn statistical_complexity(machine: &EpsilonMachine) -> f64 {
    entropy_bits(machine.stationary())
}
