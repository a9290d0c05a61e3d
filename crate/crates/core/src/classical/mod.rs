//! Classical statistical complexity by sub-tree reconstruction.

mod chi2;
mod machine;
mod partition;
mod subtree;

pub use chi2::{chi2_p_value, chi2_same, chi2_statistic};
pub use machine::{
    build_machine, statistical_complexity, EpsilonMachine, STATIONARY_MAX_ITERS, STATIONARY_TOL,
};
pub use partition::{merge_states, CausalPartition};
pub use subtree::{build_subtree, Node, SubTree};

use crate::eca::Tape;
use crate::error::Result;

/// Result of classical inference on one row.
#[derive(Clone, Debug)]
pub struct ClassicalInference {
    pub machine: EpsilonMachine,
    pub partition: CausalPartition,
    pub c_mu: f64,
}

/// Sub-tree reconstruction with window `2L` and chi-squared level `alpha`.
pub fn infer_classical(row: &Tape, l: usize, alpha: f64) -> Result<ClassicalInference> {
    let tree = build_subtree(row, l)?;
    let partition = merge_states(&tree, l, alpha)?;
    let machine = build_machine(&tree, &partition)?;
    let c_mu = statistical_complexity(&machine);
    Ok(ClassicalInference {
        machine,
        partition,
        c_mu,
    })
}
