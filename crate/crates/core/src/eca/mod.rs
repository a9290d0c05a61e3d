//! Elementary cellular automata: rule tables, bit-packed evolution with
//! open-boundary emulation, rule symmetries and the kink filter.

mod evolve;
mod kink;
mod pbm;
mod rule;
mod symmetry;
mod tape;

pub use evolve::{
    pad_seeded, run_open_boundary, run_open_boundary_padded, seeded_initial, seeded_rng, step_periodic,
    step_periodic_into, step_periodic_naive, Evolver, Trajectory, MAX_CELLS,
};
pub use kink::kink_filter;
pub use pbm::{write_pbm_ascii, write_pbm_binary};
pub use rule::{parse_rule, RuleTable};
pub use symmetry::{canonical_rules, complement, mirror, rule_symmetries};
pub use tape::Tape;
