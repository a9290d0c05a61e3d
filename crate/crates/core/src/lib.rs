//! Evolve elementary cellular automata from random initial rows and track
//! the structure of each row, viewed as a stationary binary process, through
//! two memory measures: the classical statistical complexity `C_mu` of its
//! inferred epsilon-machine and the quantum statistical memory `C_q`
//! obtained from the spectrum of the memory-state Gram matrix.

pub mod classical;
pub mod eca;
pub mod error;
pub mod harness;
pub mod quantum;
pub mod stats;

pub use classical::{infer_classical, ClassicalInference, EpsilonMachine};
pub use eca::{parse_rule, RuleTable, Tape, Trajectory};
pub use error::{Error, Result};
pub use harness::{run_experiment, ComplexityTrace, ExperimentConfig, SpectrumReport};
pub use quantum::{infer_quantum, FuturesEstimator, GramMatrix, QuantumInference, Spectrum};
pub use stats::{ConditionalFutures, EmpiricalDistribution};
