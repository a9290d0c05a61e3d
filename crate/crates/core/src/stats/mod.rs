//! Window statistics of a row viewed as a stationary binary process.

mod entropy;
mod futures;
mod window;

pub(crate) use entropy::entropy_bits;
pub use entropy::{shannon_entropy, NORMALIZATION_TOL};
pub use futures::{chained_futures, conditional_futures, ConditionalFutures};
pub use window::{count_windows, format_key, EmpiricalDistribution, MAX_WINDOW};
