//! Argument construction and proof checking.

mod argument;
mod check;
mod proof;
mod search;

pub use argument::{depends_on, Argument, Claim, SearchLimits};
pub use check::check_proof;
pub use proof::{ProofTerm, Rule};
pub use search::find_arguments;

pub(crate) use search::{validate_goal, validate_limits};
