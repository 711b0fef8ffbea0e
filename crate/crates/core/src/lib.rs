pub mod aggregation;
pub mod defeat;
pub mod dictionary;
pub mod error;
pub mod kernel;
pub mod prover;
pub mod random;
