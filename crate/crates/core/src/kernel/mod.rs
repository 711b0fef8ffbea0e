//! Object language, knowledge bases and their concrete syntax.

mod database;
mod formula;
mod parser;

pub use database::{AxiomEntry, Database, GroundLabel};
pub use formula::{Atom, Binding, Formula, Term};
pub use parser::{parse_database, parse_formula};
