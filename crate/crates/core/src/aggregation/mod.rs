//! Flattening argument sets into a single confidence, and the harness
//! that classifies flatteners by the F and C criteria.

mod criteria;
mod flatten;

pub use criteria::{
    check_acr_criteria, check_flattening_criteria, check_selective_f4, random_cases,
    random_selective_instances, AcrReport, Counterexample, CriteriaCase, CriteriaReport, Criterion,
    CriterionResult, Status,
};
pub use flatten::{
    agg_bnd, agg_num, flatten, flatten_arguments, overlapping_grounds, BuiltinFlattener, Flattener,
};
