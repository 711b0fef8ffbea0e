//! Con arguments, attacks between arguments and the grounded defeat
//! labelling.
//!
//! Con arguments come from the signed closure: every pro argument
//! `(p, a, s)` yields `(−p, a, flip(s))`. A con argument attacks a pro
//! argument by rebutting it (same conclusion) or by discounting it (the
//! pro argument's proof passes through the con argument's conclusion).
//! `−−` overcomes any pro sign, `−` only `+`.

mod attack;
mod closure;
mod labelling;

pub use attack::{discounts, rebuts};
pub use closure::{
    base_arguments, signed_closure, signed_closure_for, universe, ConArgument, SignedArgumentPool,
};
pub use labelling::{
    attacks, grounded_labelling, Attack, AttackKind, DefeatGraph, Label, Labelling,
};

use crate::aggregation::{flatten, Flattener};
use crate::dictionary::Confidence;
use crate::error::Result;
use crate::kernel::{Database, Formula};
use crate::prover::{find_arguments, validate_goal, SearchLimits};

/// Aggregates only the undefeated (IN) arguments for `p`. Without
/// polarity in the dictionary nothing is ever attacked, and this is plain
/// aggregation over every argument.
pub fn selective_aggregate(
    db: &Database,
    p: &Formula,
    f: &dyn Flattener,
    limits: SearchLimits,
) -> Result<Confidence> {
    let goal = validate_goal(p)?;
    if !db.dictionary().has_polarity() {
        let args = find_arguments(db, &goal, limits)?;
        return flatten(args.iter().map(|a| a.claim()), f);
    }
    let pool = signed_closure_for(db, std::slice::from_ref(&goal), limits)?;
    let labelling = grounded_labelling(&pool);
    let undefeated = pool
        .pros_for(&goal)
        .into_iter()
        .filter(|i| labelling.pros[*i] == Label::In)
        .filter(|i| !pool.is_strengthened(*i))
        .map(|i| pool.pros()[i].claim());
    flatten(undefeated, f)
}
