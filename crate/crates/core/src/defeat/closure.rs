use std::collections::{BTreeMap, BTreeSet};

use crate::dictionary::DictionaryKind;
use crate::error::Result;
use crate::kernel::{Binding, Database, Formula};
use crate::prover::{
    check_proof, find_arguments, validate_goal, validate_limits, Argument, Claim, ProofTerm,
    SearchLimits,
};

/// A negatively signed argument obtained from a pro argument for the
/// complement of its conclusion.
#[derive(Clone, Debug, PartialEq)]
pub struct ConArgument {
    pub claim: Claim,
    /// Index of the originating pro argument in the pool.
    pub origin: usize,
}

/// Pro arguments derived by the prover (plus their double-negation
/// strengthenings) and the con arguments closing them under
/// complementation.
#[derive(Clone, Debug)]
pub struct SignedArgumentPool {
    dictionary: DictionaryKind,
    pros: Vec<Argument>,
    strengthened: Vec<bool>,
    cons: Vec<ConArgument>,
}

impl SignedArgumentPool {
    pub fn dictionary(&self) -> DictionaryKind {
        self.dictionary
    }

    pub fn pros(&self) -> &[Argument] {
        &self.pros
    }

    pub fn cons(&self) -> &[ConArgument] {
        &self.cons
    }

    /// Whether the pro argument at `i` was added by double-negation
    /// strengthening rather than found by the prover.
    pub fn is_strengthened(&self, i: usize) -> bool {
        self.strengthened[i]
    }

    /// Indices of the pro arguments concluding `p`.
    pub fn pros_for(&self, p: &Formula) -> Vec<usize> {
        let p = p.normalize();
        (0..self.pros.len())
            .filter(|i| *self.pros[*i].formula() == p)
            .collect()
    }
}

fn groundings(f: &Formula, constants: &BTreeSet<String>) -> Vec<Formula> {
    let vars = f.vars_in_order();
    if vars.is_empty() {
        return vec![f.clone()];
    }
    if constants.is_empty() {
        return Vec::new();
    }
    let consts: Vec<&String> = constants.iter().collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let binding: Binding = vars
            .iter()
            .zip(&idx)
            .map(|(v, i)| (v.clone(), consts[*i].clone()))
            .collect();
        out.push(f.substitute_partial(&binding));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < consts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Ground instances of every subformula of the positively signed axioms,
/// without `#` and disjunctions, plus each query and its complement. All
/// formulas are kernel-normal.
pub fn universe(db: &Database, queries: &[Formula]) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for (entry, formula) in db.normalized_entries() {
        if !entry.sign.is_positive() {
            continue;
        }
        for sub in formula.subformulas() {
            if *sub == Formula::Falsum || sub.contains_or() {
                continue;
            }
            out.extend(groundings(sub, db.constants()));
        }
    }
    for q in queries {
        let q = q.normalize();
        out.insert(q.complement());
        out.insert(q);
    }
    out
}

/// `(¬¬r, a, s)` from `(r, a, s)`: assume `¬r`, refute it with the proof
/// of `r`, discharge.
fn strengthen(db: &Database, arg: &Argument) -> Result<Argument> {
    let r = arg.formula().clone();
    let not_r = Formula::negation(r.clone());
    let not_not_r = Formula::negation(not_r.clone());
    let proof = ProofTerm::imp_intro(
        "h0",
        not_not_r,
        ProofTerm::imp_elim(
            arg.proof().clone(),
            ProofTerm::hypothesis("h0", not_r),
            Formula::Falsum,
        ),
    );
    check_proof(db, &proof)
}

/// Pro arguments for every formula of the universe, as found by the
/// prover, without closure.
pub fn base_arguments(
    db: &Database,
    queries: &[Formula],
    limits: SearchLimits,
) -> Result<Vec<Argument>> {
    validate_limits(&limits)?;
    let queries = queries
        .iter()
        .map(validate_goal)
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for f in universe(db, &queries) {
        out.extend(find_arguments(db, &f, limits)?);
    }
    Ok(out)
}

/// Closure of the database's arguments under C1–C4.
pub fn signed_closure(db: &Database, limits: SearchLimits) -> Result<SignedArgumentPool> {
    signed_closure_for(db, &[], limits)
}

/// As [`signed_closure`], with `queries` (and their complements) added to
/// the set of formulas whose arguments are enumerated.
pub fn signed_closure_for(
    db: &Database,
    queries: &[Formula],
    limits: SearchLimits,
) -> Result<SignedArgumentPool> {
    db.require(&[DictionaryKind::Delta, DictionaryKind::BoundedDelta])?;
    let base = base_arguments(db, queries, limits)?;

    let mut by_claim: BTreeMap<Claim, (Argument, bool)> = BTreeMap::new();
    for arg in &base {
        by_claim
            .entry(arg.claim().clone())
            .or_insert_with(|| (arg.clone(), false));
    }
    for arg in &base {
        let s = strengthen(db, arg)?;
        by_claim
            .entry(s.claim().clone())
            .or_insert_with(|| (s, true));
    }

    let mut entries: Vec<(Argument, bool)> = by_claim.into_values().collect();
    entries.sort_by_cached_key(|(a, _)| (a.formula().to_string(), a.claim().listing_key()));
    let (pros, strengthened): (Vec<Argument>, Vec<bool>) = entries.into_iter().unzip();

    let dict = db.dictionary();
    let cons = pros
        .iter()
        .enumerate()
        .map(|(i, p)| {
            Ok(ConArgument {
                claim: Claim::new(
                    p.formula().complement(),
                    p.grounds().clone(),
                    dict.flip(p.sign())?,
                ),
                origin: i,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SignedArgumentPool {
        dictionary: dict,
        pros,
        strengthened,
        cons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::Sign;
    use crate::kernel::parse_database;

    fn kb_e() -> Database {
        parse_database(
            "dict bounded-delta\n\
             f1 : a [+]\n\
             r1 : a -> p [+]\n\
             f2 : a -> # [++]\n",
        )
        .unwrap()
    }

    fn has_con(pool: &SignedArgumentPool, f: &str, grounds: &[&str], sign: Sign) -> bool {
        let f: Formula = f.parse::<Formula>().unwrap().normalize();
        pool.cons().iter().any(|c| {
            c.claim.formula == f && c.claim.rendered_grounds() == grounds && c.claim.sign == sign
        })
    }

    #[test]
    fn kb_e_pool_has_strong_con_for_a() {
        let pool = signed_closure(&kb_e(), SearchLimits::default()).unwrap();
        assert!(has_con(&pool, "a", &["f2"], Sign::DoubleMinus));
        assert!(has_con(&pool, "~a", &["f1"], Sign::Minus));
        assert!(has_con(&pool, "~p", &["f1", "r1"], Sign::Minus));
    }

    #[test]
    fn no_negations_no_cons_against_the_kb() {
        let db = parse_database("dict bounded-delta\nf : b [+]\nr : b -> c [++]\n").unwrap();
        let pool = signed_closure(&db, SearchLimits::default()).unwrap();
        // every con only targets formulas nothing in the KB derives
        for con in pool.cons() {
            assert_eq!(
                con.claim.formula,
                pool.pros()[con.origin].formula().complement()
            );
            assert!(pool.pros_for(&con.claim.formula).is_empty());
        }
    }

    #[test]
    fn double_negation_strengthening() {
        let db = parse_database("dict delta\nf : q [+]\n").unwrap();
        let pool =
            signed_closure_for(&db, &["~q".parse().unwrap()], SearchLimits::default()).unwrap();
        let nnq = pool.pros_for(&"~~q".parse().unwrap());
        assert_eq!(nnq.len(), 1);
        let arg = &pool.pros()[nnq[0]];
        assert_eq!(arg.claim().rendered_grounds(), ["f"]);
        assert_eq!(arg.sign(), Sign::Plus);
        assert!(pool.is_strengthened(nnq[0]));
    }

    #[test]
    fn requires_polarity() {
        let db = parse_database("dict bounded\nf : q [+]\n").unwrap();
        assert!(signed_closure(&db, SearchLimits::default()).is_err());
    }

    #[test]
    fn universe_grounds_schemas() {
        let db = parse_database("dict delta\nr : p(X) -> q(X) [+]\nf : p(c) [+]\n").unwrap();
        let u: Vec<String> = universe(&db, &[]).iter().map(ToString::to_string).collect();
        assert_eq!(u, ["p(c)", "q(c)", "p(c) -> q(c)"]);
    }
}
