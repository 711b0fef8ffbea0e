use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::aggregation::{flatten, Flattener};
use crate::defeat::{base_arguments, selective_aggregate, signed_closure, universe};
use crate::dictionary::{Confidence, DictionaryKind, Sign};
use crate::error::Result;
use crate::kernel::{AxiomEntry, Database, Formula, GroundLabel};
use crate::prover::{find_arguments, Argument, Claim, SearchLimits};
use crate::random::{self, KbShape, SeededRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Criterion {
    F1,
    F2,
    F3,
    F4,
    C1,
    C2,
    C3,
    C4,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// Holds because both sides are always equal: the extra argument is
    /// invisible to the flattener.
    PassByEquality,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::PassByEquality => "pass-by-equality",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        })
    }
}

/// A reproducible violation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub proposition: Formula,
    pub arguments: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<Claim>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p = {}; Arg = {{", self.proposition)?;
        for (i, a) in self.arguments.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")?;
        if let Some(extra) = &self.extra {
            write!(f, "; extra = {extra}")?;
        }
        write!(f, "; {}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CriterionResult {
    fn new(criterion: Criterion, status: Status) -> Self {
        CriterionResult {
            criterion,
            status,
            counterexample: None,
            note: None,
        }
    }

    fn failed(criterion: Criterion, counterexample: Counterexample) -> Self {
        CriterionResult {
            counterexample: Some(counterexample),
            ..CriterionResult::new(criterion, Status::Fail)
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CriteriaReport {
    pub results: Vec<CriterionResult>,
}

impl CriteriaReport {
    pub fn get(&self, c: Criterion) -> Option<&CriterionResult> {
        self.results.iter().find(|r| r.criterion == c)
    }

    pub fn status(&self, c: Criterion) -> Option<Status> {
        self.get(c).map(|r| r.status)
    }

    pub fn passed(&self) -> bool {
        !self.results.iter().any(|r| r.status.is_fail())
    }

    pub fn merge(&mut self, other: CriteriaReport) {
        self.results.extend(other.results);
        self.results.sort_by_key(|r| r.criterion);
    }
}

impl fmt::Display for CriteriaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            write!(f, "{}: {}", r.criterion, r.status)?;
            if let Some(note) = &r.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
            if let Some(cx) = &r.counterexample {
                writeln!(f, "  counterexample: {cx}")?;
            }
        }
        Ok(())
    }
}

/// One test case for the flattening criteria: an argument set for
/// `proposition`, the label of the extra argument added to it, and the
/// strength used when projecting a `+` extra into a numeric dictionary.
#[derive(Clone, Debug, PartialEq)]
pub struct CriteriaCase {
    pub proposition: Formula,
    pub arguments: Vec<Claim>,
    pub extra: GroundLabel,
    pub strength: f64,
}

/// `count` seeded cases drawn from the flattener's source dictionary.
pub fn random_cases(f: &dyn Flattener, count: usize, seed: u64) -> Vec<CriteriaCase> {
    let mut rng = random::rng(seed);
    let p = Formula::prop("p");
    (0..count).map(|_| random_case(&mut rng, f, &p)).collect()
}

fn random_case(rng: &mut SeededRng, f: &dyn Flattener, p: &Formula) -> CriteriaCase {
    use rand::Rng;
    let signs = random::positive_signs(rng, f.source(), 4);
    CriteriaCase {
        proposition: p.clone(),
        arguments: random::random_claims(rng, p, &signs, 6),
        extra: GroundLabel::plain("x"),
        strength: rng.gen_range(0.0..1.0),
    }
}

fn with_extra(case: &CriteriaCase, sign: Sign) -> (Vec<Claim>, Claim) {
    let extra = Claim::new(
        case.proposition.clone(),
        BTreeSet::from([case.extra.clone()]),
        sign,
    );
    let mut all = case.arguments.clone();
    all.push(extra.clone());
    (all, extra)
}

/// Evaluates one side of a criterion. Flattening errors count as
/// violations: the harness only feeds signs the flattener claims to accept.
fn flat(f: &dyn Flattener, claims: &[Claim]) -> std::result::Result<Confidence, String> {
    flatten(claims, f).map_err(|e| e.to_string())
}

enum Verdict {
    Holds { strict: bool },
    Violated(String),
}

fn run_cases(
    criterion: Criterion,
    f: &dyn Flattener,
    cases: &[CriteriaCase],
    abstract_sign: Sign,
    eval: impl Fn(&CriteriaCase, &[Claim]) -> std::result::Result<Verdict, String>,
    skip: impl Fn(&CriteriaCase) -> bool,
) -> CriterionResult {
    let mut strict = false;
    let mut skipped = 0;
    let mut checked = 0;
    for case in cases {
        if skip(case) {
            skipped += 1;
            continue;
        }
        let Some(sign) = f.embed(abstract_sign, case.strength) else {
            unreachable!("caller checks the embedding")
        };
        let (all, extra) = with_extra(case, sign);
        let verdict = eval(case, &all).unwrap_or_else(Verdict::Violated);
        checked += 1;
        match verdict {
            Verdict::Holds { strict: s } => strict |= s,
            Verdict::Violated(detail) => {
                return CriterionResult::failed(
                    criterion,
                    Counterexample {
                        proposition: case.proposition.clone(),
                        arguments: case.arguments.clone(),
                        extra: Some(extra),
                        detail,
                    },
                );
            }
        }
    }
    let status = if criterion == Criterion::F3 && !strict {
        Status::PassByEquality
    } else {
        Status::Pass
    };
    let note = if skipped > 0 {
        format!("{checked} cases, {skipped} skipped")
    } else {
        format!("{checked} cases")
    };
    CriterionResult::new(criterion, status).with_note(note)
}

/// Checks F1–F4 for `f` over `cases`.
///
/// F1: adding a `+` argument never lowers the value. F2: a `++` argument
/// alone determines the value. F3: adding a `−` argument never raises it.
/// F4: a `−−` argument drives the value to the bottom, except when the
/// set already holds a confirming argument. Abstract signs are projected
/// through [`Flattener::embed`]; a sign with no projection is never seen
/// by the flattener.
pub fn check_flattening_criteria(f: &dyn Flattener, cases: &[CriteriaCase]) -> CriteriaReport {
    let mut results = Vec::new();

    results.push(match f.embed(Sign::Plus, 0.5) {
        None => CriterionResult::new(Criterion::F1, Status::NotApplicable),
        Some(_) => run_cases(
            Criterion::F1,
            f,
            cases,
            Sign::Plus,
            |case, all| {
                let before = flat(f, &case.arguments)?;
                let after = flat(f, all)?;
                Ok(match before.leq(after) {
                    Some(true) => Verdict::Holds {
                        strict: before != after,
                    },
                    _ => Verdict::Violated(format!("{before} > {after} after adding +")),
                })
            },
            |_| false,
        ),
    });

    results.push(match f.embed(Sign::DoublePlus, 0.5) {
        None => CriterionResult::new(Criterion::F2, Status::NotApplicable),
        Some(top) => run_cases(
            Criterion::F2,
            f,
            cases,
            Sign::DoublePlus,
            |case, all| {
                let alone = flat(
                    f,
                    &with_extra(
                        &CriteriaCase {
                            arguments: Vec::new(),
                            ..case.clone()
                        },
                        top,
                    )
                    .0,
                )?;
                let after = flat(f, all)?;
                Ok(if alone == after {
                    Verdict::Holds { strict: false }
                } else {
                    Verdict::Violated(format!("{after} differs from the confirming value {alone}"))
                })
            },
            |_| false,
        ),
    });

    results.push(match f.embed(Sign::Minus, 0.5) {
        None => CriterionResult::new(Criterion::F3, Status::PassByEquality)
            .with_note("negative arguments are ignored".into()),
        Some(_) => run_cases(
            Criterion::F3,
            f,
            cases,
            Sign::Minus,
            |case, all| {
                let before = flat(f, &case.arguments)?;
                let after = flat(f, all)?;
                Ok(match after.leq(before) {
                    Some(true) => Verdict::Holds {
                        strict: before != after,
                    },
                    _ => Verdict::Violated(format!("{before} < {after} after adding -")),
                })
            },
            |_| false,
        ),
    });

    results.push(match f.embed(Sign::DoubleMinus, 0.5) {
        None => CriterionResult::new(Criterion::F4, Status::NotApplicable)
            .with_note("the source dictionary has no --".into()),
        Some(_) => run_cases(
            Criterion::F4,
            f,
            cases,
            Sign::DoubleMinus,
            |_, all| {
                let after = flat(f, all)?;
                Ok(if after == f.bottom() {
                    Verdict::Holds { strict: false }
                } else {
                    Verdict::Violated(format!("{after} is not the bottom {}", f.bottom()))
                })
            },
            |case| {
                let top = f.embed(Sign::DoublePlus, 0.5);
                case.arguments.iter().any(|a| Some(a.sign) == top)
            },
        ),
    });

    CriteriaReport { results }
}

/// A fresh axiom label not used in `db`.
fn fresh_label(db: &Database) -> String {
    (0..)
        .map(|i| format!("fresh{i}"))
        .find(|l| db.entry(l).is_none())
        .expect("unbounded label supply")
}

/// F4 for selective aggregation over bounded-delta databases: adding a
/// confirmed contradiction `(~p, ++)` to a database makes the selective
/// value of `p` equal to the value it has when that contradiction stands
/// alone. Instances whose database already confirms `p` are skipped.
pub fn check_selective_f4(
    instances: &[(Database, Formula)],
    f: &dyn Flattener,
    limits: SearchLimits,
) -> Result<CriterionResult> {
    let mut skipped = 0;
    let mut checked = 0;
    for (db, p) in instances {
        db.require(&[DictionaryKind::BoundedDelta])?;
        let args = find_arguments(db, p, limits)?;
        if args.iter().any(|a| a.sign() == Sign::DoublePlus) {
            skipped += 1;
            continue;
        }
        let contradiction =
            AxiomEntry::new(&fresh_label(db), Formula::not(p.clone()), Sign::DoublePlus);
        let extended = db.clone().with(contradiction.clone())?;
        let alone = Database::new(db.dictionary(), vec![contradiction.clone()])?;
        let with = selective_aggregate(&extended, p, f, limits)?;
        let without = selective_aggregate(&alone, p, f, limits)?;
        checked += 1;
        if with != without {
            return Ok(CriterionResult::failed(
                Criterion::F4,
                Counterexample {
                    proposition: p.clone(),
                    arguments: args.into_iter().map(Argument::into_claim).collect(),
                    extra: Some(Claim::new(
                        Formula::not(p.clone()),
                        BTreeSet::from([GroundLabel::plain(&contradiction.label)]),
                        Sign::DoublePlus,
                    )),
                    detail: format!("selective value {with} differs from {without}"),
                },
            ));
        }
    }
    Ok(CriterionResult::new(Criterion::F4, Status::Pass)
        .with_note(format!("{checked} databases, {skipped} skipped")))
}

/// Random bounded-delta instances for [`check_selective_f4`]: each
/// database is paired with every ground atom it mentions.
pub fn random_selective_instances(count: usize, seed: u64) -> Vec<(Database, Formula)> {
    let mut rng = random::rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let db = random::random_database(&mut rng, KbShape::small(DictionaryKind::BoundedDelta));
        for f in universe(&db, &[]) {
            if matches!(f, Formula::Atom(_)) && out.len() < count {
                out.push((db.clone(), f));
            }
        }
    }
    out
}

/// Native and closed-system results for C1–C4.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AcrReport {
    /// The prover alone, which never produces negatively signed arguments.
    pub native: CriteriaReport,
    /// The prover followed by the signed closure.
    pub closed: CriteriaReport,
}

fn triple_set<'a>(claims: impl IntoIterator<Item = &'a Claim>) -> BTreeSet<Claim> {
    claims.into_iter().cloned().collect()
}

fn c_unapplicable(dictionary: DictionaryKind) -> bool {
    dictionary == DictionaryKind::Delta
}

fn dual_check(
    criterion: Criterion,
    pros: &BTreeSet<Claim>,
    cons: &BTreeSet<Claim>,
    pro_sign: Sign,
    con_sign: Sign,
) -> CriterionResult {
    for pro in pros.iter().filter(|c| c.sign == pro_sign) {
        let dual = Claim::new(pro.formula.complement(), pro.grounds.clone(), con_sign);
        if !cons.contains(&dual) {
            return CriterionResult::failed(
                criterion,
                Counterexample {
                    proposition: pro.formula.clone(),
                    arguments: vec![pro.clone()],
                    extra: None,
                    detail: format!("no dual {dual}"),
                },
            );
        }
    }
    for con in cons.iter().filter(|c| c.sign == con_sign) {
        let found = pros.iter().any(|p| {
            p.sign == pro_sign && p.grounds == con.grounds && p.formula.complement() == con.formula
        });
        if !found {
            return CriterionResult::failed(
                criterion,
                Counterexample {
                    proposition: con.formula.clone(),
                    arguments: vec![con.clone()],
                    extra: None,
                    detail: "no pro argument for the complement".into(),
                },
            );
        }
    }
    CriterionResult::new(criterion, Status::Pass)
}

/// `(¬p, a, s)` whenever `(−p, a, s)`, for `p = ¬r` over the formulas `r`
/// of `base`: every `(r, a, s)` needs `(¬¬r, a, s)`.
fn strengthening_check(
    criterion: Criterion,
    base: &[Claim],
    sign: Sign,
    has: impl Fn(&Claim) -> Result<bool>,
) -> Result<CriterionResult> {
    for claim in base.iter().filter(|c| c.sign == sign) {
        let target = Claim::new(
            Formula::negation(Formula::negation(claim.formula.clone())),
            claim.grounds.clone(),
            sign,
        );
        if !has(&target)? {
            return Ok(CriterionResult::failed(
                criterion,
                Counterexample {
                    proposition: Formula::negation(claim.formula.clone()),
                    arguments: vec![claim.clone()],
                    extra: None,
                    detail: format!("missing {target}"),
                },
            ));
        }
    }
    Ok(CriterionResult::new(criterion, Status::Pass))
}

/// Checks C1–C4 on the prover alone and on its signed closure.
///
/// C1/C3 relate pro and con arguments for complementary formulas; C2/C4
/// require `(¬¬r, a, s)` for every `(r, a, s)`. C3 and C4 do not apply to
/// the unbounded delta dictionary.
pub fn check_acr_criteria(db: &Database, limits: SearchLimits) -> Result<AcrReport> {
    db.require(&[DictionaryKind::Delta, DictionaryKind::BoundedDelta])?;
    let dict = db.dictionary();
    let base_args = base_arguments(db, &[], limits)?;
    let base: Vec<Claim> = base_args.iter().map(|a| a.claim().clone()).collect();
    let no_cons = BTreeSet::new();
    let native_pros = triple_set(&base);

    let exhaustive = SearchLimits {
        minimal: false,
        ..limits
    };
    let derivable = |target: &Claim| -> Result<bool> {
        Ok(find_arguments(db, &target.formula, exhaustive)?
            .iter()
            .any(|a| a.claim() == target))
    };

    let mut native = vec![
        dual_check(
            Criterion::C1,
            &native_pros,
            &no_cons,
            Sign::Plus,
            Sign::Minus,
        ),
        strengthening_check(Criterion::C2, &base, Sign::Plus, derivable)?,
    ];
    let pool = signed_closure(db, limits)?;
    let closed_pros = triple_set(pool.pros().iter().map(Argument::claim));
    let closed_cons = triple_set(pool.cons().iter().map(|c| &c.claim));
    let in_pool = |target: &Claim| -> Result<bool> { Ok(closed_pros.contains(target)) };
    let mut closed = vec![
        dual_check(
            Criterion::C1,
            &closed_pros,
            &closed_cons,
            Sign::Plus,
            Sign::Minus,
        ),
        strengthening_check(Criterion::C2, &base, Sign::Plus, in_pool)?,
    ];
    if c_unapplicable(dict) {
        for report in [&mut native, &mut closed] {
            report.push(CriterionResult::new(Criterion::C3, Status::NotApplicable));
            report.push(CriterionResult::new(Criterion::C4, Status::NotApplicable));
        }
    } else {
        native.push(dual_check(
            Criterion::C3,
            &native_pros,
            &no_cons,
            Sign::DoublePlus,
            Sign::DoubleMinus,
        ));
        native.push(strengthening_check(
            Criterion::C4,
            &base,
            Sign::DoublePlus,
            derivable,
        )?);
        closed.push(dual_check(
            Criterion::C3,
            &closed_pros,
            &closed_cons,
            Sign::DoublePlus,
            Sign::DoubleMinus,
        ));
        closed.push(strengthening_check(
            Criterion::C4,
            &base,
            Sign::DoublePlus,
            in_pool,
        )?);
    }
    Ok(AcrReport {
        native: CriteriaReport { results: native },
        closed: CriteriaReport { results: closed },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::BuiltinFlattener;
    use crate::kernel::parse_database;

    struct Parity;

    impl Flattener for Parity {
        fn name(&self) -> &str {
            "parity"
        }
        fn source(&self) -> DictionaryKind {
            DictionaryKind::Generic
        }
        fn bottom(&self) -> Confidence {
            Confidence::Count(0)
        }
        fn flatten_signs(&self, signs: &[Sign]) -> Confidence {
            Confidence::Count(signs.len() as u64 % 2)
        }
        fn embed(&self, s: Sign, _: f64) -> Option<Sign> {
            (s == Sign::Plus).then_some(Sign::Plus)
        }
    }

    #[test]
    fn builtin_flatteners_satisfy_f1_f2() {
        for f in [BuiltinFlattener::Bnd, BuiltinFlattener::Num] {
            let report = check_flattening_criteria(&f, &random_cases(&f, 300, 11));
            assert_eq!(report.status(Criterion::F1), Some(Status::Pass), "{f}");
            assert_eq!(report.status(Criterion::F2), Some(Status::Pass), "{f}");
            assert_eq!(
                report.status(Criterion::F3),
                Some(Status::PassByEquality),
                "{f}"
            );
            assert_eq!(
                report.status(Criterion::F4),
                Some(Status::NotApplicable),
                "{f}"
            );
        }
    }

    #[test]
    fn parity_flattener_fails_f1_with_counterexample() {
        let report = check_flattening_criteria(&Parity, &random_cases(&Parity, 50, 3));
        let f1 = report.get(Criterion::F1).unwrap();
        assert_eq!(f1.status, Status::Fail);
        let cx = f1.counterexample.as_ref().unwrap();
        let before = Parity.flatten_signs(&cx.arguments.iter().map(|c| c.sign).collect::<Vec<_>>());
        let mut with: Vec<Sign> = cx.arguments.iter().map(|c| c.sign).collect();
        with.push(cx.extra.as_ref().unwrap().sign);
        assert!(Parity.flatten_signs(&with) < before);
    }

    #[test]
    fn acr_native_fails_c1_closed_passes() {
        let db =
            parse_database("dict bounded-delta\nf1 : a [+]\nr1 : a -> p [+]\nf2 : a -> # [++]\n")
                .unwrap();
        let report = check_acr_criteria(&db, SearchLimits::default()).unwrap();
        assert_eq!(report.native.status(Criterion::C1), Some(Status::Fail));
        assert!(report.closed.passed(), "{}", report.closed);
    }

    #[test]
    fn delta_has_no_c3() {
        let db = parse_database("dict delta\nf : q [+]\n").unwrap();
        let report = check_acr_criteria(&db, SearchLimits::default()).unwrap();
        assert_eq!(
            report.closed.status(Criterion::C3),
            Some(Status::NotApplicable)
        );
        assert_eq!(report.closed.status(Criterion::C1), Some(Status::Pass));
        assert_eq!(report.native.status(Criterion::C2), Some(Status::Pass));
    }

    #[test]
    fn selective_f4() {
        let instances = random_selective_instances(40, 5);
        let r = check_selective_f4(&instances, &BuiltinFlattener::Bnd, SearchLimits::default())
            .unwrap();
        assert_eq!(r.status, Status::Pass, "{:?}", r.counterexample);
    }
}
