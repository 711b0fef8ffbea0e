use std::fmt;

use serde::Serialize;

use crate::defeat::{discounts, rebuts, SignedArgumentPool};
use crate::prover::Claim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Label {
    In,
    Out,
    Undec,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::In => "IN",
            Label::Out => "OUT",
            Label::Undec => "UNDEC",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackKind {
    Rebut,
    Discount,
}

/// An edge from a con argument to a pro argument, by pool index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Attack {
    pub con: usize,
    pub pro: usize,
    pub kind: AttackKind,
}

/// Every rebuttal and discount in the pool. An attacker that both rebuts
/// and discounts its target yields one edge of each kind.
pub fn attacks(pool: &SignedArgumentPool) -> Vec<Attack> {
    let mut out = Vec::new();
    for (c, con) in pool.cons().iter().enumerate() {
        for (p, pro) in pool.pros().iter().enumerate() {
            if rebuts(&con.claim, pro.claim()) {
                out.push(Attack {
                    con: c,
                    pro: p,
                    kind: AttackKind::Rebut,
                });
            }
            if discounts(&con.claim, pro) {
                out.push(Attack {
                    con: c,
                    pro: p,
                    kind: AttackKind::Discount,
                });
            }
        }
    }
    out
}

/// Labels for every pro and con argument of a pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    pub pros: Vec<Label>,
    pub cons: Vec<Label>,
}

/// The grounded labelling. A con argument is identified with its
/// originating pro argument, so the fixpoint runs over pro arguments only
/// with `origin(con) → target` as the attack relation.
pub fn grounded_labelling(pool: &SignedArgumentPool) -> Labelling {
    label_with(pool, &attacks(pool))
}

pub(crate) fn label_with(pool: &SignedArgumentPool, edges: &[Attack]) -> Labelling {
    let n = pool.pros().len();
    let mut attackers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        attackers[e.pro].push(pool.cons()[e.con].origin);
    }
    let mut pros = vec![Label::Undec; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if pros[i] != Label::Undec {
                continue;
            }
            if attackers[i].iter().all(|a| pros[*a] == Label::Out) {
                pros[i] = Label::In;
                changed = true;
            } else if attackers[i].iter().any(|a| pros[*a] == Label::In) {
                pros[i] = Label::Out;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let cons = pool.cons().iter().map(|c| pros[c.origin]).collect();
    Labelling { pros, cons }
}

#[derive(Serialize)]
struct Node<'a> {
    id: String,
    role: &'static str,
    #[serde(flatten)]
    claim: &'a Claim,
    label: Label,
    #[serde(skip_serializing_if = "Option::is_none")]
    origin: Option<String>,
}

#[derive(Serialize)]
struct Edge {
    from: String,
    to: String,
    kind: AttackKind,
}

/// The labelled attack graph of a pool.
#[derive(Serialize)]
pub struct DefeatGraph<'a> {
    nodes: Vec<Node<'a>>,
    edges: Vec<Edge>,
}

impl<'a> DefeatGraph<'a> {
    pub fn new(pool: &'a SignedArgumentPool, edges: &[Attack], labelling: &Labelling) -> Self {
        let pro_id = |i: usize| format!("P{i}");
        let con_id = |i: usize| format!("C{i}");
        let mut nodes: Vec<Node<'a>> = pool
            .pros()
            .iter()
            .enumerate()
            .map(|(i, a)| Node {
                id: pro_id(i),
                role: "pro",
                claim: a.claim(),
                label: labelling.pros[i],
                origin: None,
            })
            .collect();
        nodes.extend(pool.cons().iter().enumerate().map(|(i, c)| Node {
            id: con_id(i),
            role: "con",
            claim: &c.claim,
            label: labelling.cons[i],
            origin: Some(pro_id(c.origin)),
        }));
        let edges = edges
            .iter()
            .map(|e| Edge {
                from: con_id(e.con),
                to: pro_id(e.pro),
                kind: e.kind,
            })
            .collect();
        DefeatGraph { nodes, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defeat::signed_closure;
    use crate::dictionary::Sign;
    use crate::kernel::parse_database;
    use crate::prover::SearchLimits;

    fn label_of(
        pool: &SignedArgumentPool,
        l: &Labelling,
        f: &str,
        grounds: &[&str],
        s: Sign,
    ) -> Label {
        let f = f.parse::<crate::kernel::Formula>().unwrap().normalize();
        let i = pool
            .pros()
            .iter()
            .position(|a| {
                *a.formula() == f && a.claim().rendered_grounds() == grounds && a.sign() == s
            })
            .expect("argument in pool");
        l.pros[i]
    }

    #[test]
    fn kb_e_labelling() {
        let db =
            parse_database("dict bounded-delta\nf1 : a [+]\nr1 : a -> p [+]\nf2 : a -> # [++]\n")
                .unwrap();
        let pool = signed_closure(&db, SearchLimits::default()).unwrap();
        let l = grounded_labelling(&pool);
        assert_eq!(
            label_of(&pool, &l, "~a", &["f2"], Sign::DoublePlus),
            Label::In
        );
        assert_eq!(label_of(&pool, &l, "a", &["f1"], Sign::Plus), Label::Out);
        assert_eq!(
            label_of(&pool, &l, "p", &["f1", "r1"], Sign::Plus),
            Label::Out
        );
    }

    #[test]
    fn symmetric_contradiction_is_undecided() {
        let db = parse_database("dict bounded-delta\nf1 : a [++]\nf2 : a -> # [++]\n").unwrap();
        let pool = signed_closure(&db, SearchLimits::default()).unwrap();
        let l = grounded_labelling(&pool);
        assert_eq!(
            label_of(&pool, &l, "a", &["f1"], Sign::DoublePlus),
            Label::Undec
        );
        assert_eq!(
            label_of(&pool, &l, "~a", &["f2"], Sign::DoublePlus),
            Label::Undec
        );
    }

    #[test]
    fn consistent_kb_is_all_in() {
        let db = parse_database("dict bounded-delta\nf : a [++]\nr : a -> b [+]\n").unwrap();
        let pool = signed_closure(&db, SearchLimits::default()).unwrap();
        let l = grounded_labelling(&pool);
        assert!(l.pros.iter().all(|x| *x == Label::In));
    }
}
