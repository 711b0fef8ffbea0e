use std::collections::BTreeSet;

use argue::aggregation::{
    check_acr_criteria, check_selective_f4, flatten, random_selective_instances, BuiltinFlattener,
    Criterion, Status,
};
use argue::defeat::{
    attacks, grounded_labelling, selective_aggregate, signed_closure, universe, AttackKind, Label,
    SignedArgumentPool,
};
use argue::dictionary::{DictionaryKind, Sign};
use argue::kernel::{parse_database, Database};
use argue::prover::{find_arguments, SearchLimits};
use argue::random::{random_database, rng, KbShape};

fn limits() -> SearchLimits {
    SearchLimits::default().with_depth(4)
}

fn random_kbs(count: usize, seed: u64) -> Vec<Database> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_database(&mut r, KbShape::small(DictionaryKind::BoundedDelta)))
        .collect()
}

/// Pro-level attackers of every pro argument.
fn attackers(pool: &SignedArgumentPool) -> Vec<BTreeSet<usize>> {
    let mut out = vec![BTreeSet::new(); pool.pros().len()];
    for e in attacks(pool) {
        out[e.pro].insert(pool.cons()[e.con].origin);
    }
    out
}

/// The grounded extension as the least fixpoint of the characteristic
/// function: an argument is acceptable when each of its attackers is
/// attacked by the current set.
fn grounded_extension(att: &[Vec<usize>]) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = BTreeSet::new();
    loop {
        let next: BTreeSet<usize> = (0..att.len())
            .filter(|&a| att[a].iter().all(|b| att[*b].iter().any(|c| s.contains(c))))
            .collect();
        if next == s {
            return s;
        }
        s = next;
    }
}

#[test]
fn labellings_are_fixpoints() {
    let mut outs = 0;
    for db in random_kbs(120, 8) {
        let pool = signed_closure(&db, limits()).unwrap();
        let l = grounded_labelling(&pool);
        let att = attackers(&pool);
        for (i, label) in l.pros.iter().enumerate() {
            let has_in = att[i].iter().any(|a| l.pros[*a] == Label::In);
            let all_out = att[i].iter().all(|a| l.pros[*a] == Label::Out);
            match label {
                Label::In => assert!(all_out && !has_in),
                Label::Out => {
                    assert!(has_in);
                    outs += 1;
                }
                Label::Undec => assert!(!has_in && !all_out),
            }
        }
        for (c, con) in pool.cons().iter().enumerate() {
            assert_eq!(l.cons[c], l.pros[con.origin]);
        }
        let as_vec: Vec<Vec<usize>> = att.iter().map(|s| s.iter().copied().collect()).collect();
        let expected = grounded_extension(&as_vec);
        let got: BTreeSet<usize> = (0..l.pros.len())
            .filter(|i| l.pros[*i] == Label::In)
            .collect();
        assert_eq!(got, expected);
    }
    assert!(outs > 0, "no generated KB produced a defeat");
}

#[test]
fn weak_cons_never_touch_confirmed_arguments() {
    for db in random_kbs(80, 9) {
        let pool = signed_closure(&db, limits()).unwrap();
        for e in attacks(&pool) {
            let con = &pool.cons()[e.con].claim;
            let pro = &pool.pros()[e.pro];
            if con.sign == Sign::Minus && e.kind == AttackKind::Rebut {
                assert_eq!(pro.sign(), Sign::Plus);
            }
        }
    }
}

#[test]
fn selective_never_exceeds_plain_aggregation() {
    for db in random_kbs(60, 10) {
        for p in universe(&db, &[]) {
            let all = find_arguments(&db, &p, limits()).unwrap();
            let plain = flatten(all.iter().map(|a| a.claim()), &BuiltinFlattener::Bnd).unwrap();
            let selective = selective_aggregate(&db, &p, &BuiltinFlattener::Bnd, limits()).unwrap();
            assert_eq!(selective.leq(plain), Some(true), "{p}");
        }
    }
}

#[test]
fn closure_satisfies_c1_to_c4() {
    let mut native_fail = 0;
    for db in random_kbs(100, 11) {
        let report = check_acr_criteria(&db, limits()).unwrap();
        assert!(
            report.closed.passed(),
            "{}\n{:#?}",
            report.closed,
            db.entries()
        );
        for c in [Criterion::C1, Criterion::C3] {
            assert_eq!(report.closed.status(c), Some(Status::Pass));
        }
        if report.native.status(Criterion::C1) == Some(Status::Fail) {
            native_fail += 1;
        }
    }
    assert!(native_fail > 0);
}

#[test]
fn f4_holds_for_selective_bounded_delta_aggregation() {
    let instances = random_selective_instances(150, 12);
    let r = check_selective_f4(&instances, &BuiltinFlattener::Bnd, limits()).unwrap();
    assert_eq!(r.status, Status::Pass, "{:?}", r.counterexample);
}

#[test]
fn kb_e_graph() {
    let db = parse_database("dict bounded-delta\nf1 : a [+]\nr1 : a -> p [+]\nf2 : a -> # [++]\n")
        .unwrap();
    let pool = signed_closure(&db, limits()).unwrap();
    let find = |f: &str, g: &[&str]| {
        let f = f.parse::<argue::kernel::Formula>().unwrap().normalize();
        pool.pros()
            .iter()
            .position(|a| *a.formula() == f && a.claim().rendered_grounds() == g)
            .unwrap()
    };
    let strong = pool
        .cons()
        .iter()
        .position(|c| c.claim.sign == Sign::DoubleMinus && c.claim.formula.to_string() == "a")
        .unwrap();
    let edges = attacks(&pool);
    assert!(edges
        .iter()
        .any(|e| e.con == strong && e.pro == find("a", &["f1"]) && e.kind == AttackKind::Rebut));
    assert!(edges.iter().any(|e| e.con == strong
        && e.pro == find("p", &["f1", "r1"])
        && e.kind == AttackKind::Discount));
    let graph = argue::defeat::DefeatGraph::new(&pool, &edges, &grounded_labelling(&pool));
    let json = serde_json::to_value(&graph).unwrap();
    assert!(json["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .all(|n| n["label"].is_string()));
    assert!(json["edges"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["kind"] == "rebut"));
}
