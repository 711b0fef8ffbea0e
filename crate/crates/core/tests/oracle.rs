mod support;

use std::collections::BTreeSet;

use argue::defeat::universe;
use argue::dictionary::DictionaryKind;
use argue::kernel::parse_database;
use argue::prover::{check_proof, find_arguments, SearchLimits};
use argue::random::{random_database, rng, KbShape};

use support::oracle::{Oracle, Triple};

const DEPTH: usize = 4;

fn limits() -> SearchLimits {
    SearchLimits {
        max_depth: DEPTH,
        max_args: usize::MAX,
        minimal: false,
    }
}

fn compare(db: &argue::kernel::Database) -> usize {
    let queries: Vec<_> = universe(db, &[]).into_iter().collect();
    let oracle = Oracle::new(db, &queries, DEPTH);
    let mut seen = 0;
    for q in &queries {
        let args = find_arguments(db, q, limits()).unwrap();
        let found: BTreeSet<Triple> = args
            .iter()
            .map(|a| {
                (
                    a.formula().to_string(),
                    a.claim().rendered_grounds(),
                    a.sign().to_string(),
                )
            })
            .collect();
        assert_eq!(found.len(), args.len(), "duplicate triples for {q}");
        let expected = oracle.triples(q);
        assert_eq!(found, expected, "query {q} on\n{:#?}", db.entries());
        for a in &args {
            let again = check_proof(db, a.proof()).unwrap();
            assert_eq!(again.claim(), a.claim());
        }
        seen += args.len();
    }
    seen
}

#[test]
fn hand_written_kbs_match_the_oracle() {
    for text in [
        "dict bounded\nc1 : cell(X) -> growthLtd(X) [+]\nt1 : tumourCell(X) -> cell(X) [++]\n\
         t2 : tumourCell(X) -> ~growthLtd(X) [++]\nf1 : tumourCell(someX) [++]\n",
        "dict bounded-delta\nf1 : a [+]\nr1 : a -> p [+]\nf2 : a -> # [++]\n",
        "dict generic\nfa : a [+]\nfb : b [+]\nr : a & b -> c [+]\ns : (a -> c) -> d [+]\n",
        "dict numeric\nw : w [0.7]\ne : e [0.5]\nr1 : w -> c [1]\nr2 : e -> c [0.9]\n",
    ] {
        compare(&parse_database(text).unwrap());
    }
}

#[test]
fn random_kbs_match_the_oracle() {
    let mut total = 0;
    let mut r = rng(2024);
    for dictionary in DictionaryKind::ALL {
        for _ in 0..40 {
            let db = random_database(&mut r, KbShape::small(dictionary));
            total += compare(&db);
        }
    }
    assert!(total > 200, "generated KBs are too poor: {total} arguments");
}
