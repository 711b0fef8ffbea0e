use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kb(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../kb")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn argue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_argue"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn supporting_argument_for_growth_limit() {
    let o = argue(&[
        "arguments",
        "--kb",
        &kb("tumour.kb"),
        "--goal",
        "growthLtd(someX)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "(growthLtd(someX), {c1(someX), f1, t1(someX)}, +)\n"
    );
}

#[test]
fn confirming_argument_json() {
    let o = argue(&[
        "arguments",
        "--kb",
        &kb("tumour.kb"),
        "--goal",
        "~growthLtd(someX)",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["arguments"][0]["grounds"],
        serde_json::json!(["f1", "t2(someX)"])
    );
    assert_eq!(v["arguments"][0]["sign"], "++");

    let db =
        argue::kernel::parse_database(&std::fs::read_to_string(kb("tumour.kb")).unwrap()).unwrap();
    let goal: argue::kernel::Formula = "~growthLtd(someX)".parse().unwrap();
    let expected = argue::prover::find_arguments(&db, &goal, Default::default()).unwrap();
    let printed = v["arguments"].as_array().unwrap();
    assert_eq!(printed.len(), expected.len());
    for (p, e) in printed.iter().zip(&expected) {
        let formula: argue::kernel::Formula = p["formula"].as_str().unwrap().parse().unwrap();
        let sign: argue::dictionary::Sign = p["sign"].as_str().unwrap().parse().unwrap();
        let grounds: Vec<String> = serde_json::from_value(p["grounds"].clone()).unwrap();
        assert_eq!(formula.normalize(), *e.formula());
        assert_eq!(sign, e.sign());
        assert_eq!(grounds, e.claim().rendered_grounds());
    }
}

#[test]
fn aggregate_values() {
    let run = |file: &str, goal: &str, extra: &[&str]| {
        let path = kb(file);
        let mut args = vec!["aggregate", "--kb", &path, "--goal", goal];
        args.extend_from_slice(extra);
        let o = argue(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        stdout(&o)
    };
    assert_eq!(run("tumour.kb", "growthLtd(someX)", &[]), "1\n");
    assert_eq!(run("tumour.kb", "~growthLtd(someX)", &[]), "++\n");
    assert_eq!(run("cancer.kb", "cancer", &[]), "0.85\n");
    assert_eq!(run("defeat.kb", "p", &["--selective"]), "0\n");
    assert_eq!(run("defeat.kb", "p", &[]), "1\n");
    assert_eq!(
        run("tumour.kb", "growthLtd(someX)", &["--selective"]),
        "1\n"
    );
}

#[test]
fn exit_codes() {
    let o = argue(&["arguments", "--kb", &kb("tumour.kb"), "--goal", "cell(X)"]);
    assert_eq!(o.status.code(), Some(3));
    let o = argue(&["arguments", "--kb", &kb("tumour.kb"), "--goal", "a | b"]);
    assert_eq!(o.status.code(), Some(3));
    let o = argue(&[
        "aggregate",
        "--kb",
        &kb("tumour.kb"),
        "--goal",
        "p",
        "--flattener",
        "num",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = argue(&["arguments", "--kb", &kb("tumour.kb"), "--goal", "p &"]);
    assert_eq!(o.status.code(), Some(2));
    let o = argue(&["arguments", "--kb", "/nonexistent.kb", "--goal", "p"]);
    assert_eq!(o.status.code(), Some(2));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "dict bounded\nf : p [0.5]").unwrap();
    let o = argue(&[
        "arguments",
        "--kb",
        bad.path().to_str().unwrap(),
        "--goal",
        "p",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = argue(&["arguments", "--kb", &kb("tumour.kb"), "--goal", "sky"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn proof_round_trip_and_rejection() {
    let o = argue(&[
        "prove",
        "--kb",
        &kb("tumour.kb"),
        "--goal",
        "growthLtd(someX)",
        "--format",
        "json",
    ]);
    let mut proofs: Value = serde_json::from_slice(&o.stdout).unwrap();
    let single = proofs[0].clone();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{single}").unwrap();
    let o = argue(&[
        "check",
        "--kb",
        &kb("tumour.kb"),
        "--proof",
        file.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "(growthLtd(someX), {c1(someX), f1, t1(someX)}, +)\n"
    );

    proofs[0]["children"][1]["label"] = Value::from("t2(someX)");
    let mut broken = tempfile::NamedTempFile::new().unwrap();
    write!(broken, "{proofs}").unwrap();
    let o = argue(&[
        "check",
        "--kb",
        &kb("tumour.kb"),
        "--proof",
        broken.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("root.1"));
}

#[test]
fn criteria_commands() {
    let o = argue(&["check", "--criteria", "flattening", "--flattener", "bnd"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("F1: pass") && text.contains("F2: pass"),
        "{text}"
    );

    let o = argue(&[
        "check",
        "--criteria",
        "acr",
        "--kb",
        &kb("delta.kb"),
        "--no-closure",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("C1: fail"));

    let o = argue(&[
        "check",
        "--criteria",
        "acr",
        "--kb",
        &kb("delta.kb"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closed"][0]["criterion"], "C1");
    assert_eq!(v["closed"][0]["status"], "pass");
    assert_eq!(v["native"][0]["status"], "fail");
    assert!(v["native"][0]["counterexample"].is_object());

    let o = argue(&["check", "--criteria", "acr", "--kb", &kb("tumour.kb")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn defeat_text_lists_labels() {
    let o = argue(&["defeat", "--kb", &kb("defeat.kb")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.lines()
            .any(|l| l.contains("IN") && l.contains("(~a, {f2}, ++)")),
        "{text}"
    );
    assert!(text
        .lines()
        .any(|l| l.contains("OUT") && l.contains("(p, {f1, r1}, +)")));
}
