use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bircalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bircalc"))
        .args(args)
        .env_remove("BIRCALC_CATALOG")
        .output()
        .expect("spawn bircalc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn catalog_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("bircalc-{}-{name}.txt", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

const CATALOG: &str = "\
# two automorphism-free curves in P^3 and one on the cubic
p3 2 8 a automorphism_free
p3 6 9 b automorphism_free
cubic 0 5 c
";

#[test]
fn degree_for_each_pair() {
    for (space, g, d, want) in [
        ("p3", "2", "8", "31"),
        ("p3", "6", "9", "27"),
        ("p3", "10", "10", "23"),
        ("p3", "14", "11", "19"),
        ("cubic", "0", "5", "13"),
        ("cubic", "2", "6", "11"),
    ] {
        let o = bircalc(&["degree", "--space", space, "--genus", g, "--degree", d]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn inadmissible_pair_is_a_domain_error() {
    let o = bircalc(&["degree", "--space", "p3", "--genus", "3", "--degree", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr(&o);
    for pair in ["(2,8)", "(6,9)", "(10,10)", "(14,11)"] {
        assert!(msg.contains(pair), "{msg}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["degree", "--space", "p4", "--genus", "2", "--degree", "8"][..],
        &["degree", "--space", "p3"],
        &["frobnicate"],
        &["word", "certify", "--perm", "(a b)"],
    ] {
        assert_eq!(bircalc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn acprofile_human_and_json_agree() {
    let base = ["acprofile", "--space", "cubic", "--genus", "2", "--degree", "6"];
    let human = bircalc(&base);
    assert_eq!(human.status.code(), Some(0));
    let mut args = vec!["--format", "json-lines"];
    args.extend(base);
    let rows = json_lines(&bircalc(&args));
    assert_eq!(rows.len(), 12);

    let table: Vec<Vec<i64>> = stdout(&human)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    for (row, json) in table.iter().zip(&rows) {
        let fields: Vec<i64> = ["n", "rr", "free", "gens", "rels"]
            .iter()
            .map(|k| json[k].as_i64().unwrap())
            .collect();
        assert_eq!(row, &fields);
    }
    assert_eq!(table[5], [6, 104, 105, 0, 1]);
    assert_eq!(table[2], [3, 21, 20, 1, 0]);
}

#[test]
fn lattice_subcommands() {
    let flop = bircalc(&[
        "--format",
        "json-lines",
        "lattice",
        "flop",
        "--space",
        "p3",
        "--genus",
        "2",
        "--degree",
        "8",
    ]);
    assert_eq!(json_lines(&flop)[0]["matrix"], serde_json::json!([[1, -8], [0, -1]]));
    let rr = bircalc(&[
        "lattice", "rr", "--space", "p3", "--genus", "2", "--degree", "8", "--n", "6",
    ]);
    assert_eq!(stdout(&rr).trim(), "104");
    let cube = bircalc(&["lattice", "cube", "--space", "p3", "--genus", "0", "--degree", "1"]);
    assert_eq!(stdout(&cube).trim(), "54");
    let flop_off = bircalc(&["lattice", "flop", "--space", "p3", "--genus", "0", "--degree", "1"]);
    assert_eq!(flop_off.status.code(), Some(1));
}

#[test]
fn blowup_and_poly() {
    let o = bircalc(&["blowup", "defect", "--weights", "2,3", "--vh", "1", "--n", "1"]);
    assert_eq!(stdout(&o).trim(), "-13/6");
    let o = bircalc(&["blowup", "disc", "--weights", "3,2"]);
    assert_eq!(stdout(&o).trim(), "5");
    let o = bircalc(&["blowup", "disc", "--weights", "2,4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = bircalc(&["blowup", "exc", "--weights", "2,3", "--f", "x1^2", "--g", "x3"]);
    assert_eq!(stdout(&o).trim(), "1");

    let o = bircalc(&["poly", "valuation", "--weights", "1,2,3", "x1^2 + x3"]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = bircalc(&["poly", "pullback", "--weights", "1,2,3", "x2 + x1^3 - 1/2*x3"]);
    assert_eq!(stdout(&o).trim(), "u^2 * (x2 + u*x1^3 - 1/2*u*x3)");
    let o = bircalc(&["poly", "valuation", "--weights", "1,2,3", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn word_subcommands() {
    let o = bircalc(&["word", "normalize", "chi:a", "g:g^2", "g:g^-2", "chi:a", "chi:b"]);
    assert_eq!(stdout(&o).trim(), "chi:b");
    let o = bircalc(&["word", "conj", "chi:a", "--", "g:x", "chi:a", "g:x^-1"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = bircalc(&["word", "conj", "chi:a", "--", "chi:b"]);
    assert_eq!(stdout(&o).trim(), "false");
    let o = bircalc(&["word", "phi", "--perm", "(a b)", "chi:a", "g:x", "chi:c"]);
    assert_eq!(stdout(&o).trim(), "chi:b g:x chi:c");
    let o = bircalc(&["word", "order", "--perm", "(a b)(c d e)"]);
    assert_eq!(stdout(&o).trim(), "6");
    let o = bircalc(&["word", "section", "g:x"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn catalog_restricts_labels_and_certifies() {
    let path = catalog_file("certify", CATALOG);
    let cat = path.to_str().unwrap();

    let o = bircalc(&["catalog", "check", cat]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = bircalc(&["--catalog", cat, "word", "normalize", "chi:z"]);
    assert_eq!(o.status.code(), Some(1));

    let o = bircalc(&[
        "--catalog",
        cat,
        "--format",
        "json-lines",
        "word",
        "certify",
        "--perm",
        "(a b)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let cert = &json_lines(&o)[0];
    assert_eq!(cert["status"], "certified");
    assert_eq!(cert["witness"], "a");
    assert_eq!(cert["conjugate"], false);
    assert_eq!(cert["field_automorphism_obstruction"], true);

    let o = Command::new(env!("CARGO_BIN_EXE_bircalc"))
        .args(["--format", "json-lines", "word", "certify", "--perm", "(a c)"])
        .env("BIRCALC_CATALOG", cat)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["status"], "refused");

    std::fs::remove_file(path).unwrap();
}

#[test]
fn malformed_catalog_reports_line() {
    let path = catalog_file("bad", "p3 2 8 a\np3 3 7 b\n");
    let o = bircalc(&["catalog", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_reports_every_check() {
    let o = bircalc(&["--format", "json-lines", "verify"]);
    let checks = json_lines(&o);
    assert!(checks.len() > 15);
    let failing: Vec<&str> = checks
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["h0(−3K)=15"]);
    assert_eq!(o.status.code(), Some(1));
}
