use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use massforge::mass::MassReport;
use massforge::problem::LocalReport;
use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_massforge")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_massforge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn mass_json(name: &str) -> Value {
    json(&run(&["mass", "-i", problem(name).to_str().unwrap(), "--json"]))
}

#[test]
fn mass_reports() {
    assert_eq!(mass_json("hurwitz.json")["mass_dr"], "1/12");
    assert_eq!(mass_json("lipschitz.json")["mass_dr"], "1/4");
    assert_eq!(mass_json("fq3_quaternion.json")["mass_dr"], "1/4");
    assert_eq!(mass_json("f2_degree3.json")["mass_dr"], "1/7");
    let h = mass_json("hurwitz.json");
    assert_eq!((h["type_mass"].as_str(), h["type_mass_multiplied"].as_str()), (Some("1/24"), Some("1/6")));
    assert!(h["warning"].is_string());
}

#[test]
fn json_round_trips_and_matches_text() {
    let out = run(&["mass", "-i", problem("eichler22.json").to_str().unwrap(), "--json"]);
    let report: MassReport = serde_json::from_slice(&out.stdout).unwrap();
    let again: MassReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
    let text = String::from_utf8(run(&["mass", "-i", problem("eichler22.json").to_str().unwrap()]).stdout).unwrap();
    for (label, v) in [("Mass(D,R)", &report.mass_dr), ("Mass(G_1,U_1)", &report.mass_g1), ("c(S,U)", &report.c)] {
        let line = text.lines().find(|l| l.starts_with(label)).unwrap();
        assert_eq!(line.split_whitespace().nth(1), Some(v.to_string().as_str()), "{line}");
    }
}

#[test]
fn local_reports() {
    let local = |name: &str, place: &str| -> LocalReport {
        let out = run(&["local", "-i", problem(name).to_str().unwrap(), "-p", place, "--json"]);
        serde_json::from_value(json(&out)).unwrap()
    };
    let lip = local("lipschitz.json", "2");
    assert_eq!((lip.lambda.to_string(), lip.profile.eichler_symbol, lip.profile.disc_abs.to_string()), ("3".into(), Some(0), "4".into()));
    let h2 = local("hurwitz.json", "2");
    assert_eq!((h2.lambda.to_string(), h2.profile.eichler_symbol), ("1".into(), Some(-1)));
    let h5 = local("hurwitz.json", "5");
    assert!(h5.maximal);
    assert_eq!(h5.lambda.to_string(), "1");
    let text = String::from_utf8(run(&["local", "-i", problem("lipschitz.json").to_str().unwrap(), "-p", "2"]).stdout).unwrap();
    assert!(text.contains("Eichler symbol   0"));
}

#[test]
fn verify_matches() {
    for (name, mass) in [("hurwitz.json", "1/12"), ("b11_maximal.json", "5/6"), ("eichler22.json", "5/2")] {
        let v = json(&run(&["verify", "-i", problem(name).to_str().unwrap()]));
        assert_eq!(v["match"], true, "{name}");
        assert_eq!(v["mass_enumerated"], mass);
        assert_eq!(v["mass_formula"], mass);
    }
    let v = json(&run(&["verify", "-i", problem("hurwitz.json").to_str().unwrap(), "--types", "--neighbor-prime", "5"]));
    assert_eq!(v["classes"][0]["unit_index"], 12);
    assert_eq!(v["type_mass_enumerated"], "1/24");
    assert_eq!(v["neighbor_prime"], 5);
    let bad = run(&["verify", "-i", problem("hurwitz.json").to_str().unwrap(), "--neighbor-prime", "2"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn tables() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("bp.tsv");
    let out = run(&["table", "--family", "maximal-Bp-infty", "--range", "2..50", "-o", tsv.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&tsv).unwrap();
    let rows: Vec<Vec<&str>> = body.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 15);
    for r in &rows {
        let p: i64 = r[1].parse().unwrap();
        let want = massforge::exactnum::Rational::new((p - 1).into(), 12.into()).to_string();
        assert_eq!(r[2], want);
        assert_eq!(r[7], want);
    }
    let js = dir.path().join("fq.json");
    assert!(run(&["table", "--family", "fq-maximal", "--range", "3..7", "-o", js.to_str().unwrap()]).status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    let got: Vec<(u64, String)> =
        v.as_array().unwrap().iter().map(|r| (r["param"].as_u64().unwrap(), r["mass_dr"].as_str().unwrap().to_string())).collect();
    assert_eq!(got, vec![(3, "1/4".into()), (4, "1/5".into()), (5, "1/6".into()), (7, "1/8".into())]);
    let e = run(&["table", "--family", "eichler", "--range", "3..30"]);
    let body = String::from_utf8(e.stdout).unwrap();
    assert!(body.lines().any(|l| l.starts_with("eichler\t29\t5/2\t")));
    assert_eq!(run(&["table", "--family", "bogus", "--range", "1..2"]).status.code(), Some(2));
}

#[test]
fn exit_codes_and_stdin() {
    let hurwitz = std::fs::read_to_string(problem("hurwitz.json")).unwrap();
    assert_eq!(json(&run_stdin(&["mass", "--json"], &hurwitz))["mass_dr"], "1/12");
    assert_eq!(run_stdin(&["mass"], "{\"field\": ").status.code(), Some(2));
    let split = r#"{"field":{"kind":"Q"},"algebra":{"a":"1","b":"-1"},"order":{"kind":"maximal"}}"#;
    assert_eq!(run_stdin(&["mass"], split).status.code(), Some(3));
    let char2 = r#"{"field":{"kind":"Fq(t)","q":2},"algebra":{"a":"t","b":"t+1"},"order":{"kind":"maximal"}}"#;
    assert_eq!(run_stdin(&["mass"], char2).status.code(), Some(3));
    assert_eq!(run(&["mass", "-i", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn thread_cap_from_env() {
    let path = problem("b11_maximal.json");
    let ok = Command::new(env!("CARGO_BIN_EXE_massforge"))
        .args(["verify", "-i", path.to_str().unwrap()])
        .env("MASSFORGE_THREADS", "2")
        .output()
        .unwrap();
    assert!(ok.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_massforge"))
        .args(["mass", "-i", path.to_str().unwrap()])
        .env("MASSFORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn maximalize_grows_lipschitz() {
    let v = json(&run(&["maximalize", "-i", problem("lipschitz.json").to_str().unwrap()]));
    assert_eq!(v["reduced_disc"], "2");
    assert_eq!(v["was_maximal"], false);
}
