use std::process::{Command, Output};

use nilcover::cli::{Envelope, EnumerateEntry, InduceReport, OrbitReport};
use nilcover::cover::CoverReport;
use nilcover::oracle::ConsistencyReport;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn nilcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn envelope<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(args: &[&str]) -> Envelope<T> {
    let mut args = args.to_vec();
    args.push("--json");
    let out = nilcover(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let env: Envelope<T> = serde_json::from_str(&text).expect("envelope parses");
    assert_eq!(env.schema_version, "1");
    let again: Envelope<T> = serde_json::from_str(&serde_json::to_string(&env).unwrap()).unwrap();
    assert_eq!(again, env);
    env
}

#[test]
fn orbit_sp30() {
    let out = nilcover(&["orbit", "sp30", "10,8,4,3,3,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(Z/2)^2"), "{text}");
    assert!(text.contains("1 (d=1), 2 (d=2), 5 (d=1)"), "{text}");
    assert!(text.contains("gl1 × gl2^2 × gl5 × sp10"), "{text}");

    let env: Envelope<OrbitReport> = envelope(&["orbit", "sp30", "10,8,4,3,3,1,1"]);
    assert_eq!(env.command, "orbit");
    assert_eq!(env.result.pi1_exponent, 2);
    let rows: Vec<usize> = env.result.singular_set.iter().map(|sd| sd.m).collect();
    assert_eq!(rows, vec![1, 2, 5]);
}

#[test]
fn orbit_invalid_is_domain_error() {
    let out = nilcover(&["orbit", "so15", "9,4,2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("even part 4 occurs once"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &["orbit", "sp30", "10,,8"][..],
        &["orbit", "sp7", "7"],
        &["orbit", "gl3", "3"],
        &["orbit", "so2", "1,1"],
        &["induce", "sp4", "", "--blocks", "a"],
        &["check", "e8"],
        &["orbit"],
    ] {
        assert_eq!(nilcover(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn orbit_sp4_namikawa() {
    let env: Envelope<OrbitReport> = envelope(&["orbit", "sp4", "2,2"]);
    assert_eq!(env.result.namikawa.dim_total, 1);
    assert_eq!(env.result.h2_universal_cover, 1);
    assert!(env.result.h2_universal_cover_derived);
}

#[test]
fn degenerations_tables() {
    let env: Envelope<CoverReport> = envelope(&["degenerations", "sp30", "10,8,4,3,3,1,1"]);
    let row = env.result.leaves.iter().find(|l| l.child.to_string() == "(10,6,6,3,3,1,1)").unwrap();
    assert_eq!((row.case.to_string().as_str(), row.k), ("b", 2));
    assert_eq!(row.closure.to_string(), "A3");
    assert_eq!(row.cover.to_string(), "A1");
    assert!(!row.etale);

    let env: Envelope<CoverReport> = envelope(&["degenerations", "sp22", "4,4,4,2,2,2,2,2"]);
    let row = env.result.leaves.iter().find(|l| l.child.to_string() == "(4,4,3,3,2,2,2,2)").unwrap();
    assert_eq!(row.cover.to_string(), "A1");
    assert!(row.etale);

    let out = nilcover(&["degenerations", "so7", "1,1,1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let env: Envelope<CoverReport> = envelope(&["degenerations", "so7", "1,1,1,1,1,1,1"]);
    assert!(env.result.leaves.is_empty());
}

#[test]
fn induce_examples() {
    let env: Envelope<InduceReport> = envelope(&["induce", "so15", "7,2,2", "--blocks", "2"]);
    assert_eq!(env.result.result.to_string(), "(9,3,3)");
    assert!(!env.result.birational);
    assert_eq!(env.result.steps[0].lifted.to_string(), "(9,4,2)");
    assert!(!env.result.steps[0].lifted_valid);

    let env: Envelope<InduceReport> = envelope(&["induce", "sp4", "", "--blocks", "2"]);
    assert_eq!(env.result.result.to_string(), "(2,2)");
    assert!(env.result.birational);

    let env: Envelope<InduceReport> = envelope(&["induce", "sp4", "0", "--blocks", "2"]);
    assert_eq!(env.result.result.to_string(), "(2,2)");

    let env: Envelope<InduceReport> = envelope(&["induce", "sp6", "2,2", "--blocks", "1"]);
    assert_eq!(env.result.result.to_string(), "(4,2)");
    assert!(env.result.birational);

    let text = stdout(&nilcover(&["induce", "so15", "7,2,2", "--blocks", "2"]));
    assert!(text.contains("(9,4,2) invalid"), "{text}");
}

#[test]
fn induce_residual_errors() {
    assert_eq!(nilcover(&["induce", "sp4", "2,2", "--blocks", "2"]).status.code(), Some(3));
    assert_eq!(nilcover(&["induce", "sp4", "", "--blocks", "3"]).status.code(), Some(3));
}

#[test]
fn enumerate_sp4() {
    let env: Envelope<Vec<EnumerateEntry>> = envelope(&["enumerate", "sp4"]);
    assert_eq!(env.result.len(), 4);
    let text = stdout(&nilcover(&["enumerate", "sp4", "--diagram"]));
    assert!(text.contains("####\n"));
}

#[test]
fn check_passes() {
    let out = nilcover(&["check", "so", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let env: Envelope<ConsistencyReport> = envelope(&["check", "sp", "--bound", "8"]);
    assert!(env.result.failures.is_empty());
    assert!(env.result.checks_run > 0);
}

#[test]
fn so4_warns_on_stderr() {
    let out = nilcover(&["orbit", "so4", "3,1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning: so4 is not simple"));
    let env: Envelope<OrbitReport> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(env.warnings.len(), 1);
}

#[test]
fn diagram_only_on_request() {
    let plain = stdout(&nilcover(&["orbit", "sp4", "2,2"]));
    assert!(!plain.contains("##"));
    let drawn = stdout(&nilcover(&["orbit", "sp4", "2,2", "--diagram"]));
    assert!(drawn.contains("##\n##"));
}
