use std::path::PathBuf;
use std::process::{Command, Output};

use laguerre_dd::base_block::{BlockChoice, Case, CaseSpec, QuadrupleClass};
use laguerre_dd::DivisibleDesign;
use laguerre_dd_cli::commands::{cmd_construct, cmd_table, cmd_verify, summary_line};
use laguerre_dd_cli::{CliError, Outcome, RunConfig};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laguerre-dd")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("laguerre-dd-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn config(p: u32, n: u32, case: Case, i: u32) -> RunConfig {
    RunConfig {
        p,
        n,
        spec: CaseSpec { case, i },
        t: 3,
        out: None,
        verify: false,
    }
}

#[test]
fn construct_prints_parameter_line() {
    let mut out = Vec::new();
    let (d, outcome) = cmd_construct(&config(2, 2, Case::I, 1), &mut out).unwrap();
    assert_eq!(outcome, Outcome::Pass);
    assert_eq!(String::from_utf8(out).unwrap(), "3-(4,3,1) DD with 20 points, 640 blocks\n");
    assert_eq!(summary_line(&d), "3-(4,3,1) DD with 20 points, 640 blocks");

    let mut out = Vec::new();
    let spec = Case::V(QuadrupleClass::Superharmonic, BlockChoice::Long);
    cmd_construct(&config(3, 2, spec, 2), &mut out).unwrap();
    assert!(String::from_utf8(out).unwrap().starts_with("3-(9,6,5) DD"));
}

#[test]
fn rejected_configurations_name_the_condition() {
    let err = cmd_construct(&config(2, 1, Case::II, 1), &mut Vec::new()).unwrap_err();
    assert!(err.to_string().contains("p^i>2"), "{err}");
    assert_eq!(err.exit_code(), 2);

    let o = bin(&["construct", "--p", "2", "--n", "1", "--case", "ii"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p^i>2"));

    let o = bin(&["construct", "--p", "7", "--n", "1", "--case", "v_generic"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p^i>7"));

    let o = bin(&["construct", "--p", "4", "--n", "1", "--case", "i"]);
    assert_eq!(o.status.code(), Some(2));

    let mut cfg = config(2, 2, Case::I, 1);
    cfg.t = 4;
    assert!(matches!(cmd_construct(&cfg, &mut Vec::new()), Err(CliError::Config(_))));
}

#[test]
fn construct_then_verify_round_trip() {
    let path = tmp("q4.json");
    let o = bin(&["construct", "--p", "2", "--n", "2", "--i", "1", "--case", "i", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();

    let o = bin(&["verify", path.to_str().unwrap(), "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("verification at t=3: pass"));
    assert!(text.contains("verification at t=2: pass"));
    assert!(text.contains("point-transitive true, block-transitive true"));

    // byte-stable output
    bin(&["construct", "--p", "2", "--n", "2", "--i", "1", "--case", "i", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read(&path).unwrap(), first);

    // delete a block by hand and the verifier fails
    let mut d = DivisibleDesign::from_document(std::str::from_utf8(&first).unwrap()).unwrap();
    d.blocks.pop();
    let broken = tmp("q4-broken.json");
    std::fs::write(&broken, d.to_document()).unwrap();
    let (_, outcome) = cmd_verify(&broken, false, &mut Vec::new()).unwrap();
    assert_eq!(outcome, Outcome::Fail);
    assert_eq!(bin(&["verify", broken.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_reports_lower_strength_for_case_iii() {
    let path = tmp("q8-iii.json");
    let mut cfg = config(2, 3, Case::III, 3);
    cfg.out = Some(path.clone());
    cmd_construct(&cfg, &mut Vec::new()).unwrap();
    let (reports, outcome) = cmd_verify(&path, false, &mut Vec::new()).unwrap();
    assert_eq!(outcome, Outcome::Pass);
    let lambdas: Vec<_> = reports.iter().map(|r| (r.t, r.measured_lambda())).collect();
    assert_eq!(lambdas, vec![(3, Some(15)), (2, Some(168))]);
}

#[test]
fn verify_rejects_bad_input() {
    let missing = bin(&["verify", "/nonexistent/design.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let junk = tmp("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(bin(&["verify", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn table_rows() {
    let rows = cmd_table(2, 3, false, &mut Vec::new()).unwrap();
    let at8: Vec<_> = rows
        .iter()
        .filter(|r| r.i == 3 && r.holds)
        .map(|r| r.closed_form.unwrap())
        .collect();
    assert_eq!(at8, vec![(9, 1), (8, 6), (7, 15), (6, 20), (5, 15), (4, 6)]);
    assert!(rows.iter().any(|r| r.i == 1));

    let rows = cmd_table(3, 1, false, &mut Vec::new()).unwrap();
    let holding: Vec<Case> = rows.iter().filter(|r| r.holds).map(|r| r.case).collect();
    assert_eq!(holding, vec![Case::I, Case::II]);

    let rows = cmd_table(7, 1, false, &mut Vec::new()).unwrap();
    assert!(rows
        .iter()
        .any(|r| r.holds && matches!(r.case, Case::V(QuadrupleClass::Equianharmonic, _))));
}

#[test]
fn table_check_measures() {
    let rows = cmd_table(2, 2, true, &mut Vec::new()).unwrap();
    let ii = rows.iter().find(|r| r.i == 2 && r.case == Case::II).unwrap();
    assert_eq!(ii.measured, Some((12, Some(2))));
}

#[test]
fn compare_conic_and_selfcheck_via_binary() {
    let o = bin(&["compare-conic", "--p", "5", "--n", "1", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(30, 5, 6, 1)"));
    let o = bin(&["compare-conic", "--p", "2", "--n", "2"]);
    assert!(stdout(&o).contains("not applicable: q even"));
    assert_eq!(o.status.code(), Some(2));

    let a = bin(&["selfcheck", "--max-q", "2"]);
    let b = bin(&["selfcheck", "--max-q", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("[PASS] q=2 parallel classes: 3 classes of 2 points, v = 6"));
}
