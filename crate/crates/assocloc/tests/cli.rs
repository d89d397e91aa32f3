//! End-to-end tests of the command-line binary against the committed
//! corpus: exit codes, report text, expectation files, and determinism.

use std::path::{Path, PathBuf};
use std::process::Command;

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_assocloc"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Output {
        code: out.status.code().expect("no signal"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn tmp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("assocloc-cli-{}-{name}", std::process::id()))
}

#[test]
fn localize_natural_module_reports_dim_four() {
    let out = run(&["localize", &corpus("m2f2.alg"), &corpus("m2f2_nat.mod")]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert!(out.stdout.contains("result.dim_AM: 4"));
    assert!(out.stdout.contains("checks.collapse_im_eta: pass"));
}

#[test]
fn broken_algebra_is_an_input_error_with_line_numbers() {
    let out = run(&["validate", &corpus("broken.alg")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("NonAssociative"), "stderr: {}", out.stderr);
    assert!(out.stderr.contains("line 9"), "stderr: {}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn validate_accepts_algebra_and_module() {
    let out = run(&["validate", &corpus("ut2f2.alg"), &corpus("ut2f2_s1.mod")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("checks.module_relations: pass"));
}

#[test]
fn oracle_compare_flags_the_dual_numbers() {
    let out = run(&["oracle-compare", &corpus("f2x2.alg")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("checks.lemma_AM_iso_Am: fail"));
    assert!(out.stdout.contains("dims 1 vs 2"));
    assert!(out.stdout.contains("nilradical dim 1"));
}

#[test]
fn expectation_file_absorbs_the_documented_mismatch() {
    let out = run(&[
        "oracle-compare",
        &corpus("f2x2.alg"),
        "--expect",
        &corpus("f2x2.expect"),
    ]);
    assert_eq!(out.code, 0, "stdout: {}", out.stdout);
    assert!(out.stdout.contains("checks.lemma_AM_iso_Am: fail"));
    assert!(out.stdout.contains("checks.lemma_AM_iso_Am.expected: fail"));
}

#[test]
fn stale_expectation_on_a_passing_check_does_not_flip_exit() {
    let expect = tmp_path("stale.expect");
    std::fs::write(&expect, "*lemma_AM_iso_Am* fail\n").unwrap();
    let out = run(&["oracle-compare", &corpus("f4.alg"), "--expect", expect.to_str().unwrap()]);
    std::fs::remove_file(&expect).ok();
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("checks.lemma_AM_iso_Am: pass"));
    assert!(!out.stdout.contains("expected"));
}

#[test]
fn oracle_compare_rejects_noncommutative_input() {
    let out = run(&["oracle-compare", &corpus("m2f2.alg")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("commutative"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["localize", &corpus("m2f2.alg")]).code, 2);
    assert_eq!(run(&["verify", "/no/such/file.alg"]).code, 2);
    assert_eq!(run(&["verify", &corpus("f4.alg"), "--seed", "x"]).code, 2);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let bad = tmp_path("bad.alg");
    std::fs::write(&bad, "algebra t p=2 dim=1\nunit 1\nmul 0 0 : 7\n").unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).ok();
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"), "stderr: {}", out.stderr);
}

#[test]
fn report_flag_writes_the_same_bytes_as_stdout() {
    let path = tmp_path("report.txt");
    let out = run(&["verify", &corpus("f2xf2.alg"), "--report", path.to_str().unwrap()]);
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, written);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = run(&["verify", &corpus("ut3f2.alg"), "--seed", "5"]);
    let b = run(&["verify", &corpus("ut3f2.alg"), "--seed", "5"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_names_do_not_depend_on_the_seed() {
    let names = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| l.starts_with("checks."))
            .map(|l| l.split(':').next().unwrap().to_string())
            .collect()
    };
    let a = run(&["verify", &corpus("ut3f2.alg"), "--seed", "1"]);
    let b = run(&["verify", &corpus("ut3f2.alg"), "--seed", "424242"]);
    assert_eq!(names(&a.stdout), names(&b.stdout));
}

#[test]
fn seed_env_variable_is_the_fallback() {
    let out = run_with_env(&["simples", &corpus("f4.alg")], &[("ASSOCLOC_SEED", "17")]);
    assert!(out.stdout.contains("inputs.seed: 17"));
    let explicit = run_with_env(
        &["simples", &corpus("f4.alg"), "--seed", "3"],
        &[("ASSOCLOC_SEED", "17")],
    );
    assert!(explicit.stdout.contains("inputs.seed: 3"));
}

#[test]
fn every_corpus_algebra_passes_verify_with_its_expectations() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut checked = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("alg") {
            continue;
        }
        if path.file_name().unwrap() == "broken.alg" {
            continue;
        }
        let expect = path.with_extension("expect");
        let mut args = vec!["verify".to_string(), path.to_str().unwrap().to_string()];
        if expect.exists() {
            args.push("--expect".into());
            args.push(expect.to_str().unwrap().to_string());
        }
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&argv);
        assert_eq!(out.code, 0, "{}:\n{}\n{}", path.display(), out.stdout, out.stderr);
        checked += 1;
    }
    assert!(checked >= 12, "corpus should hold at least 12 algebras, found {checked}");
}
