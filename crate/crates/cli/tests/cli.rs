use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = Command::new(env!("CARGO_BIN_EXE_ternforms")).args(args).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), json, out)
}

#[test]
fn fermat_quartic_discriminant() {
    let (code, v, _) = run(&["disc", "--form", &fixture("fermat4.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["raw"], (1u64 << 54).to_string());
    assert_eq!(v["constant"], "16384");
    assert_eq!(v["normalized"], (1u64 << 40).to_string());
    assert_eq!(v["degree_check"], 27);
}

#[test]
fn conic_discriminant_is_determinant_scale() {
    // x^2+y^2+z^2 has Gram matrix I, and the raw resultant of 2x, 2y, 2z is 8
    let (code, v, _) = run(&["disc", "--form", &fixture("fermat2.txt"), "--raw"]);
    assert_eq!(code, 0);
    assert_eq!(v["raw"], "8");
}

#[test]
fn good_reduction_outside_two() {
    let (code, v, _) = run(&["good-reduction", "--form", &fixture("fermat4.txt"), "--s-set", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["bad_primes"], serde_json::json!([]));
    assert_eq!(v["cofactor"], "1");
    let (_, v, _) = run(&["good-reduction", "--form", &fixture("fermat4.txt")]);
    assert_eq!(v["bad_primes"], serde_json::json!([2]));
}

#[test]
fn singular_cubic_has_zero_discriminant() {
    let (code, v, _) = run(&["disc", "--form", &fixture("xyz.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["normalized"], "0");
}

#[test]
fn fermat_cubic_invariants() {
    let (code, v, _) = run(&["cubic-invariants", "--form", &fixture("fermat3.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["I"], "0");
    assert_eq!(v["J"], "-729/4");
    assert_eq!(v["kappa_checked"], true);
}

#[test]
fn tuple_equivalence_witness() {
    let args = ["tuple-equiv", "--t1", "1,1", "--t2", "16,64", "--weights", "4,6"];
    let (code, v, _) = run(&[&args[..], &["--s-set", "2,3"]].concat());
    assert_eq!(code, 0);
    assert_eq!(v["witness"]["alpha_d"], serde_json::json!(["4"]));
    assert_eq!(v["witness"]["s_unit"], true);
    let (_, v, _) = run(&[&args[..], &["--s-set", "3"]].concat());
    assert_eq!(v["witness"]["s_unit"], false);
}

#[test]
fn sigma_squared_is_the_zero_class() {
    let (code, v, _) = run(&["canonicalize", "--form", &fixture("sigma2.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["is_zero"], true);
}

#[test]
fn diagonal_class_covariant() {
    let (code, v, _) = run(&["covariants", "--form", &fixture("diag22.txt"), "--which", "x"]);
    assert_eq!(code, 0);
    assert_eq!(v["I_x"]["text"], "3*x1^2*x2^2*x3^2");
    assert!(v.get("I_z").is_none());
}

#[test]
fn act_dispatches_on_variable_count() {
    let (code, v, _) = run(&["act", "--gamma", &fixture("gamma_shear.json"), "--form", &fixture("fermat2.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["space"], "Vn");
    let (code, v, _) = run(&["act", "--gamma", &fixture("gamma_diag.json"), "--form", &fixture("diag22.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["space"], "V22");
}

#[test]
fn branch_check_resolves_pairing() {
    let (code, v, _) = run(&["branch-check", "--form", &fixture("cyc22.txt"), "--mod", "11"]);
    assert_eq!(code, 0);
    assert_eq!(v["points"], 133);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
    assert_eq!(v["x_branch_covariant"], "I_x");
    assert_eq!(v["z_branch_covariant"], "I_z");
}

#[test]
fn lattice_enumeration_matches_fixture_box() {
    let (code, v, _) = run(&["lattice-enum", "--box", "20"]);
    assert_eq!(code, 0);
    let mats: Vec<&Value> = v["candidates"].as_array().unwrap().iter().map(|c| &c["a"]).collect();
    assert!(mats.contains(&&serde_json::json!([["1", "0"], ["0", "1"]])));
    assert_eq!(v["box"]["agrees"], true);
    let fixture: Value = serde_json::from_str(&std::fs::read_to_string(fixture("lattice_box.json")).unwrap()).unwrap();
    let boxed: Vec<&Value> = mats
        .into_iter()
        .filter(|m| {
            m.as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| {
                let s = x.as_str().unwrap();
                let (n, d) = s.split_once('/').unwrap_or((s, "1"));
                n.parse::<i64>().unwrap().abs() <= 20 * d.parse::<i64>().unwrap()
            })
        })
        .collect();
    let expected: Vec<&Value> = fixture["matrices"].as_array().unwrap().iter().collect();
    assert_eq!(boxed, expected);
}

#[test]
fn config_constants_are_used() {
    let (code, v, _) =
        run(&["--config", &fixture("normalization.json"), "disc", "--form", &fixture("fermat3.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["constant"], "27");
}

#[test]
fn malformed_polynomial_exits_2() {
    let (code, v, out) = run(&["disc", "--form", &fixture("malformed.txt")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_file_and_bad_flags_exit_2() {
    let (code, v, _) = run(&["disc", "--form", "/nonexistent/form.txt"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "io");
    let (code, v, _) = run(&["disc", "--frm", "x"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
    let (code, v, _) = run(&["disc", "--form", &fixture("fermat4.txt"), "--mod", "9"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "not_prime");
}

#[test]
fn mathematical_failures_exit_1() {
    let (code, v, _) = run(&["disc", "--form", &fixture("fermat3.txt"), "--mod", "3"]);
    assert_eq!(code, 1);
    assert!(v["error"]["kind"].is_string());
    let (code, v, _) = run(&["branch-check", "--form", &fixture("sigma2.txt"), "--mod", "11"]);
    assert_eq!(code, 1);
    assert!(v["error"]["kind"].is_string());
}

#[test]
fn help_exits_0() {
    let (code, _, out) = run(&["verify", "--help"]);
    assert_eq!(code, 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("--suite"));
}

#[test]
fn unknown_suite_exits_2() {
    let (code, v, _) = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "unknown_suite");
}

#[test]
fn disc_covariance_suite_passes() {
    let (code, v, _) =
        run(&["verify", "--suite", "disc-covariance", "--seed", "1", "--trials", "10", "--domain", "GF(10007)"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], 10);
    assert_eq!(v["all_pass"], true);
}

#[test]
fn branch_locus_suite_reports_pairing() {
    let (code, v, _) =
        run(&["verify", "--suite", "branch-locus", "--seed", "1", "--trials", "3", "--primes", "11"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], 3);
    assert_eq!(v["summary"]["consistent"], true);
    assert_eq!(v["summary"]["pairing"]["x_projection"], "I_x");
}

#[test]
fn remaining_suites_pass() {
    for suite in ["cubic-kappa", "v22-welldef", "v22-covariance", "lattice-enum", "euler", "action-laws"] {
        let (code, v, _) = run(&["verify", "--suite", suite, "--seed", "3", "--trials", "5"]);
        assert_eq!(code, 0, "{suite}: {v}");
        assert_eq!(v["failed"], 0, "{suite}");
    }
}

#[test]
fn suite_domain_is_validated() {
    let (code, v, _) = run(&["verify", "--suite", "euler", "--domain", "GF(12)"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "invalid_argument");
    let (code, _, _) = run(&["verify", "--suite", "cubic-kappa", "--domain", "GF(7)"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let base = ["verify", "--suite", "v22-covariance", "--seed", "7", "--trials", "12"];
    let (_, _, one) = run(&[&base[..], &["--jobs", "1"]].concat());
    let (_, _, four) = run(&[&base[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("ternforms-report-{}.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let (code, v, _) = run(&["verify", "--suite", "euler", "--seed", "2", "--trials", "4", "--output", &p]);
    assert_eq!(code, 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, v);
}
