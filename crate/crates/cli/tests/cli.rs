use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/x1_11_p5")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn iwk(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_iwk"))
        .args(args)
        .env_remove("IWK_P")
        .env_remove("IWK_PRECISION")
        .env_remove("IWK_TRUNCATION")
        .env_remove("IWK_BACKEND")
        .env_remove("IWK_FORMAT")
        .env_remove("IWK_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn iwk");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn ore_test_on_p_peels_one_factor() {
    let out = iwk(&["ore-test", &fixture("ore_f_equals_p.json")], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"in_S":false,"in_S_star":true,"peeled":1}"#
    );
}

#[test]
fn chi_arith_over_q_mu5() {
    let out = iwk(&["chi-arith", &fixture("arith_q_mu5.json")], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"chi_exponent":4}"#);
}

#[test]
fn artin_solve_and_check() {
    for (file, expected) in [("artin_rho1.json", 3), ("artin_rho2.json", 1)] {
        let out = iwk(&["artin-solve", &fixture(file)], None);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout_json(&out), json!({ "chi_exponent": expected }));

        let mut d: Value = serde_json::from_str(&std::fs::read_to_string(fixture(file)).unwrap()).unwrap();
        d["irreducibles"][1]["chi_exponent"] = json!(expected);
        let ok = iwk(&["artin-check", "-"], Some(&d.to_string()));
        assert_eq!(ok.status.code(), Some(0));
        assert_eq!(stdout_json(&ok), json!({ "holds": true }));

        d["irreducibles"][1]["chi_exponent"] = json!(expected + 1);
        let bad = iwk(&["artin-check", "-"], Some(&d.to_string()));
        assert_eq!(bad.status.code(), Some(1));
        assert_eq!(stdout_json(&bad), json!({ "holds": false }));
    }
}

#[test]
fn artin_solve_without_solution_exits_one() {
    // residual 16 - 2 = 14 is not divisible by dim 5; order 4 * 1 + 5^2 = 29
    let d = json!({
        "subgroup_chi_exponent": 16,
        "base_field_degree": 1,
        "group_order": 29,
        "irreducibles": [
            {"dim": 1, "count": 4, "chi_exponent": 2},
            {"dim": 5, "chi_exponent": null}
        ]
    });
    let out = iwk(&["artin-solve", "-"], Some(&d.to_string()));
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["error"], json!("no-consistent-solution"));
}

#[test]
fn interpolation_and_main_conjecture() {
    let out = iwk(&["interpolate", &fixture("interp_rho1.json")], None);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["total"], json!(3));
    assert_eq!(v["chi_prediction"], json!(3));

    let pass = iwk(&["check-main-conjecture", &fixture("interp_rho2.json"), "--chi-claim", "1"], None);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(stdout_json(&pass)["pass"], json!(true));

    let wrong = iwk(&["check-main-conjecture", &fixture("interp_rho2.json"), "--chi-claim", "2"], None);
    assert_eq!(wrong.status.code(), Some(1));

    let infinite = iwk(&["check-main-conjecture", &fixture("interp_rho2.json"), "--chi-claim", "not-finite"], None);
    assert_eq!(infinite.status.code(), Some(1));
    assert_eq!(stdout_json(&infinite)["finiteness_consistent"], json!(false));
}

#[test]
fn paper_suite_passes() {
    let out = iwk(&["paper-suite", "--fixtures", &fixtures().to_string_lossy()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["passed"], v["total"]);
}

#[test]
fn twist_scan_and_euler_char_of_phi5() {
    let scan = iwk(&["twist-scan", &fixture("twist_scan_phi5.json")], None);
    assert_eq!(scan.status.code(), Some(0));
    assert_eq!(stdout_json(&scan)["bad_orders"], json!([5]));

    // Phi_5(1 + T) has constant term 5
    let chi = iwk(&["euler-char", &fixture("twist_scan_phi5.json")], None);
    assert_eq!(stdout_json(&chi)["euler_characteristic"], json!({ "kind": "finite", "exponent": 1 }));

    let ak = iwk(&["akashi", &fixture("twist_scan_phi5.json")], None);
    let form = &stdout_json(&ak)["canonical_form"];
    assert_eq!(form["mu"], json!(0));
    assert_eq!(form["lambda_num"], json!(4));
}

#[test]
fn weierstrass_factors_multiply_back() {
    let n = 6u32;
    let d = 8usize;
    let f = [10i128, 5, 3, 7, 1];
    let input = json!({ "coeffs": f });
    let out = iwk(
        &["weierstrass", "-", "--precision", &n.to_string(), "--truncation", &d.to_string()],
        Some(&input.to_string()),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["mu"], json!(0));
    assert_eq!(v["lambda"], json!(2));
    let ints = |k: &str| -> Vec<i128> { v[k].as_array().unwrap().iter().map(|c| c.as_i64().unwrap() as i128).collect() };
    let (dist, unit) = (ints("distinguished"), ints("unit"));
    assert_eq!(dist.len(), 3);
    assert_eq!(dist[2], 1);
    assert!(dist[..2].iter().all(|c| c % 5 == 0));
    // schoolbook product modulo (5^N, T^{D+1})
    let m = 5i128.pow(n);
    let mut prod = vec![0i128; d + 1];
    for (i, a) in unit.iter().enumerate() {
        for (j, b) in dist.iter().enumerate() {
            if i + j <= d {
                prod[i + j] = (prod[i + j] + a * b).rem_euclid(m);
            }
        }
    }
    for (k, c) in prod.iter().enumerate() {
        let want = f.get(k).copied().unwrap_or(0).rem_euclid(m);
        assert_eq!(*c, want, "coefficient of T^{k}");
    }
}

#[test]
fn ore_closure_is_deterministic() {
    let a = iwk(&["ore-closure-prop", "--samples", "24", "--seed", "3"], None);
    let b = iwk(&["ore-closure-prop", "--samples", "24", "--seed", "3"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["pass"], json!(true));
}

#[test]
fn input_errors_exit_two_and_name_the_field() {
    let out = iwk(&["chi-arith", &fixture("ore_f_equals_p.json")], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("`p`"));

    let bad_group = json!({
        "group": {"p": 5, "elements": ["1", "a"], "table": [["1", "a"], ["a", "b"]]},
        "element": {"coeffs": {"1": {"coeffs": [5]}}}
    });
    let out = iwk(&["ore-test", "-"], Some(&bad_group.to_string()));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("group") && err.contains("closure"), "{err}");

    let out = iwk(&["ore-test", &fixture("ore_f_equals_p.json"), "--backend", "padic"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--backend"));

    let out = iwk(&["check-main-conjecture", &fixture("interp_rho1.json"), "--chi-claim", "many"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn environment_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_iwk"))
        .args(["chi-arith", &fixture("arith_q_mu5.json")])
        .env("IWK_FORMAT", "text")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "chi_exponent: 4");

    let out = Command::new(env!("CARGO_BIN_EXE_iwk"))
        .args(["ore-test", &fixture("ore_f_equals_p.json")])
        .env("IWK_P", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn three_way_check_on_z2() {
    // F = (4 + T) + s with s^2 = 1: rho(F)(0) is 4 + 1 = 5 for the trivial
    // character and 4 - 1 = 3 for the sign
    let group = json!({"p": 5, "elements": ["1", "s"], "table": [["1", "s"], ["s", "1"]]});
    let f = json!({"coeffs": {"1": {"coeffs": [4, 1]}, "s": {"coeffs": [1]}}});
    for (sign, exponent) in [(1, 1), (-1, 0)] {
        let input = json!({
            "group": group,
            "presentation": [[f]],
            "rep": {"dim": 1, "matrices": {"1": [[1]], "s": [[sign]]}}
        });
        let out = iwk(&["verify-theorem-3-6", "-"], Some(&input.to_string()));
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v = stdout_json(&out);
        assert_eq!(v["xi_exponent"], json!(exponent));
        assert_eq!(v["snf_exponent"], json!(exponent));
        assert_eq!(v["akashi"], json!({"kind": "finite", "exponent": exponent}));
        assert_eq!(v["agree"], json!(true));
    }

    // a square presentation has no higher homology
    let input = json!({
        "group": group,
        "presentation": [[f]],
        "rep": {"dim": 1, "matrices": {"1": [[1]], "s": [[1]]}},
        "higher": [2]
    });
    let out = iwk(&["verify-theorem-3-6", "-"], Some(&input.to_string()));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["higher_consistent"], json!(false));
}
