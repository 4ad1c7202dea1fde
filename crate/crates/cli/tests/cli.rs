use std::fs;
use std::process::{Command, Output};

use proptest::prelude::*;
use rumin_cli::eval_str;
use rumin_core::random::{trial_rng, FormSampler};
use rumin_core::rumin::{gamma, m3, pi};
use rumin_core::{ContactModel, Form, VerifyReport};

fn rumin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rumin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_examples() {
    for (expr, expected) in [
        ("pi(dx1^dy1)", "0"),
        ("gamma(dx1^dy1)", "theta"),
        ("m3(dx1; dy1; dx1)", "2 theta^dx1"),
        ("dz", "theta + (y1) dx1"),
    ] {
        let o = rumin(&["eval", expr]);
        assert!(o.status.success(), "{expr}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), expected, "{expr}");
    }
}

#[test]
fn eval_errors_exit_one_with_position() {
    let o = rumin(&["eval", "theta + dx1^dy1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1, column 7"), "{}", stderr(&o));
    let o = rumin(&["eval", "--n", "1", "dx2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown name 'dx2' for n = 1"));
}

#[test]
fn verify_dsa_lemma_on_h5() {
    let o = rumin(&["verify", "dsa-lemma", "--n", "2", "--trials", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS dsa-lemma"));
}

#[test]
fn verify_stasheff_json_has_no_failures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stasheff.json");
    let o = rumin(&[
        "verify",
        "--suite",
        "stasheff",
        "--n",
        "1",
        "--trials",
        "50",
        "--seed",
        "1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["suite", "n", "trials", "seed", "maxPolyDegree", "passed", "failures", "version"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    let report: VerifyReport = serde_json::from_str(&text).unwrap();
    assert!(report.passed);
    assert!(report.failures.is_empty());
    assert_eq!((report.suite.as_str(), report.trials, report.seed), ("stasheff", 50, 1));
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = rumin(&[
            "verify",
            "retract",
            "--n",
            "2",
            "--trials",
            "5",
            "--seed",
            "3",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("wallTimeMs");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn verify_ce_cohomology_reports_betti_numbers() {
    let o = rumin(&["verify", "ce-cohomology"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Betti numbers CE: [1, 2, 2, 1]"), "{out}");
    assert!(out.contains("Betti numbers Rumin: [1, 2, 2, 1]"));
    assert!(out.contains("ring isomorphism [f1]: true"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rumin(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(rumin(&["verify"]).status.code(), Some(2));
    assert_eq!(rumin(&["verify", "dsq", "--n", "0"]).status.code(), Some(2));
    assert_eq!(rumin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn basis_and_model() {
    let o = rumin(&["basis", "--n", "1", "--degree", "2"]);
    assert_eq!(stdout(&o), "theta^dx1\ntheta^dy1\ndx1^dy1\n");
    let o = rumin(&["basis", "--n", "2", "--degree", "1", "--vertical"]);
    assert_eq!(stdout(&o), "theta\n");
    let o = rumin(&["model", "--n", "1"]);
    let out = stdout(&o);
    assert!(out.contains("theta = dz - y1 dx1"));
    assert!(out.contains("dtheta = dx1^dy1"));
}

#[test]
fn cohomology_of_emitted_algebra() {
    let o = rumin(&["cohomology", "--emit"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ce.txt");
    fs::write(&path, stdout(&o)).unwrap();
    let o = rumin(&["cohomology", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("Betti numbers (1, 2, 2, 1)"));

    fs::write(&path, "basis a 1\nbasis b 2\nd a c 1\n").unwrap();
    let o = rumin(&["cohomology", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

/// Reparsing is exact up to the degree of a zero form, which `0` cannot carry.
fn same_form(a: &Form, b: &Form) -> bool {
    if a.is_zero() || b.is_zero() {
        a.is_zero() && b.is_zero()
    } else {
        a == b
    }
}

fn round_trip(text: &str, model: &ContactModel) {
    let form = eval_str(text, model).unwrap();
    let printed = form.to_string();
    let again = eval_str(&printed, model).unwrap_or_else(|e| panic!("{printed}: {e}"));
    assert!(same_form(&again, &form), "{printed}");
    assert_eq!(again.to_string(), printed);
}

#[test]
fn operator_outputs_reparse() {
    let model = ContactModel::new(1).unwrap();
    for text in ["m3(dx1; dy1; dx1)", "gamma((x1**2 - 3/4*y1) dx1^dy1)", "d(x1*y1*z)", "-dz"] {
        round_trip(text, &model);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_forms_reparse(seed in any::<u64>(), n in 1usize..=2, k in 0usize..=5, d in 0u32..=2) {
        let model = ContactModel::new(n).unwrap();
        let k = k.min(model.dim());
        let mut rng = trial_rng(seed, 0, 0);
        let sampler = FormSampler::new(d);
        let forms = [
            sampler.form(&mut rng, &model, k),
            gamma(&sampler.form(&mut rng, &model, k)),
            pi(&sampler.form(&mut rng, &model, k)).into_form(),
        ];
        for f in forms {
            let printed = f.to_string();
            let back = eval_str(&printed, &model).unwrap();
            prop_assert!(same_form(&back, &f), "{}", printed);
        }
    }

    #[test]
    fn printed_m3_outputs_reparse(seed in any::<u64>()) {
        let model = ContactModel::new(1).unwrap();
        let mut rng = trial_rng(seed, 1, 0);
        let sampler = FormSampler::new(1);
        let xs: Vec<_> = (0..3).map(|_| sampler.rumin_element(&mut rng, &model, 1)).collect();
        let out = m3(&xs[0], &xs[1], &xs[2]).unwrap().into_form();
        prop_assert!(same_form(&eval_str(&out.to_string(), &model).unwrap(), &out));
    }
}
