use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cmperiods"));
    c.env_remove("CMP_FIXTURES");
    c
}

fn fixtures() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Copy of the fixtures with `file` rewritten by `edit`.
fn edited(file: &str, edit: impl FnOnce(&mut Value)) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for e in fs::read_dir(fixtures()).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    let path = dir.path().join(file);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    edit(&mut v);
    fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    dir
}

fn json_report(args: &[&str], out: &Path) -> Value {
    let mut a = args.to_vec();
    let out_s = out.to_str().unwrap();
    a.extend(["--json-out", out_s, "--quiet"]);
    let o = run(&a);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap()
}

#[test]
fn theorem2_suite_passes() {
    let o = run(&["verify", "--suite", "theorem2", "--digits", "40", "--quiet"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(
        stdout(&o).starts_with("suite theorem2: 21 passed, 0 failed, 0 skipped"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn padic_suite_skips_two_rows() {
    let o = run(&["verify", "--suite", "padic", "--p", "7", "--prec", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("suite padic: 8 passed, 0 failed, 2 skipped"),
        "{out}"
    );
    for d in [-52, -132] {
        let line = out
            .lines()
            .find(|l| l.contains(&format!("padic/remark4/d={d} ")))
            .unwrap();
        assert!(
            line.starts_with("SKIPPED") && line.contains("ConvergenceError"),
            "{line}"
        );
    }
}

#[test]
fn other_prime_reports_valuation_mismatch() {
    // 11 | M for d = −148, −232 but A₂ has 11-adic valuation −1, so the 7-adic pattern does not carry over
    let o = run(&["verify", "--suite", "padic", "--p", "11", "--prec", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let failed: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failed.len(), 2, "{out}");
    assert!(failed[0].contains("d=-148") && failed[1].contains("d=-232"));
    assert!(!out.contains("expected a checkable row"));
}

#[test]
fn invalid_flags_exit_2() {
    for args in [
        &["verify", "--digits", "10"][..],
        &["verify", "--prec", "2"],
        &["verify", "--prec", "9"],
        &["verify", "--jobs", "0"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("configuration error"), "{}", stderr(&o));
    }
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn schema_violation_names_file() {
    let dir = edited("theorem2.json", |v| {
        v["rows"][0].as_object_mut().unwrap().remove("scale");
    });
    let o = run(&[
        "verify",
        "--suite",
        "theorem2",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("theorem2.json") && err.contains("scale"),
        "{err}"
    );
}

#[test]
fn bad_value_names_field() {
    let dir = edited("theorem2.json", |v| {
        v["rows"][0]["hyp1_pow"]["m"] = 12.into()
    });
    let o = run(&[
        "verify",
        "--suite",
        "theorem2",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("theorem2.json") && err.contains("rows[0].hyp1_pow"),
        "{err}"
    );
}

#[test]
fn env_var_selects_fixtures() {
    let dir = edited("constants.json", |v| v["a_minus4"] = "49".into());
    let o = bin()
        .args(["verify", "--suite", "constants"])
        .env("CMP_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("FAIL") && l.contains("constants/C1-vs-A-4")));
    let flag = bin()
        .args([
            "verify",
            "--suite",
            "constants",
            "--quiet",
            "--fixtures",
            fixtures().to_str().unwrap(),
        ])
        .env("CMP_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0));
}

#[test]
fn perturbed_fixture_fails() {
    let dir = edited("remark1.json", |v| {
        v["instances"][0]["value"]["prefactor"] = "7290000001/130340000000".into()
    });
    let o = run(&[
        "verify",
        "--suite",
        "remark1",
        "--digits",
        "30",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("FAIL") && l.contains("remark1/a")));
}

#[test]
fn json_report_layout_and_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["verify", "--suite", "constants", "--digits", "30"];
    let a = json_report(&args, &tmp.path().join("a.json"));
    let b = json_report(
        &[&args[..], &["--jobs", "1"]].concat(),
        &tmp.path().join("b.json"),
    );

    let text = fs::read_to_string(tmp.path().join("a.json")).unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(
        pos("suite") < pos("digits") && pos("digits") < pos("cases") && pos("cases") < pos("meta")
    );
    let keys: Vec<&str> = a["cases"][0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    let first_case = &text[pos("cases")..];
    let mut last = 0;
    for k in [
        "case_id",
        "status",
        "residual_decimal",
        "digits_checked",
        "details",
    ] {
        let p = first_case.find(&format!("\"{k}\"")).unwrap();
        assert!(p > last, "{k} out of order");
        last = p;
    }
    assert_eq!(keys.len(), 5);
    assert!(a["meta"]["runtime_ms"].is_number());
    assert_eq!(a["meta"]["version"], env!("CARGO_PKG_VERSION"));

    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("meta");
        v
    };
    assert_eq!(strip(a), strip(b));
}

#[test]
fn all_suite_is_union_without_duplicates() {
    let tmp = tempfile::tempdir().unwrap();
    let all = json_report(
        &["verify", "--suite", "all", "--digits", "30"],
        &tmp.path().join("all.json"),
    );
    let ids: Vec<String> = all["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["case_id"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, ids, "ids must be sorted and unique");

    let mut union = Vec::new();
    for s in [
        "theorem2",
        "prop27",
        "constants",
        "remark1",
        "section6",
        "padic",
        "chowla_selberg",
        "qseries",
        "quaternion",
    ] {
        let r = json_report(
            &["verify", "--suite", s, "--digits", "30"],
            &tmp.path().join(format!("{s}.json")),
        );
        union.extend(
            r["cases"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c["case_id"].as_str().unwrap().to_string()),
        );
    }
    union.sort();
    assert_eq!(union, ids);
}

#[test]
fn eval_matches_reference() {
    let o = run(&[
        "eval",
        "2f1",
        "--params",
        "1/24,5/24,3/4",
        "--at",
        "-2401/3375",
        "--digits",
        "30",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    // reference 0.99330671657525485734577931183921336…
    assert!(
        out.starts_with("value 9.93306716575254857345779311839e-1\n"),
        "{out}"
    );
    assert!(out.lines().nth(1).is_some_and(|l| l.starts_with("terms ")));

    let o = run(&[
        "eval",
        "3F2",
        "--params",
        "1/3,1/2,2/3,3/4,5/4",
        "--at",
        "27/196",
        "--digits",
        "30",
    ]);
    assert!(
        stdout(&o).starts_with("value 1.01736242191529250363898756635e0"),
        "{}",
        stdout(&o)
    );

    assert_eq!(
        run(&["eval", "2f1", "--params", "1/2,1/2", "--at", "1/2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn omega_matches_reference() {
    let o = run(&["omega", "-4", "--digits", "30"]);
    assert_eq!(
        stdout(&o),
        "omega 1.47933755959431944615541067886e0\nOmega 5.24411510858423962092967917978e0\n"
    );
    assert_eq!(run(&["omega", "-12"]).status.code(), Some(2));
}

#[test]
fn padic_gamma_matches_reference() {
    assert_eq!(stdout(&run(&["padic-gamma", "1/4"])), "112463 + O(7^6)\n");
    assert_eq!(stdout(&run(&["padic-gamma", "-1/12"])), "27838 + O(7^6)\n");
    assert_eq!(
        stdout(&run(&["padic-gamma", "1/3", "--p", "5"])),
        "12091 + O(5^6)\n"
    );
    assert_eq!(run(&["padic-gamma", "1/7"]).status.code(), Some(2));
}

#[test]
fn expand_eta_prefix() {
    let o = run(&[
        "expand-eta",
        "--level",
        "12",
        "--exponents",
        "1:1,2:3,6:2,3:-1,4:-1,12:-3",
        "--terms",
        "4",
    ]);
    assert_eq!(stdout(&o), "q^-1 - 1 - 4q + 4q^2\n");
    let delta = run(&[
        "expand-eta",
        "--level",
        "1",
        "--exponents",
        "1:24",
        "--terms",
        "3",
    ]);
    assert_eq!(stdout(&delta), "q - 24q^2 + 252q^3\n");
    assert_eq!(
        run(&["expand-eta", "--level", "12", "--exponents", "5:1"])
            .status
            .code(),
        Some(2)
    );
}
