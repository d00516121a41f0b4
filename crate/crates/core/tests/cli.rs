use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fano4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fano4"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn tables_check_passes() {
    let out = fano4(&["tables", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("all 187 cells match"));
}

#[test]
fn tables_tsv_row() {
    let out = fano4(&["tables", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "5\t307\t166\t11\t0\t66\t8"));
    assert!(!text.contains('"'));
}

#[test]
fn corrupted_expected_cell_fails() {
    let json = stdout(&fano4(&["tables", "--format", "json"]));
    let mut tables: serde_json::Value = serde_json::from_str(&json).unwrap();
    tables[0]["rows"][2]["cells"][1] = serde_json::json!(386);
    let path = scratch("corrupted.json", &tables.to_string());
    let out = fano4(&["tables", "--expected", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("table 1 row r=2 column K4: got 385, want 386"));

    let path = scratch("intact.json", &json);
    let out = fano4(&["tables", "--expected", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn family_b_row_four() {
    let out = fano4(&["family", "B", "--r", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rec = &v["record"];
    let got: Vec<i64> = ["rho", "K4", "K2c2", "h22", "h13", "b3", "chi_mK", "chiT"]
        .iter()
        .map(|k| rec[k].as_i64().unwrap())
        .collect();
    assert_eq!(got, [7, 66, 84, 36, 1, 0, 19, -14]);
}

#[test]
fn open_question_exits_2() {
    let out = fano4(&["family", "A", "--r", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("open question"));
    assert_eq!(fano4(&["family", "E", "--r", "6"]).status.code(), Some(2));
}

#[test]
fn certify_a4() {
    let out = fano4(&["certify", "A", "--r", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["identity_ok", "coefficients_nonneg", "K4_positive"] {
        assert_eq!(v[key], serde_json::json!(true), "{key}");
    }
    assert_eq!(v["K4"], serde_json::json!(121));
}

#[test]
fn audit_and_bounds() {
    let out = fano4(&["audit", "--points", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("line through 3 points\t1\t3\t-4\tViolation"));
    let out = fano4(&["bounds", "--min-rho", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("P^3\t64\t1\t7\trho_X <= 9, r = rho_X - 2"));
    assert_eq!(fano4(&["audit", "--points", "9"]).status.code(), Some(3));
}

#[test]
fn tower_reaches_table_1_row_4() {
    let mut text = String::from("start: p4\n");
    for _ in 0..5 {
        text.push_str("\nop: blowup_point\n");
    }
    text.push_str("\nop: flip_lines\nn: 10\n");
    let path = scratch("w4.tower", &text);
    let out = fano4(&["tower", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for line in [
        "rho: 6",
        "K4: 230",
        "K2c2: 140",
        "chi_mK: 51",
        "h22: 16",
        "chiT: 4",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line} in\n{text}");
    }

    let out = fano4(&[
        "tower",
        path.to_str().unwrap(),
        "--trace",
        "--format",
        "tsv",
    ]);
    assert_eq!(stdout(&out).lines().count(), 8);
}

#[test]
fn tower_empty_steps() {
    let path = scratch("p4.tower", "# nothing to do\nstart: p4\n");
    let out = fano4(&["tower", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["K4"], serde_json::json!(625));
    assert_eq!(v["chi_mK"], serde_json::json!(126));
    assert_eq!(v["chiT"], serde_json::json!(24));
}

#[test]
fn tower_parity_error_names_step() {
    let text = "start: p4\n\nop: blowup_point\n\nop: blowup_surface\nKS2: 0\nKS_dot_KW: 1\nKW2: 2\nc2N: 0\nchiOS: 1\nh11S: 1\nh20S: 0\nb1S: 0\n";
    let path = scratch("odd.tower", text);
    let out = fano4(&["tower", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("step 2 (blowup_surface)"), "{err}");
    assert!(err.contains("odd"), "{err}");
}

#[test]
fn tower_unknown_key() {
    let path = scratch("bad.tower", "start: p4\nop: flip_lines\nn: 1\nm: 2\n");
    let out = fano4(&["tower", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("line 4, column 1: unknown key `m`"));
}

#[test]
fn bad_arguments_exit_3() {
    assert_eq!(fano4(&["tables", "--format", "csv"]).status.code(), Some(3));
    assert_eq!(
        fano4(&["tower", "/nonexistent/file"]).status.code(),
        Some(3)
    );
    assert_eq!(fano4(&["--version"]).status.code(), Some(0));
}
