use std::path::PathBuf;
use std::process::{Command, Output};

use premod::data::DataSet;
use premod::CyclotomicNumber;

fn premod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_premod")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data_file(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel).to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("premod-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn validate_bundled_s4() {
    let o = premod(&["validate", &data_file("premodular/rep_s4_type.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("Müger center {0,1,2}"));
}

#[test]
fn validate_perturbed_s_entry() {
    let data = DataSet::bundled().unwrap();
    let mut datum = data.premodular_by_label("Rep(S4)-type").unwrap().datum.clone();
    datum.s[3][3] = &datum.s[3][3] + &CyclotomicNumber::one();
    let p = scratch("perturbed.json", &serde_json::to_string(&datum).unwrap());
    let o = premod(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("balancing:") && l.contains("(3,3)")), "{out}");
}

#[test]
fn validate_malformed_json() {
    let p = scratch("bad.json", "{\"rank\": 5, ");
    let o = premod(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1 column"));
}

#[test]
fn validate_json_format() {
    let o = premod(&["--format", "json", "validate", &data_file("modular/su2_4.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["center"], serde_json::json!([0]));
}

#[test]
fn census_five_classes() {
    let o = premod(&["census", "5", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert_eq!(names, ["Z5", "D8", "Q8", "D14", "Z5:Z4", "Z7:Z3", "S4", "A5"]);
}

#[test]
fn group_info_q8() {
    let o = premod(&["group-info", "Q8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("order 8"));
    assert!(out.contains("classes 5"));
    assert!(out.contains("degrees (1,1,1,1,2)"));
    assert_eq!(premod(&["group-info", "Z9000"]).status.code(), Some(2));
}

#[test]
fn solve_finds_d8_ring() {
    let o = premod(&["solve", "--rank", "5", "--dims", "1,1,2,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Rep(D8)"));
}

#[test]
fn solve_golden_dims() {
    let o = premod(&["solve", "--rank", "3", "--dims", "1,1,sqrt(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1 fusion ring(s)"));
    let none = premod(&["solve", "--rank", "2", "--dims", "1,phi^2"]);
    assert_eq!(none.status.code(), Some(1));
    assert_eq!(premod(&["solve", "--rank", "2", "--dims", "1,wat"]).status.code(), Some(2));
}

#[test]
fn data_dir_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_premod"))
        .args(["census", "3", "6"])
        .env("PREMOD_DATA_DIR", "/nonexistent/premod")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_premod"))
        .args(["census", "3", "6"])
        .env("PREMOD_DATA_DIR", PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data"))
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "Z3\t3\nS3\t6\n");
}

#[test]
fn classify_out_is_byte_stable() {
    let a = std::env::temp_dir().join(format!("premod-cli-{}-a.json", std::process::id()));
    let b = std::env::temp_dir().join(format!("premod-cli-{}-b.json", std::process::id()));
    let o = premod(&["classify", "--out", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(premod(&["classify", "--out", b.to_str().unwrap()]).status.success());
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    assert_eq!(a, std::fs::read(data_file("golden/report.json")).unwrap());
    let text = stdout(&o);
    assert!(text.contains("symmetric (8)") && text.contains("properly premodular (4)") && text.contains("modular (4)"), "{text}");
}
