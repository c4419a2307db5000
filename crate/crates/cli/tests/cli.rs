use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_combmetric"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

const THREE_POINTS: &str = "0,1,2\n1,0,2\n2,2,0\n";
const ZIGZAG: &str = "time,value_left_limit,value\n0,0,0\n1,2,2\n2,0,0\n3,2,2\n4,0,0\n";

fn parse_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect()
}

#[test]
fn order_builds_the_comb_of_three_points() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.csv", THREE_POINTS);
    let out = stdout(&run(&["order", &m]));
    assert_eq!(out, "comb 0 3\n1 1\n2 2\n");
}

#[test]
fn order_reports_the_violating_triple() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.csv", "0,1,3\n1,0,2\n3,2,0\n");
    let out = run(&["order", &m]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("d(0,2) = 3 > max(d(0,1) = 1, d(1,2) = 2)"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.csv", "0,1\n1,zero\n");
    assert_eq!(run(&["order", &m]).status.code(), Some(1));
    assert_eq!(run(&["order", &path(&dir, "missing.csv")]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--precision", "0", "padic", "3", "val", "9"]).status.code(), Some(1));
}

#[test]
fn order_then_dist_reproduces_the_matrix() {
    let dir = TempDir::new().unwrap();
    // points 0 and 3 are closest, then 1; point 2 is far from all
    let text = "0,2,5,1\n2,0,5,2\n5,5,0,5\n1,2,5,0\n";
    let m = file(&dir, "m.csv", text);
    let comb = path(&dir, "c.txt");
    let order = path(&dir, "order.txt");
    stdout(&run(&["order", &m, "-o", &comb, "--order-out", &order]));
    let mut ranks: Vec<usize> = fs::read_to_string(&order)
        .unwrap()
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    ranks.sort_unstable();
    assert_eq!(ranks, vec![0, 1, 2, 3]);
    let out = stdout(&run(&["dist", &comb, "--order", &order]));
    assert_eq!(parse_rows(&out), parse_rows(text));
}

#[test]
fn dist_reads_faces() {
    let dir = TempDir::new().unwrap();
    let comb = file(&dir, "c.txt", "comb 0 3\n1 1\n2 2\n");
    let out = stdout(&run(&["dist", &comb, "--at", "0.5,1:l,1:r,2.5"]));
    assert_eq!(out, "0,0,1,2\n0,0,1,2\n1,1,0,2\n2,2,2,0\n");
    let on_tooth = run(&["dist", &comb, "--at", "1"]);
    assert_eq!(on_tooth.status.code(), Some(2));
    let outside = run(&["dist", &comb, "--at", "-1"]);
    assert_eq!(outside.status.code(), Some(2));
}

#[test]
fn padic_values() {
    let q = |args: &[&str]| stdout(&run(args)).trim().to_owned();
    assert_eq!(q(&["padic", "3", "dist", "4/9", "1/3"]), "9");
    assert_eq!(q(&["padic", "3", "dist", "-2", "5"]), "1");
    assert_eq!(q(&["padic", "3", "val", "-9/4"]), "2");
    assert_eq!(q(&["padic", "3", "chi-inv", "1", "l"]), "-3");
    assert_eq!(q(&["padic", "3", "chi-inv", "2/3", "r"]), "6");
    assert_eq!(
        q(&["padic", "3", "gap", "2/3"]),
        "left -6\nright 6\ndifference -12"
    );
    assert_eq!(q(&["padic", "2", "expand", "3/4"]), "p:2; 1:11;tail=zero");
    let out = run(&["padic", "4", "dist", "1", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn padic_chi_round_trips() {
    for r in ["-1/2", "7/9", "-6", "5/13"] {
        let image = stdout(&run(&["padic", "3", "chi", r]));
        let mut parts = image.split_whitespace();
        let (t, face) = (parts.next().unwrap(), parts.next().unwrap());
        let back = stdout(&run(&["padic", "3", "chi-inv", t, face]));
        let zero = stdout(&run(&["padic", "3", "dist", back.trim(), r]));
        assert_eq!(zero.trim(), "0", "{r} -> {t} {face} -> {back}");
    }
}

#[test]
fn samples_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let cases: [&[&str]; 3] = [
        &["sample", "kingman", "--n", "20", "--seed", "11"],
        &["sample", "cpp", "--level", "1", "--epsilon", "0.05", "--seed", "11"],
        &[
            "sample", "splitting", "--level", "1", "--birth-rate", "2", "--lifetime-mean", "0.4",
            "--n", "10", "--seed", "11",
        ],
    ];
    for (i, args) in cases.iter().enumerate() {
        let a = path(&dir, &format!("a{i}.json"));
        let b = path(&dir, &format!("b{i}.json"));
        let first = stdout(&run(&[args, &["--json", &a][..]].concat()));
        let second = stdout(&run(&[args, &["--json", &b][..]].concat()));
        assert_eq!(first, second);
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
        assert!(stdout(&run(&["verify", &a])).starts_with("ok"));
        let other = stdout(&run(&[&args[..args.len() - 1], &["12"][..]].concat()));
        assert_ne!(first, other);
    }
}

#[test]
fn sample_requires_a_seed() {
    let out = run(&["sample", "kingman", "--n", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--seed"));
    let bad = run(&["sample", "cpp", "--level", "1", "--epsilon", "2", "--seed", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cpp_json_has_the_sample_keys() {
    let dir = TempDir::new().unwrap();
    let json = path(&dir, "s.json");
    stdout(&run(&[
        "sample", "cpp", "--level", "2", "--epsilon", "0.5", "--seed", "4", "--json", &json,
    ]));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    for key in ["T", "epsilon", "seed", "teeth", "terminal"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["seed"], 4);
    assert!(v["terminal"][1].as_f64().unwrap() > 2.0);
}

#[test]
fn sphere_of_the_zigzag() {
    let dir = TempDir::new().unwrap();
    let h = file(&dir, "h.csv", ZIGZAG);
    let exc = path(&dir, "e.csv");
    let stair = path(&dir, "s.csv");
    let out = stdout(&run(&[
        "sphere", &h, "--level", "1", "--excursions", &exc, "--staircase", &stair,
    ]));
    assert_eq!(out, "comb 0 1\n0.5 2\n");
    assert_eq!(fs::read_to_string(&exc).unwrap(), "g,d,depth\n1.5,2.5,2\n");
    let empty = run(&["sphere", &h, "--level", "3"]);
    assert_eq!(empty.status.code(), Some(2));
    assert!(stderr(&empty).contains("empty"));
}

#[test]
fn plot_empty_comb_is_a_baseline() {
    let dir = TempDir::new().unwrap();
    let comb = file(&dir, "c.txt", "comb 0 1\n");
    let svg = stdout(&run(&["plot", &comb, "--dendrogram"]));
    assert_eq!(svg.matches("<line").count(), 1);
    assert!(svg.contains("class=\"baseline\""));
    assert!(!svg.contains("<path"));
}

#[test]
fn plot_matches_golden_files() {
    let comb = golden("three_teeth.txt");
    let svg = stdout(&run(&["plot", comb.to_str().unwrap()]));
    assert_eq!(svg, fs::read_to_string(golden("three_teeth.svg")).unwrap());
    assert_eq!(svg.matches("class=\"tooth\"").count(), 3);

    let contour = golden("contour.csv");
    let args = ["plot", contour.to_str().unwrap(), "--level", "1"];
    let svg = stdout(&run(&args));
    assert_eq!(svg, fs::read_to_string(golden("contour_level.svg")).unwrap());
    assert_eq!(svg, stdout(&run(&args)));
}

#[test]
fn verify_reports() {
    let dir = TempDir::new().unwrap();
    let comb = file(&dir, "c.txt", "comb 0 4\n1 1\n2 3\n3 2\n");
    assert!(stdout(&run(&["verify", &comb])).starts_with("ok"));
    let m = file(&dir, "m.csv", THREE_POINTS);
    assert!(stdout(&run(&["verify", &m])).starts_with("ok"));
    let tampered = file(&dir, "t.csv", "0,1,2,2\n1,0,2,2\n2,2,0,1\n2,3,1,0\n");
    let out = run(&["verify", &tampered]);
    assert_eq!(out.status.code(), Some(2));
    let listing = stderr(&out);
    assert!(listing.contains("d(1,3) = 2 but d(3,1) = 3"), "{listing}");
    assert!(listing.contains("d(3,1) = 3 > max("), "{listing}");
    let h = file(&dir, "h.csv", ZIGZAG);
    assert!(stdout(&run(&["verify", &h])).contains("quadruples checked"));
}

#[test]
fn formats_round_trip() {
    let dir = TempDir::new().unwrap();
    let comb = path(&dir, "c.txt");
    stdout(&run(&[
        "--precision", "full", "sample", "cpp", "--level", "1", "--epsilon", "0.01", "--seed", "8",
        "-o", &comb,
    ]));
    assert!(stdout(&run(&["verify", &comb])).starts_with("ok"));

    let h = file(&dir, "h.csv", ZIGZAG);
    let exc_a = path(&dir, "a.csv");
    let exc_b = path(&dir, "b.csv");
    stdout(&run(&["sphere", &h, "--level", "1.5", "--excursions", &exc_a]));
    stdout(&run(&["sphere", &h, "--level", "1.5", "--excursions", &exc_b]));
    assert_eq!(fs::read(&exc_a).unwrap(), fs::read(&exc_b).unwrap());

    let m = file(&dir, "m.csv", THREE_POINTS);
    let c1 = path(&dir, "c1.txt");
    let o1 = path(&dir, "o1.txt");
    stdout(&run(&["order", &m, "-o", &c1, "--order-out", &o1]));
    let back = stdout(&run(&["dist", &c1, "--order", &o1]));
    let m2 = file(&dir, "m2.csv", &back);
    let c2 = path(&dir, "c2.txt");
    stdout(&run(&["order", &m2, "-o", &c2]));
    assert_eq!(fs::read(&c1).unwrap(), fs::read(&c2).unwrap());
}

#[test]
fn precision_flag() {
    let dir = TempDir::new().unwrap();
    let comb = file(&dir, "c.txt", "comb 0 1\n0.5 0.1234567890123456\n");
    let d = |p: &str| stdout(&run(&["--precision", p, "dist", &comb, "--at", "0.25,0.75"]));
    assert_eq!(d("3"), "0,0.123\n0.123,0\n");
    assert_eq!(d("full"), "0,0.1234567890123456\n0.1234567890123456,0\n");
}
