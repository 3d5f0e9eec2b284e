use eqehrhart::cli::SeriesJson;
use eqehrhart::triangulate::{ComplexJson, PolyComplex};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqehrhart")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn hstar_report_for_the_cube() {
    let o = run(&["hstar", "klein-cube"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("h* = 1 + chi_reg*t + t^2\npolynomial; effective"), "{out}");
}

#[test]
fn hstar_names_the_failing_classes() {
    let o = run(&["hstar", "sym3-prism"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("not polynomial at class 1 (3 5)(4 6) (order 2, size 3)"), "{out}");
}

#[test]
fn fractional_hstar_of_the_permutahedron() {
    let o = run(&["hstar", "permutahedron-3", "--N", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("polynomial; effective"));
}

#[test]
fn hstar_json_parses() {
    let o = run(&["hstar", "z3-prism", "--json"]);
    assert!(o.status.success());
    let j: SeriesJson = serde_json::from_slice(&o.stdout).unwrap();
    assert!(j.polynomial);
    assert_eq!(j.effective, Some(true));
    assert_eq!(j.classes.len(), 3);
}

#[test]
fn truncation_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_eqehrhart"))
        .args(["hstar", "circuit-1-1-2"])
        .env("EQEHRHART_TRUNCATE", "5")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("(first 5 terms)"), "{}", stdout(&o));
}

#[test]
fn triangulate_writes_a_checked_complex() {
    let dir = std::env::temp_dir().join(format!("eqehrhart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("z3.json");
    let o = run(&["triangulate", "z3-prism", "--N", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("ok"));
    let j: ComplexJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let t = PolyComplex::from_json(&j).unwrap();
    assert_eq!(t.denominator(), 3);

    let off = run(&["triangulate", "octahedron", "--mode", "glue", "--format", "off"]);
    assert!(off.status.success(), "{}", stderr(&off));
    assert!(stdout(&off).starts_with("OFF"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn triangulate_refuses_the_cube_at_n_one() {
    let o = run(&["triangulate", "klein-cube", "--N", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("refused") && err.contains("square obstruction"), "{err}");
}

#[test]
fn trivial_group_gets_a_pulling_triangulation() {
    let dir = std::env::temp_dir().join(format!("eqehrhart-triv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("tri.json");
    std::fs::write(&f, r#"{"name": "tri", "vertices": [[0, 0], [2, 0], [0, 2]]}"#).unwrap();
    let o = run(&["triangulate", f.to_str().unwrap(), "--N", "1", "--mode", "lattice"]);
    assert!(o.status.success(), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_and_ehrhart_succeed() {
    let o = run(&["verify", "bipyramid"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("PASS bipyramid sr-induced") && !out.contains("FAIL"), "{out}");
    let e = run(&["ehrhart", "square-swap", "--dilates", "2"]);
    assert!(stdout(&e).contains("L(2) = 6 + 3*chi1"));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(run(&["hstar", "no-such-instance"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "square-swap", "--corpus", "paper"]).status.code(), Some(2));
}
