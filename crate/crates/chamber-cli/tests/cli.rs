//! End-to-end checks of the binary: output shapes, exit codes, round-trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chamber"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json_report(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(out).trim()).expect("valid JSON report")
}

fn make_fixture(dir: &Path, name: &str, what: &str) -> PathBuf {
    let path = dir.join(name);
    let out = run(&["make", what, "-o", path.to_str().unwrap()], dir);
    assert!(out.status.success());
    path
}

#[test]
fn validate_reports_counts_and_verdicts() {
    let dir = tempdir();
    let path = make_fixture(&dir, "b3.cplx", "cross:3");
    let out = run(&["validate", path.to_str().unwrap(), "--json"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["result"]["rank"], 3);
    assert_eq!(report["result"]["facets"], 8);
    assert_eq!(report["result"]["thin"], true);
    assert_eq!(report["result"]["chamber"], true);
    // Keys arrive sorted.
    let text = stdout(&out);
    let c = text.find("\"chamber\"").unwrap();
    let f = text.find("\"facets\"").unwrap();
    let r = text.find("\"rank\"").unwrap();
    assert!(c < f && f < r);
}

#[test]
fn invalid_inputs_exit_one() {
    let dir = tempdir();
    std::fs::write(dir.join("bad.cplx"), "1 2 3\n1 2\n").unwrap();
    let out = run(&["validate", "bad.cplx"], &dir);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    std::fs::write(dir.join("empty.cplx"), "# nothing here\n").unwrap();
    let out = run(&["validate", "empty.cplx"], &dir);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["validate", "missing.cplx"], &dir);
    assert_eq!(out.status.code(), Some(1));

    // Usage errors are validation errors too.
    let out = run(&["zconnect", "missing.cplx"], &dir);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn zigzag_inventory_of_the_4_simplex() {
    let dir = tempdir();
    let path = make_fixture(&dir, "a4.cplx", "simplex:4");
    let out = run(&["zigzags", path.to_str().unwrap(), "--json"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["result"]["count"], 12);
    assert_eq!(report["result"]["common_length"], 5);
    assert_eq!(report["result"]["z_simple"], true);
    assert_eq!(report["result"]["count_formula_ok"], true);
}

#[test]
fn shadows_are_printed_on_request() {
    let dir = tempdir();
    let path = make_fixture(&dir, "b3.cplx", "cross:3");
    let out = run(&["zigzags", path.to_str().unwrap(), "--shadow", "0"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("zigzags: 4"));
    assert_eq!(text.matches("0-shadow:").count(), 4);

    // Out-of-range shadow level is a validation error.
    let out = run(&["zigzags", path.to_str().unwrap(), "--shadow", "3"], &dir);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_apoly_is_rejected() {
    let dir = tempdir();
    std::fs::write(dir.join("broken.apoly"), "{\"rank\": 2}").unwrap();
    let out = run(&["polytope", "broken.apoly"], &dir);
    assert_eq!(out.status.code(), Some(1));
    std::fs::write(dir.join("hollow.apoly"), "not json").unwrap();
    let out = run(&["polytope", "hollow.apoly"], &dir);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn zconnect_matrix_and_pair() {
    let dir = tempdir();
    let path = make_fixture(&dir, "b3.cplx", "cross:3");
    let out = run(
        &[
            "zconnect",
            path.to_str().unwrap(),
            "--rank",
            "1",
            "--from",
            "1 2",
            "--to",
            "1 -2",
            "--json",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_report(&out)["result"]["connected"], false);

    let out = run(
        &["zconnect", path.to_str().unwrap(), "--rank", "0", "--json"],
        &dir,
    );
    let report = json_report(&out);
    assert_eq!(report["result"]["faces"].as_array().unwrap().len(), 6);
    // Every vertex pair of the cross-polytope is z-connected.
    for row in report["result"]["matrix"].as_array().unwrap() {
        assert_eq!(row.as_str().unwrap(), "111111");
    }
}

#[test]
fn geodesic_verdict_for_antipodal_facets() {
    let dir = tempdir();
    let path = make_fixture(&dir, "b3.cplx", "cross:3");
    let out = run(
        &[
            "geodesic",
            path.to_str().unwrap(),
            "--from",
            "1 2 3",
            "--to",
            "-1 -2 -3",
            "--json",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["result"]["distance"], 3);
    assert_eq!(report["result"]["normal"], true);
    assert_eq!(report["result"]["extensions"], 1);
    assert_eq!(report["result"]["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn coxeter_verify_and_budget() {
    let dir = tempdir();
    let out = run(&["coxeter", "H3", "--verify", "--json"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["result"]["order"], 120);
    assert_eq!(report["result"]["coxeter_number"], 10);
    assert_eq!(report["result"]["verify"]["pass"], true);
    assert_eq!(report["result"]["verify"]["zigzag_count"], 12);
    assert_eq!(report["result"]["verify"]["zigzag_length"], 30);

    // Too small a budget reports a validation error.
    let out = run(&["coxeter", "E8", "--cap", "2000"], &dir);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    // Large verifications want --deep.
    let out = run(&["coxeter", "H4", "--verify"], &dir);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--deep"));

    // A1 is the degenerate rank-1 case where the count identity fails
    // (its single zigzag is its own reverse); verification exits 2.
    let out = run(&["coxeter", "A1", "--verify", "--json"], &dir);
    assert_eq!(out.status.code(), Some(2));
    let report = json_report(&out);
    assert_eq!(report["result"]["verify"]["pass"], false);
}

#[test]
fn coxeter_accepts_matrix_files() {
    let dir = tempdir();
    std::fs::write(dir.join("i27.cox"), "2\n1 7\n7 1\n").unwrap();
    let out = run(&["coxeter", "i27.cox", "--json"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["result"]["order"], 14);
    assert_eq!(report["result"]["coxeter_number"], 7);
    assert_eq!(report["result"]["complex"]["facets"], 14);
}

#[test]
fn polytope_lengths_and_interchange() {
    let dir = tempdir();
    let out = run(
        &["polytope", "cross:4", "--emit", "c4.apoly", "--json"],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["result"]["zigzag_lengths"][0], 8);
    assert_eq!(report["result"]["delta_independent"], true);

    // Re-reading the emitted .apoly reproduces the polytope.
    let out = run(&["polytope", "c4.apoly", "--json"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(
        report["result"]["face_vector"],
        serde_json::json!([8, 24, 32, 16])
    );
    assert_eq!(report["result"]["zigzag_lengths"][0], 8);
}

#[test]
fn polytope_correspondence_check() {
    let dir = tempdir();
    let out = run(
        &[
            "polytope",
            "icosahedron",
            "--check-correspondence",
            "--json",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["result"]["correspondence"]["pass"], true);
    assert_eq!(
        report["result"]["correspondence"]["generalized_zigzags"],
        12
    );
}

#[test]
fn reports_round_trip_on_exported_complexes() {
    let dir = tempdir();
    let path = make_fixture(&dir, "sigma_b3.cplx", "coxeter:B3");
    let first = run(&["zigzags", path.to_str().unwrap(), "--json"], &dir);
    let second = run(&["zigzags", path.to_str().unwrap(), "--json"], &dir);
    let (a, b) = (json_report(&first), json_report(&second));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["input"], b["input"]);
    assert_eq!(a["result"]["count"], 8);
    assert_eq!(a["result"]["common_length"], 18);

    // The exported text is a fixed point of parse-and-write.
    let text = std::fs::read_to_string(&path).unwrap();
    let reexported = dir.join("again.cplx");
    std::fs::write(&reexported, &text).unwrap();
    let out = run(&["validate", reexported.to_str().unwrap(), "--json"], &dir);
    assert_eq!(json_report(&out)["result"], a_validate(&dir, &path));
}

fn a_validate(dir: &Path, path: &Path) -> serde_json::Value {
    let out = run(&["validate", path.to_str().unwrap(), "--json"], dir);
    json_report(&out)["result"].clone()
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "chamber-cli-test-{}-{}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
