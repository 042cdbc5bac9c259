//! End-to-end tests of the command-line binary: output formats, exact
//! closed-form values, determinism across reruns, and the exit-code contract.

use std::io::Write as _;
use std::process::{Command, Output};

use graphzeta::graph::{GraphDescription, NodeCondition};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphzeta"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8");
    serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("stderr should be one JSON object, got {e}:\n{text}"))
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process should exit normally")
}

#[test]
fn det_equal_neumann_star_matches_closed_form() {
    // Three Neumann bonds of length 2 with a free center:
    // determinant = 2^B * total / B = 8 * 6 / 3 = 16.
    let out = run(&["det", "--lengths", "2,2,2"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_json(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let det = v["determinant"].as_f64().unwrap();
    assert!(
        (det - 16.0).abs() <= 1e-8 * 16.0,
        "determinant = {det}, want 16"
    );
    assert_eq!(v["total_length"].as_f64().unwrap(), 6.0);

    // Reruns must be byte-identical.
    let again = run(&["det", "--lengths", "2,2,2"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn verify_integral_equal_coefficients_gives_minus_pi_squared_over_16() {
    let out = run(&["verify-integral", "--a", "1", "--b", "1"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_json(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let closed = v["closed_form"].as_f64().unwrap();
    let want = -std::f64::consts::PI.powi(2) / 16.0;
    assert!(
        (closed - want).abs() <= 1e-12 * want.abs(),
        "closed_form = {closed}, want {want}"
    );
    assert!(
        v["abs_error"].as_f64().unwrap().abs() < 1e-9,
        "quadrature should match the closed form to 1e-9"
    );
}

#[test]
fn piston_sweep_vanishes_at_the_midpoint_and_is_deterministic() {
    let out = run(&["piston-sweep", "--total", "1", "--grid", "99"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_json(&out));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    // Header plus 99 grid points for each of the four default couplings.
    assert_eq!(lines[0], "lambda,position,force");
    assert_eq!(lines.len(), 1 + 4 * 99);

    // The grid is symmetric about the midpoint, where the force is exactly
    // zero for every coupling; the midpoint lands on grid index 50.
    let mut midpoints = 0;
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3, "malformed row: {line}");
        if fields[1] == "5.00000000000000e-1" {
            assert_eq!(
                fields[2], "0.00000000000000e0",
                "midpoint force must be exactly zero: {line}"
            );
            midpoints += 1;
        }
    }
    assert_eq!(midpoints, 4, "one midpoint row per coupling");

    let again = run(&["piston-sweep", "--total", "1", "--grid", "99"]);
    assert_eq!(out.stdout, again.stdout, "reruns must be byte-identical");
}

#[test]
fn spectrum_csv_is_sorted_with_positive_multiplicities() {
    let out = run(&[
        "spectrum", "--lengths", "1,0.8", "--nodes", "ND", "--k-max", "12",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_json(&out));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "k,multiplicity,on_lattice");
    assert!(lines.len() > 3, "a 1.8-length graph has several roots below 12");
    let mut prev = 0.0;
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3, "malformed row: {line}");
        let k: f64 = fields[0].parse().unwrap();
        let mult: u32 = fields[1].parse().unwrap();
        assert!(k > prev, "eigenvalues must be strictly increasing: {line}");
        assert!(mult >= 1, "multiplicities are positive: {line}");
        assert!(
            fields[2] == "true" || fields[2] == "false",
            "on_lattice is boolean: {line}"
        );
        prev = k;
    }
}

#[test]
fn exit_codes_classify_failures_and_stderr_is_json() {
    // No graph source at all: input never reaches the numerics.
    let out = run(&["det"]);
    assert_eq!(exit_code(&out), 2);
    let err = stderr_json(&out);
    assert_eq!(err["error"]["category"], "parse");
    assert_eq!(err["error"]["exit_code"], 2);
    assert!(err["error"]["message"].as_str().unwrap().len() > 10);

    // Negative bond length: rejected by graph validation.
    let out = run(&["det", "--lengths", "-1,1"]);
    assert_eq!(exit_code(&out), 3);
    assert_eq!(stderr_json(&out)["error"]["category"], "validation");

    // s = 1/2 is the Weyl pole of every spectral zeta function here.
    let out = run(&["zeta", "--lengths", "1", "--nodes", "D", "--s", "0.5"]);
    assert_eq!(exit_code(&out), 4);
    assert_eq!(stderr_json(&out)["error"]["category"], "math-contract");

    // Nothing is printed to stdout on failure.
    assert!(out.stdout.is_empty());
}

#[test]
fn graph_file_route_matches_flag_route_exactly() {
    let desc = GraphDescription::star(
        &[1.0, 0.8, 1.25],
        &[
            NodeCondition::Neumann,
            NodeCondition::Dirichlet,
            NodeCondition::Neumann,
        ],
        0.75,
    );
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(serde_json::to_string(&desc).unwrap().as_bytes())
        .unwrap();
    let path = file.path().to_str().unwrap();

    let from_file = run(&["det", "--graph", path]);
    assert_eq!(exit_code(&from_file), 0, "stderr: {}", stderr_json(&from_file));
    let from_flags = run(&[
        "det", "--lengths", "1,0.8,1.25", "--nodes", "NDN", "--lambda", "0.75",
    ]);
    assert_eq!(
        from_file.stdout, from_flags.stdout,
        "both graph sources must produce identical output"
    );
}

#[test]
fn random_graph_generation_is_seed_stable() {
    let default_seed = run(&["det", "--random", "2"]);
    assert_eq!(
        exit_code(&default_seed),
        0,
        "stderr: {}",
        stderr_json(&default_seed)
    );
    let explicit = run(&["det", "--random", "2", "--seed", "7"]);
    assert_eq!(
        default_seed.stdout, explicit.stdout,
        "--seed defaults to 7 and fixes the graph"
    );
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&default_seed)).unwrap();
    assert!(v["determinant"].as_f64().unwrap().is_finite());
}
