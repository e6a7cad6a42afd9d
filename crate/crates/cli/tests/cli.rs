use std::process::{Command, Output};

use majprop::fermion::pair_string;
use majprop::oracle::best_truncation_error;
use majprop::propagation::{apriori_error_bound, TRACE_CSV_HEADER};
use majprop::states::hole_density_observable;
use majprop::{build_hubbard_1d, MajoranaPolynomial};
use majprop_cli::error::{CliError, EXIT_BOUND_VIOLATION, EXIT_CONFIG, EXIT_TERM_CAP};

fn majprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majprop"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Comment lines, then a header and numeric rows.
struct Csv {
    comments: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

fn parse_csv(text: &str) -> Csv {
    let mut lines = text.lines();
    let mut comments = Vec::new();
    let header = loop {
        let l = lines.next().expect("header line");
        if let Some(c) = l.strip_prefix('#') {
            comments.push(c.trim().to_string());
        } else {
            break l.split(',').map(str::to_string).collect::<Vec<_>>();
        }
    };
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse::<f64>().expect("numeric cell")).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    for r in &rows {
        assert_eq!(r.len(), header.len());
    }
    Csv { comments, header, rows }
}

const SMALL_FIG1: &[&str] = &["fig1", "--size", "3", "--times", "0.05,0.1", "--ell", "2,4,6,12"];

#[test]
fn fig1_schema_and_full_degree_row() {
    let csv = parse_csv(&stdout(&majprop(SMALL_FIG1)));
    assert!(csv.comments[0].starts_with("majprop ") && csv.comments[0].ends_with(" fig1"));
    assert!(csv.comments[1].starts_with("config: {"));
    assert_eq!(csv.header, ["deg", "t0.05", "t0.1"]);
    let degs: Vec<f64> = csv.rows.iter().map(|r| r[0]).collect();
    assert_eq!(degs, [2.0, 4.0, 6.0, 12.0]);
    for col in 1..3 {
        assert!(csv.rows[3][col] <= 1e-9, "ℓ=N row must vanish: {}", csv.rows[3][col]);
        for w in csv.rows.windows(2) {
            assert!(w[1][col] <= 1.1 * w[0][col] + 1e-12, "{:?}", csv.rows);
        }
    }
}

#[test]
fn output_is_identical_across_thread_counts() {
    let one = stdout(&majprop(&[SMALL_FIG1, &["--threads", "1"]].concat()));
    let three = stdout(&majprop(&[SMALL_FIG1, &["--threads", "3"]].concat()));
    assert_eq!(one, three);
    assert!(!one.contains("threads"));

    let fig2 = ["fig2", "--model", "hubbard1d", "--size", "3", "--u", "1", "--ell", "4,8", "--t_max", "0.2"];
    let a = stdout(&majprop(&[&fig2[..], &["--threads", "1"]].concat()));
    let b = stdout(&majprop(&[&fig2[..], &["--threads", "2"]].concat()));
    assert_eq!(a, b);
}

#[test]
fn fig2_schema_and_exact_column() {
    let t_max = 0.4;
    let out = stdout(&majprop(&[
        "fig2", "--model", "hubbard1d", "--size", "3", "--u", "0,1", "--ell", "4,10", "--t_max", "0.4",
    ]));
    let csv = parse_csv(&out);
    assert_eq!(csv.header, ["time", "U0.0ell4", "U0.0ell10", "U0.0exact", "U1.0ell4", "U1.0ell10", "U1.0exact"]);
    assert_eq!(csv.rows.len(), 21);
    assert!(csv.rows[0][1..].iter().all(|&v| v == 1.0));
    assert!((csv.rows[20][0] - t_max).abs() < 1e-12);

    // MP at ℓ = 10 against the oracle for U = 0, within the a-priori bound
    // (the expectation in a product state is at most the Frobenius distance).
    let h = build_hubbard_1d(3, 0.0, false).unwrap();
    let a: MajoranaPolynomial = hole_density_observable(1, 3).unwrap();
    let eta = best_truncation_error(&h, &a, t_max, 10, 16).unwrap();
    for row in &csv.rows {
        let bound = apriori_error_bound(row[0], 0.02, h.sparsity(), 10, eta, a.frobenius_norm());
        assert!((row[2] - row[3]).abs() <= bound);
        assert!((row[2] - row[3]).abs() < 1e-2);
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"size": 3, "times": [0.05], "ell": [2, 4], "delta_t": 0.05}"#).unwrap();
    let out = stdout(&majprop(&["fig1", "--config", cfg.to_str().unwrap(), "--delta_t", "0.025"]));
    let csv = parse_csv(&out);
    assert!(csv.comments[1].contains("\"delta_t\":0.025"));
    assert_eq!(csv.rows.len(), 2);
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"size": 3, "colour": "red"}"#).unwrap();
    assert_eq!(code(&majprop(&["fig1", "--config", bad.to_str().unwrap()])), EXIT_CONFIG);
    assert_eq!(code(&majprop(&["fig1", "--times", "0.015"])), EXIT_CONFIG);
    assert_eq!(code(&majprop(&["fig2", "--size", "4"])), EXIT_CONFIG);
    assert_eq!(code(&majprop(&["fig1", "--bogus"])), EXIT_CONFIG);
    assert_eq!(
        code(&majprop(&["propagate", "--size", "3", "--t_max", "0.5", "--term_cap", "20"])),
        EXIT_TERM_CAP
    );
    let ok = majprop(&["verify", "--suite", "weak_interaction", "--eta_grid", "8"]);
    assert_eq!(code(&ok), 0);
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["suites"][0]["name"], "weak_interaction");
    assert_eq!(CliError::BoundViolation(1).exit_code(), EXIT_BOUND_VIOLATION);
}

#[test]
fn propagate_writes_trace_and_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("trace.csv");
    let poly_path = dir.path().join("out.majpoly");
    let out = majprop(&[
        "propagate",
        "--size",
        "3",
        "--t_max",
        "0.1",
        "--delta_t",
        "0.02",
        "--ell",
        "4",
        "--output",
        csv_path.to_str().unwrap(),
        "--save-polynomial",
        poly_path.to_str().unwrap(),
    ]);
    stdout(&out);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let csv = parse_csv(&text);
    assert_eq!(csv.header.join(","), TRACE_CSV_HEADER);
    assert_eq!(csv.rows.len(), 6);
    assert!(csv.rows.iter().all(|r| r[3] <= 4.0));
    let p = majprop::algebra::format::from_text(&std::fs::read_to_string(&poly_path).unwrap()).unwrap();
    assert_eq!(p.n_modes(), 12);
    assert!((p.frobenius_norm() - csv.rows[5][4]).abs() < 1e-10);
}

#[test]
fn color_and_validate_report_json() {
    let color: serde_json::Value =
        serde_json::from_str(&stdout(&majprop(&["color", "--model", "hubbard2d", "--size", "3"]))).unwrap();
    assert_eq!(color["sparsity"], 6);
    let g = color["n_groups"].as_u64().unwrap();
    assert!(g <= 24 && color["groups"].as_array().unwrap().len() as u64 == g);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    std::fs::write(&file, build_hubbard_1d(2, 1.0, false).unwrap().to_json()).unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&majprop(&["validate", "--model", "file", "--hamiltonian", file.to_str().unwrap()])))
            .unwrap();
    assert_eq!(v["n_majorana"], 8);
    assert_eq!(v["n_quartic"], 2);

    std::fs::write(&file, r#"{"n_majorana": 4, "terms": [{"mask_hex": "7", "coeff": 1.0}]}"#).unwrap();
    assert_eq!(code(&majprop(&["validate", "--model", "file", "--hamiltonian", file.to_str().unwrap()])), EXIT_CONFIG);
}

#[test]
fn observable_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let obs = dir.path().join("a.majpoly");
    let a = MajoranaPolynomial::monomial(12, pair_string(2), num_complex::Complex64::new(1.0, 0.0));
    std::fs::write(&obs, majprop::algebra::format::to_text(&a)).unwrap();
    let spec = format!("file:{}", obs.display());
    let from_file = stdout(&majprop(&["propagate", "--size", "3", "--t_max", "0.1", "--observable", &spec]));
    let from_pair = stdout(&majprop(&["propagate", "--size", "3", "--t_max", "0.1", "--observable", "pair:2"]));
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&from_file), strip(&from_pair));
}
