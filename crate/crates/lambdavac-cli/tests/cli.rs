use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_lambdavac")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("failed to spawn lambdavac")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is not UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is not UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process was terminated by signal")
}

fn metrics_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../metrics")
}

#[test]
fn verify_passes_for_the_family() {
    let out = run(&["verify", "--builtin", "space_periodic"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"summary\": \"10/10 components vanish\""));
    assert!(text.contains("\"ok\": true"));
    assert!(text.contains("\"conventions\""));
}

#[test]
fn verify_fails_for_minkowski_with_nonzero_lambda() {
    let path = metrics_dir().join("minkowski.metric");
    let path = path.to_str().unwrap();
    let out = run(&["verify", "--metric", path, "--lambda", "1"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("\"ok\": false"));
    assert!(text.contains("\"verdict\": \"nonzero\""));

    let out = run(&["verify", "--metric", path]);
    assert_eq!(code(&out), 0, "Minkowski solves the Lambda = 0 equations");
}

#[test]
fn curvature_reports_exact_values_at_the_origin() {
    let out = run(&[
        "curvature",
        "--builtin",
        "space_periodic",
        "--at",
        "t=0,x=0",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"scalar\": \"4\""));
    let line = text
        .lines()
        .find(|l| l.contains("\"kretschmann_value\":"))
        .expect("report lists the Kretschmann value");
    let value: f64 = line
        .split(':')
        .nth(1)
        .unwrap()
        .trim()
        .trim_end_matches(',')
        .parse()
        .unwrap();
    let expected = 5868.0 / 2187.0;
    assert!(
        (value - expected).abs() <= 1e-12 * expected.abs(),
        "Kretschmann at the origin: got {value}, want {expected}"
    );
}

#[test]
fn weyl_flags_the_constant_term_discrepancy() {
    let out = run(&["weyl", "--builtin", "space_periodic"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"psi2_matches_closed_form\": true"));
    assert!(text.contains("\"psi2_constant_term\": \"-Lambda/9\""));
    assert!(text.contains("\"constant_term_alternative\": \"-2*Lambda/9\""));
    assert!(text.contains("\"constant_term_alternative_matches\": false"));
    assert!(text.contains("\"petrov_hint\": \"only_psi2\""));
}

#[test]
fn signmap_csv_has_the_documented_shape() {
    let out = run(&[
        "signmap",
        "--builtin",
        "singular_periodic",
        "--grid",
        "9.3:9.6:2,0:1.5707963267948966:3",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x,sign(g00)");
    assert_eq!(lines.len(), 1 + 2 * 3, "header plus nt*nx rows");
    for row in &lines[1..] {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 3);
        assert!(matches!(cells[2], "1" | "-1" | "0" | "nan"), "cell {row}");
    }
    // The x = pi/2 column sits on the degenerate cone, so it must be nan.
    assert!(lines[3].ends_with(",nan"));
    assert!(lines[6].ends_with(",nan"));
}

#[test]
fn nullfield_json_lists_both_branches() {
    let out = run(&[
        "nullfield",
        "--builtin",
        "space_periodic",
        "--grid",
        "0:1:2,1.4:1.6:3",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"dt = 0\""));
    assert!(text.contains("\"dt/dx = -2*g01/g00\""));
    assert!(text.contains("\"slope_expression\""));
    assert!(text.contains("\"order\": \"row-major, t outer, x inner\""));
}

#[test]
fn singularities_csv_lists_loci_rows() {
    let out = run(&[
        "singularities",
        "--builtin",
        "singular_periodic",
        "--grid",
        "16:22:25,-2:2:25",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kind,t,x,kretschmann,det");
    assert!(lines.len() > 1, "expected at least one locus");
    assert!(lines[1..].iter().any(|l| l.starts_with("physical,")));
    assert!(lines[1..].iter().any(|l| l.starts_with("chart,")));
}

#[test]
fn slice_reports_the_reduced_line_element() {
    let out = run(&["slice", "--builtin", "space_periodic", "--at", "y=0,z=0"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"coordinates\": [\n    \"t\",\n    \"x\"\n  ]"));
    assert!(text.contains("dt dx"));
}

#[test]
fn catalog_lists_all_builtins() {
    let out = run(&["catalog"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in [
        "space_periodic",
        "regular_periodic",
        "singular_periodic",
        "conformal_flat",
        "lambda_zero",
    ] {
        assert!(text.contains(&format!("\"name\": \"{name}\"")), "{name}");
    }
}

#[test]
fn every_subcommand_handles_every_builtin() {
    let grid = "0.5:1.5:3,0.5:1.5:3";
    for name in [
        "space_periodic",
        "regular_periodic",
        "singular_periodic",
        "conformal_flat",
        "lambda_zero",
    ] {
        for args in [
            vec!["verify", "--builtin", name],
            vec!["curvature", "--builtin", name, "--at", "t=1,x=1"],
            vec!["weyl", "--builtin", name],
            vec!["signmap", "--builtin", name, "--grid", grid],
            vec!["nullfield", "--builtin", name, "--grid", grid],
            vec!["singularities", "--builtin", name, "--grid", grid],
            vec!["slice", "--builtin", name, "--at", "y=0,z=0"],
        ] {
            let out = run(&args);
            assert_eq!(code(&out), 0, "{args:?} failed: {}", stderr(&out));
        }
    }
}

#[test]
fn ansatz_metric_file_round_trips_through_verify() {
    let path = metrics_dir().join("regular_periodic.metric");
    let out = run(&["verify", "--metric", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("\"summary\": \"10/10 components vanish\""));
    assert!(stdout(&out).contains("\"solution\": \"regular_periodic\""));
}

#[test]
fn reports_are_byte_deterministic() {
    let invocations: Vec<Vec<&str>> = vec![
        vec!["weyl", "--builtin", "regular_periodic", "--at", "t=1,x=0.7"],
        vec![
            "nullfield",
            "--builtin",
            "singular_periodic",
            "--grid",
            "9:11:5,-1:1:5",
        ],
        vec![
            "singularities",
            "--builtin",
            "singular_periodic",
            "--grid",
            "17:21:15,-2:2:15",
        ],
        vec!["curvature", "--builtin", "space_periodic", "--at", "t=0,x=0.9"],
    ];
    for args in invocations {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(code(&first), 0, "{args:?}: {}", stderr(&first));
        assert_eq!(
            first.stdout, second.stdout,
            "{args:?} produced different bytes across runs"
        );
    }
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let direct = run(&["weyl", "--builtin", "space_periodic"]);
    let filed = run(&[
        "weyl",
        "--builtin",
        "space_periodic",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&filed), 0, "stderr: {}", stderr(&filed));
    assert!(stdout(&filed).is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, direct.stdout);
}

#[test]
fn input_errors_exit_with_code_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--builtin", "nonsense"],
        vec!["verify"],
        vec!["verify", "--builtin", "space_periodic", "--m=-1"],
        vec!["verify", "--builtin", "space_periodic", "--format", "csv"],
        vec!["signmap", "--builtin", "space_periodic", "--grid", "0:1:1,0:1:2"],
        vec!["signmap", "--builtin", "space_periodic", "--grid", "junk"],
        vec!["curvature", "--builtin", "space_periodic", "--at", "t=x"],
        vec!["slice", "--builtin", "space_periodic", "--at", "t=0,x=0,y=0,z=0"],
        vec!["singularities", "--builtin", "space_periodic", "--grid", "0:1:2,0:1:2", "--k-threshold", "-3"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn constraint_violations_name_the_builtin() {
    let out = run(&["verify", "--builtin", "singular_periodic", "--lambda", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("singular_periodic"));

    let out = run(&["verify", "--builtin", "conformal_flat", "--m", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("conformal_flat"));
}

#[test]
fn warnings_go_to_stderr_not_stdout() {
    let out = run(&["verify", "--builtin", "space_periodic", "--m", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("warning:"));
    assert!(!stdout(&out).contains("warning:"));
}
