use spatial_hand::cli::{check_score, run, EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE};
use spatial_hand::parse_config;

fn hand(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut all = vec!["hand"];
    all.extend_from_slice(args);
    let code = run(all, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn pose_prints_every_angle() {
    let (code, out, _) = hand(&["pose"]);
    assert_eq!(code, EXIT_OK);
    for name in [
        "theta3", "theta5", "nu1", "psi1", "psi2", "psi4", "psi5", "psi6", "d0_mm",
    ] {
        assert!(out.lines().any(|l| l.starts_with(name)), "missing {name}");
    }
    assert!(out.contains("1.2307643141"));
}

#[test]
fn forces_emits_one_csv_row() {
    let (code, out, _) = hand(&["forces", "--theta2", "-1.8", "--theta6", "-2.2"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("-1.8000000000000000e0,-2.2000000000000002e0,"));
}

#[test]
fn check_passes_at_home() {
    let (code, out, _) = hand(&["check"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hand(&[]).0, EXIT_USAGE);
    assert_eq!(hand(&["spin"]).0, EXIT_USAGE);
    assert_eq!(hand(&["pose", "--theta2", "abc"]).0, EXIT_USAGE);
    assert_eq!(hand(&["--help"]).0, EXIT_OK);
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{ "alpha_deg": 200 }"#).unwrap();
    let (code, _, err) = hand(&["pose", "--config", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("alpha must be in (0, 180)"));
    assert_eq!(
        hand(&["pose", "--config", "/nonexistent/x.json"]).0,
        EXIT_CONFIG
    );
    assert_eq!(hand(&["sweep", "--grid", "1:0:0.1,0:1:0.1"]).0, EXIT_CONFIG);
    assert_eq!(hand(&["pose", "--preset", "flat"]).0, EXIT_CONFIG);
}

#[test]
fn unknown_keys_are_rejected() {
    assert!(parse_config(r#"{ "alpha": 85 }"#).is_err());
}

#[test]
fn numeric_failures_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("long.json");
    std::fs::write(&path, r#"{ "c123": 50 }"#).unwrap();
    let cfg = path.to_str().unwrap();
    let (code, out, _) = hand(&[
        "forces", "--config", cfg, "--theta2", "-3.1", "--theta6", "-1.1",
    ]);
    assert_eq!(code, EXIT_NUMERIC, "{out}");
    assert_eq!(
        hand(&["pose", "--config", cfg, "--theta2", "-3.1", "--theta6", "-1.1"]).0,
        EXIT_NUMERIC
    );
}

#[test]
fn lever_arm_follows_the_middle_phalanx() {
    let cfg = parse_config(r#"{ "l2": 50 }"#).unwrap();
    assert_eq!(cfg.params.k3, 25.0);
    assert_eq!(parse_config("").unwrap(), Default::default());
}

#[test]
fn sweep_writes_csv_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("map.csv");
    let grid = "-2.0:-1.8:0.1,-2.5:-2.3:0.1";
    let (code, out, _) = hand(&["sweep", "--grid", grid, "--out", csv.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("samples 9 (3 x 3)"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 10);
    let gp = std::fs::read_to_string(csv.with_extension("gp")).unwrap();
    assert!(gp.contains("splot 'map.csv'"));

    let (_, stdout_csv, _) = hand(&["sweep", "--grid", grid]);
    assert_eq!(stdout_csv, text);
}

#[test]
fn score_has_an_absolute_floor() {
    assert!(check_score(1.0 + 5e-5, 1.0) < 1.0);
    assert!(check_score(1.0 + 2e-4, 1.0) > 1.0);
    assert!(check_score(5e-7, 0.0) < 1.0);
    assert!(check_score(5e-6, 0.0) > 1.0);
}
