use std::process::{Command, Output};

fn qsd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsd"))
        .args(args)
        .env_remove("QSD_TAIL_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

fn click(report: &str, detector: &str) -> f64 {
    report
        .lines()
        .find(|l| l.starts_with(&format!("{detector},")))
        .and_then(|l| l.rsplit(',').next())
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn three_mode_curve() {
    let out = qsd(&["curve", "--family", "three_mode", "--metric", "p_corr", "--variants", "pure,mixed", "--alpha", "0:3:301"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(csv.lines().next(), Some("alpha_abs,p_corr_pure,p_corr_mixed"));
    assert_eq!(csv.lines().count(), 302);
    let pure = column(&csv, "p_corr_pure");
    let mixed = column(&csv, "p_corr_mixed");
    assert_eq!(pure[0], 0.25);
    assert!(pure[300] > 0.999 && mixed[300] > 0.999);
    assert!(pure.iter().zip(&mixed).all(|(p, m)| p >= &(m - 1e-12)));
}

#[test]
fn two_mode_prior_curve_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = qsd(&[
        "curve", "--family", "two_mode", "--metric", "p_corr", "--prior", "0.25", "--alpha", "0:2:21",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mixed = column(&csv, "p_corr_mixed");
    assert_eq!(mixed[0], 0.75);
    let x: f64 = 2.0 * 2.0;
    let expected = 1.0 - 0.25 * (-2.0 * x).exp();
    assert!((mixed[20] - expected).abs() < 1e-11);
}

#[test]
fn output_is_deterministic_and_parallel_safe() {
    let args = ["curve", "--family", "phase_encoded", "--metric", "b_ot", "--alpha", "0:3:61"];
    let a = qsd(&args);
    let b = qsd(&args);
    let mut par = args.to_vec();
    par.push("--parallel");
    let c = qsd(&par);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn shared_grid_points_agree_across_resolutions() {
    let coarse = stdout(&qsd(&["curve", "--family", "four_mode", "--metric", "p_1bit", "--alpha", "0:3:4"]));
    let fine = stdout(&qsd(&["curve", "--family", "four_mode", "--metric", "p_1bit", "--alpha", "0:3:7"]));
    let fine_rows: Vec<&str> = fine.lines().skip(1).collect();
    for (i, row) in coarse.lines().skip(1).enumerate() {
        assert_eq!(row, fine_rows[2 * i]);
    }
}

#[test]
fn parametric_curve_against_one_bit() {
    let csv = stdout(&qsd(&["curve", "--family", "phase_encoded", "--metric", "b_ot", "--parametric", "--alpha", "0:3:31"]));
    assert_eq!(csv.lines().next(), Some("p_1bit_pure,b_ot_pure,p_1bit_mixed,b_ot_mixed,alpha_abs"));
    let x = column(&csv, "p_1bit_mixed");
    assert!(x.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn tail_tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qsd"))
        .args(["curve", "--family", "three_mode", "--metric", "p_corr", "--alpha", "0:1:3"])
        .env("QSD_TAIL_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qsd"))
        .args(["curve", "--family", "three_mode", "--metric", "p_corr", "--alpha", "0:1:3"])
        .env("QSD_TAIL_TOL", "1e-10")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["curve", "--family", "three_mode", "--metric", "p_corr", "--alpha", "0:0:2"],
        &["curve", "--family", "three_mode", "--metric", "p_corr", "--alpha", "0:1:1"],
        &["curve", "--family", "three_mode", "--metric", "p_corr", "--prior", "0.25", "--alpha", "0:1:3"],
        &["curve", "--family", "two_mode", "--metric", "b_ot", "--alpha", "0:1:3"],
        &["curve", "--family", "phase_encoded", "--metric", "p_unambiguous", "--alpha", "0:1:3"],
        &["curve", "--family", "ququart", "--metric", "p_corr", "--variants", "mixed", "--alpha", "0:1:3"],
        &["curve", "--family", "five_mode", "--metric", "p_corr"],
        &["verify", "everything"],
        &["circuit", "mzi", "--state", "00", "--alpha", "1"],
        &["circuit", "fig3", "--state", "2", "--alpha", "1"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = qsd(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn verify_suites_pass() {
    for suite in ["appendix_b", "circuit", "all"] {
        let out = qsd(&["verify", suite]);
        let text = stdout(&out);
        assert_eq!(out.status.code(), Some(0), "{suite}:\n{text}");
        assert!(text.lines().filter(|l| l.starts_with("PASS")).count() > 0);
        assert!(!text.contains("FAIL"));
    }
}

#[test]
fn fig3_identifies_state_00() {
    let out = qsd(&["circuit", "fig3", "--state", "00", "--alpha", "1"]);
    assert!(out.status.success());
    let r = stdout(&out);
    assert!((click(&r, "D3") - (1.0 - (-4f64).exp())).abs() < 1e-12);
    for d in ["D1", "D2", "D4"] {
        assert_eq!(click(&r, d), 0.0);
    }
    assert!(r.contains("identified,00"));
}

#[test]
fn bs2_difference_port() {
    let r = stdout(&qsd(&["circuit", "bs2", "--state", "1", "--alpha", "0.5"]));
    assert!((click(&r, "D2") - (1.0 - (-0.5f64).exp())).abs() < 1e-12);
    assert_eq!(click(&r, "D1"), 0.0);
    assert!(r.contains("identified,1"));
}

#[test]
fn zero_amplitude_lights_nothing() {
    let r = stdout(&qsd(&["circuit", "fig3", "--state", "11", "--alpha", "0"]));
    for d in ["D1", "D2", "D3", "D4"] {
        assert_eq!(click(&r, d), 0.0);
    }
    assert!(r.contains("no_click,1"));
    assert!(r.contains("identified,none"));
    let r = stdout(&qsd(&["circuit", "bs2", "--amplitudes", "0,0"]));
    assert_eq!(click(&r, "D1"), 0.0);
}

#[test]
fn raw_amplitudes_match_family_state() {
    let a = stdout(&qsd(&["circuit", "fig3", "--amplitudes", "0.7,0.7,0.7,-0.7"]));
    let b = stdout(&qsd(&["circuit", "fig3", "--state", "00", "--alpha", "0.7"]));
    let tail = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(tail(&a), tail(&b));
}
