use std::process::{Command, Output};

use amqc::spin::loglog_slope;

fn amqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amqc")).args(args).env("NO_COLOR", "1").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_suites_pass() {
    for suite in ["qudit", "qubus", "cross"] {
        let out = amqc(&["verify", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
        assert!(!stdout(&out).contains('\x1b'));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(amqc(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(amqc(&[]).status.code(), Some(2));
    assert_eq!(amqc(&["sweep", "--n-list", "0"]).status.code(), Some(2));
    assert_eq!(amqc(&["demo", "toffoli", "--n", "3", "--d", "3"]).status.code(), Some(2));
}

#[test]
fn sweep_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &std::path::Path| {
        vec![
            "sweep".to_string(),
            "--zeta-min".into(),
            "1".into(),
            "--zeta-max".into(),
            "50".into(),
            "--zeta-steps".into(),
            "50".into(),
            "--n-list".into(),
            "1e4,1e5,1e6,1e7,1e8,1e9".into(),
            "--out".into(),
            p.display().to_string(),
        ]
    };
    for p in [&a, &b] {
        let owned = args(p);
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        assert_eq!(amqc(&refs).status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "zeta_n,N,phi_f,phi_E,infidelity,phi_series,infid_series");
    assert_eq!(lines.len(), 1 + 50 * 6);
    let row = lines.iter().find(|l| l.starts_with("4.00000000000e1,10000000,")).expect("endpoint row");
    let fields: Vec<f64> = row.split(',').map(|f| f.parse().unwrap()).collect();
    assert!((fields[3] - 1.6e-4).abs() < 0.01e-4 && (fields[4] - 4.1e-5).abs() < 0.01e-5);
    let big = lines.iter().rev().find(|l| l.contains(",1000000000,")).unwrap();
    assert!(big.split(',').nth(3).unwrap().parse::<f64>().unwrap() < 3e-6);
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/out.csv");
    let out = amqc(&["sweep", "--zeta-steps", "2", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn contraction_table_converges() {
    let out = amqc(&["contraction", "--zeta", "2", "--n-min", "1000", "--n-max", "1000000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,phi_f,abs_err_phi,overlap,abs_err_overlap,prefactor"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    let slope = loglog_slope(&rows.iter().map(|r| (r[0], r[2])).collect::<Vec<_>>()).unwrap();
    assert!((-1.05..=-0.95).contains(&slope), "{slope}");
    assert!(rows.windows(2).all(|w| w[0][5] < w[1][5] && w[1][5] < 1.0));
    assert!((rows.last().unwrap()[3] - (-2.0f64).exp()).abs() < 1e-5);
}

#[test]
fn demos_report_counts() {
    let out = amqc(&["demo", "fan-bipartite", "--n", "4", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("16 gates via 16 interactions (naive: 64)"));
    let out = amqc(&["demo", "two-qubit", "--d", "2", "--x", "1", "--p", "1"]);
    assert!(stdout(&out).contains("= CZ"));
    let out = amqc(&["demo", "toffoli", "--n", "3", "--d", "5"]);
    assert!(stdout(&out).contains("7 sequence elements (6 displacements + 1 projected gate)"));
}
