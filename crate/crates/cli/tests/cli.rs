use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const PD: [&str; 8] = ["--r", "3", "--s", "0", "--t", "5", "--p", "1"];

fn with_pd<'a>(cmd: &[&'a str]) -> Vec<&'a str> {
    let mut v = cmd.to_vec();
    v.extend(PD);
    v
}

fn diag_game(p1: [f64; 4], p2: [f64; 4], rho0: &str) -> String {
    let diag = |d: [f64; 4]| {
        let rows: Vec<String> = (0..4)
            .map(|i| {
                let cells: Vec<String> = (0..4)
                    .map(|j| format!("[{}, 0]", if i == j { d[i] } else { 0.0 }))
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    };
    format!(
        r#"{{"rho0": {rho0}, "P1": {}, "P2": {}}}"#,
        diag(p1),
        diag(p2)
    )
}

const RHO_UU: &str = "[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]";

#[test]
fn build_writes_tensors_with_reward_in_the_corner() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let out = qgame(
        &[
            &with_pd(&["build"])[..],
            &["--output", path.to_str().unwrap()],
        ]
        .concat(),
    );
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(floats(&v["tensors"][0]["H"][0][0]), vec![3.0, 0.0]);
    assert_eq!(floats(&v["tensors"][1]["H"][5][5]), vec![1.0, 0.0]);
    assert_eq!(v["tensors"][0]["classical"].as_array().unwrap().len(), 4);
}

#[test]
fn identity_scales_give_four_equal_nonzero_eigenvalues() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "g.json", &diag_game([1.0; 4], [1.0; 4], RHO_UU));
    let v = json_of(&qgame(&["spectrum", "--game", &game]));
    let ev = floats(&v["eigenvalues"]);
    for x in &ev[..4] {
        assert!((x - 4.0).abs() < 1e-9, "{ev:?}");
    }
    assert!(ev[4..].iter().all(|x| x.abs() < 1e-9));
}

#[test]
fn general_initial_state_gives_hermitian_tensors() {
    let rho0 = "[[[0.5,0],[0,0.25],[0,0],[0.1,0]],[[0,-0.25],[0.3,0],[0,0],[0,0]],[[0,0],[0,0],[0.1,0],[0,0]],[[0.1,0],[0,0],[0,0],[0.1,0]]]";
    let dir = tempfile::tempdir().unwrap();
    let game = write(
        dir.path(),
        "g.json",
        &diag_game([3.0, 0.0, 5.0, 1.0], [3.0, 5.0, 0.0, 1.0], rho0),
    );
    let v = json_of(&qgame(&["build", "--game", &game]));
    for t in v["tensors"].as_array().unwrap() {
        let h = &t["H"];
        for i in 0..16 {
            for j in 0..16 {
                let a = floats(&h[i][j]);
                let b = floats(&h[j][i]);
                assert!((a[0] - b[0]).abs() <= 1e-12 && (a[1] + b[1]).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn spectrum_of_the_dilemma() {
    let v = json_of(&qgame(&with_pd(&["spectrum", "--player", "1"])));
    let ev = floats(&v["eigenvalues"]);
    let mut want = vec![20.0, 12.0, 4.0];
    want.extend([0.0; 13]);
    for (a, b) in ev.iter().zip(&want) {
        assert!((a - b).abs() < 1e-9, "{ev:?}");
    }
}

#[test]
fn pareto_profile_pays_the_reward() {
    let v = json_of(&qgame(&[
        "payoff",
        "--u1",
        "theta=0,phi=1.5707963",
        "--u2",
        "theta=0,phi=1.5707963",
    ]));
    for e in floats(&v["payoffs"]) {
        assert!((e - 3.0).abs() < 1e-9);
    }
}

#[test]
fn unitary_scan_finds_only_mutual_punishment() {
    let v = json_of(&qgame(&with_pd(&["ne-scan"])));
    let eq = v["equilibria"].as_array().unwrap();
    assert!(!eq.is_empty());
    for r in eq {
        for e in floats(&r["payoffs"]) {
            assert!((e - 1.0).abs() < 1e-12, "{e}");
        }
        for side in r["state"]["profile"].as_array().unwrap() {
            let gamma = side["gamma"].as_f64().unwrap();
            assert!((gamma - std::f64::consts::PI).abs() < 1e-12);
        }
    }
}

#[test]
fn classical_scan_and_csv_output() {
    let v = json_of(&qgame(&with_pd(&["ne-scan", "--set", "classical"])));
    assert_eq!(v["count"].as_u64(), Some(1));
    let csv = qgame(&with_pd(&["ne-scan", "--grid", "4", "--format", "csv"]));
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("gamma1,gamma2,E1,E2,margin\n"));
    assert!(text.lines().count() > 1);
}

#[test]
fn theorem_check_passes_and_fails_with_proper_status() {
    for sampling in ["arbitrary", "unitary"] {
        let v = json_of(&qgame(&with_pd(&[
            "verify-theorem",
            "--sampling",
            sampling,
        ])));
        assert_eq!(v["passed"], Value::Bool(true));
        assert!(v["max_rel_discrepancy"].as_f64().unwrap() <= 1e-10);
    }
    let strict = qgame(&with_pd(&[
        "verify-theorem",
        "--samples",
        "50",
        "--tol.theorem",
        "1e-300",
    ]));
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn non_hermitian_scale_is_rejected_before_running() {
    let p1 = "[[[3,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[5,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]]";
    let p2 = "[[[3,0],[0,0],[0,0],[0,0]],[[0,0],[5,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]]";
    let dir = tempfile::tempdir().unwrap();
    let game = write(
        dir.path(),
        "g.json",
        &format!(r#"{{"rho0": {RHO_UU}, "P1": {p1}, "P2": {p2}}}"#),
    );
    let out = qgame(&["verify-theorem", "--game", &game]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("P1"));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_ne_reads_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let sm = write(
        dir.path(),
        "sm.json",
        r#"{"factors": [[[1,0],[0,0],[1,0],[0,0]], [[1,0],[0,0],[1,0],[0,0]]]}"#,
    );
    let v = json_of(&qgame(&with_pd(&["verify-ne", "--state", &sm])));
    assert_eq!(v["kind"], "none");
    assert!((v["deviation_margin"].as_f64().unwrap() - 8.0).abs() < 1e-9);

    let flip = write(
        dir.path(),
        "flip.json",
        r#"{"profile": [{"alpha": 0, "beta": 0, "gamma": 3.141592653589793}, {"alpha": 1, "beta": -2, "gamma": 3.141592653589793}]}"#,
    );
    let v = json_of(&qgame(&with_pd(&[
        "verify-ne",
        "--state",
        &flip,
        "--set",
        "unitary",
    ])));
    assert_eq!(v["kind"], "unitary-ne");

    let bad = write(
        dir.path(),
        "bad.json",
        "{\n  \"vector\": [[1, 0],\n    nope]\n}",
    );
    let out = qgame(&with_pd(&["verify-ne", "--state", &bad]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3 column"));
}

#[test]
fn best_response_to_cooperation_is_defection() {
    let v = json_of(&qgame(&with_pd(&[
        "best-response",
        "--opponent",
        "theta=0,phi=0",
    ])));
    assert!((v["unitary"]["payoff"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    assert!(
        (v["unitary"]["params"]["theta"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-12
    );
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        with_pd(&["ne-scan", "--tol.ne", "0"]),
        with_pd(&["ne-scan", "--grid", "1"]),
        with_pd(&["build", "--format", "csv"]),
        with_pd(&["best-response", "--opponent", "theta=0", "--grid", "4"]),
        with_pd(&["payoff", "--u1", "spin=1", "--u2", "Nc"]),
        vec!["build", "--game", "/nonexistent/game.json"],
        vec!["frobnicate"],
    ] {
        let out = qgame(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for cmd in [
        &["ges"][..],
        &["spectrum", "--player", "2"],
        &["verify-theorem", "--samples", "20", "--seed", "7"],
    ] {
        let a = qgame(&with_pd(cmd));
        let b = qgame(&with_pd(cmd));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{cmd:?}");
    }
}
