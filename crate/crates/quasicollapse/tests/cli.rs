//! End-to-end runs of the `quasicollapse` binary: exit codes, config/flag
//! precedence, output determinism, and the shape of each command's table or
//! report.

use std::path::Path;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasicollapse"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.conf");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn spectrum_output_is_identical_across_worker_counts() {
    let args = [
        "spectrum",
        "--epsilon_start",
        "0.05",
        "--epsilon_stop",
        "0.2",
        "--epsilon_count",
        "3",
        "--levels",
        "6",
    ];
    let single = binary()
        .args(args)
        .env("QUASICOLLAPSE_THREADS", "1")
        .output()
        .unwrap();
    let pooled = binary()
        .args(args)
        .env("QUASICOLLAPSE_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(single.status.code(), Some(0), "{}", stderr(&single));
    assert_eq!(single.stdout, pooled.stdout, "worker count changed the bytes");

    let text = stdout(&single);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "epsilon,level_index,quasienergy,trusted_flag");
    assert_eq!(lines.len(), 1 + 3 * 6);
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn flags_override_config_file_keys() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "# crossed-field table\n\ne_field = 0\nb_field = 2  # overridden below\nn_levels = 2\n",
    );
    let out = run(&["dirac", "--config", &config, "--b_field", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k2,k3,E,B,energy_plus,energy_minus,regime");
    assert_eq!(lines.len(), 3);
    let e0 = (2.0_f64 * 3.0).sqrt();
    let e1 = (4.0_f64 * 3.0).sqrt();
    assert_eq!(lines[1], format!("0,0,0,0,3,{e0},{},discrete", -e0));
    assert_eq!(lines[2], format!("1,0,0,0,3,{e1},{},discrete", -e1));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "e_field = 0\nb_field = 1\nbogus = 7\n");
    let out = run(&["dirac", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("bogus"), "stderr should name the key: {err}");
}

#[test]
fn malformed_config_line_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "e_field = 0\nb_field 1\n");
    let out = run(&["dirac", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 2"), "stderr should point at the line: {err}");
}

#[test]
fn invalid_threads_env_is_rejected() {
    let out = binary()
        .args(["spectrum", "--epsilon_start", "0.1", "--epsilon_stop", "0.2", "--epsilon_count", "2"])
        .env("QUASICOLLAPSE_THREADS", "plenty")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("QUASICOLLAPSE_THREADS"));
}

#[test]
fn spectrum_require_convergence_exits_3_above_critical() {
    let out = run(&[
        "spectrum",
        "--epsilon_start",
        "0.6",
        "--epsilon_stop",
        "0.7",
        "--epsilon_count",
        "2",
        "--levels",
        "4",
        "--n_max",
        "512",
        "--require_convergence",
        "true",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("no convergence"), "{err}");
    assert!(err.contains("512"), "stderr should name the cap: {err}");
}

#[test]
fn spectrum_is_isospectral_between_bare_and_eta_runs() {
    let eta = 0.5_f64;
    let reduce = (1.0 - eta * eta).sqrt() / (1.0 + eta);
    let lambda_prime = 4.0 / 3.0;
    let stops = [0.6, 0.9];

    let eta_run = run(&[
        "spectrum",
        "--lambda",
        &format!("{lambda_prime}"),
        "--eta",
        &format!("{eta}"),
        "--epsilon_start",
        &format!("{}", stops[0]),
        "--epsilon_stop",
        &format!("{}", stops[1]),
        "--epsilon_count",
        "2",
        "--levels",
        "4",
    ]);
    let bare_run = run(&[
        "spectrum",
        "--lambda",
        &format!("{}", lambda_prime * (1.0 - eta * eta).sqrt()),
        "--epsilon_start",
        &format!("{}", stops[0] * reduce),
        "--epsilon_stop",
        &format!("{}", stops[1] * reduce),
        "--epsilon_count",
        "2",
        "--levels",
        "4",
    ]);
    assert_eq!(eta_run.status.code(), Some(0), "{}", stderr(&eta_run));
    assert_eq!(bare_run.status.code(), Some(0), "{}", stderr(&bare_run));

    let parse = |out: &Output| -> Vec<(f64, bool)> {
        stdout(out)
            .lines()
            .skip(1)
            .map(|line| {
                let cols: Vec<&str> = line.split(',').collect();
                (cols[2].parse().unwrap(), cols[3] == "true")
            })
            .collect()
    };
    let eta_rows = parse(&eta_run);
    let bare_rows = parse(&bare_run);
    assert_eq!(eta_rows.len(), 8);
    assert_eq!(bare_rows.len(), 8);
    for ((qa, ta), (qb, tb)) in eta_rows.iter().zip(&bare_rows) {
        if *ta && *tb {
            assert!(
                (qa - qb).abs() <= 1e-6,
                "trusted quasienergies diverge: {qa} vs {qb}"
            );
        }
    }
    assert!(
        eta_rows.iter().filter(|(_, t)| *t).count() >= 6,
        "most levels should be trusted below critical"
    );
}

#[test]
fn polarization_rows_follow_the_regimes() {
    let out = run(&[
        "polarization",
        "--epsilon_start",
        "0.3",
        "--epsilon_stop",
        "0.7",
        "--epsilon_count",
        "5",
        "--n_max",
        "128",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "epsilon,re_sigma,im_sigma,source");
    // 0.4, 0.5, 0.6 sit within one grid step of the transition and are
    // skipped; 0.3 gets analytic + numeric, 0.7 gets the two branches
    assert_eq!(lines.len(), 5);

    let row = |i: usize| -> (f64, f64, f64, &str) {
        let cols: Vec<&str> = lines[i].split(',').collect();
        (cols[0].parse().unwrap(), cols[1].parse().unwrap(), cols[2].parse().unwrap(), cols[3])
    };
    let (eps, re, im, source) = row(1);
    assert_eq!((eps, source), (0.3, "analytic"));
    assert!(re.abs() < 1e-12 && (im - 0.6).abs() < 1e-12);
    let (eps, re, im, source) = row(2);
    assert_eq!((eps, source), (0.3, "numeric"));
    assert!(re.abs() < 1e-4 && (im - 0.6).abs() < 1e-4);

    let (eps_a, re_a, im_a, source_a) = row(3);
    let (eps_b, re_b, im_b, source_b) = row(4);
    assert_eq!((eps_a, eps_b), (0.7, 0.7));
    assert_eq!((source_a, source_b), ("analytic", "analytic"));
    assert!((re_a + re_b).abs() < 1e-12, "branch real parts should mirror");
    assert_eq!(im_a, im_b);
    assert!(((re_a * re_a + im_a * im_a).sqrt() - 1.0).abs() < 1e-12);
}

#[test]
fn collapse_fit_json_report_has_the_full_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fit.json");
    let out = binary()
        .args(["collapse-fit", "--epsilon_count", "12", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in [
        "lambda",
        "eta",
        "critical_predicted",
        "critical_detected",
        "grid_step",
        "exponent",
        "exponent_ci",
        "fit_residual",
        "points_used",
        "points",
    ] {
        assert!(report.get(key).is_some(), "report lacks `{key}`");
    }
    assert_eq!(report["points"].as_array().unwrap().len(), 12);
    assert!((report["critical_predicted"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((report["critical_detected"].as_f64().unwrap() - 0.5).abs() < 1e-3);
    assert!((report["exponent"].as_f64().unwrap() - 0.75).abs() < 0.02);
    let used = report["points"].as_array().unwrap().iter().filter(|p| p["used"] == true).count();
    assert_eq!(report["points_used"].as_u64().unwrap() as usize, used);
}

#[test]
fn verify_json_report_lists_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let out = binary()
        .args(["verify", "--draws", "50", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["suite"], "quasicollapse-verify");
    assert_eq!(report["exit_code"], 0);
    let checks = report["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        [
            "squeeze_identity",
            "optics_dirac_mapping",
            "boost_consistency",
            "pcf_gaussian",
            "weber_recurrence",
            "pcf_erfc",
            "pcf_hermite",
        ]
    );
    for check in checks {
        assert_eq!(check["pass"], true, "{check}");
        assert!(check["residual"].as_f64().unwrap() <= check["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn verify_flipped_squeeze_sign_fails_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.csv");
    let out = binary()
        .args(["verify", "--draws", "50", "--flip_squeeze_sign", "true", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("1 of 7 checks failed"));

    // the report is still written so the failure can be inspected
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "name,residual,tolerance,pass");
    assert_eq!(lines.len(), 8);
    assert!(lines[1].starts_with("squeeze_identity,") && lines[1].ends_with(",false"));
    for line in &lines[2..] {
        assert!(line.ends_with(",true"), "only the flipped check should fail: {line}");
    }
}

#[test]
fn dirac_rejects_a_regime_mismatch() {
    let out = run(&["dirac", "--e_field", "2", "--b_field", "1", "--require_regime", "discrete"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("continuous") && err.contains("discrete"), "{err}");
}

#[test]
fn dirac_leaves_energies_empty_outside_the_discrete_regime() {
    let out = run(&["dirac", "--e_field", "2", "--b_field", "1", "--n_levels", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "0,0,0,2,1,,,continuous");
    assert_eq!(lines[2], "1,0,0,2,1,,,continuous");

    let json = run(&["dirac", "--e_field", "2", "--b_field", "1", "--n_levels", "2", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["energy_plus"].is_null());
    assert_eq!(rows[0]["regime"], "continuous");
}

#[test]
fn file_output_matches_stdout_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let args = ["dirac", "--e_field", "0.5", "--b_field", "1.5", "--n_levels", "3"];
    let streamed = run(&args);
    let filed = binary().args(args).arg("--out").arg(&path).output().unwrap();
    assert_eq!(streamed.status.code(), Some(0));
    assert_eq!(filed.status.code(), Some(0));
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&streamed));
}
