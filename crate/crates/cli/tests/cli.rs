//! End-to-end tests of the command-line surface: exit codes, file
//! formats, determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_foldwing"))
}

fn default_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/default.cfg")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("failed to spawn foldwing")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn simulate_writes_exact_header_and_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let ts = dir.path().join("ts.csv");
    let summary = dir.path().join("s.json");
    let cfg = default_config();
    let out = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--twist-deg",
        "5",
        "--out",
        ts.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let text = fs::read_to_string(&ts).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,phi_deg,psi_deg,delta_a_deg,fx,fy,fz,mx,my,mz");
    let first: Vec<f64> =
        lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first.len(), 10);
    assert_eq!(first[0], 0.0);
    assert!((first[3] - 5.0).abs() < 1e-9);

    let summary_text = fs::read_to_string(&summary).unwrap();
    let json: serde_json::Value = serde_json::from_str(&summary_text).unwrap();
    for key in
        ["config_hash", "delta_a_deg", "l_bar", "m_bar", "n_bar", "thrust_bar", "lift_bar", "sign_l", "cycles_used"]
    {
        assert!(json.get(key).is_some(), "missing summary key {key}");
    }
    assert_eq!(json["sign_l"], 1);

    // second run must be byte-identical
    let ts2 = dir.path().join("ts2.csv");
    let summary2 = dir.path().join("s2.json");
    let out2 = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--twist-deg",
        "5",
        "--out",
        ts2.to_str().unwrap(),
        "--summary",
        summary2.to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    assert_eq!(fs::read(&ts).unwrap(), fs::read(&ts2).unwrap());
    assert_eq!(fs::read(&summary).unwrap(), fs::read(&summary2).unwrap());
}

#[test]
fn simulate_zero_twist_reports_sign_zero() {
    let dir = tempfile::tempdir().unwrap();
    let ts = dir.path().join("ts.csv");
    let summary = dir.path().join("s.json");
    let out = run(&[
        "simulate",
        "--config",
        default_config().to_str().unwrap(),
        "--twist-deg",
        "0",
        "--out",
        ts.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(json["sign_l"], 0);
}

#[test]
fn unknown_config_key_exits_two_naming_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    let text = fs::read_to_string(default_config()).unwrap().replace("inner_span_m", "spann_m");
    fs::write(&bad, text).unwrap();
    let out = run(&[
        "simulate",
        "--config",
        bad.to_str().unwrap(),
        "--twist-deg",
        "5",
        "--out",
        dir.path().join("x.csv").to_str().unwrap(),
        "--summary",
        dir.path().join("x.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("spann_m"), "{}", stderr(&out));
}

#[test]
fn compare_signs_flip_with_command_and_vanish_without() {
    let cfg = default_config();
    let dir = tempfile::tempdir().unwrap();

    let csv = |name: &str, twist: &str| -> Vec<(String, f64, String)> {
        let path = dir.path().join(name);
        let out = run(&[
            "compare",
            "--config",
            cfg.to_str().unwrap(),
            "--twist-deg",
            twist,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "variant,l_bar,sign");
        lines
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[0].to_string(), f[1].parse().unwrap(), f[2].to_string())
            })
            .collect()
    };

    let plus = csv("p.csv", "5");
    let zero = csv("z.csv", "0");
    let minus = csv("m.csv", "-5");

    let expect = [
        ("plane", "-"),
        ("flapper_flat_cruise", "-"),
        ("flapper_flat_hover", "-"),
        ("flapper_articulated", "+"),
    ];
    for ((name, _, sign), (expect_name, expect_sign)) in plus.iter().zip(expect) {
        assert_eq!(name, expect_name);
        assert_eq!(sign, expect_sign, "variant {name}");
    }
    for (_, _, sign) in &zero {
        assert_eq!(sign, "0");
    }
    for ((_, l_plus, s_plus), (_, l_minus, s_minus)) in plus.iter().zip(&minus) {
        assert!((l_plus + l_minus).abs() < 1e-9 * l_plus.abs());
        let flipped = match s_plus.as_str() {
            "+" => "-",
            "-" => "+",
            other => other,
        };
        assert_eq!(s_minus, flipped);
    }
}

#[test]
fn sweep_row_count_header_and_flat_degeneracy() {
    let dir = tempfile::tempdir().unwrap();
    // a fold-free-capable config: zero fold bias
    let cfg = dir.path().join("nofoldbias.cfg");
    let text = fs::read_to_string(default_config())
        .unwrap()
        .replace("psi_mid_deg = 40.0", "psi_mid_deg = 0.0");
    fs::write(&cfg, text).unwrap();

    let out_csv = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--param",
        "psi_amp_deg",
        "--from",
        "0",
        "--to",
        "80",
        "--steps",
        "17",
        "--twist-deg",
        "5",
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(&out_csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "param,value,l_bar,n_bar,thrust_bar");
    assert_eq!(lines.len(), 18, "17 data rows expected");
    assert!(lines[1].starts_with("psi_amp_deg,0"));

    // first row (psi_amp = 0, psi_mid = 0) equals the flat-cruise run of
    // the same base
    let flat_cfg = dir.path().join("flat.cfg");
    let flat_text = fs::read_to_string(&cfg)
        .unwrap()
        .replace("variant = \"flapper_articulated\"", "variant = \"flapper_flat_cruise\"")
        .replace("psi_amp_deg = 50.0", "psi_amp_deg = 0.0");
    fs::write(&flat_cfg, flat_text).unwrap();
    let ts = dir.path().join("flat_ts.csv");
    let summary = dir.path().join("flat.json");
    let out = run(&[
        "simulate",
        "--config",
        flat_cfg.to_str().unwrap(),
        "--twist-deg",
        "5",
        "--out",
        ts.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    let flat_l = json["l_bar"].as_f64().unwrap();
    let sweep_first: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
    assert!(
        (sweep_first - flat_l).abs() <= 1e-9 * flat_l.abs(),
        "sweep first row {sweep_first} vs flat run {flat_l}"
    );

    // companion plot script
    let gp = fs::read_to_string(out_csv.with_extension("gp")).unwrap();
    assert!(gp.contains("plot"));
    assert!(gp.contains("sweep.csv"));

    // deterministic re-run
    let out_csv2 = dir.path().join("sweep2.csv");
    let out = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--param",
        "psi_amp_deg",
        "--from",
        "0",
        "--to",
        "80",
        "--steps",
        "17",
        "--twist-deg",
        "5",
        "--out",
        out_csv2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let second = fs::read_to_string(&out_csv2).unwrap();
    assert_eq!(text, second);
}

#[test]
fn sweep_usage_errors() {
    let cfg = default_config();
    let out = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--param",
        "psi_amp_deg",
        "--from",
        "0",
        "--to",
        "80",
        "--steps",
        "1",
        "--twist-deg",
        "5",
        "--out",
        "/tmp/unused.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--param",
        "warp_drive",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "3",
        "--twist-deg",
        "5",
        "--out",
        "/tmp/unused.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("warp_drive"));
}

#[test]
fn mstatic_signs_and_exit_codes() {
    let cfg = default_config();
    let plus = run(&["mstatic", "--config", cfg.to_str().unwrap(), "--twist-deg", "5"]);
    assert!(plus.status.success(), "{}", stderr(&plus));
    assert!(stdout(&plus).contains("total moment: (+"));

    let zero = run(&["mstatic", "--config", cfg.to_str().unwrap(), "--twist-deg", "0"]);
    assert!(zero.status.success());

    let minus = run(&["mstatic", "--config", cfg.to_str().unwrap(), "--twist-deg", "-5"]);
    assert!(minus.status.success());
    assert!(stdout(&minus).contains("total moment: (-"));
}

#[test]
fn linkage_parallelogram_and_unassemblable() {
    let out = run(&[
        "linkage", "--a", "1", "--b", "2", "--c", "1", "--d", "2", "--theta2-deg", "30",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("change_point"), "{text}");
    assert!(text.contains("theta4 = 3.000000000e1"), "{text}");

    let out = run(&[
        "linkage", "--a", "1", "--b", "1", "--c", "1", "--d", "3.5", "--theta2-deg", "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not assemblable"));

    let out = run(&[
        "linkage", "--a", "1", "--b", "4", "--c", "3", "--d", "3", "--theta2-deg", "45",
        "--branch", "sideways",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn correlate_synthetic_and_empty_logs() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.csv");
    let mut text = String::from("t,ctrl,roll_deg\n");
    let dt = 0.01;
    let mut roll = 0.0f64;
    for k in 0..1200 {
        let t = k as f64 * dt;
        let ctrl = if (t / 2.0).floor() as i64 % 2 == 0 { 1.0 } else { -1.0 };
        let lagged = if ((t - 0.2) / 2.0).floor() as i64 % 2 == 0 { 1.0 } else { -1.0 };
        roll += lagged * dt;
        text.push_str(&format!("{t},{ctrl},{roll}\n"));
    }
    fs::write(&log, text).unwrap();
    let out = run(&["correlate", "--log", log.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("sign = +"), "{}", stdout(&out));

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "t,ctrl,roll_deg\n").unwrap();
    let out = run(&["correlate", "--log", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("empty log"));
}
