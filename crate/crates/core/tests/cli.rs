use std::process::{Command, Output};

fn triq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triq")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn correlations_report_isotropic_value() {
    let o = triq(&["correlations", "--j", "6", "--eta", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["t3_central_b"].as_f64().unwrap() - 0.5).abs() < 0.03);
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
}

#[test]
fn fig_sweep_shape() {
    let o = triq(&["sweep", "--axis1", "j:-8:8:81", "--axis2", "eta:0:2:41", "--quantity", "t3", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "j,eta,t3,path");
    assert_eq!(body.len(), 3322);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["sweep", "--axis1", "j:1:1:5"],
        vec!["ground", "--format", "svg"],
        vec!["correlations", "--central", "D"],
        vec!["spectrum", "--bogus", "1"],
        vec!["thermal", "--temperature", "-1"],
    ] {
        let o = triq(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn heatmap_needs_two_axes() {
    let o = triq(&["sweep", "--axis1", "j:6:6:1", "--format", "svg", "--svg-kind", "heatmap"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[usage]"));
}

#[test]
fn config_file_and_out_path() {
    let dir = std::env::temp_dir().join(format!("triq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    let out = dir.join("curve.svg");
    std::fs::write(&cfg, "j=-4\ntcount=12\nformat=svg\n").unwrap();
    let o = triq(&["thermal", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("polyline"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn threads_do_not_change_bytes() {
    let run = |n: &str| {
        Command::new(env!("CARGO_BIN_EXE_triq"))
            .args(["sweep", "--axis1", "eta:0.2:2:19", "--axis2", "omega:0.6:1.6:11", "--j", "6", "--quantity", "t3,delta", "--temperatures", "0.05"])
            .env("TRIQ_THREADS", n)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("8"));
}

#[test]
fn validate_quick_passes() {
    let o = triq(&["validate", "--grid", "quick"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("pass"));
}

#[test]
fn classical_energy() {
    let o = triq(&["classical", "--couplings", "-1,-1,-1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["energy"].as_f64().unwrap() + 1.5).abs() < 1e-9);
}
