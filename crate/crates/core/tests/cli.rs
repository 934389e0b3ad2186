use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_irpolar"));
    c.env_remove("IRPOLAR_OUT_DIR");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().arg("--out-dir").arg(dir).args(args).output().unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

#[test]
fn reliability_scenario_matches_golden_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = golden("reliability_n256.toml");
    let out = run(dir.path(), &["simulate", "--config", cfg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let got = std::fs::read_to_string(dir.path().join("simulate.csv")).unwrap();
    let want = std::fs::read_to_string(golden("reliability_n256.csv")).unwrap();
    assert_eq!(got, want);
}

#[test]
fn config_error_exits_1_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[main]\nkind = \"table\"\np0 = [0.5, 0.5]\np1 = [0.5, 0.4]\n[wiretap]\nkind = \"bec\"\neps = 0.5\n").unwrap();
    let out = run(dir.path(), &["capacity", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert!(!dir.path().join("capacity.csv").exists());
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(dir.path(), &["simulate", "--no-such-flag"])
            .status
            .code(),
        Some(1)
    );
    for cmd in ["polarize", "capacity", "simulate", "oracle"] {
        let out = bin().args([cmd, "--help"]).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("default") || cmd == "oracle" && text.contains("--leaves"));
    }
}

#[test]
fn budget_error_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let leaves = vec!["bec:0.5"; 16].join(",");
    let out = run(dir.path(), &["oracle", "--leaves", &leaves]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn infeasible_chain_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "simulate",
            "--main",
            "bec:0.2",
            "--wiretap",
            "bec:0.2",
            "--n",
            "128",
            "--blocks",
            "4",
            "--rho-r",
            "0.75",
            "--rho-w",
            "0.25",
            "--adversary-seed",
            "3",
            "--trials",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible chain"));
}

#[test]
fn polarize_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["polarize", "--eps", "0.5,0.5"]);
    assert!(out.status.success());
    let index = std::fs::read_to_string(dir.path().join("polarize_index.csv")).unwrap();
    assert_eq!(
        index,
        "index,z,i_cap,method\n1,0.75,0.25,bec_exact\n2,0.25,0.75,bec_exact\n"
    );
    assert!(dir.path().join("polarize_hist.csv").exists());
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("IRPOLAR_OUT_DIR", dir.path())
        .args([
            "capacity",
            "--main",
            "noiseless",
            "--wiretap",
            "noiseless",
            "--rho-r",
            "0.3",
            "--rho-w",
            "0.2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("A-WTC (noiseless)"));
    assert!(dir.path().join("capacity.csv").exists());
}

#[test]
fn oracle_mixed_n8_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("oracle.toml");
    let mut text = String::from("[oracle]\n");
    for k in 0..8 {
        text.push_str("[[oracle.leaves]]\n");
        text.push_str(match k % 3 {
            0 => "kind = \"bec\"\neps = 0.35\n",
            1 => "kind = \"bsc\"\np = 0.07\n",
            _ => "kind = \"table\"\np0 = [0.5, 0.3, 0.2]\np1 = [0.1, 0.3, 0.6]\n",
        });
    }
    std::fs::write(&cfg, text).unwrap();
    let out = run(dir.path(), &["oracle", "--config", cfg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("oracle.csv")).unwrap();
    assert_eq!(csv.lines().count(), 9);
}
