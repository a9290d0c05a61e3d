use std::fs;
use std::process::{Command, Output};

fn ecaspectrum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecaspectrum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn rules_lists_all_canonical_orbits() {
    let out = ecaspectrum(&["rules"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("88 canonical rules"));
    assert_eq!(lines.len(), 89);
    assert!(lines.contains(&"110: 110 124 137 193"));
    assert!(lines.contains(&" 30: 30 86 135 149"));
}

#[test]
fn small_run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = ecaspectrum(&[
        "run",
        "--rules",
        "30,110",
        "--width",
        "600",
        "--tmax",
        "20",
        "--seeds",
        "1-2",
        "--out",
        out_dir.to_str().unwrap(),
        "--pbm",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(out_dir.join("traces.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("rule,seed,t,c_q,c_mu,n_states,gram_dim"));
    // schedule 1..=9, 10, 20 for 2 rules x 2 seeds
    assert_eq!(lines.count(), 2 * 2 * 11);
    for name in [
        "report.json",
        "rule_030.svg",
        "rule_110.svg",
        "rule_030_seed_1.pbm",
        "rule_110_seed_2.pbm",
    ] {
        assert!(out_dir.join(name).exists(), "{name} missing");
    }
    assert!(stdout(&out).contains("rank  rule"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("res");
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        format!(
            "# tiny run\nrules = 54\nwidth = 400\ntmax = 12\nseeds = 3\nformat = csv\nclassical = false\nout = {}\n",
            out_dir.display()
        ),
    )
    .unwrap();
    let out = ecaspectrum(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--tmax",
        "15",
        "--classical",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(out_dir.join("traces.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.last().unwrap().starts_with("54,3,15,"));
    // --classical overrides the file, so c_mu is filled
    assert!(rows.iter().all(|r| !r.split(',').nth(4).unwrap().is_empty()));
    assert!(!out_dir.join("report.json").exists());
}

#[test]
fn no_classical_leaves_columns_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = ecaspectrum(&[
        "run",
        "--rules",
        "90",
        "--width",
        "300",
        "--tmax",
        "5",
        "--seeds",
        "1",
        "--no-classical",
        "--format",
        "csv",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("traces.csv")).unwrap();
    for row in csv.lines().skip(1) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!((cols[4], cols[5]), ("", ""), "{row}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["run", "--rules", "300"],
        vec!["run", "--width", "abc"],
        vec!["run", "--chi2-alpha", "1.5"],
        vec!["run", "--bogus"],
        vec!["frobnicate"],
        vec![],
        vec!["run", "--config", "/definitely/not/here.cfg"],
    ] {
        let out = ecaspectrum(&args);
        assert_eq!(
            out.status.code(),
            Some(1),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(ecaspectrum(&["--help"]).status.code(), Some(0));
    assert_eq!(ecaspectrum(&["--version"]).status.code(), Some(0));
    assert!(stdout(&ecaspectrum(&["run", "--help"])).contains("--kink-filter"));
}

#[test]
fn runtime_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let out = ecaspectrum(&[
        "run",
        "--rules",
        "0",
        "--width",
        "100",
        "--tmax",
        "3",
        "--seeds",
        "1",
        "--out",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("file"));
}
