//! Acceptance: a fixed-seed study reduces to byte-identical summaries no
//! matter how many worker threads execute the replications.

use std::path::Path;
use std::process::Command;

fn run_study(dir: &Path, out_dir: &str, threads: &str) {
    let status = Command::new(env!("CARGO_BIN_EXE_xspectra"))
        .args([
            "study",
            "--model",
            "mc-arfima",
            "--T",
            "600",
            "--replications",
            "8",
            "--seed",
            "31337",
            "--rho-list",
            "0.4,0.8",
            "--m-frac-list",
            "0.1,0.3",
            "--out-dir",
            out_dir,
        ])
        .env("XSPECTRA_THREADS", threads)
        .current_dir(dir)
        .status()
        .expect("binary runs");
    assert!(status.success());
}

#[test]
fn criterion_9_study_deterministic_across_parallelism() {
    let dir = tempfile::tempdir().unwrap();
    // Serial first, then however many cores the host offers (0 = auto).
    run_study(dir.path(), "serial", "1");
    run_study(dir.path(), "parallel", "0");
    let serial = std::fs::read(dir.path().join("serial/summary.csv")).unwrap();
    let parallel = std::fs::read(dir.path().join("parallel/summary.csv")).unwrap();
    assert_eq!(
        serial, parallel,
        "acceptance 9 (study byte-identical at any parallelism): FAIL"
    );
    assert!(!serial.is_empty());
    println!("acceptance 9 (study byte-identical at any parallelism): PASS");
}
