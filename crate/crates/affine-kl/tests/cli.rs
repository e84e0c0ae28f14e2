//! End-to-end tests of the `affine-kl` binary: golden files, exit codes,
//! machine-readable errors, determinism, and the persisted-cache path.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_affine-kl"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("golden file")
}

#[test]
fn roots_d4_matches_golden() {
    assert_eq!(
        stdout_of(&["roots", "--type", "D4"]),
        golden("roots_d4.json")
    );
}

#[test]
fn subreg_mult_matches_golden() {
    assert_eq!(
        stdout_of(&[
            "subreg-mult",
            "--type",
            "D4",
            "--gamma",
            "1,0,0,0",
            "--all-i",
            "--format",
            "csv"
        ]),
        golden("subreg_mult_d4.csv")
    );
}

#[test]
fn inversekl_matches_golden() {
    assert_eq!(
        stdout_of(&["inversekl", "--type", "A2", "--gamma", "1,1"]),
        golden("inversekl_a2_theta.json")
    );
}

#[test]
fn char_tables_match_goldens() {
    assert_eq!(
        stdout_of(&[
            "char",
            "--type",
            "D4",
            "--lambda=-1,0,0,0,0",
            "--i",
            "0",
            "--radius",
            "2",
            "--route",
            "kw",
            "--format",
            "csv",
        ]),
        golden("char_d4_item1_kw_r2.csv")
    );
    assert_eq!(
        stdout_of(&[
            "char",
            "--type",
            "A2",
            "--lambda=-1,0,0",
            "--i",
            "0",
            "--radius",
            "6",
            "--route",
            "closed",
            "--format",
            "csv",
        ]),
        golden("char_a2_closed_r6.csv")
    );
    assert_eq!(
        stdout_of(&[
            "char",
            "--type",
            "A2",
            "--lambda=-1,0,0",
            "--i",
            "0",
            "--radius",
            "6",
            "--route",
            "kl",
            "--format",
            "csv",
        ]),
        golden("char_a2_kl_r6.csv")
    );
}

#[test]
fn output_is_deterministic_across_runs() {
    let args = [
        "char",
        "--type",
        "D4",
        "--lambda=0,1,-1,0,0",
        "--i",
        "2",
        "--radius",
        "4",
        "--route",
        "closed",
        "--provenance",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn selftest_quick_exits_zero() {
    let out = run(&["selftest", "--quick"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("selftest: PASS"), "{text}");
}

#[test]
fn subreg_verify_reports_pass() {
    let out = run(&["subreg-verify", "--type", "A2", "--cap", "6"]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["pairs_checked"].as_u64().unwrap() > 0);
}

#[test]
fn char_verify_fixture_family() {
    let out = run(&["char-verify", "--examples", "d4-items-1-4", "--radius", "6"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("PASS").count(), 4, "{text}");

    // Exploratory items report a diff with no correctness claim and always
    // exit zero.
    let out = run(&["char-verify", "--examples", "d4-items-5-7", "--radius", "6"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("EXPLORATORY").count(), 3, "{text}");
}

#[test]
fn usage_errors_exit_one_with_json() {
    let out = run(&["roots", "--type", "B3"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stderr).unwrap()).unwrap();
    assert_eq!(err["error"]["code"], "unsupported_type");

    let out = run(&["weyl", "--type", "A2", "--op", "nope", "--word", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cap_errors_exit_two() {
    let out = run(&["inversekl", "--type", "A2", "--gamma", "9,0", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stderr).unwrap()).unwrap();
    assert_eq!(err["error"]["code"], "cap_exceeded");
}

#[test]
fn cache_round_trip_is_transparent() {
    let dir = std::env::temp_dir().join(format!("affine-kl-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let args = ["inversekl", "--type", "A2", "--gamma", "2,1", "--cap", "10"];
    let cold = bin()
        .args(args)
        .env("AFFINE_KL_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(cold.status.success());
    assert!(
        std::fs::read_dir(&dir).unwrap().count() > 0,
        "cache file written"
    );
    let warm = bin()
        .args(args)
        .env("AFFINE_KL_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout, "cache must not change results");
    // And identical to the uncached run.
    let plain = run(&args);
    assert_eq!(plain.stdout, cold.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}
