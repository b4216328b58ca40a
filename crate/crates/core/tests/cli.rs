use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantor-approx")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cantor-approx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_reports_mixing_constant() {
    let o = run(&["analyze", &data("golden_mean"), "--canonical"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["N"], 2);
    assert_eq!(v["report"]["perfect"], true);
}

#[test]
fn canonical_output_is_deterministic() {
    let args = ["markers", &data("full_shift"), "--N", "2", "--k", "5", "--canonical"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("generated_at"));
}

#[test]
fn usage_and_input_errors_exit_1() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&run(&["analyze", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["analyze", "/nonexistent/graph.json"])), 1);
    let depths = ["approximate", &data("golden_mean"), &data("full_shift_map"), "--depths", "3..2"];
    assert_eq!(code(&run(&depths)), 1);
    // k must exceed 2N
    assert_eq!(code(&run(&["markers", &data("full_shift"), "--N", "2", "--k", "4"])), 1);
}

#[test]
fn refusals_exit_2() {
    assert_eq!(code(&run(&["markers", &data("single_loop"), "--N", "2", "--k", "5"])), 2);
    assert_eq!(code(&run(&["factor", &data("golden_mean"), &data("two_cycle")])), 2);
    let percon = run(&["approximate", &data("full_shift"), &data("two_three_shift_map"), "--depths", "2..3"]);
    assert_eq!(code(&percon), 2);
    assert!(String::from_utf8_lossy(&percon.stderr).contains("period 1"));
    let identity = run(&["approximate", &data("full_shift"), &data("identity_map"), "--depths", "1..2"]);
    assert_eq!(code(&identity), 2);
}

#[test]
fn approximate_then_report() {
    let out = scratch("golden.json");
    let dots = scratch("dots");
    let o = run(&[
        "approximate",
        &data("golden_mean"),
        &data("full_shift_map"),
        "--depths",
        "2..3",
        "--canonical",
        "--out",
        out.to_str().unwrap(),
        "--dot",
        dots.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dots.join("G_3.dot").exists());
    let r = run(&["report", out.to_str().unwrap()]);
    assert_eq!(code(&r), 0);
    let text = String::from_utf8_lossy(&r.stdout);
    assert!(text.contains("depth 2: verified") && text.contains("depth 3: verified"), "{text}");
}

#[test]
fn factor_lists_preimages() {
    let o = run(&["factor", &data("golden_mean"), &data("full_shift"), "--canonical"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pre = v["report"]["preimages"].as_array().unwrap();
    assert_eq!(pre.len(), 8);
    assert!(pre.iter().all(|p| p["kind"] != "empty"));
}
