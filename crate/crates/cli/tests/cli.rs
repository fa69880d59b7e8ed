use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_expcond"));
    c.env_remove("EXPCOND_ANGLE_SAMPLES").env("RUST_BACKTRACE", "0");
    c
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("expcond-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(c: &mut Command) -> Output {
    c.output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

const SQUARE: &str = r#"{"ambient_dim": 2, "vertices": [["0","0"],["1","0"],["0","1"],["1","1"]]}"#;

#[test]
fn index_of_one_variable_sum() {
    let r = report(&run(bin().args(["--json", "index", "-e", "exp(z) - 1"])));
    assert_eq!(r["results"]["exact"], "1/(2π)");
    let v = r["results"]["value"].as_f64().unwrap();
    assert!((v - 0.159154943).abs() < 1e-8);
    assert_eq!(r["seed"], 0);
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn fan_product_of_two_squares() {
    let sq = scratch("square.json", SQUARE);
    let out = run(bin().args(["--json", "fan", "dual"]).arg(&sq).args(["--dim", "1"]));
    let fan = scratch("square-fan.json", &String::from_utf8(out.stdout.clone()).unwrap());
    report(&out);
    let r = report(&run(bin().args(["--json", "fan", "multiply"]).arg(&fan).arg(&fan)));
    assert_eq!(r["results"]["zero_cone_weight"], "1");
}

#[test]
fn complex_rank_detects_degenerate_pair() {
    let pair = scratch(
        "pair.json",
        r#"[{"ambient_dim": 4, "vertices": [[0,0,0,0],[1,0,0,0]]},
            {"ambient_dim": 4, "vertices": [[0,0,0,0],[0,1,0,0]]}]"#,
    );
    let r = report(&run(bin().args(["--json", "rank"]).arg(&pair).arg("--complex")));
    assert_eq!(r["results"]["complex_rank"], -1);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "--seed", "7", "index", "-e", "exp(z1) + exp(i*z2) + 1", "-e", "exp(z2) + exp((1+i)*z1) - 2"];
    let a = run(bin().args(args));
    let b = run(bin().args(args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sample_count_comes_from_environment() {
    let r = report(&run(bin().env("EXPCOND_ANGLE_SAMPLES", "1234").args(["--json", "index", "-e", "exp(z) - 1"])));
    assert_eq!(r["samples"], 1234);
}

#[test]
fn bad_input_exits_with_two() {
    let out = run(bin().args(["index", "-e", "exp(z*z) - 1"]));
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let missing = std::env::temp_dir().join("expcond-cli-no-such-file.json");
    assert_eq!(run(bin().arg("pseudovolume").arg(missing)).status.code(), Some(2));
}

#[test]
fn failed_certification_exits_with_three() {
    let out = run(bin().args(["oracle", "zeros-disk", "-e", "exp(z) - 1", "--radius", "20", "--max-panels", "8"]));
    assert_eq!(out.status.code(), Some(3));
    let ok = report(&run(bin().args(["--json", "oracle", "zeros-disk", "-e", "exp(z) - 1", "--radius", "20"])));
    assert_eq!(ok["results"]["count"], 7);
}

#[test]
fn pseudovolume_of_square_in_c1() {
    let sq = scratch("square-pv.json", SQUARE);
    let r = report(&run(bin().args(["--json", "pseudovolume"]).arg(&sq)));
    let v = r["results"]["value"].as_f64().unwrap();
    assert!((v - 1.0 / std::f64::consts::PI).abs() < 1e-12, "{r}");
}
