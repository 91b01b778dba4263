use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtreelab"))
        .args(args)
        .env_remove("RTREELAB_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_psystem_passes() {
    let o = run(&["verify-psystem", "--system", "thompson", "--i", "1..4", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8 PASS, 0 FAIL"));
}

#[test]
fn p4_search_fails_with_a_witness() {
    let o = run(&["p4-search", "--system", "thompson", "--i", "1", "--format", "json", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &doc["reports"][0];
    assert_eq!(r["status"], "FAIL");
    assert!(r["witness"]["c"].is_object());
    assert_eq!(doc["config"]["levels"], "1..1");
}

#[test]
fn ball_dot_has_31_vertices() {
    let o = run(&["ball", "--system", "sym6", "--radius", "1", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph ball {"));
    assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("--")).count(), 31);
    assert_eq!(dot.matches(" -- ").count(), 30);
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["verify-edge-stab", "--i", "1..2", "--format", "json", "--no-timestamp"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let with_time = stdout(&run(&["verify-edge-stab", "--i", "1", "--format", "json"]));
    assert!(with_time.contains("\"timestamp\""));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify-psystem", "--system", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["ball", "--system", "thompson"]).status.code(), Some(2));
    assert_eq!(run(&["condition51", "--system", "sym6"]).status.code(), Some(2));
    assert_eq!(run(&["verify-psystem", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["ball", "--system", "sym6", "--radius", "9"]).status.code(), Some(2));
    assert_eq!(run(&["probe-distance", "--x", "{}"]).status.code(), Some(2));
}

#[test]
fn condition51_control_fails() {
    assert_eq!(run(&["condition51", "--system", "alt-chain", "--i", "1..3"]).status.code(), Some(0));
    assert_eq!(run(&["condition51", "--system", "ut-chain", "--i", "1..3"]).status.code(), Some(0));
    let o = run(&["condition51", "--system", "c2c4", "--i", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn probe_distance_csv() {
    let o = run(&["probe-distance", "--format", "csv", "--pairs", "0", "--j-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "x,y,status,value,d1,d2,d3,d4,d5");
    assert!(lines.next().unwrap().contains("STABILIZED(1),1,1,1,1,1,1"));
    assert!(lines.next().unwrap().ends_with("HEURISTIC(2, window=3)\",1,2,1,1,1,1"));
}

#[test]
fn output_directory_from_environment() {
    let dir = std::env::temp_dir().join(format!("rtreelab-cli-{}", std::process::id()));
    let o = Command::new(env!("CARGO_BIN_EXE_rtreelab"))
        .args(["britton-demo", "--format", "json", "--no-timestamp"])
        .env("RTREELAB_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(dir.join("britton-demo.json")).unwrap();
    assert!(written.contains("intersection_scan"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn arc_stab_and_verify_all() {
    let o = run(&["arc-stab", "--system", "sym6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("arc_stabilizer_exhaustive"));
    let o = run(&["verify-all", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
