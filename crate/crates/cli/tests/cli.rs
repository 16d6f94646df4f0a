//! End-to-end checks of the command surface and exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathsketch"))
}

#[test]
fn gen_is_deterministic_and_valid() {
    let out1 = bin().args(["gen", "--seed", "9", "--h", "5", "--n", "12"]).output().unwrap();
    let out2 = bin().args(["gen", "--seed", "9", "--h", "5", "--n", "12"]).output().unwrap();
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout, "same seed must be byte-identical");
}

#[test]
fn path_roundtrip_exit_codes() {
    let dir = std::env::temp_dir().join("pathsketch-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let dom = dir.join("dom.json");
    let status = bin()
        .args(["gen", "--seed", "3", "--h", "4", "--n", "10", "--out"])
        .arg(&dom)
        .status()
        .unwrap();
    assert!(status.success());

    let out = bin()
        .args(["path", "--domain"])
        .arg(&dom)
        .args(["--from", "-8,-8", "--to", "20,20", "--eps", "0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("length "), "unexpected output: {text}");

    // A source inside an obstacle is a domain error: exit 1.
    let dom_text = std::fs::read_to_string(&dom).unwrap();
    let v: serde_json::Value = serde_json::from_str(&dom_text).unwrap();
    let inside = &v["obstacles"][0][0]; // a vertex; nudge toward centroid
    let (x, y) = (inside[0].as_f64().unwrap(), inside[1].as_f64().unwrap());
    let obs: Vec<(f64, f64)> = v["obstacles"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    let cx = obs.iter().map(|p| p.0).sum::<f64>() / obs.len() as f64;
    let cy = obs.iter().map(|p| p.1).sum::<f64>() / obs.len() as f64;
    let sx = 0.5 * (x + cx);
    let sy = 0.5 * (y + cy);
    let out = bin()
        .args(["path", "--domain"])
        .arg(&dom)
        .args(["--from", &format!("{sx},{sy}"), "--to", "20,20"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "inside-obstacle source should exit 1");

    // A malformed domain file is also exit 1.
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = bin().args(["path", "--domain"]).arg(&bad).args(["--from", "0,0", "--to", "1,1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn preprocess_then_query() {
    let dir = std::env::temp_dir().join("pathsketch-cli-test-q");
    std::fs::create_dir_all(&dir).unwrap();
    let dom = dir.join("dom.json");
    assert!(bin()
        .args(["gen", "--seed", "5", "--h", "3", "--n", "10", "--out"])
        .arg(&dom)
        .status()
        .unwrap()
        .success());
    let qs = dir.join("qs.json");
    assert!(bin()
        .args(["preprocess", "--domain"])
        .arg(&dom)
        .args(["--eps", "0.662", "--out"])
        .arg(&qs)
        .status()
        .unwrap()
        .success());
    let out = bin()
        .args(["query", "--structure"])
        .arg(&qs)
        .args(["--from", "-8,-8", "--to", "20,20"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("distance "));
}
