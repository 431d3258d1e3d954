use std::process::Command;

use serde_json::Value;
use trop_core::{parse_polynomial_with_arity, SupertropicalValue};

fn trop(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_trop")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn eval_ghost_value() {
    let (code, out, _) = trop(&["eval", "-f", "x^2+3*x+6", "-a", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "\"6v\"");
    let (_, out, _) = trop(&["eval", "-f", "x^2+x+0", "-a", "0@1"]);
    assert_eq!(out.trim(), "\"0@3\"");
    let (_, out, _) = trop(&["eval", "-f", "x1 + x2", "-a", "1,1v"]);
    assert_eq!(out.trim(), "\"1v\"");
}

#[test]
fn classify_and_shell() {
    let (code, out, _) = trop(&["classify", "-f", "x^2 + 3*x + 6"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v[1]["class"], "QuasiEssential");
    assert_eq!(v[1]["term"], "3*x");
    let (_, out, _) = trop(&["shell", "-f", "2*x1^2 + 2*x2^2 + x1*x2 + 0"]);
    assert_eq!(json(&out), "2*x1^2 + 2*x2^2 + 0");
}

#[test]
fn factorizations_give_equal_products() {
    let args = |f: &str, g: &str| {
        let (code, out, _) = trop(&["equal", "-X", "plane", "-f", f, "-g", g]);
        (code, json(&out))
    };
    let p = |s: &str| parse_polynomial_with_arity::<SupertropicalValue>(s, 2).unwrap();
    let lhs = p("x2 + x1 + x1^2 + -1*x1^3").times(&p("x2 + 0 + x1^2 + -2*x1^4")).unwrap();
    let rhs = p("x2 + x1 + x1^2 + -2*x1^4").times(&p("x2 + 0 + x1^2 + -1*x1^3")).unwrap();
    let (code, v) = args(&lhs.to_string(), &rhs.to_string());
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
    let (code, v) = args("x1 + x2 + 0", "x1 + x2 + 1");
    assert_eq!(code, 1);
    assert!(v["disagreement"].is_array());
}

#[test]
fn admissibility_verdicts() {
    let (code, out, _) = trop(&["admissible", "-X", r#"{"corner":["x1 + x2 + 0", "x1 + x2 + 1"]}"#]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "Inadmissible");
    assert_eq!(v["witness"]["disagreement"], json("[[1,1],[1,1]]"));
    let (code, out, _) = trop(&["admissible", "-f", "x1 + x2 + 0"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["certificate"], "x1 + x2 + 0");
}

#[test]
fn witness_file_and_spec_file() {
    let dir = std::env::temp_dir().join(format!("trop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("x.json");
    std::fs::write(&spec, r#"{"erase": {"set": {"corner": ["x1 + x2 + 0"]}, "poly": 0, "terms": [0, 1]}}"#).unwrap();
    let wit = dir.join("w.json");
    std::fs::write(&wit, r#"[["x1", "x2"], ["x1 + x2", "0"]]"#).unwrap();
    let x = format!("@{}", spec.display());
    let w = format!("@{}", wit.display());
    let (code, out, _) = trop(&["admissible", "-X", &x, "--witnesses", &w]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["tested"], 2);
    assert_eq!(v["witness"]["f"], "x1 + x2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn locus_json_shape() {
    let (code, out, _) = trop(&["locus", "-f", "x1 + x2 + 0"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["arity"], 2);
    assert_eq!(v["vertices"], json("[[[0,1],[0,1]]]"));
    let edges = v["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 3);
    assert!(edges.iter().all(|e| e["v"] == 0 && e["dir"].is_array()));
    assert_eq!(v["annotations"]["0"].as_object().unwrap().len(), 4);

    let (_, out, _) = trop(&["locus", "--total", "-f", "x1^2*x2^2 + x1^2 + x2^2 + 0 + 1v*x1*x2"]);
    let v = json(&out);
    let faces = v["faces"].as_array().unwrap();
    assert!(faces.len() >= 4);
    assert!(faces.iter().all(|f| f["dir"].as_array().unwrap().is_empty()));
}

#[test]
fn layered_json_has_layers() {
    let (code, out, _) = trop(&["layered", "-f", "x1 + x2 + 0"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let layers: Vec<u64> = v["layers"].as_object().unwrap().values().map(|l| l.as_u64().unwrap()).collect();
    assert_eq!(layers.iter().filter(|&&l| l == 3).count(), 1);
    assert_eq!(layers.iter().filter(|&&l| l == 2).count(), 3);
}

#[test]
fn dimension_and_chains() {
    let (_, out, _) = trop(&["dim", "-f", "x1 + x2 + 0"]);
    assert_eq!(json(&out)["dimension"], 1);
    let (code, out, _) = trop(&["dim", "-X", "plane", "-X", r#"{"corner":["x1 + x2 + 0"]}"#, "-X", r#"{"point":["0","0"]}"#]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["length"], 2);
    assert_eq!(v["maximal"], true);
    let (code, out, _) = trop(&["dim", "-X", r#"{"point":["0","0"]}"#, "-X", "plane"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn render_is_deterministic() {
    let args = ["render", "-X", r#"{"corner":["x1 + 1*x2 + 1"]}"#, "-X", r#"{"corner":["x1*x2 + x1 + 0"]}"#, "--highlight"];
    let (code, a, _) = trop(&args);
    let (_, b, _) = trop(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert!(a.starts_with("<svg") && a.contains(r#"id="highlight""#));
    let (code, _, err) = trop(&["render", "-f", "x + 0"]);
    assert_eq!(code, 2);
    assert!(err.contains("arity"));
}

#[test]
fn errors_exit_two() {
    assert_eq!(trop(&["frobnicate"]).0, 2);
    assert_eq!(trop(&["eval", "-f", "x^2 +", "-a", "1"]).0, 2);
    assert_eq!(trop(&["eval", "-f", "x", "--bogus"]).0, 2);
    assert_eq!(trop(&["equal", "-X", r#"{"cone": []}"#, "-f", "x", "-g", "x"]).0, 2);
    assert_eq!(trop(&["--help"]).0, 0);
}
