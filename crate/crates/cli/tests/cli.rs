use std::process::{Command, Output};

use serde_json::Value;

fn funcdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_funcdyn")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn construct_sharp_emits_a_q_plus_1_cycle() {
    for q in [2, 3, 4, 5] {
        let out = funcdyn(&["construct", "sharp", "--q", &q.to_string()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert!(v["map"]["literal"].is_string());
        assert!(v["map"]["bad_places"].as_array().unwrap().len() <= 1);
        let cycle = v["orbits"][0]["cycle"].as_array().unwrap();
        assert_eq!(cycle.len(), q + 1);
        assert_eq!(cycle[0], "0");
    }
}

#[test]
fn emitted_literals_parse_back() {
    let v = json(&funcdyn(&["construct", "sharp", "--q", "3"]));
    let lit = v["map"]["literal"].as_str().unwrap();
    let again = json(&funcdyn(&["analyze", "--q", "3", "--map", lit]));
    assert_eq!(again["map"], v["map"]);

    let orbit = json(&funcdyn(&["orbit", "--q", "3", "--map", lit, "--start", "0"]));
    for p in orbit["cycle"].as_array().unwrap() {
        let out = funcdyn(&["orbit", "--q", "3", "--map", lit, "--start", p.as_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["start"], *p);
    }
}

#[test]
fn orbit_of_the_sharp_map() {
    let out = funcdyn(&["orbit", "--q", "2", "--map", "(X^2+1)/X^2", "--start", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["cycle"], serde_json::json!(["0", "inf", "1"]));
    assert_eq!(v["status"], "closed");
}

#[test]
fn verify_equidistance_on_the_sharp_map() {
    let out = funcdyn(&["verify", "equidistance", "--q", "2", "--map", "(X^2+1)/X^2", "--start", "0"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    for key in ["claim", "instance", "stats"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }

    let out = funcdyn(&["verify", "cycle-bounds", "--q", "2", "--map", "(X^2+1)/X^2", "--cycle", "0,inf,1"]);
    assert_eq!(code(&out), 0);
    let out = funcdyn(&["verify", "dichotomy", "--q", "2", "--map", "(X^2+1)/X^2", "--start", "0", "--place", "t"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn census_is_deterministic_and_passes() {
    let args = ["verify", "census", "--q", "2", "--deg", "2", "--family", "rational", "--sample-cap", "200", "--seed", "7"];
    let a = funcdyn(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let mut more = args.to_vec();
    more.extend(["--workers", "2"]);
    let b = funcdyn(&more);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["sampled"], true);
}

#[test]
fn failed_oracle_exits_1() {
    // One step is too few for the brute-force search to close the 2-cycle.
    let out = funcdyn(&["periodic", "--q", "2", "--map", "X^2+1", "--bound", "1", "--max-steps", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["oracle"]["status"], "mismatch");

    let out = funcdyn(&["periodic", "--q", "2", "--map", "X^2+1", "--bound", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["affine_count"], 2);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let out = funcdyn(&["orbit", "--q", "6", "--map", "X^2", "--start", "0"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());

    assert_eq!(code(&funcdyn(&["orbit", "--q", "2", "--map", "X^^2+", "--start", "0"])), 2);
    assert_eq!(code(&funcdyn(&["orbit", "--q", "2", "--map", "X^2"])), 2);
    assert_eq!(code(&funcdyn(&["bogus"])), 2);
    assert_eq!(code(&funcdyn(&["verify", "equidistance", "--q", "2", "--map", "X^2", "--cycle", "0,1"])), 2);
    // CSV exists only for analyze and orbit.
    assert_eq!(code(&funcdyn(&["construct", "sharp", "--q", "2", "--format", "csv"])), 2);
}

#[test]
fn table_and_csv_output() {
    let out = funcdyn(&["orbit", "--q", "2", "--map", "(X^2+1)/X^2", "--start", "0", "--format", "table"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("cycle  [0, inf, 1]"));

    let out = funcdyn(&["orbit", "--q", "2", "--map", "(X^2+1)/X^2", "--start", "0", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("map,cycle_length,place,delta"));
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("funcdyn-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = funcdyn(&["construct", "sharp", "--q", "2", "--out", p]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["orbits"][0]["cycle"].as_array().unwrap().len(), 3);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn field_flags() {
    let out = funcdyn(&["construct", "sharp", "--p", "2", "--k", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["orbits"][0]["cycle"].as_array().unwrap().len(), 5);
    let out = funcdyn(&["construct", "sharp", "--p", "2", "--modulus", "1,1,1"]);
    assert_eq!(code(&out), 0);
    // X^2 + 1 is reducible over F_2.
    assert_eq!(code(&funcdyn(&["construct", "sharp", "--p", "2", "--modulus", "1,0,1"])), 2);
    assert_eq!(code(&funcdyn(&["construct", "sharp", "--q", "8", "--p", "2", "--k", "2"])), 2);
}
