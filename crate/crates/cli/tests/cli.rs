use std::io::Write;
use std::process::{Command, Stdio};

use mconvex::generator::{gen_m_func, gen_mconvex, gen_submodular};
use mconvex::lattice::{ratio, Rat};
use mconvex::set::submodular_to_set;
use mconvex_cli::json::{
    points_from_json, points_to_json, rat_from_json, rat_to_json, raw_table, raw_values, render, set_to_json,
    table_to_json, values_to_json,
};
use mconvex_cli::{run, Outcome};
use proptest::prelude::*;
use serde_json::{json, Value};

fn mcq(args: &[&str]) -> Outcome {
    let mut full = vec!["mcq"];
    full.extend_from_slice(args);
    run(full, None)
}

fn out_json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("stdout is not json ({e}): {:?}", o.stdout))
}

fn err_json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stderr).unwrap_or_else(|e| panic!("stderr is not json ({e}): {:?}", o.stderr))
}

fn write_tmp(name: &str, v: &Value) -> String {
    let dir = std::env::temp_dir().join(format!("mcq-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, render(v)).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn quotient_of_table_fixtures_is_true() {
    let o = mcq(&["quotient", "--p", "fixture:ex2_7_p", "--q", "fixture:ex2_7_q"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = out_json(&o);
    assert_eq!(v["consensus"], json!(true));
    assert_eq!(v["schema"], json!(1));
    for m in 1..=9 {
        assert_eq!(v["verdicts"][m.to_string()], json!(true), "method {m}");
    }
}

#[test]
fn single_point_is_m_convex() {
    let o = mcq(&["check", "m-convex", "--in", "fixture:single_point"]);
    assert_eq!(o.code, 0);
    assert_eq!(out_json(&o)["result"], json!(true));
}

#[test]
fn non_quotient_function_pair_exits_one() {
    let f = write_tmp("f.json", &json!({"schema": 1, "ground": {"size": 2}, "values": [[[1, 0], 0], [[0, 1], "1/2"]]}));
    let g = write_tmp("g.json", &json!({"schema": 1, "ground": {"size": 2}, "values": [[[-1, 1], 0]]}));
    let o = mcq(&["fn", "quotient", "D", "--f", &f, "--g", &g]);
    assert_eq!(o.code, 1);
    assert_eq!(out_json(&o)["verdict"], json!(false));
    let g0 = write_tmp("g0.json", &json!({"schema": 1, "ground": {"size": 2}, "values": [[[0, 0], 0]]}));
    let o = mcq(&["fn", "quotient", "all", "--f", &f, "--g", &g0]);
    assert_eq!(o.code, 0);
    assert_eq!(out_json(&o)["levels"], json!({"A": true, "B": true, "C": true, "D": true}));
}

#[test]
fn false_verdict_exits_one() {
    let s = write_tmp("bad.json", &json!({"schema": 1, "points": [[1, 0], [0, 2]]}));
    let o = mcq(&["check", "m-convex", "--in", &s]);
    assert_eq!(o.code, 1);
    assert_eq!(out_json(&o)["result"], json!(false));
}

#[test]
fn usage_errors_exit_two_with_error_json() {
    for args in [vec!["bogus"], vec!["check", "m-convex"], vec!["check", "m-convex", "--in", "fixture:no_such"]] {
        let o = mcq(&args);
        assert_eq!(o.code, 2, "{args:?}");
        assert!(o.stdout.is_empty());
        let e = err_json(&o);
        assert_eq!(e["schema"], json!(1));
        assert!(e["error"]["kind"].is_string() && e["error"]["message"].is_string(), "{e}");
    }
    let v2 = write_tmp("v2.json", &json!({"schema": 2, "points": [[1]]}));
    let o = mcq(&["check", "m-convex", "--in", &v2]);
    assert_eq!(o.code, 2);
    assert!(err_json(&o)["error"]["message"].as_str().unwrap().contains("schema"));
    let broken = std::env::temp_dir().join(format!("mcq-broken-{}.json", std::process::id()));
    std::fs::write(&broken, "{not json").unwrap();
    let o = mcq(&["check", "m-convex", "--in", broken.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert_eq!(err_json(&o)["error"]["kind"], json!("parse"));
}

#[test]
fn help_exits_zero() {
    let o = mcq(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("quotient"));
}

#[test]
fn caps_from_environment_and_flag() {
    let args = ["mcq", "quotient", "--p", "fixture:ex2_2_P", "--q", "fixture:ex2_2_Q", "--methods", "10"];
    let o = run(args, Some("compressed=3"));
    assert_eq!(o.code, 1);
    let v = out_json(&o);
    assert!(v["verdicts"]["10"]["skipped"].as_str().unwrap().contains("cap 3"), "{v}");
    assert_eq!(v["consensus"], Value::Null);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--caps", "compressed=5"]);
    let v = out_json(&run(with_flag, Some("compressed=3")));
    assert!(v["verdicts"]["10"]["skipped"].as_str().unwrap().contains("cap 5"), "flag overrides environment: {v}");
    let o = run(args, Some("compressed=banana"));
    assert_eq!(o.code, 2);
}

#[test]
fn emit_coords_adds_vertex_layers() {
    let plain = out_json(&mcq(&["ops", "truncate", "--in", "fixture:ex2_2_P"]));
    assert!(plain.get("coords").is_none());
    let v = out_json(&mcq(&["--emit-coords", "ops", "truncate", "--in", "fixture:ex2_2_P"]));
    let layers = v["coords"]["layers"].as_array().unwrap();
    assert_eq!(layers.len(), 1);
    assert_eq!(layers[0]["rank"], json!(0));
    assert_eq!(layers[0]["size"], json!(v["points"].as_array().unwrap().len()));
    assert!(!layers[0]["vertices"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_canonical() {
    let o = mcq(&["convert", "--in", "fixture:ex2_7_p"]);
    let v = out_json(&o);
    assert_eq!(o.stdout, render(&v));
    assert!(o.stdout.ends_with('\n') && !o.stdout.trim_end().contains('\n'));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(mcq(&["convert", "--in", "fixture:ex2_7_p"]).stdout, o.stdout);
}

#[test]
fn convert_round_trips_sets_and_tables() {
    let t = out_json(&mcq(&["convert", "--in", "fixture:ex2_7_p"]));
    let path = write_tmp("set.json", &t);
    let back = out_json(&mcq(&["convert", "--in", &path]));
    assert_eq!(back, json!(mconvex_cli::registry::fixture("ex2_7_p").unwrap()));
}

#[test]
fn binary_reads_stdin_and_environment() {
    let bin = env!("CARGO_BIN_EXE_mcq");
    let mut child = Command::new(bin)
        .args(["check", "m-convex", "--in", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"schema":1,"points":[[1,0,2]]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"result\":true,\"schema\":1}\n");
    let out = Command::new(bin)
        .args(["quotient", "--p", "fixture:ex2_2_P", "--q", "fixture:ex2_2_Q", "--methods", "10"])
        .env("MCQ_CAPS", "compressed=4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("cap 4"));
}

#[test]
fn gen_is_deterministic_and_loadable() {
    let a = mcq(&["gen", "m-convex", "--seed", "9", "--n", "3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, mcq(&["gen", "m-convex", "--seed", "9", "--n", "3"]).stdout);
    let path = write_tmp("gen.json", &out_json(&a));
    assert_eq!(mcq(&["check", "m-convex", "--in", &path]).code, 0);
}

#[test]
fn every_fixture_is_listed_and_loadable() {
    let v = out_json(&mcq(&["fixtures"]));
    let names = v["fixtures"].as_array().unwrap();
    assert_eq!(names.len(), mconvex_cli::registry::names().len());
    for n in names {
        let o = mcq(&["fixtures", n.as_str().unwrap()]);
        assert_eq!(o.code, 0, "{n}");
    }
}

#[test]
fn selftest_agrees() {
    let o = mcq(&["selftest", "--seed", "7", "--count", "3"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(out_json(&o)["disagreements"], json!(0));
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(r in arb_rat()) {
        let v = rat_to_json(&r);
        prop_assert!(v.as_str().unwrap().contains('/'));
        prop_assert_eq!(rat_from_json(&v).unwrap(), r);
    }

    #[test]
    fn points_round_trip(pts in prop::collection::vec(prop::collection::vec(-50i64..50, 3), 1..8)) {
        let mut canonical = pts.clone();
        canonical.sort();
        canonical.dedup();
        prop_assert_eq!(points_from_json(&points_to_json(&pts)).unwrap(), canonical);
    }

    #[test]
    fn tables_and_sets_round_trip(seed in 0u64..500, n in 1usize..4) {
        let t = gen_submodular(seed, n, 2).unwrap();
        let v: Value = serde_json::from_str(&render(&table_to_json(&t))).unwrap();
        let (g, table) = raw_table(&v).unwrap();
        prop_assert_eq!(g.size(), n);
        prop_assert_eq!(&table[..], t.table());
        let s = submodular_to_set(&t).unwrap();
        let back = mconvex_cli::app::set_from_value(&set_to_json(&s)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn function_values_round_trip(seed in 0u64..200, n in 2usize..4) {
        let p = gen_mconvex(seed, n, 1).unwrap();
        let f = gen_m_func(seed, &p, 2).unwrap();
        let v: Value = serde_json::from_str(&render(&values_to_json(&f))).unwrap();
        let (g, pairs) = raw_values(&v).unwrap();
        prop_assert_eq!(g.size(), n);
        let orig: Vec<_> = mconvex::PointValues::values(&f).iter().map(|(x, r)| (x.clone(), r.clone())).collect();
        prop_assert_eq!(pairs, orig);
    }
}
