use std::path::PathBuf;

use mconvex_cli::json::render;
use mconvex_cli::registry;
use mconvex_cli::run;
use serde_json::Value;

fn asset_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("assets/v1")
}

#[test]
fn assets_match_the_registry() {
    let mut on_disk: Vec<String> = std::fs::read_dir(asset_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().trim_end_matches(".json").to_string())
        .collect();
    on_disk.sort();
    let mut names = registry::names();
    names.sort();
    assert_eq!(on_disk, names);
    for (name, v) in registry::all() {
        let text = std::fs::read_to_string(asset_dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(text, render(&v), "asset {name} is stale");
    }
}

fn certify(name: &str, v: &Value) -> bool {
    let path = asset_dir().join(format!("{name}.json"));
    let path = path.to_str().unwrap();
    let check = |kind: &str| run(["mcq", "check", kind, "--in", path], None).code == 0;
    if v.get("points").is_some() {
        if name == "nonregular_gamma" {
            // A counterexample: the set must be rejected.
            return run(["mcq", "check", "m-convex", "--in", path], None).code == 1;
        }
        return check("m-convex") || check("mnat");
    }
    if v.get("table").is_some() {
        return check("submodular");
    }
    if v.get("values").is_some() {
        return check("m-func") || check("mnat-func");
    }
    if v.get("sets").is_some() {
        return run(["mcq", "flag", "check", "--in", path], None).code == 0;
    }
    if v.get("functions").is_some() {
        return run(["mcq", "flag", "constants", "--in", path], None).code == 0;
    }
    if v.get("edges").is_some() {
        return mconvex_cli::json::graph_from_json(v).is_ok();
    }
    false
}

#[test]
fn every_asset_certifies() {
    for (name, v) in registry::all() {
        assert!(certify(&name, &v), "asset {name} does not certify");
    }
}
