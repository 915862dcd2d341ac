//! Named instances reachable as `fixture:NAME` and through `mcq fixtures`.

use mconvex::fixtures;
use mconvex::linking::from_bipartite_subsets;
use serde_json::{json, Value};

use crate::json::{doc, fixture_to_json, linking_to_json};

/// Every fixture as a schema document, in a fixed order.
pub fn all() -> Vec<(String, Value)> {
    let mut out: Vec<(String, Value)> =
        fixtures::all().iter().map(|(name, fx)| (name.clone(), fixture_to_json(fx))).collect();
    let g = from_bipartite_subsets(&fixtures::ex3_6_graph()).expect("graph fixture");
    out.push(("ex3_6_induction".into(), doc(linking_to_json(&g))));
    out.push(("single_point".into(), doc(json!({ "ground": { "size": 3 }, "points": [[1, 0, 2]] }))));
    out
}

pub fn names() -> Vec<String> {
    all().into_iter().map(|(n, _)| n).collect()
}

pub fn fixture(name: &str) -> Option<Value> {
    all().into_iter().find(|(n, _)| n == name).map(|(_, v)| v)
}
