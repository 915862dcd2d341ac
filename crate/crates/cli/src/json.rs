//! The versioned JSON instance format.
//!
//! Every document carries `"schema": 1`. Keys come out sorted (serde_json's
//! default map is ordered) and point lists are canonical, so output is
//! byte-reproducible.

use std::collections::BTreeMap;

use mconvex::flags;
use mconvex::fixtures::Fixture;
use mconvex::function::{LinkingFn, MFunc, MNatFunc, PointValues};
use mconvex::lattice::{GroundSet, LatticePoint, Rat};
use mconvex::lift::LiftCertificate;
use mconvex::linking::{BipartiteGraph, LinkingSet};
use mconvex::set::{MConvexSet, MNatSet, SubmodularFn};
use serde_json::{json, Map, Value};

use crate::error::CliError;

pub const SCHEMA: u64 = 1;

type Res<T> = Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::usage(msg)
}

/// Wraps a body object with the schema tag.
pub fn doc(body: Value) -> Value {
    let mut m = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    m.insert("schema".into(), json!(SCHEMA));
    Value::Object(m)
}

pub fn check_schema(v: &Value) -> Res<()> {
    match v.get("schema") {
        None => Ok(()),
        Some(s) if s.as_u64() == Some(SCHEMA) => Ok(()),
        Some(s) => Err(bad(format!("unsupported schema version {s}"))),
    }
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn rat_from_json(v: &Value) -> Res<Rat> {
    match v {
        Value::String(s) => s.trim().parse::<Rat>().map_err(|_| bad(format!("bad rational {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| bad(format!("rational must be an integer or a \"num/den\" string, got {n}"))),
        _ => Err(bad("rational must be an integer or a \"num/den\" string")),
    }
}

pub fn parse_rat(s: &str) -> Res<Rat> {
    rat_from_json(&Value::String(s.into()))
}

pub fn ground_to_json(g: &GroundSet) -> Value {
    let mut m = Map::new();
    m.insert("size".into(), json!(g.size()));
    if let Some(l) = g.labels() {
        m.insert("labels".into(), json!(l));
    }
    Value::Object(m)
}

pub fn ground_from_json(v: &Value) -> Res<GroundSet> {
    let size = v.get("size").and_then(Value::as_u64).ok_or_else(|| bad("ground needs an integer \"size\""))? as usize;
    match v.get("labels") {
        None | Some(Value::Null) => Ok(GroundSet::new(size)?),
        Some(Value::Array(ls)) => {
            let labels = ls
                .iter()
                .map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("labels must be strings")))
                .collect::<Res<Vec<_>>>()?;
            if labels.len() != size {
                return Err(bad("label count differs from ground size"));
            }
            Ok(GroundSet::with_labels(labels)?)
        }
        Some(_) => Err(bad("labels must be an array")),
    }
}

pub fn point_to_json(x: &[i64]) -> Value {
    json!(x)
}

pub fn point_from_json(v: &Value) -> Res<LatticePoint> {
    v.as_array()
        .ok_or_else(|| bad("point must be an array of integers"))?
        .iter()
        .map(|c| c.as_i64().ok_or_else(|| bad("coordinates must be integers")))
        .collect()
}

pub fn points_to_json(ps: &[LatticePoint]) -> Value {
    let mut v = ps.to_vec();
    v.sort();
    v.dedup();
    json!(v)
}

pub fn points_from_json(v: &Value) -> Res<Vec<LatticePoint>> {
    v.as_array().ok_or_else(|| bad("\"points\" must be an array"))?.iter().map(point_from_json).collect()
}

/// Ground from the document, or inferred from the first point.
fn ground_or_infer(v: &Value, first: Option<&LatticePoint>) -> Res<GroundSet> {
    match v.get("ground") {
        Some(g) => ground_from_json(g),
        None => {
            let n = first.map(Vec::len).ok_or_else(|| bad("cannot infer the ground size of an empty document"))?;
            Ok(GroundSet::new(n)?)
        }
    }
}

pub fn raw_points(v: &Value) -> Res<(GroundSet, Vec<LatticePoint>)> {
    check_schema(v)?;
    let pts = points_from_json(v.get("points").ok_or_else(|| bad("expected a \"points\" array"))?)?;
    let g = ground_or_infer(v, pts.first())?;
    Ok((g, pts))
}

pub fn set_to_json(s: &MConvexSet) -> Value {
    json!({ "ground": ground_to_json(s.ground()), "points": points_to_json(s.points()) })
}

pub fn mnat_to_json(s: &MNatSet) -> Value {
    json!({ "ground": ground_to_json(s.ground()), "points": points_to_json(s.points()) })
}

pub fn table_to_json(t: &SubmodularFn) -> Value {
    let m: Map<String, Value> = t.table().iter().enumerate().map(|(a, v)| (a.to_string(), json!(v))).collect();
    json!({ "ground": ground_to_json(t.ground()), "table": m })
}

pub fn raw_table(v: &Value) -> Res<(GroundSet, Vec<i64>)> {
    check_schema(v)?;
    let m = v.get("table").and_then(Value::as_object).ok_or_else(|| bad("expected a \"table\" object"))?;
    let mut entries = BTreeMap::new();
    for (k, val) in m {
        let a: usize = k.parse().map_err(|_| bad(format!("table key {k:?} is not a bitmask")))?;
        let x = val.as_i64().ok_or_else(|| bad("table values must be integers"))?;
        entries.insert(a, x);
    }
    let len = entries.len();
    if !len.is_power_of_two() || entries.keys().copied().ne(0..len) {
        return Err(bad("table must list every subset of the ground set"));
    }
    let n = len.trailing_zeros() as usize;
    let g = match v.get("ground") {
        Some(g) => ground_from_json(g)?,
        None => GroundSet::new(n)?,
    };
    if g.size() != n {
        return Err(bad("table size differs from ground size"));
    }
    Ok((g, entries.into_values().collect()))
}

pub fn values_to_json<F: PointValues + ?Sized>(f: &F) -> Value {
    let vals: Vec<Value> = f.values().iter().map(|(x, v)| json!([point_to_json(x), rat_to_json(v)])).collect();
    json!({ "ground": ground_to_json(f.ground()), "values": vals })
}

pub fn raw_values(v: &Value) -> Res<(GroundSet, Vec<(LatticePoint, Rat)>)> {
    check_schema(v)?;
    let arr = v.get("values").and_then(Value::as_array).ok_or_else(|| bad("expected a \"values\" array"))?;
    let pairs = arr
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([x, r]) => Ok((point_from_json(x)?, rat_from_json(r)?)),
            _ => Err(bad("each value entry is [point, \"num/den\"]")),
        })
        .collect::<Res<Vec<_>>>()?;
    let g = ground_or_infer(v, pairs.first().map(|p| &p.0))?;
    Ok((g, pairs))
}

pub fn linking_to_json(l: &LinkingSet) -> Value {
    let mut v = set_to_json(l.set());
    v["left_size"] = json!(l.left_size());
    v
}

pub fn linking_from_json(v: &Value) -> Res<LinkingSet> {
    let left = v.get("left_size").and_then(Value::as_u64).ok_or_else(|| bad("linking sets need \"left_size\""))?;
    let (g, pts) = raw_points(v)?;
    let set = MConvexSet::new(g, pts)?;
    Ok(LinkingSet::from_set(set, left as usize)?)
}

pub fn linking_fn_to_json(l: &LinkingFn) -> Value {
    let mut v = values_to_json(l.function());
    v["left_size"] = json!(l.left().size());
    v
}

pub fn graph_to_json(g: &BipartiteGraph) -> Value {
    let edges: Vec<Value> =
        g.edges().iter().map(|(a, b, w)| json!([a, b, w.as_ref().map(rat_to_json).unwrap_or(Value::Null)])).collect();
    json!({ "left": g.left(), "right": g.right(), "edges": edges })
}

pub fn graph_from_json(v: &Value) -> Res<BipartiteGraph> {
    check_schema(v)?;
    let side = |k: &str| v.get(k).and_then(Value::as_u64).ok_or_else(|| bad(format!("graph needs \"{k}\"")));
    let (l, r) = (side("left")?, side("right")?);
    let arr = v.get("edges").and_then(Value::as_array).ok_or_else(|| bad("graph needs \"edges\""))?;
    let edges = arr
        .iter()
        .map(|e| {
            let e = e.as_array().ok_or_else(|| bad("edge must be [left, right, weight]"))?;
            let idx = |k: usize| e.get(k).and_then(Value::as_u64).map(|x| x as usize);
            let (a, b) = idx(0).zip(idx(1)).ok_or_else(|| bad("edge endpoints must be integers"))?;
            let w = match e.get(2) {
                None | Some(Value::Null) => None,
                Some(w) => Some(rat_from_json(w)?),
            };
            Ok((a, b, w))
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(BipartiteGraph::new(l as usize, r as usize, edges)?)
}

pub fn cert_to_json(c: &LiftCertificate) -> Value {
    json!({ "map": c.phi.targets(), "codomain": c.phi.codomain(), "shift": c.v, "lo": c.lo, "hi": c.hi })
}

pub fn flag_to_json(sets: &[MConvexSet]) -> Value {
    json!({ "sets": sets.iter().map(set_to_json).collect::<Vec<_>>() })
}

pub fn flag_from_json(v: &Value) -> Res<Vec<MConvexSet>> {
    check_schema(v)?;
    let arr = v.get("sets").and_then(Value::as_array).ok_or_else(|| bad("flags need a \"sets\" array"))?;
    arr.iter().map(|s| {
        let (g, p) = raw_points(s)?;
        Ok(MConvexSet::new(g, p)?)
    })
    .collect()
}

pub fn chain_to_json(fs: &[MFunc]) -> Value {
    json!({ "functions": fs.iter().map(values_to_json).collect::<Vec<_>>() })
}

pub fn chain_from_json(v: &Value) -> Res<Vec<MFunc>> {
    check_schema(v)?;
    let arr = v.get("functions").and_then(Value::as_array).ok_or_else(|| bad("chains need a \"functions\" array"))?;
    arr.iter().map(|f| {
        let (g, p) = raw_values(f)?;
        Ok(MFunc::new(g, p)?)
    })
    .collect()
}

/// Vertex coordinates and layer sizes for external plotting.
pub fn coords_for_points(ground: &GroundSet, pts: &[LatticePoint]) -> Res<Value> {
    let mut by_rank: BTreeMap<i64, Vec<LatticePoint>> = BTreeMap::new();
    for x in pts {
        by_rank.entry(x.iter().sum()).or_default().push(x.clone());
    }
    let mut layers = Vec::new();
    for (k, layer) in by_rank {
        let s = MConvexSet::from_trusted(ground.clone(), layer)?;
        let vertices = match mconvex::set::set_to_submodular(&s) {
            Ok(t) => points_to_json(&mconvex::set::vertex_set(&t)),
            Err(_) => Value::Null,
        };
        layers.push(json!({ "rank": k, "size": s.len(), "vertices": vertices }));
    }
    Ok(json!({ "layers": layers }))
}

/// Adds `"coords"` to a set document.
pub fn with_coords(mut v: Value, ground: &GroundSet, pts: &[LatticePoint], emit: bool) -> Res<Value> {
    if emit {
        v["coords"] = coords_for_points(ground, pts)?;
    }
    Ok(v)
}

pub fn flag_with_coords(sets: &[MConvexSet], emit: bool) -> Res<Value> {
    let mut v = flag_to_json(sets);
    if emit {
        let all = flags::flag_union(sets)?;
        v["coords"] = coords_for_points(sets[0].ground(), &all)?;
    }
    Ok(v)
}

pub fn mnat_fn_to_json(f: &MNatFunc) -> Value {
    values_to_json(f)
}

pub fn fixture_to_json(fx: &Fixture) -> Value {
    let body = match fx {
        Fixture::Set(s) => set_to_json(s),
        Fixture::MNat(p) | Fixture::Points(p) => {
            let n = p.first().map(Vec::len).unwrap_or(0);
            json!({ "ground": { "size": n }, "points": points_to_json(p) })
        }
        Fixture::Table(t) => table_to_json(t),
        Fixture::Flag(f) => {
            let sets: Vec<Value> = f
                .iter()
                .map(|p| json!({ "ground": { "size": p[0].len() }, "points": points_to_json(p) }))
                .collect();
            json!({ "sets": sets })
        }
        Fixture::Graph(g) => graph_to_json(g),
        Fixture::Functions(fs) => chain_to_json(fs),
    };
    doc(body)
}

/// Canonical text of a document: compact, sorted keys, trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values always serialize");
    s.push('\n');
    s
}
