//! Seeded agreement harness: every decider against generator labels, and
//! the four function quotient levels against each other.

use std::collections::BTreeMap;

use mconvex::function::{fn_quotient_levels, truncation_fn};
use mconvex::generator::{gen_m_func, gen_non_quotient_pair, gen_quotient_pair};
use mconvex::ops::truncate;
use mconvex::quotient::{quotient_suite, Caps, Verdict};
use mconvex::set::submodular_to_set;
use serde_json::{json, Value};

use crate::app::verdict_json;
use crate::error::CliError;

pub const DEFAULT_COUNT: usize = 12;

fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

fn verdict_map<K: ToString>(m: &BTreeMap<K, Verdict>) -> Value {
    let obj: serde_json::Map<String, Value> = m.iter().map(|(k, v)| (k.to_string(), verdict_json(v))).collect();
    Value::Object(obj)
}

/// Returns whether every check agreed, and the full record.
pub fn run(seed: u64, count: usize, caps: &Caps) -> Result<(bool, Value), CliError> {
    let mut sets = Vec::new();
    let mut functions = Vec::new();
    let mut disagreements = 0usize;
    for i in 0..count {
        let s = instance_seed(seed, i);
        let n = 2 + i % 2;
        let scale = 1 + (i % 3) as i64;
        for (label, pair) in [(true, gen_quotient_pair(s, n, scale)?), (false, gen_non_quotient_pair(s, n, scale)?)] {
            let (p, q) = (submodular_to_set(&pair.0)?, submodular_to_set(&pair.1)?);
            let report = quotient_suite(&p, &q, caps)?;
            let bad = report.verdicts.values().filter(|v| v.as_bool() == Some(!label)).count();
            disagreements += bad;
            sets.push(json!({
                "seed": s, "n": n, "scale": scale, "label": label,
                "verdicts": verdict_map(&report.verdicts), "disagreements": bad,
            }));
        }
        let p = submodular_to_set(&gen_quotient_pair(s, n, scale)?.0)?;
        if p.len() < 2 {
            continue;
        }
        let f = gen_m_func(s, &p, 1)?;
        let g_tr = truncation_fn(&f)?;
        let g_rand = gen_m_func(s ^ 1, &truncate(&p, 1)?, 1)?;
        for (kind, g) in [("truncation", g_tr), ("random", g_rand)] {
            let levels = fn_quotient_levels(&f, &g)?;
            let decided: Vec<bool> = levels.values().filter_map(Verdict::as_bool).collect();
            let mut bad = usize::from(decided.windows(2).any(|w| w[0] != w[1]));
            if kind == "truncation" && decided.iter().any(|b| !b) {
                bad += 1;
            }
            disagreements += bad;
            functions.push(json!({ "seed": s, "kind": kind, "levels": verdict_map(&levels), "disagreements": bad }));
        }
    }
    let agree = disagreements == 0;
    Ok((agree, json!({ "seed": seed, "count": count, "sets": sets, "functions": functions, "disagreements": disagreements })))
}
