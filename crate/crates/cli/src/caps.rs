//! Size caps from `MCQ_CAPS` and `--caps`, both `key=value` lists such as
//! `vertex=8,lift=16,compressed=9,pairs=250000`.

use mconvex::Caps;

use crate::error::CliError;

pub const ENV_VAR: &str = "MCQ_CAPS";

pub fn apply(mut caps: Caps, text: &str) -> Result<Caps, CliError> {
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| CliError::usage(format!("cap {part:?} is not key=value")))?;
        let v: usize = v.trim().parse().map_err(|_| CliError::usage(format!("cap {k} needs a nonnegative integer")))?;
        match k.trim() {
            "vertex" => caps.vertex_n = v,
            "lift" => caps.lift_ground = v,
            "compressed" => caps.compressed_ground = v,
            "pairs" => caps.lift_pairs = v,
            other => return Err(CliError::usage(format!("unknown cap {other:?}"))),
        }
    }
    Ok(caps)
}

/// Defaults, then the environment, then the flag.
pub fn resolve(env: Option<&str>, flag: Option<&str>) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    if let Some(e) = env {
        caps = apply(caps, e)?;
    }
    if let Some(f) = flag {
        caps = apply(caps, f)?;
    }
    Ok(caps)
}
