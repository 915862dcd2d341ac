//! Flags of M-convex sets: chains `P_0, …, P_k` of ascending rank with
//! `P_i ↠ P_{i−1}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quotient::{check_compliant, gpoly_points};
use crate::set::{check_mnat_convex, set_to_submodular, MConvexSet, MNatSet};

fn check_same_ground(flag: &[MConvexSet]) -> Result<()> {
    let first = flag.first().ok_or_else(|| Error::usage("empty flag"))?;
    for s in flag {
        crate::lattice::check_width(first.dim(), s.dim())?;
    }
    Ok(())
}

/// Ranks strictly ascend and every consecutive pair is a quotient.
pub fn check_flag(flag: &[MConvexSet]) -> Result<bool> {
    check_same_ground(flag)?;
    for w in flag.windows(2) {
        if w[1].rank() <= w[0].rank() {
            return Ok(false);
        }
        if !check_compliant(&set_to_submodular(&w[1])?, &set_to_submodular(&w[0])?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_consecutive(flag: &[MConvexSet]) -> bool {
    flag.windows(2).all(|w| w[1].rank() == w[0].rank() + 1)
}

/// Fills every rank gap with the middle layers of `G(upper, lower^#)`.
pub fn complete_flag(flag: &[MConvexSet]) -> Result<Vec<MConvexSet>> {
    if !check_flag(flag)? {
        return Err(Error::usage("input is not a flag"));
    }
    let mut out = Vec::new();
    out.push(flag[0].clone());
    for w in flag.windows(2) {
        if w[1].rank() > w[0].rank() + 1 {
            let r = gpoly_points(&set_to_submodular(&w[1])?, &set_to_submodular(&w[0])?)?;
            let layers = r.layers();
            out.extend(layers[1..layers.len() - 1].iter().cloned());
        }
        out.push(w[1].clone());
    }
    crate::ops::verify(is_consecutive(&out) && check_flag(&out)?, "completed flag is consecutive")?;
    Ok(out)
}

/// The layers of `G(p_top, p_bottom^#)` for a consecutive flag.
pub fn mnat_completion(flag: &[MConvexSet]) -> Result<Vec<MConvexSet>> {
    if !is_consecutive(flag) || !check_flag(flag)? {
        return Err(Error::usage("input is not a consecutive flag"));
    }
    let top = set_to_submodular(flag.last().expect("nonempty"))?;
    let bottom = set_to_submodular(&flag[0])?;
    let layers = gpoly_points(&top, &bottom)?.layers();
    crate::ops::verify(layers.len() == flag.len(), "completion has one layer per rank")?;
    crate::ops::verify(
        flag.iter().zip(&layers).all(|(a, b)| a.points().iter().all(|x| b.contains(x))),
        "flag members lie in their completed layers",
    )?;
    Ok(layers)
}

/// Union of the members, when it is a set.
pub fn flag_union(flag: &[MConvexSet]) -> Result<Vec<crate::lattice::LatticePoint>> {
    check_same_ground(flag)?;
    let mut pts: Vec<_> = flag.iter().flat_map(|s| s.points().iter().cloned()).collect();
    crate::lattice::canonicalize(&mut pts);
    Ok(pts)
}

/// The union is M♮ and its layers are exactly the members.
pub fn is_mnat_flag(flag: &[MConvexSet]) -> Result<bool> {
    let pts = flag_union(flag)?;
    if !check_mnat_convex(&pts)? {
        return Ok(false);
    }
    let r = MNatSet::from_trusted(flag[0].ground().clone(), pts)?;
    let layers = r.layers();
    Ok(layers.len() == flag.len() && layers.iter().zip(flag).all(|(a, b)| a.points() == b.points()))
}
