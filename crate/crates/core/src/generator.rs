//! Seeded instance generators. Every output is certified before it is
//! returned, and every generator is a pure function of its arguments.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::{MFunc, MNatFunc};
use crate::lattice::{bounding_box, full_mask, mask_len, ratio, total, GroundSet, LatticePoint, Rat, SubsetMask};
use crate::ops::{contraction_table, deletion_table, project};
use crate::quotient::check_compliant;
use crate::set::{is_submodular_table, submodular_to_set, MConvexSet, MNatSet, SubmodularFn};

/// Largest ground set the table generators accept.
pub const MAX_GEN_GROUND: usize = 10;

/// Draws allowed before the non-quotient generator gives up.
pub const REJECTION_CAP: usize = 10_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> SubsetMask {
    loop {
        let s = rng.gen_range(1..=full_mask(n));
        if s != 0 {
            return s;
        }
    }
}

/// Adds one random submodular building block, scaled by `scale`.
fn add_block(rng: &mut ChaCha8Rng, n: usize, scale: i64, table: &mut [i64]) {
    let size = table.len();
    match rng.gen_range(0..3) {
        0 => {
            let s = random_subset(rng, n);
            let a = rng.gen_range(1..=scale);
            let b = rng.gen_range(0..=scale);
            for (m, t) in table.iter_mut().enumerate() {
                *t += (a * mask_len(m as SubsetMask & s) as i64).min(b);
            }
        }
        1 => {
            let s = random_subset(rng, n);
            let k = rng.gen_range(0..=mask_len(s)) as i64;
            let c = rng.gen_range(1..=scale.max(2) / 2);
            for (m, t) in table.iter_mut().enumerate() {
                *t += c * (mask_len(m as SubsetMask & s) as i64).min(k);
            }
        }
        _ => {
            let mut blocks = vec![0 as SubsetMask; n];
            for i in 0..n {
                blocks[rng.gen_range(0..n)] |= 1 << i;
            }
            let caps: Vec<i64> = blocks.iter().map(|b| rng.gen_range(0..=mask_len(*b) as i64)).collect();
            let c = rng.gen_range(1..=scale.max(2) / 2);
            for m in 0..size {
                let r: i64 = blocks
                    .iter()
                    .zip(&caps)
                    .map(|(b, cap)| (mask_len(m as SubsetMask & b) as i64).min(*cap))
                    .sum();
                table[m] += c * r;
            }
        }
    }
}

fn submodular_from_rng(rng: &mut ChaCha8Rng, n: usize, scale: i64) -> Result<SubmodularFn> {
    if n == 0 || n > MAX_GEN_GROUND {
        return Err(Error::usage(alloc::format!("generator ground size must be in 1..={MAX_GEN_GROUND}")));
    }
    if scale < 0 {
        return Err(Error::usage("scale must be nonnegative"));
    }
    let size = 1usize << n;
    let mut table = vec![0i64; size];
    if scale > 0 {
        let modular: Vec<i64> = (0..n).map(|_| rng.gen_range(-scale..=scale)).collect();
        for (m, t) in table.iter_mut().enumerate() {
            *t += (0..n).filter(|i| m >> i & 1 == 1).map(|i| modular[i]).sum::<i64>();
        }
        let blocks = rng.gen_range(1..=3);
        for _ in 0..blocks {
            add_block(rng, n, scale, &mut table);
        }
    }
    if !is_submodular_table(&table) {
        return Err(Error::Disagreement("generated table is not submodular"));
    }
    SubmodularFn::from_trusted(GroundSet::new(n)?, table)
}

/// Random submodular table: a modular vector plus budget and matroid rank
/// blocks with nonnegative coefficients.
pub fn gen_submodular(seed: u64, n: usize, scale: i64) -> Result<SubmodularFn> {
    submodular_from_rng(&mut rng(seed), n, scale)
}

/// Lattice points of a random submodular table.
pub fn gen_mconvex(seed: u64, n: usize, scale: i64) -> Result<MConvexSet> {
    submodular_to_set(&gen_submodular(seed, n, scale)?)
}

/// Random M♮-convex set: the projection of an M-convex set on one more
/// element.
pub fn gen_mnat(seed: u64, n: usize, scale: i64) -> Result<MNatSet> {
    let p = gen_mconvex(seed, n + 1, scale)?;
    project(&p, full_mask(n))
}

/// Compliant pair: deletion and contraction of a random table on `E ⊔ {e}`.
pub fn gen_quotient_pair(seed: u64, n: usize, scale: i64) -> Result<(SubmodularFn, SubmodularFn)> {
    let r = gen_submodular(seed, n + 1, scale)?;
    let e = 1 << n;
    let p = deletion_table(&r, e)?;
    let q = contraction_table(&r, e)?;
    if !check_compliant(&p, &q)? {
        return Err(Error::Disagreement("deletion and contraction are not compliant"));
    }
    Ok((p, q))
}

/// Non-compliant pair with `rank(p) > rank(q)`, by rejection.
pub fn gen_non_quotient_pair(seed: u64, n: usize, scale: i64) -> Result<(SubmodularFn, SubmodularFn)> {
    let mut r = rng(seed);
    for _ in 0..REJECTION_CAP {
        let p = submodular_from_rng(&mut r, n, scale)?;
        let q = submodular_from_rng(&mut r, n, scale)?;
        if p.rank() > q.rank() && !check_compliant(&p, &q)? {
            return Ok((p, q));
        }
    }
    Err(Error::CapExceeded { what: "non-quotient rejection draws", size: REJECTION_CAP, cap: REJECTION_CAP })
}

fn random_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let den = rng.gen_range(1..=3);
    ratio(rng.gen_range(lo * den..=hi * den), den)
}

/// Random convex function on `lo..=hi` with `φ(lo) = 0`: nondecreasing
/// slopes with increments up to `curvature`.
fn convex_profile(rng: &mut ChaCha8Rng, lo: i64, hi: i64, curvature: i64) -> BTreeMap<i64, Rat> {
    let mut out = BTreeMap::new();
    let mut value = Rat::from_integer(0.into());
    let mut slope = if curvature > 0 { random_rat(rng, -curvature, curvature) } else { value.clone() };
    out.insert(lo, value.clone());
    for t in (lo + 1)..=hi {
        value += &slope;
        out.insert(t, value.clone());
        if curvature > 0 {
            slope += random_rat(rng, 0, curvature);
        }
    }
    out
}

fn separable_values(rng: &mut ChaCha8Rng, points: &[LatticePoint], curvature: i64) -> Vec<(LatticePoint, Rat)> {
    let (lo, hi) = bounding_box(points).expect("nonempty");
    let profiles: Vec<BTreeMap<i64, Rat>> =
        (0..lo.len()).map(|i| convex_profile(rng, lo[i], hi[i], curvature)).collect();
    points
        .iter()
        .map(|x| {
            let v = x.iter().enumerate().fold(Rat::from_integer(0.into()), |acc, (i, t)| acc + &profiles[i][t]);
            (x.clone(), v)
        })
        .collect()
}

/// Separable convex function on an M-convex set; `curvature = 0` gives
/// the indicator.
pub fn gen_m_func(seed: u64, p: &MConvexSet, curvature: i64) -> Result<MFunc> {
    let mut r = rng(seed);
    MFunc::new(p.ground().clone(), separable_values(&mut r, p.points(), curvature))
}

/// Separable convex function on an M♮-convex set.
pub fn gen_mnat_func(seed: u64, r: &MNatSet, curvature: i64) -> Result<MNatFunc> {
    let mut g = rng(seed);
    MNatFunc::new(r.ground().clone(), separable_values(&mut g, r.points(), curvature))
}

/// Arbitrary rational values on a point set, not certified.
pub fn gen_raw_func(seed: u64, p: &MConvexSet, spread: i64) -> Result<MFunc> {
    let mut r = rng(seed);
    let values = p.points().iter().map(|x| (x.clone(), random_rat(&mut r, -spread, spread))).collect();
    MFunc::from_trusted(p.ground().clone(), values)
}

/// 0/1 points of `{0,1}^n` with coordinate sum `m`.
pub fn hypersimplex(n: usize, m: usize) -> Vec<LatticePoint> {
    (0..1u32 << n)
        .filter(|s| mask_len(*s) == m)
        .map(|s| (0..n).map(|i| (s >> i & 1) as i64).collect())
        .collect()
}

/// Random valuated matroid whose minimizers form a sparse paving matroid:
/// non-bases are pairwise far apart, bases get value `c`, non-bases get
/// values strictly above `c`.
pub fn gen_sparse_paving(seed: u64, n: usize, m: usize) -> Result<MFunc> {
    if m > n || n > MAX_GEN_GROUND {
        return Err(Error::usage("sparse paving rank must be at most the ground size"));
    }
    let mut r = rng(seed);
    let mut all = hypersimplex(n, m);
    all.shuffle(&mut r);
    let mut nonbases: Vec<LatticePoint> = Vec::new();
    let m = m as i64;
    for x in &all {
        if nonbases.len() + 1 >= all.len() || !r.gen_bool(0.5) {
            continue;
        }
        let far = nonbases.iter().all(|y| x.iter().zip(y).map(|(a, b)| a.min(b)).sum::<i64>() <= m - 2);
        if far {
            nonbases.push(x.clone());
        }
    }
    let c = random_rat(&mut r, -3, 3);
    let values = all
        .iter()
        .map(|x| {
            let v = if nonbases.contains(x) { &c + random_rat(&mut r, 1, 4) } else { c.clone() };
            (x.clone(), v)
        })
        .collect();
    MFunc::new(GroundSet::new(n)?, values)
}

/// Random M-convex set of rank `total(x)` obtained by lifting through a
/// random linking set is left to callers; this draws a linking-set sized
/// M-convex set on `left + right` elements.
pub fn gen_linking_points(seed: u64, left: usize, right: usize, scale: i64) -> Result<MConvexSet> {
    gen_mconvex(seed, left + right, scale)
}

/// The coordinate sum of the first point, for quick rank lookups in tests.
pub fn rank_of(points: &[LatticePoint]) -> i64 {
    total(&points[0])
}
