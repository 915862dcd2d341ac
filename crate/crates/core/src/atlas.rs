//! Every distinct minimizer pair `(f^u, g^u)` of two functions, read off
//! the lower convex hull of the lifted domain of `f □ g`.
//!
//! Heights are scaled to integers and the hull is computed on an affine
//! chart of the domain in checked `i128` arithmetic. Each lower face gets
//! a functional from the relative interior of its normal cone, and the
//! face is re-derived as an argmin before it is reported.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::function::{convolution, minimizer_points, MFunc, PointValues};
use crate::lattice::{check_width, LatticePoint, Rat};
use crate::ops::minkowski_sum;
use crate::set::MConvexSet;

/// Bound on `|dom f| · |dom g|`.
pub const ATLAS_PAIR_CAP: usize = 2000;

/// Bound on the number of point subsets tried while searching facets.
pub const HULL_SUBSET_CAP: u128 = 6_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasEntry {
    pub u: Vec<Rat>,
    pub fcell: MConvexSet,
    pub gcell: MConvexSet,
    pub hcell: MConvexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizerAtlas {
    pub entries: Vec<AtlasEntry>,
}

type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

fn bits_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_empty(b: &Bits) -> bool {
    b.iter().all(|w| *w == 0)
}

fn bits_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bits_members(b: &Bits, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| b[i / 64] >> (i % 64) & 1 == 1).collect()
}

fn ck(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow)
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    let mut s: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        s = ck(s.checked_add(ck(x.checked_mul(*y))?))?;
    }
    Ok(s)
}

/// Fraction-free determinant.
fn det(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let k = m.len();
    if k == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| m[r][c] != 0) else { return Ok(0) };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..k {
            for s in c + 1..k {
                let a = ck(m[r][s].checked_mul(m[c][c]))?;
                let b = ck(m[r][c].checked_mul(m[c][s]))?;
                m[r][s] = ck(a.checked_sub(b))? / prev;
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    Ok(sign * m[k - 1][k - 1])
}

fn gcd_reduce(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Normal of the hyperplane through `dim` points of `R^dim`, zero when
/// they are affinely dependent.
fn normal_through(pts: &[&Vec<i128>], dim: usize) -> Result<Vec<i128>> {
    let rows: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| ck(a.checked_sub(*b))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(dim);
    for k in 0..dim {
        let minor: Vec<Vec<i128>> =
            rows.iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != k).map(|(_, v)| *v).collect()).collect();
        let d = det(minor)?;
        out.push(if k % 2 == 0 { d } else { -d });
    }
    gcd_reduce(&mut out);
    Ok(out)
}

struct Facet {
    normal: Vec<i128>,
    members: Bits,
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

/// Facets of the convex hull of a full-dimensional point set, with inner
/// normals.
fn facets(pts: &[Vec<i128>], dim: usize) -> Result<Vec<Facet>> {
    let n = pts.len();
    let tries = binomial(n, dim);
    if tries > HULL_SUBSET_CAP {
        return Err(Error::CapExceeded {
            what: "hull facet search",
            size: tries.min(usize::MAX as u128) as usize,
            cap: HULL_SUBSET_CAP as usize,
        });
    }
    let mut seen: BTreeSet<Bits> = BTreeSet::new();
    let mut out = Vec::new();
    for combo in (0..n).combinations(dim) {
        let chosen: Vec<&Vec<i128>> = combo.iter().map(|&i| &pts[i]).collect();
        let mut c = normal_through(&chosen, dim)?;
        if c.iter().all(|v| *v == 0) {
            continue;
        }
        let b = dot(&c, chosen[0])?;
        let (mut pos, mut neg) = (false, false);
        let mut members = bits_new(n);
        for (i, p) in pts.iter().enumerate() {
            let s = dot(&c, p)? - b;
            match s.signum() {
                1 => pos = true,
                -1 => neg = true,
                _ => bits_set(&mut members, i),
            }
            if pos && neg {
                break;
            }
        }
        if pos && neg {
            continue;
        }
        if neg {
            c.iter_mut().for_each(|v| *v = -*v);
        }
        if seen.insert(members.clone()) {
            out.push(Facet { normal: c, members });
        }
    }
    Ok(out)
}

/// Pivot coordinates of the differences `x − x_0`, so that the projection
/// onto them is injective on the affine hull.
fn pivot_columns(points: &[LatticePoint]) -> Vec<usize> {
    let n = points[0].len();
    let mut rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| Rat::from_integer(BigInt::from(a - b))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..n {
        let Some(p) = (r0..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(r0, p);
        let lead = rows[r0][c].clone();
        for r in r0 + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = &rows[r][c] / &lead;
            for s in c..n {
                let t = &factor * &rows[r0][s];
                rows[r][s] -= t;
            }
        }
        pivots.push(c);
        r0 += 1;
    }
    pivots
}

/// Rank and, when the rank is one short, a kernel vector of the lifted
/// differences.
fn lifted_kernel(pts: &[Vec<i128>]) -> Result<Option<Vec<i128>>> {
    let dim = pts[0].len();
    let mut rows: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| Rat::from_integer(BigInt::from(a - b))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..dim {
        let Some(p) = (r0..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(r0, p);
        let lead = rows[r0][c].clone();
        rows[r0].iter_mut().for_each(|v| *v /= lead.clone());
        for r in 0..rows.len() {
            if r == r0 || rows[r][c].is_zero() {
                continue;
            }
            let factor = rows[r][c].clone();
            for s in 0..dim {
                let t = &factor * &rows[r0][s];
                rows[r][s] -= t;
            }
        }
        pivots.push(c);
        r0 += 1;
    }
    if pivots.len() == dim {
        return Ok(None);
    }
    let free = (0..dim).find(|c| !pivots.contains(c)).expect("rank deficient");
    let mut k = vec![Rat::zero(); dim];
    k[free] = Rat::one();
    for (r, &c) in pivots.iter().enumerate() {
        k[c] = -rows[r][free].clone();
    }
    let l = k.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let out = k
        .iter()
        .map(|v| (v * Rat::from_integer(l.clone())).to_integer().to_i128().ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(out))
}

/// One lower face of the lifted domain: a minimizing functional and the
/// indices of the points it selects.
pub(crate) struct LowerFace {
    pub u: Vec<Rat>,
    pub members: Vec<usize>,
}

/// All lower faces of `{(x, f(x))}` for the points of `f`, in index order
/// of the sorted domain.
pub(crate) fn lower_faces<F: PointValues + ?Sized>(f: &F) -> Result<Vec<LowerFace>> {
    let points = f.dom();
    let vals: Vec<Rat> = f.values().values().cloned().collect();
    let n = f.dim();
    let npts = points.len();
    if npts == 1 {
        return Ok(vec![LowerFace { u: vec![Rat::zero(); n], members: vec![0] }]);
    }
    let pivots = pivot_columns(&points);
    let d = pivots.len();
    let scale = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale_rat = Rat::from_integer(scale.clone());
    let lifted: Vec<Vec<i128>> = points
        .iter()
        .zip(&vals)
        .map(|(x, v)| {
            let mut z: Vec<i128> = pivots.iter().map(|&c| x[c] as i128).collect();
            z.push((v * &scale_rat).to_integer().to_i128().ok_or(Error::Overflow)?);
            Ok(z)
        })
        .collect::<Result<_>>()?;

    let mut all = Vec::new();
    let mut lower = Vec::new();
    match lifted_kernel(&lifted)? {
        None => {
            for fct in facets(&lifted, d + 1)? {
                if fct.normal[d] > 0 {
                    lower.push(all.len());
                }
                all.push(fct);
            }
        }
        Some(mut k) => {
            if k[d] < 0 {
                k.iter_mut().for_each(|v| *v = -*v);
            }
            let mut everything = bits_new(npts);
            (0..npts).for_each(|i| bits_set(&mut everything, i));
            lower.push(0);
            all.push(Facet { normal: k, members: everything });
            let chart: Vec<Vec<i128>> = lifted.iter().map(|z| z[..d].to_vec()).collect();
            for mut fct in facets(&chart, d)? {
                fct.normal.push(0);
                all.push(fct);
            }
        }
    }

    let mut faces: BTreeSet<Bits> = BTreeSet::new();
    let mut queue: Vec<Bits> = Vec::new();
    for &i in &lower {
        if faces.insert(all[i].members.clone()) {
            queue.push(all[i].members.clone());
        }
    }
    while let Some(face) = queue.pop() {
        for fct in &all {
            let meet = bits_and(&face, &fct.members);
            if !bits_empty(&meet) && faces.insert(meet.clone()) {
                queue.push(meet);
            }
        }
    }

    let mut out = Vec::with_capacity(faces.len());
    for face in faces {
        let mut sum_all = vec![0i128; d + 1];
        let mut sum_low = vec![0i128; d + 1];
        for (i, fct) in all.iter().enumerate() {
            if !bits_subset(&face, &fct.members) {
                continue;
            }
            for (s, v) in sum_all.iter_mut().zip(&fct.normal) {
                *s = ck(s.checked_add(*v))?;
            }
            if lower.contains(&i) {
                for (s, v) in sum_low.iter_mut().zip(&fct.normal) {
                    *s = ck(s.checked_add(*v))?;
                }
            }
        }
        let (ta, tl) = (sum_all[d], sum_low[d]);
        let m = if ta > 0 { 0 } else { -ta / tl + 1 };
        let c: Vec<i128> = sum_all
            .iter()
            .zip(&sum_low)
            .map(|(a, l)| ck(l.checked_mul(m)).and_then(|t| ck(a.checked_add(t))))
            .collect::<Result<_>>()?;
        let ct = Rat::from_integer(BigInt::from(c[d])) * &scale_rat;
        let mut u = vec![Rat::zero(); n];
        for (a, &col) in pivots.iter().enumerate() {
            u[col] = -Rat::from_integer(BigInt::from(c[a])) / &ct;
        }
        let members = bits_members(&face, npts);
        let chosen = minimizer_points(f, &u)?;
        let expected: Vec<LatticePoint> = members.iter().map(|&i| points[i].clone()).collect();
        if chosen != expected {
            return Err(Error::Disagreement("lower face is not the minimizer of its functional"));
        }
        out.push(LowerFace { u, members });
    }
    Ok(out)
}

/// `(u, f^u)` for every distinct minimizer of `f`.
pub fn minimizer_cells<F: PointValues + ?Sized>(f: &F) -> Result<Vec<(Vec<Rat>, Vec<LatticePoint>)>> {
    let points = f.dom();
    Ok(lower_faces(f)?
        .into_iter()
        .map(|face| (face.u, face.members.iter().map(|&i| points[i].clone()).collect()))
        .collect())
}

/// Every distinct pair `(f^u, g^u)`, one entry per cell of the
/// subdivision induced by `f □ g`.
pub fn minimizer_atlas(f: &MFunc, g: &MFunc) -> Result<MinimizerAtlas> {
    check_width(f.dim(), g.dim())?;
    let pairs = f.len().saturating_mul(g.len());
    if pairs > ATLAS_PAIR_CAP {
        return Err(Error::CapExceeded { what: "atlas domain pairs", size: pairs, cap: ATLAS_PAIR_CAP });
    }
    let h = convolution(f, g)?;
    let ground = f.ground().clone();
    let mut entries = Vec::new();
    for (u, cell) in minimizer_cells(&h)? {
        let fcell = MConvexSet::from_trusted(ground.clone(), minimizer_points(f, &u)?)?;
        let gcell = MConvexSet::from_trusted(ground.clone(), minimizer_points(g, &u)?)?;
        let hcell = MConvexSet::from_trusted(ground.clone(), cell)?;
        if minkowski_sum(&fcell, &gcell)? != hcell {
            return Err(Error::Disagreement("minimizers of a convolution are not the sum of minimizers"));
        }
        entries.push(AtlasEntry { u, fcell, gcell, hcell });
    }
    Ok(MinimizerAtlas { entries })
}
