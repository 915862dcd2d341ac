//! Aggregation maps, box lifts, matroid and k-polymatroid lifts, and
//! compatible lifts of two M-convex sets.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{bounding_box, check_width, GroundSet, LatticePoint};
use crate::ops::verify;
use crate::set::{check_m_convex, MConvexSet};

/// Default bound on the size of a lifted ground set.
pub const DEFAULT_LIFT_CAP: usize = 16;

/// Bound on the number of lifted points.
pub const MAX_LIFT_POINTS: usize = 200_000;

/// A surjection `φ : V → U` stored as the target of every element of `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surjection {
    targets: Vec<usize>,
    codomain: usize,
}

impl Surjection {
    pub fn new(targets: Vec<usize>, codomain: usize) -> Result<Self> {
        let mut hit = vec![false; codomain];
        for &t in &targets {
            if t >= codomain {
                return Err(Error::usage("surjection target outside the codomain"));
            }
            hit[t] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::usage("map is not surjective"));
        }
        Ok(Surjection { targets, codomain })
    }

    pub fn identity(n: usize) -> Self {
        Surjection { targets: (0..n).collect(), codomain: n }
    }

    /// Consecutive fibers of the given sizes.
    pub fn from_fiber_sizes(sizes: &[usize]) -> Result<Self> {
        let targets = sizes.iter().enumerate().flat_map(|(i, &s)| core::iter::repeat(i).take(s)).collect();
        Surjection::new(targets, sizes.len())
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn domain(&self) -> usize {
        self.targets.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn fiber(&self, i: usize) -> Vec<usize> {
        (0..self.targets.len()).filter(|&j| self.targets[j] == i).collect()
    }
}

/// Surjection, translation and box `[lo, hi]` on `V` describing a lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCertificate {
    pub phi: Surjection,
    pub v: LatticePoint,
    pub lo: LatticePoint,
    pub hi: LatticePoint,
}

impl LiftCertificate {
    pub fn new(phi: Surjection, v: LatticePoint, lo: LatticePoint, hi: LatticePoint) -> Result<Self> {
        check_width(phi.codomain(), v.len())?;
        check_width(phi.domain(), lo.len())?;
        check_width(phi.domain(), hi.len())?;
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::usage("lift box requires lo ≤ hi"));
        }
        Ok(LiftCertificate { phi, v, lo, hi })
    }
}

/// `π_φ(y) + v`.
pub fn project_phi(y: &[i64], phi: &Surjection, v: &[i64]) -> Result<LatticePoint> {
    check_width(phi.domain(), y.len())?;
    check_width(phi.codomain(), v.len())?;
    let mut out = v.to_vec();
    for (j, &t) in phi.targets().iter().enumerate() {
        out[t] += y[j];
    }
    Ok(out)
}

pub fn project_phi_set(points: &[LatticePoint], phi: &Surjection, v: &[i64]) -> Result<Vec<LatticePoint>> {
    let mut out = points.iter().map(|y| project_phi(y, phi, v)).collect::<Result<Vec<_>>>()?;
    crate::lattice::canonicalize(&mut out);
    Ok(out)
}

/// Vectors on `[lo, hi]` (per slot) with the given total.
fn compositions(lo: &[i64], hi: &[i64], total: i64) -> Vec<Vec<i64>> {
    fn go(k: usize, lo: &[i64], hi: &[i64], rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == lo.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let tail_lo: i64 = lo[k + 1..].iter().sum();
        let tail_hi: i64 = hi[k + 1..].iter().sum();
        let a = lo[k].max(rest - tail_hi);
        let b = hi[k].min(rest - tail_lo);
        for t in a..=b {
            cur.push(t);
            go(k + 1, lo, hi, rest - t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, lo, hi, total, &mut Vec::new(), &mut out);
    out
}

/// `{y ∈ [lo, hi] : π_φ(y) + v ∈ P}`.
pub fn box_lift(p: &MConvexSet, cert: &LiftCertificate) -> Result<MConvexSet> {
    box_lift_capped(p, cert, DEFAULT_LIFT_CAP)
}

pub fn box_lift_capped(p: &MConvexSet, cert: &LiftCertificate, cap: usize) -> Result<MConvexSet> {
    let phi = &cert.phi;
    check_width(phi.codomain(), p.dim())?;
    if phi.domain() > cap {
        return Err(Error::CapExceeded { what: "lifted ground set", size: phi.domain(), cap });
    }
    let fibers: Vec<Vec<usize>> = (0..phi.codomain()).map(|i| phi.fiber(i)).collect();
    let mut out: Vec<LatticePoint> = Vec::new();
    for x in p.points() {
        let mut partial: Vec<LatticePoint> = vec![vec![0; phi.domain()]];
        for (i, fib) in fibers.iter().enumerate() {
            let lo: Vec<i64> = fib.iter().map(|&j| cert.lo[j]).collect();
            let hi: Vec<i64> = fib.iter().map(|&j| cert.hi[j]).collect();
            let parts = compositions(&lo, &hi, x[i] - cert.v[i]);
            let mut next = Vec::with_capacity(partial.len() * parts.len());
            for y in &partial {
                for c in &parts {
                    let mut z = y.clone();
                    for (k, &j) in fib.iter().enumerate() {
                        z[j] = c[k];
                    }
                    next.push(z);
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        out.extend(partial);
        if out.len() > MAX_LIFT_POINTS {
            return Err(Error::CapExceeded { what: "lifted points", size: out.len(), cap: MAX_LIFT_POINTS });
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyResult("lift box misses every point"));
    }
    let s = MConvexSet::from_trusted(GroundSet::new(phi.domain())?, out)?;
    verify(check_m_convex(s.points())?, "box lift is M-convex")?;
    Ok(s)
}

/// Fiber sizes and per-element upper bounds for widths `b` split into
/// parts of capacity at most `k`: `b = m·k + r` with `0 < r ≤ k` gives
/// `m` elements capped at `k` followed by one capped at `r`; `b = 0`
/// gives a single element capped at `0`.
fn split_widths(b: &[i64], k: i64) -> (Vec<usize>, Vec<i64>) {
    let mut sizes = Vec::new();
    let mut caps = Vec::new();
    for &w in b {
        if w == 0 {
            sizes.push(1);
            caps.push(0);
            continue;
        }
        let m = (w - 1) / k;
        let r = w - m * k;
        sizes.push(m as usize + 1);
        caps.extend(core::iter::repeat(k).take(m as usize));
        caps.push(r);
    }
    (sizes, caps)
}

fn lift_over_widths(p: &MConvexSet, lo: &[i64], hi: &[i64], k: i64, cap: usize) -> Result<(MConvexSet, LiftCertificate)> {
    let b: Vec<i64> = lo.iter().zip(hi).map(|(a, c)| c - a).collect();
    let (sizes, caps) = split_widths(&b, k);
    let total: usize = sizes.iter().sum();
    if total > cap {
        return Err(Error::CapExceeded { what: "lifted ground set", size: total, cap });
    }
    let phi = Surjection::from_fiber_sizes(&sizes)?;
    let cert = LiftCertificate::new(phi, lo.to_vec(), vec![0; caps.len()], caps)?;
    let m = box_lift_capped(p, &cert, cap)?;
    Ok((m, cert))
}

/// Matroid lift over the bounding box of `P`: `b_i` unit elements per
/// coordinate, translation by the lower corner.
pub fn matroid_lift(p: &MConvexSet) -> Result<(MConvexSet, LiftCertificate)> {
    k_polymatroid_lift(p, 1)
}

pub fn k_polymatroid_lift(p: &MConvexSet, k: i64) -> Result<(MConvexSet, LiftCertificate)> {
    k_polymatroid_lift_capped(p, k, DEFAULT_LIFT_CAP)
}

pub fn k_polymatroid_lift_capped(p: &MConvexSet, k: i64, cap: usize) -> Result<(MConvexSet, LiftCertificate)> {
    if k < 1 {
        return Err(Error::usage("polymatroid capacity must be at least 1"));
    }
    let (lo, hi) = bounding_box(p.points()).expect("nonempty");
    lift_over_widths(p, &lo, &hi, k, cap)
}

/// Matroid lifts of `P` and `Q` through the unit decomposition of their
/// joint bounding box.
pub fn compatible_lifts(p: &MConvexSet, q: &MConvexSet) -> Result<(MConvexSet, MConvexSet, LiftCertificate)> {
    compatible_lifts_capped(p, q, DEFAULT_LIFT_CAP)
}

pub fn compatible_lifts_capped(
    p: &MConvexSet,
    q: &MConvexSet,
    cap: usize,
) -> Result<(MConvexSet, MConvexSet, LiftCertificate)> {
    check_width(p.dim(), q.dim())?;
    let mut all = p.points().to_vec();
    all.extend_from_slice(q.points());
    let (lo, hi) = bounding_box(&all).expect("nonempty");
    let (m, cert) = lift_over_widths(p, &lo, &hi, 1, cap)?;
    let n = box_lift_capped(q, &cert, cap)?;
    Ok((m, n, cert))
}
