//! Brute-force reference implementations used only by unit tests.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::{box_points, LatticePoint};

fn sum(x: &[i64]) -> i64 {
    x.iter().sum()
}

fn masked(x: &[i64], a: usize) -> i64 {
    x.iter().enumerate().filter(|(i, _)| a >> i & 1 == 1).map(|(_, v)| v).sum()
}

pub fn is_m_convex(points: &[LatticePoint]) -> bool {
    let s: BTreeSet<LatticePoint> = points.iter().cloned().collect();
    let r = sum(&points[0]);
    if s.iter().any(|p| sum(p) != r) {
        return false;
    }
    let n = points[0].len();
    for x in &s {
        for y in &s {
            for i in 0..n {
                if x[i] <= y[i] {
                    continue;
                }
                let ok = (0..n).filter(|&j| x[j] < y[j]).any(|j| {
                    let mut a = x.clone();
                    a[i] -= 1;
                    a[j] += 1;
                    let mut b = y.clone();
                    b[i] += 1;
                    b[j] -= 1;
                    s.contains(&a) && s.contains(&b)
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// A set is M♮-convex iff `{(x, −x(E))}` is M-convex.
pub fn is_mnat_by_lift(points: &[LatticePoint]) -> bool {
    let lifted: Vec<LatticePoint> = points
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q.push(-sum(p));
            q
        })
        .collect();
    is_m_convex(&lifted)
}

/// Integer points with `x(A) ≤ p(A)` for all `A` and `x(E) = p(E)`, by
/// filtering the box `x_i ≤ p(i)`, `x_i ≥ p(E) − p(E−i)`.
pub fn base_points(table: &[i64], n: usize) -> Vec<LatticePoint> {
    let full = (1usize << n) - 1;
    let lo: Vec<i64> = (0..n).map(|i| table[full] - table[full ^ (1 << i)]).collect();
    let hi: Vec<i64> = (0..n).map(|i| table[1 << i]).collect();
    box_points(&lo, &hi)
        .into_iter()
        .filter(|x| sum(x) == table[full] && (0..=full).all(|a| masked(x, a) <= table[a]))
        .collect()
}

/// Points of `points` that are the unique maximizer of some integer
/// functional in `[−n, n]^n`.
pub fn extreme_points(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let n = points[0].len();
    let k = n as i64;
    let lo = vec![-k; n];
    let hi = vec![k; n];
    let mut out = BTreeSet::new();
    for w in box_points(&lo, &hi) {
        let vals: Vec<i64> = points.iter().map(|x| x.iter().zip(&w).map(|(a, b)| a * b).sum()).collect();
        let best = *vals.iter().max().unwrap();
        let hits: Vec<usize> = (0..points.len()).filter(|&i| vals[i] == best).collect();
        if hits.len() == 1 {
            out.insert(points[hits[0]].clone());
        }
    }
    out.into_iter().collect()
}

/// Integer points of `{x : lower(A) ≤ x(A) ≤ upper(A)}` by box filtering.
pub fn between(upper: &[i64], lower: &[i64], n: usize) -> Vec<LatticePoint> {
    let full = (1usize << n) - 1;
    let lo: Vec<i64> = (0..n).map(|i| lower[1 << i]).collect();
    let hi: Vec<i64> = (0..n).map(|i| upper[1 << i]).collect();
    box_points(&lo, &hi)
        .into_iter()
        .filter(|x| (1..=full).all(|a| masked(x, a) <= upper[a] && masked(x, a) >= lower[a]))
        .collect()
}

/// `P ↠ Q` by compliance over all nested pairs.
pub fn compliant(p: &[i64], q: &[i64]) -> bool {
    for y in 0..p.len() {
        for x in 0..p.len() {
            if x & y == x && q[y] - q[x] > p[y] - p[x] {
                return false;
            }
        }
    }
    true
}

/// `max_{x ∈ S} x(A)` for every mask.
pub fn max_table(points: &[LatticePoint]) -> Vec<i64> {
    let n = points[0].len();
    (0..1usize << n).map(|a| points.iter().map(|x| masked(x, a)).max().unwrap()).collect()
}

pub fn sorted(mut v: Vec<LatticePoint>) -> Vec<LatticePoint> {
    v.sort();
    v.dedup();
    v
}
