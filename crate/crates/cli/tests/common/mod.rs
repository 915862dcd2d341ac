//! Brute-force reference implementations, written from the definitions and
//! sharing no code with the library beyond its data types.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mconvex::lattice::{rat, LatticePoint, Rat};

pub type Pts = Vec<LatticePoint>;
pub type Vals = BTreeMap<LatticePoint, Rat>;

pub fn sorted(mut v: Pts) -> Pts {
    v.sort();
    v.dedup();
    v
}

pub fn sum_on(x: &[i64], a: usize) -> i64 {
    x.iter().enumerate().filter(|(i, _)| a >> i & 1 == 1).map(|(_, v)| v).sum()
}

pub fn total(x: &[i64]) -> i64 {
    x.iter().sum()
}

/// `A ↦ max x(A)`.
pub fn max_table(points: &[LatticePoint], n: usize) -> Vec<i64> {
    (0..1usize << n).map(|a| points.iter().map(|x| sum_on(x, a)).max().expect("nonempty")).collect()
}

/// `A ↦ min x(A)`.
pub fn min_table(points: &[LatticePoint], n: usize) -> Vec<i64> {
    (0..1usize << n).map(|a| points.iter().map(|x| sum_on(x, a)).min().expect("nonempty")).collect()
}

fn grid(lo: &[i64], hi: &[i64]) -> Pts {
    let mut out = vec![vec![]];
    for (a, b) in lo.iter().zip(hi) {
        out = out.into_iter().flat_map(|p: Vec<i64>| (*a..=*b).map(move |t| [p.clone(), vec![t]].concat())).collect();
    }
    out
}

/// Lattice points of the base polytope of a table.
pub fn base_points(t: &[i64], n: usize) -> Pts {
    let full = (1usize << n) - 1;
    let lo: Vec<i64> = (0..n).map(|i| t[full] - t[full & !(1 << i)]).collect();
    let hi: Vec<i64> = (0..n).map(|i| t[1 << i]).collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return vec![];
    }
    grid(&lo, &hi).into_iter().filter(|x| (0..=full).all(|a| sum_on(x, a) <= t[a]) && sum_on(x, full) == t[full]).collect()
}

/// Lattice points between an upper submodular and a lower supermodular table.
pub fn between(upper: &[i64], lower: &[i64], n: usize) -> Pts {
    let lo: Vec<i64> = (0..n).map(|i| lower[1 << i]).collect();
    let hi: Vec<i64> = (0..n).map(|i| upper[1 << i]).collect();
    grid(&lo, &hi)
        .into_iter()
        .filter(|x| (1..1usize << n).all(|a| lower[a] <= sum_on(x, a) && sum_on(x, a) <= upper[a]))
        .collect()
}

pub fn is_submodular(t: &[i64]) -> bool {
    let len = t.len();
    (0..len).all(|a| (0..len).all(|b| t[a | b] + t[a & b] <= t[a] + t[b]))
}

fn moved(x: &[i64], plus: usize, minus: usize) -> LatticePoint {
    let mut y = x.to_vec();
    y[plus] += 1;
    y[minus] -= 1;
    y
}

/// Symmetric exchange on every pair.
pub fn is_m_convex(points: &[LatticePoint]) -> bool {
    if points.is_empty() {
        return false;
    }
    let s: BTreeSet<&LatticePoint> = points.iter().collect();
    let r = total(&points[0]);
    if points.iter().any(|x| total(x) != r) {
        return false;
    }
    let n = points[0].len();
    for x in points {
        for y in points {
            for i in (0..n).filter(|&i| x[i] > y[i]) {
                let ok = (0..n)
                    .filter(|&j| x[j] < y[j])
                    .any(|j| s.contains(&moved(x, j, i)) && s.contains(&moved(y, i, j)));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn lift_point(x: &[i64]) -> LatticePoint {
    let mut y = x.to_vec();
    y.push(-total(x));
    y
}

/// M♮ through the lift `x ↦ (x, −x(E))`.
pub fn is_mnat(points: &[LatticePoint]) -> bool {
    let lifted: Pts = points.iter().map(|x| lift_point(x)).collect();
    is_m_convex(&lifted)
}

/// `q(Y) − q(X) ≤ p(Y) − p(X)` for all `X ⊆ Y`.
pub fn compliant(p: &[i64], q: &[i64]) -> bool {
    let len = p.len();
    (0..len).all(|y| {
        let mut x = y;
        loop {
            if q[y] - q[x] > p[y] - p[x] {
                return false;
            }
            if x == 0 {
                return true;
            }
            x = (x - 1) & y;
        }
    })
}

/// Quotient of point sets by compliance of their max tables.
pub fn is_quotient(p: &[LatticePoint], q: &[LatticePoint]) -> bool {
    let n = p[0].len();
    compliant(&max_table(p, n), &max_table(q, n))
}

pub fn minkowski(a: &[LatticePoint], b: &[LatticePoint]) -> Pts {
    sorted(a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect())).collect())
}

/// Unique maximizer of `Σ c_i x_i`.
pub fn argmax(points: &[LatticePoint], c: &[i64]) -> Option<LatticePoint> {
    let score = |x: &LatticePoint| x.iter().zip(c).map(|(a, b)| a * b).sum::<i64>();
    let best = points.iter().map(score).max()?;
    let winners: Vec<_> = points.iter().filter(|x| score(x) == best).collect();
    (winners.len() == 1).then(|| winners[0].clone())
}

fn pair_val(f: &Vals, x: &LatticePoint, y: &LatticePoint) -> Option<Rat> {
    Some(f.get(x)? + f.get(y)?)
}

/// Exchange inequality for valuated sets on an M-convex domain.
pub fn is_m_fn(f: &Vals) -> bool {
    let dom: Pts = f.keys().cloned().collect();
    if !is_m_convex(&dom) {
        return false;
    }
    let n = dom[0].len();
    for (x, fx) in f {
        for (y, fy) in f {
            let lhs = fx + fy;
            for i in (0..n).filter(|&i| x[i] > y[i]) {
                let ok = (0..n)
                    .filter(|&j| x[j] < y[j])
                    .filter_map(|j| pair_val(f, &moved(x, j, i), &moved(y, i, j)))
                    .any(|v| lhs >= v);
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_mnat_fn(f: &Vals) -> bool {
    let lifted: Vals = f.iter().map(|(x, v)| (lift_point(x), v.clone())).collect();
    is_m_fn(&lifted)
}

pub fn pairing(u: &[Rat], x: &[i64]) -> Rat {
    u.iter().zip(x).fold(rat(0), |acc, (a, b)| acc + a * rat(*b))
}

/// `argmin f − u`.
pub fn argmin(f: &Vals, u: &[Rat]) -> Pts {
    let tilted: Vec<(LatticePoint, Rat)> = f.iter().map(|(x, v)| (x.clone(), v - pairing(u, x))).collect();
    let best = tilted.iter().map(|(_, v)| v.clone()).min().expect("nonempty");
    sorted(tilted.into_iter().filter(|(_, v)| *v == best).map(|(x, _)| x).collect())
}

/// Infimal convolution by enumeration.
pub fn convolve(f: &Vals, g: &Vals) -> Vals {
    let mut out: Vals = BTreeMap::new();
    for (x, a) in f {
        for (y, b) in g {
            let z: LatticePoint = x.iter().zip(y).map(|(s, t)| s + t).collect();
            let v = a + b;
            match out.get(&z) {
                Some(w) if *w <= v => {}
                _ => {
                    out.insert(z, v);
                }
            }
        }
    }
    out
}

/// The minimizers of every functional `u` with entries in `-r..=r`.
pub fn small_functionals(n: usize, r: i64) -> Vec<Vec<Rat>> {
    grid(&vec![-r; n], &vec![r; n]).into_iter().map(|c| c.into_iter().map(rat).collect()).collect()
}
