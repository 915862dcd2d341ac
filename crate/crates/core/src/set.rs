//! M-convex and M♮-convex point sets, submodular tables, and the
//! correspondence between them.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Add;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::{
    canonicalize, check_width, mask_sum, total, GroundSet, LatticePoint, SubsetMask,
    MAX_TABLE_GROUND,
};

/// Finite M-convex set: equal coordinate sums and closed under the
/// symmetric exchange step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MConvexSet {
    ground: GroundSet,
    points: Vec<LatticePoint>,
}

/// Finite M♮-convex set, the union of its M-convex layers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MNatSet {
    ground: GroundSet,
    points: Vec<LatticePoint>,
}

/// Dense submodular table indexed by subset masks, with `p(∅) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubmodularFn {
    ground: GroundSet,
    table: Vec<i64>,
}

/// Dense supermodular table, the dual side of [`SubmodularFn`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupermodularFn {
    ground: GroundSet,
    table: Vec<i64>,
}

fn shape_points(ground: &GroundSet, mut points: Vec<LatticePoint>) -> Result<Vec<LatticePoint>> {
    if points.is_empty() {
        return Err(Error::EmptyResult("point set"));
    }
    for p in &points {
        ground.check_point(p)?;
    }
    canonicalize(&mut points);
    Ok(points)
}

#[inline]
pub(crate) fn contains(sorted: &[LatticePoint], x: &[i64]) -> bool {
    sorted.binary_search_by(|p| p.as_slice().cmp(x)).is_ok()
}

impl MConvexSet {
    /// Builds and certifies an M-convex set.
    pub fn new(ground: GroundSet, points: Vec<LatticePoint>) -> Result<Self> {
        let s = Self::from_trusted(ground, points)?;
        if !check_m_convex(&s.points)? {
            return Err(Error::NotCertified("M-convex exchange axiom"));
        }
        Ok(s)
    }

    /// Shape checks only (nonempty, widths); the exchange axiom is assumed.
    pub fn from_trusted(ground: GroundSet, points: Vec<LatticePoint>) -> Result<Self> {
        let points = shape_points(&ground, points)?;
        Ok(MConvexSet { ground, points })
    }

    /// Certified set on an unlabelled ground set inferred from the points.
    pub fn from_points(points: Vec<LatticePoint>) -> Result<Self> {
        let n = points.first().map(Vec::len).ok_or(Error::EmptyResult("point set"))?;
        Self::new(GroundSet::new(n)?, points)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn dim(&self) -> usize {
        self.ground.size()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<LatticePoint> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Common coordinate sum.
    pub fn rank(&self) -> i64 {
        total(&self.points[0])
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        contains(&self.points, x)
    }

    pub fn to_mnat(&self) -> MNatSet {
        MNatSet { ground: self.ground.clone(), points: self.points.clone() }
    }

    pub fn with_ground(self, ground: GroundSet) -> Result<Self> {
        check_width(self.ground.size(), ground.size())?;
        Ok(MConvexSet { ground, points: self.points })
    }
}

impl MNatSet {
    /// Builds and certifies an M♮-convex set.
    pub fn new(ground: GroundSet, points: Vec<LatticePoint>) -> Result<Self> {
        let s = Self::from_trusted(ground, points)?;
        if !check_mnat_convex(&s.points)? {
            return Err(Error::NotCertified("M-natural exchange axioms"));
        }
        Ok(s)
    }

    pub fn from_trusted(ground: GroundSet, points: Vec<LatticePoint>) -> Result<Self> {
        let points = shape_points(&ground, points)?;
        Ok(MNatSet { ground, points })
    }

    pub fn from_points(points: Vec<LatticePoint>) -> Result<Self> {
        let n = points.first().map(Vec::len).ok_or(Error::EmptyResult("point set"))?;
        Self::new(GroundSet::new(n)?, points)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn dim(&self) -> usize {
        self.ground.size()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        contains(&self.points, x)
    }

    /// Distinct coordinate sums, ascending.
    pub fn ranks(&self) -> Vec<i64> {
        let mut r: Vec<i64> = self.points.iter().map(|p| total(p)).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// The layer at coordinate sum `k`, if nonempty.
    pub fn layer(&self, k: i64) -> Option<MConvexSet> {
        let pts: Vec<LatticePoint> = self.points.iter().filter(|p| total(p) == k).cloned().collect();
        if pts.is_empty() {
            None
        } else {
            Some(MConvexSet { ground: self.ground.clone(), points: pts })
        }
    }

    /// Partition by coordinate sum, ascending.
    pub fn layers(&self) -> Vec<MConvexSet> {
        self.ranks().into_iter().filter_map(|k| self.layer(k)).collect()
    }

    pub fn top(&self) -> MConvexSet {
        let k = *self.ranks().last().expect("nonempty");
        self.layer(k).expect("nonempty layer")
    }

    pub fn bottom(&self) -> MConvexSet {
        let k = self.ranks()[0];
        self.layer(k).expect("nonempty layer")
    }
}

fn sorted_points(points: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
    let first = points.first().ok_or_else(|| Error::usage("empty point set"))?;
    for p in points {
        check_width(first.len(), p.len())?;
    }
    let mut v = points.to_vec();
    canonicalize(&mut v);
    Ok(v)
}

/// For every `x ∈ from`, `y ∈ to` and `i ∈ supp⁺(x−y)`, some
/// `j ∈ supp⁻(x−y)` has `x−e_i+e_j ∈ from` and `y+e_i−e_j ∈ to`.
/// Both slices must be sorted.
pub(crate) fn exchange_holds(from: &[LatticePoint], to: &[LatticePoint]) -> bool {
    let Some(first) = from.first() else { return true };
    let n = first.len();
    let mut a = vec![0i64; n];
    let mut b = vec![0i64; n];
    for x in from {
        for y in to {
            for i in 0..n {
                if x[i] <= y[i] {
                    continue;
                }
                let mut found = false;
                for j in 0..n {
                    if x[j] >= y[j] {
                        continue;
                    }
                    a.copy_from_slice(x);
                    a[i] -= 1;
                    a[j] += 1;
                    if !contains(from, &a) {
                        continue;
                    }
                    b.copy_from_slice(y);
                    b[i] += 1;
                    b[j] -= 1;
                    if contains(to, &b) {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive check of the M-convex exchange axiom.
pub fn check_m_convex(points: &[LatticePoint]) -> Result<bool> {
    let s = sorted_points(points)?;
    let r = total(&s[0]);
    if s.iter().any(|p| total(p) != r) {
        return Ok(false);
    }
    Ok(exchange_holds(&s, &s))
}

/// Exhaustive check of both M♮ axioms: augmentation across layers and
/// exchange within a layer.
pub fn check_mnat_convex(points: &[LatticePoint]) -> Result<bool> {
    let s = sorted_points(points)?;
    let n = s[0].len();
    let mut a = vec![0i64; n];
    let mut b = vec![0i64; n];
    for x in &s {
        let sx = total(x);
        for y in &s {
            let sy = total(y);
            if sx > sy {
                let ok = (0..n).any(|i| {
                    if x[i] <= y[i] {
                        return false;
                    }
                    a.copy_from_slice(x);
                    a[i] -= 1;
                    b.copy_from_slice(y);
                    b[i] += 1;
                    contains(&s, &a) && contains(&s, &b)
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    let layers = s.iter().map(|p| total(p)).sorted().dedup().collect::<Vec<_>>();
    for k in layers {
        let layer: Vec<LatticePoint> = s.iter().filter(|p| total(p) == k).cloned().collect();
        if !exchange_holds(&layer, &layer) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_table_shape<T: Default + PartialEq>(ground: &GroundSet, table: &[T]) -> Result<()> {
    let n = ground.size();
    if n > MAX_TABLE_GROUND {
        return Err(Error::CapExceeded { what: "subset table ground set", size: n, cap: MAX_TABLE_GROUND });
    }
    if table.len() != 1usize << n {
        return Err(Error::usage("table length must be 2^n"));
    }
    if table[0] != T::default() {
        return Err(Error::usage("table must vanish on the empty set"));
    }
    Ok(())
}

/// `p(A∪B) + p(A∩B) ≤ p(A) + p(B)` for all pairs, over any ordered
/// additive value type.
pub fn is_submodular_table<T>(table: &[T]) -> bool
where
    T: Ord,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    pairs_satisfy(table, |union_inter, parts| union_inter <= parts)
}

pub fn is_supermodular_table<T>(table: &[T]) -> bool
where
    T: Ord,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    pairs_satisfy(table, |union_inter, parts| union_inter >= parts)
}

fn pairs_satisfy<T>(table: &[T], ok: impl Fn(&T, &T) -> bool) -> bool
where
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    let size = table.len();
    for a in 0..size {
        for b in (a + 1)..size {
            if a & b == a || a & b == b {
                continue;
            }
            let lhs = &table[a | b] + &table[a & b];
            let rhs = &table[a] + &table[b];
            if !ok(&lhs, &rhs) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive submodularity check of an integer table of length `2^n`.
pub fn check_submodular(table: &[i64]) -> Result<bool> {
    if !table.len().is_power_of_two() {
        return Err(Error::usage("table length must be a power of two"));
    }
    Ok(is_submodular_table(table))
}

fn dual_table(table: &[i64]) -> Vec<i64> {
    let full = table.len() - 1;
    (0..table.len()).map(|a| table[full] - table[full & !a]).collect()
}

impl SubmodularFn {
    /// Builds and certifies a submodular table.
    pub fn new(ground: GroundSet, table: Vec<i64>) -> Result<Self> {
        let p = Self::from_trusted(ground, table)?;
        if !is_submodular_table(&p.table) {
            return Err(Error::NotCertified("submodular inequality"));
        }
        Ok(p)
    }

    pub fn from_trusted(ground: GroundSet, table: Vec<i64>) -> Result<Self> {
        check_table_shape(&ground, &table)?;
        Ok(SubmodularFn { ground, table })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn dim(&self) -> usize {
        self.ground.size()
    }

    pub fn table(&self) -> &[i64] {
        &self.table
    }

    pub fn value(&self, a: SubsetMask) -> i64 {
        self.table[a as usize]
    }

    /// `p(E)`.
    pub fn rank(&self) -> i64 {
        self.table[self.table.len() - 1]
    }

    /// `p^#(A) = p(E) − p(E∖A)`.
    pub fn dual(&self) -> SupermodularFn {
        SupermodularFn { ground: self.ground.clone(), table: dual_table(&self.table) }
    }
}

impl SupermodularFn {
    pub fn new(ground: GroundSet, table: Vec<i64>) -> Result<Self> {
        let q = Self::from_trusted(ground, table)?;
        if !is_supermodular_table(&q.table) {
            return Err(Error::NotCertified("supermodular inequality"));
        }
        Ok(q)
    }

    pub fn from_trusted(ground: GroundSet, table: Vec<i64>) -> Result<Self> {
        check_table_shape(&ground, &table)?;
        Ok(SupermodularFn { ground, table })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn table(&self) -> &[i64] {
        &self.table
    }

    pub fn value(&self, a: SubsetMask) -> i64 {
        self.table[a as usize]
    }

    pub fn rank(&self) -> i64 {
        self.table[self.table.len() - 1]
    }

    /// `q^#(A) = q(E) − q(E∖A)`, back to the submodular side.
    pub fn dual(&self) -> SubmodularFn {
        SubmodularFn { ground: self.ground.clone(), table: dual_table(&self.table) }
    }
}

/// Table of `A ↦ max_{x ∈ S} x(A)` for any nonempty point list.
pub(crate) fn max_table(points: &[LatticePoint], n: usize) -> Vec<i64> {
    (0..(1usize << n))
        .map(|a| points.iter().map(|x| mask_sum(x, a as SubsetMask)).max().unwrap_or(0))
        .collect()
}

/// Table of `A ↦ min_{x ∈ S} x(A)`.
pub(crate) fn min_table(points: &[LatticePoint], n: usize) -> Vec<i64> {
    (0..(1usize << n))
        .map(|a| points.iter().map(|x| mask_sum(x, a as SubsetMask)).min().unwrap_or(0))
        .collect()
}

/// `p(A) = max_{x ∈ P} x(A)`.
pub fn set_to_submodular(p: &MConvexSet) -> Result<SubmodularFn> {
    let n = p.dim();
    if n > MAX_TABLE_GROUND {
        return Err(Error::CapExceeded { what: "subset table ground set", size: n, cap: MAX_TABLE_GROUND });
    }
    Ok(SubmodularFn { ground: p.ground.clone(), table: max_table(&p.points, n) })
}

/// Integer points `x` with `lower[A] ≤ x(A) ≤ upper[A]` for every `A`,
/// by depth-first search over coordinates; after fixing coordinate `k`
/// every constraint whose highest element is `k` is checked.
pub(crate) fn points_between(n: usize, upper: &[i64], lower: &[i64]) -> Vec<LatticePoint> {
    struct Walk<'a> {
        n: usize,
        upper: &'a [i64],
        lower: &'a [i64],
        x: Vec<i64>,
        partial: Vec<i64>,
        out: Vec<LatticePoint>,
    }
    impl Walk<'_> {
        fn go(&mut self, k: usize) {
            if k == self.n {
                self.out.push(self.x.clone());
                return;
            }
            let bit = 1usize << k;
            let (lo, hi) = (self.lower[bit], self.upper[bit]);
            'value: for v in lo..=hi {
                self.x[k] = v;
                for m in bit..(bit << 1) {
                    let s = self.partial[m ^ bit] + v;
                    if s > self.upper[m] || s < self.lower[m] {
                        continue 'value;
                    }
                    self.partial[m] = s;
                }
                self.go(k + 1);
            }
        }
    }
    let mut w = Walk { n, upper, lower, x: vec![0; n], partial: vec![0; 1 << n], out: Vec::new() };
    w.go(0);
    w.out
}

/// `B(p) ∩ Z^E`, searched in the box `[p^#({i}), p({i})]`.
pub fn submodular_to_set(p: &SubmodularFn) -> Result<MConvexSet> {
    let lower = dual_table(&p.table);
    let pts = points_between(p.dim(), &p.table, &lower);
    if pts.is_empty() {
        return Err(Error::EmptyResult("base polytope has no integer points"));
    }
    Ok(MConvexSet { ground: p.ground.clone(), points: pts })
}

fn check_order(n: usize, order: &[usize]) -> Result<()> {
    check_width(n, order.len())?;
    let mut seen = vec![false; n];
    for &o in order {
        if o >= n || seen[o] {
            return Err(Error::usage("order must be a permutation of the ground set"));
        }
        seen[o] = true;
    }
    Ok(())
}

/// Vertex of `B(p)` maximizing a functional whose weights strictly
/// decrease along `order`.
pub fn greedy_vertex(p: &SubmodularFn, order: &[usize]) -> Result<LatticePoint> {
    check_order(p.dim(), order)?;
    Ok(greedy_unchecked(&p.table, order))
}

pub(crate) fn greedy_unchecked(table: &[i64], order: &[usize]) -> LatticePoint {
    let mut x = vec![0i64; order.len()];
    let mut prefix = 0usize;
    for &o in order {
        let next = prefix | (1 << o);
        x[o] = table[next] - table[prefix];
        prefix = next;
    }
    x
}

/// Distinct greedy vertices over all orders.
pub fn vertex_set(p: &SubmodularFn) -> Vec<LatticePoint> {
    let n = p.dim();
    let mut out: Vec<LatticePoint> = (0..n).permutations(n).map(|o| greedy_unchecked(&p.table, &o)).collect();
    canonicalize(&mut out);
    out
}
