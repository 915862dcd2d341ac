//! Linking sets on a split ground set `V ⊔ U`, induction, products and
//! bipartite-graph constructions.
//!
//! A point is stored as `(x, z)` with `x` on `V` and `z` on `U`; a pair
//! `(x, y)` in the usual reading is stored as `(x, −y)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{bounding_box, box_points, check_width, full_mask, total, GroundSet, LatticePoint, Rat};
use crate::ops::{project, verify};
use crate::set::{check_m_convex, check_mnat_convex, MConvexSet, MNatSet};

/// Largest edge count accepted by the edge-subset enumerations.
pub const MAX_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingSet {
    left: GroundSet,
    right: GroundSet,
    set: MConvexSet,
}

fn neg(y: &[i64]) -> LatticePoint {
    y.iter().map(|v| -v).collect()
}

fn join(x: &[i64], z: &[i64]) -> LatticePoint {
    let mut p = x.to_vec();
    p.extend_from_slice(z);
    p
}

impl LinkingSet {
    /// Builds and certifies a linking set from points on `V ⊔ U`.
    pub fn new(left: GroundSet, right: GroundSet, points: Vec<LatticePoint>) -> Result<Self> {
        let s = Self::from_trusted(left, right, points)?;
        if !check_m_convex(s.set.points())? {
            return Err(Error::NotCertified("linking set exchange axiom"));
        }
        Ok(s)
    }

    /// Shape checks only.
    pub fn from_trusted(left: GroundSet, right: GroundSet, points: Vec<LatticePoint>) -> Result<Self> {
        let ground = left.concat(&right)?;
        let set = MConvexSet::from_trusted(ground, points)?;
        Ok(LinkingSet { left, right, set })
    }

    pub fn from_set(set: MConvexSet, left_size: usize) -> Result<Self> {
        let n = set.dim();
        if left_size == 0 || left_size >= n {
            return Err(Error::usage("left size must split the ground set into two nonempty parts"));
        }
        let left = set.ground().sub(full_mask(left_size))?;
        let right = set.ground().sub(full_mask(n) & !full_mask(left_size))?;
        Ok(LinkingSet { left, right, set })
    }

    pub fn left(&self) -> &GroundSet {
        &self.left
    }

    pub fn right(&self) -> &GroundSet {
        &self.right
    }

    pub fn set(&self) -> &MConvexSet {
        &self.set
    }

    pub fn points(&self) -> &[LatticePoint] {
        self.set.points()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn left_size(&self) -> usize {
        self.left.size()
    }

    pub fn right_size(&self) -> usize {
        self.right.size()
    }

    fn split<'a>(&self, p: &'a [i64]) -> (&'a [i64], &'a [i64]) {
        p.split_at(self.left.size())
    }
}

/// `π_V(Γ)`.
pub fn left_set(g: &LinkingSet) -> Result<MNatSet> {
    project(&g.set, full_mask(g.left_size()))
}

/// `π_U(Γ)`, in stored coordinates.
pub fn right_set(g: &LinkingSet) -> Result<MNatSet> {
    let n = g.set.dim();
    project(&g.set, full_mask(n) & !full_mask(g.left_size()))
}

fn induced_points(w: &[LatticePoint], g: &LinkingSet) -> Result<Vec<LatticePoint>> {
    check_width(g.right_size(), w[0].len())?;
    let mut out: Vec<LatticePoint> = g
        .points()
        .iter()
        .filter_map(|p| {
            let (x, z) = g.split(p);
            crate::set::contains(w, &neg(z)).then(|| x.to_vec())
        })
        .collect();
    if out.is_empty() {
        return Err(Error::EmptyResult("induction"));
    }
    crate::lattice::canonicalize(&mut out);
    Ok(out)
}

/// `{x : ∃ y ∈ W, (x, −y) ∈ Γ}`.
pub fn induce(w: &MConvexSet, g: &LinkingSet) -> Result<MConvexSet> {
    let pts = induced_points(w.points(), g)?;
    let out = MConvexSet::from_trusted(g.left.clone(), pts)?;
    verify(check_m_convex(out.points())?, "induction is M-convex")?;
    Ok(out)
}

/// Induction of an M♮-convex set.
pub fn induce_mnat(w: &MNatSet, g: &LinkingSet) -> Result<MNatSet> {
    let pts = induced_points(w.points(), g)?;
    let out = MNatSet::from_trusted(g.left.clone(), pts)?;
    verify(check_mnat_convex(out.points())?, "induction is M-natural")?;
    Ok(out)
}

/// `{(x, −z) : ∃ y, (x, −y) ∈ Γ, (y, −z) ∈ Δ}` for `Γ : V → U` and `Δ : U → T`.
pub fn product(g: &LinkingSet, d: &LinkingSet) -> Result<LinkingSet> {
    check_width(g.right_size(), d.left_size())?;
    let mut by_middle: BTreeMap<LatticePoint, Vec<&[i64]>> = BTreeMap::new();
    for p in d.points() {
        let (y, z) = d.split(p);
        by_middle.entry(y.to_vec()).or_default().push(z);
    }
    let mut out = Vec::new();
    for p in g.points() {
        let (x, z) = g.split(p);
        if let Some(zs) = by_middle.get(&neg(z)) {
            out.extend(zs.iter().map(|t| join(x, t)));
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyResult("linking set product"));
    }
    let r = LinkingSet::from_trusted(g.left.clone(), d.right.clone(), out)?;
    verify(check_m_convex(r.points())?, "product is M-convex")?;
    Ok(r)
}

/// `{(x, −x) : a ≤ x ≤ b}`.
pub fn identity_on_box(a: &[i64], b: &[i64]) -> Result<LinkingSet> {
    check_width(a.len(), b.len())?;
    if a.iter().zip(b).any(|(l, h)| l > h) {
        return Err(Error::usage("box requires a ≤ b"));
    }
    let g = GroundSet::new(a.len())?;
    let pts = box_points(a, b).into_iter().map(|x| join(&x, &neg(&x))).collect();
    LinkingSet::from_trusted(g.clone(), g, pts)
}

/// A bipartite graph with left part `V`, right part `U` and optionally
/// weighted edges `(v, u, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize, Option<Rat>)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize, Option<Rat>)>) -> Result<Self> {
        if left == 0 || right == 0 {
            return Err(Error::usage("both sides of a bipartite graph must be nonempty"));
        }
        for (k, (v, u, _)) in edges.iter().enumerate() {
            if *v >= left || *u >= right {
                return Err(Error::usage(alloc::format!("edge {k} leaves the vertex range")));
            }
            if edges[..k].iter().any(|(a, b, _)| a == v && b == u) {
                return Err(Error::usage(alloc::format!("edge {k} is repeated")));
            }
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize, Option<Rat>)] {
        &self.edges
    }

    fn check_edge_cap(&self) -> Result<()> {
        if self.edges.len() > MAX_EDGES {
            return Err(Error::CapExceeded { what: "bipartite edge subsets", size: self.edges.len(), cap: MAX_EDGES });
        }
        Ok(())
    }

    /// Every matching as `(edge mask, left mask, right mask)`.
    pub fn matchings(&self) -> Result<Vec<(u32, u32, u32)>> {
        self.check_edge_cap()?;
        let mut out = Vec::new();
        'subset: for f in 0u32..(1 << self.edges.len()) {
            let (mut lm, mut rm) = (0u32, 0u32);
            for (k, (v, u, _)) in self.edges.iter().enumerate() {
                if f >> k & 1 == 0 {
                    continue;
                }
                if lm >> v & 1 == 1 || rm >> u & 1 == 1 {
                    continue 'subset;
                }
                lm |= 1 << v;
                rm |= 1 << u;
            }
            out.push((f, lm, rm));
        }
        Ok(out)
    }

    fn grounds(&self) -> Result<(GroundSet, GroundSet)> {
        Ok((GroundSet::new(self.left)?, GroundSet::new(self.right)?))
    }

    fn indicator(&self, n: usize, m: u32, sign: i64) -> LatticePoint {
        (0..n).map(|i| sign * (m >> i & 1) as i64).collect()
    }

    pub(crate) fn matching_point(&self, lm: u32, rm: u32) -> LatticePoint {
        join(&self.indicator(self.left, lm, 1), &self.indicator(self.right, rm, -1))
    }
}

/// `{(e_X, −e_Y) : some matching covers exactly X and Y}`.
pub fn from_bipartite_matchings(g: &BipartiteGraph) -> Result<LinkingSet> {
    let pts = g.matchings()?.into_iter().map(|(_, lm, rm)| g.matching_point(lm, rm)).collect();
    let (l, r) = g.grounds()?;
    let out = LinkingSet::from_trusted(l, r, pts)?;
    verify(check_m_convex(out.points())?, "matching linking set is M-convex")?;
    Ok(out)
}

/// One point `(deg_V(F), −deg_U(F))` per edge subset `F`.
pub fn from_bipartite_subsets(g: &BipartiteGraph) -> Result<LinkingSet> {
    g.check_edge_cap()?;
    let pts = (0u32..(1 << g.edges.len()))
        .map(|f| {
            let mut p = vec![0i64; g.left + g.right];
            for (k, (v, u, _)) in g.edges.iter().enumerate() {
                if f >> k & 1 == 1 {
                    p[*v] += 1;
                    p[g.left + u] -= 1;
                }
            }
            p
        })
        .collect();
    let (l, r) = g.grounds()?;
    let out = LinkingSet::from_trusted(l, r, pts)?;
    verify(check_m_convex(out.points())?, "edge-subset linking set is M-convex")?;
    Ok(out)
}

/// `P + v` as the induction of `P` through `{(y + v, −y)}`, with `y`
/// ranging over the bounding box of `P`.
pub fn translate_via_induction(p: &MConvexSet, v: &[i64]) -> Result<MConvexSet> {
    check_width(p.dim(), v.len())?;
    let (lo, hi) = bounding_box(p.points()).expect("nonempty");
    let pts = box_points(&lo, &hi)
        .into_iter()
        .map(|y| join(&crate::lattice::add(&y, v), &neg(&y)))
        .collect();
    let g = LinkingSet::from_trusted(p.ground().clone(), p.ground().clone(), pts)?;
    verify(check_m_convex(g.points())?, "translation linking set is M-convex")?;
    induce(p, &g)
}

/// Truncation of `P` as the induction of `P` through
/// `{(y − e_i, −y)}`, with `y` ranging over the bounding box of `P`.
pub fn truncate_via_induction(p: &MConvexSet) -> Result<MConvexSet> {
    let n = p.dim();
    let (lo, hi) = bounding_box(p.points()).expect("nonempty");
    let mut pts = Vec::new();
    for y in box_points(&lo, &hi) {
        for i in 0..n {
            let mut x = y.clone();
            x[i] -= 1;
            pts.push(join(&x, &neg(&y)));
        }
    }
    let g = LinkingSet::from_trusted(p.ground().clone(), p.ground().clone(), pts)?;
    verify(check_m_convex(g.points())?, "truncation linking set is M-convex")?;
    induce(p, &g)
}

/// The seven points `{(e_i, −e_j) : i ≠ j} ∪ {0}` on `[3] ⊔ [3]`. The
/// exchange axiom fails for this set, so it is built unchecked.
pub fn nonregular_fixture() -> Result<LinkingSet> {
    let g = GroundSet::new(3)?;
    LinkingSet::from_trusted(g.clone(), g, crate::fixtures::nonregular_points())
}

/// `{(y, −y(U)) : y ∈ P}`, a linking set from `U` to a single element.
pub fn sum_linking(p: &MConvexSet) -> Result<LinkingSet> {
    let pts = p.points().iter().map(|y| join(y, &[-total(y)])).collect();
    LinkingSet::from_trusted(p.ground().clone(), GroundSet::new(1)?, pts)
}
