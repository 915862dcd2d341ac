//! M-convex and M♮-convex functions with exact rational values, the four
//! quotient levels between two M-convex functions, flag constants,
//! truncation, elongation and the sparse paving construction.
//!
//! A function is stored as the finite map of its effective domain; every
//! point outside the map has value `+∞`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{check_width, pairing, total, ExtRat, GroundSet, LatticePoint, Rat};
use crate::linking::BipartiteGraph;
use crate::ops::{elongate, truncate, verify};
use crate::quotient::{check_exchange, Verdict};
use crate::set::{check_m_convex, check_mnat_convex, MConvexSet, MNatSet};

/// Shared read access to a finite-domain function.
pub trait PointValues {
    fn ground(&self) -> &GroundSet;
    fn values(&self) -> &BTreeMap<LatticePoint, Rat>;

    fn dim(&self) -> usize {
        self.ground().size()
    }

    fn get(&self, x: &[i64]) -> Option<&Rat> {
        self.values().get(x)
    }

    fn value(&self, x: &[i64]) -> ExtRat {
        self.get(x).cloned().into()
    }

    /// Effective domain, sorted.
    fn dom(&self) -> Vec<LatticePoint> {
        self.values().keys().cloned().collect()
    }

    fn len(&self) -> usize {
        self.values().len()
    }

    fn is_empty(&self) -> bool {
        self.values().is_empty()
    }
}

fn build_map(ground: &GroundSet, pairs: Vec<(LatticePoint, Rat)>) -> Result<BTreeMap<LatticePoint, Rat>> {
    if pairs.is_empty() {
        return Err(Error::EmptyResult("function domain"));
    }
    let mut map = BTreeMap::new();
    for (x, v) in pairs {
        ground.check_point(&x)?;
        if map.insert(x, v).is_some() {
            return Err(Error::usage("a point is listed twice"));
        }
    }
    Ok(map)
}

fn check_map(ground: &GroundSet, map: &BTreeMap<LatticePoint, Rat>) -> Result<()> {
    if map.is_empty() {
        return Err(Error::EmptyResult("function domain"));
    }
    map.keys().try_for_each(|x| ground.check_point(x))
}

/// M-convex function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MFunc {
    ground: GroundSet,
    values: BTreeMap<LatticePoint, Rat>,
}

/// M♮-convex function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MNatFunc {
    ground: GroundSet,
    values: BTreeMap<LatticePoint, Rat>,
}

impl PointValues for MFunc {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }
    fn values(&self) -> &BTreeMap<LatticePoint, Rat> {
        &self.values
    }
}

impl PointValues for MNatFunc {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }
    fn values(&self) -> &BTreeMap<LatticePoint, Rat> {
        &self.values
    }
}

impl MFunc {
    pub fn new(ground: GroundSet, pairs: Vec<(LatticePoint, Rat)>) -> Result<Self> {
        let f = MFunc { values: build_map(&ground, pairs)?, ground };
        if !check_m_convex_fn(&f)? {
            return Err(Error::NotCertified("M-convex function"));
        }
        Ok(f)
    }

    pub fn from_trusted(ground: GroundSet, pairs: Vec<(LatticePoint, Rat)>) -> Result<Self> {
        Ok(MFunc { values: build_map(&ground, pairs)?, ground })
    }

    pub fn from_map(ground: GroundSet, values: BTreeMap<LatticePoint, Rat>) -> Result<Self> {
        check_map(&ground, &values)?;
        Ok(MFunc { ground, values })
    }

    /// Value 0 on every point of `p`.
    pub fn indicator(p: &MConvexSet) -> Self {
        let values = p.points().iter().map(|x| (x.clone(), Rat::zero())).collect();
        MFunc { ground: p.ground().clone(), values }
    }

    pub fn rank(&self) -> i64 {
        total(self.values.keys().next().expect("nonempty"))
    }

    pub fn dom_set(&self) -> MConvexSet {
        MConvexSet::from_trusted(self.ground.clone(), self.dom()).expect("nonempty")
    }

    /// Adds `c` to every value.
    pub fn shifted(&self, c: &Rat) -> Self {
        let values = self.values.iter().map(|(x, v)| (x.clone(), v + c)).collect();
        MFunc { ground: self.ground.clone(), values }
    }
}

impl MNatFunc {
    pub fn new(ground: GroundSet, pairs: Vec<(LatticePoint, Rat)>) -> Result<Self> {
        let f = MNatFunc { values: build_map(&ground, pairs)?, ground };
        if !check_mnat_fn(&f)? {
            return Err(Error::NotCertified("M♮-convex function"));
        }
        Ok(f)
    }

    pub fn from_trusted(ground: GroundSet, pairs: Vec<(LatticePoint, Rat)>) -> Result<Self> {
        Ok(MNatFunc { values: build_map(&ground, pairs)?, ground })
    }

    pub fn from_map(ground: GroundSet, values: BTreeMap<LatticePoint, Rat>) -> Result<Self> {
        check_map(&ground, &values)?;
        Ok(MNatFunc { ground, values })
    }

    pub fn dom_set(&self) -> MNatSet {
        MNatSet::from_trusted(self.ground.clone(), self.dom()).expect("nonempty")
    }

    /// Distinct coordinate sums of the domain, ascending.
    pub fn ranks(&self) -> Vec<i64> {
        let mut r: Vec<i64> = self.values.keys().map(|x| total(x)).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    pub fn layer(&self, k: i64) -> Option<MFunc> {
        let values: BTreeMap<_, _> =
            self.values.iter().filter(|(x, _)| total(x) == k).map(|(x, v)| (x.clone(), v.clone())).collect();
        (!values.is_empty()).then(|| MFunc { ground: self.ground.clone(), values })
    }

    /// Layers by ascending rank.
    pub fn layers(&self) -> Vec<MFunc> {
        self.ranks().into_iter().filter_map(|k| self.layer(k)).collect()
    }

    pub fn top(&self) -> MFunc {
        self.layer(*self.ranks().last().expect("nonempty")).expect("nonempty layer")
    }

    pub fn bottom(&self) -> MFunc {
        self.layer(self.ranks()[0]).expect("nonempty layer")
    }
}

fn moved(x: &[i64], plus: Option<usize>, minus: Option<usize>) -> LatticePoint {
    let mut y = x.to_vec();
    if let Some(i) = plus {
        y[i] += 1;
    }
    if let Some(j) = minus {
        y[j] -= 1;
    }
    y
}

fn pair_value<F: PointValues + ?Sized, G: PointValues + ?Sized>(f: &F, x: &[i64], g: &G, y: &[i64]) -> ExtRat {
    match (f.get(x), g.get(y)) {
        (Some(a), Some(b)) => ExtRat::Finite(a + b),
        _ => ExtRat::Infinite,
    }
}

/// Within-layer exchange for every pair of the domain:
/// `f(x) + f(y) ≥ min_j f(x − e_i + e_j) + f(y + e_i − e_j)`.
fn within_layers<F: PointValues + ?Sized>(f: &F) -> bool {
    let n = f.dim();
    for (x, fx) in f.values() {
        for (y, fy) in f.values() {
            if x == y || total(x) != total(y) {
                continue;
            }
            let lhs = ExtRat::Finite(fx + fy);
            for i in (0..n).filter(|&i| x[i] > y[i]) {
                let best = (0..n)
                    .filter(|&j| x[j] < y[j])
                    .map(|j| pair_value(f, &moved(x, Some(j), Some(i)), f, &moved(y, Some(i), Some(j))))
                    .min()
                    .unwrap_or(ExtRat::Infinite);
                if lhs < best {
                    return false;
                }
            }
        }
    }
    true
}

/// Domain is M-convex and the exchange inequality holds for all pairs.
pub fn check_m_convex_fn<F: PointValues + ?Sized>(f: &F) -> Result<bool> {
    let dom = f.dom();
    let k = total(&dom[0]);
    if dom.iter().any(|x| total(x) != k) || !check_m_convex(&dom)? {
        return Ok(false);
    }
    Ok(within_layers(f))
}

/// Domain is M♮-convex, the between-layer inequality
/// `f(x) + f(y) ≥ min_{j ∈ supp⁺(x−y)} f(x − e_j) + f(y + e_j)` holds for
/// `x(E) > y(E)`, and every layer is M-convex.
pub fn check_mnat_fn<F: PointValues + ?Sized>(f: &F) -> Result<bool> {
    let dom = f.dom();
    if !check_mnat_convex(&dom)? {
        return Ok(false);
    }
    let n = f.dim();
    for (x, fx) in f.values() {
        for (y, fy) in f.values() {
            if total(x) <= total(y) {
                continue;
            }
            let lhs = ExtRat::Finite(fx + fy);
            let best = (0..n)
                .filter(|&j| x[j] > y[j])
                .map(|j| pair_value(f, &moved(x, None, Some(j)), f, &moved(y, Some(j), None)))
                .min()
                .unwrap_or(ExtRat::Infinite);
            if lhs < best {
                return Ok(false);
            }
        }
    }
    Ok(within_layers(f))
}

/// Points of `argmin f − ⟨u, ·⟩`.
pub fn minimizer_points<F: PointValues + ?Sized>(f: &F, u: &[Rat]) -> Result<Vec<LatticePoint>> {
    check_width(f.dim(), u.len())?;
    let mut best: Option<Rat> = None;
    let mut out = Vec::new();
    for (x, v) in f.values() {
        let t = v - pairing(u, x);
        match &best {
            Some(b) if t > *b => {}
            Some(b) if t == *b => out.push(x.clone()),
            _ => {
                best = Some(t);
                out.clear();
                out.push(x.clone());
            }
        }
    }
    Ok(out)
}

/// `f^u` as a set.
pub fn minimizer(f: &MFunc, u: &[Rat]) -> Result<MConvexSet> {
    MConvexSet::from_trusted(f.ground.clone(), minimizer_points(f, u)?)
}

/// `f^u` of an M♮-convex function.
pub fn minimizer_mnat(f: &MNatFunc, u: &[Rat]) -> Result<MNatSet> {
    MNatSet::from_trusted(f.ground.clone(), minimizer_points(f, u)?)
}

fn convolve_maps(
    f: &BTreeMap<LatticePoint, Rat>,
    g: &BTreeMap<LatticePoint, Rat>,
) -> BTreeMap<LatticePoint, Rat> {
    let mut out: BTreeMap<LatticePoint, Rat> = BTreeMap::new();
    for (x, a) in f {
        for (y, b) in g {
            let z: LatticePoint = x.iter().zip(y).map(|(s, t)| s + t).collect();
            let v = a + b;
            match out.get_mut(&z) {
                Some(w) if *w <= v => {}
                Some(w) => *w = v,
                None => {
                    out.insert(z, v);
                }
            }
        }
    }
    out
}

/// `(f □ g)(z) = min { f(x) + g(y) : x + y = z }`.
pub fn convolution(f: &MFunc, g: &MFunc) -> Result<MFunc> {
    check_width(f.dim(), g.dim())?;
    MFunc::from_map(f.ground.clone(), convolve_maps(&f.values, &g.values))
}

/// An M-convex function on `V ⊔ U`; points are stored as `(x, z)` and read
/// as `γ(x, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingFn {
    left: GroundSet,
    right: GroundSet,
    f: MFunc,
}

impl LinkingFn {
    pub fn new(left: GroundSet, right: GroundSet, f: MFunc) -> Result<Self> {
        check_width(left.size() + right.size(), f.dim())?;
        if !check_m_convex_fn(&f)? {
            return Err(Error::NotCertified("linking function"));
        }
        Ok(LinkingFn { left, right, f })
    }

    pub fn from_trusted(left: GroundSet, right: GroundSet, f: MFunc) -> Result<Self> {
        check_width(left.size() + right.size(), f.dim())?;
        Ok(LinkingFn { left, right, f })
    }

    pub fn left(&self) -> &GroundSet {
        &self.left
    }

    pub fn right(&self) -> &GroundSet {
        &self.right
    }

    pub fn function(&self) -> &MFunc {
        &self.f
    }

    /// `π_V(γ)(x) = min_z γ(x, z)`.
    pub fn left_function(&self) -> Result<MNatFunc> {
        let v = self.left.size();
        let mut out: BTreeMap<LatticePoint, Rat> = BTreeMap::new();
        for (p, val) in &self.f.values {
            let x = p[..v].to_vec();
            match out.get_mut(&x) {
                Some(w) if *w <= *val => {}
                Some(w) => *w = val.clone(),
                None => {
                    out.insert(x, val.clone());
                }
            }
        }
        MNatFunc::from_map(self.left.clone(), out)
    }
}

/// `ind(x) = min_y γ(x, −y) + r(y)`.
pub fn induce_fn<F: PointValues + ?Sized>(r: &F, gamma: &LinkingFn) -> Result<MNatFunc> {
    check_width(gamma.right.size(), r.dim())?;
    let v = gamma.left.size();
    let mut out: BTreeMap<LatticePoint, Rat> = BTreeMap::new();
    for (p, val) in &gamma.f.values {
        let y: LatticePoint = p[v..].iter().map(|t| -t).collect();
        let Some(ry) = r.get(&y) else { continue };
        let x = p[..v].to_vec();
        let total = val + ry;
        match out.get_mut(&x) {
            Some(w) if *w <= total => {}
            Some(w) => *w = total,
            None => {
                out.insert(x, total);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyResult("function induction"));
    }
    MNatFunc::from_map(gamma.left.clone(), out)
}

/// `γ_G(e_A, −e_B)` = least total weight of a matching covering exactly
/// `A` and `B`; missing weights count as 0.
pub fn linking_fn_from_weighted_bipartite(g: &BipartiteGraph) -> Result<LinkingFn> {
    let mut out: BTreeMap<LatticePoint, Rat> = BTreeMap::new();
    for (em, lm, rm) in g.matchings()? {
        let w = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(k, _)| em >> k & 1 == 1)
            .fold(Rat::zero(), |acc, (_, (_, _, w))| acc + w.clone().unwrap_or_else(Rat::zero));
        let pt = g.matching_point(lm, rm);
        match out.get_mut(&pt) {
            Some(v) if *v <= w => {}
            Some(v) => *v = w,
            None => {
                out.insert(pt, w);
            }
        }
    }
    let (l, r) = (GroundSet::new(g.left())?, GroundSet::new(g.right())?);
    let f = MFunc::from_map(l.concat(&r)?, out)?;
    verify(check_m_convex_fn(&f)?, "bipartite linking function is M-convex")?;
    LinkingFn::from_trusted(l, r, f)
}

fn same_ground<F: PointValues + ?Sized, G: PointValues + ?Sized>(f: &F, g: &G) -> Result<()> {
    check_width(f.dim(), g.dim())
}

/// Union of the graphs of two functions of different rank.
pub fn union_fn(f: &MFunc, g: &MFunc) -> Result<MNatFunc> {
    same_ground(f, g)?;
    if f.rank() == g.rank() {
        return Err(Error::usage("union needs functions of different rank"));
    }
    let mut values = f.values.clone();
    values.extend(g.values.iter().map(|(x, v)| (x.clone(), v.clone())));
    MNatFunc::from_map(f.ground.clone(), values)
}

fn elementary(f: &MFunc, g: &MFunc) -> Result<Option<Verdict>> {
    same_ground(f, g)?;
    let gap = f.rank() - g.rank();
    if gap != 1 {
        return Ok(Some(Verdict::Skipped(alloc::format!("rank gap {gap} is not 1"))));
    }
    Ok(None)
}

/// The union of `f` and `g` is M♮-convex; decided for rank gap 1 only.
pub fn quotient_a(f: &MFunc, g: &MFunc) -> Result<Verdict> {
    if let Some(v) = elementary(f, g)? {
        return Ok(v);
    }
    Ok(Verdict::from_bool(check_mnat_fn(&union_fn(f, g)?)?))
}

/// `γ(x, rank(f) − x(E)) = h(x)` on `E ⊔ {e}` and `r` the single point
/// `rank(g) − rank(f)` with value 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnInductionWitness {
    pub gamma: LinkingFn,
    pub r: MFunc,
}

pub fn fn_induction_witness(f: &MFunc, g: &MFunc, h: &MNatFunc) -> Result<FnInductionWitness> {
    same_ground(f, g)?;
    same_ground(f, h)?;
    let rank = f.rank();
    let pairs = h
        .values
        .iter()
        .map(|(x, v)| {
            let mut p = x.clone();
            p.push(rank - total(x));
            (p, v.clone())
        })
        .collect();
    let aux = GroundSet::new(1)?;
    let gamma = LinkingFn::from_trusted(f.ground.clone(), aux.clone(), MFunc::from_trusted(f.ground.concat(&aux)?, pairs)?)?;
    let r = MFunc::from_trusted(aux, vec![(vec![g.rank() - rank], Rat::zero())])?;
    Ok(FnInductionWitness { gamma, r })
}

/// `γ` is M-convex, `π_E(γ)^↑ = f` and `ind_r(γ) = g`, all as functions.
pub fn verify_fn_induction(w: &FnInductionWitness, f: &MFunc, g: &MFunc) -> Result<bool> {
    if !check_m_convex_fn(&w.gamma.f)? || !check_m_convex_fn(&w.r)? {
        return Ok(false);
    }
    if w.gamma.left_function()?.top() != *f {
        return Ok(false);
    }
    match induce_fn(&w.r, &w.gamma) {
        Ok(i) => Ok(i.values == g.values),
        Err(Error::EmptyResult(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Induction witness built from the union; decided for rank gap 1 only.
pub fn quotient_b(f: &MFunc, g: &MFunc) -> Result<(Verdict, Option<FnInductionWitness>)> {
    if let Some(v) = elementary(f, g)? {
        return Ok((v, None));
    }
    let w = fn_induction_witness(f, g, &union_fn(f, g)?)?;
    let ok = verify_fn_induction(&w, f, g)?;
    Ok((Verdict::from_bool(ok), Some(w)))
}

/// Induction witness built from a caller-supplied M♮-convex `h` with top
/// layer `f` and bottom layer `g`.
pub fn quotient_b_with(f: &MFunc, g: &MFunc, h: &MNatFunc) -> Result<(bool, FnInductionWitness)> {
    let w = fn_induction_witness(f, g, h)?;
    let ok = verify_fn_induction(&w, f, g)?;
    Ok((ok, w))
}

/// For all `x ∈ dom f`, `y ∈ dom g`, `i ∈ supp⁺(y−x)` some
/// `j ∈ supp⁻(y−x)` has `f(x) + g(y) ≥ f(x + e_i − e_j) + g(y − e_i + e_j)`.
pub fn quotient_c(f: &MFunc, g: &MFunc) -> Result<bool> {
    same_ground(f, g)?;
    let n = f.dim();
    for (x, fx) in &f.values {
        for (y, gy) in &g.values {
            let lhs = ExtRat::Finite(fx + gy);
            for i in (0..n).filter(|&i| y[i] > x[i]) {
                let ok = (0..n).filter(|&j| y[j] < x[j]).any(|j| {
                    let rhs = pair_value(f, &moved(x, Some(i), Some(j)), g, &moved(y, Some(j), Some(i)));
                    rhs.is_finite() && lhs >= rhs
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every pair of minimizers `(f^u, g^u)` is a quotient of sets.
pub fn quotient_d(f: &MFunc, g: &MFunc) -> Result<bool> {
    let atlas = crate::atlas::minimizer_atlas(f, g)?;
    for e in &atlas.entries {
        if !check_exchange(&e.fcell, &e.gcell)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All four levels side by side.
pub fn fn_quotient_levels(f: &MFunc, g: &MFunc) -> Result<BTreeMap<char, Verdict>> {
    let mut out = BTreeMap::new();
    out.insert('A', quotient_a(f, g)?);
    out.insert('B', quotient_b(f, g)?.0);
    out.insert('C', Verdict::from_bool(quotient_c(f, g)?));
    out.insert('D', Verdict::from_bool(quotient_d(f, g)?));
    Ok(out)
}

fn chain_term(chain: &[MFunc], c: &[Rat], m: usize, l: usize, x: &[i64], y: &[i64], j: usize) -> Option<Rat> {
    let a = chain[m - 1].get(&moved(x, None, Some(j)))?;
    let b = chain[l + 1].get(&moved(y, Some(j), None))?;
    let fx = chain[m].get(x)?;
    let fy = chain[l].get(y)?;
    Some(fx - a + &c[m - 1] - b + &c[l + 1] + fy - &c[l])
}

/// Constants `c_0, …, c_k` making `min_i (f_i − c_i)` M♮-convex for a
/// consecutive chain `f_0, …, f_k` of ascending rank, and that function.
pub fn flag_constants(chain: &[MFunc]) -> Result<(Vec<Rat>, MNatFunc)> {
    let first = chain.first().ok_or_else(|| Error::usage("empty chain"))?;
    for (i, f) in chain.iter().enumerate() {
        same_ground(first, f)?;
        if f.rank() != first.rank() + i as i64 {
            return Err(Error::usage("chain ranks must step by one"));
        }
    }
    for w in chain.windows(2) {
        if !quotient_c(&w[1], &w[0])? {
            return Err(Error::usage("consecutive chain members fail the exchange quotient"));
        }
    }
    let mut dom: Vec<LatticePoint> = chain.iter().flat_map(|f| f.values.keys().cloned()).collect();
    crate::lattice::canonicalize(&mut dom);
    if !check_mnat_convex(&dom)? {
        return Err(Error::usage("union of domains is not M♮-convex"));
    }
    let n = first.dim();
    let mut c = vec![Rat::zero(); chain.len()];
    for m in 2..chain.len() {
        let mut best: Option<Rat> = None;
        for l in 0..=m - 2 {
            for y in chain[l].values.keys() {
                for x in chain[m].values.keys() {
                    let terms: Vec<Rat> =
                        (0..n).filter(|&j| x[j] > y[j]).filter_map(|j| chain_term(chain, &c, m, l, x, y, j)).collect();
                    if terms.is_empty() {
                        return Err(Error::usage("no exchange index with finite values"));
                    }
                    for t in terms {
                        if best.as_ref().map_or(true, |b| t < *b) {
                            best = Some(t);
                        }
                    }
                }
            }
        }
        c[m] = best.expect("chain members are nonempty");
    }
    let mut values = BTreeMap::new();
    for (f, ci) in chain.iter().zip(&c) {
        values.extend(f.values.iter().map(|(x, v)| (x.clone(), v - ci)));
    }
    let h = MNatFunc::from_map(first.ground.clone(), values)?;
    if !check_mnat_fn(&h)? {
        return Err(Error::Disagreement("flag constants did not produce an M♮-convex function"));
    }
    Ok((c, h))
}

fn neighbour_min(f: &MFunc, dom: &[LatticePoint], sign: i64) -> Result<MFunc> {
    let n = f.dim();
    let mut values = BTreeMap::new();
    for x in dom {
        let best = (0..n)
            .filter_map(|i| {
                let mut y = x.clone();
                y[i] += sign;
                f.get(&y).cloned()
            })
            .min()
            .ok_or(Error::Disagreement("point without a neighbour in the domain"))?;
        values.insert(x.clone(), best);
    }
    let out = MFunc::from_map(f.ground.clone(), values)?;
    verify(check_m_convex_fn(&out)?, "neighbour minimum is M-convex")?;
    Ok(out)
}

/// `f^tr(x) = min { f(y) : y ≥ x }` on the truncated domain.
pub fn truncation_fn(f: &MFunc) -> Result<MFunc> {
    let dom = truncate(&f.dom_set(), 1)?;
    neighbour_min(f, dom.points(), 1)
}

/// `f^el(x) = min { f(y) : y ≤ x }` on the elongated domain.
pub fn elongation_fn(f: &MFunc) -> Result<MFunc> {
    let dom = elongate(&f.dom_set(), 1)?;
    neighbour_min(f, dom.points(), -1)
}

fn is_zero_one(x: &[i64]) -> bool {
    x.iter().all(|&v| v == 0 || v == 1)
}

fn full_hypersimplex<F: PointValues + ?Sized>(f: &F, rank: i64) -> bool {
    let n = f.dim() as u32;
    let want = (0u32..1 << n).filter(|s| s.count_ones() as i64 == rank).count();
    f.values().keys().all(|x| is_zero_one(x) && total(x) == rank) && f.len() == want
}

fn min_value<F: PointValues + ?Sized>(f: &F) -> Rat {
    f.values().values().min().expect("nonempty").clone()
}

/// `argmin f` is a sparse paving matroid: any two non-bases of rank `m`
/// meet in at most `m − 2` elements.
pub fn is_sparse_paving(f: &MFunc) -> bool {
    let m = f.rank();
    if !f.values.keys().all(|x| is_zero_one(x)) {
        return false;
    }
    let c = min_value(f);
    let nonbases: Vec<&LatticePoint> = f.values.iter().filter(|(_, v)| **v > c).map(|(x, _)| x).collect();
    nonbases.iter().enumerate().all(|(a, x)| {
        nonbases[a + 1..].iter().all(|y| x.iter().zip(y.iter()).map(|(s, t)| s.min(t)).sum::<i64>() <= m - 2)
    })
}

/// `h = f` on the top layer, `g` on the bottom layer and
/// `min(c_f, c_g)` on every 0/1 point strictly between.
pub fn sparse_paving_quotient(f: &MFunc, g: &MFunc) -> Result<MNatFunc> {
    same_ground(f, g)?;
    let (m, k) = (f.rank(), g.rank());
    if m <= k || !full_hypersimplex(f, m) || !full_hypersimplex(g, k) {
        return Err(Error::usage("sparse paving inputs need full hypersimplex domains of decreasing rank"));
    }
    if !is_sparse_paving(f) || !is_sparse_paving(g) {
        return Err(Error::usage("minimizers are not sparse paving"));
    }
    if !quotient_d(f, g)? {
        return Err(Error::usage("minimizers do not form quotients"));
    }
    let mid = core::cmp::min(min_value(f), min_value(g));
    let n = f.dim();
    let mut values = f.values.clone();
    values.extend(g.values.iter().map(|(x, v)| (x.clone(), v.clone())));
    for s in 0u32..1 << n {
        let r = s.count_ones() as i64;
        if k < r && r < m {
            values.insert((0..n).map(|i| (s >> i & 1) as i64).collect(), mid.clone());
        }
    }
    let h = MNatFunc::from_map(f.ground.clone(), values)?;
    if !check_mnat_fn(&h)? {
        return Err(Error::Disagreement("sparse paving completion is not M♮-convex"));
    }
    Ok(h)
}

/// Name of a quotient level for display.
pub fn level_name(c: char) -> alloc::string::String {
    match c {
        'A' => "top and bottom".to_string(),
        'B' => "induction".to_string(),
        'C' => "exchange".to_string(),
        _ => "minimizers".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generator::{gen_m_func, gen_mconvex, gen_mnat, gen_mnat_func, gen_raw_func, gen_sparse_paving};
    use crate::lattice::{rat, ratio};
    use crate::linking::{from_bipartite_matchings, induce};
    use crate::set::greedy_vertex;
    use proptest::prelude::*;

    fn set(raw: Vec<LatticePoint>) -> MConvexSet {
        MConvexSet::from_points(raw).unwrap()
    }

    fn squares(p: &MConvexSet) -> MFunc {
        let pairs = p.points().iter().map(|x| (x.clone(), rat(x.iter().map(|v| v * v).sum()))).collect();
        MFunc::new(p.ground().clone(), pairs).unwrap()
    }

    /// `f` is M♮ iff `(x, −x(E)) ↦ f(x)` is M-convex.
    fn mnat_by_lift<F: PointValues>(f: &F) -> bool {
        let pairs = f
            .values()
            .iter()
            .map(|(x, v)| {
                let mut y = x.clone();
                y.push(-total(x));
                (y, v.clone())
            })
            .collect();
        let lifted = MFunc::from_trusted(GroundSet::new(f.dim() + 1).unwrap(), pairs).unwrap();
        check_m_convex_fn(&lifted).unwrap()
    }

    fn layer_pair(seed: u64, c: i64) -> Option<(MFunc, MFunc)> {
        let r = gen_mnat(seed, 3, 2).unwrap();
        let h = gen_mnat_func(seed, &r, c).unwrap();
        let layers = h.layers();
        (layers.len() >= 2).then(|| (layers[layers.len() - 1].clone(), layers[layers.len() - 2].clone()))
    }

    #[test]
    fn indicator_and_squares() {
        let p = set(fixtures::ex2_2_p());
        assert!(check_m_convex_fn(&MFunc::indicator(&p)).unwrap());
        assert!(check_m_convex_fn(&squares(&p)).unwrap());
    }

    #[test]
    fn layered_example_fails_without_constants() {
        let [f0, f1, f2] = fixtures::layered_example_default();
        let mut values = f0.values().clone();
        values.extend(f1.values().clone());
        values.extend(f2.values().clone());
        let h = MNatFunc::from_map(f0.ground().clone(), values).unwrap();
        assert!(!check_mnat_fn(&h).unwrap());
        assert!(!mnat_by_lift(&h));
        assert!(quotient_c(&f2, &f1).unwrap() && quotient_c(&f1, &f0).unwrap());
        assert!(quotient_c(&f2, &f0).unwrap());
    }

    #[test]
    fn layered_example_constants() {
        let chain = fixtures::layered_example_default();
        let (c, h) = flag_constants(&chain).unwrap();
        assert_eq!(c, vec![rat(0), rat(0), rat(-2)]);
        assert_eq!(h.value(&[1, 1]), ExtRat::Finite(rat(2)));
        assert!(mnat_by_lift(&h));
        for (l1, l2, k1, k2) in [(3, -1, 2, 5), (0, 0, 0, 0), (-2, 4, 1, -3)] {
            let chain = fixtures::layered_example(rat(l1), rat(l2), rat(k1), rat(k2)).unwrap();
            let (c, _) = flag_constants(&chain).unwrap();
            assert_eq!(c[2], rat(l1 + l2 - k1 - k2));
        }
        let (c, h) = flag_constants(&chain[1..]).unwrap();
        assert_eq!(c, vec![rat(0), rat(0)]);
        assert_eq!(h, union_fn(&chain[2], &chain[1]).unwrap());
    }

    #[test]
    fn minimizer_examples() {
        let p = set(fixtures::ex2_2_p());
        let zero = vec![rat(0); 3];
        assert_eq!(minimizer(&MFunc::indicator(&p), &zero).unwrap(), p);
        let t = fixtures::ex2_7_p();
        let b = crate::set::submodular_to_set(&t).unwrap();
        let f = MFunc::indicator(&b);
        for order in [[0usize, 1, 2], [2, 0, 1], [1, 2, 0]] {
            let mut u = vec![rat(0); 3];
            for (rank, &i) in order.iter().enumerate() {
                u[i] = rat(3 - rank as i64);
            }
            assert_eq!(minimizer(&f, &u).unwrap().points(), &[greedy_vertex(&t, &order).unwrap()]);
        }
        let sq = squares(&set(vec![vec![1, 0], vec![0, 1], vec![2, -1]]));
        assert_eq!(minimizer(&sq, &[rat(0), rat(0)]).unwrap().len(), 2);
    }

    #[test]
    fn convolution_examples() {
        let flag = fixtures::ex2_38_flag();
        let (p, q) = (set(flag[2].clone()), set(flag[1].clone()));
        let c = convolution(&MFunc::indicator(&p), &MFunc::indicator(&q)).unwrap();
        assert_eq!(c.len(), 5);
        assert!(c.values().values().all(|v| v.is_zero()));
        let unit = MFunc::indicator(&set(vec![vec![0, 0]]));
        let f = squares(&p);
        assert_eq!(convolution(&f, &unit).unwrap(), f);
    }

    #[test]
    fn weighted_bipartite_linking() {
        let g = fixtures::ex3_6_graph();
        let gf = linking_fn_from_weighted_bipartite(&g).unwrap();
        let plain = from_bipartite_matchings(&g).unwrap();
        assert_eq!(gf.function().dom(), plain.points());
        let src = MConvexSet::from_points(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let ind = induce_fn(&MFunc::indicator(&src), &gf).unwrap();
        assert_eq!(ind.dom(), induce(&src, &plain).unwrap().points());
        let edges = vec![(0, 0, Some(rat(1))), (0, 1, Some(rat(5))), (1, 0, Some(rat(2))), (1, 1, Some(ratio(1, 2)))];
        let wg = BipartiteGraph::new(2, 2, edges).unwrap();
        let gf = linking_fn_from_weighted_bipartite(&wg).unwrap();
        assert_eq!(gf.function().value(&[1, 1, -1, -1]), ExtRat::Finite(ratio(3, 2)));
        assert!(check_m_convex_fn(gf.function()).unwrap());
    }

    #[test]
    fn identity_linking_function_induces_itself() {
        let p = set(fixtures::ex2_38_flag()[1].clone());
        let r = squares(&p);
        let id = crate::linking::identity_on_box(&[0, 0], &[4, 4]).unwrap();
        let gamma = LinkingFn::new(id.left().clone(), id.right().clone(), MFunc::indicator(id.set())).unwrap();
        assert_eq!(induce_fn(&r, &gamma).unwrap().values(), r.values());
    }

    #[test]
    fn hierarchy_on_flag_example() {
        let flag = fixtures::ex2_38_flag();
        let f = MFunc::indicator(&set(fixtures::ex2_38_p_prime()));
        let g = MFunc::indicator(&set(flag[1].clone()));
        let levels = fn_quotient_levels(&f, &g).unwrap();
        assert!(levels.values().all(|v| *v == Verdict::True));
        let (_, w) = quotient_b(&f, &g).unwrap();
        let mut w = w.unwrap();
        assert_eq!(induce_fn(&w.r, &w.gamma).unwrap().values(), g.values());
        w.r = MFunc::from_trusted(w.r.ground().clone(), vec![(vec![-1], rat(1))]).unwrap();
        assert!(!verify_fn_induction(&w, &f, &g).unwrap());
        let p = MFunc::indicator(&set(flag[2].clone()));
        assert!(matches!(quotient_a(&p, &g).unwrap(), Verdict::Skipped(_)));
    }

    #[test]
    fn running_example_levels() {
        let f = MFunc::indicator(&set(fixtures::ex2_2_p()));
        let g = MFunc::indicator(&set(fixtures::ex2_2_q()));
        assert!(quotient_c(&f, &g).unwrap());
        assert!(quotient_d(&f, &g).unwrap());
        let a = MFunc::indicator(&set(vec![vec![1, 0], vec![0, 1]]));
        let b = MFunc::indicator(&set(vec![vec![1, -1]]));
        assert!(!quotient_c(&a, &b).unwrap());
        assert!(!quotient_d(&a, &b).unwrap());
        assert_eq!(quotient_a(&a, &b).unwrap(), Verdict::False);
        assert_eq!(quotient_b(&a, &b).unwrap().0, Verdict::False);
    }

    #[test]
    fn truncation_and_elongation() {
        let p = set(fixtures::ex2_2_p());
        let f = squares(&p);
        let t = truncation_fn(&f).unwrap();
        assert_eq!(t.dom_set(), truncate(&p, 1).unwrap());
        for (x, v) in t.values() {
            let want = f.values().iter().filter(|(y, _)| x.iter().zip(y.iter()).all(|(a, b)| a <= b)).map(|(_, w)| w).min();
            assert_eq!(Some(v), want);
        }
        assert!(quotient_c(&f, &t).unwrap());
        let e = elongation_fn(&f).unwrap();
        assert_eq!(e.dom_set(), elongate(&p, 1).unwrap());
        assert!(quotient_c(&e, &f).unwrap());
        let z = truncation_fn(&MFunc::indicator(&p)).unwrap();
        assert_eq!(z, MFunc::indicator(&truncate(&p, 1).unwrap()));
    }

    #[test]
    fn uniform_sparse_paving() {
        let u24 = MFunc::indicator(&set(crate::generator::hypersimplex(4, 2)));
        let u14 = MFunc::indicator(&set(crate::generator::hypersimplex(4, 1)));
        let h = sparse_paving_quotient(&u24, &u14).unwrap();
        assert_eq!(h.len(), 10);
        assert!(mnat_by_lift(&h));
        let f = u24.shifted(&rat(3));
        let h = sparse_paving_quotient(&f, &u14).unwrap();
        assert!(h.values().iter().filter(|(x, _)| total(x) == 1).all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn sparse_paving_pairs_certify() {
        let mut certified = 0;
        for seed in 0..40u64 {
            let f = gen_sparse_paving(seed, 4, 2).unwrap();
            let g = gen_sparse_paving(seed + 1000, 4, 1).unwrap();
            if quotient_d(&f, &g).unwrap() {
                let h = sparse_paving_quotient(&f, &g).unwrap();
                assert!(mnat_by_lift(&h));
                assert_eq!(h.top(), f);
                assert_eq!(h.bottom(), g);
                certified += 1;
            }
        }
        assert!(certified > 0);
    }

    #[test]
    fn rejects_uncertified() {
        let p = set(fixtures::ex2_2_p());
        let bad = gen_raw_func(3, &p, 4).unwrap();
        if !check_m_convex_fn(&bad).unwrap() {
            let pairs = bad.values().iter().map(|(x, v)| (x.clone(), v.clone())).collect();
            assert_eq!(MFunc::new(p.ground().clone(), pairs), Err(Error::NotCertified("M-convex function")));
        }
        assert!(MFunc::new(GroundSet::new(2).unwrap(), vec![]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mnat_check_matches_lift(seed in any::<u64>(), c in 0i64..3, spread in 0i64..3) {
            let r = gen_mnat(seed, 3, 2).unwrap();
            let h = gen_mnat_func(seed, &r, c).unwrap();
            prop_assert!(mnat_by_lift(&h));
            let pairs = r.points().iter().map(|x| (x.clone(), h.get(x).unwrap() + rat(spread * (x[0] % 2)))).collect();
            let raw = MNatFunc::from_trusted(r.ground().clone(), pairs).unwrap();
            prop_assert_eq!(check_mnat_fn(&raw).unwrap(), mnat_by_lift(&raw));
        }

        #[test]
        fn gap_one_hierarchy(seed in any::<u64>(), c in 0i64..3, independent in any::<bool>()) {
            if let Some((f, g)) = layer_pair(seed, c) {
                let (f, g) = if independent {
                    (gen_m_func(seed ^ 1, &f.dom_set(), 2).unwrap(), gen_m_func(seed ^ 2, &g.dom_set(), 2).unwrap())
                } else {
                    (f, g)
                };
                let levels = fn_quotient_levels(&f, &g).unwrap();
                let first = levels[&'A'].clone();
                prop_assert!(first.as_bool().is_some());
                for v in levels.values() {
                    prop_assert_eq!(v, &first);
                }
            }
        }

        #[test]
        fn truncation_is_a_quotient(seed in any::<u64>(), c in 0i64..3) {
            let p = gen_mconvex(seed, 3, 2).unwrap();
            let f = gen_m_func(seed, &p, c).unwrap();
            let t = truncation_fn(&f).unwrap();
            prop_assert!(quotient_c(&f, &t).unwrap());
            prop_assert!(quotient_d(&f, &t).unwrap());
        }

        #[test]
        fn random_chains_get_constants(seed in any::<u64>(), c in 0i64..3, offsets in proptest::collection::vec(-4i64..5, 8)) {
            let r = gen_mnat(seed, 3, 2).unwrap();
            let h = gen_mnat_func(seed, &r, c).unwrap();
            let chain: Vec<MFunc> = h.layers().iter().zip(&offsets).map(|(f, o)| f.shifted(&rat(*o))).collect();
            let (consts, out) = flag_constants(&chain).unwrap();
            prop_assert!(mnat_by_lift(&out));
            prop_assert_eq!(consts.len(), chain.len());
        }
    }
}
