//! Ten independent deciders for `P ↠ Q`, the witness constructors behind
//! them, and a harness that runs them side by side.
//!
//! The existential characterizations (induction, Green preorder, matroid
//! lifts, compressed shape) are decided by building one canonical witness
//! and verifying it through the forward operations, so a `true` verdict
//! is certified while a `false` verdict means the canonical witness failed.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::{check_width, full_mask, total, GroundSet, LatticePoint};
use crate::lift::{compatible_lifts_capped, LiftCertificate};
use crate::linking::{induce, left_set, product, LinkingSet};
use crate::ops::{project, verify};
use crate::set::{
    check_m_convex, check_mnat_convex, exchange_holds, greedy_unchecked, is_submodular_table, points_between,
    set_to_submodular, submodular_to_set, MConvexSet, MNatSet, SubmodularFn,
};

/// Outcome of one decider.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Skipped(String),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Skipped(_) => None,
        }
    }

    /// Turns a cap overflow into a skip; other errors propagate.
    pub fn from_result(r: Result<bool>) -> Result<Self> {
        match r {
            Ok(b) => Ok(Verdict::from_bool(b)),
            Err(Error::CapExceeded { what, size, cap }) => {
                Ok(Verdict::Skipped(alloc::format!("{what}: size {size} exceeds cap {cap}")))
            }
            Err(e) => Err(e),
        }
    }
}

/// Size caps for the factorial and lift-based deciders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Ground size for the all-orders vertex sweep.
    pub vertex_n: usize,
    /// Lifted ground size for the matroid-lift decider.
    pub lift_ground: usize,
    /// Lifted ground size for the all-orders compressed-shape sweep.
    pub compressed_ground: usize,
    /// Bound on `|M|·|N|` for the exchange check between lifts.
    pub lift_pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { vertex_n: 8, lift_ground: 16, compressed_ground: 9, lift_pairs: 250_000 }
    }
}

fn same_ground(p: &SubmodularFn, q: &SubmodularFn) -> Result<()> {
    check_width(p.dim(), q.dim())
}

/// `q(Y) − q(X) ≤ p(Y) − p(X)` for all `X ⊆ Y`.
pub fn check_compliant(p: &SubmodularFn, q: &SubmodularFn) -> Result<bool> {
    same_ground(p, q)?;
    let (tp, tq) = (p.table(), q.table());
    for y in 0..tp.len() {
        let mut x = y;
        loop {
            if tq[y] - tq[x] > tp[y] - tp[x] {
                return Ok(false);
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & y;
        }
    }
    Ok(true)
}

/// Greedy vertices of `p` dominate those of `q` for every order.
pub fn check_vertex_containment(p: &SubmodularFn, q: &SubmodularFn, cap: usize) -> Result<bool> {
    same_ground(p, q)?;
    let n = p.dim();
    if n > cap {
        return Err(Error::CapExceeded { what: "vertex sweep ground set", size: n, cap });
    }
    for order in (0..n).permutations(n) {
        let x = greedy_unchecked(p.table(), &order);
        let y = greedy_unchecked(q.table(), &order);
        if x.iter().zip(&y).any(|(a, b)| a < b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Contraction by every `X` keeps `q_{/X} ≤ p_{/X}` pointwise.
pub fn check_contraction_containment(p: &SubmodularFn, q: &SubmodularFn) -> Result<bool> {
    same_ground(p, q)?;
    let full = full_mask(p.dim());
    for x in 0..full {
        let pc = crate::ops::contraction_table(p, x)?;
        let qc = crate::ops::contraction_table(q, x)?;
        if qc.table().iter().zip(pc.table()).any(|(a, b)| a > b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integer points of `G(p, q^#)`.
pub fn gpoly_points(p: &SubmodularFn, q: &SubmodularFn) -> Result<MNatSet> {
    same_ground(p, q)?;
    let lower = q.dual();
    let pts = points_between(p.dim(), p.table(), lower.table());
    if pts.is_empty() {
        return Err(Error::EmptyResult("g-polymatroid has no integer points"));
    }
    MNatSet::from_trusted(p.ground().clone(), pts)
}

/// `G(p, q^#) ∩ Z^E` is M♮ with top layer `B(p)` and bottom layer `B(q)`.
pub fn check_top_bottom(p: &SubmodularFn, q: &SubmodularFn) -> Result<bool> {
    let r = match gpoly_points(p, q) {
        Ok(r) => r,
        Err(Error::EmptyResult(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    if !check_mnat_convex(r.points())? {
        return Ok(false);
    }
    let top = submodular_to_set(p)?;
    let bottom = submodular_to_set(q)?;
    Ok(r.top().points() == top.points() && r.bottom().points() == bottom.points())
}

/// Table on `E ⊔ {e}` with `r(A) = p(A)`, `r(A ∪ e) = p(E) − q(E) + q(A)`.
pub fn lifted_table(p: &SubmodularFn, q: &SubmodularFn) -> Result<Vec<i64>> {
    same_ground(p, q)?;
    let shift = p.rank() - q.rank();
    let mut t = p.table().to_vec();
    t.extend(q.table().iter().map(|v| shift + v));
    Ok(t)
}

/// The lifted table when it is submodular.
pub fn deletion_contraction_witness(p: &SubmodularFn, q: &SubmodularFn) -> Result<SubmodularFn> {
    let t = lifted_table(p, q)?;
    if !is_submodular_table(&t) {
        return Err(Error::NoWitness("lifted table is not submodular"));
    }
    SubmodularFn::from_trusted(GroundSet::new(p.dim() + 1)?, t)
}

/// Deleting the extra element of `B(r)` gives `B(p)` and contracting it
/// gives `B(q)`, both read off the projection.
pub fn verify_deletion_contraction(r: &SubmodularFn, p: &SubmodularFn, q: &SubmodularFn) -> Result<bool> {
    if r.dim() != p.dim() + 1 {
        return Ok(false);
    }
    let big = submodular_to_set(r)?;
    let proj = project(&big, full_mask(p.dim()))?;
    Ok(proj.top().points() == submodular_to_set(p)?.points()
        && proj.bottom().points() == submodular_to_set(q)?.points())
}

/// For all `x ∈ Q`, `y ∈ P`, `i ∈ supp⁺(x−y)` some `j ∈ supp⁻(x−y)` has
/// `x − e_i + e_j ∈ Q` and `y + e_i − e_j ∈ P`.
pub fn check_exchange(p: &MConvexSet, q: &MConvexSet) -> Result<bool> {
    check_width(p.dim(), q.dim())?;
    Ok(exchange_holds(q.points(), p.points()))
}

/// `Γ = {(x, rank(P) − x(E)) : x ∈ G(p,q^#)}` and the selector `w`.
pub fn induction_witness(p: &SubmodularFn, q: &SubmodularFn) -> Result<(LinkingSet, LatticePoint)> {
    let r = gpoly_points(p, q)?;
    let rank = p.rank();
    let pts = r.points().iter().map(|x| {
        let mut y = x.clone();
        y.push(rank - total(x));
        y
    });
    let g = LinkingSet::from_trusted(p.ground().clone(), GroundSet::new(1)?, pts.collect())?;
    Ok((g, vec![q.rank() - p.rank()]))
}

/// `Γ` is a linking set, `π_E(Γ)^↑ = P` and `ind_Γ({w}) = Q`.
pub fn verify_induction(g: &LinkingSet, w: &[i64], p: &MConvexSet, q: &MConvexSet) -> Result<bool> {
    if !check_m_convex(g.points())? {
        return Ok(false);
    }
    if left_set(g)?.top().points() != p.points() {
        return Ok(false);
    }
    let sel = MConvexSet::from_trusted(GroundSet::new(w.len())?, vec![w.to_vec()])?;
    match induce(&sel, g) {
        Ok(i) => Ok(i.points() == q.points()),
        Err(Error::EmptyResult(_)) | Err(Error::WidthMismatch { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Square linking sets on `E ⊔ {e}` with `Γ * X = Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenWitness {
    pub gamma: LinkingSet,
    pub delta: LinkingSet,
    pub x: LinkingSet,
}

fn padded_ground(n: usize) -> Result<GroundSet> {
    GroundSet::new(n + 1)
}

/// `X = {(k e_aux, −k e_aux)}`.
pub fn green_selector(n: usize, k: i64) -> Result<LinkingSet> {
    let mut pt = vec![0i64; 2 * (n + 1)];
    pt[n] = k;
    pt[2 * n + 1] = -k;
    LinkingSet::from_trusted(padded_ground(n)?, padded_ground(n)?, vec![pt])
}

pub fn green_witness(p: &SubmodularFn, q: &SubmodularFn) -> Result<GreenWitness> {
    let n = p.dim();
    let r = gpoly_points(p, q)?;
    let rank = p.rank();
    let pts = r
        .points()
        .iter()
        .map(|x| {
            let mut y = x.clone();
            y.push(0);
            y.extend(core::iter::repeat(0).take(n));
            y.push(rank - total(x));
            y
        })
        .collect();
    let gamma = LinkingSet::from_trusted(padded_ground(n)?, padded_ground(n)?, pts)?;
    let x = green_selector(n, q.rank() - p.rank())?;
    let delta = match product(&gamma, &x) {
        Ok(d) => d,
        Err(Error::EmptyResult(_)) => return Err(Error::NoWitness("Green product is empty")),
        Err(e) => return Err(e),
    };
    Ok(GreenWitness { gamma, delta, x })
}

fn left_top_on(g: &LinkingSet, n: usize) -> Result<Vec<LatticePoint>> {
    let top = left_set(g)?.top();
    if top.points().iter().any(|y| y[n] != 0) {
        return Ok(Vec::new());
    }
    Ok(top.points().iter().map(|y| y[..n].to_vec()).collect())
}

/// `Γ`, `X` are linking sets, `Γ * X = Δ`, `π_L(Γ)^↑ = P`, `π_L(Δ)^↑ = Q`.
pub fn verify_green(w: &GreenWitness, p: &MConvexSet, q: &MConvexSet) -> Result<bool> {
    let n = p.dim();
    if !check_m_convex(w.gamma.points())? || !check_m_convex(w.x.points())? {
        return Ok(false);
    }
    match product(&w.gamma, &w.x) {
        Ok(d) if d == w.delta => {}
        Ok(_) | Err(Error::EmptyResult(_)) => return Ok(false),
        Err(e) => return Err(e),
    }
    Ok(left_top_on(&w.gamma, n)? == p.points() && left_top_on(&w.delta, n)? == q.points())
}

/// Compatible matroid lifts `M`, `N` with `M ↠ N` by the exchange check.
pub fn check_matroid_lift_quotient(p: &MConvexSet, q: &MConvexSet, caps: &Caps) -> Result<bool> {
    let (m, n, _) = compatible_lifts_capped(p, q, caps.lift_ground)?;
    let pairs = m.len().saturating_mul(n.len());
    if pairs > caps.lift_pairs {
        return Err(Error::CapExceeded { what: "lift exchange pairs", size: pairs, cap: caps.lift_pairs });
    }
    check_exchange(&m, &n)
}

/// `x` has the shape of a vertex of a flag matroid of the given ranks: for
/// ranks sorted ascending, exactly `r_{k+1−t}` coordinates are `≥ t`.
pub fn flag_shape(x: &[i64], ranks: &[i64]) -> bool {
    let mut r = ranks.to_vec();
    r.sort_unstable();
    let k = r.len() as i64;
    if x.iter().any(|&v| v < 0 || v > k) {
        return false;
    }
    (1..=k).all(|t| x.iter().filter(|&&v| v >= t).count() as i64 == r[(k - t) as usize])
}

/// For every order on the lifted ground set, the sum of the greedy
/// vertices of `M` and `N` has the two-level flag shape.
pub fn check_compressed_quotient(p: &MConvexSet, q: &MConvexSet, caps: &Caps) -> Result<bool> {
    let (m, n, _) = compatible_lifts_capped(p, q, caps.lift_ground)?;
    let v = m.dim();
    if v > caps.compressed_ground {
        return Err(Error::CapExceeded { what: "compressed sweep ground set", size: v, cap: caps.compressed_ground });
    }
    let (tm, tn) = (set_to_submodular(&m)?, set_to_submodular(&n)?);
    let ranks = [m.rank(), n.rank()];
    for order in (0..v).permutations(v) {
        let a = greedy_unchecked(tm.table(), &order);
        let b = greedy_unchecked(tn.table(), &order);
        let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        if !flag_shape(&s, &ranks) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Artifacts produced while deciding.
#[derive(Debug, Clone, Default)]
pub struct Witnesses {
    pub gpoly: Option<MNatSet>,
    pub lifted: Option<SubmodularFn>,
    pub induction: Option<(LinkingSet, LatticePoint)>,
    pub green: Option<GreenWitness>,
    pub lifts: Option<(MConvexSet, MConvexSet, LiftCertificate)>,
}

#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub verdicts: BTreeMap<u8, Verdict>,
    pub witnesses: Witnesses,
}

impl QuotientReport {
    /// The common verdict of all non-skipped deciders; `None` when all
    /// were skipped.
    pub fn consensus(&self) -> Result<Option<bool>> {
        let mut seen: Option<bool> = None;
        for v in self.verdicts.values() {
            if let Some(b) = v.as_bool() {
                match seen {
                    Some(s) if s != b => return Err(Error::Disagreement("quotient deciders")),
                    _ => seen = Some(b),
                }
            }
        }
        Ok(seen)
    }
}

/// Every decider id, in order.
pub const ALL_METHODS: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

fn witness_ok<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(t) => Ok(Some(t)),
        Err(Error::EmptyResult(_)) | Err(Error::NoWitness(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs the selected deciders on `P`, `Q`.
pub fn quotient_suite_methods(p: &MConvexSet, q: &MConvexSet, caps: &Caps, methods: &[u8]) -> Result<QuotientReport> {
    check_width(p.dim(), q.dim())?;
    let tp = set_to_submodular(p)?;
    let tq = set_to_submodular(q)?;
    let mut verdicts = BTreeMap::new();
    let mut w = Witnesses::default();
    for &m in methods {
        let v = match m {
            1 => Verdict::from_bool(check_compliant(&tp, &tq)?),
            2 => Verdict::from_result(check_vertex_containment(&tp, &tq, caps.vertex_n))?,
            3 => Verdict::from_bool(check_contraction_containment(&tp, &tq)?),
            4 => {
                w.gpoly = witness_ok(gpoly_points(&tp, &tq))?;
                Verdict::from_bool(check_top_bottom(&tp, &tq)?)
            }
            5 => match witness_ok(deletion_contraction_witness(&tp, &tq))? {
                Some(r) => {
                    let ok = verify_deletion_contraction(&r, &tp, &tq)?;
                    w.lifted = Some(r);
                    Verdict::from_bool(ok)
                }
                None => Verdict::False,
            },
            6 => Verdict::from_bool(check_exchange(p, q)?),
            7 => match witness_ok(induction_witness(&tp, &tq))? {
                Some((g, sel)) => {
                    let ok = verify_induction(&g, &sel, p, q)?;
                    w.induction = Some((g, sel));
                    Verdict::from_bool(ok)
                }
                None => Verdict::False,
            },
            8 => match witness_ok(green_witness(&tp, &tq))? {
                Some(gw) => {
                    let ok = verify_green(&gw, p, q)?;
                    w.green = Some(gw);
                    Verdict::from_bool(ok)
                }
                None => Verdict::False,
            },
            9 => {
                let v = Verdict::from_result(check_matroid_lift_quotient(p, q, caps))?;
                if v.as_bool().is_some() {
                    w.lifts = witness_ok(compatible_lifts_capped(p, q, caps.lift_ground))?;
                }
                v
            }
            10 => Verdict::from_result(check_compressed_quotient(p, q, caps))?,
            _ => return Err(Error::usage(alloc::format!("unknown method {m}"))),
        };
        verdicts.insert(m, v);
    }
    let report = QuotientReport { verdicts, witnesses: w };
    verify(report.consensus().is_ok(), "quotient deciders agree")?;
    Ok(report)
}

pub fn quotient_suite(p: &MConvexSet, q: &MConvexSet, caps: &Caps) -> Result<QuotientReport> {
    quotient_suite_methods(p, q, caps, &ALL_METHODS)
}

/// Reason attached to skipped deciders, for display.
pub fn skip_reason(v: &Verdict) -> Option<String> {
    match v {
        Verdict::Skipped(r) => Some(r.to_string()),
        _ => None,
    }
}
