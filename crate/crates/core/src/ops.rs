//! Restriction, projection, sums, truncation, box and plank intersection,
//! and minors.
//!
//! Where an operation has both a point-level and a table-level
//! description, the table route is returned and, in builds with debug
//! assertions, checked against the point route.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{
    add, check_width, full_mask, mask_elements, mask_sum, total, LatticePoint, SubsetMask,
};
use crate::set::{
    max_table, min_table, points_between, set_to_submodular, submodular_to_set, MConvexSet, MNatSet,
    SubmodularFn, SupermodularFn,
};

pub(crate) fn verify(ok: bool, what: &'static str) -> Result<()> {
    if cfg!(debug_assertions) && !ok {
        Err(Error::Disagreement(what))
    } else {
        Ok(())
    }
}

fn check_mask(n: usize, v: SubsetMask) -> Result<()> {
    if v & !full_mask(n) != 0 {
        return Err(Error::usage("subset mask exceeds ground set"));
    }
    Ok(())
}

fn keep_coords(x: &[i64], elems: &[usize]) -> LatticePoint {
    elems.iter().map(|&i| x[i]).collect()
}

/// Maps a mask over the compressed ground `elems` back to the full ground.
pub(crate) fn expand_mask(a: SubsetMask, elems: &[usize]) -> SubsetMask {
    elems.iter().enumerate().filter(|(k, _)| a >> k & 1 == 1).fold(0, |m, (_, &i)| m | (1 << i))
}

/// `{x|_V : x ∈ P, x vanishes off V}`.
pub fn restrict(p: &MConvexSet, v: SubsetMask) -> Result<MConvexSet> {
    let n = p.dim();
    check_mask(n, v)?;
    let off = full_mask(n) & !v;
    let elems = mask_elements(v);
    let pts: Vec<LatticePoint> = p
        .points()
        .iter()
        .filter(|x| mask_elements(off).iter().all(|&i| x[i] == 0))
        .map(|x| keep_coords(x, &elems))
        .collect();
    if pts.is_empty() {
        return Err(Error::EmptyResult("no point vanishes off the restriction"));
    }
    MConvexSet::from_trusted(p.ground().sub(v)?, pts)
}

/// Coordinate projection onto `V`.
pub fn project(p: &MConvexSet, v: SubsetMask) -> Result<MNatSet> {
    check_mask(p.dim(), v)?;
    let elems = mask_elements(v);
    let pts = p.points().iter().map(|x| keep_coords(x, &elems)).collect();
    let r = MNatSet::from_trusted(p.ground().sub(v)?, pts)?;
    verify(crate::set::check_mnat_convex(r.points())?, "projection is M-natural")?;
    Ok(r)
}

pub fn minkowski_sum(p: &MConvexSet, q: &MConvexSet) -> Result<MConvexSet> {
    check_width(p.dim(), q.dim())?;
    let pts = p.points().iter().flat_map(|x| q.points().iter().map(move |y| add(x, y))).collect();
    MConvexSet::from_trusted(p.ground().clone(), pts)
}

pub fn translate(p: &MConvexSet, v: &[i64]) -> Result<MConvexSet> {
    check_width(p.dim(), v.len())?;
    let pts = p.points().iter().map(|x| add(x, v)).collect();
    MConvexSet::from_trusted(p.ground().clone(), pts)
}

/// `k`-fold truncation through the table `p` with `p(E)` lowered by `k`.
pub fn truncate(p: &MConvexSet, k: i64) -> Result<MConvexSet> {
    if k < 1 {
        return Err(Error::usage("truncation depth must be at least 1"));
    }
    let mut table = set_to_submodular(p)?.table().to_vec();
    let last = table.len() - 1;
    table[last] -= k;
    submodular_to_set(&SubmodularFn::from_trusted(p.ground().clone(), table)?)
}

/// `k`-fold elongation through the supermodular table `p^#` with `p^#(E)`
/// raised by `k`.
pub fn elongate(p: &MConvexSet, k: i64) -> Result<MConvexSet> {
    if k < 1 {
        return Err(Error::usage("elongation depth must be at least 1"));
    }
    let mut table = set_to_submodular(p)?.dual().table().to_vec();
    let last = table.len() - 1;
    table[last] += k;
    submodular_to_set(&SupermodularFn::from_trusted(p.ground().clone(), table)?.dual())
}

/// Upper submodular and lower supermodular tables of a g-polymatroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPolyTables {
    pub upper: Vec<i64>,
    pub lower: Vec<i64>,
}

impl GPolyTables {
    /// Tight tables `A ↦ max x(A)` and `A ↦ min x(A)` of a point set.
    pub fn of_points(points: &[LatticePoint], n: usize) -> Self {
        GPolyTables { upper: max_table(points, n), lower: min_table(points, n) }
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        let n = self.upper.len().trailing_zeros() as usize;
        points_between(n, &self.upper, &self.lower)
    }
}

/// Tables of `G(p,q) ∩ [a,b]`:
/// `p'(Z) = min_X p(X) − a(X∖Z) + b(Z∖X)`,
/// `q'(Z) = max_X q(X) − b(X∖Z) + a(Z∖X)`.
pub fn box_tables(t: &GPolyTables, a: &[i64], b: &[i64]) -> GPolyTables {
    let size = t.upper.len();
    let mut upper = alloc::vec![0; size];
    let mut lower = alloc::vec![0; size];
    for z in 1..size {
        let zm = z as SubsetMask;
        let mut up = i64::MAX;
        let mut lo = i64::MIN;
        for x in 0..size {
            let xm = x as SubsetMask;
            let outside = xm & !zm;
            let inside = zm & !xm;
            up = up.min(t.upper[x] - mask_sum(a, outside) + mask_sum(b, inside));
            lo = lo.max(t.lower[x] - mask_sum(b, outside) + mask_sum(a, inside));
        }
        upper[z] = up;
        lower[z] = lo;
    }
    GPolyTables { upper, lower }
}

/// Tables of `G(p,q) ∩ {α ≤ x(E) ≤ β}`:
/// `p̃(Z) = min(p(Z), β − q(E∖Z))`, `q̃(Z) = max(q(Z), α − p(E∖Z))`.
pub fn plank_tables(t: &GPolyTables, alpha: i64, beta: i64) -> GPolyTables {
    let size = t.upper.len();
    let full = size - 1;
    let mut upper = alloc::vec![0; size];
    let mut lower = alloc::vec![0; size];
    for z in 1..size {
        upper[z] = t.upper[z].min(beta - t.lower[full & !z]);
        lower[z] = t.lower[z].max(alpha - t.upper[full & !z]);
    }
    GPolyTables { upper, lower }
}

/// Result of a box or plank intersection: the set and its tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection {
    pub set: MNatSet,
    pub tables: GPolyTables,
}

fn finish_intersection(r: &MNatSet, filtered: Vec<LatticePoint>, tables: GPolyTables) -> Result<Intersection> {
    if filtered.is_empty() {
        return Err(Error::EmptyResult("intersection"));
    }
    let set = MNatSet::from_trusted(r.ground().clone(), filtered)?;
    let n = r.dim();
    verify(tables.points() == set.points(), "intersection formula points")?;
    verify(GPolyTables::of_points(set.points(), n) == tables, "intersection formula tables")?;
    Ok(Intersection { set, tables })
}

pub fn intersect_box(r: &MNatSet, a: &[i64], b: &[i64]) -> Result<Intersection> {
    check_width(r.dim(), a.len())?;
    check_width(r.dim(), b.len())?;
    if a.iter().zip(b).any(|(x, y)| x > y) {
        return Err(Error::usage("box requires a ≤ b"));
    }
    let filtered: Vec<LatticePoint> = r
        .points()
        .iter()
        .filter(|x| x.iter().zip(a).zip(b).all(|((v, lo), hi)| lo <= v && v <= hi))
        .cloned()
        .collect();
    let tables = box_tables(&GPolyTables::of_points(r.points(), r.dim()), a, b);
    finish_intersection(r, filtered, tables)
}

pub fn intersect_plank(r: &MNatSet, alpha: i64, beta: i64) -> Result<Intersection> {
    if alpha > beta {
        return Err(Error::usage("plank requires α ≤ β"));
    }
    let filtered: Vec<LatticePoint> =
        r.points().iter().filter(|x| (alpha..=beta).contains(&total(x))).cloned().collect();
    let tables = plank_tables(&GPolyTables::of_points(r.points(), r.dim()), alpha, beta);
    finish_intersection(r, filtered, tables)
}

fn minor_ground(n: usize, u: SubsetMask) -> Result<(SubsetMask, Vec<usize>)> {
    check_mask(n, u)?;
    let v = full_mask(n) & !u;
    if v == 0 {
        return Err(Error::usage("minor must keep at least one element"));
    }
    Ok((v, mask_elements(v)))
}

fn table_on(p: &SubmodularFn, v: SubsetMask, f: impl Fn(SubsetMask) -> i64) -> Result<SubmodularFn> {
    let elems = mask_elements(v);
    let table = (0..1usize << elems.len()).map(|a| f(expand_mask(a as SubsetMask, &elems))).collect();
    SubmodularFn::from_trusted(p.ground().sub(v)?, table)
}

/// `A ↦ p(A)` on `E∖U`.
pub fn deletion_table(p: &SubmodularFn, u: SubsetMask) -> Result<SubmodularFn> {
    let (v, _) = minor_ground(p.dim(), u)?;
    table_on(p, v, |a| p.value(a))
}

/// `A ↦ p(A∪U) − p(U)` on `E∖U`.
pub fn contraction_table(p: &SubmodularFn, u: SubsetMask) -> Result<SubmodularFn> {
    let (v, _) = minor_ground(p.dim(), u)?;
    table_on(p, v, |a| p.value(a | u) - p.value(u))
}

/// `A ↦ min(p(A), k + p(A∪U) − p(E))` on `E∖U`, for
/// `p(E) − p(U) ≤ k ≤ p(V)`.
pub fn basic_minor_table(p: &SubmodularFn, u: SubsetMask, k: i64) -> Result<SubmodularFn> {
    let (v, _) = minor_ground(p.dim(), u)?;
    let lo = p.rank() - p.value(u);
    let hi = p.value(v);
    if k < lo || k > hi {
        return Err(Error::usage(alloc::format!("minor level {k} outside [{lo}, {hi}]")));
    }
    let full = full_mask(p.dim());
    table_on(p, v, |a| {
        if a == 0 {
            0
        } else {
            p.value(a).min(k + p.value(a | u) - p.value(full))
        }
    })
}

/// Top layer of the projection onto `E∖U`.
pub fn deletion(p: &MConvexSet, u: SubsetMask) -> Result<MConvexSet> {
    let (v, _) = minor_ground(p.dim(), u)?;
    let set = submodular_to_set(&deletion_table(&set_to_submodular(p)?, u)?)?;
    verify(project(p, v)?.top() == set, "deletion formula")?;
    Ok(set)
}

/// Bottom layer of the projection onto `E∖U`.
pub fn contraction(p: &MConvexSet, u: SubsetMask) -> Result<MConvexSet> {
    let (v, _) = minor_ground(p.dim(), u)?;
    let set = submodular_to_set(&contraction_table(&set_to_submodular(p)?, u)?)?;
    verify(project(p, v)?.bottom() == set, "contraction formula")?;
    Ok(set)
}

/// Valid levels of `basic_minor(P, U, ·)`, from the projection itself.
pub fn minor_range(p: &MConvexSet, u: SubsetMask) -> Result<(i64, i64)> {
    let (v, _) = minor_ground(p.dim(), u)?;
    let sums = p.points().iter().map(|x| mask_sum(x, v));
    let lo = sums.clone().min().expect("nonempty");
    let hi = sums.max().expect("nonempty");
    Ok((lo, hi))
}

/// Layer of the projection onto `E∖U` at coordinate sum `k`.
pub fn basic_minor(p: &MConvexSet, u: SubsetMask, k: i64) -> Result<MConvexSet> {
    let (v, _) = minor_ground(p.dim(), u)?;
    let (lo, hi) = minor_range(p, u)?;
    if k < lo || k > hi {
        return Err(Error::usage(alloc::format!("minor level {k} outside [{lo}, {hi}]")));
    }
    let set = submodular_to_set(&basic_minor_table(&set_to_submodular(p)?, u, k)?)?;
    verify(project(p, v)?.layer(k).as_ref() == Some(&set), "basic minor formula")?;
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generator::{gen_mconvex, gen_submodular};
    use crate::lattice::mask_of;
    use crate::oracle;
    use crate::quotient::check_compliant;
    use alloc::vec;
    use proptest::prelude::*;

    fn p22() -> MConvexSet {
        MConvexSet::from_points(fixtures::ex2_2_p()).unwrap()
    }

    fn q22() -> MConvexSet {
        MConvexSet::from_points(fixtures::ex2_2_q()).unwrap()
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict(&p22(), 0b011).unwrap().points(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(restrict(&p22(), 0b111).unwrap(), p22());
        assert_eq!(restrict(&q22(), 0b011), Err(Error::EmptyResult("no point vanishes off the restriction")));
    }

    #[test]
    fn project_examples() {
        assert_eq!(project(&p22(), 0b011).unwrap().points(), &oracle::sorted(fixtures::ex2_14_r())[..]);
        assert_eq!(project(&p22(), 0b111).unwrap(), p22().to_mnat());
        let q = project(&q22(), 0b011).unwrap();
        let expect = vec![vec![-1, -3], vec![-3, -1], vec![-1, -1], vec![-1, -2], vec![-2, -2], vec![-2, -1]];
        assert_eq!(q.points(), &oracle::sorted(expect)[..]);
    }

    #[test]
    fn sum_examples() {
        let zero = MConvexSet::from_points(vec![vec![0, 0, 0]]).unwrap();
        assert_eq!(minkowski_sum(&p22(), &zero).unwrap(), p22());
        let h = MConvexSet::from_points(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(minkowski_sum(&h, &h).unwrap().points(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
        let f = fixtures::ex2_38_flag();
        let p = MConvexSet::from_points(f[2].clone()).unwrap();
        let q = MConvexSet::from_points(f[1].clone()).unwrap();
        let s = minkowski_sum(&p, &q).unwrap();
        assert_eq!(s.points(), &oracle::sorted(vec![vec![7, 3], vec![6, 4], vec![5, 5], vec![4, 6], vec![3, 7]])[..]);
    }

    #[test]
    fn truncation_examples() {
        let t = truncate(&p22(), 1).unwrap();
        assert!(t.contains(&[1, 1, -2]) && t.contains(&[0, 0, 0]));
        assert!(!t.contains(&[2, 0, -1]));
        let mut brute = oracle::base_points(&{
            let mut tb = fixtures::ex2_7_p_table();
            tb[7] -= 1;
            tb
        }, 3);
        brute.sort();
        assert_eq!(t.points(), &brute[..]);
        let origin = MConvexSet::from_points(vec![vec![0, 0]]).unwrap();
        assert_eq!(elongate(&origin, 1).unwrap().points(), &[vec![0, 1], vec![1, 0]]);
        let p = MConvexSet::from_points(fixtures::ex2_38_flag()[2].clone()).unwrap();
        assert_eq!(truncate(&p, 1).unwrap().points(), &oracle::sorted(fixtures::ex2_38_p_prime())[..]);
        assert!(truncate(&p, 0).is_err());
    }

    #[test]
    fn box_and_plank_examples() {
        let r = MNatSet::from_points(fixtures::ex2_14_r()).unwrap();
        let k = intersect_plank(&r, 0, 1).unwrap();
        let expect = vec![vec![-1, 1], vec![0, 0], vec![1, -1], vec![0, 1], vec![1, 0]];
        assert_eq!(k.set.points(), &oracle::sorted(expect)[..]);
        assert_eq!(intersect_box(&r, &[-1, -1], &[1, 1]).unwrap().set, r);
        let b = intersect_box(&p22().to_mnat(), &[0, 0, 0], &[1, 1, 1]).unwrap();
        assert_eq!(b.set.points(), &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(matches!(intersect_box(&r, &[2, 2], &[3, 3]), Err(Error::EmptyResult(_))));
        assert!(intersect_plank(&r, 1, 0).is_err());
    }

    #[test]
    fn minor_examples() {
        let d = deletion(&p22(), 0b100).unwrap();
        assert_eq!(d.points(), &[vec![1, 1]]);
        assert_eq!(deletion_table(&fixtures::ex2_7_p(), 0b100).unwrap().table(), &[0, 1, 1, 2]);
        let c = contraction(&p22(), 0b100).unwrap();
        assert_eq!(c.points(), &[vec![-1, 0], vec![0, -1]]);
        assert_eq!(contraction_table(&fixtures::ex2_7_p(), 0b100).unwrap().value(0b11), -1);
        let m = basic_minor(&p22(), 0b100, 1).unwrap();
        assert_eq!(m.points(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(basic_minor_table(&fixtures::ex2_7_p(), 0b100, 1).unwrap().table(), &[0, 1, 1, 1]);
        assert_eq!(minor_range(&p22(), 0b100).unwrap(), (-1, 2));
        assert!(basic_minor(&p22(), 0b100, 3).is_err());
        assert!(deletion(&p22(), 0b111).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn minors_match_layers(seed in any::<u64>(), n in 2usize..5, u_raw in 1u32..15) {
            let p = gen_mconvex(seed, n, 2).unwrap();
            let u = u_raw & (full_mask(n) >> 1);
            prop_assume!(u != 0);
            let v = full_mask(n) & !u;
            let vs = mask_elements(v);
            let proj: Vec<LatticePoint> = oracle::sorted(p.points().iter().map(|x| keep_coords(x, &vs)).collect());
            let sums: Vec<i64> = proj.iter().map(|x| total(x)).collect();
            let (lo, hi) = (*sums.iter().min().unwrap(), *sums.iter().max().unwrap());
            let table = set_to_submodular(&p).unwrap();
            for k in lo..=hi {
                let layer: Vec<LatticePoint> = proj.iter().filter(|x| total(x) == k).cloned().collect();
                let formula = basic_minor_table(&table, u, k).unwrap();
                prop_assert_eq!(formula.table(), &oracle::max_table(&layer)[..]);
            }
            let top: Vec<LatticePoint> = proj.iter().filter(|x| total(x) == hi).cloned().collect();
            let bottom: Vec<LatticePoint> = proj.iter().filter(|x| total(x) == lo).cloned().collect();
            prop_assert_eq!(deletion_table(&table, u).unwrap().table().to_vec(), oracle::max_table(&top));
            prop_assert_eq!(contraction_table(&table, u).unwrap().table().to_vec(), oracle::max_table(&bottom));
        }

        #[test]
        fn box_formula_is_tight(seed in any::<u64>(), n in 1usize..4, a in prop::collection::vec(-3i64..1, 3), w in prop::collection::vec(0i64..4, 3)) {
            let p = gen_mconvex(seed, n + 1, 2).unwrap();
            let r = project(&p, full_mask(n)).unwrap();
            let a = &a[..n];
            let b: Vec<i64> = a.iter().zip(&w).map(|(x, y)| x + y).collect();
            let filtered: Vec<LatticePoint> = r.points().iter().filter(|x| x.iter().zip(a).zip(&b).all(|((v, lo), hi)| lo <= v && v <= hi)).cloned().collect();
            prop_assume!(!filtered.is_empty());
            let t = box_tables(&GPolyTables::of_points(r.points(), n), a, &b);
            prop_assert_eq!(&t.upper, &oracle::max_table(&filtered));
            prop_assert_eq!(oracle::between(&t.upper, &t.lower, n), oracle::sorted(filtered));
        }

        #[test]
        fn truncation_is_a_quotient(seed in any::<u64>(), n in 1usize..5, k in 1i64..3) {
            let p = gen_mconvex(seed, n, 2).unwrap();
            let t = truncate(&p, k).unwrap();
            prop_assert_eq!(t.rank(), p.rank() - k);
            prop_assert!(check_compliant(&set_to_submodular(&p).unwrap(), &set_to_submodular(&t).unwrap()).unwrap());
            let e = elongate(&p, k).unwrap();
            prop_assert!(check_compliant(&set_to_submodular(&e).unwrap(), &set_to_submodular(&p).unwrap()).unwrap());
        }

        #[test]
        fn sum_table_is_sum_of_tables(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..4) {
            let p = gen_submodular(s1, n, 2).unwrap();
            let q = gen_submodular(s2, n, 2).unwrap();
            let sp = submodular_to_set(&p).unwrap();
            let sq = submodular_to_set(&q).unwrap();
            let s = minkowski_sum(&sp, &sq).unwrap();
            let expect: Vec<i64> = p.table().iter().zip(q.table()).map(|(a, b)| a + b).collect();
            prop_assert_eq!(set_to_submodular(&s).unwrap().table().to_vec(), expect);
        }

        #[test]
        fn minors_form_quotients(seed in any::<u64>(), n in 2usize..5) {
            let p = gen_mconvex(seed, n, 2).unwrap();
            let u = mask_of(&[n - 1]);
            let (lo, hi) = minor_range(&p, u).unwrap();
            let table = set_to_submodular(&p).unwrap();
            for k in lo..=hi {
                for l in lo..k {
                    let big = basic_minor_table(&table, u, k).unwrap();
                    let small = basic_minor_table(&table, u, l).unwrap();
                    prop_assert!(check_compliant(&big, &small).unwrap());
                }
            }
        }
    }
}
