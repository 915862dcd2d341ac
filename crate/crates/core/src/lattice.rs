//! Ground sets, lattice points, subset masks and exact scalars.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Integer vector indexed by a ground set.
pub type LatticePoint = Vec<i64>;

/// Subset of a ground set as a bitmask; element `i` (0-indexed) is bit `i`.
pub type SubsetMask = u32;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Largest ground set a dense subset table may be built on.
pub const MAX_TABLE_GROUND: usize = 20;

/// A finite ground set `{0, .., size-1}` with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::usage("ground set must be nonempty"));
        }
        if size > 31 {
            return Err(Error::usage("ground sets larger than 31 elements are unsupported"));
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::usage("ground set labels must be unique"));
        }
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn full(&self) -> SubsetMask {
        full_mask(self.size)
    }

    /// Ground set of the elements in `mask`, keeping their labels.
    pub fn sub(&self, mask: SubsetMask) -> Result<Self> {
        let elems = mask_elements(mask);
        if elems.iter().any(|&i| i >= self.size) {
            return Err(Error::usage("subset mask exceeds ground set"));
        }
        let mut g = GroundSet::new(elems.len())?;
        if let Some(labels) = &self.labels {
            g.labels = Some(elems.iter().map(|&i| labels[i].clone()).collect());
        }
        Ok(g)
    }

    /// Disjoint union, `self` first. Labels survive only when both sides
    /// carry them and stay distinct.
    pub fn concat(&self, other: &GroundSet) -> Result<Self> {
        let mut g = GroundSet::new(self.size + other.size)?;
        if let (Some(a), Some(b)) = (&self.labels, &other.labels) {
            let joined: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
            if let Ok(l) = GroundSet::with_labels(joined) {
                g.labels = l.labels;
            }
        }
        Ok(g)
    }

    pub fn check_point(&self, x: &[i64]) -> Result<()> {
        check_width(self.size, x.len())
    }
}

pub(crate) fn check_width(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::WidthMismatch { expected, found })
    }
}

pub fn full_mask(n: usize) -> SubsetMask {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn mask_of(elems: &[usize]) -> SubsetMask {
    elems.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn mask_elements(mask: SubsetMask) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn mask_len(mask: SubsetMask) -> usize {
    mask.count_ones() as usize
}

/// `x(A)`: sum of the coordinates of `x` indexed by `A`.
pub fn coord_sum(x: &[i64], a: SubsetMask) -> Result<i64> {
    if a & !full_mask(x.len()) != 0 {
        return Err(Error::WidthMismatch { expected: x.len(), found: 32 - a.leading_zeros() as usize });
    }
    Ok(mask_sum(x, a))
}

#[inline]
pub(crate) fn mask_sum(x: &[i64], a: SubsetMask) -> i64 {
    let mut s = 0;
    let mut m = a;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        s += x[i];
        m &= m - 1;
    }
    s
}

/// `x(E)`.
pub fn total(x: &[i64]) -> i64 {
    x.iter().sum()
}

/// Coordinates where `x` exceeds `y`.
pub fn supp_plus(x: &[i64], y: &[i64]) -> Result<SubsetMask> {
    check_width(x.len(), y.len())?;
    Ok(x.iter().zip(y).enumerate().fold(0, |m, (i, (a, b))| if a > b { m | (1 << i) } else { m }))
}

/// Coordinates where `y` exceeds `x`.
pub fn supp_minus(x: &[i64], y: &[i64]) -> Result<SubsetMask> {
    supp_plus(y, x)
}

pub fn unit(n: usize, i: usize) -> LatticePoint {
    let mut e = alloc::vec![0; n];
    e[i] = 1;
    e
}

pub fn add(x: &[i64], y: &[i64]) -> LatticePoint {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[i64], y: &[i64]) -> LatticePoint {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Componentwise `x <= y`.
pub fn leq(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

/// Sorts and deduplicates a point list into canonical order.
pub fn canonicalize(points: &mut Vec<LatticePoint>) {
    points.sort();
    points.dedup();
}

/// Componentwise minimum and maximum of a nonempty point list.
pub fn bounding_box(points: &[LatticePoint]) -> Option<(LatticePoint, LatticePoint)> {
    let first = points.first()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in points {
        for i in 0..p.len() {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    Some((lo, hi))
}

/// All integer points of the box `[lo, hi]` in lexicographic order.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return out;
    }
    let mut x = lo.to_vec();
    loop {
        out.push(x.clone());
        let mut k = x.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k];
        }
    }
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `⟨u, x⟩` with rational `u`.
pub fn pairing(u: &[Rat], x: &[i64]) -> Rat {
    let mut s = Rat::zero();
    for (a, &b) in u.iter().zip(x) {
        if b != 0 {
            s += a * rat(b);
        }
    }
    s
}

/// Rational value extended by `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Finite(Rat),
    Infinite,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn one() -> Self {
        ExtRat::Finite(Rat::one())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinite => None,
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl From<Option<Rat>> for ExtRat {
    fn from(r: Option<Rat>) -> Self {
        r.map_or(ExtRat::Infinite, ExtRat::Finite)
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
            (ExtRat::Finite(_), ExtRat::Infinite) => Ordering::Less,
            (ExtRat::Infinite, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::Infinite, ExtRat::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinite,
        }
    }
}

impl<'a> Add<&'a ExtRat> for &'a ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &'a ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinite,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn coord_sum_examples() {
        assert_eq!(coord_sum(&[1, 1, -1], 0b011).unwrap(), 2);
        assert_eq!(coord_sum(&[0, 0, 0], 0).unwrap(), 0);
        assert_eq!(coord_sum(&[-1, 0, 2], 0b100).unwrap(), 2);
        assert!(coord_sum(&[1, 2], 0b100).is_err());
    }

    #[test]
    fn supp_examples() {
        assert_eq!(supp_plus(&[0, 0, 1], &[1, 1, -1]).unwrap(), 0b100);
        assert_eq!(supp_plus(&[3, 4], &[3, 4]).unwrap(), 0);
        assert_eq!(supp_plus(&[1, 1, -1], &[0, 0, 1]).unwrap(), 0b011);
        assert!(supp_plus(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn ext_rat_order_and_sum() {
        let a = ExtRat::Finite(rat(3));
        assert!(a < ExtRat::Infinite);
        assert_eq!(a.clone() + ExtRat::Infinite, ExtRat::Infinite);
        assert_eq!(a.clone() + ExtRat::Finite(ratio(1, 2)), ExtRat::Finite(ratio(7, 2)));
    }

    #[test]
    fn ground_set_labels() {
        let g = GroundSet::with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let s = g.sub(0b101).unwrap();
        assert_eq!(s.labels().unwrap(), &["a".to_string(), "c".to_string()]);
        assert!(GroundSet::with_labels(vec!["a".into(), "a".into()]).is_err());
        assert!(GroundSet::new(0).is_err());
    }

    #[test]
    fn box_points_counts() {
        assert_eq!(box_points(&[0, -1], &[1, 1]).len(), 6);
        assert!(box_points(&[1], &[0]).is_empty());
    }

    proptest! {
        #[test]
        fn supports_are_disjoint(x in prop::collection::vec(-5i64..5, 4), y in prop::collection::vec(-5i64..5, 4)) {
            let p = supp_plus(&x, &y).unwrap();
            let m = supp_minus(&x, &y).unwrap();
            prop_assert_eq!(p & m, 0);
        }

        #[test]
        fn coord_sum_additive(x in prop::collection::vec(-9i64..9, 5), a in 0u32..32, b in 0u32..32) {
            let b = b & !a;
            prop_assert_eq!(coord_sum(&x, a | b).unwrap(), coord_sum(&x, a).unwrap() + coord_sum(&x, b).unwrap());
        }
    }
}
