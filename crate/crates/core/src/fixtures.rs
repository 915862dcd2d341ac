//! Worked examples shipped as named instances.
//!
//! Greedy labels: a figure label such as `x_123` assigns priority `σ_i` to
//! coordinate `i`; the matching explicit order lists coordinates by
//! decreasing priority, so label `123` is the order `(3,2,1)`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::function::MFunc;
use crate::lattice::{rat, GroundSet, LatticePoint, Rat};
use crate::linking::BipartiteGraph;
use crate::set::{MConvexSet, SubmodularFn};

fn pts(raw: &[&[i64]]) -> Vec<LatticePoint> {
    raw.iter().map(|p| p.to_vec()).collect()
}

/// The 8-point M-convex set `P ⊂ Z^3` of the running example.
pub fn ex2_2_p() -> Vec<LatticePoint> {
    pts(&[&[1, 1, -1], &[1, -1, 1], &[-1, 1, 1], &[-1, 0, 2], &[0, -1, 2], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
}

/// The 6-point M-convex set `Q ⊂ Z^3` of the running example.
pub fn ex2_2_q() -> Vec<LatticePoint> {
    pts(&[&[-1, -3, -1], &[-3, -1, -1], &[-1, -1, -3], &[-1, -2, -2], &[-2, -2, -1], &[-2, -1, -2]])
}

/// Table of `p`, indexed by mask (element 1 is bit 0).
pub fn ex2_7_p_table() -> Vec<i64> {
    vec![0, 1, 1, 2, 2, 2, 2, 1]
}

pub fn ex2_7_q_table() -> Vec<i64> {
    vec![0, -1, -1, -2, -1, -2, -2, -5]
}

pub fn ex2_7_p() -> SubmodularFn {
    SubmodularFn::new(GroundSet::new(3).expect("ground"), ex2_7_p_table()).expect("submodular fixture")
}

pub fn ex2_7_q() -> SubmodularFn {
    SubmodularFn::new(GroundSet::new(3).expect("ground"), ex2_7_q_table()).expect("submodular fixture")
}

/// The 8-point M♮-convex set of the running example in `Z^2`.
pub fn ex2_14_r() -> Vec<LatticePoint> {
    pts(&[&[-1, 0], &[0, -1], &[-1, 1], &[0, 0], &[1, -1], &[0, 1], &[1, 0], &[1, 1]])
}

/// Table of the lift `r` on `{1,2,3,4}` with free constant `c`.
pub fn ex2_17_r_table(c: i64) -> Vec<i64> {
    let p = ex2_7_p_table();
    let mut t = p.clone();
    let with_four = [c + 5, c + 4, c + 4, c + 3, c + 4, c + 3, c + 3, c];
    t.extend_from_slice(&with_four);
    t
}

pub fn ex2_17_r(c: i64) -> SubmodularFn {
    SubmodularFn::new(GroundSet::new(4).expect("ground"), ex2_17_r_table(c)).expect("submodular fixture")
}

/// `(R, Q, P)` of the flag example, ascending rank.
pub fn ex2_38_flag() -> Vec<Vec<LatticePoint>> {
    vec![pts(&[&[2, 0], &[1, 1], &[0, 2]]), pts(&[&[3, 1], &[2, 2], &[1, 3]]), pts(&[&[4, 2], &[3, 3], &[2, 4]])]
}

pub fn ex2_38_p_prime() -> Vec<LatticePoint> {
    pts(&[&[4, 1], &[3, 2], &[2, 3], &[1, 4]])
}

pub fn ex2_38_q_prime() -> Vec<LatticePoint> {
    pts(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]])
}

pub fn ex2_38_q_tilde() -> Vec<LatticePoint> {
    pts(&[&[4, 0], &[3, 1], &[2, 2], &[1, 3], &[0, 4]])
}

/// Complete bipartite graph `K_{3,2}`.
pub fn ex3_6_graph() -> BipartiteGraph {
    let edges = (0..3).flat_map(|v| (0..2).map(move |u| (v, u, None))).collect();
    BipartiteGraph::new(3, 2, edges).expect("graph fixture")
}

pub fn ex3_6_source() -> Vec<LatticePoint> {
    pts(&[&[2, 0], &[1, 1], &[0, 2]])
}

pub fn ex3_6_induced() -> Vec<LatticePoint> {
    pts(&[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[1, 0, 1], &[0, 1, 1], &[0, 0, 2]])
}

/// Points of the non-regularity counterexample on `[3] ⊔ [3]`.
pub fn nonregular_points() -> Vec<LatticePoint> {
    let mut out = vec![vec![0; 6]];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut p = vec![0; 6];
                p[i] = 1;
                p[3 + j] = -1;
                out.push(p);
            }
        }
    }
    out
}

/// The three single-layer functions `(f_0, f_1, f_2)` of the two-layer
/// counterexample: `f_2 = l1` at `(1,1)`, `f_0 = l2` at `(0,0)`, and the
/// middle layer `k1` at `(1,0)`, `k2` at `(0,1)`.
pub fn layered_example(l1: Rat, l2: Rat, k1: Rat, k2: Rat) -> Result<[MFunc; 3]> {
    let g = GroundSet::new(2)?;
    let f0 = MFunc::new(g.clone(), vec![(vec![0, 0], l2)])?;
    let f1 = MFunc::new(g.clone(), vec![(vec![1, 0], k1), (vec![0, 1], k2)])?;
    let f2 = MFunc::new(g, vec![(vec![1, 1], l1)])?;
    Ok([f0, f1, f2])
}

pub fn layered_example_default() -> [MFunc; 3] {
    layered_example(rat(0), rat(0), rat(1), rat(1)).expect("fixture")
}

/// A named fixture.
#[derive(Debug, Clone)]
pub enum Fixture {
    Set(MConvexSet),
    MNat(Vec<LatticePoint>),
    Table(SubmodularFn),
    Flag(Vec<Vec<LatticePoint>>),
    Graph(BipartiteGraph),
    Points(Vec<LatticePoint>),
    Functions(Vec<MFunc>),
}

/// Every shipped fixture by name, in a fixed order.
pub fn all() -> Vec<(String, Fixture)> {
    let set = |p: Vec<LatticePoint>| Fixture::Set(MConvexSet::from_points(p).expect("fixture"));
    vec![
        ("ex2_2_P".to_string(), set(ex2_2_p())),
        ("ex2_2_Q".to_string(), set(ex2_2_q())),
        ("ex2_7_p".to_string(), Fixture::Table(ex2_7_p())),
        ("ex2_7_q".to_string(), Fixture::Table(ex2_7_q())),
        ("ex2_14_R".to_string(), Fixture::MNat(ex2_14_r())),
        ("ex2_17_r".to_string(), Fixture::Table(ex2_17_r(0))),
        ("ex2_38_flag".to_string(), Fixture::Flag(ex2_38_flag())),
        ("ex2_38_P_prime".to_string(), set(ex2_38_p_prime())),
        ("ex2_38_Q_prime".to_string(), set(ex2_38_q_prime())),
        ("ex2_38_Q_tilde".to_string(), set(ex2_38_q_tilde())),
        ("ex3_6_graph".to_string(), Fixture::Graph(ex3_6_graph())),
        ("ex3_6_source".to_string(), set(ex3_6_source())),
        ("ex3_6_induced".to_string(), set(ex3_6_induced())),
        ("layered_example".to_string(), Fixture::Functions(layered_example_default().to_vec())),
        ("nonregular_gamma".to_string(), Fixture::Points(nonregular_points())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{check_m_convex, check_mnat_convex, set_to_submodular};

    #[test]
    fn fixture_sizes() {
        assert_eq!(ex2_2_p().len(), 8);
        assert_eq!(ex2_2_q().len(), 6);
        assert_eq!(ex2_14_r().len(), 8);
        assert_eq!(ex2_38_flag().len(), 3);
        assert_eq!(nonregular_points().len(), 7);
    }

    #[test]
    fn fixtures_certify() {
        for (name, fx) in all() {
            let ok = match fx {
                Fixture::Set(s) => check_m_convex(s.points()).unwrap(),
                Fixture::MNat(p) => check_mnat_convex(&p).unwrap(),
                Fixture::Table(t) => crate::set::check_submodular(t.table()).unwrap(),
                Fixture::Flag(f) => f.iter().all(|s| check_m_convex(s).unwrap()),
                Fixture::Graph(_) | Fixture::Points(_) => true,
                Fixture::Functions(fs) => fs.iter().all(|f| crate::function::check_m_convex_fn(f).unwrap()),
            };
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn lift_table_matches_running_example() {
        for c in [-3, 0, 1, 4] {
            let r = ex2_17_r(c);
            assert_eq!(&r.table()[..8], &ex2_7_p_table()[..]);
            for a in 0..8usize {
                assert_eq!(r.table()[8 | a] - r.table()[8], ex2_7_q_table()[a]);
            }
        }
        let p = MConvexSet::from_points(ex2_2_p()).unwrap();
        assert_eq!(set_to_submodular(&p).unwrap(), ex2_7_p());
    }
}
