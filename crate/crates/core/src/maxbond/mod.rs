//! Maximum-weight bond: wheel dynamic program, constrained variants by
//! reweighting, and a fold over the sum decomposition.

mod wheel;

pub use wheel::{
    wheel_best_bond_type1, wheel_best_bond_type2, wheel_best_bond_type3, wheel_maxbond, WheelBond,
    WheelWeights,
};

use crate::decompose::{decompose, DecomposeError, SumDecomposition, SumOp};
use crate::graph::{Graph, Pair, PieceKind, Vertex};
use crate::oracle::{maxbond_bruteforce, Bond, Constraint};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaxBondError {
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("constraint pair {0} is not an edge")]
    NotAnEdge(Pair),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxBondResult<T> {
    pub value: T,
    pub bond: Bond<T>,
}

/// A bond given by one of its sides, together with its value.
type Solved<T> = (T, BTreeSet<Vertex>);

/// Spoke and rim weights of a wheel piece, read along `rim`.
pub fn wheel_weights_of<T: Scalar>(g: &Graph<T>, hub: Vertex, rim: &[Vertex]) -> WheelWeights<T> {
    let n = rim.len();
    let w = |x: Vertex, y: Vertex| g.weight(x, y).cloned().expect("wheel edge present");
    WheelWeights::new(
        rim.iter().map(|&r| w(r, hub)).collect(),
        (0..n).map(|i| w(rim[i], rim[(i + 1) % n])).collect(),
    )
}

/// Best bond of a single piece: the wheel program for wheels, enumeration
/// for the constant-size pieces.
pub fn solve_piece<T: Scalar>(g: &Graph<T>, kind: &PieceKind) -> Option<Solved<T>> {
    match kind {
        PieceKind::Wheel { hub, rim, .. } if rim.len() > 3 => {
            let (value, b) = wheel_maxbond(&wheel_weights_of(g, *hub, rim));
            let side = match b {
                WheelBond::Hub => BTreeSet::from([*hub]),
                arc => arc.rim_side(rim.len()).into_iter().map(|i| rim[i]).collect(),
            };
            Some((value, side))
        }
        _ => maxbond_bruteforce(g, Constraint::None)
            .expect("pieces are connected and small")
            .map(|b| (b.weight, b.side)),
    }
}

fn separates(side: &BTreeSet<Vertex>, u: Vertex, v: Vertex) -> bool {
    side.contains(&u) != side.contains(&v)
}

fn big_m<T: Scalar>(abs_sum: T) -> T {
    T::one() + abs_sum.clone() + abs_sum
}

/// Maximum bond subject to `constraint` using an unconstrained `solver`:
/// the constrained edge gets weight `-M` (same side) or `+M` (opposite)
/// with `M = 1 + 2 * sum |w|`, and the answer is checked afterwards.
pub fn maxbond_constrained<T, F>(g: &Graph<T>, constraint: Constraint, solver: F) -> Result<Option<T>, MaxBondError>
where
    T: Scalar,
    F: Fn(&Graph<T>) -> Option<Solved<T>>,
{
    let (u, v, opposite) = match constraint {
        Constraint::None => return Ok(solver(g).map(|s| s.0)),
        Constraint::SameSide(u, v) => (u, v, false),
        Constraint::Opposite(u, v) => (u, v, true),
    };
    let original = g.weight(u, v).cloned().ok_or(MaxBondError::NotAnEdge(Pair::new(u, v)))?;
    let m = big_m(g.total_abs_weight());
    let mut h = g.clone();
    let forced = if opposite { m.clone() } else { -m.clone() };
    h.set_weight(u, v, forced.clone()).expect("edge checked above");
    Ok(solver(&h).and_then(|(value, side)| {
        if separates(&side, u, v) != opposite {
            None
        } else if opposite {
            Some(value - forced + original)
        } else {
            Some(value)
        }
    }))
}

/// Maximum-weight bond of a connected (K5-e)-minor-free graph.
pub fn maxbond<T: Scalar>(g: &Graph<T>) -> Result<MaxBondResult<T>, MaxBondError> {
    let d = decompose(g)?;
    let (value, side) = eval(&d, &BTreeMap::new()).expect("a connected graph on two or more vertices has a bond");
    let side = canonical(side, g.vertex_set());
    let bond = Bond { cut: g.cut_edges(&side), weight: g.cut_weight(&side), side };
    debug_assert!(bond.weight == value);
    Ok(MaxBondResult { value, bond })
}

/// Side holding the smallest label of `all`.
fn canonical(side: BTreeSet<Vertex>, all: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let first = all.iter().next().copied();
    if first.is_some_and(|f| side.contains(&f)) {
        side
    } else {
        all.difference(&side).copied().collect()
    }
}

fn better<T: Scalar>(a: &Solved<T>, b: &Solved<T>, all: &BTreeSet<Vertex>) -> bool {
    a.0 > b.0 || (a.0 == b.0 && canonical(a.1.clone(), all) < canonical(b.1.clone(), all))
}

fn abs_sum<T: Scalar>(d: &SumDecomposition<T>, ov: &BTreeMap<Pair, T>) -> T {
    d.leaves().iter().fold(T::zero(), |acc, (g, _)| {
        g.edges().fold(acc, |acc, (p, w)| acc + ov.get(&p).unwrap_or(w).abs())
    })
}

fn edge_weight<T: Scalar>(d: &SumDecomposition<T>, p: Pair) -> T {
    d.leaves()
        .iter()
        .find_map(|(g, _)| g.weight(p.lo(), p.hi()).cloned())
        .expect("shared edge lives in some leaf")
}

/// Maximum bond of the graph described by `d`, with the weights of the
/// pairs in `ov` replaced.
fn eval<T: Scalar>(d: &SumDecomposition<T>, ov: &BTreeMap<Pair, T>) -> Option<Solved<T>> {
    let (op, left, right) = match d {
        SumDecomposition::Leaf { graph, kind } => {
            let mut g = graph.clone();
            for (p, w) in ov {
                if g.has_edge(p.lo(), p.hi()) {
                    g.set_weight(p.lo(), p.hi(), w.clone()).unwrap();
                }
            }
            return solve_piece(&g, kind);
        }
        SumDecomposition::Node { op, left, right } => (*op, left.as_ref(), right.as_ref()),
    };
    let all = d.vertex_set();
    let q = match op {
        SumOp::OneSum(v) => {
            let (vl, vr) = (left.vertex_set(), right.vertex_set());
            let a = eval(left, &route(ov, &vl, None)).map(|(x, s)| (x, extend_one(s, v, &vr)));
            let b = eval(right, &route(ov, &vr, None)).map(|(x, s)| (x, extend_one(s, v, &vl)));
            return pick(a, b, &all);
        }
        SumOp::TwoSum(..) | SumOp::TwoSumMinus(..) => op.pair().unwrap(),
    };
    // the doubly evaluated side is the smaller subtree
    let (small, large) = if right.node_count() < left.node_count() { (right, left) } else { (left, right) };
    let (vs, vl) = (small.vertex_set(), large.vertex_set());
    let mut ov_s = route(ov, &vs, Some(q));
    let mut ov_l = route(ov, &vl, None);
    ov_l.remove(&q);
    let shared_weight = match op {
        SumOp::TwoSum(..) => ov.get(&q).cloned().unwrap_or_else(|| edge_weight(small, q)),
        _ => T::zero(),
    };
    let (u, v) = (q.lo(), q.hi());
    let m = big_m(abs_sum(small, &ov_s));

    ov_s.insert(q, -m.clone());
    let same = eval(small, &ov_s).filter(|(_, s)| !separates(s, u, v));
    ov_s.insert(q, m.clone());
    let opp = eval(small, &ov_s)
        .filter(|(_, s)| separates(s, u, v))
        .map(|(x, s)| (x - m.clone(), s));

    let a = same.map(|(x, s)| {
        let s = if s.contains(&u) { &s | &vl } else { s };
        (x, s)
    });
    let b = match &opp {
        Some((x, t)) => {
            ov_l.insert(q, x.clone() + shared_weight);
            eval(large, &ov_l).map(|(y, s)| {
                let joined = if !separates(&s, u, v) {
                    if s.contains(&u) { &s | &vs } else { s }
                } else if s.contains(&u) == t.contains(&u) {
                    &s | t
                } else {
                    &s | &(&vs - t)
                };
                (y, joined)
            })
        }
        None => {
            let ml = big_m(abs_sum(large, &ov_l));
            ov_l.insert(q, -ml);
            eval(large, &ov_l)
                .filter(|(_, s)| !separates(s, u, v))
                .map(|(y, s)| (y, if s.contains(&u) { &s | &vs } else { s }))
        }
    };
    pick(a, b, &all)
}

fn pick<T: Scalar>(a: Option<Solved<T>>, b: Option<Solved<T>>, all: &BTreeSet<Vertex>) -> Option<Solved<T>> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if better(&b, &a, all) { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Overrides whose pair lies inside `vs`; `keep` is routed even though
/// the sibling also contains it.
fn route<T: Scalar>(ov: &BTreeMap<Pair, T>, vs: &BTreeSet<Vertex>, keep: Option<Pair>) -> BTreeMap<Pair, T> {
    ov.iter()
        .filter(|(p, _)| Some(**p) == keep || (vs.contains(&p.lo()) && vs.contains(&p.hi())))
        .map(|(p, w)| (*p, w.clone()))
        .collect()
}

fn extend_one(side: BTreeSet<Vertex>, v: Vertex, other: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    if side.contains(&v) {
        &side | other
    } else {
        side
    }
}
