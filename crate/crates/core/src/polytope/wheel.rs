//! Augmented bond polytopes of wheel subgraphs.
//!
//! Coordinates cover every pair of the wheel: edges of the graph and the
//! remaining wheel pairs as augmented coordinates. A full wheel gets a flow
//! formulation over rim positions. Otherwise a rim vertex `t` of degree at
//! most two is removed, the path through it (if any) is replaced by an edge
//! between its two neighbours, and the smaller formulation is glued with a
//! six-coordinate polytope that places `t` relative to `c`, `p`, `q` (hub,
//! previous and next rim vertex).

use super::ops::{balas_union, glue_with_budget, point_hull};
use super::spec::{aug_label, edge_label, separation_point, AbondSpec};
use super::{add_aux, EfError, ExtFormulation};
use crate::graph::{classify_piece, Graph, Pair, PieceKind, Vertex};
use crate::hrep::HRep;
use crate::oracle::connected_bipartitions;
use crate::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet};

/// Placement polytope for case 1 (`t` adjacent to `c` and `p`), columns
/// `(c-p, p-q, c-q, p-t, t-q, c-t)`, in its published form.
pub const POLYTOPE_1: [[u8; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [0, 1, 1, 0, 1, 0],
    [1, 0, 1, 1, 1, 0],
    [1, 0, 1, 0, 0, 1],
    [1, 1, 0, 1, 0, 0],
    [1, 1, 0, 0, 1, 1],
];

/// Placement polytope for case 3 (`t` adjacent to `p` and `q` only), derived
/// by enumerating the bonds of small wheel subgraphs. It differs from
/// [`POLYTOPE_1`] in one row: with `q` alone, `t` joins `q`, not `c`.
pub const POLYTOPE_2_DERIVED: [[u8; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 1],
    [1, 1, 0, 0, 1, 1],
    [1, 1, 0, 1, 0, 0],
    [0, 1, 1, 0, 1, 0],
    [0, 1, 1, 1, 0, 1],
];

/// The bond cutting off `t` alone, in placement columns.
pub const EXCEPTIONAL_ROW: [u8; 6] = [0, 0, 0, 1, 1, 1];

/// Rows `(c-p, p-q, c-q, p-t, t-q, c-t)` of every way to put `t` on a side
/// that holds one of its neighbours, for each split of `{c, p, q}`.
/// `adj` flags adjacency of `t` to `p`, `q`, `c`.
pub fn placement_rows(adj: [bool; 3]) -> Vec<[u8; 6]> {
    let [adj_p, adj_q, adj_c] = adj;
    let mut rows = Vec::new();
    let sc = 0u8;
    for (sp, sq) in [(0u8, 0u8), (1, 1), (1, 0), (0, 1)] {
        for st in [0u8, 1] {
            let joins = (adj_p && sp == st) || (adj_q && sq == st) || (adj_c && sc == st);
            if joins {
                let d = |a: u8, b: u8| u8::from(a != b);
                rows.push([d(sc, sp), d(sp, sq), d(sc, sq), d(sp, st), d(st, sq), d(sc, st)]);
            }
        }
    }
    rows
}

/// Flow formulation of the bond polytope of the full wheel (plus origin).
/// Paths through layers `0..n` choose for each rim vertex whether it lies
/// on the side without the hub; at most two side changes around the rim.
fn flow_ef<T: Scalar>(hub: Vertex, rim: &[Vertex], label: &dyn Fn(Pair) -> String) -> ExtFormulation<T> {
    let n = rim.len();
    let mut h: HRep<T> = HRep::new();
    let spokes: Vec<usize> =
        rim.iter().map(|&r| h.add_coord(label(Pair::new(hub, r))).expect("wheel pairs are distinct")).collect();
    let rims: Vec<usize> = (0..n)
        .map(|i| h.add_coord(label(Pair::new(rim[i], rim[(i + 1) % n]))).expect("wheel pairs are distinct"))
        .collect();
    let proj: Vec<usize> = spokes.iter().chain(&rims).copied().collect();

    // node (s0, s, k): side of rim 0, side of the current vertex, changes so far
    type Node = (u8, u8, u8);
    let mut inflow: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
    let mut source = Vec::new();
    for s0 in [0u8, 1] {
        let a = add_aux(&mut h);
        source.push(a);
        inflow.entry((s0, s0, 0)).or_default().push(a);
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        let mut spoke_flow = Vec::new();
        let mut change_flow = Vec::new();
        let mut next: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
        for (&(s0, s, k), ins) in &inflow {
            if s == 1 {
                spoke_flow.extend(ins.iter().copied());
            }
            let mut outs = Vec::new();
            if i + 1 < n {
                for s2 in [0u8, 1] {
                    let k2 = k + u8::from(s != s2);
                    if k2 > 2 {
                        continue;
                    }
                    let a = add_aux(&mut h);
                    outs.push(a);
                    if s != s2 {
                        change_flow.push(a);
                    }
                    next.entry((s0, s2, k2)).or_default().push(a);
                }
            } else {
                // closing arc to the sink; parity keeps k + change <= 2
                let a = add_aux(&mut h);
                outs.push(a);
                if s != s0 {
                    change_flow.push(a);
                }
            }
            arcs.extend(outs.iter().copied());
            let coefs = ins.iter().map(|&a| (a, T::one())).chain(outs.iter().map(|&a| (a, -T::one())));
            h.add_eq(coefs, T::zero(), "flow-conserve");
        }
        let coefs = std::iter::once((spokes[i], T::one())).chain(spoke_flow.iter().map(|&a| (a, -T::one())));
        h.add_eq(coefs, T::zero(), "flow-link");
        let coefs = std::iter::once((rims[i], T::one())).chain(change_flow.iter().map(|&a| (a, -T::one())));
        h.add_eq(coefs, T::zero(), "flow-link");
        inflow = next;
    }
    for &a in source.iter().chain(&arcs) {
        h.add_ineq([(a, -T::one())], T::zero(), "flow-nonneg");
    }
    h.add_eq(source.iter().map(|&a| (a, T::one())), T::one(), "flow-source");
    ExtFormulation { hrep: h, proj }
}

/// Bond polytope of the full wheel with the given hub and rim order, on
/// edge labels: spokes first, then rim edges `rim[i]-rim[i+1]`.
pub fn full_wheel_ef<T: Scalar>(hub: Vertex, rim: &[Vertex]) -> ExtFormulation<T> {
    assert!(rim.len() >= 3, "a wheel needs at least 3 rim vertices");
    flow_ef(hub, rim, &edge_label)
}

fn wheel_label(p: Pair) -> String {
    format!("w:{}-{}", p.lo(), p.hi())
}

fn wheel_rec<T: Scalar>(g: &Graph<T>, hub: Vertex, rim: &[Vertex]) -> Result<ExtFormulation<T>, EfError> {
    let n = rim.len();
    if n == 3 {
        let mut pairs: Vec<Pair> = rim.iter().map(|&r| Pair::new(hub, r)).collect();
        pairs.extend((0..3).map(|i| Pair::new(rim[i], rim[(i + 1) % 3])));
        let points: Vec<Vec<T>> =
            connected_bipartitions(g)?.iter().map(|b| separation_point(&pairs, &b.side)).collect();
        let labels: Vec<String> = pairs.iter().map(|&p| wheel_label(p)).collect();
        return point_hull(&labels, &points, true);
    }
    let Some(ti) = rim.iter().position(|&r| g.degree(r) <= 2) else {
        return Ok(flow_ef(hub, rim, &wheel_label));
    };
    let (t, p, q, c) = (rim[ti], rim[(ti + n - 1) % n], rim[(ti + 1) % n], hub);
    let adj = [g.has_edge(t, p), g.has_edge(t, q), g.has_edge(t, c)];
    let rest: BTreeSet<Vertex> = g.vertices().filter(|&v| v != t).collect();
    let mut gn = g.induced(&rest);
    gn.clear_non_edges();
    let exceptional = gn.is_connected_graph();
    let nbrs: Vec<Vertex> = [p, q, c].into_iter().zip(adj).filter(|(_, a)| *a).map(|(v, _)| v).collect();
    if let [a, b] = nbrs[..] {
        if !gn.has_edge(a, b) {
            gn.add_edge(a, b, T::zero()).expect("both endpoints are present");
        }
    }
    let rim_n: Vec<Vertex> = rim.iter().copied().filter(|&r| r != t).collect();
    let ef_n = wheel_rec(&gn, hub, &rim_n)?;

    let labels: Vec<String> = [(c, p), (p, q), (c, q), (p, t), (t, q), (c, t)]
        .iter()
        .map(|&(a, b)| wheel_label(Pair::new(a, b)))
        .collect();
    let int_row = |r: &[u8]| r.iter().map(|&x| T::from_int(i64::from(x))).collect::<Vec<T>>();
    let rows: Vec<Vec<T>> = placement_rows(adj).iter().map(|r| int_row(r)).collect();
    let place = point_hull(&labels, &rows, true)?;
    let glue: Vec<&str> = labels[..3].iter().map(String::as_str).collect();
    let budget: Vec<(&str, T)> = glue.iter().map(|&l| (l, T::one())).collect();
    let mut glued = glue_with_budget(&ef_n, &place, &glue, &budget, T::from_int(2))?;
    glued.demote(&labels[1])?;
    if !exceptional {
        return Ok(glued);
    }
    let alone = point_hull(&labels[3..], &[int_row(&EXCEPTIONAL_ROW[3..])], false)?;
    balas_union(&[&glued, &alone])
}

/// Extended formulation of the augmented bond polytope of `spec`, whose
/// edges and augmented pairs together must form a wheel.
pub fn wheel_abond_ef<T: Scalar>(spec: &AbondSpec<T>) -> Result<ExtFormulation<T>, EfError> {
    let mut full = spec.graph.clone();
    full.clear_non_edges();
    for p in &spec.augmented {
        full.add_edge(p.lo(), p.hi(), T::zero()).map_err(|_| EfError::NotAWheel)?;
    }
    let PieceKind::Wheel { hub, rim, .. } = classify_piece(&full) else {
        return Err(EfError::NotAWheel);
    };
    if !spec.graph.is_connected_graph() {
        return Err(EfError::Disconnected);
    }
    let mut g = spec.graph.clone();
    g.clear_non_edges();
    let mut ef = wheel_rec(&g, hub, &rim)?;
    for p in spec.pairs() {
        let target = if spec.augmented.contains(&p) { aug_label(p) } else { edge_label(p) };
        ef.rename(&wheel_label(p), &target)?;
    }
    ef.reorder_proj(&spec.labels())?;
    Ok(ef)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_unit_wheel, wheel_hub};
    use crate::lp::lp_max;
    use crate::polytope::bond_points;
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sorted(rows: &[[u8; 6]]) -> Vec<[u8; 6]> {
        let mut v = rows.to_vec();
        v.sort_unstable();
        v
    }

    /// 6-tuples induced by the bonds of a wheel on rim 0..5 where rim vertex
    /// 2 (t) keeps the pairs flagged in `adj` (to 1, 3, hub) and every other
    /// wheel pair is an edge.
    fn induced_tuples(adj: [bool; 3]) -> (Vec<[u8; 6]>, bool) {
        let n = 5;
        let hub = wheel_hub(n);
        let (p, t, q) = (1, 2, 3);
        let mut g: Graph<Rational> = make_unit_wheel(n).unwrap();
        for (on, other) in adj.iter().zip([p, q, hub]) {
            if !on {
                g.remove_edge(t, other);
            }
        }
        let rest: BTreeSet<Vertex> = g.vertices().filter(|&v| v != t).collect();
        let exceptional = g.induced(&rest).is_connected_graph();
        let mut out = BTreeSet::new();
        for b in connected_bipartitions(&g).unwrap() {
            let sep = |a: Vertex, c: Vertex| u8::from(b.side.contains(&a) != b.side.contains(&c));
            out.insert([sep(hub, p), sep(p, q), sep(hub, q), sep(p, t), sep(t, q), sep(hub, t)]);
        }
        out.insert([0; 6]);
        (out.into_iter().collect(), exceptional)
    }

    #[test]
    fn placement_rows_match_enumeration() {
        for mask in 1u8..8 {
            let adj = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
            if adj.iter().filter(|a| **a).count() > 2 {
                continue;
            }
            let (tuples, exceptional) = induced_tuples(adj);
            let mut rows = placement_rows(adj);
            if exceptional {
                rows.push(EXCEPTIONAL_ROW);
            }
            assert_eq!(sorted(&rows), tuples, "adjacency {adj:?}");
        }
    }

    #[test]
    fn frozen_matrices() {
        let case1 = [true, false, true];
        let case3 = [true, true, false];
        assert_eq!(sorted(&placement_rows(case1)), sorted(&POLYTOPE_1));
        assert_eq!(sorted(&placement_rows(case3)), sorted(&POLYTOPE_2_DERIVED));
        assert_ne!(sorted(&POLYTOPE_1), sorted(&POLYTOPE_2_DERIVED));
        assert_eq!(induced_tuples(case3).0.len(), 7);
    }

    fn check_against_points(spec: &AbondSpec<Rational>, ef: &ExtFormulation<Rational>, rng: &mut ChaCha8Rng) {
        let pts = bond_points(spec).unwrap();
        assert_eq!(ef.proj_labels(), spec.labels());
        for _ in 0..6 {
            let c: Vec<Rational> = (0..pts[0].len()).map(|_| Rational::integer(rng.gen_range(-9..=9))).collect();
            let oracle = pts
                .iter()
                .map(|p| p.iter().zip(&c).fold(Rational::zero(), |s, (x, y)| s + x.clone() * y.clone()))
                .max()
                .unwrap();
            let got = lp_max(&ef.hrep, &ef.lift_objective(&c));
            assert_eq!(got.value, Some(oracle), "objective {c:?} on {spec:?}");
        }
    }

    use num_traits::Zero;

    #[test]
    fn full_wheels_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..=7 {
            let spec = AbondSpec::from_graph(make_unit_wheel::<Rational>(n).unwrap());
            let ef = wheel_abond_ef(&spec).unwrap();
            check_against_points(&spec, &ef, &mut rng);
        }
    }

    #[test]
    fn wheel_subgraphs_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 40 {
            let n = rng.gen_range(4..=6);
            let w: Graph<Rational> = make_unit_wheel(n).unwrap();
            let mut g = w.clone();
            let mut aug = Vec::new();
            for p in w.edge_pairs() {
                if rng.gen_bool(0.3) {
                    g.remove_edge(p.lo(), p.hi());
                    aug.push(p);
                }
            }
            if !g.is_connected_graph() || aug.is_empty() {
                continue;
            }
            let spec = AbondSpec::new(g, aug).unwrap();
            let ef = wheel_abond_ef(&spec).unwrap();
            check_against_points(&spec, &ef, &mut rng);
            checked += 1;
        }
    }

    #[test]
    fn stars_and_w4_values() {
        let w: Graph<Rational> = make_unit_wheel(4).unwrap();
        let mut star = w.clone();
        let rim: Vec<Pair> = (0..4).map(|i| Pair::new(i, (i + 1) % 4)).collect();
        for p in &rim {
            star.remove_edge(p.lo(), p.hi());
        }
        let spec = AbondSpec::new(star, rim).unwrap();
        assert_eq!(bond_points(&spec).unwrap().len(), 5);
        let ef = wheel_abond_ef(&spec).unwrap();
        check_against_points(&spec, &ef, &mut ChaCha8Rng::seed_from_u64(5));
        let full = wheel_abond_ef(&AbondSpec::from_graph(w)).unwrap();
        let ones = vec![Rational::integer(1); 8];
        assert_eq!(lp_max(&full.hrep, &full.lift_objective(&ones)).value, Some(Rational::integer(5)));
    }

    #[test]
    fn rejects_non_wheels() {
        let g: Graph<Rational> = crate::graph::make_k33();
        assert_eq!(wheel_abond_ef(&AbondSpec::from_graph(g)), Err(EfError::NotAWheel));
    }
}
