//! Extended formulations for 1-sums, 2-sums and 2-sums with the shared
//! edge deleted, and the fold over a decomposition tree.

use super::ops::{balas_union, glued_product, point_hull};
use super::spec::{aug_label, bond_points, edge_label, AbondSpec};
use super::wheel::wheel_abond_ef;
use super::{EfError, ExtFormulation};
use crate::decompose::{compose, decompose, SumDecomposition, SumOp};
use crate::graph::{Graph, Pair, PieceKind, Vertex};
use crate::scalar::Scalar;

const W: &str = "glue:w";
const Z: &str = "glue:z";

fn shared_labels<T: Scalar>(a: &ExtFormulation<T>, b: &ExtFormulation<T>, allowed: &[&str]) -> Vec<String> {
    let bl = b.proj_labels();
    a.proj_labels()
        .into_iter()
        .filter(|l| bl.contains(l) && !allowed.contains(l))
        .map(String::from)
        .collect()
}

/// Formulation for a 1-sum: the union of both operands, each zero on the
/// other's coordinates.
pub fn onesum_ef<T: Scalar>(
    ef1: &ExtFormulation<T>,
    ef2: &ExtFormulation<T>,
) -> Result<ExtFormulation<T>, EfError> {
    let shared = shared_labels(ef1, ef2, &[]);
    if !shared.is_empty() {
        return Err(EfError::SharedLabels(shared));
    }
    balas_union(&[ef1, ef2])
}

/// Adds the indicator pair `(w, z)`: `(w, z) = zero_wz` when the shared edge
/// is not cut, `(0, 0)` when it is; then adds the point with `(w, z) = extra`
/// and every other coordinate zero.
fn with_indicators<T: Scalar>(
    ef: &ExtFormulation<T>,
    e: &str,
    zero_wz: [i64; 2],
    extra: [i64; 2],
) -> Result<ExtFormulation<T>, EfError> {
    let int = |v: &[i64]| v.iter().map(|&x| T::from_int(x)).collect::<Vec<T>>();
    let seg = point_hull(&[e, W, Z], &[int(&[0, zero_wz[0], zero_wz[1]]), int(&[1, 0, 0])], false)?;
    let marked = glued_product(ef, &seg, &[e])?;
    let point = point_hull(&[W, Z], &[int(&extra)], false)?;
    balas_union(&[&marked, &point])
}

/// Formulation for the 2-sum over the edge `uv` present in both operands.
pub fn twosum_ef<T: Scalar>(
    ef1: &ExtFormulation<T>,
    ef2: &ExtFormulation<T>,
    u: Vertex,
    v: Vertex,
) -> Result<ExtFormulation<T>, EfError> {
    let e = edge_label(Pair::new(u, v));
    for ef in [ef1, ef2] {
        if ef.proj_position(&e).is_none() {
            return Err(EfError::MissingLabel(e));
        }
    }
    let shared = shared_labels(ef1, ef2, &[e.as_str()]);
    if !shared.is_empty() {
        return Err(EfError::SharedLabels(shared));
    }
    let p1 = with_indicators(ef1, &e, [0, 1], [1, 0])?;
    let p2 = with_indicators(ef2, &e, [1, 0], [0, 1])?;
    let mut out = glued_product(&p1, &p2, &[e.as_str(), W, Z])?;
    out.demote(W)?;
    out.demote(Z)?;
    Ok(out)
}

/// Operands for a 2-sum with the shared edge `uv` deleted.
#[derive(Debug, Clone, Copy)]
pub enum MinusOperands<'a, T> {
    /// `u`, `v` stay connected in both summands without `uv`. Operands are
    /// formulations of the summands with `uv` as an edge coordinate.
    BothConnected { ef1: &'a ExtFormulation<T>, ef2: &'a ExtFormulation<T> },
    /// Deleting `uv` disconnects the second summand. `ef1_minus` describes
    /// the first summand without `uv`, carrying `uv` as an augmented
    /// coordinate; `ef2` describes the second summand with `uv` as an edge.
    SecondDisconnected { ef1_minus: &'a ExtFormulation<T>, ef2: &'a ExtFormulation<T> },
}

/// Formulation for `g1` and `g2` glued along `uv` with `uv` deleted; the
/// result carries `uv` as the augmented coordinate `x:u-v`.
pub fn twosum_minus_ef<T: Scalar>(
    g1: &Graph<T>,
    g2: &Graph<T>,
    u: Vertex,
    v: Vertex,
    operands: MinusOperands<'_, T>,
) -> Result<ExtFormulation<T>, EfError> {
    if !g1.has_edge(u, v) || !g2.has_edge(u, v) {
        return Err(EfError::CaseMismatch(format!("both summands need the edge {u}-{v}")));
    }
    let c1 = g1.without_edge(u, v).is_connected_graph();
    let c2 = g2.without_edge(u, v).is_connected_graph();
    let pair = Pair::new(u, v);
    match operands {
        MinusOperands::BothConnected { ef1, ef2 } => {
            if !(c1 && c2) {
                return Err(EfError::CaseMismatch("a summand disconnects without the shared edge".into()));
            }
            let mut out = twosum_ef(ef1, ef2, u, v)?;
            out.rename(&edge_label(pair), &aug_label(pair))?;
            Ok(out)
        }
        MinusOperands::SecondDisconnected { ef1_minus, ef2 } => {
            if !c1 || c2 {
                return Err(EfError::CaseMismatch(
                    "expected the first summand to stay connected and the second to split".into(),
                ));
            }
            let x = aug_label(pair);
            if ef1_minus.proj_position(&x).is_none() {
                return Err(EfError::MissingLabel(x));
            }
            let e = edge_label(pair);
            let mut restricted = ef2.clone();
            restricted.fix(&e, T::zero(), "minus-fix")?;
            restricted.demote(&e)?;
            onesum_ef(ef1_minus, &restricted)
        }
    }
}

fn piece_ef<T: Scalar>(graph: &Graph<T>, kind: &PieceKind) -> Result<ExtFormulation<T>, EfError> {
    let mut g = graph.clone();
    g.clear_non_edges();
    let spec = AbondSpec::from_graph(g);
    match kind {
        PieceKind::Wheel { .. } => wheel_abond_ef(&spec),
        _ => point_hull(&spec.labels(), &bond_points(&spec)?, true),
    }
}

fn fold<T: Scalar>(d: &SumDecomposition<T>) -> Result<(ExtFormulation<T>, Graph<T>), EfError> {
    match d {
        SumDecomposition::Leaf { graph, kind } => Ok((piece_ef(graph, kind)?, graph.clone())),
        SumDecomposition::Node { op, left, right } => {
            let (ef1, g1) = fold(left)?;
            let (ef2, g2) = fold(right)?;
            let g = compose(*op, &g1, &g2)?;
            let ef = match *op {
                SumOp::OneSum(_) => onesum_ef(&ef1, &ef2)?,
                SumOp::TwoSum(u, v) => twosum_ef(&ef1, &ef2, u, v)?,
                SumOp::TwoSumMinus(u, v) => {
                    let c1 = g1.without_edge(u, v).is_connected_graph();
                    let c2 = g2.without_edge(u, v).is_connected_graph();
                    if !(c1 && c2) {
                        return Err(EfError::Unsupported(format!(
                            "`{op}` where a summand disconnects without the shared edge"
                        )));
                    }
                    twosum_minus_ef(&g1, &g2, u, v, MinusOperands::BothConnected { ef1: &ef1, ef2: &ef2 })?
                }
            };
            Ok((ef, g))
        }
    }
}

/// Extended formulation of the bond polytope (with the origin) of a
/// connected (K5 - e)-minor-free graph. Projection: edges in graph order.
/// Recorded non-edges of `g` are ignored.
pub fn bond_ef<T: Scalar>(g: &Graph<T>) -> Result<ExtFormulation<T>, EfError> {
    let d = decompose(g)?;
    let (mut ef, _) = fold(&d)?;
    let aug: Vec<String> = ef.proj_labels().into_iter().filter(|l| l.starts_with("x:")).map(String::from).collect();
    for l in aug {
        ef.demote(&l)?;
    }
    let labels: Vec<String> = g.edge_pairs().map(edge_label).collect();
    ef.reorder_proj(&labels)?;
    Ok(ef)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_unit_wheel};
    use crate::lp::lp_max;
    use crate::oracle::{composed_bonds, predicted_bonds};
    use crate::Rational;
    use num_traits::Zero;
    use std::collections::BTreeSet;

    type R = Rational;

    fn leaf_ef(g: &Graph<R>) -> ExtFormulation<R> {
        let spec = AbondSpec::from_graph(g.clone());
        point_hull(&spec.labels(), &bond_points(&spec).unwrap(), true).unwrap()
    }

    /// Every 0/1 point whose support is `cut` for some bond, plus the origin.
    fn family_points(labels: &[&str], fam: &BTreeSet<BTreeSet<Pair>>) -> Vec<Vec<R>> {
        let mut pts: Vec<Vec<R>> = fam
            .iter()
            .map(|cut| {
                labels
                    .iter()
                    .map(|l| {
                        let hit = cut.iter().any(|p| edge_label(*p) == *l);
                        if hit { R::integer(1) } else { R::zero() }
                    })
                    .collect()
            })
            .collect();
        pts.push(vec![R::zero(); labels.len()]);
        pts
    }

    fn objectives(d: usize) -> Vec<Vec<R>> {
        let mut out = vec![vec![R::integer(1); d], vec![R::integer(-1); d]];
        for s in 0..8i64 {
            out.push((0..d as i64).map(|i| R::integer((i * 7 + s * 5) % 11 - 5)).collect());
        }
        out
    }

    fn assert_same_support(ef: &ExtFormulation<R>, pts: &[Vec<R>]) {
        for c in objectives(ef.proj_dim()) {
            let oracle =
                pts.iter().map(|p| p.iter().zip(&c).fold(R::zero(), |s, (x, y)| s + x.clone() * y.clone())).max();
            assert_eq!(lp_max(&ef.hrep, &ef.lift_objective(&c)).value, oracle, "objective {c:?}");
        }
    }

    fn relabel(g: &Graph<R>, map: &[Vertex]) -> Graph<R> {
        g.relabel(|v| map[v])
    }

    #[test]
    fn onesum_of_triangles() {
        let g1: Graph<R> = make_complete(3);
        let g2 = relabel(&make_complete(3), &[2, 3, 4]);
        let ef = onesum_ef(&leaf_ef(&g1), &leaf_ef(&g2)).unwrap();
        let fam = predicted_bonds(SumOp::OneSum(2), &g1, &g2).unwrap();
        assert_eq!(fam.len(), 6);
        let labels = ef.proj_labels();
        assert_same_support(&ef, &family_points(&labels, &fam));
        let ones = vec![R::integer(1); 6];
        assert_eq!(lp_max(&ef.hrep, &ef.lift_objective(&ones)).value, Some(R::integer(2)));
        assert!(matches!(onesum_ef(&leaf_ef(&g1), &leaf_ef(&g1)), Err(EfError::SharedLabels(_))));
    }

    #[test]
    fn twosum_of_triangles_and_wheels() {
        let g1: Graph<R> = make_complete(3);
        let g2 = relabel(&make_complete(3), &[0, 1, 3]);
        let ef = twosum_ef(&leaf_ef(&g1), &leaf_ef(&g2), 0, 1).unwrap();
        let fam = predicted_bonds(SumOp::TwoSum(0, 1), &g1, &g2).unwrap();
        assert_eq!(fam, composed_bonds(SumOp::TwoSum(0, 1), &g1, &g2).unwrap());
        let labels = ef.proj_labels();
        assert_same_support(&ef, &family_points(&labels, &fam));

        let w: Graph<R> = make_unit_wheel(4).unwrap();
        let k4 = relabel(&make_complete(4), &[0, 4, 5, 6]);
        let ef1 = wheel_abond_ef(&AbondSpec::from_graph(w.clone())).unwrap();
        let ef = twosum_ef(&ef1, &leaf_ef(&k4), 0, 4).unwrap();
        let fam = composed_bonds(SumOp::TwoSum(0, 4), &w, &k4).unwrap();
        let labels = ef.proj_labels();
        assert_same_support(&ef, &family_points(&labels, &fam));
    }

    #[test]
    fn twosum_size_overhead_is_constant() {
        let g1: Graph<R> = make_complete(3);
        let g2 = relabel(&make_complete(3), &[0, 1, 3]);
        let (a, b) = (leaf_ef(&g1), leaf_ef(&g2));
        let ef = twosum_ef(&a, &b, 0, 1).unwrap();
        assert_eq!(ef.row_count() - a.row_count() - b.row_count(), TWOSUM_OVERHEAD);

        let w: Graph<R> = make_unit_wheel(6).unwrap();
        let k4 = relabel(&make_complete(4), &[0, 6, 7, 8]);
        let (a, b) = (wheel_abond_ef(&AbondSpec::from_graph(w)).unwrap(), leaf_ef(&k4));
        let ef = twosum_ef(&a, &b, 0, 6).unwrap();
        assert_eq!(ef.row_count() - a.row_count() - b.row_count(), TWOSUM_OVERHEAD);
    }

    /// Rows added by one 2-sum on top of its operands.
    const TWOSUM_OVERHEAD: usize = 30;

    #[test]
    fn twosum_minus_both_connected_is_the_square() {
        let g1: Graph<R> = make_complete(3);
        let g2 = relabel(&make_complete(3), &[0, 1, 3]);
        let ops = MinusOperands::BothConnected { ef1: &leaf_ef(&g1), ef2: &leaf_ef(&g2) };
        let mut ef = twosum_minus_ef(&g1, &g2, 0, 1, ops).unwrap();
        ef.demote("x:0-1").unwrap();
        let sq = compose(SumOp::TwoSumMinus(0, 1), &g1, &g2).unwrap();
        let spec = AbondSpec::from_graph(sq.clone());
        ef.reorder_proj(&spec.labels()).unwrap();
        assert_same_support(&ef, &bond_points(&spec).unwrap());
        assert_eq!(sq, make_cycle::<R>(4).relabel(|v| [0, 2, 1, 3][v]));
    }

    #[test]
    fn twosum_minus_second_disconnected() {
        // g2: edge 0-1 with a pendant at each end
        let g1: Graph<R> = make_complete(4);
        let mut g2: Graph<R> = Graph::with_vertices([0, 1, 4, 5]);
        for (a, b) in [(0, 1), (0, 4), (1, 5)] {
            g2.add_edge(a, b, R::integer(1)).unwrap();
        }
        let g1_minus = g1.without_edge(0, 1);
        let spec1 = AbondSpec::new(g1_minus.clone(), [Pair::new(0, 1)]).unwrap();
        let ef1_minus = point_hull(&spec1.labels(), &bond_points(&spec1).unwrap(), true).unwrap();
        let ops = MinusOperands::SecondDisconnected { ef1_minus: &ef1_minus, ef2: &leaf_ef(&g2) };
        let ef = twosum_minus_ef(&g1, &g2, 0, 1, ops).unwrap();
        let g = compose(SumOp::TwoSumMinus(0, 1), &g1, &g2).unwrap();
        let spec = AbondSpec::new(g.clone(), [Pair::new(0, 1)]).unwrap();
        let mut ef = ef;
        ef.reorder_proj(&spec.labels()).unwrap();
        assert_same_support(&ef, &bond_points(&spec).unwrap());
        let swapped = MinusOperands::BothConnected { ef1: &leaf_ef(&g1), ef2: &leaf_ef(&g2) };
        assert!(matches!(twosum_minus_ef(&g1, &g2, 0, 1, swapped), Err(EfError::CaseMismatch(_))));
    }

    #[test]
    fn bond_ef_small_graphs() {
        let w5: Graph<R> = make_unit_wheel(5).unwrap();
        let ef = bond_ef(&w5).unwrap();
        let ones = vec![R::integer(1); 10];
        assert_eq!(lp_max(&ef.hrep, &ef.lift_objective(&ones)).value, Some(R::integer(6)));
        for g in [make_complete::<R>(2), make_complete(3), make_complete(4), make_cycle(5), w5] {
            let ef = bond_ef(&g).unwrap();
            assert_same_support(&ef, &bond_points(&AbondSpec::from_graph(g.clone())).unwrap());
        }
    }
}
