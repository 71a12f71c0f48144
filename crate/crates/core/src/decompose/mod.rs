//! Clique-sum decomposition into wheels, prisms, K2, K3 and K3,3.
//!
//! Blocks are joined by 1-sums in breadth-first order of the block-cut
//! tree. Inside a block the lexicographically smallest separating pair is
//! split off until every part is a piece; a pair that is not an edge of the
//! block becomes a virtual edge of weight zero and the node a `TwoSumMinus`.

mod sexpr;

pub use sexpr::{parse_decomposition, render_decomposition, SexprError};

use crate::graph::{classify_piece, Graph, GraphError, Pair, PieceKind, Vertex};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumOp {
    OneSum(Vertex),
    /// Identify the pair and keep the shared edge.
    TwoSum(Vertex, Vertex),
    /// Identify the pair and delete the shared edge.
    TwoSumMinus(Vertex, Vertex),
}

impl SumOp {
    pub fn shared(&self) -> BTreeSet<Vertex> {
        match *self {
            SumOp::OneSum(v) => BTreeSet::from([v]),
            SumOp::TwoSum(u, v) | SumOp::TwoSumMinus(u, v) => BTreeSet::from([u, v]),
        }
    }

    pub fn pair(&self) -> Option<Pair> {
        match *self {
            SumOp::OneSum(_) => None,
            SumOp::TwoSum(u, v) | SumOp::TwoSumMinus(u, v) => Some(Pair::new(u, v)),
        }
    }
}

impl fmt::Display for SumOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumOp::OneSum(v) => write!(f, "1sum {v}"),
            SumOp::TwoSum(u, v) => write!(f, "2sum {u} {v}"),
            SumOp::TwoSumMinus(u, v) => write!(f, "2sum- {u} {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SumDecomposition<T> {
    Leaf { graph: Graph<T>, kind: PieceKind },
    Node { op: SumOp, left: Box<SumDecomposition<T>>, right: Box<SumDecomposition<T>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("graph has a K5-e minor: block on {0:?} is 3-connected but not a piece")]
    NotMinorFree(Vec<Vertex>),
    #[error("operands of `{op}` share {found:?}, expected {expected:?}")]
    LabelMismatch { op: SumOp, expected: Vec<Vertex>, found: Vec<Vertex> },
    #[error("operand of `{0}` lacks the shared edge")]
    MissingSharedEdge(SumOp),
    #[error("operands of `{0}` disagree on the shared edge weight")]
    WeightMismatch(SumOp),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl<T: Scalar> SumDecomposition<T> {
    pub fn leaf(graph: Graph<T>) -> Self {
        let kind = classify_piece(&graph);
        SumDecomposition::Leaf { graph, kind }
    }

    pub fn node(op: SumOp, left: Self, right: Self) -> Self {
        SumDecomposition::Node { op, left: Box::new(left), right: Box::new(right) }
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        match self {
            SumDecomposition::Leaf { graph, .. } => graph.vertex_set().clone(),
            SumDecomposition::Node { left, right, .. } => {
                let mut s = left.vertex_set();
                s.extend(right.vertex_set());
                s
            }
        }
    }

    pub fn leaves(&self) -> Vec<(&Graph<T>, &PieceKind)> {
        match self {
            SumDecomposition::Leaf { graph, kind } => vec![(graph, kind)],
            SumDecomposition::Node { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            SumDecomposition::Leaf { .. } => 1,
            SumDecomposition::Node { left, right, .. } => 1 + left.node_count() + right.node_count(),
        }
    }
}

/// Evaluates a single sum. For 2-sums both operands must contain the
/// shared edge; `TwoSum` also requires the weights to agree.
pub fn compose<T: Scalar>(op: SumOp, g1: &Graph<T>, g2: &Graph<T>) -> Result<Graph<T>, DecomposeError> {
    let found: Vec<Vertex> = g1.vertex_set().intersection(g2.vertex_set()).copied().collect();
    let expected: Vec<Vertex> = op.shared().into_iter().collect();
    if found != expected {
        return Err(DecomposeError::LabelMismatch { op, expected, found });
    }
    let mut out = Graph::with_vertices(g1.vertices().chain(g2.vertices()));
    let shared = op.pair();
    if let Some(p) = shared {
        let (w1, w2) = match (g1.weight(p.lo(), p.hi()), g2.weight(p.lo(), p.hi())) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(DecomposeError::MissingSharedEdge(op)),
        };
        if matches!(op, SumOp::TwoSum(..)) && w1 != w2 {
            return Err(DecomposeError::WeightMismatch(op));
        }
    }
    for (p, w) in g1.edges().chain(g2.edges()) {
        if Some(p) == shared && (matches!(op, SumOp::TwoSumMinus(..)) || out.has_edge(p.lo(), p.hi())) {
            continue;
        }
        out.add_edge(p.lo(), p.hi(), w.clone())?;
    }
    for p in g1.non_edges().chain(g2.non_edges()) {
        if !out.has_non_edge(p.lo(), p.hi()) {
            out.add_non_edge(p.lo(), p.hi())?;
        }
    }
    Ok(out)
}

pub fn recompose<T: Scalar>(d: &SumDecomposition<T>) -> Result<Graph<T>, DecomposeError> {
    match d {
        SumDecomposition::Leaf { graph, .. } => Ok(graph.clone()),
        SumDecomposition::Node { op, left, right } => compose(*op, &recompose(left)?, &recompose(right)?),
    }
}

/// A block together with the articulation vertex attaching it to the
/// blocks listed before it (`None` for the first block).
#[derive(Debug, Clone, PartialEq)]
pub struct Block<T> {
    pub graph: Graph<T>,
    pub attach: Option<Vertex>,
}

/// Blocks of a connected graph in breadth-first order of the block-cut tree,
/// starting from the block holding the smallest vertex label.
pub fn biconnected_components<T: Scalar>(g: &Graph<T>) -> Vec<Block<T>> {
    let mut sets = block_vertex_sets(g);
    sets.sort();
    let mut by_vertex: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            by_vertex.entry(v).or_default().push(i);
        }
    }
    let Some(first) = g.vertices().next().and_then(|v| by_vertex.get(&v)).map(|b| b[0]) else {
        return Vec::new();
    };
    let mut done = vec![false; sets.len()];
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(first, None)]);
    done[first] = true;
    while let Some((b, attach)) = queue.pop_front() {
        out.push(Block { graph: g.induced(&sets[b]), attach });
        for &v in &sets[b] {
            for &nb in &by_vertex[&v] {
                if !done[nb] {
                    done[nb] = true;
                    queue.push_back((nb, Some(v)));
                }
            }
        }
    }
    out
}

/// Iterative Tarjan; isolated vertices form singleton blocks.
fn block_vertex_sets<T: Scalar>(g: &Graph<T>) -> Vec<BTreeSet<Vertex>> {
    let adj = g.adjacency();
    let mut disc: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut low: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut time = 0;
    for root in g.vertices() {
        if disc.contains_key(&root) {
            continue;
        }
        if adj[&root].is_empty() {
            blocks.push(BTreeSet::from([root]));
            disc.insert(root, time);
            time += 1;
            continue;
        }
        disc.insert(root, time);
        low.insert(root, time);
        time += 1;
        // frames: (vertex, parent, next neighbour index)
        let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(root, None, 0)];
        while let Some(&(v, parent, idx)) = stack.last() {
            if idx < adj[&v].len() {
                let w = adj[&v][idx];
                stack.last_mut().unwrap().2 += 1;
                if Some(w) == parent {
                    continue;
                }
                match disc.get(&w) {
                    None => {
                        disc.insert(w, time);
                        low.insert(w, time);
                        time += 1;
                        edge_stack.push((v, w));
                        stack.push((w, Some(v), 0));
                    }
                    Some(&dw) if dw < disc[&v] => {
                        edge_stack.push((v, w));
                        let lv = low[&v].min(dw);
                        low.insert(v, lv);
                    }
                    Some(_) => {}
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    let lv = low[&v];
                    let lp = low[&p].min(lv);
                    low.insert(p, lp);
                    if lv >= disc[&p] {
                        let mut set = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            set.insert(a);
                            set.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        blocks.push(set);
                    }
                }
            }
        }
    }
    blocks
}

/// Separation of a 2-connected graph at the pair `(u, v)`. Both sides
/// contain `u` and `v`; `side1` is the component holding the smallest
/// remaining label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPair {
    pub u: Vertex,
    pub v: Vertex,
    pub side1: BTreeSet<Vertex>,
    pub side2: BTreeSet<Vertex>,
}

/// Lexicographically smallest separating pair, or `None` for a
/// 3-connected graph.
pub fn find_split_pair<T: Scalar>(g: &Graph<T>) -> Option<SplitPair> {
    let vs: Vec<Vertex> = g.vertices().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let mut rest = g.vertex_set().clone();
            rest.remove(&u);
            rest.remove(&v);
            let comps = g.induced(&rest).components();
            if comps.len() >= 2 {
                let mut side1 = comps[0].clone();
                let mut side2: BTreeSet<Vertex> = comps[1..].iter().flatten().copied().collect();
                for x in [u, v] {
                    side1.insert(x);
                    side2.insert(x);
                }
                return Some(SplitPair { u, v, side1, side2 });
            }
        }
    }
    None
}

/// Decomposes a connected graph. Non-edges of `g` are not part of the
/// decomposition.
pub fn decompose<T: Scalar>(g: &Graph<T>) -> Result<SumDecomposition<T>, DecomposeError> {
    if g.vertex_count() < 2 {
        return Err(DecomposeError::TooSmall);
    }
    if !g.is_connected_graph() {
        return Err(DecomposeError::Disconnected);
    }
    let mut plain = g.clone();
    plain.clear_non_edges();
    let mut acc: Option<SumDecomposition<T>> = None;
    for block in biconnected_components(&plain) {
        let d = decompose_block(block.graph)?;
        acc = Some(match (acc, block.attach) {
            (None, _) => d,
            (Some(prev), Some(v)) => SumDecomposition::node(SumOp::OneSum(v), prev, d),
            (Some(_), None) => unreachable!("later blocks always attach"),
        });
    }
    Ok(acc.expect("connected graph with an edge has a block"))
}

fn decompose_block<T: Scalar>(h: Graph<T>) -> Result<SumDecomposition<T>, DecomposeError> {
    let kind = classify_piece(&h);
    if kind.is_piece() {
        return Ok(SumDecomposition::Leaf { graph: h, kind });
    }
    let Some(split) = find_split_pair(&h) else {
        return Err(DecomposeError::NotMinorFree(h.vertices().collect()));
    };
    let (u, v) = (split.u, split.v);
    let mut h1 = h.induced(&split.side1);
    let mut h2 = h.induced(&split.side2);
    let op = if h.has_edge(u, v) {
        SumOp::TwoSum(u, v)
    } else {
        h1.add_edge(u, v, T::zero())?;
        h2.add_edge(u, v, T::zero())?;
        SumOp::TwoSumMinus(u, v)
    };
    Ok(SumDecomposition::node(op, decompose_block(h1)?, decompose_block(h2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_path, make_unit_wheel};
    use crate::Rational;

    type G = Graph<Rational>;

    fn two_k4_on_edge() -> G {
        let a: G = make_complete(4);
        let b: G = make_complete(4).relabel(|v| if v < 2 { v } else { v + 2 });
        compose(SumOp::TwoSum(0, 1), &a, &b).unwrap()
    }

    #[test]
    fn blocks_of_small_graphs() {
        let bow = compose(SumOp::OneSum(0), &make_complete::<Rational>(3), &make_complete(3).relabel(|v| if v == 0 { 0 } else { v + 2 })).unwrap();
        let blocks = biconnected_components(&bow);
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[1].attach, Some(0));
        assert_eq!(biconnected_components(&make_complete::<Rational>(4)).len(), 1);
        let path = biconnected_components(&make_path::<Rational>(3));
        assert_eq!(path.len(), 2);
        assert_eq!(path[1].attach, Some(1));
    }

    #[test]
    fn split_pairs() {
        let sp = find_split_pair(&two_k4_on_edge()).unwrap();
        assert_eq!((sp.u, sp.v), (0, 1));
        assert_eq!(find_split_pair(&make_unit_wheel::<Rational>(6).unwrap()), None);
        let c4 = find_split_pair(&make_cycle::<Rational>(4)).unwrap();
        assert_eq!((c4.u, c4.v), (0, 2));
        assert_eq!(c4.side1, BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn wheel_is_a_leaf() {
        let g: G = make_unit_wheel(5).unwrap();
        match decompose(&g).unwrap() {
            SumDecomposition::Leaf { kind: PieceKind::Wheel { n: 5, .. }, .. } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_k4_gives_one_twosum() {
        let g = two_k4_on_edge();
        let d = decompose(&g).unwrap();
        match &d {
            SumDecomposition::Node { op: SumOp::TwoSum(0, 1), left, right } => {
                assert!(matches!(**left, SumDecomposition::Leaf { kind: PieceKind::Wheel { n: 3, .. }, .. }));
                assert!(matches!(**right, SumDecomposition::Leaf { kind: PieceKind::Wheel { n: 3, .. }, .. }));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(recompose(&d).unwrap(), g);
    }

    #[test]
    fn k5_is_rejected() {
        assert!(matches!(decompose(&make_complete::<Rational>(5)), Err(DecomposeError::NotMinorFree(_))));
    }

    #[test]
    fn cycle_via_virtual_edges() {
        let g: G = make_cycle(6);
        let d = decompose(&g).unwrap();
        assert_eq!(recompose(&d).unwrap(), g);
        assert!(d.leaves().iter().all(|(_, k)| **k == PieceKind::K3));
    }

    #[test]
    fn twosum_minus_of_triangles_is_c4() {
        let a: G = make_complete(3);
        let b: G = make_complete(3).relabel(|v| [0, 1, 3][v]);
        let c4 = compose(SumOp::TwoSumMinus(0, 1), &a, &b).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(!c4.has_edge(0, 1));
        assert_eq!(c4.adjacency().values().map(Vec::len).collect::<Vec<_>>(), vec![2; 4]);
    }

    #[test]
    fn compose_rejections() {
        let a: G = make_complete(3);
        let b: G = make_complete(3).relabel(|v| v + 5);
        assert!(matches!(compose(SumOp::OneSum(0), &a, &b), Err(DecomposeError::LabelMismatch { .. })));
        let mut c: G = make_complete(3).relabel(|v| [0, 1, 7][v]);
        c.set_weight(0, 1, Rational::from(4)).unwrap();
        assert_eq!(compose(SumOp::TwoSum(0, 1), &a, &c), Err(DecomposeError::WeightMismatch(SumOp::TwoSum(0, 1))));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(decompose(&G::with_vertices([0])), Err(DecomposeError::TooSmall));
        assert_eq!(decompose(&G::with_vertices([0, 1])), Err(DecomposeError::Disconnected));
    }
}
