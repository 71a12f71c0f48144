//! Seeded random (K5-e)-minor-free graphs built as explicit sums of pieces.

use crate::decompose::{compose, render_decomposition, SumDecomposition, SumOp};
use crate::graph::{make_complete, make_k33, make_prism, make_unit_wheel, render_graph, Graph, Vertex};
use crate::scalar::Scalar;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub pieces: usize,
    pub max_vertices: usize,
    /// Weights are drawn uniformly from `-max_weight..=max_weight`.
    pub max_weight: i64,
    /// Largest wheel rim to draw.
    pub max_rim: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { pieces: 4, max_vertices: 14, max_weight: 9, max_rim: 8 }
    }
}

/// A generated graph with the sum expression it was built from.
#[derive(Debug, Clone)]
pub struct Generated<T> {
    pub graph: Graph<T>,
    pub tree: SumDecomposition<T>,
}

impl<T: Scalar> Generated<T> {
    /// Graph file text with the construction tree as a leading comment.
    pub fn to_file(&self) -> String {
        let body = render_graph(&self.graph).expect("generator labels are contiguous");
        format!("# tree: {}\n{}", render_decomposition(&self.tree), body)
    }
}

#[derive(Clone, Copy)]
enum Kind {
    K2,
    K3,
    Prism,
    K33,
    Wheel(usize),
}

fn piece<T: Scalar>(kind: Kind) -> Graph<T> {
    match kind {
        Kind::K2 => make_complete(2),
        Kind::K3 => make_complete(3),
        Kind::Prism => make_prism(),
        Kind::K33 => make_k33(),
        Kind::Wheel(n) => make_unit_wheel(n).unwrap(),
    }
}

fn size(kind: Kind) -> usize {
    match kind {
        Kind::K2 => 2,
        Kind::K3 => 3,
        Kind::Prism | Kind::K33 => 6,
        Kind::Wheel(n) => n + 1,
    }
}

fn random_kind(rng: &mut ChaCha8Rng, max_size: usize, min_size: usize, max_rim: usize) -> Option<Kind> {
    let mut options = vec![Kind::K2, Kind::K3, Kind::Prism, Kind::K33];
    options.extend((3..=max_rim).map(Kind::Wheel));
    options.retain(|k| (min_size..=max_size).contains(&size(*k)));
    // group wheels so every family is about equally likely
    let families: Vec<Vec<Kind>> = {
        let mut by: BTreeMap<u8, Vec<Kind>> = BTreeMap::new();
        for k in options {
            let tag = match k {
                Kind::K2 => 0,
                Kind::K3 => 1,
                Kind::Prism => 2,
                Kind::K33 => 3,
                Kind::Wheel(_) => 4,
            };
            by.entry(tag).or_default().push(k);
        }
        by.into_values().collect()
    };
    let fam = families.choose(rng)?;
    fam.choose(rng).copied()
}

fn reweight<T: Scalar>(g: &Graph<T>, rng: &mut ChaCha8Rng, max_weight: i64) -> Graph<T> {
    let mut h = g.clone();
    for p in g.edge_pairs() {
        h.set_weight(p.lo(), p.hi(), T::from_int(rng.gen_range(-max_weight..=max_weight)))
            .unwrap();
    }
    h
}

/// Builds `cfg.pieces` pieces (fewer if the vertex budget runs out) joined
/// left-deep by random 1-sums, 2-sums and 2-sums with edge deletion.
/// Deterministic per seed.
pub fn generate<T: Scalar>(seed: u64, cfg: &GenConfig) -> Generated<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first_kind = random_kind(&mut rng, cfg.max_vertices.max(2), 2, cfg.max_rim).unwrap_or(Kind::K2);
    let first = reweight(&piece::<T>(first_kind), &mut rng, cfg.max_weight);
    let mut graph = first.clone();
    let mut tree = SumDecomposition::leaf(first);
    for _ in 1..cfg.pieces {
        let n = graph.vertex_count();
        let budget = cfg.max_vertices.saturating_sub(n);
        if budget == 0 {
            break;
        }
        let edges: Vec<_> = graph.edge_pairs().collect();
        let mut ops = vec![0u8];
        if !edges.is_empty() {
            ops.extend([1, 2]);
        }
        let op_tag = *ops.choose(&mut rng).unwrap();
        let shared = if op_tag == 0 { 1 } else { 2 };
        let min_size = if op_tag == 0 { 2 } else { 3 };
        let Some(kind) = random_kind(&mut rng, budget + shared, min_size, cfg.max_rim) else {
            break;
        };
        let raw = reweight(&piece::<T>(kind), &mut rng, cfg.max_weight);
        let raw_vs: Vec<Vertex> = raw.vertices().collect();
        let mut map: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let op = if op_tag == 0 {
            let x = *graph.vertex_set().iter().nth(rng.gen_range(0..n)).unwrap();
            map.insert(*raw_vs.choose(&mut rng).unwrap(), x);
            SumOp::OneSum(x)
        } else {
            let host = *edges.choose(&mut rng).unwrap();
            let pe: Vec<_> = raw.edge_pairs().collect();
            let pe = *pe.choose(&mut rng).unwrap();
            let (a, b) = if rng.gen_bool(0.5) { (pe.lo(), pe.hi()) } else { (pe.hi(), pe.lo()) };
            map.insert(a, host.lo());
            map.insert(b, host.hi());
            if op_tag == 1 {
                SumOp::TwoSum(host.lo(), host.hi())
            } else {
                SumOp::TwoSumMinus(host.lo(), host.hi())
            }
        };
        let mut next = n;
        for &v in &raw_vs {
            map.entry(v).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        let mut part = raw.relabel(|v| map[&v]);
        if let SumOp::TwoSum(u, v) = op {
            let w = graph.weight(u, v).unwrap().clone();
            part.set_weight(u, v, w).unwrap();
        }
        graph = compose(op, &graph, &part).expect("generator keeps labels consistent");
        tree = SumDecomposition::node(op, tree, SumDecomposition::leaf(part));
    }
    Generated { graph, tree }
}
