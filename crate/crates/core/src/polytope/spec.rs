//! Augmented bond polytope specifications and their vertex lists.

use super::EfError;
use crate::graph::{Graph, Pair, Vertex};
use crate::oracle::enumerate_bonds;
use crate::scalar::Scalar;
use std::collections::BTreeSet;

pub fn edge_label(p: Pair) -> String {
    format!("e:{}-{}", p.lo(), p.hi())
}

pub fn aug_label(p: Pair) -> String {
    format!("x:{}-{}", p.lo(), p.hi())
}

/// A graph with a set of tracked non-edges. Each coordinate of the
/// augmented bond polytope records whether the bond separates the pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AbondSpec<T> {
    pub graph: Graph<T>,
    pub augmented: BTreeSet<Pair>,
}

impl<T: Scalar> AbondSpec<T> {
    pub fn new(graph: Graph<T>, augmented: impl IntoIterator<Item = Pair>) -> Result<Self, EfError> {
        let augmented: BTreeSet<Pair> = augmented.into_iter().collect();
        for p in &augmented {
            if graph.has_edge(p.lo(), p.hi()) || !graph.has_vertex(p.lo()) || !graph.has_vertex(p.hi()) {
                return Err(EfError::BadAugmented(format!("{}-{}", p.lo(), p.hi())));
            }
        }
        Ok(AbondSpec { graph, augmented })
    }

    /// Uses the graph's recorded non-edges as the augmented pairs.
    pub fn from_graph(graph: Graph<T>) -> Self {
        let augmented = graph.non_edges().collect();
        AbondSpec { graph, augmented }
    }

    /// Coordinate pairs: edges in graph order, then augmented pairs.
    pub fn pairs(&self) -> Vec<Pair> {
        self.graph.edge_pairs().chain(self.augmented.iter().copied()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.graph
            .edge_pairs()
            .map(edge_label)
            .chain(self.augmented.iter().map(|&p| aug_label(p)))
            .collect()
    }
}

pub(crate) fn separation_point<T: Scalar>(pairs: &[Pair], side: &BTreeSet<Vertex>) -> Vec<T> {
    pairs
        .iter()
        .map(|p| if side.contains(&p.lo()) != side.contains(&p.hi()) { T::one() } else { T::zero() })
        .collect()
}

/// One point per bond, in [`AbondSpec::labels`] order, followed by the origin.
pub fn bond_points<T: Scalar>(spec: &AbondSpec<T>) -> Result<Vec<Vec<T>>, EfError> {
    let pairs = spec.pairs();
    let mut out: Vec<Vec<T>> =
        enumerate_bonds(&spec.graph)?.iter().map(|b| separation_point(&pairs, &b.side)).collect();
    out.push(vec![T::zero(); pairs.len()]);
    Ok(out)
}
