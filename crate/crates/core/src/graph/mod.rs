//! Exact-weighted undirected graphs with a tracked set of augmented
//! non-edges.

mod classify;
mod io;

pub use classify::{classify_piece, PieceKind};
pub use io::{parse_graph, render_graph};

use crate::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

pub type Vertex = usize;

/// Unordered vertex pair, stored with the smaller label first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair(Vertex, Vertex);

impl Pair {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Pair(u, v)
        } else {
            Pair(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`.
    pub fn other(self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Pair),
    #[error("pair {0} declared both as an edge and as a non-edge")]
    EdgeNonEdgeConflict(Pair),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("no edge {0}")]
    MissingEdge(Pair),
    #[error("a wheel needs at least 3 rim vertices, got {0}")]
    WheelTooSmall(usize),
    #[error("weight vectors must have length {expected}, got {got}")]
    WeightLength { expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("vertex labels must be 0..n-1 to be rendered")]
    NonContiguousLabels,
}

/// Undirected simple graph. Edges carry a weight; non-edges are pairs whose
/// separation status is tracked by augmented polytope coordinates.
#[derive(Clone, PartialEq)]
pub struct Graph<T> {
    vertices: BTreeSet<Vertex>,
    edges: BTreeMap<Pair, T>,
    non_edges: BTreeSet<Pair>,
}

impl<T: fmt::Debug> fmt::Debug for Graph<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .field("non_edges", &self.non_edges)
            .finish()
    }
}

impl<T: Scalar> Default for Graph<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Graph<T> {
    pub fn new() -> Self {
        Graph {
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
            non_edges: BTreeSet::new(),
        }
    }

    pub fn with_vertices(vs: impl IntoIterator<Item = Vertex>) -> Self {
        let mut g = Self::new();
        g.vertices.extend(vs);
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, w: T) -> Result<(), GraphError> {
        let p = self.check_pair(u, v)?;
        if self.edges.contains_key(&p) {
            return Err(GraphError::DuplicateEdge(p));
        }
        if self.non_edges.contains(&p) {
            return Err(GraphError::EdgeNonEdgeConflict(p));
        }
        self.edges.insert(p, w);
        Ok(())
    }

    pub fn add_non_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let p = self.check_pair(u, v)?;
        if self.edges.contains_key(&p) {
            return Err(GraphError::EdgeNonEdgeConflict(p));
        }
        self.non_edges.insert(p);
        Ok(())
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<Pair, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for x in [u, v] {
            if !self.vertices.contains(&x) {
                return Err(GraphError::UnknownVertex(x));
            }
        }
        Ok(Pair::new(u, v))
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Option<T> {
        self.edges.remove(&Pair::new(u, v))
    }

    pub fn set_weight(&mut self, u: Vertex, v: Vertex, w: T) -> Result<(), GraphError> {
        match self.edges.get_mut(&Pair::new(u, v)) {
            Some(slot) => {
                *slot = w;
                Ok(())
            }
            None => Err(GraphError::MissingEdge(Pair::new(u, v))),
        }
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<&T> {
        self.edges.get(&Pair::new(u, v))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains_key(&Pair::new(u, v))
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Pair, &T)> + '_ {
        self.edges.iter().map(|(p, w)| (*p, w))
    }

    pub fn edge_pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.edges.keys().copied()
    }

    pub fn non_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.non_edges.iter().copied()
    }

    pub fn non_edge_count(&self) -> usize {
        self.non_edges.len()
    }

    pub fn has_non_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.non_edges.contains(&Pair::new(u, v))
    }

    pub fn clear_non_edges(&mut self) {
        self.non_edges.clear();
    }

    /// Neighbour lists in label order.
    pub fn adjacency(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for p in self.edges.keys() {
            adj.get_mut(&p.0).unwrap().push(p.1);
            adj.get_mut(&p.1).unwrap().push(p.0);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.keys().filter(|p| p.contains(v)).count()
    }

    /// Sum of the weights of the edges with exactly one endpoint in `side`.
    pub fn cut_weight(&self, side: &BTreeSet<Vertex>) -> T {
        self.edges
            .iter()
            .filter(|(p, _)| side.contains(&p.0) != side.contains(&p.1))
            .fold(T::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// Edges with exactly one endpoint in `side`.
    pub fn cut_edges(&self, side: &BTreeSet<Vertex>) -> BTreeSet<Pair> {
        self.edges
            .keys()
            .filter(|p| side.contains(&p.0) != side.contains(&p.1))
            .copied()
            .collect()
    }

    /// True iff `s` is nonempty and induces a connected subgraph.
    pub fn is_connected(&self, s: &BTreeSet<Vertex>) -> bool {
        let Some(&start) = s.iter().next() else {
            return false;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                if s.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == s.len()
    }

    pub fn is_connected_graph(&self) -> bool {
        self.is_connected(&self.vertices)
    }

    /// Connected components, each as a vertex set, ordered by smallest label.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &v in &self.vertices {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::from([v]);
            seen.insert(v);
            let mut queue = VecDeque::from([v]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[&x] {
                    if seen.insert(y) {
                        comp.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `s`; non-edges with both endpoints in `s` are kept.
    pub fn induced(&self, s: &BTreeSet<Vertex>) -> Graph<T> {
        Graph {
            vertices: s.clone(),
            edges: self
                .edges
                .iter()
                .filter(|(p, _)| s.contains(&p.0) && s.contains(&p.1))
                .map(|(p, w)| (*p, w.clone()))
                .collect(),
            non_edges: self
                .non_edges
                .iter()
                .filter(|p| s.contains(&p.0) && s.contains(&p.1))
                .copied()
                .collect(),
        }
    }

    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph<T> {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    /// Same graph with every vertex label passed through `f` (must be injective).
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Graph<T> {
        Graph {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            edges: self
                .edges
                .iter()
                .map(|(p, w)| (Pair::new(f(p.0), f(p.1)), w.clone()))
                .collect(),
            non_edges: self.non_edges.iter().map(|p| Pair::new(f(p.0), f(p.1))).collect(),
        }
    }

    pub fn map_weights<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Graph<U> {
        Graph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|(p, w)| (*p, f(w))).collect(),
            non_edges: self.non_edges.clone(),
        }
    }

    pub fn total_abs_weight(&self) -> T {
        self.edges.values().fold(T::zero(), |acc, w| acc + w.abs())
    }
}

fn unit<T: Scalar>() -> T {
    T::one()
}

/// Wheel with rim vertices `0..n` and hub `n`. `spokes[i]` is the weight of
/// `{i, hub}` and `rim[i]` the weight of `{i, i+1 mod n}`.
pub fn make_wheel<T: Scalar>(n: usize, spokes: &[T], rim: &[T]) -> Result<Graph<T>, GraphError> {
    if n < 3 {
        return Err(GraphError::WheelTooSmall(n));
    }
    for w in [spokes.len(), rim.len()] {
        if w != n {
            return Err(GraphError::WeightLength { expected: n, got: w });
        }
    }
    let hub = wheel_hub(n);
    let mut g = Graph::with_vertices(0..=n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, rim[i].clone())?;
        g.add_edge(i, hub, spokes[i].clone())?;
    }
    Ok(g)
}

/// Label of the hub in graphs built by [`make_wheel`].
pub fn wheel_hub(n: usize) -> Vertex {
    n
}

pub fn make_unit_wheel<T: Scalar>(n: usize) -> Result<Graph<T>, GraphError> {
    let ones = vec![unit::<T>(); n];
    make_wheel(n, &ones, &ones)
}

pub fn make_complete<T: Scalar>(k: usize) -> Graph<T> {
    let mut g = Graph::with_vertices(0..k);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v, unit()).unwrap();
        }
    }
    g
}

/// Triangles `0,1,2` and `3,4,5` joined by the matching `i -- i+3`.
pub fn make_prism<T: Scalar>() -> Graph<T> {
    let mut g = Graph::with_vertices(0..6);
    for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)] {
        g.add_edge(u, v, unit()).unwrap();
    }
    g
}

/// Parts `{0,1,2}` and `{3,4,5}`.
pub fn make_k33<T: Scalar>() -> Graph<T> {
    let mut g = Graph::with_vertices(0..6);
    for u in 0..3 {
        for v in 3..6 {
            g.add_edge(u, v, unit()).unwrap();
        }
    }
    g
}

pub fn make_path<T: Scalar>(n: usize) -> Graph<T> {
    let mut g = Graph::with_vertices(0..n);
    for i in 1..n {
        g.add_edge(i - 1, i, unit()).unwrap();
    }
    g
}

pub fn make_cycle<T: Scalar>(n: usize) -> Graph<T> {
    let mut g = make_path(n);
    g.add_edge(n - 1, 0, unit()).unwrap();
    g
}
