//! Recognition of the five base piece families.

use super::{Graph, Vertex};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceKind {
    /// `rim` lists the rim vertices in cyclic order starting from the
    /// smallest label.
    Wheel { n: usize, hub: Vertex, rim: Vec<Vertex> },
    Prism,
    K2,
    K3,
    K33,
    NotAPiece,
}

impl PieceKind {
    pub fn is_piece(&self) -> bool {
        !matches!(self, PieceKind::NotAPiece)
    }

    pub fn name(&self) -> String {
        match self {
            PieceKind::Wheel { n, .. } => format!("wheel({n})"),
            PieceKind::Prism => "prism".into(),
            PieceKind::K2 => "k2".into(),
            PieceKind::K3 => "k3".into(),
            PieceKind::K33 => "k33".into(),
            PieceKind::NotAPiece => "not-a-piece".into(),
        }
    }
}

/// Classifies `g` up to isomorphism, ignoring weights and non-edges.
/// K4 comes back as a 3-wheel hubbed at its lowest label.
pub fn classify_piece<T: Scalar>(g: &Graph<T>) -> PieceKind {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n < 2 || !g.is_connected_graph() {
        return PieceKind::NotAPiece;
    }
    let adj = g.adjacency();
    match (n, m) {
        (2, 1) => return PieceKind::K2,
        (3, 3) => return PieceKind::K3,
        (4, 6) => {
            let mut vs = g.vertices();
            let hub = vs.next().unwrap();
            return PieceKind::Wheel { n: 3, hub, rim: vs.collect() };
        }
        _ => {}
    }
    if n >= 5 && m == 2 * (n - 1) {
        let hubs: Vec<Vertex> = adj
            .iter()
            .filter(|(_, nb)| nb.len() == n - 1)
            .map(|(v, _)| *v)
            .collect();
        if hubs.len() == 1 {
            let hub = hubs[0];
            if adj.iter().all(|(v, nb)| *v == hub || nb.len() == 3) {
                if let Some(rim) = rim_cycle(&adj, hub, n - 1) {
                    return PieceKind::Wheel { n: n - 1, hub, rim };
                }
            }
        }
    }
    if n == 6 && m == 9 && adj.values().all(|nb| nb.len() == 3) {
        return if is_bipartite(&adj) { PieceKind::K33 } else { PieceKind::Prism };
    }
    PieceKind::NotAPiece
}

/// Walks the rim (every non-hub vertex has exactly two non-hub neighbours)
/// and returns it in cyclic order if it is a single cycle of length `len`.
fn rim_cycle(
    adj: &std::collections::BTreeMap<Vertex, Vec<Vertex>>,
    hub: Vertex,
    len: usize,
) -> Option<Vec<Vertex>> {
    let rim_nb = |v: Vertex| -> Vec<Vertex> { adj[&v].iter().copied().filter(|&x| x != hub).collect() };
    let start = *adj.keys().find(|&&v| v != hub)?;
    let first = rim_nb(start);
    if first.len() != 2 {
        return None;
    }
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = first[0];
    while cur != start {
        if order.len() > len {
            return None;
        }
        order.push(cur);
        let nb = rim_nb(cur);
        if nb.len() != 2 {
            return None;
        }
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    (order.len() == len).then_some(order)
}

fn is_bipartite(adj: &std::collections::BTreeMap<Vertex, Vec<Vertex>>) -> bool {
    let mut colour: std::collections::BTreeMap<Vertex, bool> = Default::default();
    for &s in adj.keys() {
        if colour.contains_key(&s) {
            continue;
        }
        colour.insert(s, false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let cx = colour[&x];
            for &y in &adj[&x] {
                match colour.get(&y) {
                    Some(&cy) if cy == cx => return false,
                    Some(_) => {}
                    None => {
                        colour.insert(y, !cx);
                        stack.push(y);
                    }
                }
            }
        }
    }
    true
}
