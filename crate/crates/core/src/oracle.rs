//! Exhaustive ground truth: bond enumeration, constrained maxima, the
//! bond-family formulas for sums, and a brute-force K5-e minor test.

use crate::decompose::{compose, SumOp};
use crate::graph::{Graph, Pair, Vertex};
use crate::scalar::Scalar;
use std::collections::{BTreeSet, HashSet};
use thiserror::Error;

pub const BOND_GUARD: usize = 24;
pub const MINOR_GUARD: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} supports at most {limit} vertices, got {got}")]
    TooLarge { what: &'static str, limit: usize, got: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A bond, identified by the side holding the smallest vertex label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bond<T> {
    pub side: BTreeSet<Vertex>,
    pub cut: BTreeSet<Pair>,
    pub weight: T,
}

pub type BondFamily = BTreeSet<BTreeSet<Pair>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    None,
    SameSide(Vertex, Vertex),
    Opposite(Vertex, Vertex),
}

impl Constraint {
    pub fn admits(&self, side: &BTreeSet<Vertex>) -> bool {
        match *self {
            Constraint::None => true,
            Constraint::SameSide(u, v) => side.contains(&u) == side.contains(&v),
            Constraint::Opposite(u, v) => side.contains(&u) != side.contains(&v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    Separated,
    Together,
}

/// Bitmask view of a graph on at most [`BOND_GUARD`] vertices.
struct Masks {
    labels: Vec<Vertex>,
    adj: Vec<u32>,
}

impl Masks {
    fn new<T: Scalar>(g: &Graph<T>) -> Self {
        let labels: Vec<Vertex> = g.vertices().collect();
        let idx = |v: Vertex| labels.binary_search(&v).unwrap();
        let mut adj = vec![0u32; labels.len()];
        for p in g.edge_pairs() {
            let (a, b) = (idx(p.lo()), idx(p.hi()));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Masks { labels, adj }
    }

    fn connected(&self, set: u32) -> bool {
        if set == 0 {
            return false;
        }
        let mut reach = set & set.wrapping_neg();
        loop {
            let mut grown = reach;
            let mut todo = reach;
            while todo != 0 {
                let i = todo.trailing_zeros();
                todo &= todo - 1;
                grown |= self.adj[i as usize] & set;
            }
            if grown == reach {
                return reach == set;
            }
            reach = grown;
        }
    }

    fn side(&self, set: u32) -> BTreeSet<Vertex> {
        (0..self.labels.len()).filter(|i| set >> i & 1 == 1).map(|i| self.labels[i]).collect()
    }
}

fn guard(what: &'static str, limit: usize, got: usize) -> Result<(), OracleError> {
    if got > limit {
        Err(OracleError::TooLarge { what, limit, got })
    } else {
        Ok(())
    }
}

/// Bipartitions with both sides nonempty and connected, each reported once
/// with the smallest label on `side`. For a connected graph these are
/// exactly its bonds.
pub fn connected_bipartitions<T: Scalar>(g: &Graph<T>) -> Result<Vec<Bond<T>>, OracleError> {
    let n = g.vertex_count();
    guard("bond enumeration", BOND_GUARD, n)?;
    if n < 2 {
        return Ok(Vec::new());
    }
    let m = Masks::new(g);
    let full: u32 = (1 << n) - 1;
    let mut out = Vec::new();
    // bit 0 always on the first side
    for rest in 0..(1u32 << (n - 1)) {
        let s = 1 | rest << 1;
        if s == full || !m.connected(s) || !m.connected(full & !s) {
            continue;
        }
        let side = m.side(s);
        let cut = g.cut_edges(&side);
        let weight = g.cut_weight(&side);
        out.push(Bond { side, cut, weight });
    }
    Ok(out)
}

pub fn enumerate_bonds<T: Scalar>(g: &Graph<T>) -> Result<Vec<Bond<T>>, OracleError> {
    if !g.is_connected_graph() {
        return Err(OracleError::Disconnected);
    }
    connected_bipartitions(g)
}

pub fn family<T: Scalar>(bonds: &[Bond<T>]) -> BondFamily {
    bonds.iter().map(|b| b.cut.clone()).collect()
}

/// Maximum-weight bond satisfying `c`; ties go to the lexicographically
/// smallest side.
pub fn maxbond_bruteforce<T: Scalar>(g: &Graph<T>, c: Constraint) -> Result<Option<Bond<T>>, OracleError> {
    let mut best: Option<Bond<T>> = None;
    for b in enumerate_bonds(g)? {
        if !c.admits(&b.side) {
            continue;
        }
        let better = match &best {
            None => true,
            Some(cur) => b.weight > cur.weight || (b.weight == cur.weight && b.side < cur.side),
        };
        if better {
            best = Some(b);
        }
    }
    Ok(best)
}

pub fn bond_family<T: Scalar>(g: &Graph<T>, u: Vertex, v: Vertex, mode: FamilyMode) -> Result<BondFamily, OracleError> {
    if u == v {
        return Err(OracleError::Precondition("u and v must differ".into()));
    }
    let c = match mode {
        FamilyMode::Separated => Constraint::Opposite(u, v),
        FamilyMode::Together => Constraint::SameSide(u, v),
    };
    Ok(enumerate_bonds(g)?.into_iter().filter(|b| c.admits(&b.side)).map(|b| b.cut).collect())
}

pub fn pairwise_union(f1: &BondFamily, f2: &BondFamily) -> BondFamily {
    let mut out = BondFamily::new();
    for a in f1 {
        for b in f2 {
            out.insert(a.union(b).copied().collect());
        }
    }
    out
}

/// Bonds of `g1 op g2` predicted from the operands alone.
pub fn predicted_bonds<T: Scalar>(op: SumOp, g1: &Graph<T>, g2: &Graph<T>) -> Result<BondFamily, OracleError> {
    let pre = |m: &str| OracleError::Precondition(m.to_string());
    if !g1.is_connected_graph() || !g2.is_connected_graph() {
        return Err(pre("operands must be connected"));
    }
    let shared: BTreeSet<Vertex> = g1.vertex_set().intersection(g2.vertex_set()).copied().collect();
    if shared != op.shared() {
        return Err(pre("operands do not overlap in exactly the shared vertices"));
    }
    let (u, v) = match op {
        SumOp::OneSum(_) => {
            let mut f = family(&enumerate_bonds(g1)?);
            f.extend(family(&enumerate_bonds(g2)?));
            return Ok(f);
        }
        SumOp::TwoSum(u, v) | SumOp::TwoSumMinus(u, v) => (u, v),
    };
    if !g1.has_edge(u, v) || !g2.has_edge(u, v) {
        return Err(pre("both operands must contain the shared edge"));
    }
    let together = |g: &Graph<T>| bond_family(g, u, v, FamilyMode::Together);
    if let SumOp::TwoSum(..) = op {
        let with_e = |g: &Graph<T>| bond_family(g, u, v, FamilyMode::Separated);
        let mut f = together(g1)?;
        f.extend(together(g2)?);
        f.extend(pairwise_union(&with_e(g1)?, &with_e(g2)?));
        return Ok(f);
    }
    let h1 = g1.without_edge(u, v);
    let h2 = g2.without_edge(u, v);
    match (h1.is_connected_graph(), h2.is_connected_graph()) {
        (true, true) => {
            let mut f = together(g1)?;
            f.extend(together(g2)?);
            let s1 = bond_family(&h1, u, v, FamilyMode::Separated)?;
            let s2 = bond_family(&h2, u, v, FamilyMode::Separated)?;
            f.extend(pairwise_union(&s1, &s2));
            Ok(f)
        }
        (true, false) | (false, true) => {
            let (conn, disc) = if h1.is_connected_graph() { (&h1, g2) } else { (&h2, g1) };
            let mut f = family(&enumerate_bonds(conn)?);
            f.extend(together(disc)?);
            Ok(f)
        }
        (false, false) => Err(pre("both operands disconnect when the shared edge is removed")),
    }
}

/// Composes and enumerates directly; the reference the formulas are checked
/// against.
pub fn composed_bonds<T: Scalar>(op: SumOp, g1: &Graph<T>, g2: &Graph<T>) -> Result<BondFamily, OracleError> {
    let g = compose(op, g1, g2).map_err(|e| OracleError::Precondition(e.to_string()))?;
    Ok(family(&enumerate_bonds(&g)?))
}

/// Exhaustive K5-e minor test: contract edges in every possible order,
/// reducing after each contraction.
pub fn has_k5e_minor<T: Scalar>(g: &Graph<T>) -> Result<bool, OracleError> {
    guard("minor test", MINOR_GUARD, g.vertex_count())?;
    let labels: Vec<Vertex> = g.vertices().collect();
    let idx = |v: Vertex| labels.binary_search(&v).unwrap();
    let mut adj = vec![0u16; labels.len()];
    for p in g.edge_pairs() {
        adj[idx(p.lo())] |= 1 << idx(p.hi());
        adj[idx(p.hi())] |= 1 << idx(p.lo());
    }
    // The pattern is connected, so a model sits inside one component, and
    // contracting a vertex into a neighbour never loses a model.
    let mut seen = HashSet::new();
    Ok(components(&adj).into_iter().any(|c| search(reduce(restrict(&adj, c)), &mut seen)))
}

type Adj = Vec<u16>;

fn components(adj: &Adj) -> Vec<u16> {
    let mut left: u16 = if adj.len() == 16 { u16::MAX } else { (1 << adj.len()) - 1 };
    let mut out = Vec::new();
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let grown = (0..adj.len()).filter(|i| comp >> i & 1 == 1).fold(comp, |m, i| m | adj[i]);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

/// Induced subgraph on `keep`, relabelled to `0..k`.
fn restrict(adj: &Adj, keep: u16) -> Adj {
    let ids: Vec<usize> = (0..adj.len()).filter(|i| keep >> i & 1 == 1).collect();
    ids.iter()
        .map(|&x| ids.iter().enumerate().filter(|(_, &y)| adj[x] >> y & 1 == 1).fold(0, |m, (j, _)| m | 1 << j))
        .collect()
}

/// Deletes vertices of degree at most one and suppresses vertices of degree
/// two until neither exists. Both preserve K5-e minors, since every branch
/// set of a model needs at least three outgoing edges.
fn reduce(mut adj: Adj) -> Adj {
    let mut alive: u16 = if adj.len() == 16 { u16::MAX } else { (1 << adj.len()) - 1 };
    while let Some(x) = (0..adj.len()).find(|&x| alive >> x & 1 == 1 && adj[x].count_ones() <= 2) {
        let nb = adj[x];
        for y in 0..adj.len() {
            if nb >> y & 1 == 1 {
                adj[y] &= !(1 << x);
            }
        }
        if nb.count_ones() == 2 {
            let a = nb.trailing_zeros() as usize;
            let b = 15 - nb.leading_zeros() as usize;
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj[x] = 0;
        alive &= !(1 << x);
    }
    restrict(&adj, alive)
}

fn contract(adj: &Adj, a: usize, b: usize) -> Adj {
    let mut out = adj.clone();
    let merged = (adj[a] | adj[b]) & !(1 << a) & !(1 << b);
    for y in 0..adj.len() {
        if adj[y] >> b & 1 == 1 {
            out[y] &= !(1 << b);
            if y != a {
                out[y] |= 1 << a;
            }
        }
    }
    out[a] = merged;
    out[b] = 0;
    let keep = !(1u16 << b) & if adj.len() == 16 { u16::MAX } else { (1 << adj.len()) - 1 };
    restrict(&out, keep)
}

fn search(adj: Adj, seen: &mut HashSet<Adj>) -> bool {
    let n = adj.len();
    let m = adj.iter().map(|x| x.count_ones()).sum::<u32>() / 2;
    if n < 5 || m < 9 {
        return false;
    }
    if n == 5 {
        return true;
    }
    if !seen.insert(adj.clone()) {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            if adj[a] >> b & 1 == 1 && search(reduce(contract(&adj, a, b)), seen) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_k33, make_path, make_prism, make_unit_wheel};
    use crate::Rational;

    type G = Graph<Rational>;

    fn r(v: i64) -> Rational {
        Rational::integer(v)
    }

    fn p(u: Vertex, v: Vertex) -> Pair {
        Pair::new(u, v)
    }

    fn cutset(ps: &[(Vertex, Vertex)]) -> BTreeSet<Pair> {
        ps.iter().map(|&(u, v)| p(u, v)).collect()
    }

    /// Independent reference: every subset, no bit tricks.
    fn naive_bonds(g: &G) -> BondFamily {
        let vs: Vec<Vertex> = g.vertices().collect();
        let mut out = BondFamily::new();
        for mask in 1..(1u32 << vs.len()) - 1 {
            let s: BTreeSet<Vertex> = (0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            let t: BTreeSet<Vertex> = g.vertex_set().difference(&s).copied().collect();
            if g.is_connected(&s) && g.is_connected(&t) {
                out.insert(g.cut_edges(&s));
            }
        }
        out
    }

    #[test]
    fn bond_counts() {
        let k3: G = make_complete(3);
        let b = enumerate_bonds(&k3).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|x| x.cut.len() == 2));
        let k4 = enumerate_bonds(&make_complete::<Rational>(4)).unwrap();
        assert_eq!(k4.iter().filter(|x| x.cut.len() == 3).count(), 4);
        assert_eq!(k4.iter().filter(|x| x.cut.len() == 4).count(), 3);
        assert_eq!(enumerate_bonds(&make_complete::<Rational>(2)).unwrap().len(), 1);
        for g in [make_prism::<Rational>(), make_k33(), make_unit_wheel(6).unwrap(), make_cycle(7)] {
            assert_eq!(family(&enumerate_bonds(&g).unwrap()), naive_bonds(&g));
        }
    }

    #[test]
    fn guards() {
        let big: G = make_path(25);
        assert!(matches!(enumerate_bonds(&big), Err(OracleError::TooLarge { .. })));
        assert_eq!(enumerate_bonds(&G::with_vertices([0, 1])), Err(OracleError::Disconnected));
        assert!(has_k5e_minor(&make_path::<Rational>(15)).is_err());
    }

    #[test]
    fn constrained_maxima() {
        let w4: G = make_unit_wheel(4).unwrap();
        assert_eq!(maxbond_bruteforce(&w4, Constraint::None).unwrap().unwrap().weight, r(5));
        let k3: G = make_complete(3);
        assert_eq!(maxbond_bruteforce(&k3, Constraint::Opposite(0, 1)).unwrap().unwrap().weight, r(2));
        let k2: G = make_complete(2);
        assert_eq!(maxbond_bruteforce(&k2, Constraint::SameSide(0, 1)).unwrap(), None);
    }

    #[test]
    fn families() {
        let k3: G = make_complete(3);
        let sep = bond_family(&k3, 0, 1, FamilyMode::Separated).unwrap();
        assert_eq!(sep, BondFamily::from([cutset(&[(0, 1), (0, 2)]), cutset(&[(0, 1), (1, 2)])]));
        let tog = bond_family(&k3, 0, 1, FamilyMode::Together).unwrap();
        assert_eq!(tog, BondFamily::from([cutset(&[(0, 2), (1, 2)])]));
        let path: G = make_path(3);
        assert!(bond_family(&path, 0, 2, FamilyMode::Together).unwrap().is_empty());
    }

    #[test]
    fn unions() {
        let f = BondFamily::from([cutset(&[(0, 1)]), cutset(&[(1, 2)])]);
        assert_eq!(pairwise_union(&BondFamily::from([BTreeSet::new()]), &f), f);
        let a = BondFamily::from([cutset(&[(0, 1)])]);
        let b = BondFamily::from([cutset(&[(2, 3)])]);
        assert_eq!(pairwise_union(&a, &b), BondFamily::from([cutset(&[(0, 1), (2, 3)])]));
        let g = BondFamily::from([cutset(&[(5, 6)]), cutset(&[(5, 7)]), cutset(&[(6, 7)])]);
        assert_eq!(pairwise_union(&f, &g).len(), 6);
    }

    fn k3_on(labels: [Vertex; 3]) -> G {
        make_complete(3).relabel(|v| labels[v])
    }

    #[test]
    fn sum_formulas_on_triangles() {
        let a = k3_on([0, 1, 2]);
        let one = predicted_bonds(SumOp::OneSum(0), &a, &k3_on([0, 3, 4])).unwrap();
        assert_eq!(one.len(), 6);
        assert_eq!(one, composed_bonds(SumOp::OneSum(0), &a, &k3_on([0, 3, 4])).unwrap());
        let b = k3_on([0, 1, 3]);
        let two = predicted_bonds(SumOp::TwoSum(0, 1), &a, &b).unwrap();
        assert_eq!(two.len(), 6);
        assert_eq!(two, composed_bonds(SumOp::TwoSum(0, 1), &a, &b).unwrap());
        let minus = predicted_bonds(SumOp::TwoSumMinus(0, 1), &a, &b).unwrap();
        let c4 = compose(SumOp::TwoSumMinus(0, 1), &a, &b).unwrap();
        assert_eq!(minus, family(&enumerate_bonds(&c4).unwrap()));
        assert_eq!(minus.len(), 6);
    }

    #[test]
    fn bridge_side_case() {
        // second operand is a single edge: removing it disconnects
        let a: G = make_unit_wheel(4).unwrap();
        let mut k2: G = G::with_vertices([0, 4]);
        k2.add_edge(0, 4, r(1)).unwrap();
        let f = predicted_bonds(SumOp::TwoSumMinus(0, 4), &a, &k2).unwrap();
        assert_eq!(f, composed_bonds(SumOp::TwoSumMinus(0, 4), &a, &k2).unwrap());
        let g = predicted_bonds(SumOp::TwoSumMinus(0, 4), &k2, &a).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn minimal_cuts() {
        let g: G = make_unit_wheel(5).unwrap();
        for b in enumerate_bonds(&g).unwrap() {
            for e in &b.cut {
                let mut h = g.clone();
                for c in b.cut.iter().filter(|c| *c != e) {
                    h.remove_edge(c.lo(), c.hi());
                }
                assert!(h.is_connected_graph());
            }
        }
    }

    #[test]
    fn minor_examples() {
        let mut k5e: G = make_complete(5);
        k5e.remove_edge(0, 1);
        assert!(has_k5e_minor(&k5e).unwrap());
        assert!(has_k5e_minor(&make_complete::<Rational>(5)).unwrap());
        for n in 3..=10 {
            assert!(!has_k5e_minor(&make_unit_wheel::<Rational>(n).unwrap()).unwrap());
        }
        assert!(!has_k5e_minor(&make_prism::<Rational>()).unwrap());
        assert!(!has_k5e_minor(&make_k33::<Rational>()).unwrap());
        // subdivided K5-e still contains the pattern
        let mut sub: G = G::with_vertices(0..6);
        for (u, v) in [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 5), (5, 4), (3, 4)] {
            sub.add_edge(u, v, r(1)).unwrap();
        }
        assert!(has_k5e_minor(&sub).unwrap());
    }

    /// Definition-level check: assign every vertex to one of five branch
    /// sets or to none, and test connectivity and adjacency directly.
    fn naive_minor(g: &G) -> bool {
        let n = g.vertex_count();
        let mut assign = vec![0usize; n];
        loop {
            let sets: Vec<BTreeSet<Vertex>> =
                (1..=5).map(|k| (0..n).filter(|&v| assign[v] == k).collect()).collect();
            if sets.iter().all(|s| g.is_connected(s)) {
                let touching = |a: &BTreeSet<Vertex>, b: &BTreeSet<Vertex>| {
                    g.edge_pairs().any(|p| (a.contains(&p.lo()) && b.contains(&p.hi())) || (b.contains(&p.lo()) && a.contains(&p.hi())))
                };
                let count = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).filter(|&(i, j)| touching(&sets[i], &sets[j])).count();
                if count >= 9 {
                    return true;
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return false;
                }
                assign[k] += 1;
                if assign[k] <= 5 {
                    break;
                }
                assign[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn minor_search_matches_definition() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut hits = 0;
        for _ in 0..16 {
            let mut g: G = G::with_vertices(0..6);
            for u in 0..6 {
                for v in u + 1..6 {
                    if rng.gen_bool(0.6) {
                        g.add_edge(u, v, r(1)).unwrap();
                    }
                }
            }
            let fast = has_k5e_minor(&g).unwrap();
            assert_eq!(fast, naive_minor(&g), "{g:?}");
            hits += fast as usize;
        }
        assert!(hits > 0 && hits < 16);
    }
}
