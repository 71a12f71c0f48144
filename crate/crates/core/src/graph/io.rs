//! Line-oriented graph file format.
//!
//! ```text
//! # comment
//! v 4
//! e 0 1 3
//! e 1 2 5/3
//! n 0 2
//! ```
//!
//! `v <count>` declares vertices `0..count` and must precede every edge or
//! non-edge line. Weights are integers or `p/q`.

use super::{Graph, GraphError, Vertex};
use crate::scalar::Scalar;
use std::fmt::Write;
use std::str::FromStr;

pub fn parse_graph<T: Scalar + FromStr>(text: &str) -> Result<Graph<T>, GraphError> {
    let mut g: Option<Graph<T>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let syntax = |msg: String| GraphError::Syntax { line, msg };
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let vertex = |t: &str| -> Result<Vertex, GraphError> {
            t.parse::<Vertex>()
                .map_err(|_| syntax(format!("bad vertex label `{t}`")))
        };
        match toks[0] {
            "v" => {
                if g.is_some() {
                    return Err(syntax("repeated `v` line".into()));
                }
                if toks.len() != 2 {
                    return Err(syntax("expected `v <count>`".into()));
                }
                let n = toks[1]
                    .parse::<usize>()
                    .map_err(|_| syntax(format!("bad vertex count `{}`", toks[1])))?;
                g = Some(Graph::with_vertices(0..n));
            }
            "e" | "n" => {
                let graph = g
                    .as_mut()
                    .ok_or_else(|| syntax("edge before `v` line".into()))?;
                let want = if toks[0] == "e" { 4 } else { 3 };
                if toks.len() != want {
                    return Err(syntax(if want == 4 {
                        "expected `e <u> <v> <weight>`".into()
                    } else {
                        "expected `n <u> <v>`".into()
                    }));
                }
                let (u, v) = (vertex(toks[1])?, vertex(toks[2])?);
                if toks[0] == "e" {
                    let w = toks[3]
                        .parse::<T>()
                        .map_err(|_| syntax(format!("bad weight `{}`", toks[3])))?;
                    graph.add_edge(u, v, w)?;
                } else {
                    graph.add_non_edge(u, v)?;
                }
            }
            other => return Err(syntax(format!("unknown record `{other}`"))),
        }
    }
    g.ok_or(GraphError::Syntax { line: 0, msg: "missing `v` line".into() })
}

/// Canonical text form: `v`, then edges, then non-edges, in label order.
pub fn render_graph<T: Scalar>(g: &Graph<T>) -> Result<String, GraphError> {
    let n = g.vertex_count();
    if g.vertices().enumerate().any(|(i, v)| i != v) {
        return Err(GraphError::NonContiguousLabels);
    }
    let mut out = format!("v {n}\n");
    for (p, w) in g.edges() {
        writeln!(out, "e {} {} {}", p.lo(), p.hi(), w).unwrap();
    }
    for p in g.non_edges() {
        writeln!(out, "n {} {}", p.lo(), p.hi()).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, Pair};
    use crate::Rational;
    use proptest::prelude::*;

    #[test]
    fn parses_triangle() {
        let g: Graph<Rational> = parse_graph("v 3\ne 0 1 1\ne 1 2 1\ne 0 2 1\n").unwrap();
        assert_eq!(g, make_complete(3));
    }

    #[test]
    fn fractional_weight() {
        let g: Graph<Rational> = parse_graph("# k2\nv 2\ne 0 1 5/3\n").unwrap();
        assert_eq!(g.weight(0, 1), Some(&Rational::new(5, 3)));
    }

    #[test]
    fn rejections() {
        let dup = parse_graph::<Rational>("v 3\ne 0 1 1\ne 0 1 2\n");
        assert_eq!(dup, Err(GraphError::DuplicateEdge(Pair::new(0, 1))));
        let lp = parse_graph::<Rational>("v 3\ne 2 2 1\n");
        assert_eq!(lp, Err(GraphError::SelfLoop(2)));
        let clash = parse_graph::<Rational>("v 3\ne 0 1 1\nn 1 0\n");
        assert_eq!(clash, Err(GraphError::EdgeNonEdgeConflict(Pair::new(0, 1))));
        match parse_graph::<Rational>("v 3\n\ne 0 1 x\n") {
            Err(GraphError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_graph::<Rational>("e 0 1 1\n").is_err());
        assert!(parse_graph::<Rational>("v 2\ne 0 5 1\n").is_err());
    }

    #[test]
    fn non_edges_roundtrip() {
        let text = "v 3\ne 0 1 -2\ne 1 2 1/2\nn 0 2\n";
        let g: Graph<Rational> = parse_graph(text).unwrap();
        assert!(g.has_non_edge(2, 0));
        assert_eq!(render_graph(&g).unwrap(), text);
    }

    proptest! {
        #[test]
        fn render_parse_identity(n in 2usize..8, mask in any::<u64>(), ws in prop::collection::vec((-9i64..9, 1i64..5), 28)) {
            let mut g: Graph<Rational> = Graph::with_vertices(0..n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match mask >> (2 * k) & 3 {
                        0 | 1 => g.add_edge(u, v, Rational::new(ws[k].0, ws[k].1)).unwrap(),
                        2 => g.add_non_edge(u, v).unwrap(),
                        _ => {}
                    }
                    k += 1;
                }
            }
            let text = render_graph(&g).unwrap();
            prop_assert_eq!(parse_graph::<Rational>(&text).unwrap(), g);
        }
    }
}
