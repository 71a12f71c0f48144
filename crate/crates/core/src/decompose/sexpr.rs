//! S-expression form of a decomposition tree.
//!
//! ```text
//! tree  := leaf | node
//! leaf  := (piece KIND (EDGE...))
//! KIND  := k2 | k3 | prism | k33 | (wheel N HUB)
//! EDGE  := (U V WEIGHT)
//! node  := (1sum V tree tree) | (2sum U V tree tree) | (2sum- U V tree tree)
//! ```
//!
//! A leaf's vertex set is the set of endpoints of its edges. Parsing
//! re-classifies each leaf and rejects a declared kind that does not match.

use super::{SumDecomposition, SumOp};
use crate::graph::{classify_piece, Graph, PieceKind, Vertex};
use crate::scalar::Scalar;
use std::fmt::Write;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexprError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected token `{0}`")]
    Unexpected(String),
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("leaf declared as {declared} but classifies as {actual}")]
    KindMismatch { declared: String, actual: String },
    #[error("invalid leaf: {0}")]
    BadLeaf(String),
}

pub fn render_decomposition<T: Scalar>(d: &SumDecomposition<T>) -> String {
    let mut out = String::new();
    render_into(d, &mut out);
    out
}

fn render_into<T: Scalar>(d: &SumDecomposition<T>, out: &mut String) {
    match d {
        SumDecomposition::Leaf { graph, kind } => {
            let k = match kind {
                PieceKind::Wheel { n, hub, .. } => format!("(wheel {n} {hub})"),
                PieceKind::Prism => "prism".into(),
                PieceKind::K2 => "k2".into(),
                PieceKind::K3 => "k3".into(),
                PieceKind::K33 => "k33".into(),
                PieceKind::NotAPiece => "none".into(),
            };
            write!(out, "(piece {k} (").unwrap();
            for (i, (p, w)) in graph.edges().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write!(out, "({} {} {})", p.lo(), p.hi(), w).unwrap();
            }
            out.push_str("))");
        }
        SumDecomposition::Node { op, left, right } => {
            write!(out, "({op} ").unwrap();
            render_into(left, out);
            out.push(' ');
            render_into(right, out);
            out.push(')');
        }
    }
}

pub fn parse_decomposition<T: Scalar + FromStr>(text: &str) -> Result<SumDecomposition<T>, SexprError> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let mut p = Parser { toks: spaced.split_whitespace().collect(), pos: 0 };
    let d = p.tree()?;
    match p.toks.get(p.pos) {
        None => Ok(d),
        Some(t) => Err(SexprError::Unexpected(t.to_string())),
    }
}

struct Parser<'a> {
    toks: Vec<&'a str>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn next(&mut self) -> Result<&'a str, SexprError> {
        let t = self.toks.get(self.pos).copied().ok_or(SexprError::Eof)?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).copied()
    }

    fn expect(&mut self, want: &str) -> Result<(), SexprError> {
        let t = self.next()?;
        if t == want {
            Ok(())
        } else {
            Err(SexprError::Unexpected(t.to_string()))
        }
    }

    fn num<N: FromStr>(&mut self) -> Result<N, SexprError> {
        let t = self.next()?;
        t.parse().map_err(|_| SexprError::BadNumber(t.to_string()))
    }

    fn tree<T: Scalar + FromStr>(&mut self) -> Result<SumDecomposition<T>, SexprError> {
        self.expect("(")?;
        let head = self.next()?;
        let d = match head {
            "piece" => self.leaf()?,
            "1sum" => {
                let v = self.num()?;
                SumDecomposition::node(SumOp::OneSum(v), self.tree()?, self.tree()?)
            }
            "2sum" | "2sum-" => {
                let (u, v) = (self.num()?, self.num()?);
                let op = if head == "2sum" { SumOp::TwoSum(u, v) } else { SumOp::TwoSumMinus(u, v) };
                SumDecomposition::node(op, self.tree()?, self.tree()?)
            }
            other => return Err(SexprError::Unexpected(other.to_string())),
        };
        self.expect(")")?;
        Ok(d)
    }

    fn leaf<T: Scalar + FromStr>(&mut self) -> Result<SumDecomposition<T>, SexprError> {
        let declared = if self.peek() == Some("(") {
            self.expect("(")?;
            self.expect("wheel")?;
            let n: usize = self.num()?;
            let hub: Vertex = self.num()?;
            self.expect(")")?;
            Some((n, hub))
        } else {
            None
        };
        let name = if declared.is_none() { self.next()?.to_string() } else { String::new() };
        let mut edges: Vec<(Vertex, Vertex, T)> = Vec::new();
        self.expect("(")?;
        while self.peek() == Some("(") {
            self.expect("(")?;
            edges.push((self.num()?, self.num()?, self.num()?));
            self.expect(")")?;
        }
        self.expect(")")?;
        let mut g = Graph::with_vertices(edges.iter().flat_map(|(u, v, _)| [*u, *v]));
        for (u, v, w) in edges {
            g.add_edge(u, v, w).map_err(|e| SexprError::BadLeaf(e.to_string()))?;
        }
        let kind = classify_piece(&g);
        let ok = match (&kind, declared) {
            (PieceKind::Wheel { n, hub, .. }, Some((dn, dh))) => *n == dn && *hub == dh,
            (k, None) => k.name() == name,
            _ => false,
        };
        if !ok {
            let declared = match declared {
                Some((n, hub)) => format!("wheel({n}) hub {hub}"),
                None => name,
            };
            return Err(SexprError::KindMismatch { declared, actual: kind.name() });
        }
        Ok(SumDecomposition::Leaf { graph: g, kind })
    }
}
