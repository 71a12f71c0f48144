//! Line-oriented text format for extended formulations.
//!
//! ```text
//! dim <d> lifted <D>
//! coord <index> <label>
//! proj <index> ...
//! ineq <rhs> <c_0> ... <c_{D-1}>
//! eq <rhs> <c_0> ... <c_{D-1}>
//! ```
//! Blank lines and lines starting with `#` are skipped when parsing. Row
//! classes are not stored; parsed rows are tagged `file`.

use super::{EfError, ExtFormulation};
use crate::hrep::HRep;
use crate::scalar::Scalar;
use std::fmt::Write;
use std::str::FromStr;

pub fn render_ef<T: Scalar>(ef: &ExtFormulation<T>) -> String {
    let mut out = String::new();
    let d = ef.hrep.dim();
    writeln!(out, "dim {} lifted {}", ef.proj_dim(), d).unwrap();
    for (i, l) in ef.hrep.coords().iter().enumerate() {
        writeln!(out, "coord {i} {l}").unwrap();
    }
    let proj: Vec<String> = ef.proj.iter().map(|i| i.to_string()).collect();
    writeln!(out, "proj {}", proj.join(" ")).unwrap();
    for (kind, rows) in [("ineq", &ef.hrep.ineqs), ("eq", &ef.hrep.eqs)] {
        for r in rows {
            write!(out, "{kind} {}", r.rhs).unwrap();
            for c in r.dense(d) {
                write!(out, " {c}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

fn syntax(line: usize, msg: impl Into<String>) -> EfError {
    EfError::Syntax { line, msg: msg.into() }
}

pub fn parse_ef<T: Scalar + FromStr>(text: &str) -> Result<ExtFormulation<T>, EfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut h: HRep<T> = HRep::new();
    let mut proj: Option<Vec<usize>> = None;
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last = line;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut it = s.split_whitespace();
        let kw = it.next().expect("nonempty line has a token");
        if kw == "dim" {
            let toks: Vec<&str> = it.collect();
            let (Some(&d), Some(&"lifted"), Some(&big), 3) = (toks.first(), toks.get(1), toks.get(2), toks.len())
            else {
                return Err(syntax(line, "expected `dim <d> lifted <D>`"));
            };
            let d = d.parse().map_err(|_| syntax(line, "bad projection dimension"))?;
            let big = big.parse().map_err(|_| syntax(line, "bad lifted dimension"))?;
            if header.replace((d, big)).is_some() {
                return Err(syntax(line, "duplicate header"));
            }
            continue;
        }
        let Some((d, big)) = header else {
            return Err(syntax(line, "`dim` line must come first"));
        };
        match kw {
            "coord" => {
                let idx: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(line, "expected `coord <index> <label>`"))?;
                let label = it.next().ok_or_else(|| syntax(line, "missing label"))?;
                if idx != h.dim() || it.next().is_some() {
                    return Err(syntax(line, "coordinates must be listed in order, one label each"));
                }
                h.add_coord(label).map_err(|e| syntax(line, e.to_string()))?;
            }
            "proj" => {
                let p: Vec<usize> = it
                    .map(|t| t.parse().ok().filter(|&i: &usize| i < big))
                    .collect::<Option<_>>()
                    .ok_or_else(|| syntax(line, "bad projection index"))?;
                if p.len() != d || proj.replace(p).is_some() {
                    return Err(syntax(line, "projection must list `dim` indices once"));
                }
            }
            "ineq" | "eq" => {
                let vals: Vec<T> = it
                    .map(|t| t.parse().ok())
                    .collect::<Option<_>>()
                    .ok_or_else(|| syntax(line, "bad number"))?;
                if vals.len() != big + 1 {
                    return Err(syntax(line, format!("expected {} numbers, got {}", big + 1, vals.len())));
                }
                let mut vals = vals.into_iter();
                let rhs = vals.next().expect("length checked");
                let coefs = vals.enumerate();
                if kw == "ineq" {
                    h.add_ineq(coefs, rhs, "file");
                } else {
                    h.add_eq(coefs, rhs, "file");
                }
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    let Some((_, big)) = header else {
        return Err(syntax(last.max(1), "missing `dim` line"));
    };
    if h.dim() != big {
        return Err(syntax(last, format!("expected {big} coordinates, found {}", h.dim())));
    }
    let proj = proj.ok_or_else(|| syntax(last, "missing `proj` line"))?;
    Ok(ExtFormulation { hrep: h, proj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_unit_wheel;
    use crate::polytope::bond_ef;
    use crate::Rational;

    #[test]
    fn round_trip() {
        let ef = bond_ef::<Rational>(&make_unit_wheel(4).unwrap()).unwrap();
        let text = render_ef(&ef);
        assert!(text.starts_with("dim 8 lifted "));
        let back: ExtFormulation<Rational> = parse_ef(&text).unwrap();
        assert_eq!(back.proj, ef.proj);
        assert_eq!(back.hrep.coords(), ef.hrep.coords());
        assert_eq!(back.row_count(), ef.row_count());
        for (a, b) in back.hrep.ineqs.iter().zip(&ef.hrep.ineqs) {
            assert_eq!((&a.coefs, &a.rhs), (&b.coefs, &b.rhs));
        }
    }

    #[test]
    fn fractions_and_errors() {
        let text = "dim 1 lifted 1\ncoord 0 e:0-1\nproj 0\nineq 1/2 3/4\n";
        let ef: ExtFormulation<Rational> = parse_ef(text).unwrap();
        assert_eq!(ef.hrep.ineqs[0].rhs, Rational::new(1, 2));
        let bad = "coord 0 a\n";
        assert!(matches!(parse_ef::<Rational>(bad), Err(EfError::Syntax { line: 1, .. })));
        let short = "dim 1 lifted 2\ncoord 0 a\ncoord 1 b\nproj 0\nineq 1 1\n";
        assert!(matches!(parse_ef::<Rational>(short), Err(EfError::Syntax { line: 5, .. })));
    }
}
