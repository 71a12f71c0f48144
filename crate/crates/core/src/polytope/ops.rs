//! Generic polytope combinators on extended formulations.

use super::{add_aux, is_aux, EfError, ExtFormulation};
use crate::hrep::{HRep, Row};
use crate::lp::{lp_max, LpStatus};
use crate::scalar::Scalar;
use std::collections::{HashMap, HashSet};

/// `conv(points)` over `labels`, with the origin added when `with_origin`.
/// One multiplier per point: `x = sum l_p p`, `l >= 0`, and `sum l <= 1`
/// (or `= 1` without the origin).
pub fn point_hull<T: Scalar, S: AsRef<str>>(
    labels: &[S],
    points: &[Vec<T>],
    with_origin: bool,
) -> Result<ExtFormulation<T>, EfError> {
    let mut h = HRep::with_coords(labels.iter().map(|l| l.as_ref().to_string()))?;
    let d = labels.len();
    let kept: Vec<&Vec<T>> = points
        .iter()
        .inspect(|p| assert_eq!(p.len(), d, "point length must match the labels"))
        .filter(|p| !with_origin || p.iter().any(|x| !x.is_zero()))
        .collect();
    if kept.is_empty() && !with_origin {
        return Err(EfError::EmptyComponent(0));
    }
    let lambdas: Vec<usize> = kept.iter().map(|_| add_aux(&mut h)).collect();
    for c in 0..d {
        let coefs = std::iter::once((c, T::one()))
            .chain(kept.iter().zip(&lambdas).map(|(p, &l)| (l, -p[c].clone())));
        h.add_eq(coefs, T::zero(), "hull-link");
    }
    for &l in &lambdas {
        h.add_ineq([(l, -T::one())], T::zero(), "hull-nonneg");
    }
    if !lambdas.is_empty() {
        let coefs = lambdas.iter().map(|&l| (l, T::one()));
        if with_origin {
            h.add_ineq(coefs, T::one(), "hull-sum");
        } else {
            h.add_eq(coefs, T::one(), "hull-sum");
        }
    }
    Ok(ExtFormulation { hrep: h, proj: (0..d).collect() })
}

/// Copies the coordinates of `src` into `dst`. Auxiliary coordinates get
/// fresh columns; projection labels found in `shared` map onto the given
/// column; all other projection labels are added (and must be new).
fn import<T: Scalar>(
    dst: &mut HRep<T>,
    src: &ExtFormulation<T>,
    shared: &HashMap<String, usize>,
) -> Result<Vec<usize>, EfError> {
    let mut map = Vec::with_capacity(src.hrep.dim());
    for label in src.hrep.coords() {
        let col = if is_aux(label) {
            add_aux(dst)
        } else if let Some(&c) = shared.get(label) {
            c
        } else {
            dst.add_coord(label.clone())?
        };
        map.push(col);
    }
    Ok(map)
}

/// Copies the rows of `src` through `map`. With `lambda`, each row
/// `a y (<=|=) b` becomes `a y - b lambda (<=|=) 0`.
fn copy_rows<T: Scalar>(dst: &mut HRep<T>, src: &HRep<T>, map: &[usize], lambda: Option<usize>) {
    let convert = |r: &Row<T>| {
        let mut coefs: Vec<(usize, T)> = r.coefs.iter().map(|(i, a)| (map[*i], a.clone())).collect();
        let rhs = match lambda {
            Some(l) => {
                coefs.push((l, -r.rhs.clone()));
                T::zero()
            }
            None => r.rhs.clone(),
        };
        Row::new(coefs, rhs, r.class)
    };
    let ineqs: Vec<Row<T>> = src.ineqs.iter().map(convert).collect();
    let eqs: Vec<Row<T>> = src.eqs.iter().map(convert).collect();
    dst.ineqs.extend(ineqs);
    dst.eqs.extend(eqs);
}

fn is_feasible<T: Scalar>(h: &HRep<T>) -> bool {
    lp_max(h, &vec![T::zero(); h.dim()]).status == LpStatus::Optimal
}

/// Disjunctive formulation of the convex hull of the union. A projection
/// label missing from a component is zero on that component. Components
/// must be nonempty polytopes.
pub fn balas_union<T: Scalar>(components: &[&ExtFormulation<T>]) -> Result<ExtFormulation<T>, EfError> {
    if components.is_empty() {
        return Err(EfError::EmptyUnion);
    }
    for (i, c) in components.iter().enumerate() {
        if !is_feasible(&c.hrep) {
            return Err(EfError::EmptyComponent(i));
        }
    }
    let mut order: Vec<String> = Vec::new();
    let mut count: HashMap<String, usize> = HashMap::new();
    for c in components {
        for l in c.proj_labels() {
            let k = count.entry(l.to_string()).or_insert(0);
            if *k == 0 {
                order.push(l.to_string());
            }
            *k += 1;
        }
    }
    let mut h = HRep::new();
    let mut shared_cols: HashMap<String, usize> = HashMap::new();
    for l in &order {
        if count[l] > 1 {
            shared_cols.insert(l.clone(), h.add_coord(l.clone())?);
        }
    }
    let mut links: HashMap<String, Vec<usize>> = HashMap::new();
    let mut lambdas = Vec::with_capacity(components.len());
    for c in components {
        let lambda = add_aux(&mut h);
        lambdas.push(lambda);
        let in_proj: HashSet<usize> = c.proj.iter().copied().collect();
        let mut map = Vec::with_capacity(c.hrep.dim());
        for (i, label) in c.hrep.coords().iter().enumerate() {
            let in_proj = in_proj.contains(&i);
            let col = if in_proj && count[label] == 1 {
                h.add_coord(label.clone())?
            } else {
                let col = add_aux(&mut h);
                if in_proj {
                    links.entry(label.clone()).or_default().push(col);
                }
                col
            };
            map.push(col);
        }
        copy_rows(&mut h, &c.hrep, &map, Some(lambda));
    }
    for l in &order {
        if let Some(&x) = shared_cols.get(l) {
            let coefs = std::iter::once((x, T::one())).chain(links[l].iter().map(|&y| (y, -T::one())));
            h.add_eq(coefs, T::zero(), "balas-link");
        }
    }
    for &l in &lambdas {
        h.add_ineq([(l, -T::one())], T::zero(), "balas-nonneg");
    }
    h.add_eq(lambdas.iter().map(|&l| (l, T::one())), T::one(), "balas-sum");
    let proj = order.iter().map(|l| h.index_of(l).expect("every label was added")).collect();
    Ok(ExtFormulation { hrep: h, proj })
}

/// Checks `sum budget[k].1 * x[budget[k].0] <= bound` on `ef` by LP.
fn check_budget<T: Scalar>(
    ef: &ExtFormulation<T>,
    budget: &[(&str, T)],
    bound: &T,
    side: &'static str,
) -> Result<(), EfError> {
    let mut obj = vec![T::zero(); ef.hrep.dim()];
    for (label, coef) in budget {
        if ef.proj_position(label).is_none() {
            return Err(EfError::MissingLabel(label.to_string()));
        }
        let col = ef.hrep.index_of(label).expect("projection label has a column");
        obj[col] = obj[col].clone() + coef.clone();
    }
    let res = lp_max(&ef.hrep, &obj);
    let value = match res.status {
        LpStatus::Optimal => res.value.expect("optimal results carry a value"),
        LpStatus::Infeasible => return Ok(()),
        LpStatus::Unbounded => {
            return Err(EfError::GlueInvalid { side, value: "unbounded".into(), bound: bound.to_string() })
        }
    };
    if value > *bound {
        return Err(EfError::GlueInvalid { side, value: value.to_string(), bound: bound.to_string() });
    }
    Ok(())
}

/// Conjunction of both systems with the `glue` coordinates identified, after
/// checking `budget <= bound` on each operand.
pub(crate) fn glue_with_budget<T: Scalar>(
    p: &ExtFormulation<T>,
    q: &ExtFormulation<T>,
    glue: &[&str],
    budget: &[(&str, T)],
    bound: T,
) -> Result<ExtFormulation<T>, EfError> {
    check_budget(p, budget, &bound, "left")?;
    check_budget(q, budget, &bound, "right")?;
    let mut h = p.hrep.clone();
    let mut shared = HashMap::new();
    for l in glue {
        for ef in [p, q] {
            if ef.proj_position(l).is_none() {
                return Err(EfError::MissingLabel(l.to_string()));
            }
        }
        shared.insert(l.to_string(), p.hrep.index_of(l).expect("checked above"));
    }
    let clash: Vec<String> = q
        .proj_labels()
        .into_iter()
        .filter(|l| !glue.contains(l) && p.hrep.index_of(l).is_some())
        .map(String::from)
        .collect();
    if !clash.is_empty() {
        return Err(EfError::SharedLabels(clash));
    }
    let map = import(&mut h, q, &shared)?;
    copy_rows(&mut h, &q.hrep, &map, None);
    let mut proj = p.proj.clone();
    proj.extend(q.proj.iter().map(|&i| map[i]).filter(|c| !p.proj.contains(c)));
    Ok(ExtFormulation { hrep: h, proj })
}

/// Glued product over the coordinates in `glue`. Both operands must be 0/1
/// polytopes on which the sum of the glued coordinates is at most 1; that
/// sum is checked by LP.
pub fn glued_product<T: Scalar>(
    p: &ExtFormulation<T>,
    q: &ExtFormulation<T>,
    glue: &[&str],
) -> Result<ExtFormulation<T>, EfError> {
    let budget: Vec<(&str, T)> = glue.iter().map(|l| (*l, T::one())).collect();
    glue_with_budget(p, q, glue, &budget, T::one())
}

/// Rescales rows so every right-hand side is 0 or 1; equalities become
/// pairs of inequalities.
pub fn normalize_hrep<T: Scalar>(h: &HRep<T>) -> Result<HRep<T>, EfError> {
    let mut out = h.clone();
    out.ineqs.clear();
    out.eqs.clear();
    let negated = |r: &Row<T>| Row {
        coefs: r.coefs.iter().map(|(i, a)| (*i, -a.clone())).collect(),
        rhs: -r.rhs.clone(),
        class: r.class,
    };
    let rows = h.ineqs.iter().cloned().chain(h.eqs.iter().flat_map(|r| [r.clone(), negated(r)]));
    for (k, r) in rows.enumerate() {
        if r.rhs.is_negative() {
            return Err(EfError::NotOriginFeasible(k));
        }
        if r.rhs.is_zero() || r.rhs.is_one() {
            out.ineqs.push(r);
        } else {
            let s = r.rhs.clone();
            out.ineqs.push(Row {
                coefs: r.coefs.iter().map(|(i, a)| (*i, a.clone() / s.clone())).collect(),
                rhs: T::one(),
                class: r.class,
            });
        }
    }
    Ok(out)
}

fn is_normalized<T: Scalar>(h: &HRep<T>) -> bool {
    h.eqs.is_empty() && h.ineqs.iter().all(|r| r.rhs.is_zero() || r.rhs.is_one())
}

/// Subdirect sum of two systems in normal form: homogeneous rows of both,
/// plus `b x + c y <= 1` for every pair of rhs-1 rows `b`, `c`.
pub fn subdirect_sum<T: Scalar>(h1: &HRep<T>, h2: &HRep<T>) -> Result<HRep<T>, EfError> {
    if !is_normalized(h1) || !is_normalized(h2) {
        return Err(EfError::NotNormalized);
    }
    let mut out: HRep<T> = HRep::with_coords(h1.coords().iter().chain(h2.coords()).cloned())?;
    let off = h1.dim();
    let shift = |r: &Row<T>| -> Vec<(usize, T)> { r.coefs.iter().map(|(i, a)| (i + off, a.clone())).collect() };
    for r in h1.ineqs.iter().filter(|r| r.rhs.is_zero()) {
        out.ineqs.push(r.clone());
    }
    for r in h2.ineqs.iter().filter(|r| r.rhs.is_zero()) {
        out.add_ineq(shift(r), T::zero(), r.class);
    }
    for b in h1.ineqs.iter().filter(|r| r.rhs.is_one()) {
        for c in h2.ineqs.iter().filter(|r| r.rhs.is_one()) {
            out.add_ineq(b.coefs.iter().cloned().chain(shift(c)), T::one(), "subdirect-pair");
        }
    }
    Ok(out)
}
