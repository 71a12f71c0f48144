//! Two-phase primal simplex on a sparse tableau over an exact scalar.
//!
//! Columns: structural variables (free variables split into a positive and
//! a negative part), one slack per inequality, one artificial per row that
//! has no natural starting basic variable. The entering column is chosen
//! by the most negative reduced cost; after a run of degenerate pivots the
//! solver switches to Bland's rule until the objective moves again, which
//! rules out cycling.

use crate::hrep::HRep;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Dual multipliers: one per inequality (nonnegative) and per equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual<T> {
    pub ineq: Vec<T>,
    pub eq: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpResult<T> {
    pub status: LpStatus,
    pub value: Option<T>,
    pub point: Option<Vec<T>>,
    pub dual: Option<Dual<T>>,
}

impl<T> LpResult<T> {
    fn status_only(status: LpStatus) -> Self {
        LpResult { status, value: None, point: None, dual: None }
    }
}

const DEGENERATE_RUN: usize = 30;

type SparseRow<T> = Vec<(usize, T)>;

struct Tableau<T> {
    rows: Vec<SparseRow<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    d: Vec<T>,
    z: T,
    enterable: Vec<bool>,
}

fn entry<T: Scalar>(row: &SparseRow<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(j, _)| *j).ok().map(|k| &row[k].1)
}

/// `a - f * b` for sparse rows.
fn axpy<T: Scalar>(a: &SparseRow<T>, f: &T, b: &SparseRow<T>) -> SparseRow<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f.clone() * b[j].1.clone())));
            j += 1;
        } else {
            let v = a[i].1.clone() - f.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = entry(&self.rows[r], c).expect("pivot on a nonzero entry").clone();
        if !p.is_one() {
            for (_, a) in self.rows[r].iter_mut() {
                *a = a.clone() / p.clone();
            }
            self.rhs[r] = self.rhs[r].clone() / p;
        }
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            if let Some(f) = entry(&self.rows[i], c).cloned() {
                self.rows[i] = axpy(&self.rows[i], &f, &prow);
                self.rhs[i] = self.rhs[i].clone() - f * prhs.clone();
            }
        }
        let f = self.d[c].clone();
        if !f.is_zero() {
            for (j, a) in &prow {
                self.d[*j] = self.d[*j].clone() - f.clone() * a.clone();
            }
            self.z = self.z.clone() - f * prhs;
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Runs to optimality; returns false when unbounded.
    fn run(&mut self) -> bool {
        let mut degenerate = 0;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let mut enter: Option<usize> = None;
            for (j, dj) in self.d.iter().enumerate() {
                if !self.enterable[j] || !dj.is_negative() {
                    continue;
                }
                if bland {
                    enter = Some(j);
                    break;
                }
                if enter.is_none_or(|e| *dj < self.d[e]) {
                    enter = Some(j);
                }
            }
            let Some(c) = enter else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let Some(a) = entry(row, c) else { continue };
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return false;
            };
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, c);
        }
    }
}

/// Maximizes `objective . x` over the polyhedron `h`.
pub fn lp_max<T: Scalar>(h: &HRep<T>, objective: &[T]) -> LpResult<T> {
    assert_eq!(objective.len(), h.dim(), "objective length must match the coordinate count");
    let n = h.dim();

    // rows of the form -a x_j <= 0 become sign bounds
    let mut bound_row: Vec<Option<usize>> = vec![None; n];
    let mut is_bound = vec![false; h.ineqs.len()];
    for (i, r) in h.ineqs.iter().enumerate() {
        if let [(j, a)] = r.coefs.as_slice() {
            if a.is_negative() && r.rhs.is_zero() && bound_row[*j].is_none() {
                bound_row[*j] = Some(i);
                is_bound[i] = true;
            }
        }
    }
    // structural columns: (var, sign)
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut ns = 0;
    for b in &bound_row {
        if b.is_some() {
            col_of.push((ns, None));
            ns += 1;
        } else {
            col_of.push((ns, Some(ns + 1)));
            ns += 2;
        }
    }
    let ineq_rows: Vec<usize> = (0..h.ineqs.len()).filter(|&i| !is_bound[i]).collect();
    let m_ineq = ineq_rows.len();
    let m = m_ineq + h.eqs.len();

    let mut rows: Vec<SparseRow<T>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut sign = Vec::with_capacity(m);
    for (k, r) in ineq_rows.iter().map(|&i| &h.ineqs[i]).chain(&h.eqs).enumerate() {
        let flip = r.rhs.is_negative();
        let s = if flip { -T::one() } else { T::one() };
        let mut row: SparseRow<T> = Vec::new();
        for (j, a) in &r.coefs {
            let a = a.clone() * s.clone();
            let (pos, neg) = col_of[*j];
            row.push((pos, a.clone()));
            if let Some(neg) = neg {
                row.push((neg, -a));
            }
        }
        if k < m_ineq {
            row.push((ns + k, s.clone()));
        }
        rows.push(row);
        rhs.push(r.rhs.clone() * s.clone());
        sign.push(s);
    }
    let slack0 = ns;
    let art0 = ns + m_ineq;
    let mut art_of: Vec<Option<usize>> = vec![None; m];
    let mut basis = vec![0; m];
    let mut next = art0;
    for k in 0..m {
        if k < m_ineq && sign[k].is_positive() {
            basis[k] = slack0 + k;
        } else {
            rows[k].push((next, T::one()));
            art_of[k] = Some(next);
            basis[k] = next;
            next += 1;
        }
    }
    let ncols = next;

    // phase 1: maximize minus the sum of artificials
    let mut d = vec![T::zero(); ncols];
    for x in d.iter_mut().skip(art0) {
        *x = T::one();
    }
    let mut t = Tableau { rows, rhs, basis, d, z: T::zero(), enterable: vec![true; ncols] };
    for k in 0..m {
        if art_of[k].is_some() {
            let row = t.rows[k].clone();
            for (j, a) in &row {
                t.d[*j] = t.d[*j].clone() - a.clone();
            }
            t.z = t.z.clone() - t.rhs[k].clone();
        }
    }
    if art0 < ncols {
        t.run();
        if t.z.is_negative() {
            return LpResult::status_only(LpStatus::Infeasible);
        }
        for k in 0..m {
            if t.basis[k] < art0 {
                continue;
            }
            if let Some(&(c, _)) = t.rows[k].iter().find(|(j, _)| *j < art0) {
                t.pivot(k, c);
            }
        }
    }

    // phase 2
    for j in 0..ncols {
        t.enterable[j] = j < art0;
        t.d[j] = T::zero();
    }
    for (v, c) in objective.iter().enumerate() {
        let (pos, neg) = col_of[v];
        t.d[pos] = -c.clone();
        if let Some(neg) = neg {
            t.d[neg] = c.clone();
        }
    }
    t.z = T::zero();
    for k in 0..m {
        let f = t.d[t.basis[k]].clone();
        if !f.is_zero() {
            let row = t.rows[k].clone();
            for (j, a) in &row {
                t.d[*j] = t.d[*j].clone() - f.clone() * a.clone();
            }
            t.z = t.z.clone() - f * t.rhs[k].clone();
        }
    }
    if !t.run() {
        return LpResult::status_only(LpStatus::Unbounded);
    }

    let mut colval = vec![T::zero(); ncols];
    for k in 0..m {
        colval[t.basis[k]] = t.rhs[k].clone();
    }
    let point: Vec<T> = col_of
        .iter()
        .map(|&(pos, neg)| match neg {
            Some(neg) => colval[pos].clone() - colval[neg].clone(),
            None => colval[pos].clone(),
        })
        .collect();
    let mut ineq_dual = vec![T::zero(); h.ineqs.len()];
    for (k, &i) in ineq_rows.iter().enumerate() {
        ineq_dual[i] = t.d[slack0 + k].clone();
    }
    for (v, b) in bound_row.iter().enumerate() {
        if let Some(i) = *b {
            let a = -h.ineqs[i].coefs[0].1.clone();
            ineq_dual[i] = t.d[col_of[v].0].clone() / a;
        }
    }
    let eq_dual: Vec<T> = (0..h.eqs.len())
        .map(|e| {
            let k = m_ineq + e;
            t.d[art_of[k].expect("equalities carry artificials")].clone() * sign[k].clone()
        })
        .collect();
    LpResult {
        status: LpStatus::Optimal,
        value: Some(t.z),
        point: Some(point),
        dual: Some(Dual { ineq: ineq_dual, eq: eq_dual }),
    }
}

/// Checks that the dual multipliers prove optimality of the reported value:
/// `y >= 0` on inequalities, `A^T y + E^T z = c`, and `b.y + f.z = value`.
pub fn certificate_holds<T: Scalar>(h: &HRep<T>, objective: &[T], res: &LpResult<T>) -> bool {
    let (Some(value), Some(dual)) = (&res.value, &res.dual) else {
        return false;
    };
    if dual.ineq.iter().any(|y| y.is_negative()) {
        return false;
    }
    let mut combo = vec![T::zero(); h.dim()];
    let mut bound = T::zero();
    for (r, y) in h.ineqs.iter().zip(&dual.ineq).chain(h.eqs.iter().zip(&dual.eq)) {
        if y.is_zero() {
            continue;
        }
        for (j, a) in &r.coefs {
            combo[*j] = combo[*j].clone() + a.clone() * y.clone();
        }
        bound = bound + r.rhs.clone() * y.clone();
    }
    combo.as_slice() == objective && bound == *value
}
