//! Facets of the convex hull of a small point set.
//!
//! The affine hull is computed first by exact row reduction; the points are
//! then expressed in the pivot coordinates of the hull, where the polytope is
//! full-dimensional, and every hyperplane through an affinely independent
//! subset of points is tested for validity. Only meant for a few dozen
//! points in low dimension.

use crate::scalar::Scalar;
use std::collections::BTreeSet;
use thiserror::Error;

pub const MAX_POINTS: usize = 24;
pub const MAX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FacetError {
    #[error("facet enumeration needs at least one point")]
    NoPoints,
    #[error("points have different lengths")]
    Ragged,
    #[error("{points} points in dimension {dim} exceed the limit of {MAX_POINTS} points and dimension {MAX_DIM}")]
    Guard { points: usize, dim: usize },
}

/// Inequality `normal . x <= rhs`, or an equality when listed as one.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet<T> {
    pub normal: Vec<T>,
    pub rhs: T,
}

impl<T: Scalar> Facet<T> {
    pub fn value(&self, x: &[T]) -> T {
        self.normal.iter().zip(x).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Scales to rhs 1 when positive, otherwise to a leading coefficient of
    /// absolute value 1.
    fn normalized(mut self) -> Self {
        let s = if self.rhs.is_positive() {
            self.rhs.clone()
        } else if self.rhs.is_negative() {
            -self.rhs.clone()
        } else {
            self.normal.iter().find(|a| !a.is_zero()).map(|a| a.abs()).unwrap_or_else(T::one)
        };
        for a in &mut self.normal {
            *a = a.clone() / s.clone();
        }
        self.rhs = self.rhs.clone() / s;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FacetList<T> {
    pub facets: Vec<Facet<T>>,
    /// Affine dimension of the hull.
    pub dim: usize,
    /// Equalities describing the affine hull.
    pub equalities: Vec<Facet<T>>,
    /// True when the origin lies in the hull; rhs values are then 0 or 1.
    pub origin_feasible: bool,
}

impl<T: Scalar> FacetList<T> {
    pub fn count_rhs(&self, rhs: &T) -> usize {
        self.facets.iter().filter(|f| &f.rhs == rhs).count()
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.equalities.iter().all(|e| e.value(x) == e.rhs) && self.facets.iter().all(|f| f.value(x) <= f.rhs)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<T: Scalar>(m: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in &mut m[r] {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let v = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{a : rows . a = 0}`.
fn null_space<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

pub fn facet_enumerate<T: Scalar>(points: &[Vec<T>]) -> Result<FacetList<T>, FacetError> {
    let Some(first) = points.first() else {
        return Err(FacetError::NoPoints);
    };
    let d = first.len();
    if points.iter().any(|p| p.len() != d) {
        return Err(FacetError::Ragged);
    }
    if points.len() > MAX_POINTS || d > MAX_DIM {
        return Err(FacetError::Guard { points: points.len(), dim: d });
    }

    let diffs: Vec<Vec<T>> = points[1..].iter().map(|p| sub(p, first)).collect();
    let equalities: Vec<Facet<T>> = null_space(&diffs, d)
        .into_iter()
        .map(|a| {
            let rhs = dot(&a, first);
            Facet { normal: a, rhs }.normalized()
        })
        .collect();
    let mut reduced = diffs.clone();
    let pivots = rref(&mut reduced, d);
    let k = pivots.len();
    let local: Vec<Vec<T>> = points.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();

    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut facets = Vec::new();
    if k > 0 {
        for_each_subset(points.len(), k, &mut |idx| {
            let base = &local[idx[0]];
            let span: Vec<Vec<T>> = idx[1..].iter().map(|&i| sub(&local[i], base)).collect();
            let normals = null_space(&span, k);
            let [a] = &normals[..] else {
                return;
            };
            let b = dot(a, base);
            let (mut above, mut below) = (false, false);
            for q in &local {
                let v = dot(a, q);
                above |= v > b;
                below |= v < b;
            }
            if above && below {
                return;
            }
            let sign = if above { -T::one() } else { T::one() };
            let mut normal = vec![T::zero(); d];
            for (j, &c) in pivots.iter().enumerate() {
                normal[c] = a[j].clone() * sign.clone();
            }
            let f = Facet { normal, rhs: b * sign }.normalized();
            let key = format!("{:?} {}", f.normal, f.rhs);
            if seen.insert(key) {
                facets.push(f);
            }
        });
    }
    let origin_feasible =
        equalities.iter().all(|e| e.rhs.is_zero()) && facets.iter().all(|f| !f.rhs.is_negative());
    Ok(FacetList { facets, dim: k, equalities, origin_feasible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&x| Rational::integer(x)).collect()).collect()
    }

    #[test]
    fn unit_square() {
        let f = facet_enumerate(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!((f.facets.len(), f.dim), (4, 2));
        assert!(f.origin_feasible);
        assert_eq!(f.count_rhs(&Rational::integer(1)), 2);
        assert_eq!(f.count_rhs(&Rational::integer(0)), 2);
    }

    #[test]
    fn simplex_has_one_equality() {
        let f = facet_enumerate(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!((f.facets.len(), f.equalities.len(), f.dim), (3, 1, 2));
        assert_eq!(f.equalities[0].rhs, Rational::integer(1));
        assert!(!f.origin_feasible);
        assert!(!f.contains(&vec![Rational::integer(0); 3]));
    }

    #[test]
    fn interior_points_are_ignored() {
        let f = facet_enumerate(&pts(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 2]])).unwrap();
        assert_eq!(f.facets.len(), 3);
    }

    #[test]
    fn degenerate_inputs() {
        let f = facet_enumerate(&pts(&[&[2, 3]])).unwrap();
        assert_eq!((f.facets.len(), f.equalities.len(), f.dim), (0, 2, 0));
        let seg = facet_enumerate(&pts(&[&[0, 0], &[2, 2]])).unwrap();
        assert_eq!((seg.facets.len(), seg.equalities.len()), (2, 1));
        assert!(matches!(facet_enumerate::<Rational>(&[]), Err(FacetError::NoPoints)));
        let many = vec![vec![Rational::integer(0)]; MAX_POINTS + 1];
        assert!(matches!(facet_enumerate(&many), Err(FacetError::Guard { .. })));
    }

    #[test]
    fn cube_facets_are_consistent_with_points() {
        let mut v = Vec::new();
        for m in 0..8i64 {
            v.push(vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]);
        }
        let p: Vec<Vec<Rational>> = v.iter().map(|q| q.iter().map(|&x| Rational::integer(x)).collect()).collect();
        let f = facet_enumerate(&p).unwrap();
        assert_eq!(f.facets.len(), 6);
        for facet in &f.facets {
            assert!(p.iter().all(|q| facet.value(q) <= facet.rhs));
            assert_eq!(p.iter().filter(|q| facet.value(q) == facet.rhs).count(), 4);
        }
    }
}
