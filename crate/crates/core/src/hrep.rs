//! Sparse inequality systems over labelled coordinates.

use crate::scalar::Scalar;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HRepError {
    #[error("duplicate coordinate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown coordinate label `{0}`")]
    UnknownLabel(String),
}

/// One row `sum coefs[k].1 * x[coefs[k].0] (<= or =) rhs`. Coefficients are
/// sorted by column and nonzero. `class` tags the construction step that
/// produced the row.
#[derive(Clone, PartialEq)]
pub struct Row<T> {
    pub coefs: Vec<(usize, T)>,
    pub rhs: T,
    pub class: &'static str,
}

impl<T: Scalar> Row<T> {
    pub fn new(coefs: impl IntoIterator<Item = (usize, T)>, rhs: T, class: &'static str) -> Self {
        let mut c: Vec<(usize, T)> = Vec::new();
        let mut raw: Vec<(usize, T)> = coefs.into_iter().collect();
        raw.sort_by_key(|(i, _)| *i);
        for (i, v) in raw {
            match c.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.clone() + v,
                _ => c.push((i, v)),
            }
        }
        c.retain(|(_, v)| !v.is_zero());
        Row { coefs: c, rhs, class }
    }

    pub fn lhs(&self, x: &[T]) -> T {
        self.coefs.iter().fold(T::zero(), |s, (i, a)| s + a.clone() * x[*i].clone())
    }

    pub fn dense(&self, dim: usize) -> Vec<T> {
        let mut v = vec![T::zero(); dim];
        for (i, a) in &self.coefs {
            v[*i] = a.clone();
        }
        v
    }
}

impl<T: fmt::Debug> fmt::Debug for Row<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:?} | {:?}", self.class, self.coefs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HRep<T> {
    coords: Vec<String>,
    index: HashMap<String, usize>,
    pub ineqs: Vec<Row<T>>,
    pub eqs: Vec<Row<T>>,
}

impl<T: Scalar> Default for HRep<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> HRep<T> {
    pub fn new() -> Self {
        HRep { coords: Vec::new(), index: HashMap::new(), ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn with_coords<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, HRepError> {
        let mut h = Self::new();
        for l in labels {
            h.add_coord(l)?;
        }
        Ok(h)
    }

    pub fn add_coord(&mut self, label: impl Into<String>) -> Result<usize, HRepError> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(HRepError::DuplicateLabel(label));
        }
        let i = self.coords.len();
        self.index.insert(label.clone(), i);
        self.coords.push(label);
        Ok(i)
    }

    pub fn rename_coord(&mut self, from: &str, to: impl Into<String>) -> Result<(), HRepError> {
        let to = to.into();
        if self.index.contains_key(&to) {
            return Err(HRepError::DuplicateLabel(to));
        }
        let i = self.index.remove(from).ok_or_else(|| HRepError::UnknownLabel(from.to_string()))?;
        self.coords[i] = to.clone();
        self.index.insert(to, i);
        Ok(())
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn add_ineq(&mut self, coefs: impl IntoIterator<Item = (usize, T)>, rhs: T, class: &'static str) {
        self.ineqs.push(Row::new(coefs, rhs, class));
    }

    pub fn add_eq(&mut self, coefs: impl IntoIterator<Item = (usize, T)>, rhs: T, class: &'static str) {
        self.eqs.push(Row::new(coefs, rhs, class));
    }

    pub fn row_count(&self) -> usize {
        self.ineqs.len() + self.eqs.len()
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim()
            && self.ineqs.iter().all(|r| r.lhs(x) <= r.rhs)
            && self.eqs.iter().all(|r| r.lhs(x) == r.rhs)
    }

    /// Appends the coordinates and rows of `other`, shifting its columns.
    /// Returns the column offset.
    pub fn append(&mut self, other: &HRep<T>) -> Result<usize, HRepError> {
        let off = self.dim();
        for l in &other.coords {
            self.add_coord(l.clone())?;
        }
        let shift = |r: &Row<T>| Row {
            coefs: r.coefs.iter().map(|(i, a)| (i + off, a.clone())).collect(),
            rhs: r.rhs.clone(),
            class: r.class,
        };
        self.ineqs.extend(other.ineqs.iter().map(shift));
        self.eqs.extend(other.eqs.iter().map(shift));
        Ok(off)
    }

    pub fn classes(&self) -> Vec<&'static str> {
        let mut v: Vec<&'static str> = self.ineqs.iter().chain(&self.eqs).map(|r| r.class).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Copy without the rows tagged `class`.
    pub fn without_class(&self, class: &str) -> HRep<T> {
        let mut h = self.clone();
        h.ineqs.retain(|r| r.class != class);
        h.eqs.retain(|r| r.class != class);
        h
    }
}
