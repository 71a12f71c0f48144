//! Extended formulations of (augmented) bond polytopes.
//!
//! An [`ExtFormulation`] is an inequality system over labelled coordinates
//! together with the subset that forms the projection. Projection labels are
//! `e:u-v` for edges and `x:u-v` for augmented pairs; every other coordinate
//! is auxiliary and labelled `aux:<index>` after its own column index, which
//! keeps labels unique when systems are combined.

mod compose;
mod io;
mod ops;
mod spec;
mod wheel;

pub use compose::{bond_ef, onesum_ef, twosum_ef, twosum_minus_ef, MinusOperands};
pub use io::{parse_ef, render_ef};
pub use ops::{balas_union, glued_product, normalize_hrep, point_hull, subdirect_sum};
pub use spec::{aug_label, bond_points, edge_label, AbondSpec};
pub use wheel::{full_wheel_ef, placement_rows, wheel_abond_ef, EXCEPTIONAL_ROW, POLYTOPE_1, POLYTOPE_2_DERIVED};

use crate::decompose::DecomposeError;
use crate::hrep::{HRep, HRepError};
use crate::oracle::OracleError;
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EfError {
    #[error(transparent)]
    HRep(#[from] HRepError),
    #[error("union needs at least one component")]
    EmptyUnion,
    #[error("component {0} of the union is empty")]
    EmptyComponent(usize),
    #[error("gluing precondition fails on the {side} operand: glued sum reaches {value}, bound {bound}")]
    GlueInvalid { side: &'static str, value: String, bound: String },
    #[error("row {0} has negative right-hand side; the origin is infeasible")]
    NotOriginFeasible(usize),
    #[error("system is not in normal form (rhs must be 0 or 1, no equalities)")]
    NotNormalized,
    #[error("edges and augmented pairs do not form a wheel")]
    NotAWheel,
    #[error("graph is not connected")]
    Disconnected,
    #[error("augmented pair {0} is also an edge or names a missing vertex")]
    BadAugmented(String),
    #[error("operands share projection coordinates {0:?}")]
    SharedLabels(Vec<String>),
    #[error("missing projection coordinate `{0}`")]
    MissingLabel(String),
    #[error("operand case does not match connectivity: {0}")]
    CaseMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtFormulation<T> {
    pub hrep: HRep<T>,
    /// Column indices of the projection coordinates, in projection order.
    pub proj: Vec<usize>,
}

pub(crate) fn is_aux(label: &str) -> bool {
    label.starts_with("aux:")
}

pub(crate) fn add_aux<T: Scalar>(h: &mut HRep<T>) -> usize {
    let i = h.dim();
    h.add_coord(format!("aux:{i}")).expect("aux labels follow their column index")
}

impl<T: Scalar> ExtFormulation<T> {
    pub fn proj_labels(&self) -> Vec<&str> {
        self.proj.iter().map(|&i| self.hrep.coords()[i].as_str()).collect()
    }

    pub fn proj_dim(&self) -> usize {
        self.proj.len()
    }

    pub fn lifted_dim(&self) -> usize {
        self.hrep.dim()
    }

    pub fn row_count(&self) -> usize {
        self.hrep.row_count()
    }

    /// Position of `label` within the projection.
    pub fn proj_position(&self, label: &str) -> Option<usize> {
        let col = self.hrep.index_of(label)?;
        self.proj.iter().position(|&i| i == col)
    }

    /// Turns a projection coordinate into an auxiliary one.
    pub fn demote(&mut self, label: &str) -> Result<(), EfError> {
        let pos = self.proj_position(label).ok_or_else(|| EfError::MissingLabel(label.to_string()))?;
        let col = self.proj.remove(pos);
        self.hrep.rename_coord(label, format!("aux:{col}"))?;
        Ok(())
    }

    pub fn rename(&mut self, from: &str, to: &str) -> Result<(), EfError> {
        if self.proj_position(from).is_none() {
            return Err(EfError::MissingLabel(from.to_string()));
        }
        self.hrep.rename_coord(from, to)?;
        Ok(())
    }

    /// Adds the equality `label = value`.
    pub fn fix(&mut self, label: &str, value: T, class: &'static str) -> Result<(), EfError> {
        let col = self.hrep.index_of(label).ok_or_else(|| EfError::MissingLabel(label.to_string()))?;
        self.hrep.add_eq([(col, T::one())], value, class);
        Ok(())
    }

    /// Puts the projection in the order of `labels`, which must be a
    /// permutation of the current projection labels.
    pub fn reorder_proj<S: AsRef<str>>(&mut self, labels: &[S]) -> Result<(), EfError> {
        let mut proj = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            self.proj_position(l).ok_or_else(|| EfError::MissingLabel(l.to_string()))?;
            proj.push(self.hrep.index_of(l).expect("checked above"));
        }
        if proj.len() != self.proj.len() {
            let extra = self
                .proj_labels()
                .into_iter()
                .filter(|l| !labels.iter().any(|m| m.as_ref() == *l))
                .map(String::from)
                .collect();
            return Err(EfError::SharedLabels(extra));
        }
        self.proj = proj;
        Ok(())
    }

    /// Copy without the rows tagged `class`.
    pub fn without_class(&self, class: &str) -> Self {
        ExtFormulation { hrep: self.hrep.without_class(class), proj: self.proj.clone() }
    }

    /// Full-length objective that is `c` on the projection and zero elsewhere.
    pub fn lift_objective(&self, c: &[T]) -> Vec<T> {
        assert_eq!(c.len(), self.proj.len(), "objective length must match the projection");
        let mut full = vec![T::zero(); self.hrep.dim()];
        for (&i, v) in self.proj.iter().zip(c) {
            full[i] = v.clone();
        }
        full
    }
}
