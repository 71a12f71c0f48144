//! Maximum-weight bonds and bond polytope extended formulations for
//! (K5 - e)-minor-free graphs.
//!
//! The library is generic over the scalar type (see [`Scalar`]); the aliases
//! at the crate root fix it to the exact [`Rational`] used by the CLI and the
//! verification harness.

pub mod decompose;
pub mod gen;
pub mod graph;
pub mod hrep;
pub mod lp;
pub mod maxbond;
pub mod oracle;
pub mod polytope;
pub mod scalar;

pub use scalar::{Rational, Scalar};

pub type Graph = graph::Graph<Rational>;
pub type HRep = hrep::HRep<Rational>;
pub type AbondSpec = polytope::AbondSpec<Rational>;
pub type ExtFormulation = polytope::ExtFormulation<Rational>;
pub type LpResult = lp::LpResult<Rational>;
pub type FacetList = lp::FacetList<Rational>;
pub type Bond = oracle::Bond<Rational>;
pub type MaxBondResult = maxbond::MaxBondResult<Rational>;
