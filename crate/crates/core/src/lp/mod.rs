//! Exact linear programming and the checks built on it.

mod facets;
mod simplex;
mod verify;

pub use facets::{facet_enumerate, Facet, FacetError, FacetList, MAX_DIM, MAX_POINTS};
pub use simplex::{certificate_holds, lp_max, Dual, LpResult, LpStatus};
pub use verify::{lift_feasible, trial_objective, verify_abond_ef, verify_ef, VerifyReport, TIGHT_MAX_COORDS};
