//! Checks an extended formulation against the brute-force bond oracle.
//!
//! Report lines read `PASS <check> <seed> <detail>` or
//! `FAIL <check> <seed> <detail>`. Checks: `labels` (projection order),
//! `lift` (every bond point and the origin lift), `opt` (random objectives
//! agree with the oracle, seed field `<seed>:<trial>`) and `tight` (facets of
//! the bond points are valid on the formulation, when small enough).

use super::facets::{facet_enumerate, MAX_DIM, MAX_POINTS};
use super::simplex::{lp_max, LpStatus};
use crate::graph::Graph;
use crate::polytope::{bond_points, AbondSpec, ExtFormulation};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Largest projection for which the `tight` check runs.
pub const TIGHT_MAX_COORDS: usize = 8;

/// Pins the projection coordinates to `point` and tests feasibility.
pub fn lift_feasible<T: Scalar>(ef: &ExtFormulation<T>, point: &[T]) -> bool {
    assert_eq!(point.len(), ef.proj_dim(), "point length must match the projection");
    let mut h = ef.hrep.clone();
    for (&col, v) in ef.proj.iter().zip(point) {
        h.add_eq([(col, T::one())], v.clone(), "pin");
    }
    lp_max(&h, &vec![T::zero(); h.dim()]).status != LpStatus::Infeasible
}

/// Random integer objective in `[-50, 50]` for trial `t`.
pub fn trial_objective<T: Scalar>(seed: u64, trial: u64, len: usize) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..len).map(|_| T::from_int(rng.gen_range(-50..=50))).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<String>,
    pub failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn pass(&mut self, check: &str, seed: &str, detail: impl fmt::Display) {
        self.lines.push(format!("PASS {check} {seed} {detail}"));
    }

    fn fail(&mut self, check: &str, seed: &str, detail: impl fmt::Display) {
        self.failures += 1;
        self.lines.push(format!("FAIL {check} {seed} {detail}"));
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn show<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Verifies a bond polytope formulation of `g` (edge coordinates only).
pub fn verify_ef<T: Scalar>(g: &Graph<T>, ef: &ExtFormulation<T>, trials: u64, seed: u64) -> VerifyReport {
    let mut plain = g.clone();
    plain.clear_non_edges();
    verify_abond_ef(&AbondSpec::from_graph(plain), ef, trials, seed)
}

/// Verifies a formulation of the augmented bond polytope of `spec`.
pub fn verify_abond_ef<T: Scalar>(spec: &AbondSpec<T>, ef: &ExtFormulation<T>, trials: u64, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::default();
    let s = seed.to_string();
    let labels = spec.labels();
    if ef.proj_labels() != labels {
        report.fail("labels", &s, format!("expected {:?} got {:?}", labels, ef.proj_labels()));
        return report;
    }
    report.pass("labels", &s, format!("{} coordinates", labels.len()));
    let points: Vec<Vec<T>> = match bond_points(spec) {
        Ok(p) => p,
        Err(e) => {
            report.fail("oracle", &s, e);
            return report;
        }
    };

    let before = report.failures;
    for p in &points {
        if !lift_feasible(ef, p) {
            report.fail("lift", &s, format!("point {}", show(p)));
        }
    }
    if report.failures == before {
        report.pass("lift", &s, format!("{} points", points.len()));
    }

    let before = report.failures;
    for t in 0..trials {
        let c: Vec<T> = trial_objective(seed, t, labels.len());
        let want = points.iter().map(|p| dot(&c, p)).fold(T::zero(), |a, b| if b > a { b } else { a });
        let res = lp_max(&ef.hrep, &ef.lift_objective(&c));
        let ts = format!("{seed}:{t}");
        match res.status {
            LpStatus::Optimal if res.value.as_ref() == Some(&want) => {}
            LpStatus::Optimal => {
                let got = res.value.map(|v| v.to_string()).unwrap_or_default();
                report.fail("opt", &ts, format!("objective {} lp {} oracle {}", show(&c), got, want))
            }
            st => report.fail("opt", &ts, format!("objective {} lp {:?} oracle {}", show(&c), st, want)),
        }
    }
    if report.failures == before {
        report.pass("opt", &s, format!("{trials} trials"));
    }

    if labels.len() <= TIGHT_MAX_COORDS.min(MAX_DIM) && points.len() <= MAX_POINTS {
        let before = report.failures;
        match facet_enumerate(&points) {
            Ok(fl) => {
                let mut checks: Vec<(Vec<T>, T)> = fl.facets.iter().map(|f| (f.normal.clone(), f.rhs.clone())).collect();
                for e in &fl.equalities {
                    checks.push((e.normal.clone(), e.rhs.clone()));
                    checks.push((e.normal.iter().map(|a| -a.clone()).collect(), -e.rhs.clone()));
                }
                for (a, b) in &checks {
                    let res = lp_max(&ef.hrep, &ef.lift_objective(a));
                    if res.status != LpStatus::Optimal || res.value.as_ref().is_some_and(|v| v > b) {
                        report.fail("tight", &s, format!("inequality {} <= {} violated", show(a), b));
                    }
                }
                if report.failures == before {
                    report.pass("tight", &s, format!("{} facets {} equalities", fl.facets.len(), fl.equalities.len()));
                }
            }
            Err(e) => report.fail("tight", &s, e),
        }
    }
    report
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_unit_wheel};
    use crate::polytope::bond_ef;
    use crate::Rational;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn k3_lifts() {
        let g = make_complete::<Rational>(3);
        let ef = bond_ef(&g).unwrap();
        assert!(lift_feasible(&ef, &r(&[1, 1, 0])));
        assert!(lift_feasible(&ef, &r(&[0, 0, 0])));
        assert!(!lift_feasible(&ef, &r(&[1, 0, 0])));
    }

    #[test]
    fn k2_and_w4_pass() {
        let g = make_complete::<Rational>(2);
        let rep = verify_ef(&g, &bond_ef(&g).unwrap(), 10, 3);
        assert!(rep.passed(), "{rep}");
        let g = make_unit_wheel::<Rational>(4).unwrap();
        let rep = verify_ef(&g, &bond_ef(&g).unwrap(), 20, 7);
        assert!(rep.passed(), "{rep}");
        assert!(rep.lines.iter().any(|l| l.starts_with("PASS tight")));
    }

    #[test]
    fn dropped_row_is_flagged() {
        let g = make_unit_wheel::<Rational>(4).unwrap();
        let mut ef = bond_ef(&g).unwrap();
        ef.hrep.eqs.retain(|row| row.class != "flow-source");
        let rep = verify_ef(&g, &ef, 20, 7);
        assert!(!rep.passed());
        assert!(rep.lines.iter().any(|l| l.starts_with("FAIL opt 7:")), "{rep}");
    }

    #[test]
    fn objectives_are_reproducible() {
        let a: Vec<Rational> = trial_objective(5, 2, 6);
        assert_eq!(a, trial_objective(5, 2, 6));
        assert_ne!(a, trial_objective(5, 3, 6));
        let lim = Rational::integer(50);
        assert!(a.iter().all(|x| *x <= lim && *x >= -lim.clone()));
    }
}
