//! Extended formulations of generated graphs against the bond oracle.

use bondpoly::gen::{generate, GenConfig};
use bondpoly::graph::{make_complete, make_unit_wheel, Pair};
use bondpoly::lp::{facet_enumerate, lift_feasible, lp_max, verify_abond_ef, verify_ef, LpStatus};
use bondpoly::polytope::{bond_ef, bond_points, parse_ef, render_ef, wheel_abond_ef};
use bondpoly::{AbondSpec, ExtFormulation, Rational};

#[test]
fn generated_graphs_verify() {
    let cfg = GenConfig { max_vertices: 10, pieces: 3, ..GenConfig::default() };
    for seed in 0..25 {
        let g = generate::<Rational>(seed, &cfg).graph;
        let ef = bond_ef(&g).unwrap();
        let rep = verify_ef(&g, &ef, 8, seed);
        assert!(rep.passed(), "seed {seed}\n{rep}");
    }
}

#[test]
fn file_round_trip_keeps_the_polytope() {
    let g = make_unit_wheel::<Rational>(5).unwrap();
    let ef = bond_ef(&g).unwrap();
    let back: ExtFormulation = parse_ef(&render_ef(&ef)).unwrap();
    let rep = verify_ef(&g, &back, 10, 1);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn augmented_wheel_tracks_missing_spokes() {
    let mut g = make_unit_wheel::<Rational>(5).unwrap();
    g.remove_edge(0, 5);
    g.remove_edge(3, 4);
    let spec = AbondSpec::new(g, [Pair::new(0, 5), Pair::new(3, 4)]).unwrap();
    let ef = wheel_abond_ef(&spec).unwrap();
    let rep = verify_abond_ef(&spec, &ef, 20, 11);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn k4_projection_is_the_hull_of_bond_points() {
    let g = make_complete::<Rational>(4);
    let ef = bond_ef(&g).unwrap();
    let points = bond_points(&AbondSpec::from_graph(g)).unwrap();
    let hull = facet_enumerate(&points).unwrap();
    assert!(points.iter().all(|p| lift_feasible(&ef, p)));
    for f in &hull.facets {
        let res = lp_max(&ef.hrep, &ef.lift_objective(&f.normal));
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.value.unwrap(), f.rhs);
    }
}
