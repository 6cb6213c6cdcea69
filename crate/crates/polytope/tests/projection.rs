//! Semantic checks on elimination and projection: a projected system must
//! admit exactly the points whose fibers are feasible, no matter which
//! elimination order produced it.

use num_rational::BigRational;
use polytope::{IneqSystem, LinIneq};
use proptest::prelude::*;

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn row(pairs: &[(&str, i64)], rhs: i64) -> LinIneq {
    LinIneq::new(
        pairs
            .iter()
            .map(|&(v, c)| (v.to_string(), frac(c, 1)))
            .collect::<Vec<_>>(),
        frac(rhs, 1),
    )
}

fn system(vars: &[&str], rows: Vec<LinIneq>) -> IneqSystem {
    let mut sys = IneqSystem::new(vars.iter().map(|v| v.to_string()).collect()).unwrap();
    for r in rows {
        sys.push(r).unwrap();
    }
    sys
}

/// Pins the named variables to fixed values and reports whether any
/// completion of the remaining coordinates satisfies the system.
fn fiber_feasible(sys: &IneqSystem, pins: &[(&str, BigRational)]) -> bool {
    let free: Vec<String> = sys
        .vars()
        .iter()
        .filter(|v| pins.iter().all(|(p, _)| p != &v.as_str()))
        .cloned()
        .collect();
    let mut sliced = IneqSystem::new(free).unwrap();
    for ineq in sys.ineqs() {
        let mut rhs = ineq.rhs().clone();
        let mut coeffs = Vec::new();
        for (var, c) in ineq.coeffs() {
            match pins.iter().find(|(p, _)| p == &var.as_str()) {
                Some((_, value)) => rhs -= c * value,
                None => coeffs.push((var.clone(), c.clone())),
            }
        }
        sliced.push(LinIneq::new(coeffs, rhs)).unwrap();
    }
    sliced.feasible().unwrap()
}

fn arb_row() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -4i64..=4)
}

fn arb_system() -> impl Strategy<Value = IneqSystem> {
    proptest::collection::vec(arb_row(), 3..7).prop_map(|rows| {
        system(
            &["x", "y", "z"],
            rows.into_iter()
                .map(|(a, b, c, r)| row(&[("x", a), ("y", b), ("z", c)], r))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// A point lies in the projection exactly when its fiber is nonempty.
    #[test]
    fn projection_membership_matches_fiber_feasibility(
        sys in arb_system(),
        px in -4i64..=4,
        py in -4i64..=4,
    ) {
        let shadow = sys.project(&["x", "y"]).unwrap();
        for (nx, ny) in [(px, py), (px + 1, py), (px, py + 1)] {
            let p = [frac(nx, 2), frac(ny, 2)];
            let inside = shadow.contains(&p).unwrap();
            let fiber = fiber_feasible(
                &sys,
                &[("x", p[0].clone()), ("y", p[1].clone())],
            );
            prop_assert_eq!(inside, fiber, "probe ({}/2, {}/2)", nx, ny);
        }
    }

    /// Different elimination orders give syntactically different rows but the
    /// same point set.
    #[test]
    fn elimination_order_does_not_change_the_shadow(sys in arb_system()) {
        let auto = sys.project(&["x"]).unwrap();
        let yz = sys.eliminate("y").unwrap().eliminate("z").unwrap();
        let zy = sys.eliminate("z").unwrap().eliminate("y").unwrap();
        for k in -8i64..=8 {
            let p = [frac(k, 2)];
            let a = auto.contains(&p).unwrap();
            prop_assert_eq!(a, yz.contains(&p).unwrap(), "probe {}/2", k);
            prop_assert_eq!(a, zy.contains(&p).unwrap(), "probe {}/2", k);
        }
    }

    /// Rows slack over the whole unit square change neither the vertex set
    /// nor the pruned facet list.
    #[test]
    fn loose_rows_never_change_the_vertex_set(
        a in -5i64..=5,
        b in -5i64..=5,
        extra in 1i64..=7,
    ) {
        let square = vec![
            row(&[("x", -1)], 0),
            row(&[("y", -1)], 0),
            row(&[("x", 1)], 1),
            row(&[("y", 1)], 1),
        ];
        let plain = system(&["x", "y"], square.clone());
        let mut padded_rows = square;
        padded_rows.push(row(&[("x", a), ("y", b)], a.max(0) + b.max(0) + extra));
        let padded = system(&["x", "y"], padded_rows);

        prop_assert_eq!(padded.vertices().unwrap(), plain.vertices().unwrap());
        prop_assert_eq!(
            padded.remove_redundant().unwrap(),
            plain.remove_redundant().unwrap()
        );
    }
}

#[test]
fn staircase_system_projects_to_hand_computed_faces() {
    // Five stacked budget rows over seven variables; eliminating the four
    // slack-like variables by hand gives the four faces asserted below.
    let i0 = frac(1, 10);
    let i1 = frac(1, 1);
    let i2 = frac(1, 5);
    let i3 = frac(3, 2);
    let i5 = frac(1, 2);
    let cross = frac(6, 5);

    let vars = ["r0", "r1", "r2", "s20", "s22", "st", "sp"];
    let mut sys = IneqSystem::new(vars.iter().map(|v| v.to_string()).collect()).unwrap();
    let mut push = |pairs: &[(&str, i64)], rhs: BigRational| {
        let coeffs: Vec<_> = pairs
            .iter()
            .map(|&(v, c)| (v.to_string(), frac(c, 1)))
            .collect();
        sys.push(LinIneq::new(coeffs, rhs)).unwrap();
    };
    push(&[("sp", -1)], -i0.clone());
    push(&[("sp", -1), ("st", -1)], -i2.clone());
    push(&[("r1", 1), ("st", 1), ("sp", 1)], i1.clone());
    push(&[("r0", 1), ("s20", 1), ("r1", 1), ("st", 1), ("sp", 1)], i3.clone());
    push(&[("s22", 1)], i5.clone());
    push(&[("r0", 1), ("r2", 1)], cross.clone());
    push(&[("r2", 1), ("s20", -1), ("s22", -1)], frac(0, 1));
    push(&[("r2", -1), ("s20", 1), ("s22", 1)], frac(0, 1));
    for v in vars {
        push(&[(v, -1)], frac(0, 1));
    }

    let shadow = sys.project(&["r0", "r1", "r2"]).unwrap();

    let mut faces = IneqSystem::new(vec!["r0".into(), "r1".into(), "r2".into()]).unwrap();
    let mut push = |pairs: &[(&str, i64)], rhs: BigRational| {
        let coeffs: Vec<_> = pairs
            .iter()
            .map(|&(v, c)| (v.to_string(), frac(c, 1)))
            .collect();
        faces.push(LinIneq::new(coeffs, rhs)).unwrap();
    };
    push(&[("r1", 1)], &i1 - &i2);
    push(&[("r0", 1), ("r1", 1)], &i3 - &i2);
    push(&[("r0", 1), ("r1", 1), ("r2", 1)], &i3 + &i5 - &i2);
    push(&[("r0", 1), ("r2", 1)], cross);
    push(&[("r0", -1)], frac(0, 1));
    push(&[("r1", -1)], frac(0, 1));
    push(&[("r2", -1)], frac(0, 1));

    assert_eq!(shadow, faces.simplified());
    assert_eq!(shadow.vertices().unwrap(), faces.vertices().unwrap());
    assert!(!shadow.vertices().unwrap().is_empty());
}

#[test]
fn emptied_staircase_and_empty_faces_agree_on_no_vertices() {
    // Same shape, but the first budget is too small for the second, so the
    // projection and the face system are both empty.
    let vars = ["r1", "st", "sp"];
    let mut sys = IneqSystem::new(vars.iter().map(|v| v.to_string()).collect()).unwrap();
    let mut push = |pairs: &[(&str, i64)], rhs: BigRational| {
        let coeffs: Vec<_> = pairs
            .iter()
            .map(|&(v, c)| (v.to_string(), frac(c, 1)))
            .collect();
        sys.push(LinIneq::new(coeffs, rhs)).unwrap();
    };
    push(&[("sp", -1), ("st", -1)], frac(-1, 5));
    push(&[("r1", 1), ("st", 1), ("sp", 1)], frac(1, 10));
    for v in vars {
        push(&[(v, -1)], frac(0, 1));
    }
    let shadow = sys.project(&["r1"]).unwrap();
    assert!(!shadow.feasible().unwrap());
    assert!(shadow.vertices().unwrap().is_empty());
}
