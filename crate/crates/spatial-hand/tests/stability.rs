use nalgebra::{Matrix4, Vector4};
use spatial_hand::contact::ContactJacobian;
use spatial_hand::stability::FORCE_TOL;
use spatial_hand::{
    assemble_J, assemble_T, forces_at, home_angles, home_pose, solve_forces, stability_predicate,
    sweep, AxisSpec, ContactConfig, DesignParams, ForceSolution, GridSpec, HandError,
    TransmissionMatrix,
};

#[test]
fn identity_matrices_pass_the_input_through() {
    let t = TransmissionMatrix(Matrix4::identity());
    let j = ContactJacobian(Matrix4::identity());
    let sol = solve_forces(&t, &j, [1.0, 2.0, 3.0, 4.0]).unwrap();
    assert_eq!(sol.f, [1.0, 2.0, 3.0, 4.0]);
    assert!(sol.stable);
    assert_eq!(sol.condition_estimate, 1.0);
}

#[test]
fn solve_satisfies_the_balance() {
    let p = DesignParams::reference();
    let s = home_pose(&p).unwrap();
    let (t, j) = (
        assemble_T(&p, &s).unwrap(),
        assemble_J(&p, &s, &ContactConfig::from_params(&p)).unwrap(),
    );
    let sol = solve_forces(&t, &j, [1.0, 0.0, 0.0, 0.0]).unwrap();
    let back = t.0.transpose() * (j.0.transpose() * Vector4::from(sol.f));
    assert!((back - Vector4::new(1.0, 0.0, 0.0, 0.0)).norm() < 1e-12);
    // an explicit inverse of the product gives the same forces
    let m = (j.0 * t.0).transpose();
    let f = m.try_inverse().unwrap() * Vector4::new(1.0, 0.0, 0.0, 0.0);
    for k in 0..4 {
        assert!((f[k] - sol.f[k]).abs() < 1e-12);
    }
}

#[test]
fn forces_scale_with_the_actuator() {
    let mut p = DesignParams::reference();
    let c = ContactConfig::from_params(&p);
    let a = home_angles(&p).unwrap();
    let one = forces_at(&p, &c, a).unwrap();
    p.f10 = 25.0;
    let many = forces_at(&p, &c, a).unwrap();
    for k in 0..4 {
        assert!((many.f[k] - 25.0 * one.f[k]).abs() < 1e-12);
    }
}

#[test]
fn singular_matrices_are_indeterminate() {
    let mut m = Matrix4::identity();
    m[(2, 2)] = 0.0;
    let err = solve_forces(
        &TransmissionMatrix(Matrix4::identity()),
        &ContactJacobian(m),
        [1.0, 0.0, 0.0, 0.0],
    );
    assert!(matches!(err, Err(HandError::Indeterminate { .. })));
}

#[test]
fn inactive_contacts_do_not_vote() {
    let sol = ForceSolution {
        f: [0.3, -0.2, 0.1, 0.0],
        t_in: [1.0, 0.0, 0.0, 0.0],
        stable: false,
        condition_estimate: 1.0,
    };
    let mut c = ContactConfig::from_params(&DesignParams::reference());
    assert!(!stability_predicate(&sol, &c));
    c.active[1] = false;
    assert!(stability_predicate(&sol, &c));
    let tiny = ForceSolution {
        f: [FORCE_TOL / 2.0, 0.0, 0.0, 0.0],
        ..sol
    };
    c.active = [true; 4];
    assert!(stability_predicate(&tiny, &c));
}

#[test]
fn single_point_grid() {
    let p = DesignParams::reference();
    let c = ContactConfig::from_params(&p);
    let h = home_angles(&p).unwrap();
    let grid = GridSpec {
        theta2: AxisSpec::single(h.theta2),
        theta6: AxisSpec::single(h.theta6),
    };
    let map = sweep(&p, &c, &grid).unwrap();
    assert_eq!(map.shape(), (1, 1));
    assert_eq!(map.at(0, 0).f.unwrap(), forces_at(&p, &c, h).unwrap().f);
    assert_eq!(map.variation_ratio(), None);
    let csv = map.to_csv();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.starts_with("theta2,theta6,f1,f2,f3,f4,stable,condition,flag\n"));
}

#[test]
fn sweep_order_is_theta2_major() {
    let p = DesignParams::reference();
    let c = ContactConfig::from_params(&p);
    let grid = GridSpec {
        theta2: AxisSpec::new(-2.0, -1.9, 0.05).unwrap(),
        theta6: AxisSpec::new(-2.5, -2.3, 0.1).unwrap(),
    };
    let map = sweep(&p, &c, &grid).unwrap();
    assert_eq!(map.shape(), (3, 3));
    assert_eq!(
        (map.at(1, 2).theta2, map.at(1, 2).theta6),
        (grid.theta2.value(1), grid.theta6.value(2))
    );
    assert_eq!(map.flagged(), 0);
}

#[test]
fn unreachable_samples_are_flagged_not_fatal() {
    let mut p = DesignParams::reference();
    // a longer five-bar link leaves part of a full turn unreachable
    (p.c1, p.c2, p.c3) = (50.0, 50.0, 50.0);
    let c = ContactConfig::from_params(&p);
    let axis = AxisSpec::new(-3.1, 3.1, 0.2).unwrap();
    let map = sweep(
        &p,
        &c,
        &GridSpec {
            theta2: axis,
            theta6: axis,
        },
    )
    .unwrap();
    assert!(map.flagged() > 0 && map.flagged() < map.samples.len());
    for s in map.samples.iter().filter(|s| s.flag.is_some()) {
        assert!(s.f.is_none() && !s.stable);
    }
    assert!(map
        .to_csv()
        .lines()
        .skip(1)
        .all(|l| l.split(',').count() == 9));
}

#[test]
fn axis_validation() {
    assert!(AxisSpec::new(1.0, 0.0, 0.1).is_err());
    assert!(AxisSpec::new(0.0, 1.0, 0.0).is_err());
    assert_eq!(AxisSpec::new(0.0, 1.2, 0.02).unwrap().count(), 61);
}

#[test]
fn triangular_contact_matrix_back_substitutes() {
    let mut j = Matrix4::from_diagonal(&Vector4::new(2.0, 3.0, 5.0, 7.0));
    j[(1, 0)] = 0.5;
    j[(2, 1)] = -1.5;
    j[(3, 0)] = 4.0;
    let sol = solve_forces(
        &TransmissionMatrix(Matrix4::identity()),
        &ContactJacobian(j),
        [1.0, 0.0, 0.0, 0.0],
    )
    .unwrap();
    assert_eq!(sol.f, [0.5, 0.0, 0.0, 0.0]);
}

#[test]
fn predicate_on_plain_force_vectors() {
    let c = ContactConfig::from_params(&DesignParams::reference());
    let at = |f| ForceSolution {
        f,
        t_in: [1.0, 0.0, 0.0, 0.0],
        stable: false,
        condition_estimate: 1.0,
    };
    assert!(stability_predicate(&at([0.1, 0.2, 0.05, 0.3]), &c));
    assert!(!stability_predicate(&at([0.1, -0.2, 0.05, 0.3]), &c));
}

#[test]
fn default_sweep_is_positive_and_smooth() {
    let p = DesignParams::reference();
    let c = ContactConfig::from_params(&p);
    let map = sweep(&p, &c, &GridSpec::default_for(&p).unwrap()).unwrap();
    assert_eq!(map.flagged(), 0);
    assert!(map.smoothness().unwrap() <= 10.0);
    let f1: Vec<f64> = map.component(0).into_iter().flatten().collect();
    let negative = f1.iter().filter(|&&v| v <= 0.0).count();
    assert_eq!(negative, 0, "f1 <= 0 at {negative} of {} samples", f1.len());
}

#[test]
fn f1_varies_less_along_theta2_than_theta6() {
    let p = DesignParams::reference();
    let c = ContactConfig::from_params(&p);
    let map = sweep(&p, &c, &GridSpec::default_for(&p).unwrap()).unwrap();
    let ratio = map.variation_ratio().unwrap();
    assert!(
        (ratio - 4.116179945944).abs() < 1e-9,
        "baseline moved: {ratio}"
    );
    assert!(
        ratio < 1.0,
        "f1 range along theta2 is {ratio:.3} times the range along theta6"
    );
}
