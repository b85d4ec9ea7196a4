#![allow(clippy::needless_range_loop)]

use cotton_lab::catalog::*;
use cotton_lab::frame_geometry::{
    jacobi_residual, koszul_connection, lie_derivative_frame, FrameGeometry,
};
use cotton_lab::scan::random_specs;
use cotton_lab::Error;
use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;

fn spec(family: Family, values: &[f64]) -> FamilySpec {
    FamilySpec::new(family, values)
}

#[test]
fn abelian_from_zero_ia() {
    let alg = build_algebra(&spec(Family::Ia, &[0.0, 0.0, 0.0])).unwrap();
    assert!(alg.is_abelian());
    assert!(unimodular(&alg));
}

#[test]
fn ia_brackets() {
    let alg = build_algebra(&spec(Family::Ia, &[1.0, 2.0, 3.0])).unwrap();
    let e = |i| Vector3::ith(i, 1.0);
    assert_eq!(alg.bracket(&e(1), &e(2)), Vector3::new(1.0, 0.0, 0.0));
    assert_eq!(alg.bracket(&e(0), &e(2)), Vector3::new(0.0, -2.0, 0.0));
    assert_eq!(alg.bracket(&e(0), &e(1)), Vector3::new(0.0, 0.0, -3.0));
    assert_eq!(
        *alg.gram(),
        Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
    );
}

#[test]
fn gram_matrices() {
    let diag = |a, b, c| Matrix3::from_diagonal(&Vector3::new(a, b, c));
    for f in [
        Family::Ia,
        Family::Ib,
        Family::II,
        Family::III,
        Family::IV2,
        Family::N,
    ] {
        assert_eq!(gram_for(f), diag(1.0, 1.0, -1.0), "{f}");
    }
    assert_eq!(gram_for(Family::IV1), diag(-1.0, 1.0, 1.0));
    assert_eq!(gram_for(Family::IaRiemannian), Matrix3::identity());
    let g = gram_for(Family::IV3);
    assert_eq!(g[(0, 0)], 1.0);
    assert_eq!(g[(1, 2)], -1.0);
    assert_eq!(g[(2, 1)], -1.0);
    assert_eq!(g[(1, 1)], 0.0);
    assert_eq!(g[(2, 2)], 0.0);
}

#[test]
fn family_constraints_are_enforced() {
    let bad = [
        spec(Family::IV3, &[1.0, 0.0, 1.0, 1.0]),
        spec(Family::IV1, &[1.0, 1.0, 2.0, 1.0]),
        spec(Family::IV2, &[1.0, 1.0, 1.0, 1.0]),
        spec(Family::IV1, &[1.0, 0.0, 0.0, -1.0]),
        spec(Family::Ib, &[1.0, 0.0, 1.0]),
    ];
    for s in bad {
        assert!(
            matches!(
                build_algebra(&s),
                Err(Error::InvalidFamilyParameters { .. })
            ),
            "{s}"
        );
    }
    let err = build_algebra(&spec(Family::IV3, &[1.0, 0.0, 1.0, 1.0])).unwrap_err();
    assert!(err.to_string().contains("αγ = 0"), "{err}");
}

#[test]
fn unimodularity() {
    for s in [
        spec(Family::Ia, &[1.0, -2.0, 0.5]),
        spec(Family::Ib, &[0.3, 1.0, -0.2]),
        spec(Family::II, &[0.7, 1.2]),
        spec(Family::III, &[1.4]),
    ] {
        assert!(unimodular(&build_algebra(&s).unwrap()), "{s}");
    }
    for s in [
        spec(Family::IV1, &[1.0, 2.0, 2.0, 1.0]),
        spec(Family::IV2, &[1.0, 2.0, -2.0, 1.0]),
        spec(Family::IV3, &[0.0, 1.0, 1.0, 1.0]),
    ] {
        assert!(!unimodular(&build_algebra(&s).unwrap()), "{s}");
    }
}

#[test]
fn lcf_examples() {
    let c = lcf_classify(&spec(Family::Ia, &[1.0, 1.0, 1.0])).unwrap();
    assert!(c.lcf);
    assert_eq!(c.case_label, Some(LcfCase::IaConstantCurvature));

    let c = lcf_classify(&spec(Family::Ib, &[-2.0, 3f64.sqrt(), 1.0])).unwrap();
    assert!(c.lcf);
    assert_eq!(c.case_label, Some(LcfCase::IbNonSymmetric));

    let c = lcf_classify(&spec(Family::IV3, &[1.0, 0.0, 0.0, 3.0])).unwrap();
    assert!(c.lcf);
    assert_eq!(c.case_label, Some(LcfCase::Iv3NonSymmetric));

    for s in [
        spec(Family::Ia, &[1.0, 2.0, 3.0]),
        spec(Family::II, &[1.0, 1.0]),
    ] {
        let c = lcf_classify(&s).unwrap();
        assert!(!c.lcf && c.case_label.is_none(), "{s}");
    }
}

#[test]
fn christoffel_oracle_examples() {
    let conn = christoffel_oracle(&spec(Family::Ia, &[1.0, 2.0, 3.0])).unwrap();
    assert_eq!(conn.christoffel(0, 1, 2), -2.0);
    assert_eq!(conn.christoffel(0, 2, 1), -2.0);
    assert_eq!(conn.christoffel(1, 0, 2), 1.0);
    assert_eq!(conn.christoffel(1, 2, 0), 1.0);

    let conn = christoffel_oracle(&spec(Family::IV3, &[1.0, 1.0, 0.0, 1.0])).unwrap();
    let expected = [
        ((0, 0, 1), 1.0),
        ((0, 2, 0), 1.0),
        ((2, 0, 1), -1.0),
        ((2, 2, 0), -1.0),
        ((2, 1, 1), -1.0),
        ((2, 2, 2), 1.0),
    ];
    for ((i, j, k), v) in expected {
        assert_eq!(
            conn.christoffel(i, j, k),
            v,
            "Γ^{}_{}{}",
            k + 1,
            i + 1,
            j + 1
        );
    }

    let conn = christoffel_oracle(&spec(Family::Ia, &[0.0, 0.0, 0.0])).unwrap();
    assert_eq!(conn.gamma, [[[0.0; 3]; 3]; 3]);
}

fn rel_close(got: &Matrix3<f64>, want: &Matrix3<f64>) -> bool {
    (got - want).amax() <= 1e-9 * want.amax().max(1.0)
}

#[test]
fn oracle_equivalence_over_family_draws() {
    for family in Family::ALL {
        let specs = random_specs(family, 1000, 2024, 2.0);
        specs.par_iter().for_each(|s| {
            let alg = build_algebra(s).unwrap();
            assert!(jacobi_residual(alg.structure()) < 1e-12, "{s} Jacobi");
            let conn = koszul_connection(&alg);
            let oracle = christoffel_oracle(s).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let diff = (conn.christoffel(i, j, k) - oracle.christoffel(i, j, k)).abs();
                        assert!(
                            diff < 1e-12,
                            "{s} Γ^{}_{}{} differs by {diff:e}",
                            k + 1,
                            i + 1,
                            j + 1
                        );
                    }
                }
            }
            for x in [
                Vector3::new(1.0, 0.0, 0.0),
                Vector3::new(0.0, 1.0, 0.0),
                Vector3::new(0.3, -1.2, 0.8),
            ] {
                let lie = lie_derivative_frame(&alg, &conn, &x);
                let want = lie_derivative_oracle(s, &x).unwrap();
                assert!(rel_close(&lie.0, &want.0), "{s} L_X g for {x:?}");
            }
            let c = FrameGeometry::compute(&alg).cotton2;
            let want = cotton_oracle(s).unwrap();
            assert!(rel_close(&c.0, &want.0), "{s} Cotton\n{}\n{}", c.0, want.0);
        });
    }
}

#[test]
fn lcf_routes_agree_on_dense_grid() {
    for family in Family::ALL {
        let axes: Vec<GridAxis> = family
            .param_names()
            .iter()
            .map(|n| GridAxis::new(n, -3.0, 3.0, 0.25))
            .collect();
        let grid = grid_specs(family, &axes);
        assert!(!grid.specs.is_empty(), "{family}");
        let failures: Vec<String> = grid
            .specs
            .par_iter()
            .filter_map(|s| lcf_classify(s).err().map(|e| e.to_string()))
            .collect();
        assert!(
            failures.is_empty(),
            "{family}: {} disagreements, first {:?}",
            failures.len(),
            failures.first()
        );
    }
}

#[test]
fn family_spec_json_shape() {
    let s = spec(Family::Ia, &[1.0, 2.0, 3.0]);
    let json = serde_json::to_value(&s).unwrap();
    assert_eq!(
        json,
        serde_json::json!({"family": "Ia", "params": {"alpha": 1.0, "beta": 2.0, "gamma": 3.0}})
    );
    let back: FamilySpec = serde_json::from_str(
        r#"{"family": "IV.3", "params": {"alpha": 0.0, "beta": 1.0, "gamma": 2.0, "delta": 1.0}}"#,
    )
    .unwrap();
    assert_eq!(back, spec(Family::IV3, &[0.0, 1.0, 2.0, 1.0]));
    assert!(serde_json::from_str::<FamilySpec>(r#"{"family": "V", "params": {}}"#).is_err());
}

#[test]
fn parameter_errors_name_the_field() {
    let mut s = spec(Family::II, &[1.0, 1.0]);
    s.params.remove("beta");
    let err = build_algebra(&s).unwrap_err();
    assert!(matches!(&err, Error::MissingParameter { name, .. } if name == "beta"));

    let mut s = spec(Family::III, &[1.0]);
    s.params.insert("delta".into(), 0.0);
    let err = build_algebra(&s).unwrap_err();
    assert!(matches!(&err, Error::UnexpectedParameter { name, .. } if name == "delta"));
}

#[test]
fn class_n_is_constant_curvature() {
    let s = spec(Family::N, &[1.3]);
    let c = lcf_classify(&s).unwrap();
    assert_eq!(c.case_label, Some(LcfCase::ClassN));
    let alg = build_algebra(&s).unwrap();
    let geo = FrameGeometry::compute(&alg);
    let k = geo.curvature.sectional(&alg, 0, 1).unwrap();
    for (i, j) in [(0, 2), (1, 2)] {
        assert!((geo.curvature.sectional(&alg, i, j).unwrap() - k).abs() < 1e-12);
    }
}
