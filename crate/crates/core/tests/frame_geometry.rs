#![allow(clippy::needless_range_loop)]

use cotton_lab::catalog::{build_algebra, Family, FamilySpec};
use cotton_lab::frame_geometry::*;
use cotton_lab::scan::random_specs;
use cotton_lab::Error;
use nalgebra::{Matrix3, Vector3};
use proptest::prelude::*;

const R2: f64 = std::f64::consts::SQRT_2;

fn alg(family: Family, values: &[f64]) -> LieAlgebra3 {
    build_algebra(&FamilySpec::new(family, values)).unwrap()
}

fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!((got - want).abs() < tol, "{what}: got {got}, want {want}");
}

#[test]
fn abelian_algebra_is_flat_everywhere() {
    let a = alg(Family::Ia, &[0.0, 0.0, 0.0]);
    let geo = FrameGeometry::compute(&a);
    assert_eq!(geo.connection.gamma, [[[0.0; 3]; 3]; 3]);
    assert_eq!(geo.curvature.max_abs(), 0.0);
    assert_eq!(geo.ricci.max_abs(), 0.0);
    assert_eq!(geo.scalar, 0.0);
    assert_eq!(geo.schouten.max_abs(), 0.0);
    let x = Vector3::new(0.3, -1.0, 2.0);
    assert_eq!(lie_derivative_frame(&a, &geo.connection, &x).max_abs(), 0.0);
}

#[test]
fn ia_123_christoffel() {
    let conn = koszul_connection(&alg(Family::Ia, &[1.0, 2.0, 3.0]));
    // 1-based Γ^k_ij: Γ^3_12 = Γ^2_13 = −2, Γ^3_21 = Γ^1_23 = 1, Γ^2_31 = −Γ^1_32 = 0
    assert_close(conn.christoffel(0, 1, 2), -2.0, 1e-12, "Γ^3_12");
    assert_close(conn.christoffel(0, 2, 1), -2.0, 1e-12, "Γ^2_13");
    assert_close(conn.christoffel(1, 0, 2), 1.0, 1e-12, "Γ^3_21");
    assert_close(conn.christoffel(1, 2, 0), 1.0, 1e-12, "Γ^1_23");
    assert_close(conn.christoffel(2, 0, 1), 0.0, 1e-12, "Γ^2_31");
    assert_close(conn.christoffel(2, 1, 0), 0.0, 1e-12, "Γ^1_32");
}

#[test]
fn iii_alpha_zero_christoffel() {
    let conn = koszul_connection(&alg(Family::III, &[0.0]));
    let s = 1.0 / R2;
    let expected = [
        ((0, 0, 1), s),
        ((0, 0, 2), -s),
        ((0, 1, 0), -s),
        ((0, 2, 0), -s),
        ((1, 1, 2), s),
        ((1, 2, 1), s),
        ((2, 1, 2), s),
        ((2, 2, 1), s),
    ];
    for ((i, j, k), v) in expected {
        assert_close(
            conn.christoffel(i, j, k),
            v,
            1e-12,
            &format!("Γ^{}_{}{}", k + 1, i + 1, j + 1),
        );
    }
}

#[test]
fn constant_curvature_ia() {
    for c in [1.0, -0.7, 2.0] {
        let a = alg(Family::Ia, &[c, c, c]);
        let geo = FrameGeometry::compute(&a);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_close(
                geo.curvature.sectional(&a, i, j).unwrap(),
                -c * c / 4.0,
                1e-12,
                "sectional",
            );
        }
        assert!((geo.ricci.0 - a.gram() * (-c * c / 2.0)).amax() < 1e-12);
        assert_close(geo.scalar, -1.5 * c * c, 1e-12, "scalar");
        assert!((geo.schouten.0 - a.gram() * (-c * c / 8.0)).amax() < 1e-12);
        assert!(geo.cotton3.max_abs() < 1e-12);
    }
}

#[test]
fn flat_type_ii() {
    let geo = FrameGeometry::compute(&alg(Family::II, &[0.0, 0.0]));
    assert!(geo.curvature.max_abs() < 1e-12);
}

#[test]
fn curvature_antisymmetric_in_first_pair() {
    let geo = FrameGeometry::compute(&alg(Family::IV3, &[0.0, 0.6, 1.3, -0.4]));
    let r = &geo.curvature.r;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    assert!((r[i][j][k][l] + r[j][i][k][l]).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn ib_conformally_flat_point() {
    let geo = FrameGeometry::compute(&alg(Family::Ib, &[-2.0, 3f64.sqrt(), 1.0]));
    assert!(geo.cotton3.max_abs() < 1e-10);
    assert!(geo.cotton2.max_abs() < 1e-10);
}

#[test]
fn cotton2_examples() {
    let c = FrameGeometry::compute(&alg(Family::Ia, &[1.0, 2.0, 3.0]))
        .cotton2
        .0;
    assert!(
        (c - Matrix3::from_diagonal(&Vector3::new(-4.0, -8.0, -12.0))).amax() < 1e-10,
        "{c}"
    );

    let c = FrameGeometry::compute(&alg(Family::II, &[0.0, 1.0]))
        .cotton2
        .0;
    assert_close(c[(0, 0)], 0.0, 1e-10, "II C11");
    assert_close(c[(1, 1)], 2.0, 1e-10, "II C22");
    assert_close(c[(2, 2)], 2.0, 1e-10, "II C33");
    assert_close(c[(1, 2)], -2.0, 1e-10, "II C23");

    let c = FrameGeometry::compute(&alg(Family::III, &[1.0])).cotton2.0;
    let q = 3.0 / (2.0 * R2);
    assert_close(c[(0, 1)], q, 1e-10, "III C12");
    assert_close(c[(0, 2)], q, 1e-10, "III C13");
    assert_close(c[(1, 1)], 3.0, 1e-10, "III C22");
    assert_close(c[(1, 2)], 3.0, 1e-10, "III C23");
    assert_close(c[(2, 2)], 3.0, 1e-10, "III C33");
}

#[test]
fn raise_index_examples() {
    let a = alg(Family::IaRiemannian, &[0.0, 0.0, 0.0]);
    let t = SymTensor2(Matrix3::from_diagonal(&Vector3::new(1.5, -2.0, 0.25)));
    assert_eq!(*raise_index(&a, &t).mat(), t.0);

    let a = alg(Family::II, &[1.0, 1.0]);
    let op = FrameGeometry::compute(&a).cotton_operator(&a);
    assert!((op.mat() * op.mat()).amax() < 1e-10);
    assert!(op.mat().amax() > 0.1);
}

#[test]
fn ia_lie_derivative_table() {
    let (al, be, ga) = (1.0, 2.0, 3.0);
    let a = alg(Family::Ia, &[al, be, ga]);
    let conn = koszul_connection(&a);
    let x = Vector3::new(0.5, -1.25, 2.0);
    let l = lie_derivative_frame(&a, &conn, &x).0;
    for i in 0..3 {
        assert_close(l[(i, i)], 0.0, 1e-12, "diagonal");
    }
    assert_close(l[(0, 1)], (al - be) * x[2], 1e-12, "L12");
    assert_close(l[(0, 2)], (ga - al) * x[1], 1e-12, "L13");
    assert_close(l[(1, 2)], (be - ga) * x[0], 1e-12, "L23");
}

#[test]
fn type_ii_killing_direction() {
    for v in [1.0, -0.6] {
        let a = alg(Family::II, &[v, v]);
        let conn = koszul_connection(&a);
        assert!(lie_derivative_frame(&a, &conn, &Vector3::new(0.0, 1.0, 1.0)).max_abs() < 1e-12);
    }
}

#[test]
fn exterior_derivative_examples() {
    let a = alg(Family::II, &[0.0, 1.0]);
    assert_eq!(
        flat_and_exterior(&a, &Vector3::new(2.0, 0.0, 0.0)).amax(),
        0.0
    );

    // −βκ(e¹∧e² − e¹∧e³) − ¾β³ e²∧e³ with β = κ = 1
    let a = alg(Family::II, &[1.0, 1.0]);
    let d = flat_and_exterior(&a, &Vector3::new(0.75, 1.0, 1.0));
    assert_close(d[(0, 1)], -1.0, 1e-12, "e12");
    assert_close(d[(0, 2)], 1.0, 1e-12, "e13");
    assert_close(d[(1, 2)], -0.75, 1e-12, "e23");

    // 3α²/(2√2)(e¹∧e² + e¹∧e³ + √2α e²∧e³) with α = 1
    let a = alg(Family::III, &[1.0]);
    let d = flat_and_exterior(&a, &Vector3::new(-1.5, 3.0 / R2, -3.0 / R2));
    let q = 3.0 / (2.0 * R2);
    assert_close(d[(0, 1)], q, 1e-12, "e12");
    assert_close(d[(0, 2)], q, 1e-12, "e13");
    assert_close(d[(1, 2)], q * R2, 1e-12, "e23");
    assert!((d + d.transpose()).amax() == 0.0);
}

#[test]
fn conformal_scale_examples() {
    let a = alg(Family::Ia, &[1.0, 2.0, 3.0]);
    assert_eq!(a.conformal_scale(1.0).unwrap(), a);
    let scaled = a.conformal_scale(4.0).unwrap();
    let (g0, g1) = (FrameGeometry::compute(&a), FrameGeometry::compute(&scaled));
    assert_eq!(g0.connection, g1.connection);
    assert!((g0.cotton3.max_abs() - g1.cotton3.max_abs()).abs() < 1e-10);
    for c in [0.0, -1.0, f64::NAN] {
        assert!(
            matches!(a.conformal_scale(c), Err(Error::NonPositiveScale(_))),
            "{c}"
        );
    }
}

#[test]
fn degenerate_gram_is_an_error() {
    let gram = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, 0.0));
    let err = LieAlgebra3::new([[[0.0; 3]; 3]; 3], gram).unwrap_err();
    assert!(matches!(err, Error::DegenerateMetric { .. }));
}

fn check_invariants(spec: &FamilySpec) {
    let a = build_algebra(spec).unwrap();
    let geo = FrameGeometry::compute(&a);
    let tol = 1e-10 * a.scale().max(1.0).powi(3);
    assert!(
        geo.connection.torsion_defect(&a) < 1e-12 * a.scale().max(1.0),
        "{spec} torsion"
    );
    assert!(
        geo.connection.metric_defect(&a) < 1e-12 * a.scale().max(1.0),
        "{spec} metric"
    );
    assert!(
        geo.ricci.symmetry_defect() < 1e-12 * a.scale().max(1.0).powi(2),
        "{spec} ricci"
    );
    assert!(
        geo.cotton3.antisymmetry_defect() < tol,
        "{spec} antisymmetry"
    );
    assert!(
        geo.cotton3.trace_defect(a.gram_inverse()) < tol,
        "{spec} trace"
    );
    assert!(geo.cotton3.cyclic_defect() < tol, "{spec} cyclic");
    assert!(geo.cotton2.symmetry_defect() < tol, "{spec} C symmetric");
    assert!(
        geo.cotton2.trace(a.gram_inverse()).abs() < tol,
        "{spec} C trace"
    );
    assert!(
        geo.cotton_operator(&a).self_adjoint_defect(a.gram()) < tol,
        "{spec} self-adjoint"
    );
    for c in [0.5, 2.0, 10.0] {
        let scaled = FrameGeometry::compute(&a.conformal_scale(c).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let diff = scaled.cotton3.comp[i][j][k] - geo.cotton3.comp[i][j][k];
                    assert!(diff.abs() < tol, "{spec} conformal c={c}");
                }
            }
        }
    }
}

#[test]
fn invariants_over_family_draws() {
    for family in Family::ALL {
        for spec in random_specs(family, 1000, 11, 2.0) {
            check_invariants(&spec);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn invariants_hold_for_random_ia(a in -2.0..2.0f64, b in -2.0..2.0f64, g in -2.0..2.0f64) {
        check_invariants(&FamilySpec::new(Family::Ia, &[a, b, g]));
    }

    #[test]
    fn invariants_hold_for_random_iv3(b in -2.0..2.0f64, g in -2.0..2.0f64, d in 0.1..2.0f64) {
        check_invariants(&FamilySpec::new(Family::IV3, &[0.0, b, g, d]));
    }

    #[test]
    fn koszul_formula_on_basis(a in -2.0..2.0f64, b in -2.0..2.0f64, d in 0.1..2.0f64) {
        let alg = build_algebra(&FamilySpec::new(Family::IV1, &[a.abs() + 0.1, b, b * d / (a.abs() + 0.1), d])).unwrap();
        let conn = koszul_connection(&alg);
        let e = |i| Vector3::ith(i, 1.0);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let lhs = 2.0 * alg.inner(&conn.covariant(i, &e(j)), &e(k));
                    let rhs = alg.inner(&alg.bracket(&e(i), &e(j)), &e(k))
                        - alg.inner(&alg.bracket(&e(j), &e(k)), &e(i))
                        + alg.inner(&alg.bracket(&e(k), &e(i)), &e(j));
                    prop_assert!((lhs - rhs).abs() < 1e-12 * alg.scale().max(1.0));
                }
            }
        }
    }
}
