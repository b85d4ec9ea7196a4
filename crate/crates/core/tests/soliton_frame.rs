#![allow(clippy::needless_range_loop)]

use cotton_lab::catalog::{build_algebra, Family, FamilySpec};
use cotton_lab::frame_geometry::{lie_derivative_frame, FrameGeometry, LieAlgebra3, Operator3};
use cotton_lab::scan::{expects_algebraic_soliton, random_specs, scan, ScanSummary};
use cotton_lab::soliton_frame::*;
use nalgebra::{DMatrix, Matrix3, Vector3};

const R2: f64 = std::f64::consts::SQRT_2;

fn alg(family: Family, values: &[f64]) -> LieAlgebra3 {
    build_algebra(&FamilySpec::new(family, values)).unwrap()
}

fn system(a: &LieAlgebra3) -> SolitonSystem {
    let geo = FrameGeometry::compute(a);
    assemble(a, &geo.cotton2, &geo.connection)
}

fn rank(m: &DMatrix<f64>) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let cut = 1e-10 * sv.max();
    sv.iter().filter(|s| **s > cut).count()
}

/// Augmented rows `[A | −b]` so that a solution `z` satisfies `rows · (z, 1) = 0`.
fn augmented(s: &SolitonSystem) -> DMatrix<f64> {
    DMatrix::from_fn(
        6,
        5,
        |r, c| if c < 4 { s.matrix[(r, c)] } else { -s.rhs[r] },
    )
}

fn assert_vec(got: [f64; 3], want: [f64; 3], tol: f64) {
    for i in 0..3 {
        assert!((got[i] - want[i]).abs() < tol, "got {got:?}, want {want:?}");
    }
}

#[test]
fn abelian_system() {
    let a = alg(Family::Ia, &[0.0, 0.0, 0.0]);
    let s = system(&a);
    for r in 0..6 {
        for c in 0..3 {
            assert_eq!(s.matrix[(r, c)], 0.0);
        }
        assert_eq!(s.rhs[r], 0.0);
    }
    let g = [1.0, 0.0, 0.0, 1.0, 0.0, -1.0];
    for r in 0..6 {
        assert_eq!(s.matrix[(r, 3)], -g[r]);
    }
}

#[test]
fn type_ii_system_matches_reference_equations() {
    for (al, be) in [(1.0, 1.0), (0.0, 1.0), (0.4, -1.3), (1.7, 0.2)] {
        let s = system(&alg(Family::II, &[al, be]));
        // rows of the reference system in the unknowns (x1, x2, x3, λ | 1)
        let reference = DMatrix::from_row_slice(
            6,
            5,
            &[
                0.0,
                1.0,
                2.0 * al - 2.0 * be - 1.0,
                0.0,
                0.0,
                0.0,
                -(2.0 * al - 2.0 * be + 1.0),
                1.0,
                0.0,
                0.0,
                4.0,
                0.0,
                0.0,
                0.0,
                al * al - 8.0 * be * be + 4.0 * al * be,
                0.0,
                0.0,
                0.0,
                -1.0,
                al * al * (al - be),
                4.0,
                0.0,
                0.0,
                4.0,
                2.0 * al.powi(3) - 8.0 * be * be + 4.0 * al * be - al * al * (2.0 * be - 1.0),
                -4.0,
                0.0,
                0.0,
                4.0,
                2.0 * al.powi(3) + 8.0 * be * be - 4.0 * al * be - al * al * (2.0 * be + 1.0),
            ],
        );
        let ours = augmented(&s);
        let both = DMatrix::from_fn(12, 5, |r, c| {
            if r < 6 {
                ours[(r, c)]
            } else {
                reference[(r - 6, c)]
            }
        });
        let (r1, r2, r12) = (rank(&ours), rank(&reference), rank(&both));
        assert_eq!((r1, r2), (r12, r12), "II({al},{be}) row spaces differ");
    }
}

#[test]
fn type_iii_solution_satisfies_reference_equations_at_alpha_one() {
    let f = solve(&system(&alg(Family::III, &[1.0])));
    let [x1, x2, x3] = f.particular;
    let l = f.lambda;
    let reference = [
        2.0 * x1 + 3.0,
        R2 * x2 + R2 * x3 + l,
        3.0 * R2 - x2 + x3,
        3.0 + R2 * x3 - l,
        3.0 - R2 * x2 + l,
    ];
    for (i, v) in reference.iter().enumerate() {
        assert!(v.abs() < 1e-9, "equation {} gives {v}", i + 1);
    }
}

#[test]
fn solve_examples() {
    let f = solve(&system(&alg(Family::II, &[1.0, 1.0])));
    assert!(f.exists && !f.trivial);
    assert!(f.lambda.abs() < 1e-9);
    assert_vec(f.particular, [0.75, 0.0, 0.0], 1e-9);
    assert_eq!(f.kernel_basis.len(), 1);
    let k = Vector3::from(f.kernel_basis[0]);
    assert!(
        (k.normalize()
            .dot(&Vector3::new(0.0, 1.0, 1.0).normalize())
            .abs()
            - 1.0)
            .abs()
            < 1e-9
    );
    assert_eq!(f.classification, Some(SolitonKind::Steady));

    let f = solve(&system(&alg(Family::II, &[0.0, 1.0])));
    assert!(f.exists && !f.trivial);
    assert!(f.lambda.abs() < 1e-9);
    assert_vec(f.particular, [2.0, 0.0, 0.0], 1e-9);
    assert!(f.kernel_basis.is_empty());
    assert_eq!(f.classification, Some(SolitonKind::Steady));

    let f = solve(&system(&alg(Family::III, &[1.0])));
    assert!(f.exists && !f.trivial);
    assert!(f.lambda.abs() < 1e-9);
    assert_vec(f.particular, [-1.5, 3.0 / R2, -3.0 / R2], 1e-9);

    let f = solve(&system(&alg(Family::Ia, &[1.0, 2.0, 3.0])));
    assert!(!f.exists);
    assert_eq!(f.classification, None);
}

#[test]
fn type_iv2_soliton_is_trivial_or_absent() {
    let f = solve_algebra(&alg(Family::IV2, &[1.0, 1.0, -1.0, 1.0]));
    assert!(!f.exists || f.trivial);
}

#[test]
fn nilpotency_examples() {
    assert_eq!(
        nilpotency_degree(&Operator3(Matrix3::zeros())),
        NilpotencyDegree::Finite(0)
    );
    let a = alg(Family::II, &[1.0, 1.0]);
    let op = FrameGeometry::compute(&a).cotton_operator(&a);
    assert_eq!(nilpotency_degree(&op), NilpotencyDegree::Finite(2));
    let a = alg(Family::III, &[1.0]);
    let op = FrameGeometry::compute(&a).cotton_operator(&a);
    assert_eq!(nilpotency_degree(&op), NilpotencyDegree::Finite(3));
    let a = alg(Family::Ia, &[1.0, 2.0, 3.0]);
    let op = FrameGeometry::compute(&a).cotton_operator(&a);
    assert_eq!(nilpotency_degree(&op), NilpotencyDegree::Infinite);
}

#[test]
fn nilpotency_is_scale_invariant() {
    let j = Matrix3::new(0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0);
    for s in [1e-3, 1.0, 1e3] {
        assert_eq!(
            nilpotency_degree(&Operator3(j * s)),
            NilpotencyDegree::Finite(3),
            "{s}"
        );
        assert_eq!(
            nilpotency_degree(&Operator3(j * j * s)),
            NilpotencyDegree::Finite(2),
            "{s}"
        );
        assert_eq!(
            nilpotency_degree(&Operator3(Matrix3::identity() * s)),
            NilpotencyDegree::Infinite,
            "{s}"
        );
    }
}

#[test]
fn nilpotency_serializes_infinity_as_text() {
    assert_eq!(
        serde_json::to_string(&NilpotencyDegree::Infinite).unwrap(),
        "\"inf\""
    );
    assert_eq!(
        serde_json::to_string(&NilpotencyDegree::Finite(2)).unwrap(),
        "2"
    );
    let back: NilpotencyDegree = serde_json::from_str("\"inf\"").unwrap();
    assert_eq!(back, NilpotencyDegree::Infinite);
}

#[test]
fn derivation_check_examples() {
    let abelian = alg(Family::Ia, &[0.0, 0.0, 0.0]);
    assert!(derivation_check(
        &abelian,
        &Matrix3::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0)
    ));

    let a = alg(Family::Ia, &[1.0, 1.0, 1.0]);
    assert!(!derivation_check(&a, &(Matrix3::identity() * -0.5)));

    let a = alg(Family::Ia, &[0.0, 0.0, 1.0]);
    let c_hat = *FrameGeometry::compute(&a).cotton_operator(&a).mat();
    assert!(derivation_check(&a, &(c_hat + Matrix3::identity() * 2.0)));
}

#[test]
fn algebraic_examples() {
    let r = algebraic_solve(&alg(Family::Ia, &[0.0, 0.0, 2.0]));
    assert!(r.exists && !r.trivial);
    assert!((r.lambda + 16.0).abs() < 1e-9);

    let r = algebraic_solve(&alg(Family::Ib, &[0.0, 1.0, 1.0 / R2]));
    assert!(r.exists && !r.trivial);
    assert!((r.lambda - 2.0 * R2).abs() < 1e-9);

    let r = algebraic_solve(&alg(Family::II, &[1.0, 1.0]));
    assert!(!r.exists);
}

#[test]
fn lie_identity_examples() {
    let a = alg(Family::Ia, &[0.0, 0.0, 1.0]);
    let r = algebraic_solve(&a);
    assert!(r.exists && algebraic_lie_identity(&a, &r));

    let a = alg(Family::Ib, &[0.0, 1.0, -1.0 / R2]);
    let r = algebraic_solve(&a);
    assert!(r.exists);
    assert!((r.lambda + 2.0 * R2).abs() < 1e-9);
    assert!(algebraic_lie_identity(&a, &r));

    let a = alg(Family::Ia, &[0.0, 0.0, 0.0]);
    let r = AlgebraicSolitonResult {
        exists: true,
        lambda: 0.0,
        derivation: Matrix3::zeros(),
        trivial: true,
    };
    assert!(algebraic_lie_identity(&a, &r));
}

#[test]
fn kind_from_lambda() {
    assert_eq!(SolitonKind::from_lambda(2.0, 1.0), SolitonKind::Shrinking);
    assert_eq!(SolitonKind::from_lambda(0.0, 1.0), SolitonKind::Steady);
    assert_eq!(SolitonKind::from_lambda(-2.0, 1.0), SolitonKind::Expanding);
    assert_eq!(
        serde_json::to_string(&SolitonKind::Shrinking).unwrap(),
        "\"shrinking\""
    );
}

fn all_draws() -> Vec<FamilySpec> {
    Family::LORENTZIAN
        .iter()
        .flat_map(|f| random_specs(*f, 2000, 5, 2.0))
        .collect()
}

#[test]
fn reconstruction_and_killing_kernel() {
    for s in all_draws() {
        let a = build_algebra(&s).unwrap();
        let geo = FrameGeometry::compute(&a);
        let sys = assemble(&a, &geo.cotton2, &geo.connection);
        let f = solve(&sys);
        for k in &f.kernel_basis {
            let lie = lie_derivative_frame(&a, &geo.connection, &Vector3::from(*k));
            assert!(lie.max_abs() < 1e-10, "{s}: kernel vector not Killing");
        }
        if !f.exists {
            continue;
        }
        let p = Vector3::from(f.particular);
        let tol = 1e-8 * a.scale().max(1.0).powi(3);
        assert!(sys.residual(&p, f.lambda) < tol, "{s}: particular");
        for k in &f.kernel_basis {
            for t in [-1.0, 1.0, 10.0] {
                let x = p + Vector3::from(*k) * t;
                assert!(
                    sys.residual(&x, f.lambda) < tol,
                    "{s}: particular + {t}·kernel"
                );
            }
        }
    }
}

#[test]
fn solvability_matches_nilpotency_and_triviality() {
    let rows = scan(&all_draws()).unwrap();
    let summary = ScanSummary::from_rows(&rows, 0);
    assert_eq!(summary.nilpotency_disagreements, 0, "{summary:?}");
    assert_eq!(summary.unexpected_solitons, 0, "{summary:?}");
    assert_eq!(summary.missed_solitons, 0, "{summary:?}");
    for row in &rows {
        if matches!(
            row.spec.family,
            Family::Ia | Family::Ib | Family::IV1 | Family::IV2 | Family::IV3
        ) {
            assert!(!row.soliton_exists || row.soliton_trivial, "{}", row.spec);
        }
    }
    assert!(summary.nontrivial_solitons > 0);
}

#[test]
fn algebraic_results_are_exhaustive_and_satisfy_lie_identity() {
    let rows = scan(&all_draws()).unwrap();
    let summary = ScanSummary::from_rows(&rows, 0);
    assert_eq!(summary.unexpected_algebraic, 0, "{summary:?}");
    assert_eq!(summary.missed_algebraic, 0, "{summary:?}");
    assert_eq!(summary.algebraic_lambda_mismatches, 0, "{summary:?}");
    assert_eq!(summary.algebraic_identity_failures, 0, "{summary:?}");
    assert!(summary.algebraic_nontrivial > 0);
    for row in rows.iter().filter(|r| r.nontrivial_algebraic()) {
        assert!(expects_algebraic_soliton(&row.spec).is_some());
    }
}
