//! Per-spec evaluation rows, parameter scans, and the predicates that say
//! where non-trivial solitons are expected.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    build_algebra, cotton_negligible, lcf_numeric, random_spec, Family, FamilySpec, RELATION_TOL,
};
use crate::error::Result;
use crate::frame_geometry::FrameGeometry;
use crate::soliton_frame::{
    algebraic_lie_identity, algebraic_solve, assemble, cotton_nilpotency, solve, NilpotencyDegree,
    SolitonKind,
};

/// Everything computed for one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub index: usize,
    pub spec: FamilySpec,
    /// `max |C_ij|`.
    pub cotton_norm: f64,
    pub scalar_curvature: f64,
    pub lcf: bool,
    pub nilpotency: NilpotencyDegree,
    pub soliton_exists: bool,
    pub soliton_trivial: bool,
    pub lambda: Option<f64>,
    pub classification: Option<SolitonKind>,
    pub particular: Option<[f64; 3]>,
    pub kernel_dim: usize,
    pub homothetic_degenerate: bool,
    pub algebraic_exists: bool,
    pub algebraic_trivial: bool,
    pub algebraic_lambda: Option<f64>,
    /// `C = λ g + ½(Dᵀg + gD)` for the algebraic soliton, when one exists.
    pub algebraic_identity: Option<bool>,
}

impl ScanRow {
    pub fn nontrivial_soliton(&self) -> bool {
        self.soliton_exists && !self.soliton_trivial
    }

    pub fn nontrivial_algebraic(&self) -> bool {
        self.algebraic_exists && !self.algebraic_trivial
    }
}

pub fn evaluate(index: usize, spec: &FamilySpec) -> Result<ScanRow> {
    let alg = build_algebra(spec)?;
    let geo = FrameGeometry::compute(&alg);
    let fam = solve(&assemble(&alg, &geo.cotton2, &geo.connection));
    let alg_res = algebraic_solve(&alg);
    let identity = alg_res
        .exists
        .then(|| algebraic_lie_identity(&alg, &alg_res));
    Ok(ScanRow {
        index,
        spec: spec.clone(),
        cotton_norm: geo.cotton2.max_abs(),
        scalar_curvature: geo.scalar,
        lcf: lcf_numeric(&alg),
        nilpotency: cotton_nilpotency(&alg, &geo),
        soliton_exists: fam.exists,
        soliton_trivial: cotton_negligible(geo.cotton2.max_abs(), alg.scale()),
        lambda: fam.exists.then_some(fam.lambda),
        classification: fam.classification,
        particular: fam.exists.then_some(fam.particular),
        kernel_dim: fam.kernel_basis.len(),
        homothetic_degenerate: fam.homothetic_degenerate,
        algebraic_exists: alg_res.exists,
        algebraic_trivial: alg_res.trivial,
        algebraic_lambda: alg_res.exists.then_some(alg_res.lambda),
        algebraic_identity: identity,
    })
}

/// Evaluates all specs in parallel; output order follows input order.
pub fn scan(specs: &[FamilySpec]) -> Result<Vec<ScanRow>> {
    specs
        .par_iter()
        .enumerate()
        .map(|(i, s)| evaluate(i, s))
        .collect()
}

/// `n` reproducible random draws for `family` with parameters in
/// `[-range, range]`.
pub fn random_specs(family: Family, n: usize, seed: u64, range: f64) -> Vec<FamilySpec> {
    let salt = Family::ALL.iter().position(|f| *f == family).unwrap_or(0) as u64;
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed.wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    (0..n)
        .map(|_| random_spec(family, range, &mut rng))
        .collect()
}

fn near(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= RELATION_TOL * scale
}

/// Parameter points carrying a non-trivial left-invariant soliton:
/// Type II with `α = β ≠ 0` or `α = 0 ≠ β`, and Type III with `α ≠ 0`.
pub fn expects_nontrivial_soliton(spec: &FamilySpec) -> bool {
    let s = spec.scale();
    let v = spec.values().unwrap_or_default();
    match spec.family {
        Family::II => {
            let (a, b) = (v[0], v[1]);
            (near(a, b, s) && !near(b, 0.0, s)) || (near(a, 0.0, s) && !near(b, 0.0, s))
        }
        Family::III => !near(v[0], 0.0, s),
        _ => false,
    }
}

/// Parameter points carrying a non-trivial algebraic soliton, with the
/// expected `λ`: Type Ia (resp. its Riemannian analogue) with exactly one
/// non-zero constant `v`, `λ = −2v³` (resp. `2v³`), and Type Ib with
/// `α = 0`, `γ = εβ/√2`, `λ = 2ε√2 β³`.
pub fn expects_algebraic_soliton(spec: &FamilySpec) -> Option<f64> {
    let s = spec.scale();
    let v = spec.values().unwrap_or_default();
    let zero = |x: f64| near(x, 0.0, s);
    match spec.family {
        Family::Ia | Family::IaRiemannian => {
            let nonzero: Vec<usize> = (0..3).filter(|&i| !zero(v[i])).collect();
            let sign = if spec.family == Family::Ia { -2.0 } else { 2.0 };
            match nonzero.as_slice() {
                [i] => Some(sign * v[*i].powi(3)),
                _ => None,
            }
        }
        Family::Ib => {
            let (a, b, g) = (v[0], v[1], v[2]);
            let r = b * std::f64::consts::FRAC_1_SQRT_2;
            if !zero(a) {
                None
            } else if near(g, r, s) {
                Some(2.0 * std::f64::consts::SQRT_2 * b.powi(3))
            } else if near(g, -r, s) {
                Some(-2.0 * std::f64::consts::SQRT_2 * b.powi(3))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Counters over a scan; every `*_mismatch`/`unexpected`/`missed` counter
/// is zero when the rows agree with the expected soliton loci.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub rows: usize,
    pub skipped: usize,
    pub lcf: usize,
    pub nontrivial_solitons: usize,
    pub unexpected_solitons: usize,
    pub missed_solitons: usize,
    /// Rows where solvability and nilpotency of `Ĉ` disagree.
    pub nilpotency_disagreements: usize,
    pub algebraic_nontrivial: usize,
    pub unexpected_algebraic: usize,
    pub missed_algebraic: usize,
    pub algebraic_lambda_mismatches: usize,
    pub algebraic_identity_failures: usize,
}

impl ScanSummary {
    pub fn from_rows(rows: &[ScanRow], skipped: usize) -> Self {
        let mut out = ScanSummary {
            rows: rows.len(),
            skipped,
            ..Default::default()
        };
        for row in rows {
            out.lcf += row.lcf as usize;
            let found = row.nontrivial_soliton();
            let expected = expects_nontrivial_soliton(&row.spec);
            out.nontrivial_solitons += found as usize;
            out.unexpected_solitons += (found && !expected) as usize;
            out.missed_solitons += (expected && !found) as usize;
            if row.soliton_exists != row.nilpotency.is_nilpotent() {
                out.nilpotency_disagreements += 1;
            }
            let alg_found = row.nontrivial_algebraic();
            let alg_expected = expects_algebraic_soliton(&row.spec);
            out.algebraic_nontrivial += alg_found as usize;
            out.unexpected_algebraic += (alg_found && alg_expected.is_none()) as usize;
            out.missed_algebraic += (alg_expected.is_some() && !alg_found) as usize;
            if let (true, Some(want), Some(got)) = (alg_found, alg_expected, row.algebraic_lambda) {
                let tol = 1e-9 * row.spec.scale().powi(3);
                out.algebraic_lambda_mismatches += ((got - want).abs() > tol) as usize;
            }
            out.algebraic_identity_failures += (row.algebraic_identity == Some(false)) as usize;
        }
        out
    }

    pub fn pass(&self) -> bool {
        self.unexpected_solitons == 0
            && self.missed_solitons == 0
            && self.nilpotency_disagreements == 0
            && self.unexpected_algebraic == 0
            && self.missed_algebraic == 0
            && self.algebraic_lambda_mismatches == 0
            && self.algebraic_identity_failures == 0
    }
}
