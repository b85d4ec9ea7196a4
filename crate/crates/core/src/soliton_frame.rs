//! Left-invariant Cotton solitons `L_X g + C = λ g` and algebraic Cotton
//! solitons `Ĉ = λ Id + D`, `D` a derivation.
//!
//! For a left-invariant `X` the soliton equation is six linear equations
//! (one per independent symmetric component) in the four unknowns
//! `x_1, x_2, x_3, λ`. The solver works with singular values so that
//! inconsistency, non-uniqueness and Killing directions all fall out of one
//! rank analysis.

use nalgebra::{DMatrix, DVector, Matrix3, SMatrix, SVector, Vector3};
use serde::{Deserialize, Serialize};

use crate::catalog::cotton_negligible;
use crate::frame_geometry::{
    lie_derivative_frame, Connection, FrameGeometry, LieAlgebra3, Operator3, SymTensor2,
};

/// Relative singular value cut-off for rank decisions.
pub const RANK_TOL: f64 = 1e-10;
/// Residual (relative to the system scale) above which no solution exists.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Rows follow the component order (11, 12, 13, 22, 23, 33); columns are
/// `x_1, x_2, x_3, λ`. Row `r` reads `(L_X g)_r − λ g_r = −C_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonSystem {
    pub matrix: SMatrix<f64, 6, 4>,
    pub rhs: SVector<f64, 6>,
    /// Size of the underlying structure constants, for the triviality test.
    pub scale: f64,
}

impl SolitonSystem {
    /// `max |A z − b|` for `z = (x, λ)`.
    pub fn residual(&self, x: &Vector3<f64>, lambda: f64) -> f64 {
        let z = SVector::<f64, 4>::new(x[0], x[1], x[2], lambda);
        (self.matrix * z - self.rhs).amax()
    }
}

pub fn assemble(alg: &LieAlgebra3, cotton2: &SymTensor2, conn: &Connection) -> SolitonSystem {
    let mut matrix = SMatrix::<f64, 6, 4>::zeros();
    for j in 0..3 {
        let lie = lie_derivative_frame(alg, conn, &Vector3::ith(j, 1.0)).upper();
        for (r, v) in lie.iter().enumerate() {
            matrix[(r, j)] = *v;
        }
    }
    let g = SymTensor2(*alg.gram()).upper();
    let c = cotton2.upper();
    let mut rhs = SVector::<f64, 6>::zeros();
    for r in 0..6 {
        matrix[(r, 3)] = -g[r];
        rhs[r] = -c[r];
    }
    SolitonSystem {
        matrix,
        rhs,
        scale: alg.scale(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolitonKind {
    Shrinking,
    Steady,
    Expanding,
}

impl SolitonKind {
    pub fn from_lambda(lambda: f64, scale: f64) -> Self {
        let tol = 1e-9 * scale.max(1.0).powi(3);
        if lambda > tol {
            SolitonKind::Shrinking
        } else if lambda < -tol {
            SolitonKind::Expanding
        } else {
            SolitonKind::Steady
        }
    }
}

/// Solution set `{particular + span(kernel_basis)}` of the soliton system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolitonFamily {
    pub exists: bool,
    pub lambda: f64,
    pub particular: [f64; 3],
    /// Orthonormal Killing directions; adding any combination keeps `λ`.
    pub kernel_basis: Vec<[f64; 3]>,
    pub classification: Option<SolitonKind>,
    /// `C ≡ 0`.
    pub trivial: bool,
    /// Solutions with two different `λ` exist (a non-Killing homothety).
    pub homothetic_degenerate: bool,
    pub residual: f64,
}

/// Orthonormal basis of `{z : A z ≈ 0}`.
fn null_space(a: DMatrix<f64>) -> Vec<DVector<f64>> {
    let cols = a.ncols();
    // pad to at least square so that V is complete
    let rows = a.nrows().max(cols);
    let padded = a.resize(rows, cols, 0.0);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let cut = RANK_TOL * svd.singular_values.max().max(f64::MIN_POSITIVE);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= cut)
        .map(|(k, _)| v_t.row(k).transpose())
        .collect()
}

/// Rank-revealing least-squares solve of the soliton system.
pub fn solve(system: &SolitonSystem) -> SolitonFamily {
    let a = &system.matrix;
    let b = &system.rhs;
    let svd = a.svd(true, true);
    let sigma_max = svd.singular_values.max();
    let cut = RANK_TOL * sigma_max;
    let z = svd
        .solve(b, cut)
        .expect("both singular vector sets were computed");
    let residual = (a * z - b).norm();
    let trivial = cotton_negligible(b.amax(), system.scale);
    // relative to |C|, so the decision does not depend on the overall size
    // of the structure constants
    let exists = trivial || residual <= RESIDUAL_TOL * b.norm();

    let homothetic_degenerate = null_space(DMatrix::from_column_slice(6, 4, a.as_slice()))
        .iter()
        .any(|v| v[3].abs() > 1e-8);

    let a_x = DMatrix::from_column_slice(6, 3, &a.as_slice()[..18]);
    let kernel: Vec<Vector3<f64>> = null_space(a_x)
        .into_iter()
        .map(|v| Vector3::new(v[0], v[1], v[2]))
        .collect();

    let mut particular = Vector3::new(z[0], z[1], z[2]);
    for k in &kernel {
        particular -= k * k.dot(&particular);
    }
    let lambda = z[3];
    SolitonFamily {
        exists,
        lambda,
        particular: particular.into(),
        kernel_basis: kernel.iter().map(|k| (*k).into()).collect(),
        classification: exists.then(|| SolitonKind::from_lambda(lambda, system.scale)),
        trivial,
        homothetic_degenerate,
        residual,
    }
}

/// Geometry, assembly and solve in one call.
pub fn solve_algebra(alg: &LieAlgebra3) -> SolitonFamily {
    let geo = FrameGeometry::compute(alg);
    solve(&assemble(alg, &geo.cotton2, &geo.connection))
}

/// Degree of nilpotency of an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NilpotencyDegree {
    /// Smallest `k` with `Aᵏ ≈ 0`; `0` means `A ≈ 0` itself.
    Finite(u32),
    /// `A³ ≠ 0`, so `A` is not nilpotent.
    #[serde(with = "infinite")]
    Infinite,
}

mod infinite {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("inf")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let text = String::deserialize(d)?;
        if text == "inf" {
            Ok(())
        } else {
            Err(serde::de::Error::custom("expected \"inf\""))
        }
    }
}

impl NilpotencyDegree {
    pub fn is_nilpotent(self) -> bool {
        matches!(self, NilpotencyDegree::Finite(_))
    }
}

impl std::fmt::Display for NilpotencyDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NilpotencyDegree::Finite(k) => write!(f, "{k}"),
            NilpotencyDegree::Infinite => f.write_str("inf"),
        }
    }
}

/// Relative tolerance of the nilpotency test.
pub const NILPOTENCY_TOL: f64 = 1e-9;

/// `A` counts as zero when `‖A‖_F ≤ 1e-9`; otherwise `Aᵏ` counts as zero
/// when `‖Aᵏ‖_F ≤ 1e-9 · ‖A‖_Fᵏ`.
pub fn nilpotency_degree(op: &Operator3) -> NilpotencyDegree {
    nilpotency_degree_with_floor(op, NILPOTENCY_TOL)
}

/// As [`nilpotency_degree`] with an explicit absolute floor below which the
/// operator itself counts as zero.
pub fn nilpotency_degree_with_floor(op: &Operator3, zero_floor: f64) -> NilpotencyDegree {
    let a = op.mat();
    let norm = a.norm();
    if norm <= zero_floor {
        return NilpotencyDegree::Finite(0);
    }
    let mut power = *a;
    for k in 2..=3 {
        power *= a;
        if power.norm() <= NILPOTENCY_TOL * norm.powi(k) {
            return NilpotencyDegree::Finite(k as u32);
        }
    }
    NilpotencyDegree::Infinite
}

/// Nilpotency degree of the Cotton operator, with degree 0 decided by the
/// same triviality threshold the soliton solver uses.
pub fn cotton_nilpotency(alg: &LieAlgebra3, geo: &FrameGeometry) -> NilpotencyDegree {
    if cotton_negligible(geo.cotton2.max_abs(), alg.scale()) {
        NilpotencyDegree::Finite(0)
    } else {
        nilpotency_degree_with_floor(&geo.cotton_operator(alg), 0.0)
    }
}

/// Largest component of `D[e_i,e_j] − [De_i,e_j] − [e_i,De_j]`.
pub fn derivation_defect(alg: &LieAlgebra3, d: &Matrix3<f64>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let (ei, ej) = (Vector3::ith(i, 1.0), Vector3::ith(j, 1.0));
            let lhs = d * alg.bracket(&ei, &ej);
            let rhs = alg.bracket(&(d * ei), &ej) + alg.bracket(&ei, &(d * ej));
            worst = worst.max((lhs - rhs).amax());
        }
    }
    worst
}

/// `D[X,Y] = [DX,Y] + [X,DY]` on all basis pairs to `1e-9` relative to the
/// size of `D` times the size of the brackets.
pub fn derivation_check(alg: &LieAlgebra3, d: &Matrix3<f64>) -> bool {
    derivation_defect(alg, d) <= DERIVATION_TOL * d.amax() * alg.scale()
}

pub const DERIVATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicSolitonResult {
    pub exists: bool,
    pub lambda: f64,
    /// `D = Ĉ − λ Id`, columns are images of the frame vectors.
    pub derivation: Matrix3<f64>,
    /// `C ≡ 0`, in which case `D = −λ Id` and only `λ = 0` can work unless
    /// the algebra is abelian.
    pub trivial: bool,
}

/// The derivation condition on `Ĉ − λ Id` is affine in `λ`:
/// `(Ĉ[e_i,e_j] − [Ĉe_i,e_j] − [e_i,Ĉe_j]) + λ [e_i,e_j] = 0`. Solve it in
/// the least-squares sense and keep the answer if it is exact.
pub fn algebraic_solve(alg: &LieAlgebra3) -> AlgebraicSolitonResult {
    let geo = FrameGeometry::compute(alg);
    let c_hat = *geo.cotton_operator(alg).mat();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let (ei, ej) = (Vector3::ith(i, 1.0), Vector3::ith(j, 1.0));
            let br = alg.bracket(&ei, &ej);
            let a = c_hat * br - alg.bracket(&(c_hat * ei), &ej) - alg.bracket(&ei, &(c_hat * ej));
            num += a.dot(&br);
            den += br.dot(&br);
        }
    }
    let lambda = if den > 0.0 { -num / den } else { 0.0 };
    let derivation = c_hat - Matrix3::identity() * lambda;
    AlgebraicSolitonResult {
        exists: derivation_check(alg, &derivation),
        lambda,
        derivation,
        trivial: cotton_negligible(geo.cotton2.max_abs(), alg.scale()),
    }
}

/// Checks `C(e_i,e_j) = λ g(e_i,e_j) + ½(g(De_i,e_j) + g(e_i,De_j))`.
pub fn algebraic_lie_identity(alg: &LieAlgebra3, result: &AlgebraicSolitonResult) -> bool {
    let geo = FrameGeometry::compute(alg);
    let g = alg.gram();
    let d = &result.derivation;
    let sym = (d.transpose() * g + g * d) * 0.5;
    let rhs = g * result.lambda + sym;
    let tol = 1e-9 * alg.scale().max(1.0).powi(3);
    (geo.cotton2.0 - rhs).amax() <= tol
}
