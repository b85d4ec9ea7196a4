//! Independent checks on the chart pipeline: finite differences against the
//! jets, a cross-check against the frame pipeline, and a least-squares fit
//! of affine soliton fields.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::examples::NamedExample;
use super::geometry::{lie_derivative_chart, ChartGeometry, ChartMetric, ChartVectorField};
use super::jet::MULTI_INDICES;
use crate::error::{Error, Result};
use crate::frame_geometry::{FrameGeometry, LieAlgebra3};
use crate::soliton_frame::RANK_TOL;

pub const DEFAULT_SEED: u64 = 42;
pub const SAMPLE_BOX: f64 = 2.0;
/// Points with `|det g|` below this are redrawn.
pub const MIN_SAMPLE_DET: f64 = 1e-9;
pub const CROSSCHECK_TOL: f64 = 1e-6;
/// Relative error bounds for derivative orders 1, 2, 3.
pub const FD_BOUNDS: [f64; 3] = [1e-8, 1e-6, 1e-3];
/// Finite difference steps for derivative orders 1, 2, 3.
pub const FD_STEPS: [f64; 3] = [1e-3, 1e-3, 1e-2];

/// `n` points uniform in `[-2,2]³`, reproducible from `seed`.
pub fn sample_points(metric: &ChartMetric, n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = [0; 3].map(|_| rng.random_range(-SAMPLE_BOX..=SAMPLE_BOX));
        if metric.value(p).determinant().abs() >= MIN_SAMPLE_DET {
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdCheck {
    pub component: (usize, usize),
    pub alpha: [u8; 3],
    pub jet: f64,
    pub finite_difference: f64,
    /// `|jet − fd| / max(1, |jet|)`.
    pub rel_error: f64,
    pub bound: f64,
}

impl FdCheck {
    pub fn pass(&self) -> bool {
        self.rel_error <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdReport {
    pub point: [f64; 3],
    pub checks: Vec<FdCheck>,
    /// Worst relative error for orders 1, 2, 3.
    pub worst: [f64; 3],
    pub pass: bool,
}

/// 1D stencil `(offsets, weights)` for a derivative of order `k`, to be
/// scaled by `h^{-k}`. Orders 1–2 of the total use fourth-order accurate
/// stencils, order 3 the standard second-order ones.
fn stencil(k: u8, total: u8) -> (&'static [f64], &'static [f64]) {
    match (k, total) {
        (0, _) => (&[0.0], &[1.0]),
        (1, 1 | 2) => (
            &[-2.0, -1.0, 1.0, 2.0],
            &[1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0],
        ),
        (2, 2) => (
            &[-2.0, -1.0, 0.0, 1.0, 2.0],
            &[
                -1.0 / 12.0,
                16.0 / 12.0,
                -30.0 / 12.0,
                16.0 / 12.0,
                -1.0 / 12.0,
            ],
        ),
        (1, _) => (&[-1.0, 1.0], &[-0.5, 0.5]),
        (2, _) => (&[-1.0, 0.0, 1.0], &[1.0, -2.0, 1.0]),
        _ => (&[-2.0, -1.0, 1.0, 2.0], &[-0.5, 1.0, -1.0, 0.5]),
    }
}

fn finite_difference(metric: &ChartMetric, p: [f64; 3], alpha: [u8; 3]) -> Matrix3<f64> {
    let total = alpha.iter().sum::<u8>();
    let h = FD_STEPS[total as usize - 1];
    let [sx, sy, sz] = alpha.map(|k| stencil(k, total));
    let mut acc = Matrix3::zeros();
    for (ox, wx) in sx.0.iter().zip(sx.1) {
        for (oy, wy) in sy.0.iter().zip(sy.1) {
            for (oz, wz) in sz.0.iter().zip(sz.1) {
                let q = [p[0] + ox * h, p[1] + oy * h, p[2] + oz * h];
                acc += metric.value(q) * (wx * wy * wz);
            }
        }
    }
    acc / h.powi(total as i32)
}

/// Compares every jet derivative of order 1–3 of every metric component at
/// `p` with central finite differences of the closed-form values.
pub fn fd_validate(metric: &ChartMetric, p: [f64; 3]) -> FdReport {
    let jets = metric.jets(p);
    let mut checks = Vec::new();
    let mut worst = [0.0_f64; 3];
    for alpha in MULTI_INDICES.iter().skip(1) {
        let order = alpha.iter().sum::<u8>() as usize;
        let fd = finite_difference(metric, p, *alpha);
        for i in 0..3 {
            for j in i..3 {
                let jet = jets[i][j].derivative(*alpha);
                let rel_error = (jet - fd[(i, j)]).abs() / jet.abs().max(1.0);
                worst[order - 1] = worst[order - 1].max(rel_error);
                checks.push(FdCheck {
                    component: (i, j),
                    alpha: *alpha,
                    jet,
                    finite_difference: fd[(i, j)],
                    rel_error,
                    bound: FD_BOUNDS[order - 1],
                });
            }
        }
    }
    let pass = checks.iter().all(FdCheck::pass);
    FdReport {
        point: p,
        checks,
        worst,
        pass,
    }
}

/// The left-invariant frame `E_a` dual to the registered coframe, and the
/// Lie algebra it spans, both at `p`.
///
/// Structure constants follow from `dθ^a(E_b,E_c) = −θ^a([E_b,E_c])`.
pub fn frame_algebra(example: NamedExample, p: [f64; 3]) -> Result<(Matrix3<f64>, LieAlgebra3)> {
    let theta = example.coframe_jets(p);
    let t = Matrix3::from_fn(|a, i| theta[a][i].value());
    let frame = t.try_inverse().ok_or(Error::DegenerateMetric {
        det: 0.0,
        threshold: crate::frame_geometry::DEGENERATE_DET,
    })?;
    let mut structure = [[[0.0; 3]; 3]; 3];
    for a in 0..3 {
        // (dθ^a)_ij = ∂_i θ^a_j − ∂_j θ^a_i
        let d = Matrix3::from_fn(|i, j| {
            let e = |k: usize| {
                let mut m = [0u8; 3];
                m[k] = 1;
                m
            };
            theta[a][j].derivative(e(i)) - theta[a][i].derivative(e(j))
        });
        let d_frame = frame.transpose() * d * frame;
        for b in 0..3 {
            for c in 0..3 {
                structure[b][c][a] = -d_frame[(b, c)];
            }
        }
    }
    let alg = LieAlgebra3::new(structure, example.coframe_gram())?;
    Ok((frame, alg))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crosscheck {
    pub metric: NamedExample,
    pub point: [f64; 3],
    /// `sign det(E_1, E_2, E_3)`; the Hodge dual depends on orientation.
    pub orientation: f64,
    pub frame_cotton: [[f64; 3]; 3],
    pub chart_cotton_in_frame: [[f64; 3]; 3],
    pub max_diff: f64,
    pub pass: bool,
}

fn rows(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[(i, j)]))
}

/// Frame components of the chart Cotton tensor against the Cotton tensor of
/// the frame algebra computed by the left-invariant pipeline.
pub fn frame_chart_crosscheck(example: NamedExample, p: [f64; 3]) -> Result<Crosscheck> {
    let (frame, alg) = frame_algebra(example, p)?;
    let chart = ChartGeometry::compute(&example.metric(), p)?;
    let orientation = frame.determinant().signum();
    let chart_in_frame = frame.transpose() * chart.cotton2 * frame * orientation;
    let frame_cotton = FrameGeometry::compute(&alg).cotton2.0;
    let max_diff = (chart_in_frame - frame_cotton).amax();
    Ok(Crosscheck {
        metric: example,
        point: p,
        orientation,
        frame_cotton: rows(&frame_cotton),
        chart_cotton_in_frame: rows(&chart_in_frame),
        max_diff,
        pass: max_diff < CROSSCHECK_TOL,
    })
}

/// Least-squares affine soliton `X(p) = A p + b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineSolitonFit {
    pub linear: [[f64; 3]; 3],
    pub translation: [f64; 3],
    pub lambda: f64,
    /// Max over the fitting points of `|L_X g + C − λ g|`.
    pub residual: f64,
}

impl AffineSolitonFit {
    pub fn field(&self) -> ChartVectorField {
        let a = Matrix3::from_fn(|i, j| self.linear[i][j]);
        ChartVectorField::affine(a, Vector3::from(self.translation))
    }
}

/// Solves `L_X g + C = λ g` at `points` for affine `X` and constant `λ`.
/// The minimum-norm solution is returned, so Killing components that the
/// points cannot pin down are set to zero.
pub fn fit_affine_soliton(metric: &ChartMetric, points: &[[f64; 3]]) -> Result<AffineSolitonFit> {
    if points.is_empty() {
        return Err(Error::NoPoints);
    }
    let basis: Vec<ChartVectorField> = (0..12)
        .map(|u| {
            let mut a = Matrix3::zeros();
            let mut b = Vector3::zeros();
            if u < 9 {
                a[(u / 3, u % 3)] = 1.0;
            } else {
                b[u - 9] = 1.0;
            }
            ChartVectorField::affine(a, b)
        })
        .collect();
    let n = points.len();
    let mut lhs = DMatrix::zeros(6 * n, 13);
    let mut rhs = DVector::zeros(6 * n);
    let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    for (k, p) in points.iter().enumerate() {
        let geo = ChartGeometry::compute(metric, *p)?;
        let lies: Vec<Matrix3<f64>> = basis
            .iter()
            .map(|f| lie_derivative_chart(metric, f, *p))
            .collect();
        for (r, (i, j)) in pairs.iter().enumerate() {
            let row = 6 * k + r;
            for (u, l) in lies.iter().enumerate() {
                lhs[(row, u)] = l[(*i, *j)];
            }
            lhs[(row, 12)] = -geo.metric[(*i, *j)];
            rhs[row] = -geo.cotton2[(*i, *j)];
        }
    }
    let svd = lhs.svd(true, true);
    let cut = RANK_TOL * svd.singular_values.max();
    let z = svd
        .solve(&rhs, cut)
        .expect("both singular vector sets were computed");
    let linear = [0, 1, 2].map(|i| [0, 1, 2].map(|j| z[3 * i + j]));
    let mut fit = AffineSolitonFit {
        linear,
        translation: [z[9], z[10], z[11]],
        lambda: z[12],
        residual: 0.0,
    };
    fit.residual = super::geometry::soliton_residual(metric, &fit.field(), fit.lambda, points)?;
    Ok(fit)
}
