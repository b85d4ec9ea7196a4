//! Coordinate-chart curvature and Cotton tensor of a metric given as a jet
//! program.
//!
//! Orders: `g` is exact to order 3, so `Γ` is exact to order 2, Ricci and
//! Schouten to order 1 and the Cotton tensor to order 0, which is exactly
//! what a point evaluation needs.

use std::fmt;
use std::sync::Arc;

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;

use super::jet::Jet3;
use crate::error::{Error, Result};
use crate::frame_geometry::{hodge_dual, Tensor3, Tensor4, DEGENERATE_DET};

pub type JetMatrix = [[Jet3; 3]; 3];

type MetricProgram = dyn Fn(&[Jet3; 3]) -> JetMatrix + Send + Sync;
type FieldProgram = dyn Fn(&[Jet3; 3]) -> [Jet3; 3] + Send + Sync;

const E: [[u8; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// A metric on a coordinate chart, evaluated by running its program on the
/// coordinate jets at a point.
#[derive(Clone)]
pub struct ChartMetric {
    name: String,
    program: Arc<MetricProgram>,
}

impl ChartMetric {
    pub fn new(
        name: impl Into<String>,
        program: impl Fn(&[Jet3; 3]) -> JetMatrix + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            program: Arc::new(program),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn jets(&self, p: [f64; 3]) -> JetMatrix {
        (self.program)(&Jet3::coordinates(p))
    }

    pub fn value(&self, p: [f64; 3]) -> Matrix3<f64> {
        let g = self.jets(p);
        Matrix3::from_fn(|i, j| g[i][j].value())
    }
}

impl fmt::Debug for ChartMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartMetric")
            .field("name", &self.name)
            .finish()
    }
}

/// `X = A ∂x + B ∂y + C ∂z` as a jet program.
#[derive(Clone)]
pub struct ChartVectorField {
    program: Arc<FieldProgram>,
}

impl ChartVectorField {
    pub fn new(program: impl Fn(&[Jet3; 3]) -> [Jet3; 3] + Send + Sync + 'static) -> Self {
        Self {
            program: Arc::new(program),
        }
    }

    pub fn zero() -> Self {
        Self::new(|_| [Jet3::zero(); 3])
    }

    /// `X(p) = A p + b`.
    pub fn affine(a: Matrix3<f64>, b: Vector3<f64>) -> Self {
        Self::new(move |c| [0, 1, 2].map(|i| (0..3).map(|j| c[j] * a[(i, j)]).sum::<Jet3>() + b[i]))
    }

    pub fn jets(&self, p: [f64; 3]) -> [Jet3; 3] {
        (self.program)(&Jet3::coordinates(p))
    }

    pub fn value(&self, p: [f64; 3]) -> Vector3<f64> {
        let x = self.jets(p);
        Vector3::new(x[0].value(), x[1].value(), x[2].value())
    }
}

impl fmt::Debug for ChartVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ChartVectorField")
    }
}

fn values(m: &JetMatrix) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m[i][j].value())
}

fn check_metric(g: &JetMatrix) -> Result<Matrix3<f64>> {
    let v = values(g);
    let det = v.determinant();
    if det.is_nan() || det.abs() < DEGENERATE_DET {
        return Err(Error::DegenerateMetric {
            det,
            threshold: DEGENERATE_DET,
        });
    }
    for i in 0..3 {
        for j in 0..i {
            let diff = (v[(i, j)] - v[(j, i)]).abs();
            if diff > 1e-12 * v.amax().max(1.0) {
                return Err(Error::AsymmetricGram {
                    row: i,
                    col: j,
                    diff,
                });
            }
        }
    }
    Ok(v)
}

/// Inverse metric jets via the adjugate.
fn inverse(g: &JetMatrix) -> Result<JetMatrix> {
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0]
    };
    let det = g[0][0] * cof(0, 0) + g[0][1] * cof(0, 1) + g[0][2] * cof(0, 2);
    let inv_det = det.recip()?;
    let mut out = [[Jet3::zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = cof(j, i) * inv_det;
        }
    }
    Ok(out)
}

/// Everything the chart pipeline computes at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartGeometry {
    pub point: [f64; 3],
    pub metric: Matrix3<f64>,
    pub metric_inverse: Matrix3<f64>,
    /// `christoffel[i][j][k] = Γ^k_ij`.
    pub christoffel: Tensor3,
    /// `riemann[l][k][i][j]`: coefficient of `∂_l` in
    /// `(∇_i ∇_j − ∇_j ∇_i) ∂_k`.
    pub riemann: Tensor4,
    pub ricci: Matrix3<f64>,
    pub scalar: f64,
    pub schouten: Matrix3<f64>,
    /// `cotton3[i][j][k] = (∇_i S)_jk − (∇_j S)_ik`.
    pub cotton3: Tensor3,
    pub cotton2: Matrix3<f64>,
}

impl ChartGeometry {
    pub fn compute(metric: &ChartMetric, p: [f64; 3]) -> Result<Self> {
        let g = metric.jets(p);
        let g_val = check_metric(&g)?;
        let gi = inverse(&g)?;
        let dg: [JetMatrix; 3] = [0, 1, 2].map(|l| g.map(|row| row.map(|c| c.partial(l))));

        let mut gam = [[[Jet3::zero(); 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    gam[i][j][k] = (0..3)
                        .map(|l| gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]))
                        .sum::<Jet3>()
                        * 0.5;
                }
            }
        }
        let dgam: [[[[Jet3; 3]; 3]; 3]; 3] =
            [0, 1, 2].map(|a| gam.map(|plane| plane.map(|row| row.map(|c| c.partial(a)))));

        // R^l_{k i j} = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik
        let riemann_jet = |l: usize, k: usize, i: usize, j: usize| -> Jet3 {
            let quad: Jet3 = (0..3)
                .map(|m| gam[i][m][l] * gam[j][k][m] - gam[j][m][l] * gam[i][k][m])
                .sum();
            dgam[i][j][k][l] - dgam[j][i][k][l] + quad
        };
        let mut riemann = [[[[0.0; 3]; 3]; 3]; 3];
        let mut ricci = [[Jet3::zero(); 3]; 3];
        for l in 0..3 {
            for k in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        let r = riemann_jet(l, k, i, j);
                        riemann[l][k][i][j] = r.value();
                        if l == i {
                            // ρ_jk = Σ_i R^i_{k i j}
                            ricci[j][k] += r;
                        }
                    }
                }
            }
        }
        let tau: Jet3 = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| gi[i][j] * ricci[i][j])
            .sum();
        let mut schouten = [[Jet3::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                schouten[i][j] = ricci[i][j] - tau * g[i][j] * 0.25;
            }
        }
        let mut nabla_s = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let corr: f64 = (0..3)
                        .map(|m| {
                            gam[i][j][m].value() * schouten[m][k].value()
                                + gam[i][k][m].value() * schouten[j][m].value()
                        })
                        .sum();
                    nabla_s[i][j][k] = schouten[j][k].derivative(E[i]) - corr;
                }
            }
        }
        let mut cotton3 = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    cotton3[i][j][k] = nabla_s[i][j][k] - nabla_s[j][i][k];
                }
            }
        }
        let cotton2 = hodge_dual(&cotton3, &g_val)?;
        Ok(Self {
            point: p,
            metric: g_val,
            metric_inverse: values(&gi),
            christoffel: gam.map(|plane| plane.map(|row| row.map(|c| c.value()))),
            riemann,
            ricci: values(&ricci),
            scalar: tau.value(),
            schouten: values(&schouten),
            cotton3,
            cotton2,
        })
    }

    /// `Ĉ = g⁻¹ C`; column `i` holds the image of `∂_i`.
    pub fn cotton_operator(&self) -> Matrix3<f64> {
        self.metric_inverse * self.cotton2
    }

    pub fn ricci_operator(&self) -> Matrix3<f64> {
        self.metric_inverse * self.ricci
    }
}

/// `Γ^k_ij` at `p`, stored as `[i][j][k]`.
pub fn christoffel_chart(metric: &ChartMetric, p: [f64; 3]) -> Result<Tensor3> {
    ChartGeometry::compute(metric, p).map(|geo| geo.christoffel)
}

/// (0,2) Cotton tensor in coordinates at `p`.
pub fn cotton2_chart(metric: &ChartMetric, p: [f64; 3]) -> Result<Matrix3<f64>> {
    ChartGeometry::compute(metric, p).map(|geo| geo.cotton2)
}

/// `(L_X g)_ij = X^k ∂_k g_ij + g_kj ∂_i X^k + g_ik ∂_j X^k`.
pub fn lie_derivative_chart(
    metric: &ChartMetric,
    field: &ChartVectorField,
    p: [f64; 3],
) -> Matrix3<f64> {
    let g = metric.jets(p);
    let x = field.jets(p);
    Matrix3::from_fn(|i, j| {
        (0..3)
            .map(|k| {
                x[k].value() * g[i][j].derivative(E[k])
                    + g[k][j].value() * x[k].derivative(E[i])
                    + g[i][k].value() * x[k].derivative(E[j])
            })
            .sum()
    })
}

/// `L_X g + C − λ g` at one point.
pub fn soliton_defect(
    metric: &ChartMetric,
    field: &ChartVectorField,
    lambda: f64,
    p: [f64; 3],
) -> Result<Matrix3<f64>> {
    let geo = ChartGeometry::compute(metric, p)?;
    Ok(lie_derivative_chart(metric, field, p) + geo.cotton2 - geo.metric * lambda)
}

/// Largest component of `L_X g + C − λ g` over `points`.
pub fn soliton_residual(
    metric: &ChartMetric,
    field: &ChartVectorField,
    lambda: f64,
    points: &[[f64; 3]],
) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::NoPoints);
    }
    points
        .par_iter()
        .map(|p| soliton_defect(metric, field, lambda, *p).map(|m| m.amax()))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}
