//! Curvature of a left-invariant metric on a three-dimensional Lie group,
//! computed entirely in a fixed frame `{e_1, e_2, e_3}` of the Lie algebra.
//!
//! Because the metric is left-invariant, every tensor has constant frame
//! components and covariant derivatives reduce to algebra with the
//! Christoffel symbols. Indices are 0-based internally; documentation and IO
//! use the 1-based labels `e_1, e_2, e_3`.
//!
//! Curvature follows the convention `R(X,Y) = ∇_[X,Y] − [∇_X, ∇_Y]` and the
//! Ricci tensor is `ρ(X,Y) = tr{Z ↦ R(X,Z)Y}`, which agrees with the usual
//! Ricci tensor.
//!
//! The (0,2) Cotton tensor is the Hodge dual
//! `C_ij = (1 / 2√|det g|) C_nmi ε^nml g_lj` with `ε^123 = 1`. The absolute
//! value under the root is what makes the formula meaningful in Lorentzian
//! signature. With this orientation the raw contraction already reproduces the
//! closed-form component tables for every family in [`crate::catalog`], so
//! [`HODGE_SIGN`] is `+1`.

use nalgebra::{Complex, Matrix3, Vector3};

use crate::error::{Error, Result};

/// `t[i][j][k]`, three frame indices.
pub type Tensor3 = [[[f64; 3]; 3]; 3];
/// `t[i][j][k][l]`, four frame indices.
pub type Tensor4 = [[[[f64; 3]; 3]; 3]; 3];

/// `|det g|` below this is a hard "degenerate metric" error.
pub const DEGENERATE_DET: f64 = 1e-12;

/// Global orientation factor applied to the Hodge contraction of the
/// (0,3) Cotton tensor. Calibrated once against the diagonal Type Ia table.
pub const HODGE_SIGN: f64 = 1.0;

const ZERO3: Tensor3 = [[[0.0; 3]; 3]; 3];

/// Permutation symbol with `ε(0,1,2) = 1`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Hodge dual of a (0,3) Cotton tensor with respect to `gram`.
pub(crate) fn hodge_dual(c3: &Tensor3, gram: &Matrix3<f64>) -> Result<Matrix3<f64>> {
    let det = gram.determinant();
    if det.abs() < DEGENERATE_DET {
        return Err(Error::DegenerateMetric {
            det,
            threshold: DEGENERATE_DET,
        });
    }
    let factor = HODGE_SIGN / (2.0 * det.abs().sqrt());
    let mut out = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0.0;
            for n in 0..3 {
                for m in 0..3 {
                    for l in 0..3 {
                        let eps = levi_civita(n, m, l);
                        if eps != 0.0 {
                            acc += c3[n][m][i] * eps * gram[(l, j)];
                        }
                    }
                }
            }
            out[(i, j)] = factor * acc;
        }
    }
    Ok(out)
}

fn max_abs3(t: &Tensor3) -> f64 {
    t.iter()
        .flatten()
        .flatten()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// A three-dimensional real Lie algebra together with a nondegenerate inner
/// product on it.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra3 {
    structure: Tensor3,
    gram: Matrix3<f64>,
    gram_inv: Matrix3<f64>,
}

impl LieAlgebra3 {
    /// `structure[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
    ///
    /// Rejects non-antisymmetric brackets, Jacobi violations, asymmetric or
    /// degenerate Gram matrices.
    pub fn new(structure: Tensor3, gram: Matrix3<f64>) -> Result<Self> {
        let scale = max_abs3(&structure).max(1.0);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if (structure[i][j][k] + structure[j][i][k]).abs() > 1e-12 * scale {
                        return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1 });
                    }
                }
                let diff = (gram[(i, j)] - gram[(j, i)]).abs();
                if diff > 1e-12 * gram.amax().max(1.0) {
                    return Err(Error::AsymmetricGram {
                        row: i + 1,
                        col: j + 1,
                        diff,
                    });
                }
            }
        }
        let det = gram.determinant();
        if det.abs() < DEGENERATE_DET {
            return Err(Error::DegenerateMetric {
                det,
                threshold: DEGENERATE_DET,
            });
        }
        let residual = jacobi_residual(&structure);
        if residual > 1e-9 * scale * scale {
            return Err(Error::Jacobi { residual });
        }
        let gram_inv = gram.try_inverse().ok_or(Error::DegenerateMetric {
            det,
            threshold: DEGENERATE_DET,
        })?;
        Ok(Self {
            structure,
            gram,
            gram_inv,
        })
    }

    /// Builds the algebra from the three brackets `[e1,e2]`, `[e1,e3]`,
    /// `[e2,e3]` given as frame component vectors.
    pub fn from_brackets(
        e12: [f64; 3],
        e13: [f64; 3],
        e23: [f64; 3],
        gram: Matrix3<f64>,
    ) -> Result<Self> {
        let mut c = ZERO3;
        for (i, j, v) in [(0, 1, e12), (0, 2, e13), (1, 2, e23)] {
            for k in 0..3 {
                c[i][j][k] = v[k];
                c[j][i][k] = -v[k];
            }
        }
        Self::new(c, gram)
    }

    pub fn structure(&self) -> &Tensor3 {
        &self.structure
    }

    pub fn gram(&self) -> &Matrix3<f64> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix3<f64> {
        &self.gram_inv
    }

    /// Largest absolute structure constant; the natural size of the algebra.
    pub fn scale(&self) -> f64 {
        max_abs3(&self.structure)
    }

    pub fn is_abelian(&self) -> bool {
        self.scale() == 0.0
    }

    /// `[x, y]` for frame component vectors.
    pub fn bracket(&self, x: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
        let mut out = Vector3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for k in 0..3 {
                    out[k] += w * self.structure[i][j][k];
                }
            }
        }
        out
    }

    /// Trace of `ad(e_i)`.
    pub fn ad_trace(&self, i: usize) -> f64 {
        (0..3).map(|j| self.structure[i][j][j]).sum()
    }

    /// `g(x, y)`.
    pub fn inner(&self, x: &Vector3<f64>, y: &Vector3<f64>) -> f64 {
        x.dot(&(self.gram * y))
    }

    /// Same brackets, Gram replaced by `c · gram`.
    pub fn conformal_scale(&self, c: f64) -> Result<Self> {
        if c.is_nan() || c <= 0.0 {
            return Err(Error::NonPositiveScale(c));
        }
        Self::new(self.structure, self.gram * c)
    }
}

/// Largest absolute component of the Jacobiator.
pub fn jacobi_residual(c: &Tensor3) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut acc = 0.0;
                    for m in 0..3 {
                        acc += c[i][j][m] * c[m][k][l]
                            + c[j][k][m] * c[m][i][l]
                            + c[k][i][m] * c[m][j][l];
                    }
                    worst = worst.max(acc.abs());
                }
            }
        }
    }
    worst
}

/// Levi-Civita connection in the frame: `gamma[i][j][k] = Γ^k_ij`, the
/// coefficient of `e_k` in `∇_{e_i} e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    pub gamma: Tensor3,
}

impl Connection {
    /// `Γ^k_ij` with 0-based indices.
    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[i][j][k]
    }

    /// Components of `∇_{e_i} Y` for `Y` with constant frame components.
    pub fn covariant(&self, i: usize, y: &Vector3<f64>) -> Vector3<f64> {
        let mut out = Vector3::zeros();
        for m in 0..3 {
            for l in 0..3 {
                out[l] += y[m] * self.gamma[i][m][l];
            }
        }
        out
    }

    /// Largest violation of `Γ^k_ij − Γ^k_ji = c_ij^k`.
    pub fn torsion_defect(&self, alg: &LieAlgebra3) -> f64 {
        let c = alg.structure();
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let d = self.gamma[i][j][k] - self.gamma[j][i][k] - c[i][j][k];
                    worst = worst.max(d.abs());
                }
            }
        }
        worst
    }

    /// Largest violation of `g(∇_i e_j, e_l) + g(e_j, ∇_i e_l) = 0`.
    pub fn metric_defect(&self, alg: &LieAlgebra3) -> f64 {
        let g = alg.gram();
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    let mut acc = 0.0;
                    for m in 0..3 {
                        acc += self.gamma[i][j][m] * g[(m, l)] + self.gamma[i][l][m] * g[(j, m)];
                    }
                    worst = worst.max(acc.abs());
                }
            }
        }
        worst
    }
}

/// Koszul formula on the frame, where all `g(e_i, e_j)` are constant:
/// `2 g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)`.
pub fn koszul_connection(alg: &LieAlgebra3) -> Connection {
    let c = alg.structure();
    let g = alg.gram();
    let ginv = alg.gram_inverse();
    // lowered[i][j][k] = g([e_i, e_j], e_k)
    let mut lowered = ZERO3;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                lowered[i][j][k] = (0..3).map(|m| c[i][j][m] * g[(m, k)]).sum();
            }
        }
    }
    let mut gamma = ZERO3;
    for i in 0..3 {
        for j in 0..3 {
            let mut koszul = [0.0; 3];
            for (k, slot) in koszul.iter_mut().enumerate() {
                *slot = 0.5 * (lowered[i][j][k] - lowered[j][k][i] + lowered[k][i][j]);
            }
            for m in 0..3 {
                gamma[i][j][m] = (0..3).map(|k| koszul[k] * ginv[(k, m)]).sum();
            }
        }
    }
    Connection { gamma }
}

/// Riemann curvature: `r[i][j][k][l]` is the coefficient of `e_l` in
/// `R(e_i, e_j) e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curvature {
    pub r: Tensor4,
}

impl Curvature {
    /// Sectional curvature of the nondegenerate plane `span{e_i, e_j}`.
    ///
    /// With `R(X,Y) = ∇_[X,Y] − [∇_X,∇_Y]` this is
    /// `g(R(e_i,e_j)e_i, e_j) / (g_ii g_jj − g_ij²)`.
    pub fn sectional(&self, alg: &LieAlgebra3, i: usize, j: usize) -> Option<f64> {
        let g = alg.gram();
        let area = g[(i, i)] * g[(j, j)] - g[(i, j)] * g[(i, j)];
        if area.abs() < 1e-12 {
            return None;
        }
        let num: f64 = (0..3).map(|l| self.r[i][j][i][l] * g[(l, j)]).sum();
        Some(num / area)
    }

    pub fn max_abs(&self) -> f64 {
        self.r
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

pub fn curvature(alg: &LieAlgebra3, conn: &Connection) -> Curvature {
    let c = alg.structure();
    let gam = &conn.gamma;
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut acc = 0.0;
                    for m in 0..3 {
                        // ∇_[e_i,e_j] e_k
                        acc += c[i][j][m] * gam[m][k][l];
                        // −∇_i ∇_j e_k + ∇_j ∇_i e_k
                        acc -= gam[j][k][m] * gam[i][m][l];
                        acc += gam[i][k][m] * gam[j][m][l];
                    }
                    r[i][j][k][l] = acc;
                }
            }
        }
    }
    Curvature { r }
}

/// A symmetric (0,2) tensor in frame components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymTensor2(pub Matrix3<f64>);

impl SymTensor2 {
    pub fn comp(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    pub fn symmetry_defect(&self) -> f64 {
        (self.0 - self.0.transpose()).amax()
    }

    /// `Σ g^ij t_ij`.
    pub fn trace(&self, gram_inv: &Matrix3<f64>) -> f64 {
        gram_inv.component_mul(&self.0).sum()
    }

    /// Components in the order (11, 12, 13, 22, 23, 33).
    pub fn upper(&self) -> [f64; 6] {
        let m = &self.0;
        [
            m[(0, 0)],
            m[(0, 1)],
            m[(0, 2)],
            m[(1, 1)],
            m[(1, 2)],
            m[(2, 2)],
        ]
    }
}

pub fn ricci(curv: &Curvature) -> SymTensor2 {
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = (0..3).map(|k| curv.r[i][k][j][k]).sum();
        }
    }
    SymTensor2(m)
}

pub fn scalar(alg: &LieAlgebra3, ricci: &SymTensor2) -> f64 {
    ricci.trace(alg.gram_inverse())
}

/// `S = ρ − (τ/4) g`.
pub fn schouten(alg: &LieAlgebra3, ricci: &SymTensor2, tau: f64) -> SymTensor2 {
    SymTensor2(ricci.0 - alg.gram() * (tau / 4.0))
}

/// (0,3) Cotton tensor `C_ijk = (∇_i S)_jk − (∇_j S)_ik`.
#[derive(Debug, Clone, PartialEq)]
pub struct CottonTensor3 {
    pub comp: Tensor3,
}

impl CottonTensor3 {
    pub fn max_abs(&self) -> f64 {
        max_abs3(&self.comp)
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        let c = &self.comp;
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    worst = worst.max((c[i][j][k] + c[j][i][k]).abs());
                }
            }
        }
        worst
    }

    /// Largest of `|Σ g^ij C_ijk|` and `|Σ g^jk C_ijk|` over the free index.
    pub fn trace_defect(&self, gram_inv: &Matrix3<f64>) -> f64 {
        let c = &self.comp;
        let mut worst = 0.0_f64;
        for free in 0..3 {
            let mut first = 0.0;
            let mut last = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    first += gram_inv[(a, b)] * c[a][b][free];
                    last += gram_inv[(a, b)] * c[free][a][b];
                }
            }
            worst = worst.max(first.abs()).max(last.abs());
        }
        worst
    }

    pub fn cyclic_defect(&self) -> f64 {
        let c = &self.comp;
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    worst = worst.max((c[i][j][k] + c[j][k][i] + c[k][i][j]).abs());
                }
            }
        }
        worst
    }
}

/// On a left-invariant frame `e_i(S_jk) = 0`, so
/// `(∇_i S)_jk = −Σ_m (Γ^m_ij S_mk + Γ^m_ik S_jm)`.
pub fn cotton3(conn: &Connection, schouten: &SymTensor2) -> CottonTensor3 {
    let gam = &conn.gamma;
    let s = &schouten.0;
    let mut nabla = ZERO3;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                nabla[i][j][k] = -(0..3)
                    .map(|m| gam[i][j][m] * s[(m, k)] + gam[i][k][m] * s[(j, m)])
                    .sum::<f64>();
            }
        }
    }
    let mut comp = ZERO3;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                comp[i][j][k] = nabla[i][j][k] - nabla[j][i][k];
            }
        }
    }
    CottonTensor3 { comp }
}

pub fn cotton2(alg: &LieAlgebra3, c3: &CottonTensor3) -> Result<SymTensor2> {
    hodge_dual(&c3.comp, alg.gram()).map(SymTensor2)
}

/// A (1,1) tensor; `mat * v` applies it to frame components `v`, so column
/// `i` holds the components of the image of `e_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator3(pub Matrix3<f64>);

impl Operator3 {
    pub fn mat(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// Largest violation of `g·A = (g·A)ᵀ`.
    pub fn self_adjoint_defect(&self, gram: &Matrix3<f64>) -> f64 {
        let ga = gram * self.0;
        (ga - ga.transpose()).amax()
    }

    /// Eigenvalues, possibly complex since the operator is only
    /// self-adjoint for an indefinite metric.
    pub fn eigenvalues(&self) -> Vec<Complex<f64>> {
        self.0.complex_eigenvalues().iter().copied().collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.0.norm()
    }
}

/// `A = g⁻¹ t`, i.e. `g(A X, Y) = t(X, Y)`.
pub fn raise_index(alg: &LieAlgebra3, t: &SymTensor2) -> Operator3 {
    Operator3(alg.gram_inverse() * t.0)
}

/// `(L_X g)(e_i,e_j) = g(∇_{e_i} X, e_j) + g(e_i, ∇_{e_j} X)` for a
/// left-invariant field with frame components `x`.
pub fn lie_derivative_frame(alg: &LieAlgebra3, conn: &Connection, x: &Vector3<f64>) -> SymTensor2 {
    let g = alg.gram();
    let mut a = Matrix3::zeros();
    for i in 0..3 {
        let grad = conn.covariant(i, x);
        for j in 0..3 {
            a[(i, j)] = (0..3).map(|l| grad[l] * g[(l, j)]).sum();
        }
    }
    SymTensor2(a + a.transpose())
}

/// Exterior derivative of the dual one-form `X♭ = g(X, ·)`.
///
/// For left-invariant forms `dω(e_i, e_j) = −ω([e_i, e_j])`. Entry `(i, j)`
/// is the coefficient of `e^i ∧ e^j`; the result is antisymmetric and
/// vanishes exactly when `X♭` is closed.
pub fn flat_and_exterior(alg: &LieAlgebra3, x: &Vector3<f64>) -> Matrix3<f64> {
    let flat = alg.gram() * x;
    let c = alg.structure();
    let mut d = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            d[(i, j)] = -(0..3).map(|k| c[i][j][k] * flat[k]).sum::<f64>();
        }
    }
    d
}

/// Every frame quantity of one algebra, computed once.
#[derive(Debug, Clone)]
pub struct FrameGeometry {
    pub connection: Connection,
    pub curvature: Curvature,
    pub ricci: SymTensor2,
    pub scalar: f64,
    pub schouten: SymTensor2,
    pub cotton3: CottonTensor3,
    pub cotton2: SymTensor2,
}

impl FrameGeometry {
    pub fn compute(alg: &LieAlgebra3) -> Self {
        let connection = koszul_connection(alg);
        let curvature = curvature(alg, &connection);
        let ricci = ricci(&curvature);
        let scalar = scalar(alg, &ricci);
        let schouten = schouten(alg, &ricci, scalar);
        let cotton3 = cotton3(&connection, &schouten);
        // the Gram matrix was validated when `alg` was built
        let cotton2 = cotton2(alg, &cotton3).expect("validated gram");
        Self {
            connection,
            curvature,
            ricci,
            scalar,
            schouten,
            cotton3,
            cotton2,
        }
    }

    pub fn cotton_operator(&self, alg: &LieAlgebra3) -> Operator3 {
        raise_index(alg, &self.cotton2)
    }

    pub fn ricci_operator(&self, alg: &LieAlgebra3) -> Operator3 {
        raise_index(alg, &self.ricci)
    }
}
