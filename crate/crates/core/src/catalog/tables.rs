//! Closed-form component tables for each family: Christoffel symbols, the
//! Lie derivative of the metric along a left-invariant field, and the (0,2)
//! Cotton tensor. They are transcribed independently of the Koszul/Hodge
//! pipeline in [`crate::frame_geometry`] and serve as its test oracle.
//! Indices in the helper calls are 1-based to match the usual notation.

use nalgebra::{Matrix3, Vector3};

use super::{Family, FamilySpec};
use crate::error::Result;
use crate::frame_geometry::{Connection, SymTensor2, Tensor3};

struct Table(Tensor3);

impl Table {
    /// Sets `Γ^k_ij = sign · value` for each `(sign, i, j, k)`.
    fn set(&mut self, value: f64, entries: &[(f64, usize, usize, usize)]) {
        for &(sign, i, j, k) in entries {
            self.0[i - 1][j - 1][k - 1] = sign * value;
        }
    }
}

const P: f64 = 1.0;
const M: f64 = -1.0;

fn params(spec: &FamilySpec) -> Result<[f64; 4]> {
    spec.validate()?;
    spec.abgd()
}

/// Christoffel symbols from the per-family tables.
pub fn christoffel_oracle(spec: &FamilySpec) -> Result<Connection> {
    let [a, b, g, d] = params(spec)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut t = Table([[[0.0; 3]; 3]; 3]);
    match spec.family {
        Family::Ia => ia_christoffel(&mut t, a, b, g),
        Family::N => ia_christoffel(&mut t, a, a, a),
        Family::IaRiemannian => {
            // Koszul with the identity Gram and the quaternionic brackets
            t.set(0.5 * (-a + b + g), &[(P, 1, 2, 3), (M, 1, 3, 2)]);
            t.set(0.5 * (-a + b - g), &[(P, 2, 1, 3), (M, 2, 3, 1)]);
            t.set(0.5 * (a + b - g), &[(P, 3, 1, 2), (M, 3, 2, 1)]);
        }
        Family::Ib => {
            t.set(0.5 * (a - 2.0 * g), &[(P, 1, 2, 3), (P, 1, 3, 2)]);
            t.set(
                -b,
                &[(P, 2, 1, 2), (M, 2, 2, 1), (M, 3, 1, 3), (M, 3, 3, 1)],
            );
            t.set(
                0.5 * a,
                &[(P, 2, 1, 3), (P, 2, 3, 1), (P, 3, 1, 2), (M, 3, 2, 1)],
            );
        }
        Family::II => {
            t.set(0.5 * (a - 2.0 * b), &[(P, 1, 2, 3), (P, 1, 3, 2)]);
            t.set(
                -0.5,
                &[(P, 2, 1, 2), (M, 2, 2, 1), (M, 3, 1, 3), (M, 3, 3, 1)],
            );
            t.set(0.5 * (a - 1.0), &[(P, 2, 1, 3), (P, 2, 3, 1)]);
            t.set(0.5 * (a + 1.0), &[(P, 3, 1, 2), (M, 3, 2, 1)]);
        }
        Family::III => {
            t.set(
                s,
                &[
                    (P, 1, 1, 2),
                    (M, 1, 1, 3),
                    (M, 1, 2, 1),
                    (M, 1, 3, 1),
                    (P, 2, 2, 3),
                    (P, 2, 3, 2),
                    (P, 3, 2, 3),
                    (P, 3, 3, 2),
                ],
            );
            t.set(
                -0.5 * a,
                &[
                    (P, 1, 2, 3),
                    (P, 1, 3, 2),
                    (M, 2, 1, 3),
                    (M, 2, 3, 1),
                    (M, 3, 1, 2),
                    (P, 3, 2, 1),
                ],
            );
        }
        Family::IV1 => {
            t.set(a, &[(P, 1, 1, 3), (P, 1, 3, 1)]);
            t.set(
                -0.5 * (b - g),
                &[(P, 1, 2, 3), (M, 1, 3, 2), (P, 2, 1, 3), (P, 2, 3, 1)],
            );
            t.set(-d, &[(P, 2, 2, 3), (M, 2, 3, 2)]);
            t.set(-0.5 * (b + g), &[(P, 3, 1, 2), (P, 3, 2, 1)]);
        }
        Family::IV2 => {
            t.set(a, &[(P, 1, 1, 3), (P, 1, 3, 1)]);
            t.set(
                0.5 * (b + g),
                &[(P, 1, 2, 3), (P, 1, 3, 2), (P, 2, 1, 3), (P, 2, 3, 1)],
            );
            t.set(d, &[(P, 2, 2, 3), (P, 2, 3, 2)]);
            t.set(-0.5 * (b - g), &[(P, 3, 1, 2), (M, 3, 2, 1)]);
        }
        Family::IV3 => {
            t.set(a, &[(P, 1, 1, 2), (P, 1, 3, 1)]);
            t.set(
                0.5 * g,
                &[
                    (P, 1, 2, 2),
                    (M, 1, 3, 3),
                    (P, 2, 1, 2),
                    (P, 2, 3, 1),
                    (M, 3, 1, 3),
                    (M, 3, 2, 1),
                ],
            );
            t.set(-b, &[(P, 3, 1, 2), (P, 3, 3, 1)]);
            t.set(-d, &[(P, 3, 2, 2), (M, 3, 3, 3)]);
        }
    }
    Ok(Connection { gamma: t.0 })
}

fn ia_christoffel(t: &mut Table, a: f64, b: f64, g: f64) {
    t.set(0.5 * (a - b - g), &[(P, 1, 2, 3), (P, 1, 3, 2)]);
    t.set(0.5 * (a - b + g), &[(P, 2, 1, 3), (P, 2, 3, 1)]);
    t.set(0.5 * (a + b - g), &[(P, 3, 1, 2), (M, 3, 2, 1)]);
}

fn sym(entries: &[(usize, usize, f64)]) -> SymTensor2 {
    let mut m = Matrix3::zeros();
    for &(i, j, v) in entries {
        m[(i - 1, j - 1)] = v;
        m[(j - 1, i - 1)] = v;
    }
    SymTensor2(m)
}

/// `L_X g` for the left-invariant field with frame components `x`.
pub fn lie_derivative_oracle(spec: &FamilySpec, x: &Vector3<f64>) -> Result<SymTensor2> {
    let [a, b, g, d] = params(spec)?;
    let (x1, x2, x3) = (x[0], x[1], x[2]);
    let r2 = std::f64::consts::SQRT_2;
    let t = match spec.family {
        Family::Ia | Family::IaRiemannian => sym(&[
            (1, 2, (a - b) * x3),
            (1, 3, (g - a) * x2),
            (2, 3, (b - g) * x1),
        ]),
        Family::N => sym(&[]),
        Family::Ib => sym(&[
            (1, 2, x2 * b + x3 * (a - g)),
            (1, 3, x3 * b + x2 * (g - a)),
            (2, 2, -2.0 * b * x1),
            (3, 3, -2.0 * b * x1),
        ]),
        Family::II => sym(&[
            (1, 2, 0.5 * (x2 + (2.0 * a - 2.0 * b - 1.0) * x3)),
            (1, 3, 0.5 * (x3 - (2.0 * a - 2.0 * b + 1.0) * x2)),
            (2, 2, -x1),
            (3, 3, -x1),
            (2, 3, x1),
        ]),
        Family::III => sym(&[
            (1, 1, -r2 * (x2 + x3)),
            (1, 2, x1 / r2),
            (1, 3, x1 / r2),
            (2, 2, r2 * x3),
            (2, 3, (x3 - x2) / r2),
            (3, 3, -r2 * x2),
        ]),
        Family::IV1 => sym(&[
            (1, 1, -2.0 * a * x3),
            (1, 2, (b - g) * x3),
            (1, 3, a * x1 + g * x2),
            (2, 2, 2.0 * d * x3),
            (2, 3, -b * x1 - d * x2),
        ]),
        Family::IV2 => sym(&[
            (1, 1, 2.0 * a * x3),
            (1, 2, (b + g) * x3),
            (1, 3, -a * x1 - g * x2),
            (2, 2, 2.0 * d * x3),
            (2, 3, -b * x1 - d * x2),
        ]),
        Family::IV3 => sym(&[
            (1, 1, 2.0 * a * x3),
            (1, 2, g * x3),
            (1, 3, -a * x1 - g * x2 - b * x3),
            (2, 3, -d * x3),
            (3, 3, 2.0 * (b * x1 + d * x2)),
        ]),
    };
    Ok(t)
}

/// (0,2) Cotton tensor from the per-family tables.
pub fn cotton_oracle(spec: &FamilySpec) -> Result<SymTensor2> {
    let [a, b, g, d] = params(spec)?;
    let r2 = std::f64::consts::SQRT_2;
    let t = match spec.family {
        Family::Ia => sym(&[
            (
                1,
                1,
                0.5 * (2.0 * a.powi(3) - a * a * (b + g) - (b - g).powi(2) * (b + g)),
            ),
            (
                2,
                2,
                0.5 * (2.0 * b.powi(3) - b * b * (a + g) - (a - g).powi(2) * (a + g)),
            ),
            (
                3,
                3,
                -0.5 * (2.0 * g.powi(3) - g * g * (a + b) - (a - b).powi(2) * (a + b)),
            ),
        ]),
        Family::N => sym(&[]),
        Family::IaRiemannian => sym(&[
            (
                1,
                1,
                -0.5 * (2.0 * a.powi(3) - a * a * (b + g) - (b - g).powi(2) * (b + g)),
            ),
            (
                2,
                2,
                -0.5 * (2.0 * b.powi(3) - b * b * (a + g) - (a - g).powi(2) * (a + g)),
            ),
            (
                3,
                3,
                -0.5 * (2.0 * g.powi(3) - g * g * (a + b) - (a - b).powi(2) * (a + b)),
            ),
        ]),
        Family::Ib => {
            let k = a.powi(3) - a * a * g + 4.0 * b * b * g;
            sym(&[
                (1, 1, k),
                (2, 2, -0.5 * k),
                (3, 3, 0.5 * k),
                (
                    2,
                    3,
                    0.5 * b * (a * a + 4.0 * b * b - 8.0 * g * g + 4.0 * a * g),
                ),
            ])
        }
        Family::II => sym(&[
            (1, 1, a * a * (a - b)),
            (
                2,
                2,
                -0.25 * (2.0 * a.powi(3) - 8.0 * b * b + 4.0 * a * b - a * a * (2.0 * b - 1.0)),
            ),
            (2, 3, 0.25 * (a * a - 8.0 * b * b + 4.0 * a * b)),
            (
                3,
                3,
                0.25 * (2.0 * a.powi(3) + 8.0 * b * b - 4.0 * a * b - a * a * (2.0 * b + 1.0)),
            ),
        ]),
        Family::III => sym(&[
            (1, 2, 3.0 * a * a / (2.0 * r2)),
            (1, 3, 3.0 * a * a / (2.0 * r2)),
            (2, 2, 3.0 * a),
            (2, 3, 3.0 * a),
            (3, 3, 3.0 * a),
        ]),
        Family::IV1 => sym(&[
            (
                1,
                1,
                -0.5 * (b.powi(3) - 2.0 * g.powi(3) - a * a * b + b * g * g + 2.0 * g * d * d
                    - b * d * d),
            ),
            (1, 2, d * (a * (a - d) - b * (b - g))),
            (
                2,
                2,
                -0.5 * (2.0 * b.powi(3) - g.powi(3) - 2.0 * a * a * b - b * b * g
                    + g * d * d
                    + a * b * d),
            ),
            (3, 3, -0.5 * (b + g) * (a + b - g - d) * (a - b + g - d)),
        ]),
        Family::IV2 => sym(&[
            (
                1,
                1,
                0.5 * (b.powi(3)
                    + 2.0 * g.powi(3)
                    + a * a * b
                    + b * g * g
                    + 2.0 * g * d * d
                    + b * d * d),
            ),
            (1, 2, d * (a * (a - d) + b * (b + g))),
            (
                2,
                2,
                -0.5 * (2.0 * b.powi(3) + g.powi(3) + 2.0 * a * a * b + b * b * g + g * d * d
                    - a * b * d),
            ),
            (3, 3, -0.5 * (b - g) * ((a - d).powi(2) + (b + g).powi(2))),
        ]),
        Family::IV3 => sym(&[
            (1, 1, g.powi(3)),
            (2, 3, 0.5 * g.powi(3)),
            (3, 3, 0.5 * b * g * g),
        ]),
    };
    Ok(t)
}
