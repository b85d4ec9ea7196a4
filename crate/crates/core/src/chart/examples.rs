//! Registered left-invariant metrics on the Heisenberg group `H3` and on
//! `E(1,1)`, in the global coordinates `(x, y, z)`.
//!
//! Each metric is registered twice: as closed-form coordinate components
//! (the main path), and as a defining coframe `θ^a` with a constant Gram
//! matrix `G`, so that `g = Σ G_ab θ^a θ^b`. The coframe is used for the
//! frame-side cross-check and to test the coordinate expansion.
//!
//! E(1,1) coframe: `E¹ = dx, E² = e^{-x}dy + e^x dz, E³ = e^{-x}dy − e^x dz`.
//! With `a = e^{-x}dy`, `b = e^x dz`, `E²E³ = a² − b²`, hence for
//! `−(E²)² + 2√6 E²E³ − 3(E³)²`:
//! `(2√6 − 4) e^{-2x} dy² + 4 dy dz − (2√6 + 4) e^{2x} dz²`,
//! i.e. `g_yy = (2√6−4)e^{-2x}`, `g_yz = 2`, `g_zz = −(2√6+4)e^{2x}`.
//! Swapping the `−1` and `−3` flips the sign of `g_yz`.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::geometry::{ChartMetric, ChartVectorField, JetMatrix};
use super::jet::Jet3;
use crate::error::{Error, Result};

const SQRT6: f64 = 2.449_489_742_783_178;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedExample {
    #[serde(rename = "h3-g1")]
    H3G1,
    #[serde(rename = "h3-g2")]
    H3G2,
    #[serde(rename = "h3-g3")]
    H3G3,
    #[serde(rename = "e11-g1")]
    E11G1,
    #[serde(rename = "e11-g2")]
    E11G2,
    #[serde(rename = "h3-riemannian")]
    H3Riemannian,
}

impl NamedExample {
    pub const ALL: [NamedExample; 6] = [
        NamedExample::H3G1,
        NamedExample::H3G2,
        NamedExample::H3G3,
        NamedExample::E11G1,
        NamedExample::E11G2,
        NamedExample::H3Riemannian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedExample::H3G1 => "h3-g1",
            NamedExample::H3G2 => "h3-g2",
            NamedExample::H3G3 => "h3-g3",
            NamedExample::E11G1 => "e11-g1",
            NamedExample::E11G2 => "e11-g2",
            NamedExample::H3Riemannian => "h3-riemannian",
        }
    }

    /// Closed-form coordinate components.
    pub fn metric(self) -> ChartMetric {
        let program: fn(&[Jet3; 3]) -> JetMatrix = match self {
            NamedExample::H3G1 => |c| {
                let x = c[0];
                sym([-1.0, 0.0, 0.0], [x * x + 1.0, x, Jet3::constant(1.0)])
            },
            NamedExample::H3G2 => |c| {
                let x = c[0];
                sym([1.0, 0.0, 0.0], [-(x * x) + 1.0, -x, Jet3::constant(-1.0)])
            },
            NamedExample::H3G3 => |c| {
                let x = c[0];
                sym(
                    [1.0, 0.0, 0.0],
                    [x * 2.0 - 1.0, Jet3::constant(1.0), Jet3::zero()],
                )
            },
            NamedExample::E11G1 => |c| e11_metric(c[0], 2.0),
            NamedExample::E11G2 => |c| e11_metric(c[0], -2.0),
            NamedExample::H3Riemannian => |c| {
                let x = c[0];
                sym([1.0, 0.0, 0.0], [x * x + 1.0, -x, Jet3::constant(1.0)])
            },
        };
        ChartMetric::new(self.name(), program)
    }

    /// Defining coframe: row `a` holds the coordinate components of `θ^a`.
    pub fn coframe_jets(self, p: [f64; 3]) -> JetMatrix {
        let [x, _, _] = Jet3::coordinates(p);
        let one = Jet3::constant(1.0);
        let zero = Jet3::zero();
        match self {
            NamedExample::H3G1 | NamedExample::H3G2 => {
                [[one, zero, zero], [zero, one, zero], [zero, x, one]]
            }
            NamedExample::H3G3 => [[one, zero, zero], [zero, x, one], [zero, -x + 1.0, -one]],
            NamedExample::E11G1 | NamedExample::E11G2 => {
                let em = (-x).exp();
                let ep = x.exp();
                [[one, zero, zero], [zero, em, ep], [zero, em, -ep]]
            }
            NamedExample::H3Riemannian => [[one, zero, zero], [zero, one, zero], [zero, -x, one]],
        }
    }

    /// Gram matrix of the metric in the coframe dual basis.
    pub fn coframe_gram(self) -> Matrix3<f64> {
        match self {
            NamedExample::H3G1 => Matrix3::from_diagonal(&[-1.0, 1.0, 1.0].into()),
            NamedExample::H3G2 | NamedExample::H3G3 => {
                Matrix3::from_diagonal(&[1.0, 1.0, -1.0].into())
            }
            NamedExample::E11G1 => {
                Matrix3::new(2.0 / 3.0, 0.0, 0.0, 0.0, -1.0, SQRT6, 0.0, SQRT6, -3.0)
            }
            NamedExample::E11G2 => {
                Matrix3::new(2.0 / 3.0, 0.0, 0.0, 0.0, -3.0, SQRT6, 0.0, SQRT6, -1.0)
            }
            NamedExample::H3Riemannian => Matrix3::identity(),
        }
    }

    /// The closed-form soliton `(X, λ)` known for this metric, if any.
    /// `h3-g3` is flat, so `(0, 0)` is a trivial soliton.
    pub fn known_soliton(self) -> Option<(ChartVectorField, f64)> {
        let r2 = std::f64::consts::SQRT_2;
        match self {
            NamedExample::H3G1 => Some((general_soliton_family_h3g1([0.0; 4]), 2.0)),
            NamedExample::H3G2 => Some((general_soliton_family_h3g2([0.0; 4]), -2.0)),
            NamedExample::H3G3 => Some((ChartVectorField::zero(), 0.0)),
            NamedExample::E11G1 => Some((e11_field(3.0 / r2), 2.0 * r2)),
            NamedExample::E11G2 => Some((e11_field(-3.0 / r2), -2.0 * r2)),
            NamedExample::H3Riemannian => None,
        }
    }
}

impl fmt::Display for NamedExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase();
        NamedExample::ALL
            .into_iter()
            .find(|m| m.name() == wanted)
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

/// Symmetric matrix with constant `dx` row `[g_xx, g_xy, g_xz]` and the
/// remaining components `[g_yy, g_yz, g_zz]`.
fn sym(first: [f64; 3], rest: [Jet3; 3]) -> JetMatrix {
    let [xx, xy, xz] = first.map(Jet3::constant);
    let [yy, yz, zz] = rest;
    [[xx, xy, xz], [xy, yy, yz], [xz, yz, zz]]
}

fn e11_metric(x: Jet3, g_yz: f64) -> JetMatrix {
    let yy = (x * -2.0).exp() * (2.0 * SQRT6 - 4.0);
    let zz = (x * 2.0).exp() * -(2.0 * SQRT6 + 4.0);
    sym([2.0 / 3.0, 0.0, 0.0], [yy, Jet3::constant(g_yz), zz])
}

/// `X = c (y ∂y + z ∂z)`.
fn e11_field(c: f64) -> ChartVectorField {
    ChartVectorField::new(move |p| [Jet3::zero(), p[1] * c, p[2] * c])
}

/// Shrinking (`λ = 2`) solitons of `h3-g1`:
/// `(κ1 y + ¾x + κ2)∂x + (κ1 x + ¾y + κ3)∂y − (κ1(x²+y²)/2 + κ2 y − (3/2)z − κ4)∂z`.
pub fn general_soliton_family_h3g1(kappa: [f64; 4]) -> ChartVectorField {
    let [k1, k2, k3, k4] = kappa;
    ChartVectorField::new(move |c| {
        let [x, y, z] = *c;
        [
            y * k1 + x * 0.75 + k2,
            x * k1 + y * 0.75 + k3,
            -((x * x + y * y) * (0.5 * k1) + y * k2 - z * 1.5 - k4),
        ]
    })
}

/// Expanding (`λ = −2`) solitons of `h3-g2`:
/// `(κ1 y − ¾x + κ2)∂x − (κ1 x + ¾y − κ3)∂y + (κ1(x²−y²)/2 − κ2 y − (3/2)z + κ4)∂z`.
pub fn general_soliton_family_h3g2(kappa: [f64; 4]) -> ChartVectorField {
    let [k1, k2, k3, k4] = kappa;
    ChartVectorField::new(move |c| {
        let [x, y, z] = *c;
        [
            y * k1 - x * 0.75 + k2,
            -(x * k1 + y * 0.75 - k3),
            (x * x - y * y) * (0.5 * k1) - y * k2 - z * 1.5 + k4,
        ]
    })
}
