//! The classified families of three-dimensional Lorentzian Lie algebras, plus
//! the Riemannian Type Ia counterpart, built from named structure constants.
//!
//! Unimodular families Ia, Ib, II and III use an orthonormal frame of
//! signature `(++−)`. The non-unimodular family IV has brackets
//! `[e1,e2] = 0`, `[e1,e3] = αe1 + βe2`, `[e2,e3] = γe1 + δe2` with
//! `α + δ ≠ 0` and one of three metrics:
//!
//! | variant | Gram | constraint |
//! |---------|------|------------|
//! | IV.1 | `diag(−1, 1, 1)` | `αγ − βδ = 0` |
//! | IV.2 | `diag(1, 1, −1)` | `αγ + βδ = 0` |
//! | IV.3 | `g(e1,e1) = 1`, `g(e2,e3) = −1` | `αγ = 0` |
//!
//! Class N (every bracket `[x,y]` a combination of `x` and `y`) has constant
//! sectional curvature for every left-invariant metric. It is represented by
//! the constant-curvature Type Ia algebra with `α = β = γ`.

mod sampling;
mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame_geometry::{FrameGeometry, LieAlgebra3};

pub use sampling::{grid_specs, random_spec, GridAxis, GridSpecs};
pub use tables::{christoffel_oracle, cotton_oracle, lie_derivative_oracle};

/// Relative tolerance for parameter relations such as `β = ±√3 γ`.
pub const RELATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Ia,
    Ib,
    II,
    III,
    #[serde(rename = "IV.1")]
    IV1,
    #[serde(rename = "IV.2")]
    IV2,
    #[serde(rename = "IV.3")]
    IV3,
    N,
    #[serde(rename = "Ia-Riemannian")]
    IaRiemannian,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Ia,
        Family::Ib,
        Family::II,
        Family::III,
        Family::IV1,
        Family::IV2,
        Family::IV3,
        Family::N,
        Family::IaRiemannian,
    ];

    /// The seven Lorentzian families with their own bracket tables.
    pub const LORENTZIAN: [Family; 7] = [
        Family::Ia,
        Family::Ib,
        Family::II,
        Family::III,
        Family::IV1,
        Family::IV2,
        Family::IV3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ia => "Ia",
            Family::Ib => "Ib",
            Family::II => "II",
            Family::III => "III",
            Family::IV1 => "IV.1",
            Family::IV2 => "IV.2",
            Family::IV3 => "IV.3",
            Family::N => "N",
            Family::IaRiemannian => "Ia-Riemannian",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Ia | Family::Ib | Family::IaRiemannian => &["alpha", "beta", "gamma"],
            Family::II => &["alpha", "beta"],
            Family::III | Family::N => &["alpha"],
            Family::IV1 | Family::IV2 | Family::IV3 => &["alpha", "beta", "gamma", "delta"],
        }
    }

    pub fn is_unimodular_family(self) -> bool {
        matches!(
            self,
            Family::Ia | Family::Ib | Family::II | Family::III | Family::IaRiemannian
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = |t: &str| t.trim().to_ascii_lowercase().replace(['.', '_'], "");
        let wanted = norm(s);
        Family::ALL
            .into_iter()
            .find(|f| norm(f.name()) == wanted)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family label plus its named structure constants.
///
/// Serialized as `{"family": "Ia", "params": {"alpha": 1.0, ...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<String, f64>,
}

impl FamilySpec {
    /// Positional constructor; values follow [`Family::param_names`].
    pub fn new(family: Family, values: &[f64]) -> Self {
        let params = family
            .param_names()
            .iter()
            .zip(values)
            .map(|(n, v)| (n.to_string(), *v))
            .collect();
        Self { family, params }
    }

    pub fn param(&self, name: &str) -> Result<f64> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| Error::MissingParameter {
                family: self.family.to_string(),
                name: name.to_string(),
            })
    }

    /// Values in [`Family::param_names`] order.
    pub fn values(&self) -> Result<Vec<f64>> {
        self.family
            .param_names()
            .iter()
            .map(|n| self.param(n))
            .collect()
    }

    fn abgd(&self) -> Result<[f64; 4]> {
        let v = self.values()?;
        let mut out = [0.0; 4];
        out[..v.len()].copy_from_slice(&v);
        Ok(out)
    }

    /// Largest absolute parameter, at least 1.
    pub fn scale(&self) -> f64 {
        self.params.values().fold(1.0_f64, |m, v| m.max(v.abs()))
    }

    /// Checks parameter names, finiteness and the family constraints.
    pub fn validate(&self) -> Result<()> {
        let family = self.family;
        let names = family.param_names();
        if let Some(extra) = self.params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(Error::UnexpectedParameter {
                family: family.to_string(),
                name: extra.clone(),
            });
        }
        for n in names {
            let v = self.param(n)?;
            if !v.is_finite() {
                return Err(self.invalid(format!("{n} must be finite")));
            }
        }
        let [a, b, g, d] = self.abgd()?;
        let tol = RELATION_TOL * self.scale().powi(2);
        match family {
            Family::Ib if b.abs() <= RELATION_TOL => Err(self.invalid("β ≠ 0 violated")),
            Family::IV1 | Family::IV2 | Family::IV3 => {
                if (a + d).abs() <= RELATION_TOL * self.scale() {
                    return Err(self.invalid("α + δ ≠ 0 violated"));
                }
                let (residual, relation) = match family {
                    Family::IV1 => (a * g - b * d, "αγ − βδ = 0"),
                    Family::IV2 => (a * g + b * d, "αγ + βδ = 0"),
                    _ => (a * g, "αγ = 0"),
                };
                if residual.abs() > tol {
                    return Err(
                        self.invalid(format!("{relation} violated (residual {residual:e})"))
                    );
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn invalid(&self, relation: impl Into<String>) -> Error {
        Error::InvalidFamilyParameters {
            family: self.family.to_string(),
            relation: relation.into(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        for (i, n) in self.family.param_names().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match self.params.get(*n) {
                Some(v) => write!(f, "{n}={v}")?,
                None => write!(f, "{n}=?")?,
            }
        }
        f.write_str(")")
    }
}

fn lorentz_diag() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

pub fn gram_for(family: Family) -> Matrix3<f64> {
    match family {
        Family::IV1 => Matrix3::from_diagonal(&Vector3::new(-1.0, 1.0, 1.0)),
        Family::IV3 => Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, -1.0, 0.0),
        Family::IaRiemannian => Matrix3::identity(),
        _ => lorentz_diag(),
    }
}

pub fn build_algebra(spec: &FamilySpec) -> Result<LieAlgebra3> {
    spec.validate()?;
    let [a, b, g, d] = spec.abgd()?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let gram = gram_for(spec.family);
    let (e12, e13, e23) = match spec.family {
        Family::Ia => ([0.0, 0.0, -g], [0.0, -b, 0.0], [a, 0.0, 0.0]),
        Family::N => ([0.0, 0.0, -a], [0.0, -a, 0.0], [a, 0.0, 0.0]),
        Family::IaRiemannian => ([0.0, 0.0, g], [0.0, -b, 0.0], [a, 0.0, 0.0]),
        Family::Ib => ([0.0, b, -g], [0.0, -g, -b], [a, 0.0, 0.0]),
        Family::II => (
            [0.0, 0.5, -(b - 0.5)],
            [0.0, -(b + 0.5), -0.5],
            [a, 0.0, 0.0],
        ),
        Family::III => ([-s, 0.0, -a], [-s, -a, 0.0], [a, s, -s]),
        Family::IV1 | Family::IV2 | Family::IV3 => ([0.0; 3], [a, b, 0.0], [g, d, 0.0]),
    };
    LieAlgebra3::from_brackets(e12, e13, e23, gram)
}

/// `tr ad(x) = 0` for every `x`.
pub fn unimodular(alg: &LieAlgebra3) -> bool {
    let tol = 1e-12 * alg.scale().max(1.0);
    (0..3).all(|i| alg.ad_trace(i).abs() <= tol)
}

/// `‖C‖∞ ≤ 1e-8 · max(1, scale³)`: Cotton components are cubic in the
/// structure constants.
pub fn cotton_negligible(max_abs: f64, scale: f64) -> bool {
    max_abs <= 1e-8 * scale.max(1.0).powi(3)
}

/// Which clause of the local conformal flatness case list matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LcfCase {
    /// Type Ia with `α = β = γ` or a cyclic permutation of `α = β, γ = 0`.
    IaConstantCurvature,
    /// Type II with `α = β = 0`.
    IiFlat,
    /// Type IV.1 of constant curvature or one of its two degenerate lines.
    Iv1Symmetric,
    /// Type IV.2 of constant curvature or one of its two degenerate lines.
    Iv2Symmetric,
    /// Type IV.3 flat, or `γ = δ = 0, α ≠ 0`.
    Iv3Symmetric,
    /// Class N, always of constant sectional curvature.
    ClassN,
    /// Type Ib with `α = −2γ` and `β = ±√3 γ`.
    IbNonSymmetric,
    /// Type III with `α = 0`.
    IiiNonSymmetric,
    /// Type IV.3 with `γ = 0` and `αδ(α − δ) ≠ 0`.
    Iv3NonSymmetric,
    /// Riemannian Type Ia of constant curvature.
    RiemannianConstantCurvature,
}

impl LcfCase {
    /// Whether the clause describes a locally symmetric space.
    pub fn locally_symmetric(self) -> bool {
        !matches!(
            self,
            LcfCase::IbNonSymmetric | LcfCase::IiiNonSymmetric | LcfCase::Iv3NonSymmetric
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcfClassification {
    pub lcf: bool,
    pub case_label: Option<LcfCase>,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= RELATION_TOL * a.abs().max(b.abs()).max(1.0)
}

fn zero(a: f64) -> bool {
    close(a, 0.0)
}

fn einstein(alg: &LieAlgebra3, geo: &FrameGeometry) -> bool {
    // in dimension three Einstein is the same as constant sectional curvature
    let defect = (geo.ricci.0 - alg.gram() * (geo.scalar / 3.0)).amax();
    defect <= 1e-9 * alg.scale().max(1.0).powi(2)
}

/// Case-list route: decides local conformal flatness from the parameter
/// relations alone (with numeric curvature only where a clause is phrased in
/// terms of constant or vanishing curvature).
pub fn lcf_case(spec: &FamilySpec) -> Result<Option<LcfCase>> {
    let alg = build_algebra(spec)?;
    let [a, b, g, d] = spec.abgd()?;
    let geo = FrameGeometry::compute(&alg);
    let case = match spec.family {
        Family::Ia => {
            let hit = (close(a, b) && close(b, g))
                || (close(a, b) && zero(g))
                || (close(b, g) && zero(a))
                || (close(g, a) && zero(b));
            hit.then_some(LcfCase::IaConstantCurvature)
        }
        Family::IaRiemannian => {
            let hit = (close(a, b) && close(b, g))
                || (close(a, b) && zero(g))
                || (close(b, g) && zero(a))
                || (close(g, a) && zero(b));
            hit.then_some(LcfCase::RiemannianConstantCurvature)
        }
        Family::N => Some(LcfCase::ClassN),
        Family::Ib => {
            let sqrt3 = 3f64.sqrt();
            let hit = close(a, -2.0 * g) && (close(b, sqrt3 * g) || close(b, -sqrt3 * g));
            hit.then_some(LcfCase::IbNonSymmetric)
        }
        Family::II => (zero(a) && zero(b)).then_some(LcfCase::IiFlat),
        Family::III => zero(a).then_some(LcfCase::IiiNonSymmetric),
        Family::IV1 | Family::IV2 => {
            let hit = einstein(&alg, &geo)
                || (zero(a) && zero(b) && zero(g) && !zero(d))
                || (zero(b) && zero(g) && zero(d) && !zero(a));
            let case = if spec.family == Family::IV1 {
                LcfCase::Iv1Symmetric
            } else {
                LcfCase::Iv2Symmetric
            };
            hit.then_some(case)
        }
        Family::IV3 => {
            let flat = geo.curvature.max_abs() <= 1e-9 * alg.scale().max(1.0).powi(2);
            if flat || (zero(g) && zero(d) && !zero(a)) {
                Some(LcfCase::Iv3Symmetric)
            } else if zero(g) && !zero(a * d * (a - d)) {
                Some(LcfCase::Iv3NonSymmetric)
            } else {
                None
            }
        }
    };
    Ok(case)
}

/// Numeric route: the (0,3) Cotton tensor vanishes.
pub fn lcf_numeric(alg: &LieAlgebra3) -> bool {
    let geo = FrameGeometry::compute(alg);
    cotton_negligible(geo.cotton3.max_abs(), alg.scale())
}

/// Runs both routes and insists they agree.
pub fn lcf_classify(spec: &FamilySpec) -> Result<LcfClassification> {
    let alg = build_algebra(spec)?;
    let numeric = lcf_numeric(&alg);
    let case_label = lcf_case(spec)?;
    if numeric != case_label.is_some() {
        return Err(Error::ClassificationInconsistency {
            spec: spec.to_string(),
            numeric,
            case_list: case_label.is_some(),
        });
    }
    Ok(LcfClassification {
        lcf: numeric,
        case_label,
    })
}
