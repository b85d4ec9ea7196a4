//! Random parameter draws and snapped parameter grids for every family.
//!
//! Random draws mix generic points with points on the special loci where the
//! geometry changes (constant curvature, conformally flat lines, the soliton
//! lines of Types II and III, the algebraic soliton loci of Ia and Ib), so
//! that scans exercise both sides of every equivalence.

use rand::Rng;

use super::{Family, FamilySpec, RELATION_TOL};

/// Relative distance generic draws keep from special loci.
pub const GENERIC_BAND: f64 = 0.05;
/// Draws whose largest parameter is below `MIN_SCALE · range` are redrawn.
pub const MIN_SCALE: f64 = 0.025;

/// Draws a valid spec with parameters in `[-range, range]`.
pub fn random_spec<R: Rng + ?Sized>(family: Family, range: f64, rng: &mut R) -> FamilySpec {
    loop {
        let special = rng.random_bool(0.3);
        let choice: u32 = rng.random_range(0..420);
        let mut u = || rng.random_range(-range..=range);
        let values: Vec<f64> = match family {
            Family::Ia | Family::IaRiemannian => {
                let (a, b, g) = (u(), u(), u());
                if special {
                    match choice % 7 {
                        0 => vec![a, a, a],
                        1 => vec![a, a, 0.0],
                        2 => vec![0.0, 0.0, g],
                        3 => vec![a, b, a],
                        4 => vec![0.0, b, b],
                        5 => vec![a, 0.0, 0.0],
                        _ => vec![0.0, b, 0.0],
                    }
                } else {
                    vec![a, b, g]
                }
            }
            Family::N | Family::III => {
                let a = u();
                vec![if special { 0.0 } else { a }]
            }
            Family::Ib => {
                let (a, b, g) = (u(), u(), u());
                if special {
                    if b > 0.0 {
                        // conformally flat locus
                        let sign = if choice.is_multiple_of(2) { 1.0 } else { -1.0 };
                        vec![-2.0 * g, sign * 3f64.sqrt() * g, g]
                    } else {
                        // algebraic soliton locus
                        let eps = if a > 0.0 { 1.0 } else { -1.0 };
                        vec![0.0, b, eps * std::f64::consts::FRAC_1_SQRT_2 * b]
                    }
                } else {
                    vec![a, b, g]
                }
            }
            Family::II => {
                let (a, b) = (u(), u());
                if special {
                    match choice % 3 {
                        0 => vec![b, b],
                        1 => vec![0.0, b],
                        _ => vec![0.0, 0.0],
                    }
                } else {
                    // keep generic points off the soliton lines α = 0, α = β
                    let s = a.abs().max(b.abs());
                    if a.abs() < GENERIC_BAND * s || (a - b).abs() < GENERIC_BAND * s {
                        continue;
                    }
                    vec![a, b]
                }
            }
            Family::IV1 | Family::IV2 => {
                let sign = if family == Family::IV1 { 1.0 } else { -1.0 };
                let (a, b, g, d) = (u(), u(), u(), u());
                if special {
                    match choice % 4 {
                        // α = εβ, γ = εδ: constant curvature for IV.1
                        0 => vec![a, a, sign * d, d],
                        1 => vec![0.0, 0.0, 0.0, d],
                        2 => vec![a, 0.0, 0.0, 0.0],
                        _ => vec![0.0, 0.0, g, d],
                    }
                } else {
                    // γ solves the constraint exactly
                    if a.abs() < 0.05 {
                        continue;
                    }
                    vec![a, b, sign * b * d / a, d]
                }
            }
            Family::IV3 => {
                let (a, b, g, d) = (u(), u(), u(), u());
                let branch = (choice / 7) % 2;
                if special {
                    match choice % 3 {
                        0 => vec![a, b, 0.0, a],
                        1 => vec![a, b, 0.0, 0.0],
                        _ => vec![0.0, b, 0.0, d],
                    }
                } else if branch == 0 {
                    vec![a, b, 0.0, d]
                } else {
                    vec![0.0, b, g, d]
                }
            }
        };
        let largest = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if largest > range * (1.0 + 1e-12) || largest < MIN_SCALE * range {
            continue;
        }
        let spec = FamilySpec::new(family, &values);
        if spec.validate().is_ok() {
            return spec;
        }
    }
}

/// One axis of a parameter grid: `lo, lo+step, …` up to `hi` inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridAxis {
    pub fn new(name: &str, lo: f64, hi: f64, step: f64) -> Self {
        Self {
            name: name.to_string(),
            lo,
            hi,
            step,
        }
    }

    /// Grid values computed as `lo + k·step` and rounded to the step lattice,
    /// so that e.g. `0.1 · 3` lands on `0.3` exactly enough for relation
    /// tests.
    pub fn values(&self) -> Vec<f64> {
        if self.step.is_nan() || self.step <= 0.0 || self.hi < self.lo {
            return Vec::new();
        }
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|k| {
                let v = self.lo + k as f64 * self.step;
                (v * 1e12).round() / 1e12
            })
            .collect()
    }
}

/// Specs on a grid plus the number of grid points skipped for violating a
/// hard family constraint.
#[derive(Debug, Clone, Default)]
pub struct GridSpecs {
    pub specs: Vec<FamilySpec>,
    pub skipped: usize,
}

/// Enumerates the grid in row-major order over `family.param_names()`.
///
/// Axes not given default to the single value 0. Combinations within
/// `1e-9` of a family constraint are snapped onto it; the rest of the
/// constraint-violating combinations are counted in `skipped`.
pub fn grid_specs(family: Family, axes: &[GridAxis]) -> GridSpecs {
    let names = family.param_names();
    let columns: Vec<Vec<f64>> = names
        .iter()
        .map(|n| {
            axes.iter()
                .find(|a| a.name == *n)
                .map(|a| a.values())
                .unwrap_or_else(|| vec![0.0])
        })
        .collect();
    let mut out = GridSpecs::default();
    let total: usize = columns.iter().map(Vec::len).product();
    let mut values = vec![0.0; names.len()];
    for mut idx in 0..total {
        for (slot, col) in values.iter_mut().zip(&columns).rev() {
            *slot = col[idx % col.len()];
            idx /= col.len();
        }
        let snapped = snap(family, &values);
        let spec = FamilySpec::new(family, &snapped);
        if spec.validate().is_ok() {
            out.specs.push(spec);
        } else {
            out.skipped += 1;
        }
    }
    out
}

fn snap(family: Family, v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    let scale = v.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let tol = RELATION_TOL * scale * scale;
    match family {
        Family::IV1 | Family::IV2 => {
            let sign = if family == Family::IV1 { 1.0 } else { -1.0 };
            let (a, b, d) = (v[0], v[1], v[3]);
            let residual = v[0] * v[2] - sign * b * d;
            if residual.abs() <= tol && a != 0.0 {
                v[2] = sign * b * d / a;
            }
        }
        Family::IV3 if (v[0] * v[2]).abs() <= tol => {
            if v[0].abs() <= v[2].abs() {
                v[0] = 0.0;
            } else {
                v[2] = 0.0;
            }
        }
        _ => {}
    }
    v
}
