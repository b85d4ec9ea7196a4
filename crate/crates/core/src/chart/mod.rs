//! Cotton solitons of explicit metrics in coordinates, evaluated with order-3
//! jets.

mod examples;
mod geometry;
pub mod jet;
mod validate;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

pub use examples::{general_soliton_family_h3g1, general_soliton_family_h3g2, NamedExample};
pub use geometry::{
    christoffel_chart, cotton2_chart, lie_derivative_chart, soliton_defect, soliton_residual,
    ChartGeometry, ChartMetric, ChartVectorField, JetMatrix,
};
pub use jet::Jet3;
pub use validate::{
    fd_validate, fit_affine_soliton, frame_algebra, frame_chart_crosscheck, sample_points,
    AffineSolitonFit, Crosscheck, FdCheck, FdReport, CROSSCHECK_TOL, DEFAULT_SEED, FD_BOUNDS,
    FD_STEPS, MIN_SAMPLE_DET, SAMPLE_BOX,
};

use crate::error::Result;
use crate::soliton_frame::SolitonKind;

/// Default tolerance on `max |L_X g + C − λ g|` over the sample points.
pub const RESIDUAL_TOL: f64 = 1e-7;

/// Closed-form (0,2) Cotton tensor of `h3-g1`:
/// `C_xx = −1/2, C_yy = 1/2 − x², C_yz = −x, C_zz = −1`.
pub fn h3g1_cotton(x: f64) -> Matrix3<f64> {
    Matrix3::new(-0.5, 0.0, 0.0, 0.0, 0.5 - x * x, -x, 0.0, -x, -1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldSource {
    /// A registered closed-form field.
    ClosedForm,
    /// Fitted by [`fit_affine_soliton`].
    AffineFit,
}

/// Everything `verify-chart` reports for one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartVerification {
    pub metric: NamedExample,
    pub seed: u64,
    pub points: usize,
    pub field_source: FieldSource,
    /// The affine field, when it was fitted.
    pub fit: Option<AffineSolitonFit>,
    pub lambda: f64,
    pub classification: SolitonKind,
    pub residual: f64,
    pub residual_tol: f64,
    /// Worst frame/chart Cotton mismatch over the points.
    pub crosscheck_max_diff: f64,
    /// Worst `|C − Cᵀ|` and `|tr_g C|` over the points.
    pub cotton_symmetry_defect: f64,
    pub cotton_trace_defect: f64,
    /// Worst mismatch with [`h3g1_cotton`], for `h3-g1` only.
    pub closed_form_cotton_diff: Option<f64>,
    pub pass: bool,
}

/// Runs the soliton residual, cross-check and Cotton sanity checks for a
/// registered metric on `n_points` seeded sample points.
pub fn verify_named(
    example: NamedExample,
    n_points: usize,
    seed: u64,
    tol: f64,
) -> Result<ChartVerification> {
    let metric = example.metric();
    let points = sample_points(&metric, n_points, seed);
    let (field_source, fit, field, lambda) = match example.known_soliton() {
        Some((field, lambda)) => (FieldSource::ClosedForm, None, field, lambda),
        None => {
            let fit = fit_affine_soliton(&metric, &points)?;
            let (field, lambda) = (fit.field(), fit.lambda);
            (FieldSource::AffineFit, Some(fit), field, lambda)
        }
    };
    let residual = soliton_residual(&metric, &field, lambda, &points)?;
    let mut crosscheck_max_diff = 0.0_f64;
    let mut cotton_symmetry_defect = 0.0_f64;
    let mut cotton_trace_defect = 0.0_f64;
    let mut closed_form: Option<f64> = None;
    for p in &points {
        crosscheck_max_diff =
            crosscheck_max_diff.max(frame_chart_crosscheck(example, *p)?.max_diff);
        let geo = ChartGeometry::compute(&metric, *p)?;
        cotton_symmetry_defect =
            cotton_symmetry_defect.max((geo.cotton2 - geo.cotton2.transpose()).amax());
        cotton_trace_defect = cotton_trace_defect.max(geo.cotton_operator().trace().abs());
        if example == NamedExample::H3G1 {
            let diff = (geo.cotton2 - h3g1_cotton(p[0])).amax();
            closed_form = Some(closed_form.unwrap_or(0.0).max(diff));
        }
    }
    let sanity = 1e-8;
    let pass = residual < tol
        && crosscheck_max_diff < CROSSCHECK_TOL
        && cotton_symmetry_defect < sanity
        && cotton_trace_defect < sanity
        && closed_form.is_none_or(|d| d < sanity);
    Ok(ChartVerification {
        metric: example,
        seed,
        points: points.len(),
        field_source,
        fit,
        lambda,
        classification: SolitonKind::from_lambda(lambda, 1.0),
        residual,
        residual_tol: tol,
        crosscheck_max_diff,
        cotton_symmetry_defect,
        cotton_trace_defect,
        closed_form_cotton_diff: closed_form,
        pass,
    })
}
