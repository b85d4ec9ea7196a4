use std::fmt::Write as _;

use cotton_lab::catalog::{build_algebra, grid_specs, lcf_classify, unimodular, GridAxis, LcfCase};
use cotton_lab::chart::{verify_named, ChartVerification, NamedExample};
use cotton_lab::report::{run_report, Report, ReportConfig, SCHEMA_VERSION};
use cotton_lab::scan::{random_specs, scan, ScanRow, ScanSummary};
use cotton_lab::soliton_frame::{
    algebraic_lie_identity, algebraic_solve, cotton_nilpotency, solve_algebra, NilpotencyDegree,
    SolitonFamily, SolitonKind,
};
use cotton_lab::{Family, FamilySpec, FrameGeometry};
use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

/// What a command produced, in every output format it supports.
pub struct Outcome {
    pub json: Value,
    pub human: String,
    pub csv: Option<String>,
    /// False when a check the command performs did not hold.
    pub pass: bool,
}

fn envelope(command: &str, records: Value, summary: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "records": records,
        "summary": summary,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn spec_line(spec: &FamilySpec) -> String {
    let params: Vec<String> = spec
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    format!("{} ({})", spec.family, params.join(", "))
}

#[derive(Debug, Serialize)]
pub struct ClassifyRecord {
    pub spec: FamilySpec,
    pub unimodular: bool,
    pub lcf: bool,
    pub lcf_case: Option<LcfCase>,
    pub locally_symmetric: Option<bool>,
    pub scalar_curvature: f64,
    pub cotton_max_abs: f64,
    /// Eigenvalues of the Cotton operator as `[re, im]`, sorted.
    pub cotton_spectrum: Vec<[f64; 2]>,
    pub nilpotency: NilpotencyDegree,
}

pub fn classify(spec: &FamilySpec) -> Result<Outcome, CliError> {
    let alg = build_algebra(spec)?;
    let lcf = lcf_classify(spec)?;
    let geo = FrameGeometry::compute(&alg);
    let mut spectrum: Vec<[f64; 2]> = geo
        .cotton_operator(&alg)
        .eigenvalues()
        .iter()
        .map(|z| [z.re, z.im])
        .collect();
    spectrum.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let rec = ClassifyRecord {
        spec: spec.clone(),
        unimodular: unimodular(&alg),
        lcf: lcf.lcf,
        lcf_case: lcf.case_label,
        locally_symmetric: lcf.case_label.map(LcfCase::locally_symmetric),
        scalar_curvature: geo.scalar,
        cotton_max_abs: geo.cotton2.max_abs(),
        cotton_spectrum: spectrum,
        nilpotency: cotton_nilpotency(&alg, &geo),
    };
    let mut human = String::new();
    writeln!(human, "spec               {}", spec_line(spec)).unwrap();
    writeln!(human, "unimodular         {}", rec.unimodular).unwrap();
    let case = rec
        .lcf_case
        .map(|c| format!(" ({})", to_value(&c).as_str().unwrap_or_default()))
        .unwrap_or_default();
    writeln!(human, "conformally flat   {}{case}", rec.lcf).unwrap();
    writeln!(human, "scalar curvature   {:.12}", rec.scalar_curvature).unwrap();
    writeln!(human, "max |C_ij|         {:.6e}", rec.cotton_max_abs).unwrap();
    let spec_text: Vec<String> = rec
        .cotton_spectrum
        .iter()
        .map(|[re, im]| {
            let re = re + 0.0;
            if *im == 0.0 {
                format!("{re:.9}")
            } else {
                format!("{re:.9}{im:+.9}i")
            }
        })
        .collect();
    writeln!(human, "Cotton spectrum    {}", spec_text.join(", ")).unwrap();
    writeln!(human, "nilpotency degree  {}", rec.nilpotency).unwrap();
    Ok(Outcome {
        json: envelope("classify", json!([rec]), Value::Null),
        human,
        csv: None,
        pass: true,
    })
}

#[derive(Debug, Serialize)]
pub struct SolitonRecord {
    pub spec: FamilySpec,
    pub soliton: SolitonFamily,
}

fn kind_name(kind: Option<SolitonKind>) -> String {
    kind.map(|k| to_value(&k).as_str().unwrap_or_default().to_string())
        .unwrap_or_else(|| "-".to_string())
}

pub fn soliton(spec: &FamilySpec) -> Result<Outcome, CliError> {
    let alg = build_algebra(spec)?;
    let fam = solve_algebra(&alg);
    let mut human = String::new();
    writeln!(human, "spec           {}", spec_line(spec)).unwrap();
    if fam.exists {
        let kind = if fam.trivial {
            "trivial (C = 0)".to_string()
        } else {
            kind_name(fam.classification)
        };
        writeln!(human, "soliton        {kind}").unwrap();
        writeln!(human, "lambda         {:.12}", fam.lambda + 0.0).unwrap();
        writeln!(human, "X              {:?}", fam.particular).unwrap();
        writeln!(human, "Killing dirs   {:?}", fam.kernel_basis).unwrap();
    } else {
        writeln!(human, "soliton        none").unwrap();
    }
    writeln!(human, "residual       {:.3e}", fam.residual).unwrap();
    let rec = SolitonRecord {
        spec: spec.clone(),
        soliton: fam,
    };
    Ok(Outcome {
        json: envelope("soliton", json!([rec]), Value::Null),
        human,
        csv: None,
        pass: true,
    })
}

#[derive(Debug, Serialize)]
pub struct AlgebraicRecord {
    pub spec: FamilySpec,
    pub exists: bool,
    pub trivial: bool,
    pub lambda: f64,
    pub classification: Option<SolitonKind>,
    /// Rows of `D = Ĉ − λ Id`.
    pub derivation: [[f64; 3]; 3],
    pub lie_identity: Option<bool>,
}

pub fn algebraic(spec: &FamilySpec) -> Result<Outcome, CliError> {
    let alg = build_algebra(spec)?;
    let r = algebraic_solve(&alg);
    let d = r.derivation;
    let rec = AlgebraicRecord {
        spec: spec.clone(),
        exists: r.exists,
        trivial: r.trivial,
        lambda: r.lambda,
        classification: r
            .exists
            .then(|| SolitonKind::from_lambda(r.lambda, alg.scale())),
        derivation: [0, 1, 2].map(|i| [0, 1, 2].map(|j| d[(i, j)])),
        lie_identity: r.exists.then(|| algebraic_lie_identity(&alg, &r)),
    };
    let mut human = String::new();
    writeln!(human, "spec                {}", spec_line(spec)).unwrap();
    if rec.exists {
        let kind = if rec.trivial {
            "trivial (C = 0)".to_string()
        } else {
            kind_name(rec.classification)
        };
        writeln!(human, "algebraic soliton   {kind}").unwrap();
        writeln!(human, "lambda              {:.12}", rec.lambda + 0.0).unwrap();
        for (i, row) in rec.derivation.iter().enumerate() {
            let label = if i == 0 { "D" } else { "" };
            writeln!(
                human,
                "{label:<20}{:>16.9} {:>16.9} {:>16.9}",
                row[0], row[1], row[2]
            )
            .unwrap();
        }
        writeln!(
            human,
            "Lie identity        {}",
            rec.lie_identity == Some(true)
        )
        .unwrap();
    } else {
        writeln!(human, "algebraic soliton   none").unwrap();
    }
    Ok(Outcome {
        json: envelope("algebraic", json!([rec]), Value::Null),
        human,
        csv: None,
        pass: true,
    })
}

pub fn verify_chart(metric: &str, points: usize, seed: u64, tol: f64) -> Result<Outcome, CliError> {
    let example: NamedExample = metric.parse()?;
    if points == 0 {
        return Err(CliError::input("--points must be at least 1"));
    }
    let v: ChartVerification = verify_named(example, points, seed, tol)?;
    let mut human = String::new();
    writeln!(human, "metric              {}", v.metric).unwrap();
    writeln!(human, "points / seed       {} / {}", v.points, v.seed).unwrap();
    writeln!(
        human,
        "field               {}",
        to_value(&v.field_source).as_str().unwrap_or_default()
    )
    .unwrap();
    if let Some(fit) = &v.fit {
        writeln!(human, "fitted A            {:?}", fit.linear).unwrap();
        writeln!(human, "fitted b            {:?}", fit.translation).unwrap();
    }
    writeln!(
        human,
        "lambda              {:.12} ({})",
        v.lambda,
        kind_name(Some(v.classification))
    )
    .unwrap();
    writeln!(
        human,
        "soliton residual    {:.3e} (tol {:e})",
        v.residual, v.residual_tol
    )
    .unwrap();
    writeln!(human, "frame/chart diff    {:.3e}", v.crosscheck_max_diff).unwrap();
    writeln!(
        human,
        "|C - C^T|, |tr C|   {:.3e}, {:.3e}",
        v.cotton_symmetry_defect, v.cotton_trace_defect
    )
    .unwrap();
    if let Some(d) = v.closed_form_cotton_diff {
        writeln!(human, "closed-form Cotton  {d:.3e}").unwrap();
    }
    writeln!(
        human,
        "result              {}",
        if v.pass { "PASS" } else { "FAIL" }
    )
    .unwrap();
    Ok(Outcome {
        pass: v.pass,
        json: envelope("verify-chart", json!([v]), Value::Null),
        human,
        csv: None,
    })
}

/// Where `scan` takes its parameter points from.
pub enum ScanSource {
    Grid(Vec<GridAxis>),
    Random { draws: usize, seed: u64, range: f64 },
}

const CSV_HEADER: [&str; 23] = [
    "index",
    "family",
    "alpha",
    "beta",
    "gamma",
    "delta",
    "cotton_norm",
    "scalar_curvature",
    "lcf",
    "nilpotency",
    "soliton_exists",
    "soliton_trivial",
    "lambda",
    "classification",
    "x1",
    "x2",
    "x3",
    "kernel_dim",
    "homothetic_degenerate",
    "algebraic_exists",
    "algebraic_trivial",
    "algebraic_lambda",
    "algebraic_identity",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_rows(rows: &[ScanRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| CliError::io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        let p = |n: &str| opt(r.spec.params.get(n));
        let x = |i: usize| opt(r.particular.map(|x| x[i]));
        let record = [
            r.index.to_string(),
            r.spec.family.to_string(),
            p("alpha"),
            p("beta"),
            p("gamma"),
            p("delta"),
            r.cotton_norm.to_string(),
            r.scalar_curvature.to_string(),
            r.lcf.to_string(),
            r.nilpotency.to_string(),
            r.soliton_exists.to_string(),
            r.soliton_trivial.to_string(),
            opt(r.lambda),
            r.classification
                .map(|k| kind_name(Some(k)))
                .unwrap_or_default(),
            x(0),
            x(1),
            x(2),
            r.kernel_dim.to_string(),
            r.homothetic_degenerate.to_string(),
            r.algebraic_exists.to_string(),
            r.algebraic_trivial.to_string(),
            opt(r.algebraic_lambda),
            opt(r.algebraic_identity),
        ];
        w.write_record(&record).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields"))
}

pub fn run_scan(family: Family, source: &ScanSource) -> Result<Outcome, CliError> {
    let (specs, skipped) = match source {
        ScanSource::Grid(axes) => {
            let g = grid_specs(family, axes);
            (g.specs, g.skipped)
        }
        ScanSource::Random { draws, seed, range } => {
            if !(*range > 0.0 && range.is_finite()) {
                return Err(CliError::input("--range must be positive"));
            }
            (random_specs(family, *draws, *seed, *range), 0)
        }
    };
    let rows = scan(&specs)?;
    let summary = ScanSummary::from_rows(&rows, skipped);
    let mut human = String::new();
    writeln!(
        human,
        "family {family}: {} rows, {} skipped",
        summary.rows, summary.skipped
    )
    .unwrap();
    let counters = [
        ("conformally flat", summary.lcf),
        ("non-trivial solitons", summary.nontrivial_solitons),
        ("unexpected solitons", summary.unexpected_solitons),
        ("missed solitons", summary.missed_solitons),
        (
            "solvable/nilpotent disagreements",
            summary.nilpotency_disagreements,
        ),
        (
            "non-trivial algebraic solitons",
            summary.algebraic_nontrivial,
        ),
        ("unexpected algebraic", summary.unexpected_algebraic),
        ("missed algebraic", summary.missed_algebraic),
        (
            "algebraic lambda mismatches",
            summary.algebraic_lambda_mismatches,
        ),
        (
            "algebraic identity failures",
            summary.algebraic_identity_failures,
        ),
    ];
    for (name, n) in counters {
        writeln!(human, "  {name:<34}{n}").unwrap();
    }
    writeln!(
        human,
        "result {}",
        if summary.pass() { "PASS" } else { "FAIL" }
    )
    .unwrap();
    Ok(Outcome {
        pass: summary.pass(),
        csv: Some(csv_rows(&rows)?),
        json: envelope("scan", to_value(&rows), to_value(&summary)),
        human,
    })
}

pub fn report(cfg: &ReportConfig) -> Result<Outcome, CliError> {
    if let Some(t) = cfg.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::input("--tol must be positive"));
        }
    }
    if cfg.points == 0 || cfg.draws == 0 {
        return Err(CliError::input("--points and --draws must be at least 1"));
    }
    let r: Report = run_report(cfg)?;
    let mut human = String::new();
    writeln!(
        human,
        "{:>3}  {:<4}  {:<38}  {:>10}  {:>10}",
        "#", "", "criterion", "worst", "tol"
    )
    .unwrap();
    for c in &r.criteria {
        let num = |v: Option<f64>| v.map(|x| format!("{x:.2e}")).unwrap_or_else(|| "-".into());
        writeln!(
            human,
            "{:>3}  {:<4}  {:<38}  {:>10}  {:>10}",
            c.number,
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            num(c.worst),
            num(c.tolerance)
        )
        .unwrap();
    }
    writeln!(human, "{} passed, {} failed", r.passed, r.failed).unwrap();
    let summary =
        json!({"passed": r.passed, "failed": r.failed, "all_pass": r.all_pass, "config": r.config});
    Ok(Outcome {
        pass: r.all_pass,
        json: envelope("report", to_value(&r.criteria), summary),
        human,
        csv: None,
    })
}
