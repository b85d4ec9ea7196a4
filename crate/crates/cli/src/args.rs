//! Parsing of `--params`, `--spec` and `--grid` values.

use cotton_lab::catalog::GridAxis;
use cotton_lab::{Family, FamilySpec};

use crate::CliError;

/// Largest grid accepted by `scan`.
pub const MAX_GRID_POINTS: usize = 5_000_000;

/// Maps the short and Greek parameter names onto the canonical ones.
pub fn canonical_param(name: &str) -> Option<&'static str> {
    match name.trim() {
        "a" | "alpha" | "α" => Some("alpha"),
        "b" | "beta" | "β" => Some("beta"),
        "c" | "g" | "gamma" | "γ" => Some("gamma"),
        "d" | "delta" | "δ" => Some("delta"),
        _ => None,
    }
}

fn parse_number(field: &str, text: &str) -> Result<f64, CliError> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("{field}: `{text}` is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::input(format!("{field}: `{text}` is not finite")));
    }
    Ok(v)
}

/// `a=1,b=2` for `family`. Unknown or repeated names are rejected; missing
/// ones are left for the family validation to name.
pub fn parse_params(family: Family, text: &str) -> Result<FamilySpec, CliError> {
    let mut spec = FamilySpec::new(family, &[]);
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item.split_once('=').ok_or_else(|| {
            CliError::input(format!("--params: expected name=value, got `{item}`"))
        })?;
        let key = canonical_param(name).ok_or_else(|| {
            CliError::input(format!("--params: unknown parameter `{}`", name.trim()))
        })?;
        let v = parse_number(&format!("--params {key}"), value)?;
        if spec.params.insert(key.to_string(), v).is_some() {
            return Err(CliError::input(format!("--params: `{key}` given twice")));
        }
    }
    Ok(spec)
}

/// A `FamilySpec` from its JSON form, inline or `@path`.
pub fn parse_spec_json(text: &str) -> Result<FamilySpec, CliError> {
    let body = match text.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{path}: {e}")))?
        }
        None => text.to_string(),
    };
    serde_json::from_str(&body).map_err(|e| CliError::input(format!("--spec: {e}")))
}

/// `a=-2:2:0.1` or `alpha=0.5` (a single value).
pub fn parse_grid_axis(text: &str) -> Result<GridAxis, CliError> {
    let (name, range) = text.split_once('=').ok_or_else(|| {
        CliError::input(format!("--grid: expected name=lo:hi:step, got `{text}`"))
    })?;
    let key = canonical_param(name)
        .ok_or_else(|| CliError::input(format!("--grid: unknown parameter `{}`", name.trim())))?;
    let field = format!("--grid {key}");
    let parts: Vec<&str> = range.split(':').collect();
    let axis = match parts.as_slice() {
        [v] => {
            let v = parse_number(&field, v)?;
            GridAxis::new(key, v, v, 1.0)
        }
        [lo, hi, step] => {
            let axis = GridAxis::new(
                key,
                parse_number(&field, lo)?,
                parse_number(&field, hi)?,
                parse_number(&field, step)?,
            );
            if axis.step <= 0.0 {
                return Err(CliError::input(format!("{field}: step must be positive")));
            }
            if axis.hi < axis.lo {
                return Err(CliError::input(format!(
                    "{field}: empty range {}..{}",
                    axis.lo, axis.hi
                )));
            }
            axis
        }
        _ => {
            return Err(CliError::input(format!(
                "{field}: expected lo:hi:step, got `{range}`"
            )))
        }
    };
    Ok(axis)
}

/// Every `--grid` value, each possibly holding several `;`-separated axes.
pub fn parse_grid(family: Family, items: &[String]) -> Result<Vec<GridAxis>, CliError> {
    let mut axes: Vec<GridAxis> = Vec::new();
    for item in items
        .iter()
        .flat_map(|s| s.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        let axis = parse_grid_axis(item)?;
        if !family.param_names().contains(&axis.name.as_str()) {
            return Err(CliError::input(format!(
                "--grid: family {family} has no parameter `{}`",
                axis.name
            )));
        }
        if axes.iter().any(|a| a.name == axis.name) {
            return Err(CliError::input(format!(
                "--grid: `{}` given twice",
                axis.name
            )));
        }
        axes.push(axis);
    }
    let mut total: f64 = 1.0;
    for a in &axes {
        total *= ((a.hi - a.lo) / a.step).floor() + 1.0;
    }
    if total > MAX_GRID_POINTS as f64 {
        return Err(CliError::input(format!(
            "--grid: {total:.0} points exceeds the limit of {MAX_GRID_POINTS}"
        )));
    }
    Ok(axes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_accept_short_and_long_names() {
        let s = parse_params(Family::II, "a=1, beta=2").unwrap();
        assert_eq!(s, FamilySpec::new(Family::II, &[1.0, 2.0]));
    }

    #[test]
    fn params_reject_garbage() {
        for bad in ["a", "a=x", "z=1", "a=1,a=2", "a=inf"] {
            assert!(
                matches!(parse_params(Family::II, bad), Err(CliError::Input(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn grid_axes() {
        let a = parse_grid_axis("a=-2:2:0.5").unwrap();
        assert_eq!(a.values().len(), 9);
        assert_eq!(parse_grid_axis("g=1").unwrap().values(), vec![1.0]);
        for bad in ["a=2:-2:0.1", "a=0:1:0", "a=0:1", "q=0:1:0.1", "a"] {
            assert!(parse_grid_axis(bad).is_err(), "{bad}");
        }
        assert!(parse_grid(Family::III, &["b=0:1:0.1".into()]).is_err());
        assert!(parse_grid(Family::Ia, &["a=0:1e6:1e-3;b=0:1e6:1e-3".into()]).is_err());
    }
}
