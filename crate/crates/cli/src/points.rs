//! Sampled Legendre pairs from a text file.
//!
//! One sample per line: `s γx γy γz vx vy vz`, whitespace separated, with
//! strictly increasing `s`. Blank lines and lines starting with `#` are
//! skipped. Both curves are interpolated by cubic Hermite curves.

use std::path::Path;
use std::sync::Arc;

use rmfgeom::geomcore::{CurveRef, HermiteCurve};
use rmfgeom::{Interval, ParamCurve, Vec3};

use crate::error::CliError;

/// Fewest samples accepted.
pub const MIN_SAMPLES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub s: Vec<f64>,
    pub gamma: Vec<Vec3>,
    pub v: Vec<Vec3>,
}

pub fn parse_points(text: &str, path: &Path) -> Result<Samples, CliError> {
    let err = |line: usize, message: String| CliError::Parse { path: path.to_path_buf(), line, message };
    let mut out = Samples { s: Vec::new(), gamma: Vec::new(), v: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| err(i + 1, format!("{t:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        if fields.len() != 7 {
            return Err(err(i + 1, format!("expected 7 columns (s γx γy γz vx vy vz), found {}", fields.len())));
        }
        if fields.iter().any(|x| !x.is_finite()) {
            return Err(err(i + 1, "non-finite value".into()));
        }
        if out.s.last().is_some_and(|&prev| fields[0] <= prev) {
            return Err(err(i + 1, "parameter s must be strictly increasing".into()));
        }
        out.s.push(fields[0]);
        out.gamma.push(Vec3::new(fields[1], fields[2], fields[3]));
        out.v.push(Vec3::new(fields[4], fields[5], fields[6]));
    }
    if out.s.len() < MIN_SAMPLES {
        return Err(err(0, format!("need at least {MIN_SAMPLES} samples, found {}", out.s.len())));
    }
    Ok(out)
}

/// Read and interpolate a points file: `(γ, v, domain)`.
pub fn load_points(path: &Path) -> Result<(CurveRef, CurveRef, Interval), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let samples = parse_points(&text, path)?;
    let gamma = HermiteCurve::from_samples(samples.s.clone(), samples.gamma)?;
    let v = HermiteCurve::from_samples(samples.s, samples.v)?;
    let domain = gamma.domain();
    Ok((Arc::new(gamma), Arc::new(v), domain))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Samples, CliError> {
        parse_points(text, Path::new("pts"))
    }

    #[test]
    fn parses_rows_and_skips_comments() {
        let t = "# header\n0 1 0 0 0 1 0\n\n0.1 1 0 0 0 1 0\n0.2 1 0 0 0 1 0\n0.3 1 0 0 0 1 0\n";
        let s = parse(t).unwrap();
        assert_eq!(s.s, vec![0.0, 0.1, 0.2, 0.3]);
        assert_eq!(s.v[2], Vec3::Y);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(parse("0 1 0 0\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse("0 1 0 0 0 1 x\n"), Err(CliError::Parse { line: 1, .. })));
        let dup = "0 1 0 0 0 1 0\n0 1 0 0 0 1 0\n";
        assert!(matches!(parse(dup), Err(CliError::Parse { line: 2, .. })));
        assert!(matches!(parse("0 1 0 0 0 1 0\n"), Err(CliError::Parse { line: 0, .. })));
    }
}
