//! CSV ingestion of sampled generating curves.
//!
//! Format: header `phi,w,h`, strictly increasing phi, first and last rows
//! closing the poles (|w| <= 1e-6). The samples are least-squares fitted by
//! Chebyshev series; derivatives come from series differentiation.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::ChebSeries;

use super::{ChebCurve, Profile};

/// Pole-closure tolerance for sampled profiles.
pub const CSV_CLOSURE_TOL: f64 = 1e-6;

/// Load a profile from a CSV file with header `phi,w,h`.
pub fn profile_from_csv(path: &Path) -> Result<Profile> {
    let mut reader = csv::Reader::from_path(path)?;
    {
        let headers = reader.headers()?;
        let expected = ["phi", "w", "h"];
        let got: Vec<&str> = headers.iter().map(str::trim).collect();
        if got != expected {
            return Err(Error::Config(format!(
                "csv header must be `phi,w,h`, got `{}`",
                got.join(",")
            )));
        }
    }
    let mut phi = Vec::new();
    let mut w = Vec::new();
    let mut h = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let parse = |i: usize| -> Result<f64> {
            record
                .get(i)
                .ok_or_else(|| Error::Config(format!("row {} too short", line + 2)))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("row {}: {e}", line + 2)))
        };
        phi.push(parse(0)?);
        w.push(parse(1)?);
        h.push(parse(2)?);
    }
    if phi.len() < 8 {
        return Err(Error::Config(format!(
            "need at least 8 samples, got {}",
            phi.len()
        )));
    }
    for pair in phi.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::Config(format!(
                "phi must be strictly increasing, violated near phi = {}",
                pair[0]
            )));
        }
    }
    let w_first = w[0];
    let w_last = *w.last().expect("nonempty");
    if w_first.abs() > CSV_CLOSURE_TOL || w_last.abs() > CSV_CLOSURE_TOL {
        return Err(Error::PoleClosure(format!(
            "first/last w samples {w_first:.3e}, {w_last:.3e} exceed {CSV_CLOSURE_TOL:.1e}"
        )));
    }
    // Shift the parameter so the domain starts at 0.
    let offset = phi[0];
    let l = phi.last().expect("nonempty") - offset;
    let shifted: Vec<f64> = phi.iter().map(|p| p - offset).collect();
    let deg = (shifted.len() / 2).clamp(8, 48);
    let w_fit = ChebSeries::fit_samples(&shifted, &w, 0.0, l, deg)?;
    let h_fit = ChebSeries::fit_samples(&shifted, &h, 0.0, l, deg)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv_profile".to_string());
    Ok(Profile::from_curve(
        name,
        Arc::new(ChebCurve::new(w_fit, h_fit)),
        CSV_CLOSURE_TOL,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_samples(rows: &[(f64, f64, f64)]) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "phi,w,h").unwrap();
        for (p, w, h) in rows {
            writeln!(file, "{p:.17e},{w:.17e},{h:.17e}").unwrap();
        }
        file
    }

    #[test]
    fn reads_sampled_sphere() {
        let rows: Vec<(f64, f64, f64)> = (0..=200)
            .map(|i| {
                let t = std::f64::consts::PI * i as f64 / 200.0;
                (t, t.sin(), t.cos())
            })
            .collect();
        let file = write_samples(&rows);
        let p = profile_from_csv(file.path()).unwrap();
        assert!((p.l() - std::f64::consts::PI).abs() < 1e-12);
        for i in 1..20 {
            let t = p.l() * i as f64 / 20.0;
            assert!((p.w(t) - t.sin()).abs() < 1e-8, "w off at {t}");
            assert!((p.h_jet(t).d1 + t.sin()).abs() < 1e-6, "h' off at {t}");
        }
        assert!(p.validated().is_ok());
    }

    #[test]
    fn rejects_open_pole() {
        let rows: Vec<(f64, f64, f64)> = (0..=100)
            .map(|i| {
                let t = std::f64::consts::PI * i as f64 / 100.0;
                (t, t.sin() + 0.01, t.cos())
            })
            .collect();
        let file = write_samples(&rows);
        assert!(matches!(
            profile_from_csv(file.path()),
            Err(Error::PoleClosure(_))
        ));
    }

    #[test]
    fn rejects_nonmonotone_phi() {
        let rows = vec![
            (0.0, 0.0, 1.0),
            (0.5, 0.4, 0.9),
            (0.4, 0.5, 0.8),
            (1.0, 0.8, 0.5),
            (1.5, 0.9, 0.2),
            (2.0, 0.8, -0.2),
            (2.5, 0.5, -0.6),
            (3.0, 0.1, -0.9),
            (std::f64::consts::PI, 0.0, -1.0),
        ];
        let file = write_samples(&rows);
        assert!(profile_from_csv(file.path()).is_err());
    }

    #[test]
    fn rejects_bad_header() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "x,y,z").unwrap();
        writeln!(file, "0,0,1").unwrap();
        assert!(profile_from_csv(file.path()).is_err());
    }
}
