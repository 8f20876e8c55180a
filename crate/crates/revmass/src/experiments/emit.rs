//! Deterministic output emission: CSV mass tables, JSON studies and
//! gnuplot-ready plot data.

use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::masses::MassReport;

use super::run::ConvergenceStudy;

/// 17 significant digits: round-trip exact for f64.
pub fn format_g17(x: f64) -> String {
    format!("{x:.16e}")
}

pub const MASS_CSV_HEADER: &str =
    "a,metric,profile,m_by,m_hawking,m_adm_flux,area,sup_H0_minus_H,diag_cancellation,quad_err";

/// Write the mass table CSV (one row per report).
pub fn write_mass_csv(path: &Path, reports: &[MassReport]) -> Result<()> {
    let mut out = String::new();
    out.push_str(MASS_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            format_g17(r.a),
            r.metric_kind,
            r.profile_name,
            format_g17(r.m_by),
            format_g17(r.m_hawking),
            format_g17(r.m_adm_flux),
            format_g17(r.diagnostics.area),
            format_g17(r.diagnostics.sup_h0_minus_h),
            format_g17(r.diagnostics.cancellation),
            format_g17(r.diagnostics.quad_error),
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Write the full study as JSON (field names mirror the CSV schema).
pub fn write_study_json(path: &Path, study: &ConvergenceStudy) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut writer = std::io::BufWriter::new(file);
    serde_json::to_writer_pretty(&mut writer, study)
        .map_err(|e| crate::error::Error::Config(format!("json serialization: {e}")))?;
    writer.write_all(b"\n")?;
    writer.flush()?;
    Ok(())
}

/// Gnuplot-compatible whitespace-separated data:
/// columns a, m_by, m_hawking, m_adm, |m_by - m_adm_limit|.
pub fn emit_plotdata(study: &ConvergenceStudy, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str("# a m_by m_hawking m_adm abs_m_by_minus_limit\n");
    for r in &study.reports {
        let dev = (r.m_by - study.m_adm_limit).abs();
        out.push_str(&format!(
            "{} {} {} {} {}\n",
            format_g17(r.a),
            format_g17(r.m_by),
            format_g17(r.m_hawking),
            format_g17(r.m_adm_flux),
            format_g17(dev),
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}
