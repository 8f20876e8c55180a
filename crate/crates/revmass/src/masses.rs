//! Mass functionals of S_a: Brown-York, Hawking and the ADM flux integral,
//! plus the exact-cancellation diagnostic of the total-derivative part of
//! the Brown-York integrand.
//!
//! All theta integrals reduce to 2 pi factors by axisymmetry, so every mass
//! is a single quadrature over the profile parameter.

use serde::Serialize;

use crate::ambient::{AmbientMetric, MetricKind};
use crate::embedding::{embed_revolution, reference_mean_curvature, EmbeddedCurve};
use crate::error::{Error, Result};
use crate::geometry::{
    self, conformal_factor_jet, hprime_over_w, InducedMetric,
};
use crate::numerics::{integrate, QuadResult, QuadSpec};
use crate::profiles::{reparametrize_arclength, Profile};

/// Ancillary data reported with each mass evaluation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MassDiagnostics {
    /// Total-derivative integral that vanishes analytically.
    pub cancellation: f64,
    /// sup over an interior grid of |H0 - H|.
    pub sup_h0_minus_h: f64,
    /// Area of S_a in the ambient metric.
    pub area: f64,
    /// Largest quadrature error estimate among the integrals.
    pub quad_error: f64,
}

/// Mass values of one surface under one ambient metric.
#[derive(Clone, Debug, Serialize)]
pub struct MassReport {
    pub a: f64,
    pub metric_kind: String,
    pub profile_name: String,
    pub m_by: f64,
    pub m_hawking: f64,
    pub m_adm_flux: f64,
    pub diagnostics: MassDiagnostics,
}

/// Mean curvature of S_a in the ambient metric, dispatched by kind.
pub fn ambient_mean_curvature(
    p: &Profile,
    a: f64,
    phi: f64,
    metric: &AmbientMetric,
) -> Result<f64> {
    match metric.kind() {
        MetricKind::Euclidean => geometry::euclid_mean_curvature(p, a, phi),
        MetricKind::Schwarzschild { .. } => geometry::conformal_mean_curvature(p, a, phi, metric),
        MetricKind::Perturbed { .. } => geometry::general_mean_curvature(p, a, phi, metric),
    }
}

fn nan_on_err(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::NAN)
}

struct BrownYorkParts {
    value: QuadResult,
    sup_h0_minus_h: f64,
}

fn brown_york_parts(
    p: &Profile,
    a: f64,
    metric: &AmbientMetric,
    quad: &QuadSpec,
) -> Result<BrownYorkParts> {
    let im = InducedMetric::new(p, a, metric)?;
    let ec = embed_revolution(&im)?;
    let integrand = |phi: f64| {
        let h0 = nan_on_err(reference_mean_curvature(&ec, phi));
        let h = nan_on_err(ambient_mean_curvature(p, a, phi, metric));
        (h0 - h) * im.area_element(phi)
    };
    let value = integrate(integrand, 0.0, p.l(), quad)?;
    let sup = sup_h0_minus_h(p, a, metric, &ec)?;
    Ok(BrownYorkParts {
        value: QuadResult {
            value: 0.25 * value.value, // 2 pi / (8 pi)
            ..value
        },
        sup_h0_minus_h: sup,
    })
}

fn sup_h0_minus_h(
    p: &Profile,
    a: f64,
    metric: &AmbientMetric,
    ec: &EmbeddedCurve,
) -> Result<f64> {
    let n = 256;
    let l = p.l();
    let mut sup: f64 = 0.0;
    for i in 0..n {
        let phi = l * (i as f64 + 0.5) / n as f64;
        let h0 = reference_mean_curvature(ec, phi)?;
        let h = ambient_mean_curvature(p, a, phi, metric)?;
        sup = sup.max((h0 - h).abs());
    }
    Ok(sup)
}

/// Brown-York mass (1/8 pi) int (H0 - H) dsigma, with dsigma induced by the
/// ambient metric and H0 from the isometric embedding of that metric.
pub fn brown_york(p: &Profile, a: f64, metric: &AmbientMetric, quad: &QuadSpec) -> Result<f64> {
    Ok(brown_york_parts(p, a, metric, quad)?.value.value)
}

/// Hawking mass sqrt(Area/16 pi) (1 - (1/16 pi) int H^2 dsigma).
pub fn hawking(p: &Profile, a: f64, metric: &AmbientMetric, quad: &QuadSpec) -> Result<f64> {
    let im = InducedMetric::new(p, a, metric)?;
    let area = integrate(|phi| im.area_element(phi), 0.0, p.l(), quad)?;
    let willmore = integrate(
        |phi| {
            let h = nan_on_err(ambient_mean_curvature(p, a, phi, metric));
            h * h * im.area_element(phi)
        },
        0.0,
        p.l(),
        quad,
    )?;
    let area_total = 2.0 * std::f64::consts::PI * area.value;
    let willmore_total = 2.0 * std::f64::consts::PI * willmore.value;
    Ok((area_total / (16.0 * std::f64::consts::PI)).sqrt()
        * (1.0 - willmore_total / (16.0 * std::f64::consts::PI)))
}

/// ADM flux integral (1/16 pi) oint (g_ij,i - g_ii,j) nu^j dSigma0 over S_a,
/// with Euclidean normal and area element.
pub fn adm_flux(p: &Profile, a: f64, metric: &AmbientMetric, quad: &QuadSpec) -> Result<f64> {
    let integrand = |phi: f64| {
        let w = p.w_jet(phi);
        let h = p.h_jet(phi);
        let t = p.speed_jet(phi).f;
        let x = [a * w.f, 0.0, a * h.f];
        let nu = [-h.d1 / t, 0.0, w.d1 / t];
        let dg = metric.dmetric_at(x);
        let mut flux = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                flux += (dg[i][i][j] - dg[j][i][i]) * nu[j];
            }
        }
        flux * a * a * w.f * t
    };
    // 2 pi / (16 pi) = 1/8.
    Ok(integrate(integrand, 0.0, p.l(), quad)?.value / 8.0)
}

/// The total-derivative part of the Brown-York integrand,
/// 2 pi a int (4 phi' w w'/h' + 2 phi'' w^2/h' - 2 phi' w^2 h''/h'^2) dphi,
/// which equals 2 pi a int d/dphi (2 phi' w^2 / h') = 0 analytically.
///
/// Requires an arclength profile and a metric with a conformal factor.
pub fn cancellation_diagnostic(
    p: &Profile,
    a: f64,
    metric: &AmbientMetric,
    quad: &QuadSpec,
) -> Result<f64> {
    if metric.is_euclidean() {
        return Err(Error::Metric(
            "cancellation diagnostic needs a conformal factor (non-Euclidean metric)".into(),
        ));
    }
    if !p.is_arclength() {
        return Err(Error::InvalidParameter(
            "cancellation diagnostic requires an arclength profile".into(),
        ));
    }
    let m = metric.mass();
    let integrand = |phi: f64| {
        let w = p.w_jet(phi);
        let h = p.h_jet(phi);
        let cf = conformal_factor_jet(p, a, m, phi);
        // w/h' via the pole-safe reciprocal ratio.
        let w_over_hp = 1.0 / hprime_over_w(p, phi);
        4.0 * cf.d1 * w.d1 * w_over_hp + 2.0 * cf.d2 * w.f * w_over_hp
            - 2.0 * cf.d1 * h.d2 * w_over_hp * w_over_hp
    };
    let result = integrate(integrand, 0.0, p.l(), quad)?;
    Ok(2.0 * std::f64::consts::PI * a * result.value)
}

/// Evaluate all three masses and the diagnostics for one (surface, metric)
/// pair. The cancellation diagnostic is evaluated on the arclength
/// reparametrization when the metric carries a conformal factor.
pub fn mass_report(
    p: &Profile,
    a: f64,
    metric: &AmbientMetric,
    quad: &QuadSpec,
) -> Result<MassReport> {
    let im = InducedMetric::new(p, a, metric)?;
    let by = brown_york_parts(p, a, metric, quad)?;
    let area_result = integrate(|phi| im.area_element(phi), 0.0, p.l(), quad)?;
    let willmore = integrate(
        |phi| {
            let h = nan_on_err(ambient_mean_curvature(p, a, phi, metric));
            h * h * im.area_element(phi)
        },
        0.0,
        p.l(),
        quad,
    )?;
    let area_total = 2.0 * std::f64::consts::PI * area_result.value;
    let willmore_total = 2.0 * std::f64::consts::PI * willmore.value;
    let m_hawking = (area_total / (16.0 * std::f64::consts::PI)).sqrt()
        * (1.0 - willmore_total / (16.0 * std::f64::consts::PI));
    let m_adm = adm_flux(p, a, metric, quad)?;
    let cancellation = if metric.is_euclidean() {
        0.0
    } else if p.is_arclength() {
        cancellation_diagnostic(p, a, metric, quad)?
    } else {
        let arc = reparametrize_arclength(p, 1e-10)?;
        cancellation_diagnostic(&arc, a, metric, quad)?
    };
    let quad_error = by
        .value
        .error_estimate
        .max(area_result.error_estimate)
        .max(willmore.error_estimate);
    Ok(MassReport {
        a,
        metric_kind: metric.kind_name().to_string(),
        profile_name: p.name().to_string(),
        m_by: by.value.value,
        m_hawking,
        m_adm_flux: m_adm,
        diagnostics: MassDiagnostics {
            cancellation,
            sup_h0_minus_h: by.sup_h0_minus_h,
            area: area_total,
            quad_error,
        },
    })
}
