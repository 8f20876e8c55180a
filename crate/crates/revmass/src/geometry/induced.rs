//! Rotationally symmetric 2-metric E dphi^2 + G dtheta^2 induced on S_a by
//! an ambient metric, with first and second parameter derivatives.
//!
//! Jets returned here are valid through second order; the third component is
//! zeroed. Euclidean and conformal sources use closed forms; the perturbed
//! source contracts the exact ambient derivative data along the profile.

use crate::ambient::{AmbientMetric, MetricKind, Sym3};
use crate::error::{Error, Result};
use crate::numerics::Jet3;
use crate::profiles::Profile;

use super::conformal_factor_jet;

/// Which ambient metric induced the 2-metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedSource {
    Euclidean,
    Conformal,
    Perturbed,
}

/// Induced 2-metric on the scaled surface S_a.
#[derive(Clone)]
pub struct InducedMetric {
    source: InducedSource,
    profile: Profile,
    scale: f64,
    metric: AmbientMetric,
}

fn zero_d3(j: Jet3) -> Jet3 {
    Jet3::new(j.f, j.d1, j.d2, 0.0)
}

impl InducedMetric {
    pub fn new(profile: &Profile, scale: f64, metric: &AmbientMetric) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale a = {scale} not positive"
            )));
        }
        let source = match metric.kind() {
            MetricKind::Euclidean => InducedSource::Euclidean,
            MetricKind::Schwarzschild { .. } => InducedSource::Conformal,
            MetricKind::Perturbed { perturbation, .. } => {
                if !perturbation.is_axisymmetric() {
                    return Err(Error::Metric(format!(
                        "perturbation `{}` must be axisymmetric to induce a revolution metric",
                        perturbation.name()
                    )));
                }
                InducedSource::Perturbed
            }
        };
        let im = InducedMetric {
            source,
            profile: profile.clone(),
            scale,
            metric: metric.clone(),
        };
        if source == InducedSource::Perturbed {
            // The dphi dtheta component must vanish for the revolution
            // embedding ansatz; check on a probe grid.
            let l = profile.l();
            for i in 1..32 {
                let phi = l * i as f64 / 32.0;
                let cross = im.cross_term(phi);
                let scale_ref = (im.e_jet(phi).f * im.g_jet(phi).f).sqrt();
                if cross.abs() > 1e-10 * scale_ref {
                    return Err(Error::Metric(format!(
                        "induced metric has dphi dtheta cross term {cross:.3e} at phi = {phi:.4}"
                    )));
                }
            }
        }
        Ok(im)
    }

    pub fn source(&self) -> InducedSource {
        self.source
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn metric(&self) -> &AmbientMetric {
        &self.metric
    }

    pub fn l(&self) -> f64 {
        self.profile.l()
    }

    /// E(phi) with first and second derivatives.
    pub fn e_jet(&self, phi: f64) -> Jet3 {
        let a2 = self.scale * self.scale;
        match self.source {
            InducedSource::Euclidean => zero_d3(self.profile.speed_sq_jet(phi).scale(a2)),
            InducedSource::Conformal => {
                let cf = conformal_factor_jet(&self.profile, self.scale, self.metric.mass(), phi);
                zero_d3((cf.powi(4) * self.profile.speed_sq_jet(phi)).scale(a2))
            }
            InducedSource::Perturbed => {
                let w = self.profile.w_jet(phi);
                let h = self.profile.h_jet(phi);
                let a = self.scale;
                let tangent = [a * w.d1, 0.0, a * h.d1];
                let dtangent = [a * w.d2, 0.0, a * h.d2];
                let d2tangent = [a * w.d3, 0.0, a * h.d3];
                self.quadratic_form_jet(phi, tangent, dtangent, d2tangent)
            }
        }
    }

    /// G(phi) with first and second derivatives.
    pub fn g_jet(&self, phi: f64) -> Jet3 {
        let a2 = self.scale * self.scale;
        match self.source {
            InducedSource::Euclidean => {
                let w = self.profile.w_jet(phi);
                zero_d3((w * w).scale(a2))
            }
            InducedSource::Conformal => {
                let cf = conformal_factor_jet(&self.profile, self.scale, self.metric.mass(), phi);
                let w = self.profile.w_jet(phi);
                zero_d3((cf.powi(4) * w * w).scale(a2))
            }
            InducedSource::Perturbed => {
                let w = self.profile.w_jet(phi);
                let a = self.scale;
                let y = [0.0, a * w.f, 0.0];
                let dy = [0.0, a * w.d1, 0.0];
                let d2y = [0.0, a * w.d2, 0.0];
                self.quadratic_form_jet(phi, y, dy, d2y)
            }
        }
    }

    /// Area element sqrt(E G) at phi.
    pub fn area_element(&self, phi: f64) -> f64 {
        (self.e_jet(phi).f * self.g_jet(phi).f).sqrt()
    }

    /// g(X_phi, X_theta) at theta = 0; must vanish for axisymmetric
    /// non-rotating perturbations.
    fn cross_term(&self, phi: f64) -> f64 {
        let w = self.profile.w_jet(phi);
        let h = self.profile.h_jet(phi);
        let a = self.scale;
        let x = [a * w.f, 0.0, a * h.f];
        let xp = [a * w.d1, 0.0, a * h.d1];
        let xt = [0.0, a * w.f, 0.0];
        let g = self.metric.metric_at(x);
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += g[i][j] * xp[i] * xt[j];
            }
        }
        s
    }

    /// d^k/dphi^k of g_ij(x(phi)) u^i(phi) u^j(phi) for a curve of vectors u
    /// with derivatives du, d2u, using exact ambient derivatives.
    fn quadratic_form_jet(
        &self,
        phi: f64,
        u: [f64; 3],
        du: [f64; 3],
        d2u: [f64; 3],
    ) -> Jet3 {
        let w = self.profile.w_jet(phi);
        let h = self.profile.h_jet(phi);
        let a = self.scale;
        let x = [a * w.f, 0.0, a * h.f];
        let xdot = [a * w.d1, 0.0, a * h.d1];
        let xddot = [a * w.d2, 0.0, a * h.d2];

        let g = self.metric.metric_at(x);
        let dg = self.metric.dmetric_at(x);
        let d2g = self.metric.d2metric_at(x);

        let form = |m: &Sym3, p: [f64; 3], q: [f64; 3]| -> f64 {
            let mut s = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    s += m[i][j] * p[i] * q[j];
                }
            }
            s
        };
        // dg_dir[i][j] = d_k g_ij xdot^k, and the same against xddot.
        let mut dg_dot: Sym3 = [[0.0; 3]; 3];
        let mut dg_ddot: Sym3 = [[0.0; 3]; 3];
        let mut d2g_dot2: Sym3 = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    dg_dot[i][j] += dg[k][i][j] * xdot[k];
                    dg_ddot[i][j] += dg[k][i][j] * xddot[k];
                    for l in 0..3 {
                        d2g_dot2[i][j] += d2g[l][k][i][j] * xdot[k] * xdot[l];
                    }
                }
            }
        }
        let value = form(&g, u, u);
        let first = form(&dg_dot, u, u) + 2.0 * form(&g, du, u);
        let second = form(&d2g_dot2, u, u)
            + form(&dg_ddot, u, u)
            + 4.0 * form(&dg_dot, du, u)
            + 2.0 * form(&g, d2u, u)
            + 2.0 * form(&g, du, du);
        Jet3::new(value, first, second, 0.0)
    }
}
