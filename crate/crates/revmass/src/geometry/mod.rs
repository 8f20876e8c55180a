//! Fundamental forms and curvatures of the scaled revolution surface S_a
//! under each ambient metric.
//!
//! Conventions: outward unit normal, mean curvature H = kappa_1 + kappa_2,
//! a round sphere of radius a has H = 2/a. Raw rotation formulas are 0/0 at
//! the poles; within `POLE_FRACTION * l` of either pole the singular ratios
//! switch to Taylor quotients seeded by the pole jets.

mod induced;

pub use induced::{InducedMetric, InducedSource};

use crate::ambient::{invert3, AmbientMetric, MetricKind};
use crate::error::{Error, Result};
use crate::numerics::Jet3;
use crate::profiles::Profile;

/// Fraction of the parameter interval treated as the pole neighborhood.
pub const POLE_FRACTION: f64 = 1e-4;

/// Threshold on |h''| at a pole below which condition (convexity at the
/// pole) fails and the pole limits are undefined.
pub const POLE_HPP_THRESHOLD: f64 = 1e-8;

/// Pointwise curvature data of S_a at a parameter value.
#[derive(Clone, Copy, Debug)]
pub struct CurvatureSample {
    pub phi: f64,
    /// Meridian principal curvature.
    pub kappa1: f64,
    /// Parallel principal curvature.
    pub kappa2: f64,
    /// Mean curvature kappa1 + kappa2.
    pub h: f64,
    /// Gauss curvature of the induced 2-metric.
    pub k: f64,
}

/// Continuous extension of h'(phi)/w(phi) across the poles.
///
/// Away from the poles this is the raw ratio; inside the pole neighborhood
/// it is the quotient of second-order Taylor expansions seeded by the pole
/// jets (L'Hopital limit at the pole itself).
pub fn hprime_over_w(p: &Profile, phi: f64) -> f64 {
    let l = p.l();
    let eps = POLE_FRACTION * l;
    let (pole, delta) = if phi < eps {
        (0.0, phi)
    } else if phi > l - eps {
        (l, phi - l)
    } else {
        let w = p.w(phi);
        return p.h_jet(phi).d1 / w;
    };
    let w = p.w_jet(pole);
    let h = p.h_jet(pole);
    let num = h.d2 + 0.5 * h.d3 * delta;
    let den = w.d1 + 0.5 * w.d2 * delta + w.d3 * delta * delta / 6.0;
    num / den
}

/// Limits of w/h' at both poles (L'Hopital: w'(pole)/h''(pole)).
#[derive(Clone, Copy, Debug)]
pub struct PoleLimits {
    pub w_over_hprime_at_0: f64,
    pub w_over_hprime_at_l: f64,
}

pub fn pole_limits(p: &Profile) -> Result<PoleLimits> {
    let at = |pole: f64, which: &'static str| -> Result<f64> {
        let w = p.w_jet(pole);
        let h = p.h_jet(pole);
        if h.d2.abs() < POLE_HPP_THRESHOLD {
            return Err(Error::PoleLimitUndefined { which, hpp: h.d2 });
        }
        Ok(w.d1 / h.d2)
    };
    Ok(PoleLimits {
        w_over_hprime_at_0: at(0.0, "lower")?,
        w_over_hprime_at_l: at(p.l(), "upper")?,
    })
}

/// Meridian principal curvature of S_a with respect to the flat metric:
/// (h'w'' - w'h'') / (a T^3). Smooth through the poles.
pub fn meridian_curvature(p: &Profile, a: f64, phi: f64) -> f64 {
    let w = p.w_jet(phi);
    let h = p.h_jet(phi);
    let t2 = w.d1 * w.d1 + h.d1 * h.d1;
    (h.d1 * w.d2 - w.d1 * h.d2) / (a * t2 * t2.sqrt())
}

/// Parallel principal curvature -h'/(a T w), pole-safe.
pub fn parallel_curvature(p: &Profile, a: f64, phi: f64) -> f64 {
    let t = p.speed_jet(phi).f;
    -hprime_over_w(p, phi) / (a * t)
}

/// Euclidean principal curvatures (meridian, parallel) with checks.
pub fn principal_curvatures(p: &Profile, a: f64, phi: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("scale a = {a} not positive")));
    }
    let t = p.speed_jet(phi);
    if !(t.f > 0.0) {
        return Err(Error::DegenerateTangent {
            phi,
            speed_sq: t.f * t.f,
        });
    }
    let l = p.l();
    let interior = phi > POLE_FRACTION * l && phi < l - POLE_FRACTION * l;
    if interior && !(p.w(phi) > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "w(phi) = {:.3e} not positive at interior phi = {phi:.6}",
            p.w(phi)
        )));
    }
    Ok((meridian_curvature(p, a, phi), parallel_curvature(p, a, phi)))
}

/// Mean curvature of S_a with respect to the flat metric.
pub fn euclid_mean_curvature(p: &Profile, a: f64, phi: f64) -> Result<f64> {
    let (km, kp) = principal_curvatures(p, a, phi)?;
    Ok(km + kp)
}

/// Gauss curvature of S_a with respect to the flat metric
/// (product of the principal curvatures; at the poles the limit
/// h''(pole)^2 / a^2 for arclength profiles).
pub fn euclid_gauss_curvature(p: &Profile, a: f64, phi: f64) -> Result<f64> {
    let (km, kp) = principal_curvatures(p, a, phi)?;
    Ok(km * kp)
}

/// Conformal factor of the Schwarzschild metric restricted to S_a, as a jet
/// in phi: 1 + m / (2 a sqrt(w^2 + h^2)).
pub fn conformal_factor_jet(p: &Profile, a: f64, mass: f64, phi: f64) -> Jet3 {
    let radius = p.radius_jet(phi);
    Jet3::constant(1.0) + radius.recip().scale(mass / (2.0 * a))
}

/// Euclidean-normal derivative of the conformal factor along S_a:
/// n(phi) = -m (h w' - w h') / (2 a^2 T (w^2 + h^2)^{3/2}).
pub fn normal_phi_derivative(p: &Profile, a: f64, mass: f64, phi: f64) -> f64 {
    let w = p.w_jet(phi);
    let h = p.h_jet(phi);
    let t = p.speed_jet(phi).f;
    let rad2 = w.f * w.f + h.f * h.f;
    -mass * (h.f * w.d1 - w.f * h.d1) / (2.0 * a * a * t * rad2 * rad2.sqrt())
}

/// Mean curvature of S_a with respect to the Schwarzschild metric
/// phi^4 delta: H = phi^-2 (Hbar + 4 phi^-1 n(phi)).
pub fn conformal_mean_curvature(
    p: &Profile,
    a: f64,
    phi: f64,
    metric: &AmbientMetric,
) -> Result<f64> {
    match metric.kind() {
        MetricKind::Schwarzschild { mass } => {
            let hbar = euclid_mean_curvature(p, a, phi)?;
            let cf = conformal_factor_jet(p, a, *mass, phi).f;
            let nphi = normal_phi_derivative(p, a, *mass, phi);
            Ok((hbar + 4.0 * nphi / cf) / (cf * cf))
        }
        _ => Err(Error::Metric(
            "conformal_mean_curvature requires the schwarzschild kind".into(),
        )),
    }
}

/// Gauss curvature of a rotationally symmetric 2-metric E dphi^2 + G dth^2
/// at an interior parameter value:
/// K = -G''/(2EG) + G'(E'G + EG')/(4 (EG)^2).
pub fn induced_gauss_curvature(im: &InducedMetric, phi: f64) -> Result<f64> {
    let l = im.l();
    if !(phi > 0.0 && phi < l) {
        return Err(Error::InvalidParameter(format!(
            "induced gauss curvature needs interior phi, got {phi}"
        )));
    }
    let e = im.e_jet(phi);
    let g = im.g_jet(phi);
    let eg = e.f * g.f;
    if !(eg > 0.0) {
        return Err(Error::DegenerateInducedMetric(phi));
    }
    Ok(-g.d2 / (2.0 * eg) + g.d1 * (e.d1 * g.f + e.f * g.d1) / (4.0 * eg * eg))
}

/// Mean curvature of S_a in an arbitrary ambient metric, from the ambient
/// Christoffel symbols and the exact second-order parametrization data.
///
/// The surface is charted at theta = 0 (axisymmetry); the g-unit outward
/// normal is built from the Euclidean conormal, and the second fundamental
/// form is traced with the inverse induced metric.
pub fn general_mean_curvature(
    p: &Profile,
    a: f64,
    phi: f64,
    metric: &AmbientMetric,
) -> Result<f64> {
    let w = p.w_jet(phi);
    let h = p.h_jet(phi);
    let x = [a * w.f, 0.0, a * h.f];
    let xp = [a * w.d1, 0.0, a * h.d1];
    let xt = [0.0, a * w.f, 0.0];
    let xpp = [a * w.d2, 0.0, a * h.d2];
    let xpt = [0.0, a * w.d1, 0.0];
    let xtt = [-a * w.f, 0.0, 0.0];

    let g = metric.metric_at(x);
    let gi = invert3(&g).ok_or(Error::DegenerateInducedMetric(phi))?;
    let gamma = metric.christoffel_at(x);

    let dot = |u: [f64; 3], v: [f64; 3]| -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += g[i][j] * u[i] * v[j];
            }
        }
        s
    };
    // Euclidean conormal N annihilates both tangents in any metric once
    // raised with g^{-1}.
    let n_cov = [
        xp[1] * xt[2] - xp[2] * xt[1],
        xp[2] * xt[0] - xp[0] * xt[2],
        xp[0] * xt[1] - xp[1] * xt[0],
    ];
    let mut nu = [0.0; 3];
    for i in 0..3 {
        for j in 0..3 {
            nu[i] += gi[i][j] * n_cov[j];
        }
    }
    let norm2 = dot(nu, nu);
    if !(norm2 > 0.0) {
        return Err(Error::EmbeddingFailed {
            phi,
            reason: "normal construction failed (degenerate metric)".into(),
        });
    }
    let norm = norm2.sqrt();
    // Outward orientation: positive Euclidean pairing with N.
    let sign = if nu[0] * n_cov[0] + nu[1] * n_cov[1] + nu[2] * n_cov[2] >= 0.0 {
        1.0
    } else {
        -1.0
    };
    for v in &mut nu {
        *v *= sign / norm;
    }

    let second = |dd: [f64; 3], u: [f64; 3], v: [f64; 3]| -> f64 {
        // -g(nabla_u v, nu) with nabla_u v = dd + Gamma(u, v).
        let mut vec = dd;
        for k in 0..3 {
            let mut s = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    s += gamma[k][i][j] * u[i] * v[j];
                }
            }
            vec[k] += s;
        }
        -dot(vec, nu)
    };
    let a_pp = second(xpp, xp, xp);
    let a_pt = second(xpt, xp, xt);
    let a_tt = second(xtt, xt, xt);

    let e = dot(xp, xp);
    let f = dot(xp, xt);
    let g22 = dot(xt, xt);
    let det = e * g22 - f * f;
    if !(det > 0.0) {
        return Err(Error::DegenerateInducedMetric(phi));
    }
    Ok((g22 * a_pp - 2.0 * f * a_pt + e * a_tt) / det)
}

/// Principal curvatures, mean and induced Gauss curvature at an interior
/// parameter value under the given ambient metric.
pub fn curvature_sample(
    p: &Profile,
    a: f64,
    phi: f64,
    metric: &AmbientMetric,
) -> Result<CurvatureSample> {
    let (kappa1, kappa2, h) = match metric.kind() {
        MetricKind::Euclidean => {
            let (km, kp) = principal_curvatures(p, a, phi)?;
            (km, kp, km + kp)
        }
        MetricKind::Schwarzschild { mass } => {
            // lambda_i = phi^-2 lambda_bar_i + 2 phi^-3 n(phi).
            let (km, kp) = principal_curvatures(p, a, phi)?;
            let cf = conformal_factor_jet(p, a, *mass, phi).f;
            let nphi = normal_phi_derivative(p, a, *mass, phi);
            let k1 = km / (cf * cf) + 2.0 * nphi / (cf * cf * cf);
            let k2 = kp / (cf * cf) + 2.0 * nphi / (cf * cf * cf);
            (k1, k2, k1 + k2)
        }
        MetricKind::Perturbed { .. } => {
            let ht = general_mean_curvature(p, a, phi, metric)?;
            // Individual principal curvatures for the perturbed kind are not
            // needed by any consumer; report the symmetrized pair.
            (0.5 * ht, 0.5 * ht, ht)
        }
    };
    let im = InducedMetric::new(p, a, metric)?;
    let k = induced_gauss_curvature(&im, phi)?;
    Ok(CurvatureSample {
        phi,
        kappa1,
        kappa2,
        h,
        k,
    })
}
