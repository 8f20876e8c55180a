//! Explicit isometric embedding of a rotationally symmetric 2-metric
//! E dphi^2 + G dtheta^2 into flat 3-space as a revolution surface, and the
//! reference mean curvature of the image.
//!
//! The generating curve is u = sqrt(G)/a, v' = -sqrt(E/a^2 - u'^2); the
//! isometry a^2 u^2 = G, a^2 (u'^2 + v'^2) = E holds by construction. u
//! extends oddly across the poles, which the near-pole differentiation
//! stencils exploit (sqrt(G) itself is not smooth there).

use crate::error::{Error, Result};
use crate::geometry::{induced_gauss_curvature, InducedMetric};
use crate::numerics::{gauss_rule, Jet3};

/// Radicand values in [-RADICAND_CLAMP, 0) count as pole roundoff and clamp
/// to zero; anything below is a genuine embedding failure.
pub const RADICAND_CLAMP: f64 = 1e-10;

/// Fraction of the domain near each pole where u', u'' switch to
/// odd-extension finite differences of u.
const FD_POLE_FRACTION: f64 = 4e-3;

/// Probe grid used to verify embeddability at construction.
const PROBE_NODES: usize = 129;

/// Euclidean generating curve (u, v) of the embedded image of an induced
/// metric; the surface is (a u cos th, a u sin th, a v).
pub struct EmbeddedCurve {
    im: InducedMetric,
    v0: f64,
    /// Cumulative integral of v' at segment boundaries for v(phi) queries.
    v_table: Vec<f64>,
}

impl EmbeddedCurve {
    pub fn l(&self) -> f64 {
        self.im.l()
    }

    pub fn scale(&self) -> f64 {
        self.im.scale()
    }

    pub fn induced(&self) -> &InducedMetric {
        &self.im
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    fn u_value(&self, phi: f64) -> f64 {
        let l = self.l();
        // Odd extension across both poles.
        let (sign, p) = if phi < 0.0 {
            (-1.0, -phi)
        } else if phi > l {
            (-1.0, 2.0 * l - phi)
        } else {
            (1.0, phi)
        };
        sign * self.im.g_jet(p).f.max(0.0).sqrt() / self.scale()
    }

    /// u and u' from the G jet. The ratio G'/(2 sqrt(G)) is cancellation-free
    /// arbitrarily close to the poles; at the poles themselves the limit is
    /// +-sqrt(G''/2).
    fn u01(&self, phi: f64) -> (f64, f64) {
        let l = self.l();
        let a = self.scale();
        let g = self.im.g_jet(phi);
        if phi <= 0.0 || phi >= l {
            let sign = if phi <= 0.0 { 1.0 } else { -1.0 };
            (0.0, sign * (g.d2.max(0.0) / 2.0).sqrt() / a)
        } else {
            let sq = g.f.max(0.0).sqrt();
            (sq / a, g.d1 / (2.0 * a * sq))
        }
    }

    /// u with two derivatives. u'' is a genuine second difference of the
    /// metric data and cancels catastrophically near the poles, so inside
    /// the margin it comes from a fourth-order odd-extension stencil on u.
    pub fn u_jet(&self, phi: f64) -> Jet3 {
        let l = self.l();
        let margin = FD_POLE_FRACTION * l;
        let (u, u1) = self.u01(phi);
        let u2 = if phi > margin && phi < l - margin {
            let g = self.im.g_jet(phi);
            let a = self.scale();
            (2.0 * g.f * g.d2 - g.d1 * g.d1) / (4.0 * a * g.f * g.f.sqrt())
        } else {
            let h = 1e-3 * l;
            let um2 = self.u_value(phi - 2.0 * h);
            let um1 = self.u_value(phi - h);
            let u0 = self.u_value(phi);
            let up1 = self.u_value(phi + h);
            let up2 = self.u_value(phi + 2.0 * h);
            (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h)
        };
        Jet3::new(u, u1, u2, 0.0)
    }

    /// v' at `phi`, odd-extended across the poles for stencil use.
    fn v1_at(&self, phi: f64) -> Result<f64> {
        let l = self.l();
        let (sign, p) = if phi < 0.0 {
            (-1.0, -phi)
        } else if phi > l {
            (-1.0, 2.0 * l - phi)
        } else {
            (1.0, phi)
        };
        let e = self.im.e_jet(p);
        let (_, u1) = self.u01(p);
        let a2 = self.scale() * self.scale();
        let radicand = e.f / a2 - u1 * u1;
        if radicand < -RADICAND_CLAMP {
            return Err(Error::EmbeddingFailed {
                phi: p,
                reason: format!(
                    "radicand {radicand:.3e} below -{RADICAND_CLAMP:.0e}: scale too small for the embedding formula"
                ),
            });
        }
        Ok(sign * -radicand.max(0.0).sqrt())
    }

    /// v' (negative inside) with its derivative: v' = -sqrt(R),
    /// R = E/a^2 - u'^2. Near the poles v'' switches to a fourth-order
    /// odd-extension stencil on v' (the direct form is 0/0 there).
    pub fn v_prime_jet(&self, phi: f64) -> Result<Jet3> {
        let l = self.l();
        let margin = FD_POLE_FRACTION * l;
        let v1 = self.v1_at(phi)?;
        let v2 = if phi > margin && phi < l - margin && v1 < 0.0 {
            let e = self.im.e_jet(phi);
            let u = self.u_jet(phi);
            let a2 = self.scale() * self.scale();
            let rp = e.d1 / a2 - 2.0 * u.d1 * u.d2;
            rp / (2.0 * v1)
        } else {
            let h = 1e-3 * l;
            (self.v1_at(phi - 2.0 * h)? - 8.0 * self.v1_at(phi - h)? + 8.0 * self.v1_at(phi + h)?
                - self.v1_at(phi + 2.0 * h)?)
                / (12.0 * h)
        };
        Ok(Jet3::new(0.0, v1, v2, 0.0))
    }

    /// Vertical coordinate by cumulative quadrature from v(0) = v0.
    pub fn v(&self, phi: f64) -> Result<f64> {
        let l = self.l();
        let n = self.v_table.len() - 1;
        let seg = l / n as f64;
        let idx = ((phi / seg) as usize).min(n - 1);
        let lo = seg * idx as f64;
        let rule = gauss_rule(16);
        let mid = 0.5 * (lo + phi);
        let half = 0.5 * (phi - lo);
        let mut s = 0.0;
        for (x, wgt) in rule.nodes.iter().zip(&rule.weights) {
            s += wgt * self.v_prime_jet(mid + half * x)?.d1;
        }
        Ok(self.v0 + self.v_table[idx] + half * s)
    }

    /// Speed of the generating curve, sqrt(u'^2 + v'^2) = sqrt(E)/a.
    pub fn speed(&self, phi: f64) -> f64 {
        self.im.e_jet(phi).f.sqrt() / self.scale()
    }

    /// Total drop v(l) - v(0).
    pub fn closure_gap(&self) -> f64 {
        self.v_table[self.v_table.len() - 1]
    }
}

/// Embed an induced metric with positive Gauss curvature as a revolution
/// surface. Fails when K <= 0 somewhere or the radicand E/a^2 - u'^2 turns
/// negative beyond roundoff (scale too small).
pub fn embed_revolution(im: &InducedMetric) -> Result<EmbeddedCurve> {
    embed_revolution_anchored(im, 0.0)
}

/// `embed_revolution` with an explicit integration anchor v(0) = v0.
pub fn embed_revolution_anchored(im: &InducedMetric, v0: f64) -> Result<EmbeddedCurve> {
    let l = im.l();
    for i in 1..PROBE_NODES {
        let phi = l * i as f64 / PROBE_NODES as f64;
        let k = induced_gauss_curvature(im, phi)?;
        if !(k > 0.0) {
            return Err(Error::EmbeddingFailed {
                phi,
                reason: format!("induced Gauss curvature {k:.3e} not positive"),
            });
        }
    }
    let mut curve = EmbeddedCurve {
        im: im.clone(),
        v0,
        v_table: vec![0.0],
    };
    // Probe the radicand across the domain (validates embeddability) and
    // build the cumulative v table.
    let n = 256;
    let seg = l / n as f64;
    let rule = gauss_rule(16);
    let mut acc = 0.0;
    let mut table = Vec::with_capacity(n + 1);
    table.push(0.0);
    for i in 0..n {
        let lo = seg * i as f64;
        let mid = lo + 0.5 * seg;
        let half = 0.5 * seg;
        let mut s = 0.0;
        for (x, wgt) in rule.nodes.iter().zip(&rule.weights) {
            s += wgt * curve.v_prime_jet(mid + half * x)?.d1;
        }
        acc += half * s;
        table.push(acc);
    }
    curve.v_table = table;
    Ok(curve)
}

/// Mean curvature of the embedded image in flat space, via the principal
/// curvature split (v' u'' - u' v'')/(a T^3) - v'/(a T u).
pub fn reference_mean_curvature(ec: &EmbeddedCurve, phi: f64) -> Result<f64> {
    let a = ec.scale();
    let u = ec.u_jet(phi);
    let v = ec.v_prime_jet(phi)?;
    let speed = ec.speed(phi);
    let l = ec.l();
    let interior = phi > 1e-7 * l && phi < l - 1e-7 * l;
    if interior && v.d1 == 0.0 {
        return Err(Error::EmbeddingFailed {
            phi,
            reason: "v' vanishes at an interior node (degenerate embedding)".into(),
        });
    }
    let meridian = (v.d1 * u.d2 - u.d1 * v.d2) / (a * speed * speed * speed);
    let parallel = if interior {
        -v.d1 / (a * speed * u.f)
    } else {
        // Pole limit: -v''/(T u') by L'Hopital.
        -v.d2 / (a * speed * u.d1)
    };
    Ok(meridian + parallel)
}

/// Supremum over an interior grid of |H0(im2) - H0(im1)| at matched
/// parameter values; both metrics are embedded separately.
pub fn embedding_perturbation_gap(im1: &InducedMetric, im2: &InducedMetric) -> Result<f64> {
    if (im1.l() - im2.l()).abs() > 1e-12 * im1.l() {
        return Err(Error::InvalidParameter(
            "induced metrics live on different parameter domains".into(),
        ));
    }
    let ec1 = embed_revolution(im1)?;
    let ec2 = embed_revolution(im2)?;
    let n = 256;
    let l = im1.l();
    let mut sup: f64 = 0.0;
    for i in 0..n {
        let phi = l * (i as f64 + 0.5) / n as f64;
        let h1 = reference_mean_curvature(&ec1, phi)?;
        let h2 = reference_mean_curvature(&ec2, phi)?;
        sup = sup.max((h2 - h1).abs());
    }
    Ok(sup)
}
