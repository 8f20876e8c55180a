//! Ambient 3-metrics on R^3 minus a ball: Euclidean, Schwarzschild-conformal
//! and axisymmetric perturbed, with exact coordinate derivatives and
//! Christoffel symbols.
//!
//! The Schwarzschild conformal factor is phi = 1 + m/(2r); the spatial
//! metric phi^4 delta_ij is scalar-flat with ADM mass m.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::perturbation::{decay_report, DecayReport, PerturbationField, Sym3};

/// Which ambient model a metric object represents.
#[derive(Clone, Debug)]
pub enum MetricKind {
    Euclidean,
    Schwarzschild {
        mass: f64,
    },
    Perturbed {
        mass: f64,
        perturbation: Arc<PerturbationField>,
    },
}

/// Conformal factor value, Euclidean gradient and Hessian at a point.
#[derive(Clone, Copy, Debug)]
pub struct ConformalData {
    pub phi: f64,
    pub grad: [f64; 3],
    pub hess: Sym3,
}

/// Immutable ambient metric; all evaluations are pure.
#[derive(Clone, Debug)]
pub struct AmbientMetric {
    kind: MetricKind,
    r_min: f64,
}

pub const DEFAULT_R_MIN: f64 = 1.0;

/// Shells used for decay validation when building perturbed metrics.
pub const DECAY_SHELLS: [f64; 4] = [10.0, 100.0, 1000.0, 10000.0];

impl AmbientMetric {
    pub fn euclidean() -> Self {
        AmbientMetric {
            kind: MetricKind::Euclidean,
            r_min: DEFAULT_R_MIN,
        }
    }

    /// Schwarzschild spatial slice with conformal factor 1 + m/(2r).
    /// `m = 0` degenerates to the flat metric and is allowed here; the
    /// validated `build` entry point requires m > 0.
    pub fn schwarzschild(mass: f64) -> Result<Self> {
        if !(mass >= 0.0) || !mass.is_finite() {
            return Err(Error::Metric(format!("mass must be >= 0, got {mass}")));
        }
        Ok(AmbientMetric {
            kind: MetricKind::Schwarzschild { mass },
            r_min: DEFAULT_R_MIN,
        })
    }

    pub fn perturbed(mass: f64, perturbation: Arc<PerturbationField>) -> Result<Self> {
        if !(mass >= 0.0) || !mass.is_finite() {
            return Err(Error::Metric(format!("mass must be >= 0, got {mass}")));
        }
        Ok(AmbientMetric {
            kind: MetricKind::Perturbed {
                mass,
                perturbation,
            },
            r_min: DEFAULT_R_MIN,
        })
    }

    /// Validated constructor: enforces m > 0 for non-Euclidean kinds,
    /// axisymmetry and decay boundedness for perturbations.
    pub fn build(kind: MetricKind) -> Result<Self> {
        match &kind {
            MetricKind::Euclidean => Ok(Self::euclidean()),
            MetricKind::Schwarzschild { mass } => {
                if !(*mass > 0.0) {
                    return Err(Error::Metric(format!("mass must be positive, got {mass}")));
                }
                Self::schwarzschild(*mass)
            }
            MetricKind::Perturbed { mass, perturbation } => {
                if !(*mass > 0.0) {
                    return Err(Error::Metric(format!("mass must be positive, got {mass}")));
                }
                if !perturbation.is_axisymmetric() {
                    return Err(Error::Metric(format!(
                        "perturbation `{}` is not axisymmetric about the x3-axis",
                        perturbation.name()
                    )));
                }
                let report = decay_report(Some(perturbation.as_ref()), &DECAY_SHELLS)?;
                if !report.bounded {
                    return Err(Error::DecayViolation(format!(
                        "perturbation `{}` violates the r^-2 decay on shells {DECAY_SHELLS:?}",
                        perturbation.name()
                    )));
                }
                Self::perturbed(*mass, perturbation.clone())
            }
        }
    }

    pub fn kind(&self) -> &MetricKind {
        &self.kind
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.kind, MetricKind::Euclidean)
    }

    pub fn mass(&self) -> f64 {
        match &self.kind {
            MetricKind::Euclidean => 0.0,
            MetricKind::Schwarzschild { mass } | MetricKind::Perturbed { mass, .. } => *mass,
        }
    }

    pub fn perturbation(&self) -> Option<&PerturbationField> {
        match &self.kind {
            MetricKind::Perturbed { perturbation, .. } => Some(perturbation.as_ref()),
            _ => None,
        }
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            MetricKind::Euclidean => "euclidean",
            MetricKind::Schwarzschild { .. } => "schwarzschild",
            MetricKind::Perturbed { .. } => "perturbed",
        }
    }

    /// Conformal factor with gradient and Hessian (identity data for the
    /// Euclidean kind).
    pub fn conformal_factor(&self, x: [f64; 3]) -> ConformalData {
        let m = self.mass();
        if m == 0.0 {
            return ConformalData {
                phi: 1.0,
                grad: [0.0; 3],
                hess: [[0.0; 3]; 3],
            };
        }
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        let r = r2.sqrt();
        let r3 = r2 * r;
        let r5 = r3 * r2;
        let phi = 1.0 + m / (2.0 * r);
        let mut grad = [0.0; 3];
        let mut hess = [[0.0; 3]; 3];
        for k in 0..3 {
            grad[k] = -0.5 * m * x[k] / r3;
            for l in 0..3 {
                let kron = if k == l { 1.0 } else { 0.0 };
                hess[k][l] = -0.5 * m * (kron / r3 - 3.0 * x[k] * x[l] / r5);
            }
        }
        ConformalData { phi, grad, hess }
    }

    /// g_ij at x.
    pub fn metric_at(&self, x: [f64; 3]) -> Sym3 {
        let mut g = [[0.0; 3]; 3];
        match &self.kind {
            MetricKind::Euclidean => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = 1.0;
                }
            }
            MetricKind::Schwarzschild { .. } => {
                let phi4 = self.conformal_factor(x).phi.powi(4);
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = phi4;
                }
            }
            MetricKind::Perturbed { perturbation, .. } => {
                let phi4 = self.conformal_factor(x).phi.powi(4);
                g = perturbation.b_at(x);
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] += phi4;
                }
            }
        }
        g
    }

    /// `[k][i][j] = d_k g_ij` at x.
    pub fn dmetric_at(&self, x: [f64; 3]) -> [Sym3; 3] {
        let mut d = [[[0.0; 3]; 3]; 3];
        match &self.kind {
            MetricKind::Euclidean => {}
            MetricKind::Schwarzschild { .. } | MetricKind::Perturbed { .. } => {
                let cf = self.conformal_factor(x);
                for k in 0..3 {
                    let v = 4.0 * cf.phi.powi(3) * cf.grad[k];
                    for i in 0..3 {
                        d[k][i][i] += v;
                    }
                }
                if let MetricKind::Perturbed { perturbation, .. } = &self.kind {
                    let db = perturbation.db_at(x);
                    for k in 0..3 {
                        for i in 0..3 {
                            for j in 0..3 {
                                d[k][i][j] += db[k][i][j];
                            }
                        }
                    }
                }
            }
        }
        d
    }

    /// `[l][k][i][j] = d_l d_k g_ij` at x.
    pub fn d2metric_at(&self, x: [f64; 3]) -> [[Sym3; 3]; 3] {
        let mut d = [[[[0.0; 3]; 3]; 3]; 3];
        match &self.kind {
            MetricKind::Euclidean => {}
            MetricKind::Schwarzschild { .. } | MetricKind::Perturbed { .. } => {
                let cf = self.conformal_factor(x);
                let p2 = cf.phi * cf.phi;
                for l in 0..3 {
                    for k in 0..3 {
                        let v = 12.0 * p2 * cf.grad[l] * cf.grad[k]
                            + 4.0 * p2 * cf.phi * cf.hess[l][k];
                        for i in 0..3 {
                            d[l][k][i][i] += v;
                        }
                    }
                }
                if let MetricKind::Perturbed { perturbation, .. } = &self.kind {
                    let d2b = perturbation.d2b_at(x);
                    for l in 0..3 {
                        for k in 0..3 {
                            for i in 0..3 {
                                for j in 0..3 {
                                    d[l][k][i][j] += d2b[l][k][i][j];
                                }
                            }
                        }
                    }
                }
            }
        }
        d
    }

    /// Christoffel symbols `[k][i][j] = Gamma^k_ij` at x.
    ///
    /// For the Schwarzschild kind these come from the closed conformal
    /// formula; the perturbed kind assembles them from the metric inverse
    /// and the exact first derivatives.
    pub fn christoffel_at(&self, x: [f64; 3]) -> [Sym3; 3] {
        let mut gamma = [[[0.0; 3]; 3]; 3];
        match &self.kind {
            MetricKind::Euclidean => {}
            MetricKind::Schwarzschild { .. } => {
                let cf = self.conformal_factor(x);
                let ratio = [
                    2.0 * cf.grad[0] / cf.phi,
                    2.0 * cf.grad[1] / cf.phi,
                    2.0 * cf.grad[2] / cf.phi,
                ];
                for k in 0..3 {
                    for i in 0..3 {
                        for j in 0..3 {
                            let mut v = 0.0;
                            if j == k {
                                v += ratio[i];
                            }
                            if i == k {
                                v += ratio[j];
                            }
                            if i == j {
                                v -= ratio[k];
                            }
                            gamma[k][i][j] = v;
                        }
                    }
                }
            }
            MetricKind::Perturbed { .. } => {
                let g = self.metric_at(x);
                let gi = invert3(&g).expect("perturbed metric invertible outside r_min");
                let dg = self.dmetric_at(x);
                for k in 0..3 {
                    for i in 0..3 {
                        for j in 0..3 {
                            let mut v = 0.0;
                            for l in 0..3 {
                                v += gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                            }
                            gamma[k][i][j] = 0.5 * v;
                        }
                    }
                }
            }
        }
        gamma
    }

    /// Euclidean-directional derivative of the conformal factor,
    /// n . grad_0 phi. Errors for the Euclidean kind (no conformal factor)
    /// and at the puncture x = 0.
    pub fn normal_derivative_phi(&self, x: [f64; 3], n: [f64; 3]) -> Result<f64> {
        if self.is_euclidean() {
            return Err(Error::Metric(
                "normal_derivative_phi requires a non-Euclidean metric".into(),
            ));
        }
        if x == [0.0; 3] {
            return Err(Error::Metric("conformal factor singular at x = 0".into()));
        }
        let cf = self.conformal_factor(x);
        Ok(n[0] * cf.grad[0] + n[1] * cf.grad[1] + n[2] * cf.grad[2])
    }

    /// Decay report of the perturbation part (all zeros for b = 0).
    pub fn validate_decay(&self, shells: &[f64]) -> Result<DecayReport> {
        decay_report(self.perturbation(), shells)
    }
}

/// Inverse of a 3x3 matrix via the adjugate; `None` when singular.
pub fn invert3(m: &Sym3) -> Option<Sym3> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-300 {
        return None;
    }
    let inv_det = 1.0 / det;
    let mut inv = [[0.0; 3]; 3];
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv_det;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv_det;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv_det;
    inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv_det;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv_det;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv_det;
    inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv_det;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv_det;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv_det;
    Some(inv)
}

/// Scalar curvature assembled from finite differences of the Christoffel
/// symbols; a spot-check diagnostic (the Schwarzschild slice is scalar-flat).
pub fn scalar_curvature_fd(metric: &AmbientMetric, x: [f64; 3], step: f64) -> f64 {
    let gamma_at = |y: [f64; 3]| metric.christoffel_at(y);
    let g = metric.metric_at(x);
    let gi = invert3(&g).expect("metric invertible");
    let gamma = gamma_at(x);
    // dGamma[l][k][i][j] = d_l Gamma^k_ij
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        let mut xp = x;
        let mut xm = x;
        xp[l] += step;
        xm[l] -= step;
        let gp = gamma_at(xp);
        let gm = gamma_at(xm);
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    dgamma[l][k][i][j] = (gp[k][i][j] - gm[k][i][j]) / (2.0 * step);
                }
            }
        }
    }
    // Ricci_ij = d_k Gamma^k_ij - d_j Gamma^k_ik + Gamma^k_kl Gamma^l_ij
    //            - Gamma^k_jl Gamma^l_ik
    let mut scalar = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let mut ric = 0.0;
            for k in 0..3 {
                ric += dgamma[k][k][i][j] - dgamma[j][k][i][k];
                for l in 0..3 {
                    ric += gamma[k][k][l] * gamma[l][i][j] - gamma[k][j][l] * gamma[l][i][k];
                }
            }
            scalar += gi[i][j] * ric;
        }
    }
    scalar
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_is_flat_identity() {
        let g = AmbientMetric::euclidean();
        let x = [1.2, -0.3, 0.8];
        let m = g.metric_at(x);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_eq!(m[i][j], expected);
            }
        }
        assert_eq!(g.christoffel_at(x), [[[0.0; 3]; 3]; 3]);
    }

    #[test]
    fn schwarzschild_value_at_r2() {
        // m = 1, r = 2: phi = 1.25, g = 1.25^4 delta = 2.44140625 delta.
        let g = AmbientMetric::schwarzschild(1.0).unwrap();
        let x = [0.0, 0.0, 2.0];
        let m = g.metric_at(x);
        assert!((m[0][0] - 2.44140625).abs() < 1e-14);
        assert!((m[1][1] - 2.44140625).abs() < 1e-14);
        assert!((m[2][2] - 2.44140625).abs() < 1e-14);
        assert_eq!(m[0][1], 0.0);
    }

    #[test]
    fn christoffel_matches_general_formula() {
        let g = AmbientMetric::schwarzschild(1.0).unwrap();
        let x = [1.5, -2.0, 0.7];
        let gamma = g.christoffel_at(x);
        // Recompute from the general formula with the exact dmetric.
        let gm = g.metric_at(x);
        let gi = invert3(&gm).unwrap();
        let dg = g.dmetric_at(x);
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut v = 0.0;
                    for l in 0..3 {
                        v += gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                    }
                    v *= 0.5;
                    assert!(
                        (gamma[k][i][j] - v).abs() < 1e-10,
                        "Gamma^{k}_{i}{j}: {} vs {}",
                        gamma[k][i][j],
                        v
                    );
                    assert_eq!(gamma[k][i][j], gamma[k][j][i]);
                }
            }
        }
    }

    #[test]
    fn schwarzschild_scalar_flat() {
        let g = AmbientMetric::schwarzschild(1.0).unwrap();
        for x in [[3.0, 0.0, 0.0], [2.0, 1.0, -1.5], [0.5, 4.0, 2.0]] {
            let r = scalar_curvature_fd(&g, x, 1e-5);
            assert!(r.abs() < 1e-8, "R = {r:e} at {x:?}");
        }
    }

    #[test]
    fn normal_derivative_on_sphere() {
        let g = AmbientMetric::schwarzschild(2.0).unwrap();
        let a = 5.0;
        let v = g.normal_derivative_phi([a, 0.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert!((v + 2.0 / (2.0 * a * a)).abs() < 1e-15);
        // Tangent direction: phi is radial, so the derivative vanishes.
        let t = g.normal_derivative_phi([a, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
        assert!(t.abs() < 1e-15);
        // m = 0: constant factor.
        let g0 = AmbientMetric::schwarzschild(0.0).unwrap();
        let z = g0.normal_derivative_phi([a, 0.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(z, 0.0);
        // Euclidean kind violates the precondition.
        assert!(AmbientMetric::euclidean()
            .normal_derivative_phi([a, 0.0, 0.0], [1.0, 0.0, 0.0])
            .is_err());
    }

    #[test]
    fn build_rejects_bad_mass_and_bad_decay() {
        assert!(AmbientMetric::build(MetricKind::Schwarzschild { mass: 0.0 }).is_err());
        assert!(AmbientMetric::build(MetricKind::Schwarzschild { mass: -1.0 }).is_err());
        use super::super::rpoly::RPoly;
        let mut b: [[RPoly; 3]; 3] = Default::default();
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = RPoly::term(1.0, [0, 0, 0], -1);
        }
        let slow = Arc::new(PerturbationField::from_components("slow", b).unwrap());
        let err = AmbientMetric::build(MetricKind::Perturbed {
            mass: 1.0,
            perturbation: slow,
        });
        assert!(matches!(err, Err(Error::DecayViolation(_))));
    }

    #[test]
    fn dmetric_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let pert = PerturbationField::preset("axial", 0.5).unwrap();
        let metrics = [
            AmbientMetric::euclidean(),
            AmbientMetric::schwarzschild(1.3).unwrap(),
            AmbientMetric::perturbed(1.3, pert).unwrap(),
        ];
        for metric in &metrics {
            for _ in 0..100 {
                let x = [
                    rng.gen_range(-10.0..10.0),
                    rng.gen_range(-10.0..10.0),
                    rng.gen_range(2.0..10.0),
                ];
                let dg = metric.dmetric_at(x);
                for k in 0..3 {
                    let h = 1e-6 * x[k].abs().max(1.0);
                    let mut xp = x;
                    let mut xm = x;
                    xp[k] += h;
                    xm[k] -= h;
                    let gp = metric.metric_at(xp);
                    let gm = metric.metric_at(xm);
                    for i in 0..3 {
                        for j in 0..3 {
                            let fd = (gp[i][j] - gm[i][j]) / (2.0 * h);
                            let scale = dg[k][i][j].abs().max(1e-3);
                            assert!(
                                (dg[k][i][j] - fd).abs() <= 1e-6 * scale,
                                "{} d_{k} g_{i}{j}: {} vs fd {}",
                                metric.kind_name(),
                                dg[k][i][j],
                                fd
                            );
                        }
                    }
                }
            }
        }
    }
}
