//! Composite Gauss-Legendre quadrature with panel-doubling error control.
//!
//! Node sets are open (no endpoint evaluation), so integrands that are only
//! even/odd-extendable at the poles of a revolution surface are never
//! evaluated at the poles themselves. Summation order is fixed, making
//! results bit-identical across runs and thread counts.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Quadrature scheme selector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadScheme {
    #[default]
    GaussLegendreComposite,
}

/// Quadrature configuration shared by all mass and diagnostic integrals.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuadSpec {
    #[serde(default)]
    pub scheme: QuadScheme,
    /// Number of equal panels the interval is split into.
    pub panels: usize,
    /// Gauss-Legendre nodes per panel, in [4, 64].
    pub nodes_per_panel: usize,
    /// Absolute tolerance (with a relative floor) on the panel-doubling
    /// error estimate.
    pub tol: f64,
    /// Fraction of the parameter interval near each pole excluded from
    /// raw-formula evaluation by pole-safe callers.
    pub pole_margin: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            scheme: QuadScheme::GaussLegendreComposite,
            panels: 16,
            nodes_per_panel: 16,
            tol: 1e-9,
            pole_margin: 1e-4,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(4..=64).contains(&self.nodes_per_panel) {
            return Err(Error::InvalidParameter(format!(
                "nodes_per_panel = {} outside [4, 64]",
                self.nodes_per_panel
            )));
        }
        if self.panels == 0 {
            return Err(Error::InvalidParameter("panels must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter("quadrature tol must be positive".into()));
        }
        Ok(())
    }
}

/// Result of a converged integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    /// Difference between the last two panel-doubling levels.
    pub error_estimate: f64,
    /// Panels used at the accepted level.
    pub panels: usize,
    pub converged: bool,
}

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn legendre_rule(n: usize) -> GaussRule {
    // Newton iteration on P_n from the Chebyshev initial guess.
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Recurrence for P_n(x) and P_{n-1}(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

/// Cached Gauss-Legendre rule for `n` nodes.
pub fn gauss_rule(n: usize) -> GaussRule {
    static CACHE: OnceLock<Mutex<HashMap<usize, GaussRule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("gauss rule cache poisoned");
    guard.entry(n).or_insert_with(|| legendre_rule(n)).clone()
}

fn composite<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, panels: usize, rule: &GaussRule) -> Result<f64> {
    let width = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = lo + width * p as f64;
        let mid = a + 0.5 * width;
        let half = 0.5 * width;
        let mut panel_sum = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let t = mid + half * x;
            let v = f(t);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand(t));
            }
            panel_sum += w * v;
        }
        total += half * panel_sum;
    }
    Ok(total)
}

const MAX_DOUBLINGS: u32 = 8;

/// Integrate `f` over `[lo, hi]` with the composite rule, doubling the panel
/// count until the doubling difference drops below `spec.tol` (scaled by
/// `max(1, |value|)`).
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, spec: &QuadSpec) -> Result<QuadResult> {
    spec.validate()?;
    if !(hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "empty integration interval [{lo}, {hi}]"
        )));
    }
    let rule = gauss_rule(spec.nodes_per_panel);
    let mut panels = spec.panels;
    let mut prev = composite(&f, lo, hi, panels, &rule)?;
    let mut estimate = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let next = composite(&f, lo, hi, panels, &rule)?;
        estimate = (next - prev).abs();
        if estimate <= spec.tol * next.abs().max(1.0) {
            return Ok(QuadResult {
                value: next,
                error_estimate: estimate,
                panels,
                converged: true,
            });
        }
        prev = next;
    }
    Err(Error::QuadratureNonConvergence {
        estimate,
        tol: spec.tol,
        doublings: MAX_DOUBLINGS,
    })
}

/// Single-pass composite evaluation without error control; used internally
/// for cumulative tables where the caller controls refinement.
pub fn integrate_fixed<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    panels: usize,
    nodes: usize,
) -> Result<f64> {
    let rule = gauss_rule(nodes);
    composite(&f, lo, hi, panels, &rule)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_integral() {
        let spec = QuadSpec::default();
        let r = integrate(|x| x.sin(), 0.0, std::f64::consts::PI, &spec).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12, "got {}", r.value);
        assert!(r.converged);
    }

    #[test]
    fn sin_cubed_integral() {
        let spec = QuadSpec::default();
        let r = integrate(|x| x.sin().powi(3), 0.0, std::f64::consts::PI, &spec).unwrap();
        assert!((r.value - 4.0 / 3.0).abs() < 1e-12, "got {}", r.value);
    }

    #[test]
    fn rule_weights_sum_to_two() {
        for n in [4, 5, 16, 33, 64] {
            let rule = gauss_rule(n);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}: {s}");
        }
    }

    #[test]
    fn nonfinite_integrand_reported() {
        let spec = QuadSpec::default();
        let err = integrate(|x| 1.0 / (x - 0.5), 0.0, 1.0, &spec);
        // Not singular at any node necessarily; force a NaN instead.
        let err2 = integrate(|_| f64::NAN, 0.0, 1.0, &spec);
        assert!(matches!(err2, Err(Error::NonFiniteIntegrand(_))));
        drop(err);
    }

    #[test]
    fn nonconvergence_reported() {
        // |x - c|^0.5 has a derivative singularity; with a tight tolerance
        // and few doublings allowed it cannot converge to 1e-15.
        let spec = QuadSpec {
            tol: 1e-15,
            panels: 1,
            nodes_per_panel: 4,
            ..QuadSpec::default()
        };
        let r = integrate(|x| (x - 0.311).abs().sqrt(), 0.0, 1.0, &spec);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn invalid_spec_rejected() {
        let spec = QuadSpec {
            nodes_per_panel: 3,
            ..QuadSpec::default()
        };
        assert!(integrate(|x| x, 0.0, 1.0, &spec).is_err());
    }
}
