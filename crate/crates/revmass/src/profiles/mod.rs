//! Generating curves of closed revolution surfaces: built-in families,
//! sampled (CSV) profiles, arclength reparametrization, orientation and
//! convexity validation.
//!
//! A surface point is `(a w(phi) cos th, a w(phi) sin th, a h(phi))` for
//! `phi in [0, l]`; the curve closes at both poles (w = 0, h' = 0) and runs
//! top to bottom (h(0) > h(l), h' < 0 inside).

mod arclength;
mod builtins;
mod csv_io;
mod curve;
mod family;

pub use builtins::{make_builtin, BuiltinProfile};
pub use csv_io::profile_from_csv;
pub use family::{validate_conditions, ConditionConstants, SurfaceFamily};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::Jet3;

use arclength::ArclengthCurve;
use curve::{FlipCurve, GeneratingCurve};
pub(crate) use curve::{AnalyticCurve, ChebCurve};

/// Tolerance for the arclength property |w'^2 + h'^2 - 1| on test nodes.
pub const ARCLENGTH_FLAG_TOL: f64 = 1e-12;

/// Generating curve of a closed revolution surface, with derivative access
/// to third order.
#[derive(Clone)]
pub struct Profile {
    name: String,
    curve: Arc<dyn GeneratingCurve>,
    l: f64,
    arclength: bool,
    closure_tol: f64,
}

impl std::fmt::Debug for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Profile")
            .field("name", &self.name)
            .field("l", &self.l)
            .field("arclength", &self.arclength)
            .finish()
    }
}

impl Profile {
    pub(crate) fn from_curve(
        name: impl Into<String>,
        curve: Arc<dyn GeneratingCurve>,
        closure_tol: f64,
    ) -> Self {
        let l = curve.l();
        let arclength = detect_arclength(curve.as_ref());
        Profile {
            name: name.into(),
            curve,
            l,
            arclength,
            closure_tol,
        }
    }

    /// Build a profile from closed-form jet callbacks for w and h on [0, l].
    pub fn from_jets<W, H>(name: impl Into<String>, l: f64, w: W, h: H) -> Self
    where
        W: Fn(f64) -> Jet3 + Send + Sync + 'static,
        H: Fn(f64) -> Jet3 + Send + Sync + 'static,
    {
        Profile::from_curve(name, Arc::new(AnalyticCurve::new(l, w, h)), 1e-12)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Parameter-domain endpoint l.
    pub fn l(&self) -> f64 {
        self.l
    }

    /// Whether w'^2 + h'^2 = 1 holds to `ARCLENGTH_FLAG_TOL`.
    pub fn is_arclength(&self) -> bool {
        self.arclength
    }

    pub fn closure_tol(&self) -> f64 {
        self.closure_tol
    }

    pub fn w_jet(&self, phi: f64) -> Jet3 {
        self.curve.w_jet(phi)
    }

    pub fn h_jet(&self, phi: f64) -> Jet3 {
        self.curve.h_jet(phi)
    }

    pub fn w(&self, phi: f64) -> f64 {
        self.curve.w_jet(phi).f
    }

    pub fn h(&self, phi: f64) -> f64 {
        self.curve.h_jet(phi).f
    }

    /// Squared-speed jet T^2 = w'^2 + h'^2, valid through second order.
    pub fn speed_sq_jet(&self, phi: f64) -> Jet3 {
        let w = self.w_jet(phi);
        let h = self.h_jet(phi);
        Jet3::new(
            w.d1 * w.d1 + h.d1 * h.d1,
            2.0 * (w.d1 * w.d2 + h.d1 * h.d2),
            2.0 * (w.d2 * w.d2 + w.d1 * w.d3 + h.d2 * h.d2 + h.d1 * h.d3),
            0.0,
        )
    }

    /// Speed jet T = sqrt(w'^2 + h'^2), valid through second order.
    pub fn speed_jet(&self, phi: f64) -> Jet3 {
        self.speed_sq_jet(phi).sqrt()
    }

    /// Euclidean distance from the axis origin per unit scale,
    /// r/a = sqrt(w^2 + h^2), as a jet.
    pub fn radius_jet(&self, phi: f64) -> Jet3 {
        let w = self.w_jet(phi);
        let h = self.h_jet(phi);
        (w * w + h * h).sqrt()
    }

    /// Mirror image h -> -h (used to enforce the orientation convention).
    pub fn flipped_vertical(&self) -> Profile {
        Profile {
            name: self.name.clone(),
            curve: Arc::new(FlipCurve {
                inner: self.curve.clone(),
            }),
            l: self.l,
            arclength: self.arclength,
            closure_tol: self.closure_tol,
        }
    }

    /// Check the profile invariants, flipping the vertical orientation if
    /// needed so that h(0) > h(l). Returns the correctly oriented profile.
    pub fn validated(&self) -> Result<Profile> {
        let p = if self.h(0.0) >= self.h(self.l) {
            self.clone()
        } else {
            self.flipped_vertical()
        };
        let tol = p.closure_tol;
        let w0 = p.w(0.0);
        let wl = p.w(p.l);
        let hp0 = p.h_jet(0.0).d1;
        let hpl = p.h_jet(p.l).d1;
        if w0.abs() > tol || wl.abs() > tol {
            return Err(Error::PoleClosure(format!(
                "w(0) = {w0:.3e}, w(l) = {wl:.3e} exceed {tol:.1e}"
            )));
        }
        if hp0.abs() > tol || hpl.abs() > tol {
            return Err(Error::PoleClosure(format!(
                "h'(0) = {hp0:.3e}, h'(l) = {hpl:.3e} exceed {tol:.1e}"
            )));
        }
        if !(p.h(0.0) > p.h(p.l)) {
            return Err(Error::InvalidParameter(
                "degenerate profile: h(0) = h(l)".into(),
            ));
        }
        const GRID: usize = 1024;
        for i in 1..GRID {
            let phi = p.l * i as f64 / GRID as f64;
            if !(p.w(phi) > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "w(phi) = {:.3e} not positive at phi = {phi:.6}",
                    p.w(phi)
                )));
            }
            if !(p.h_jet(phi).d1 < 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "h'(phi) = {:.3e} not negative at phi = {phi:.6}",
                    p.h_jet(phi).d1
                )));
            }
        }
        if p.arclength {
            for i in 0..=64 {
                let phi = p.l * i as f64 / 64.0;
                let t = p.speed_jet(phi).f;
                if (t - 1.0).abs() > 1e-10 {
                    return Err(Error::InvalidParameter(format!(
                        "arclength flag set but |T - 1| = {:.3e} at phi = {phi:.6}",
                        (t - 1.0).abs()
                    )));
                }
            }
        }
        Ok(p)
    }
}

fn detect_arclength(curve: &dyn GeneratingCurve) -> bool {
    let l = curve.l();
    (0..=64).all(|i| {
        let phi = l * i as f64 / 64.0;
        let w = curve.w_jet(phi);
        let h = curve.h_jet(phi);
        (w.d1 * w.d1 + h.d1 * h.d1 - 1.0).abs() <= ARCLENGTH_FLAG_TOL
    })
}

/// Reparametrize a profile by arclength so that w'^2 + h'^2 = 1.
///
/// Profiles already in arclength parametrization are returned unchanged.
/// The image curve is preserved; the new endpoint equals the curve length.
pub fn reparametrize_arclength(p: &Profile, tol: f64) -> Result<Profile> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("arclength tol must be positive".into()));
    }
    if p.arclength {
        return Ok(p.clone());
    }
    let curve = ArclengthCurve::new(p.curve.clone(), tol)?;
    let profile = Profile::from_curve(p.name.clone(), Arc::new(curve), p.closure_tol);
    if !profile.arclength {
        return Err(Error::InversionFailed(
            "reparametrized curve failed the arclength check".into(),
        ));
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_is_arclength_and_closes() {
        let p = make_builtin(BuiltinProfile::Sphere, &[]).unwrap();
        assert!(p.is_arclength());
        assert!((p.l() - std::f64::consts::PI).abs() < 1e-15);
        assert!(p.w(0.0).abs() < 1e-12);
        assert!(p.h_jet(0.0).d1.abs() < 1e-12);
        assert!(p.validated().is_ok());
    }

    #[test]
    fn ellipsoid_points_lie_on_quadric() {
        let p = make_builtin(BuiltinProfile::Ellipsoid112, &[]).unwrap();
        // At phi = pi/2 the point is (a, 0, 0); residual of
        // x1^2 + x2^2 + x3^2/4 = a^2 vanishes (unit scale).
        let phi = std::f64::consts::FRAC_PI_2;
        let (w, h) = (p.w(phi), p.h(phi));
        assert!((w - 1.0).abs() < 1e-15 && h.abs() < 1e-15);
        let residual = w * w + h * h / 4.0 - 1.0;
        assert!(residual.abs() < 1e-14);
        // At phi = 0 the point is (0, 0, 2a).
        assert!(p.w(0.0).abs() < 1e-15);
        assert!((p.h(0.0) - 2.0).abs() < 1e-15);
        let residual0 = p.w(0.0).powi(2) + p.h(0.0).powi(2) / 4.0 - 1.0;
        assert!(residual0.abs() < 1e-14);
    }

    #[test]
    fn reparametrization_is_idempotent_and_length_preserving() {
        let p = make_builtin(BuiltinProfile::Ellipsoid112, &[]).unwrap();
        let q = reparametrize_arclength(&p, 1e-10).unwrap();
        assert!(q.is_arclength());
        let q2 = reparametrize_arclength(&q, 1e-10).unwrap();
        assert!((q2.l() - q.l()).abs() < 1e-12);
        // Same image curve: each sample of q must lie near the original.
        let dense: Vec<(f64, f64)> = (0..=4000)
            .map(|i| {
                let t = p.l() * i as f64 / 4000.0;
                (p.w(t), p.h(t))
            })
            .collect();
        for i in 0..=100 {
            let s = q.l() * i as f64 / 100.0;
            let (wq, hq) = (q.w(s), q.h(s));
            let d2 = dense
                .iter()
                .map(|&(w, h)| (w - wq) * (w - wq) + (h - hq) * (h - hq))
                .fold(f64::INFINITY, f64::min);
            assert!(d2.sqrt() < 1e-3, "image deviates at s = {s}");
        }
    }

    #[test]
    fn sphere_reparametrization_is_identity() {
        let p = make_builtin(BuiltinProfile::Sphere, &[]).unwrap();
        let q = reparametrize_arclength(&p, 1e-10).unwrap();
        assert!((q.l() - std::f64::consts::PI).abs() < 1e-14);
        for i in 0..=20 {
            let phi = q.l() * i as f64 / 20.0;
            assert!((q.w(phi) - p.w(phi)).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_tangent_rejected() {
        // w = sin^2 t, h = cos^2 t: both derivatives vanish at t = pi/2,
        // so the tangent degenerates at an interior point.
        let curve = AnalyticCurve::new(
            std::f64::consts::PI,
            |t: f64| {
                let (s2, c2) = ((2.0 * t).sin(), (2.0 * t).cos());
                Jet3::new(t.sin() * t.sin(), s2, 2.0 * c2, -4.0 * s2)
            },
            |t: f64| {
                let (s2, c2) = ((2.0 * t).sin(), (2.0 * t).cos());
                Jet3::new(t.cos() * t.cos(), -s2, -2.0 * c2, 4.0 * s2)
            },
        );
        let p = Profile::from_curve("cusp", Arc::new(curve), 1e-6);
        let err = reparametrize_arclength(&p, 1e-6);
        assert!(matches!(err, Err(Error::DegenerateTangent { .. })));
    }

    #[test]
    fn upside_down_profile_is_flipped() {
        let curve = AnalyticCurve::new(
            std::f64::consts::PI,
            |t: f64| Jet3::new(t.sin(), t.cos(), -t.sin(), -t.cos()),
            |t: f64| Jet3::new(-t.cos(), t.sin(), t.cos(), -t.sin()),
        );
        let p = Profile::from_curve("inverted-sphere", Arc::new(curve), 1e-12);
        let v = p.validated().unwrap();
        assert!(v.h(0.0) > v.h(v.l()));
        assert!(v.h_jet(1.0).d1 < 0.0);
    }
}
