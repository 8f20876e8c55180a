//! Scale families of surfaces and the convexity/decay condition constants.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry;

use super::Profile;

/// A family a -> S_a of revolution surfaces together with the scales of a
/// convergence study.
#[derive(Clone)]
pub struct SurfaceFamily {
    name: String,
    profile_at: Arc<dyn Fn(f64) -> Profile + Send + Sync>,
    scale_list: Vec<f64>,
}

impl SurfaceFamily {
    /// Family with an a-independent profile.
    pub fn from_profile(profile: &Profile, scale_list: Vec<f64>) -> Result<Self> {
        let p = profile.validated()?;
        let name = p.name().to_string();
        Self::new(name, move |_| p.clone(), scale_list)
    }

    /// Family with a possibly a-dependent profile.
    pub fn new(
        name: impl Into<String>,
        profile_at: impl Fn(f64) -> Profile + Send + Sync + 'static,
        scale_list: Vec<f64>,
    ) -> Result<Self> {
        if scale_list.is_empty() {
            return Err(Error::InvalidParameter("scale list must be nonempty".into()));
        }
        if scale_list[0] <= 0.0 || scale_list.windows(2).any(|p| !(p[1] > p[0])) {
            return Err(Error::InvalidParameter(
                "scale list must be positive and strictly increasing".into(),
            ));
        }
        Ok(SurfaceFamily {
            name: name.into(),
            profile_at: Arc::new(profile_at),
            scale_list,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn profile_at(&self, a: f64) -> Profile {
        (self.profile_at)(a)
    }

    pub fn scales(&self) -> &[f64] {
        &self.scale_list
    }
}

/// Best empirical constants realizing the uniform convexity and shell
/// conditions: a^2 Kbar >= C1, 0 < a Hbar <= C2, C3 <= r/a <= C4.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConditionConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

const CONDITION_GRID: usize = 2048;

/// Scan all scales of the family on a dense parameter grid plus the pole
/// limits and return the extremal values of a^2 Kbar, a Hbar and r/a.
pub fn validate_conditions(family: &SurfaceFamily) -> Result<ConditionConstants> {
    let mut c1 = f64::INFINITY;
    let mut c2: f64 = 0.0;
    let mut c3 = f64::INFINITY;
    let mut c4: f64 = 0.0;
    for &a in family.scales() {
        let p = family.profile_at(a).validated()?;
        let l = p.l();
        // Interior grid plus both pole limits; unit scale gives the
        // scale-invariant combinations directly.
        for i in 0..=CONDITION_GRID {
            let phi = if i == 0 {
                0.0
            } else if i == CONDITION_GRID {
                l
            } else {
                l * i as f64 / CONDITION_GRID as f64
            };
            let (km, kp) = geometry::principal_curvatures(&p, 1.0, phi)?;
            let gauss = km * kp;
            let mean = km + kp;
            if !(gauss > 0.0) {
                return Err(Error::NotConvex(format!(
                    "a^2 Kbar = {gauss:.3e} at phi = {phi:.6}, a = {a}"
                )));
            }
            if !(mean > 0.0) {
                return Err(Error::NotConvex(format!(
                    "a Hbar = {mean:.3e} at phi = {phi:.6}, a = {a}"
                )));
            }
            let radius = p.radius_jet(phi).f;
            if !radius.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "r/a not finite at phi = {phi:.6}"
                )));
            }
            c1 = c1.min(gauss);
            c2 = c2.max(mean);
            c3 = c3.min(radius);
            c4 = c4.max(radius);
        }
    }
    Ok(ConditionConstants { c1, c2, c3, c4 })
}
