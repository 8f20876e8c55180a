//! Built-in profile families with closed-form jets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::Jet3;

use super::curve::AnalyticCurve;
use super::Profile;

/// Built-in generating-curve families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinProfile {
    /// Round sphere: w = sin, h = cos on [0, pi] (already arclength).
    Sphere,
    /// The 1:1:2 ellipsoid x1^2 + x2^2 + x3^2/4 = a^2:
    /// w = sin, h = 2 cos on [0, pi].
    Ellipsoid112,
    /// Spheroid with semi-axes (A, A, B): w = A sin, h = B cos;
    /// params = [A, B].
    Custom,
}

impl BuiltinProfile {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "sphere" => Ok(BuiltinProfile::Sphere),
            "ellipsoid_112" => Ok(BuiltinProfile::Ellipsoid112),
            "custom" => Ok(BuiltinProfile::Custom),
            other => Err(Error::UnknownProfile(other.to_string())),
        }
    }
}

fn spheroid(name: &str, a_axis: f64, b_axis: f64) -> Profile {
    let w = move |t: f64| Jet3::new(t.sin(), t.cos(), -t.sin(), -t.cos()).scale(a_axis);
    let h = move |t: f64| Jet3::new(t.cos(), -t.sin(), -t.cos(), t.sin()).scale(b_axis);
    let curve = AnalyticCurve::new(std::f64::consts::PI, w, h);
    Profile::from_curve(name, Arc::new(curve), 1e-12)
}

/// Construct a built-in profile. `params` is `[A, B]` for `Custom` and empty
/// otherwise.
pub fn make_builtin(kind: BuiltinProfile, params: &[f64]) -> Result<Profile> {
    match kind {
        BuiltinProfile::Sphere => {
            if !params.is_empty() {
                return Err(Error::InvalidParameter(
                    "sphere takes no parameters".into(),
                ));
            }
            Ok(spheroid("sphere", 1.0, 1.0))
        }
        BuiltinProfile::Ellipsoid112 => {
            if !params.is_empty() {
                return Err(Error::InvalidParameter(
                    "ellipsoid_112 takes no parameters".into(),
                ));
            }
            Ok(spheroid("ellipsoid_112", 1.0, 2.0))
        }
        BuiltinProfile::Custom => {
            let [a_axis, b_axis] = params else {
                return Err(Error::InvalidParameter(format!(
                    "custom spheroid needs params [A, B], got {} values",
                    params.len()
                )));
            };
            if !(*a_axis > 0.0) || !(*b_axis > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "axis ratios must be positive, got A = {a_axis}, B = {b_axis}"
                )));
            }
            Ok(spheroid(
                &format!("spheroid_{a_axis}_{b_axis}"),
                *a_axis,
                *b_axis,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name_rejected() {
        assert!(matches!(
            BuiltinProfile::parse("torus"),
            Err(Error::UnknownProfile(_))
        ));
    }

    #[test]
    fn nonpositive_axis_rejected() {
        assert!(make_builtin(BuiltinProfile::Custom, &[1.0, -2.0]).is_err());
        assert!(make_builtin(BuiltinProfile::Custom, &[0.0, 2.0]).is_err());
        assert!(make_builtin(BuiltinProfile::Custom, &[1.0]).is_err());
    }

    #[test]
    fn sphere_jets_are_trig() {
        let p = make_builtin(BuiltinProfile::Sphere, &[]).unwrap();
        let j = p.w_jet(0.3);
        assert!((j.f - 0.3f64.sin()).abs() < 1e-15);
        assert!((j.d3 + 0.3f64.cos()).abs() < 1e-15);
    }
}
