//! Convergence-order estimation: least-squares power-law fits on log-log data.

use serde::Serialize;

use crate::error::{Error, Result};

/// Result of fitting `error ~ constant * a^order` to (scale, error) pairs.
#[derive(Clone, Debug, Serialize)]
pub struct OrderFit {
    pub pairs: Vec<(f64, f64)>,
    /// Slope on (log a, log error); negative for decaying errors.
    pub fitted_order: f64,
    /// exp(intercept): the prefactor of the power law.
    pub fitted_constant: f64,
    pub r_squared: f64,
}

/// Least-squares fit of log(error) against log(a).
///
/// Requires at least 3 pairs with strictly positive scales and errors.
pub fn fit_order(pairs: &[(f64, f64)]) -> Result<OrderFit> {
    if pairs.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "order fit needs >= 3 pairs, got {}",
            pairs.len()
        )));
    }
    for &(a, e) in pairs {
        if !(a > 0.0) || !(e > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "order fit needs positive (a, error) pairs, got ({a}, {e})"
            )));
        }
    }
    let n = pairs.len() as f64;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter(
            "order fit needs at least two distinct scales".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(OrderFit {
        pairs: pairs.to_vec(),
        fitted_order: slope,
        fitted_constant: intercept.exp(),
        r_squared,
    })
}
