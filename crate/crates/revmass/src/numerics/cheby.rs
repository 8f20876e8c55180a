//! Chebyshev series on an interval: interpolation, least-squares fitting to
//! scattered samples, Clenshaw evaluation and spectral differentiation.
//!
//! Used to represent user-supplied (sampled) generating curves; built-in
//! profiles carry closed-form derivatives and never go through this path.

use crate::error::{Error, Result};

/// Truncated Chebyshev expansion sum_k a_k T_k(s) with s the affine map of
/// [lo, hi] onto [-1, 1].
#[derive(Clone, Debug)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
}

impl ChebSeries {
    /// Interpolate `f` at the `n` Chebyshev-Gauss points of [lo, hi].
    pub fn interpolate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 || !(hi > lo) {
            return Err(Error::InvalidParameter(
                "chebyshev interpolation needs n >= 2 and hi > lo".into(),
            ));
        }
        let nf = n as f64;
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let values: Vec<f64> = (0..n)
            .map(|j| {
                let theta = std::f64::consts::PI * (j as f64 + 0.5) / nf;
                f(mid + half * theta.cos())
            })
            .collect();
        let mut coeffs = vec![0.0; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut s = 0.0;
            for (j, v) in values.iter().enumerate() {
                let theta = std::f64::consts::PI * (j as f64 + 0.5) / nf;
                s += v * (k as f64 * theta).cos();
            }
            *c = 2.0 * s / nf;
        }
        coeffs[0] *= 0.5;
        Ok(ChebSeries { coeffs, lo, hi })
    }

    /// Least-squares fit of degree `deg` to scattered samples `(x, y)`.
    pub fn fit_samples(xs: &[f64], ys: &[f64], lo: f64, hi: f64, deg: usize) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() <= deg {
            return Err(Error::InvalidParameter(format!(
                "need more than {} samples for a degree-{} fit, got {}",
                deg,
                deg,
                xs.len()
            )));
        }
        let n = deg + 1;
        // Normal equations on the Chebyshev-Vandermonde matrix.
        let mut ata = vec![vec![0.0; n]; n];
        let mut atb = vec![0.0; n];
        let mut row = vec![0.0; n];
        for (&x, &y) in xs.iter().zip(ys) {
            let s = ((x - lo) / (hi - lo) * 2.0 - 1.0).clamp(-1.0, 1.0);
            row[0] = 1.0;
            if n > 1 {
                row[1] = s;
            }
            for k in 2..n {
                row[k] = 2.0 * s * row[k - 1] - row[k - 2];
            }
            for i in 0..n {
                for j in 0..n {
                    ata[i][j] += row[i] * row[j];
                }
                atb[i] += row[i] * y;
            }
        }
        let coeffs = solve_dense(&mut ata, &mut atb)?;
        Ok(ChebSeries { coeffs, lo, hi })
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let s = (x - self.lo) / (self.hi - self.lo) * 2.0 - 1.0;
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &a in self.coeffs.iter().skip(1).rev() {
            let b = 2.0 * s * b1 - b2 + a;
            b2 = b1;
            b1 = b;
        }
        self.coeffs[0] + s * b1 - b2
    }

    /// Series of the derivative (standard descending recurrence, rescaled to
    /// the interval).
    pub fn derivative(&self) -> ChebSeries {
        let n = self.coeffs.len();
        let mut d = vec![0.0; n.max(1)];
        if n > 1 {
            let mut prev2 = 0.0; // d_{k+2}
            let mut prev1 = 0.0; // d_{k+1}
            for k in (0..n - 1).rev() {
                let dk = prev2 + 2.0 * (k as f64 + 1.0) * self.coeffs[k + 1];
                d[k] = dk;
                prev2 = prev1;
                prev1 = dk;
            }
            d[0] *= 0.5;
        }
        let scale = 2.0 / (self.hi - self.lo);
        for v in &mut d {
            *v *= scale;
        }
        d.truncate((n - 1).max(1));
        ChebSeries {
            coeffs: d,
            lo: self.lo,
            hi: self.hi,
        }
    }

    /// Magnitude of the trailing coefficient pair, a cheap truncation-error
    /// proxy.
    pub fn tail_estimate(&self) -> f64 {
        let n = self.coeffs.len();
        let last = self.coeffs[n - 1].abs();
        let prev = if n > 1 { self.coeffs[n - 2].abs() } else { 0.0 };
        last.max(prev)
    }
}

fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-300 {
            return Err(Error::InvalidParameter(
                "singular normal equations in chebyshev fit".into(),
            ));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        for r in col + 1..n {
            let factor = a[r][col] / d;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_sin_to_machine_precision() {
        let s = ChebSeries::interpolate(|x| x.sin(), 0.0, std::f64::consts::PI, 32).unwrap();
        for i in 0..=50 {
            let x = std::f64::consts::PI * i as f64 / 50.0;
            assert!((s.eval(x) - x.sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_of_sin_is_cos() {
        let s = ChebSeries::interpolate(|x| x.sin(), 0.0, 3.0, 40).unwrap();
        let d = s.derivative();
        for i in 1..20 {
            let x = 3.0 * i as f64 / 20.0;
            assert!((d.eval(x) - x.cos()).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn least_squares_recovers_polynomial() {
        let xs: Vec<f64> = (0..200).map(|i| i as f64 / 199.0 * 2.0).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| 1.0 + x - 0.25 * x * x * x).collect();
        let s = ChebSeries::fit_samples(&xs, &ys, 0.0, 2.0, 5).unwrap();
        for &x in &xs {
            assert!((s.eval(x) - (1.0 + x - 0.25 * x * x * x)).abs() < 1e-10);
        }
    }

    #[test]
    fn fit_rejects_underdetermined() {
        let xs = [0.0, 1.0];
        let ys = [0.0, 1.0];
        assert!(ChebSeries::fit_samples(&xs, &ys, 0.0, 1.0, 3).is_err());
    }
}
