//! Finite-difference consistency checks for analytic derivatives.

/// Maximum relative deviation between `fp` and central differences of `f`
/// over `samples` equally spaced interior points of `(lo, hi)`.
///
/// The step is `1e-6` of the domain length; the denominator carries a small
/// floor so zero derivatives do not blow up the ratio.
pub fn check_derivatives<F, G>(f: F, fp: G, lo: f64, hi: f64, samples: usize) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let h = 1e-6 * (hi - lo);
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        // Interior points, keeping the stencil inside the domain.
        let x = lo + (hi - lo) * (i as f64 + 0.5) / samples as f64;
        let fd = (f(x + h) - f(x - h)) / (2.0 * h);
        let exact = fp(x);
        let dev = (exact - fd).abs() / (exact.abs() + 1e-14);
        worst = worst.max(dev);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_derivative_consistent() {
        let dev = check_derivatives(|x| x.sin(), |x| x.cos(), 0.0, 3.0, 64);
        assert!(dev < 1e-8, "dev = {dev:e}");
    }

    #[test]
    fn wrong_derivative_flagged() {
        let dev = check_derivatives(|x| x.sin(), |x| 2.0 * x.cos(), 0.2, 3.0, 64);
        assert!(dev > 0.3, "dev = {dev:e}");
    }
}
