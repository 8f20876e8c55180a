//! Third-order jets: value plus first three derivatives of a scalar function
//! of one variable, with arithmetic that propagates derivatives exactly.
//!
//! All curvature and embedding formulas in this crate are chains of products,
//! quotients and square roots of profile data; evaluating them in jet
//! arithmetic keeps derivative consistency at machine precision, which the
//! pole-limit extensions and the exact-cancellation diagnostics rely on.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value and derivatives `(f, f', f'', f''')` at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet3 {
    pub f: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet3 {
    pub const fn new(f: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Jet3 { f, d1, d2, d3 }
    }

    /// Constant jet: all derivatives zero.
    pub const fn constant(c: f64) -> Self {
        Jet3::new(c, 0.0, 0.0, 0.0)
    }

    /// The identity function evaluated at `x`.
    pub const fn variable(x: f64) -> Self {
        Jet3::new(x, 1.0, 0.0, 0.0)
    }

    pub fn scale(self, c: f64) -> Self {
        Jet3::new(c * self.f, c * self.d1, c * self.d2, c * self.d3)
    }

    /// `sqrt(self)`; requires `self.f > 0`.
    pub fn sqrt(self) -> Self {
        let s = self.f.sqrt();
        let s1 = self.d1 / (2.0 * s);
        let s2 = (self.d2 - 2.0 * s1 * s1) / (2.0 * s);
        let s3 = (self.d3 - 6.0 * s1 * s2) / (2.0 * s);
        Jet3::new(s, s1, s2, s3)
    }

    /// `1/self`; requires `self.f != 0`.
    pub fn recip(self) -> Self {
        Jet3::constant(1.0) / self
    }

    /// Integer power by repeated multiplication (exponent >= 0).
    pub fn powi(self, n: u32) -> Self {
        let mut acc = Jet3::constant(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Real power `self^p`; requires `self.f > 0`.
    pub fn powf(self, p: f64) -> Self {
        let v = self.f.powf(p);
        let g1 = p * self.f.powf(p - 1.0);
        let g2 = p * (p - 1.0) * self.f.powf(p - 2.0);
        let g3 = p * (p - 1.0) * (p - 2.0) * self.f.powf(p - 3.0);
        self.compose(v, g1, g2, g3)
    }

    /// Chain rule: outer function with derivatives (g, g', g'', g''') taken
    /// at `self.f`, composed with this jet (Faa di Bruno to order 3).
    pub fn compose(self, g: f64, g1: f64, g2: f64, g3: f64) -> Self {
        let (x1, x2, x3) = (self.d1, self.d2, self.d3);
        Jet3::new(
            g,
            g1 * x1,
            g2 * x1 * x1 + g1 * x2,
            g3 * x1 * x1 * x1 + 3.0 * g2 * x1 * x2 + g1 * x3,
        )
    }

    pub fn is_finite(self) -> bool {
        self.f.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3::new(self.f + o.f, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        Jet3::new(self.f - o.f, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        Jet3::new(-self.f, -self.d1, -self.d2, -self.d3)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, o: Jet3) -> Jet3 {
        // Leibniz rule to third order.
        Jet3::new(
            self.f * o.f,
            self.d1 * o.f + self.f * o.d1,
            self.d2 * o.f + 2.0 * self.d1 * o.d1 + self.f * o.d2,
            self.d3 * o.f + 3.0 * self.d2 * o.d1 + 3.0 * self.d1 * o.d2 + self.f * o.d3,
        )
    }
}

impl Div for Jet3 {
    type Output = Jet3;
    fn div(self, o: Jet3) -> Jet3 {
        // Triangular solve of (q*o) = self, order by order.
        let q0 = self.f / o.f;
        let q1 = (self.d1 - q0 * o.d1) / o.f;
        let q2 = (self.d2 - q0 * o.d2 - 2.0 * q1 * o.d1) / o.f;
        let q3 = (self.d3 - q0 * o.d3 - 3.0 * q1 * o.d2 - 3.0 * q2 * o.d1) / o.f;
        Jet3::new(q0, q1, q2, q3)
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;
    fn mul(self, c: f64) -> Jet3 {
        self.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    fn sin_jet(x: f64) -> Jet3 {
        Jet3::new(x.sin(), x.cos(), -x.sin(), -x.cos())
    }

    #[test]
    fn product_matches_sin2x() {
        // sin^2 has derivative chain sin2x, 2cos2x, -4sin2x
        let x = 0.37;
        let j = sin_jet(x) * sin_jet(x);
        assert!(close(j.f, x.sin() * x.sin(), 1e-15));
        assert!(close(j.d1, (2.0 * x).sin(), 1e-15));
        assert!(close(j.d2, 2.0 * (2.0 * x).cos(), 1e-15));
        assert!(close(j.d3, -4.0 * (2.0 * x).sin(), 1e-15));
    }

    #[test]
    fn sqrt_of_square_is_identity() {
        let x = 1.73;
        let j = (sin_jet(x) * sin_jet(x)).sqrt();
        let s = sin_jet(x);
        assert!(close(j.f, s.f, 1e-14));
        assert!(close(j.d1, s.d1, 1e-13));
        assert!(close(j.d2, s.d2, 1e-12));
        assert!(close(j.d3, s.d3, 1e-11));
    }

    #[test]
    fn division_roundtrip() {
        let x = 0.9;
        let a = sin_jet(x);
        let b = Jet3::new(x.cos() + 2.0, -x.sin(), -x.cos(), x.sin());
        let q = a / b;
        let back = q * b;
        assert!(close(back.f, a.f, 1e-14));
        assert!(close(back.d1, a.d1, 1e-13));
        assert!(close(back.d2, a.d2, 1e-13));
        assert!(close(back.d3, a.d3, 1e-12));
    }

    #[test]
    fn powf_matches_powi() {
        let j = Jet3::new(2.3, 0.7, -0.4, 0.1);
        let a = j.powi(4);
        let b = j.powf(4.0);
        assert!(close(a.f, b.f, 1e-13));
        assert!(close(a.d1, b.d1, 1e-13));
        assert!(close(a.d2, b.d2, 1e-12));
        assert!(close(a.d3, b.d3, 1e-12));
    }
}
