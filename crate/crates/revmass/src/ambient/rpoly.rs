//! Functions of the form sum_k c_k x^alpha r^n (monomials times integer
//! powers of the Euclidean radius), closed under partial differentiation.
//!
//! Perturbation fields are built from these terms, so all their coordinate
//! derivatives up to third order are exact — no numerical differentiation of
//! user fields enters the decay estimates.

/// One term `coeff * x1^p1 x2^p2 x3^p3 * r^rpow`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RTerm {
    pub coeff: f64,
    pub powers: [u32; 3],
    pub rpow: i32,
}

/// Sum of `RTerm`s.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RPoly {
    pub terms: Vec<RTerm>,
}

impl RPoly {
    pub fn zero() -> Self {
        RPoly { terms: Vec::new() }
    }

    pub fn term(coeff: f64, powers: [u32; 3], rpow: i32) -> Self {
        RPoly {
            terms: vec![RTerm {
                coeff,
                powers,
                rpow,
            }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let mut total = 0.0;
        for t in &self.terms {
            let mut v = t.coeff * r.powi(t.rpow);
            for (xi, &p) in x.iter().zip(&t.powers) {
                for _ in 0..p {
                    v *= xi;
                }
            }
            total += v;
        }
        total
    }

    /// Partial derivative with respect to coordinate `k`.
    ///
    /// `d/dx_k (x^a r^n) = a_k x^{a - e_k} r^n + n x^{a + e_k} r^{n-2}`.
    pub fn diff(&self, k: usize) -> RPoly {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.powers[k] > 0 {
                let mut powers = t.powers;
                powers[k] -= 1;
                out.push(RTerm {
                    coeff: t.coeff * t.powers[k] as f64,
                    powers,
                    rpow: t.rpow,
                });
            }
            if t.rpow != 0 {
                let mut powers = t.powers;
                powers[k] += 1;
                out.push(RTerm {
                    coeff: t.coeff * t.rpow as f64,
                    powers,
                    rpow: t.rpow - 2,
                });
            }
        }
        let mut poly = RPoly { terms: out };
        poly.simplify();
        poly
    }

    fn simplify(&mut self) {
        self.terms.sort_by_key(|t| (t.powers, t.rpow));
        let mut merged: Vec<RTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.powers == t.powers && last.rpow == t.rpow => {
                    last.coeff += t.coeff;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        self.terms = merged;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(p: &RPoly, x: [f64; 3], k: usize) -> f64 {
        let h = 1e-6 * x[k].abs().max(1.0);
        let mut xp = x;
        let mut xm = x;
        xp[k] += h;
        xm[k] -= h;
        (p.eval(xp) - p.eval(xm)) / (2.0 * h)
    }

    #[test]
    fn derivative_matches_finite_differences() {
        // x1 x3 / r^4
        let p = RPoly::term(1.0, [1, 0, 1], -4);
        let x = [1.3, -0.4, 2.1];
        for k in 0..3 {
            let exact = p.diff(k).eval(x);
            let approx = fd(&p, x, k);
            assert!(
                (exact - approx).abs() < 1e-8 * (1.0 + exact.abs()),
                "k={k}: {exact} vs {approx}"
            );
        }
    }

    #[test]
    fn third_derivatives_stay_exact() {
        let p = RPoly::term(2.0, [0, 0, 2], -4);
        let d3 = p.diff(0).diff(2).diff(2);
        // Compare against nested finite differences of the second derivative.
        let d2 = p.diff(0).diff(2);
        let x = [0.9, 0.2, -1.1];
        let approx = fd(&d2, x, 2);
        assert!((d3.eval(x) - approx).abs() < 1e-7 * (1.0 + d3.eval(x).abs()));
    }

    #[test]
    fn like_terms_merge() {
        let mut p = RPoly::term(1.0, [1, 0, 0], -2);
        p.terms.push(RTerm {
            coeff: 2.0,
            powers: [1, 0, 0],
            rpow: -2,
        });
        p.simplify();
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms[0].coeff, 3.0);
    }
}
