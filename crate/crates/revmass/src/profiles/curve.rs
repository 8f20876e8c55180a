//! Generating-curve representations behind `Profile`.
//!
//! A curve supplies third-order jets of the two coordinate functions (w, h)
//! on [0, l]. Built-ins use closed-form jets; sampled profiles use Chebyshev
//! series with spectral differentiation.

use std::sync::Arc;

use crate::numerics::{ChebSeries, Jet3};

/// Evaluation interface for a generating curve on `[0, l]`.
pub trait GeneratingCurve: Send + Sync {
    fn l(&self) -> f64;
    fn w_jet(&self, phi: f64) -> Jet3;
    fn h_jet(&self, phi: f64) -> Jet3;
}

type JetFn = Arc<dyn Fn(f64) -> Jet3 + Send + Sync>;

/// Curve given by closed-form jet callbacks.
pub struct AnalyticCurve {
    pub l: f64,
    pub w: JetFn,
    pub h: JetFn,
}

impl AnalyticCurve {
    pub fn new<W, H>(l: f64, w: W, h: H) -> Self
    where
        W: Fn(f64) -> Jet3 + Send + Sync + 'static,
        H: Fn(f64) -> Jet3 + Send + Sync + 'static,
    {
        AnalyticCurve {
            l,
            w: Arc::new(w),
            h: Arc::new(h),
        }
    }
}

impl GeneratingCurve for AnalyticCurve {
    fn l(&self) -> f64 {
        self.l
    }
    fn w_jet(&self, phi: f64) -> Jet3 {
        (self.w)(phi)
    }
    fn h_jet(&self, phi: f64) -> Jet3 {
        (self.h)(phi)
    }
}

/// Curve represented by Chebyshev series; derivatives by series
/// differentiation, precomputed once.
pub struct ChebCurve {
    l: f64,
    w: [ChebSeries; 4],
    h: [ChebSeries; 4],
}

impl ChebCurve {
    pub fn new(w: ChebSeries, h: ChebSeries) -> Self {
        let l = w.hi;
        let w1 = w.derivative();
        let w2 = w1.derivative();
        let w3 = w2.derivative();
        let h1 = h.derivative();
        let h2 = h1.derivative();
        let h3 = h2.derivative();
        ChebCurve {
            l,
            w: [w, w1, w2, w3],
            h: [h, h1, h2, h3],
        }
    }
}

fn series_jet(s: &[ChebSeries; 4], phi: f64) -> Jet3 {
    Jet3::new(s[0].eval(phi), s[1].eval(phi), s[2].eval(phi), s[3].eval(phi))
}

impl GeneratingCurve for ChebCurve {
    fn l(&self) -> f64 {
        self.l
    }
    fn w_jet(&self, phi: f64) -> Jet3 {
        series_jet(&self.w, phi)
    }
    fn h_jet(&self, phi: f64) -> Jet3 {
        series_jet(&self.h, phi)
    }
}

/// Vertical mirror h -> -h, used to enforce the h(0) > h(l) orientation.
pub struct FlipCurve {
    pub inner: Arc<dyn GeneratingCurve>,
}

impl GeneratingCurve for FlipCurve {
    fn l(&self) -> f64 {
        self.inner.l()
    }
    fn w_jet(&self, phi: f64) -> Jet3 {
        self.inner.w_jet(phi)
    }
    fn h_jet(&self, phi: f64) -> Jet3 {
        -self.inner.h_jet(phi)
    }
}
