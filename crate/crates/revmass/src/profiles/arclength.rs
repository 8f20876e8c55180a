//! Arclength reparametrization of a generating curve.
//!
//! The new parameter is cumulative arclength s; the map t(s) is inverted by
//! table lookup plus Newton refinement, and all derivatives of the
//! reparametrized curve are propagated through the inverse-function jets, so
//! no differentiation accuracy is lost.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{gauss_rule, Jet3};

use super::curve::GeneratingCurve;

const TABLE_SEGMENTS: usize = 512;
const SEGMENT_NODES: usize = 16;

pub struct ArclengthCurve {
    base: Arc<dyn GeneratingCurve>,
    /// Cumulative arclength at the segment boundaries t_i = i * l_base / N.
    table: Vec<f64>,
    l_base: f64,
    length: f64,
}

fn speed_jet2(base: &dyn GeneratingCurve, t: f64) -> Jet3 {
    // T = sqrt(w'^2 + h'^2) as a jet in t, valid through second order
    // (the third component would need fourth derivatives of the curve).
    let w = base.w_jet(t);
    let h = base.h_jet(t);
    let q = Jet3::new(
        w.d1 * w.d1 + h.d1 * h.d1,
        2.0 * (w.d1 * w.d2 + h.d1 * h.d2),
        2.0 * (w.d2 * w.d2 + w.d1 * w.d3 + h.d2 * h.d2 + h.d1 * h.d3),
        0.0,
    );
    q.sqrt()
}

impl ArclengthCurve {
    pub fn new(base: Arc<dyn GeneratingCurve>, tol: f64) -> Result<Self> {
        let l_base = base.l();
        // Reject degenerate tangents before building the table.
        let probe = 4096;
        for i in 0..=probe {
            let t = l_base * i as f64 / probe as f64;
            let w = base.w_jet(t);
            let h = base.h_jet(t);
            let speed_sq = w.d1 * w.d1 + h.d1 * h.d1;
            if speed_sq < tol * tol {
                return Err(Error::DegenerateTangent { phi: t, speed_sq });
            }
        }
        let rule = gauss_rule(SEGMENT_NODES);
        let seg = l_base / TABLE_SEGMENTS as f64;
        let mut table = Vec::with_capacity(TABLE_SEGMENTS + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for i in 0..TABLE_SEGMENTS {
            let lo = seg * i as f64;
            let mid = lo + 0.5 * seg;
            let half = 0.5 * seg;
            let mut s = 0.0;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                s += w * speed_jet2(base.as_ref(), mid + half * x).f;
            }
            acc += half * s;
            table.push(acc);
        }
        let length = acc;
        Ok(ArclengthCurve {
            base,
            table,
            l_base,
            length,
        })
    }

    /// Arclength from 0 to `t` (table prefix plus a one-panel tail).
    fn arclen(&self, t: f64) -> f64 {
        let seg = self.l_base / TABLE_SEGMENTS as f64;
        let i = ((t / seg) as usize).min(TABLE_SEGMENTS - 1);
        let lo = seg * i as f64;
        let rule = gauss_rule(SEGMENT_NODES);
        let mid = 0.5 * (lo + t);
        let half = 0.5 * (t - lo);
        let mut s = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            s += w * speed_jet2(self.base.as_ref(), mid + half * x).f;
        }
        self.table[i] + half * s
    }

    /// Invert s -> t by bracketed Newton.
    fn t_of_s(&self, s: f64) -> Result<f64> {
        if s <= 0.0 {
            return Ok(0.0);
        }
        if s >= self.length {
            return Ok(self.l_base);
        }
        let idx = match self
            .table
            .binary_search_by(|probe| probe.partial_cmp(&s).expect("finite table"))
        {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let seg = self.l_base / TABLE_SEGMENTS as f64;
        let mut lo = seg * idx as f64;
        let mut hi = (seg * (idx + 1) as f64).min(self.l_base);
        // Linear interpolation initial guess inside the bracketing segment.
        let s_lo = self.table[idx];
        let s_hi = self.table[(idx + 1).min(TABLE_SEGMENTS)];
        let mut t = lo + (hi - lo) * ((s - s_lo) / (s_hi - s_lo)).clamp(0.0, 1.0);
        for _ in 0..60 {
            let fval = self.arclen(t) - s;
            if fval.abs() <= 1e-14 * self.length {
                return Ok(t);
            }
            if fval > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let speed = speed_jet2(self.base.as_ref(), t).f;
            let mut next = t - fval / speed;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() <= f64::EPSILON * self.l_base {
                return Ok(next);
            }
            t = next;
        }
        Err(Error::InversionFailed(format!(
            "newton did not reach 1e-14 at s = {s}"
        )))
    }

    /// Jet of the inverse map t(s) at the given arclength.
    fn inverse_jet(&self, s: f64) -> Result<Jet3> {
        let t = self.t_of_s(s)?;
        let tj = speed_jet2(self.base.as_ref(), t);
        let t1 = 1.0 / tj.f;
        let t2 = -tj.d1 / (tj.f * tj.f * tj.f);
        let t3 = (3.0 * tj.d1 * tj.d1 - tj.d2 * tj.f) / tj.f.powi(5);
        Ok(Jet3::new(t, t1, t2, t3))
    }
}

impl GeneratingCurve for ArclengthCurve {
    fn l(&self) -> f64 {
        self.length
    }

    fn w_jet(&self, s: f64) -> Jet3 {
        let inner = self
            .inverse_jet(s)
            .expect("arclength inversion verified at construction");
        let w = self.base.w_jet(inner.f);
        inner.compose(w.f, w.d1, w.d2, w.d3)
    }

    fn h_jet(&self, s: f64) -> Jet3 {
        let inner = self
            .inverse_jet(s)
            .expect("arclength inversion verified at construction");
        let h = self.base.h_jet(inner.f);
        inner.compose(h.f, h.d1, h.d2, h.d3)
    }
}
