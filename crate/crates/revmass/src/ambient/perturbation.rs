//! Axisymmetric metric perturbations b_ij with exact derivatives and decay
//! validation.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::rpoly::RPoly;

pub type Sym3 = [[f64; 3]; 3];

/// A symmetric perturbation tensor field b_ij given by `RPoly` components,
/// with first, second and third coordinate derivatives precomputed
/// symbolically at construction.
pub struct PerturbationField {
    name: String,
    b: [[RPoly; 3]; 3],
    db: Vec<[[RPoly; 3]; 3]>,        // [k][i][j]
    d2b: Vec<Vec<[[RPoly; 3]; 3]>>,  // [l][k][i][j]
    d3b: Vec<Vec<Vec<[[RPoly; 3]; 3]>>>,
    axisymmetric: bool,
}

impl std::fmt::Debug for PerturbationField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PerturbationField")
            .field("name", &self.name)
            .field("axisymmetric", &self.axisymmetric)
            .finish()
    }
}

fn eval_matrix(m: &[[RPoly; 3]; 3], x: [f64; 3]) -> Sym3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[i][j].eval(x);
        }
    }
    out
}

fn rotate_z(x: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    [c * x[0] - s * x[1], s * x[0] + c * x[1], x[2]]
}

impl PerturbationField {
    /// Build from symmetric components; derivatives are computed exactly.
    pub fn from_components(name: impl Into<String>, b: [[RPoly; 3]; 3]) -> Result<Self> {
        let name = name.into();
        for i in 0..3 {
            for j in (i + 1)..3 {
                if b[i][j] != b[j][i] {
                    return Err(Error::Metric(format!(
                        "perturbation `{name}` has asymmetric components ({i},{j})"
                    )));
                }
            }
        }
        let db: Vec<_> = (0..3)
            .map(|k| {
                let mut m: [[RPoly; 3]; 3] = Default::default();
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] = b[i][j].diff(k);
                    }
                }
                m
            })
            .collect();
        let d2b: Vec<Vec<_>> = (0..3)
            .map(|l| {
                (0..3)
                    .map(|k| {
                        let mut m: [[RPoly; 3]; 3] = Default::default();
                        for i in 0..3 {
                            for j in 0..3 {
                                m[i][j] = db[k][i][j].diff(l);
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let d3b: Vec<Vec<Vec<_>>> = (0..3)
            .map(|q| {
                (0..3)
                    .map(|l| {
                        (0..3)
                            .map(|k| {
                                let mut m: [[RPoly; 3]; 3] = Default::default();
                                for i in 0..3 {
                                    for j in 0..3 {
                                        m[i][j] = d2b[l][k][i][j].diff(q);
                                    }
                                }
                                m
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut field = PerturbationField {
            name,
            b,
            db,
            d2b,
            d3b,
            axisymmetric: false,
        };
        field.axisymmetric = field.check_axisymmetry();
        Ok(field)
    }

    /// Named presets, all axisymmetric with exact r^{-2} decay:
    /// - `isotropic`:  c/r^2 * delta_ij
    /// - `radial`:     c x_i x_j / r^4
    /// - `quadrupole`: c (x3)^2 / r^4 * delta_ij
    /// - `axial`:      c x3 (x_i d_{j3} + x_j d_{i3}) / r^4
    pub fn preset(name: &str, amplitude: f64) -> Result<Arc<Self>> {
        let c = amplitude;
        let mut b: [[RPoly; 3]; 3] = Default::default();
        match name {
            "isotropic" => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = RPoly::term(c, [0, 0, 0], -2);
                }
            }
            "radial" => {
                for i in 0..3 {
                    for j in 0..3 {
                        let mut powers = [0u32; 3];
                        powers[i] += 1;
                        powers[j] += 1;
                        b[i][j] = RPoly::term(c, powers, -4);
                    }
                }
            }
            "quadrupole" => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = RPoly::term(c, [0, 0, 2], -4);
                }
            }
            "axial" => {
                // b_i3 = b_3i = c x3 x_i / r^4, doubling on the diagonal.
                for i in 0..3 {
                    let mut powers = [0u32; 3];
                    powers[i] += 1;
                    powers[2] += 1;
                    let coeff = if i == 2 { 2.0 * c } else { c };
                    b[i][2] = RPoly::term(coeff, powers, -4);
                    b[2][i] = b[i][2].clone();
                }
            }
            other => {
                return Err(Error::Metric(format!(
                    "unknown perturbation preset `{other}` (expected isotropic, radial, quadrupole or axial)"
                )))
            }
        }
        Ok(Arc::new(Self::from_components(name, b)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_axisymmetric(&self) -> bool {
        self.axisymmetric
    }

    pub fn b_at(&self, x: [f64; 3]) -> Sym3 {
        eval_matrix(&self.b, x)
    }

    /// `[k][i][j] = d_k b_ij`.
    pub fn db_at(&self, x: [f64; 3]) -> [Sym3; 3] {
        [
            eval_matrix(&self.db[0], x),
            eval_matrix(&self.db[1], x),
            eval_matrix(&self.db[2], x),
        ]
    }

    /// `[l][k][i][j] = d_l d_k b_ij`.
    pub fn d2b_at(&self, x: [f64; 3]) -> [[Sym3; 3]; 3] {
        let mut out = [[[[0.0; 3]; 3]; 3]; 3];
        for l in 0..3 {
            for k in 0..3 {
                out[l][k] = eval_matrix(&self.d2b[l][k], x);
            }
        }
        out
    }

    /// `[q][l][k][i][j] = d_q d_l d_k b_ij`.
    pub fn d3b_at(&self, x: [f64; 3]) -> [[[Sym3; 3]; 3]; 3] {
        let mut out = [[[[[0.0; 3]; 3]; 3]; 3]; 3];
        for q in 0..3 {
            for l in 0..3 {
                for k in 0..3 {
                    out[q][l][k] = eval_matrix(&self.d3b[q][l][k], x);
                }
            }
        }
        out
    }

    /// Invariance of the tensor under rotations about the x3-axis, checked
    /// at a deterministic sample set: b(Rx) = R b(x) R^T.
    fn check_axisymmetry(&self) -> bool {
        let points = [
            [1.0, 0.0, 0.5],
            [0.3, -0.7, 1.1],
            [2.0, 1.0, -0.4],
            [-1.5, 0.2, 3.0],
        ];
        let angles = [0.7, 1.9, 2.8, 4.4];
        for &x in &points {
            let bx = self.b_at(x);
            for &ang in &angles {
                let brx = self.b_at(rotate_z(x, ang));
                let (s, c) = ang.sin_cos();
                let rot = [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]];
                // expected = R b(x) R^T
                let mut expected = [[0.0; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        let mut acc = 0.0;
                        for p in 0..3 {
                            for q in 0..3 {
                                acc += rot[i][p] * bx[p][q] * rot[j][q];
                            }
                        }
                        expected[i][j] = acc;
                    }
                }
                for i in 0..3 {
                    for j in 0..3 {
                        if (brx[i][j] - expected[i][j]).abs() > 1e-10 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Decay suprema on one coordinate shell.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ShellDecay {
    pub r: f64,
    /// sup over the angular sample set of r^{2+k} |d^k b|, k = 0..3.
    pub weighted_sup: [f64; 4],
}

/// Report of `validate_decay`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DecayReport {
    pub shells: Vec<ShellDecay>,
    /// Whether every weighted supremum stays bounded across the shells.
    pub bounded: bool,
}

fn max_abs(m: &Sym3) -> f64 {
    let mut out: f64 = 0.0;
    for row in m {
        for v in row {
            out = out.max(v.abs());
        }
    }
    out
}

/// Deterministic angular sample set (latitude-longitude grid).
pub(crate) fn angular_samples() -> Vec<[f64; 3]> {
    let mut pts = Vec::new();
    for i in 1..8 {
        let theta = std::f64::consts::PI * i as f64 / 8.0;
        for j in 0..16 {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / 16.0;
            pts.push([
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ]);
        }
    }
    pts.push([0.0, 0.0, 1.0]);
    pts.push([0.0, 0.0, -1.0]);
    pts
}

/// Evaluate the weighted decay suprema of `b` on the given shells.
pub fn decay_report(field: Option<&PerturbationField>, shells: &[f64]) -> Result<DecayReport> {
    if shells.is_empty() {
        return Err(Error::InvalidParameter("shells must be nonempty".into()));
    }
    if shells.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::InvalidParameter("shells must be increasing".into()));
    }
    let dirs = angular_samples();
    let mut report = Vec::with_capacity(shells.len());
    for &r in shells {
        let mut sup = [0.0f64; 4];
        if let Some(f) = field {
            for d in &dirs {
                let x = [r * d[0], r * d[1], r * d[2]];
                sup[0] = sup[0].max(max_abs(&f.b_at(x)));
                let db = f.db_at(x);
                for m in &db {
                    sup[1] = sup[1].max(max_abs(m));
                }
                let d2 = f.d2b_at(x);
                for block in &d2 {
                    for m in block {
                        sup[2] = sup[2].max(max_abs(m));
                    }
                }
                let d3 = f.d3b_at(x);
                for blk in &d3 {
                    for block in blk {
                        for m in block {
                            sup[3] = sup[3].max(max_abs(m));
                        }
                    }
                }
            }
        }
        let weighted = [
            r * r * sup[0],
            r * r * r * sup[1],
            r * r * r * r * sup[2],
            r * r * r * r * r * sup[3],
        ];
        report.push(ShellDecay {
            r,
            weighted_sup: weighted,
        });
    }
    // Bounded when no weighted supremum grows materially from the first shell.
    let bounded = (0..4).all(|k| {
        let first = report[0].weighted_sup[k];
        report
            .iter()
            .all(|s| s.weighted_sup[k] <= 1.5 * first + 1e-12)
    });
    Ok(DecayReport {
        shells: report,
        bounded,
    })
}
