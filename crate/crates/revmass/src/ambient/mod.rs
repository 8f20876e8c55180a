//! Ambient 3-metric models and their derivative data.

mod metric;
mod perturbation;
mod rpoly;

pub use metric::{
    invert3, scalar_curvature_fd, AmbientMetric, ConformalData, MetricKind, DECAY_SHELLS,
    DEFAULT_R_MIN,
};
pub use perturbation::{decay_report, DecayReport, PerturbationField, ShellDecay, Sym3};
pub use rpoly::{RPoly, RTerm};
