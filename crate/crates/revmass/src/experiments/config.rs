//! Declarative experiment configuration: a TOML file with [section] headers
//! and key = value lines. Outputs are a pure function of this file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ambient::{AmbientMetric, MetricKind, PerturbationField};
use crate::error::{Error, Result};
use crate::numerics::QuadSpec;
use crate::profiles::{
    make_builtin, profile_from_csv, reparametrize_arclength, BuiltinProfile, Profile,
};

/// Which experiment the harness runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    MassTable,
    ConvergeBy,
    ConvergeAdm,
    HawkingDivergence,
    LemmaDecayChecks,
    Validate,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::MassTable => "mass_table",
            ExperimentKind::ConvergeBy => "converge_by",
            ExperimentKind::ConvergeAdm => "converge_adm",
            ExperimentKind::HawkingDivergence => "hawking_divergence",
            ExperimentKind::LemmaDecayChecks => "lemma_decay_checks",
            ExperimentKind::Validate => "validate",
        }
    }
}

/// Profile selection: a builtin family or a CSV sample file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub kind: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub params: Vec<f64>,
    #[serde(default)]
    pub csv_path: Option<PathBuf>,
}

impl Default for ProfileSpec {
    fn default() -> Self {
        ProfileSpec {
            kind: "builtin".into(),
            name: Some("sphere".into()),
            params: Vec::new(),
            csv_path: None,
        }
    }
}

/// Metric selection.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricSpec {
    pub kind: String,
    #[serde(default = "default_mass")]
    pub mass: f64,
    #[serde(default)]
    pub perturbation: Option<String>,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
}

fn default_mass() -> f64 {
    1.0
}

fn default_amplitude() -> f64 {
    1.0
}

impl Default for MetricSpec {
    fn default() -> Self {
        MetricSpec {
            kind: "schwarzschild".into(),
            mass: 1.0,
            perturbation: None,
            amplitude: 1.0,
        }
    }
}

/// Experiment block: kind and scale list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentBlock {
    pub kind: ExperimentKind,
    pub scales: Vec<f64>,
}

impl Default for ExperimentBlock {
    fn default() -> Self {
        ExperimentBlock {
            kind: ExperimentKind::MassTable,
            scales: vec![10.0, 100.0, 1000.0],
        }
    }
}

/// Output destinations.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct OutputSpec {
    #[serde(default)]
    pub dir: Option<PathBuf>,
    #[serde(default = "default_true")]
    pub emit_plotdata: bool,
    #[serde(default)]
    pub embed_dump: bool,
}

fn default_true() -> bool {
    true
}

/// Verdict thresholds; defaults match the acceptance tolerances.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Thresholds {
    /// Band for the fitted order of |m_BY - m| in the Schwarzschild case.
    pub by_order_min: f64,
    pub by_order_max: f64,
    /// Maximum fitted order of |m_BY - m| in the perturbed case.
    pub perturbed_order_max: f64,
    /// Slack added to nominal decay orders in the lemma checks.
    pub lemma_order_slack: f64,
    /// Band for the Hawking doubling ratio m_H(2a)/m_H(a).
    pub hawking_ratio_min: f64,
    pub hawking_ratio_max: f64,
    /// Scale from which the Hawking mass must be negative.
    pub hawking_negative_from: f64,
    /// Bound on |m_BY| and |m_ADM| in flat space.
    pub euclidean_mass_tol: f64,
    /// Cancellation diagnostic bound as a multiple of the mass parameter.
    pub cancellation_tol_factor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            by_order_min: -1.3,
            by_order_max: -0.7,
            perturbed_order_max: -0.7,
            lemma_order_slack: 0.3,
            hawking_ratio_min: 1.8,
            hawking_ratio_max: 2.2,
            hawking_negative_from: 50.0,
            euclidean_mass_tol: 1e-8,
            cancellation_tol_factor: 1e-8,
        }
    }
}

fn default_quad() -> QuadSpec {
    QuadSpec::default()
}

/// Full experiment configuration.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub profile: ProfileSpec,
    #[serde(default)]
    pub metric: MetricSpec,
    #[serde(default)]
    pub experiment: ExperimentBlock,
    #[serde(default = "default_quad")]
    pub quadrature: QuadSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub thresholds: Thresholds,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.experiment.scales.is_empty() {
            return Err(Error::Config("experiment.scales must be nonempty".into()));
        }
        if self.experiment.scales[0] <= 0.0
            || self.experiment.scales.windows(2).any(|p| !(p[1] > p[0]))
        {
            return Err(Error::Config(
                "experiment.scales must be positive and strictly increasing".into(),
            ));
        }
        self.quadrature.validate()?;
        match self.metric.kind.as_str() {
            "euclidean" => {
                if matches!(
                    self.experiment.kind,
                    ExperimentKind::ConvergeBy
                        | ExperimentKind::ConvergeAdm
                        | ExperimentKind::HawkingDivergence
                ) {
                    return Err(Error::Config(format!(
                        "experiment `{}` needs a massive metric",
                        self.experiment.kind.name()
                    )));
                }
            }
            "schwarzschild" | "perturbed" => {
                if !(self.metric.mass > 0.0) {
                    return Err(Error::Config(format!(
                        "metric.mass must be positive, got {}",
                        self.metric.mass
                    )));
                }
            }
            other => {
                return Err(Error::Config(format!("unknown metric kind `{other}`")));
            }
        }
        if self.experiment.kind == ExperimentKind::LemmaDecayChecks {
            let scales = &self.experiment.scales;
            if scales.len() < 3 {
                return Err(Error::Config(
                    "lemma_decay_checks needs at least 3 scales".into(),
                ));
            }
            if scales[scales.len() - 1] / scales[0] < 8.0 {
                return Err(Error::Config(
                    "lemma_decay_checks scales should span close to a decade".into(),
                ));
            }
        }
        Ok(())
    }

    /// Build the profile (validated and arclength-reparametrized) named by
    /// the config.
    pub fn resolve_profile(&self) -> Result<Profile> {
        let raw = match self.profile.kind.as_str() {
            "builtin" => {
                let name = self
                    .profile
                    .name
                    .as_deref()
                    .ok_or_else(|| Error::Config("profile.name missing".into()))?;
                make_builtin(BuiltinProfile::parse(name)?, &self.profile.params)?
            }
            "csv" => {
                let path = self
                    .profile
                    .csv_path
                    .as_deref()
                    .ok_or_else(|| Error::Config("profile.csv_path missing".into()))?;
                profile_from_csv(path)?
            }
            other => return Err(Error::Config(format!("unknown profile kind `{other}`"))),
        };
        let oriented = raw.validated()?;
        reparametrize_arclength(&oriented, 1e-10)
    }

    pub fn resolve_metric(&self) -> Result<AmbientMetric> {
        match self.metric.kind.as_str() {
            "euclidean" => Ok(AmbientMetric::euclidean()),
            "schwarzschild" => AmbientMetric::build(MetricKind::Schwarzschild {
                mass: self.metric.mass,
            }),
            "perturbed" => {
                let preset = self.metric.perturbation.as_deref().unwrap_or("isotropic");
                let perturbation = PerturbationField::preset(preset, self.metric.amplitude)?;
                AmbientMetric::build(MetricKind::Perturbed {
                    mass: self.metric.mass,
                    perturbation,
                })
            }
            other => Err(Error::Config(format!("unknown metric kind `{other}`"))),
        }
    }
}
