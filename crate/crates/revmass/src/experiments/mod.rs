//! Batch experiment harness: configuration, runners and output emission.

mod config;
mod emit;
mod run;

pub use config::{
    ExperimentConfig, ExperimentKind, MetricSpec, OutputSpec, ProfileSpec, Thresholds,
};
pub use emit::{emit_plotdata, format_g17, write_mass_csv, write_study_json};
pub use run::{
    run_experiment, run_lemma_checks, ConvergenceStudy, LemmaCheck, LemmaReport, Verdict,
};
