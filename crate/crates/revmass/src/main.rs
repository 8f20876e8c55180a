//! Thin batch CLI over the experiment harness.
//!
//! Exit codes: 0 all verdicts pass, 2 a verdict failed, 1 execution error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use revmass::experiments::{run_experiment, ExperimentConfig, ExperimentKind};

#[derive(Parser)]
#[command(
    name = "revmass",
    about = "Quasi-local masses of convex revolution surfaces in Schwarzschild-like 3-manifolds",
    version
)]
struct Cli {
    /// TOML experiment configuration; defaults cover a Schwarzschild sphere
    /// study when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV/JSON/plot-data files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Override the quadrature panel count.
    #[arg(long, global = true, value_name = "N")]
    quad_panels: Option<usize>,

    /// Override the Gauss nodes per panel.
    #[arg(long, global = true, value_name = "N")]
    quad_nodes: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the convexity/shell conditions and perturbation decay.
    Validate,
    /// Compute the mass table over the configured scales.
    Mass,
    /// Run the configured convergence study (Brown-York, ADM flux or
    /// Hawking divergence, per the config's experiment kind).
    Converge,
    /// Measure the decay orders of the curvature-comparison estimates.
    Lemmas,
    /// Dump the embedded generating curves (phi, u, v, H0) as CSV.
    EmbedDump,
}

fn load_config(cli: &Cli) -> revmass::Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_path(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(dir) = &cli.out {
        cfg.output.dir = Some(dir.clone());
    }
    if let Some(panels) = cli.quad_panels {
        cfg.quadrature.panels = panels;
    }
    if let Some(nodes) = cli.quad_nodes {
        cfg.quadrature.nodes_per_panel = nodes;
    }
    cfg.quadrature.validate()?;
    Ok(cfg)
}

fn requested_kind(command: &Command, cfg: &ExperimentConfig) -> revmass::Result<ExperimentKind> {
    Ok(match command {
        Command::Validate => ExperimentKind::Validate,
        Command::Mass => ExperimentKind::MassTable,
        Command::Lemmas => ExperimentKind::LemmaDecayChecks,
        Command::EmbedDump => cfg.experiment.kind,
        Command::Converge => match cfg.experiment.kind {
            k @ (ExperimentKind::ConvergeBy
            | ExperimentKind::ConvergeAdm
            | ExperimentKind::HawkingDivergence) => k,
            _ => ExperimentKind::ConvergeBy,
        },
    })
}

fn run(cli: &Cli) -> revmass::Result<bool> {
    let mut cfg = load_config(cli)?;
    cfg.experiment.kind = requested_kind(&cli.command, &cfg)?;
    if matches!(cli.command, Command::EmbedDump) {
        cfg.output.embed_dump = true;
        if cfg.output.dir.is_none() {
            cfg.output.dir = Some(PathBuf::from("out"));
        }
    }
    cfg.validate()?;
    let study = run_experiment(&cfg)?;

    println!(
        "experiment {} on {} in {} metric",
        study.experiment, study.profile, study.metric
    );
    if let Some(c) = &study.constants {
        println!(
            "  conditions: C1 = {:.6}, C2 = {:.6}, C3 = {:.6}, C4 = {:.6}",
            c.c1, c.c2, c.c3, c.c4
        );
    }
    for r in &study.reports {
        println!(
            "  a = {:>10.3}: m_by = {:.12}, m_hawking = {:.12}, m_adm = {:.12}",
            r.a, r.m_by, r.m_hawking, r.m_adm_flux
        );
    }
    for f in &study.fits {
        println!(
            "  fit {}: order = {:.4}, constant = {:.4e}, r^2 = {:.6}",
            f.name, f.fit.fitted_order, f.fit.fitted_constant, f.fit.r_squared
        );
    }
    if let Some(lemmas) = &study.lemmas {
        for check in &lemmas.checks {
            println!(
                "  [{}] {}: {}",
                if check.passed { "pass" } else { "FAIL" },
                check.name,
                check.detail
            );
        }
        if let Some(a0) = lemmas.positive_gauss_from {
            println!("  induced Gauss curvature positive from a = {a0}");
        }
    }
    for v in &study.verdicts {
        println!(
            "  [{}] {}: {}",
            if v.passed { "pass" } else { "FAIL" },
            v.name,
            v.detail
        );
    }
    if let Some(dir) = &cfg.output.dir {
        println!("  outputs written to {}", dir.display());
    }
    Ok(study.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = std::error::Error::source(&err);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(1)
        }
    }
}
