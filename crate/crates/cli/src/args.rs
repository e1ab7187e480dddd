use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hqmm_core::aklt::AkltVariant;
use hqmm_core::grouprep::{z2_x_z2, RotationElement};
use hqmm_core::CausalStructure;

use crate::config::{CheckKind, ModelSource, RunConfig};
use crate::render::Format;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "hqmm", version, about = "Verify covariant hidden quantum Markov models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Run the verification suite on a model.
    Verify(VerifyArgs),
    /// Evaluate the finite-volume state on a word.
    Eval(EvalArgs),
    /// Print cocycle and pairing tables for a list of rotations.
    Cocycle(CocycleArgs),
    /// Re-render a stored JSON report.
    Report(ReportArgs),
}

fn parse_variant(s: &str) -> Result<AkltVariant, String> {
    s.parse().map_err(|e: hqmm_core::Error| e.to_string())
}

fn parse_structure(s: &str) -> Result<CausalStructure, String> {
    s.parse().map_err(|e: hqmm_core::Error| e.to_string())
}

fn parse_rotation(s: &str) -> Result<RotationElement, String> {
    s.parse().map_err(|e: hqmm_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Built-in model name (only `aklt`).
    pub target: Option<String>,
    /// Model config file instead of the built-in model.
    #[arg(long, conflicts_with = "target")]
    pub model: Option<PathBuf>,
    #[arg(long, value_parser = parse_variant, default_value = "normalized-cartesian")]
    pub variant: AkltVariant,
    #[arg(long, value_parser = parse_structure)]
    pub structure: Option<CausalStructure>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Samples for single-site checks.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Samples per word length for the global check.
    #[arg(long, default_value_t = 50)]
    pub global_samples: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    /// Comma-separated subset of checks, or `none`.
    #[arg(long, value_delimiter = ',')]
    pub checks: Option<Vec<String>>,
    #[arg(long)]
    pub tol_cpu: Option<f64>,
    #[arg(long)]
    pub tol_cocycle: Option<f64>,
    #[arg(long)]
    pub tol_initial: Option<f64>,
    #[arg(long)]
    pub tol_transition: Option<f64>,
    #[arg(long)]
    pub tol_emission: Option<f64>,
    #[arg(long)]
    pub tol_sliced: Option<f64>,
    #[arg(long)]
    pub tol_global: Option<f64>,
    #[arg(long)]
    pub tol_kolmogorov: Option<f64>,
    #[arg(long)]
    pub tol_intertwining: Option<f64>,
    #[arg(long)]
    pub tol_oracle: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Read the run configuration from a JSON file; other run flags are ignored.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Print the resolved run configuration and exit.
    #[arg(long)]
    pub print_config: bool,
}

impl VerifyArgs {
    pub fn into_run_config(self) -> Result<(RunConfig, Format, Option<PathBuf>), CliError> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            let cfg = RunConfig::from_json(&text)?;
            cfg.validate()?;
            return Ok((cfg, self.format, self.output));
        }
        let model = match (&self.target, &self.model) {
            (_, Some(path)) => ModelSource::File { path: path.clone() },
            (Some(t), None) if t == "aklt" => ModelSource::Aklt { variant: self.variant },
            (Some(t), None) => return Err(CliError::Usage(format!("unknown model '{t}' (expected aklt)"))),
            (None, None) => ModelSource::Aklt { variant: self.variant },
        };
        let checks = match &self.checks {
            None => CheckKind::ALL.to_vec(),
            Some(list) if list.len() == 1 && (list[0] == "none" || list[0].is_empty()) => Vec::new(),
            Some(list) => list.iter().map(|s| s.trim().parse()).collect::<Result<_, _>>()?,
        };
        let overrides = [
            (CheckKind::Cpu, self.tol_cpu),
            (CheckKind::Cocycle, self.tol_cocycle),
            (CheckKind::Initial, self.tol_initial),
            (CheckKind::Transition, self.tol_transition),
            (CheckKind::Emission, self.tol_emission),
            (CheckKind::Sliced, self.tol_sliced),
            (CheckKind::Global, self.tol_global),
            (CheckKind::Kolmogorov, self.tol_kolmogorov),
            (CheckKind::Intertwining, self.tol_intertwining),
            (CheckKind::Oracle, self.tol_oracle),
        ];
        let structure = match (&model, self.structure) {
            (ModelSource::Aklt { .. }, None) => Some(CausalStructure::Conventional),
            (_, s) => s,
        };
        let cfg = RunConfig {
            model,
            structure,
            checks,
            seed: self.seed,
            samples: self.samples,
            global_samples: self.global_samples,
            n_max: self.n_max,
            tolerances: overrides.into_iter().filter_map(|(k, v)| v.map(|t| (k, t))).collect(),
        };
        cfg.validate()?;
        Ok((cfg, self.format, self.output))
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// `aklt` or a model config path.
    #[arg(long, default_value = "aklt")]
    pub model: String,
    #[arg(long, value_parser = parse_variant, default_value = "normalized-cartesian")]
    pub variant: AkltVariant,
    #[arg(long, value_parser = parse_structure)]
    pub structure: Option<CausalStructure>,
    /// `allidentity:N`, `proj:<labels>` or a word file path.
    #[arg(long)]
    pub word: String,
    /// Also evaluate with the dense contraction oracle.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

impl EvalArgs {
    pub fn model_source(&self) -> Result<ModelSource, CliError> {
        Ok(if self.model == "aklt" {
            ModelSource::Aklt { variant: self.variant }
        } else {
            ModelSource::File {
                path: PathBuf::from(&self.model),
            }
        })
    }
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    /// Named subgroup (`z2xz2`); ignored when elements are given.
    #[arg(long, default_value = "z2xz2")]
    pub subgroup: String,
    /// Rotation `ax,ay,az:theta`; repeat for each element.
    #[arg(long = "element", value_parser = parse_rotation)]
    pub elements: Vec<RotationElement>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

impl CocycleArgs {
    pub fn elements(&self) -> Result<Vec<RotationElement>, CliError> {
        if !self.elements.is_empty() {
            return Ok(self.elements.clone());
        }
        match self.subgroup.as_str() {
            "z2xz2" => Ok(z2_x_z2()),
            "trivial" => Ok(vec![RotationElement::identity()]),
            "z2" => Ok(vec![
                RotationElement::identity(),
                RotationElement::rz(std::f64::consts::PI),
            ]),
            other => Err(CliError::Usage(format!(
                "unknown subgroup '{other}' (expected z2xz2, z2 or trivial)"
            ))),
        }
    }
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
