use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hqmm_core::aklt::AkltVariant;
use hqmm_core::symmetry::{DEFAULT_GLOBAL_SAMPLES, DEFAULT_SAMPLES};
use hqmm_core::CausalStructure;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Verification surfaces, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Cpu,
    Cocycle,
    Initial,
    Transition,
    Emission,
    Sliced,
    Global,
    Kolmogorov,
    Intertwining,
    Oracle,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Cpu,
        CheckKind::Cocycle,
        CheckKind::Initial,
        CheckKind::Transition,
        CheckKind::Emission,
        CheckKind::Sliced,
        CheckKind::Global,
        CheckKind::Kolmogorov,
        CheckKind::Intertwining,
        CheckKind::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Cpu => "cpu",
            CheckKind::Cocycle => "cocycle",
            CheckKind::Initial => "initial",
            CheckKind::Transition => "transition",
            CheckKind::Emission => "emission",
            CheckKind::Sliced => "sliced",
            CheckKind::Global => "global",
            CheckKind::Kolmogorov => "kolmogorov",
            CheckKind::Intertwining => "intertwining",
            CheckKind::Oracle => "oracle",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            CheckKind::Global => 1e-9,
            _ => 1e-10,
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown check '{s}'")))
    }
}

/// Built-in instance or a model config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum ModelSource {
    Aklt { variant: AkltVariant },
    File { path: PathBuf },
}

/// Everything a verification run depends on. Identical configs produce
/// identical reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub model: ModelSource,
    /// Overrides the structure of a model file; required for nothing else.
    pub structure: Option<CausalStructure>,
    pub checks: Vec<CheckKind>,
    pub seed: u64,
    pub samples: usize,
    pub global_samples: usize,
    pub n_max: usize,
    #[serde(default)]
    pub tolerances: BTreeMap<CheckKind, f64>,
}

impl RunConfig {
    /// Defaults for the built-in model.
    pub fn aklt(variant: AkltVariant, structure: CausalStructure) -> Self {
        Self {
            model: ModelSource::Aklt { variant },
            structure: Some(structure),
            checks: CheckKind::ALL.to_vec(),
            seed: 42,
            samples: DEFAULT_SAMPLES,
            global_samples: DEFAULT_GLOBAL_SAMPLES,
            n_max: 6,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn tolerance(&self, check: CheckKind) -> f64 {
        self.tolerances
            .get(&check)
            .copied()
            .unwrap_or(check.default_tolerance())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (check, tol) in &self.tolerances {
            if !(tol.is_finite() && *tol >= 0.0) {
                return Err(CliError::Usage(format!(
                    "tolerance for {check} must be a nonnegative number"
                )));
            }
        }
        if self.samples == 0 && self.checks.iter().any(|c| *c != CheckKind::Cpu) {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("run config: {e}")))
    }
}
