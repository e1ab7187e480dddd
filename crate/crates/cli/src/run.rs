use std::fs;

use hqmm_core::aklt::{build_model, dense_contraction, verify_intertwining, AkltModel};
use hqmm_core::config::ModelConfig;
use hqmm_core::grouprep::{
    detect_nontrivial_class_with, haar_sample, tensor_rep_cocycle_check, z2_x_z2, ClassDetection,
};
use hqmm_core::hqmm::{finite_volume_state, kolmogorov_check, ObservableWord};
use hqmm_core::sampling::sample_rng;
use hqmm_core::symmetry::{
    check_emission_covariance, check_global_invariance, check_initial_invariance, check_sliced_covariance,
    check_transition_equivariance, CheckParams, CheckRecord, SymmetryAction,
};
use hqmm_core::{CausalStructure, GenerativeTriple};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{CheckKind, ModelSource, RunConfig};
use crate::CliError;

/// Longest random word used by the oracle comparison.
const ORACLE_WORD_LEN: usize = 5;
/// Oracle words are bounded separately; the contraction is exponential.
const ORACLE_WORDS: usize = 50;

/// Machine-readable outcome of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub model: Value,
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
    /// Per-check detail such as per-length deviations.
    pub details: Value,
    pub pass: bool,
}

/// A model resolved from a run config.
pub struct ResolvedModel {
    pub triple: GenerativeTriple,
    pub structure: CausalStructure,
    pub action: Option<SymmetryAction>,
    pub aklt: Option<AkltModel>,
    pub metadata: Value,
}

pub fn resolve_model(source: &ModelSource, structure: Option<CausalStructure>) -> Result<ResolvedModel, CliError> {
    match source {
        ModelSource::Aklt { variant } => {
            let model = build_model(*variant, structure.unwrap_or(CausalStructure::Conventional))?;
            Ok(ResolvedModel {
                triple: model.triple().clone(),
                structure: model.structure(),
                action: Some(model.action().clone()),
                metadata: serde_json::to_value(model.metadata()).expect("metadata serializes"),
                aklt: Some(model),
            })
        }
        ModelSource::File { path } => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            let cfg = ModelConfig::from_json_str(&text, &path.display().to_string())?;
            let loaded = cfg.build()?;
            let structure = structure.unwrap_or(loaded.structure);
            Ok(ResolvedModel {
                metadata: json!({
                    "model": "config",
                    "path": path.display().to_string(),
                    "hidden_dim": cfg.hidden_dim,
                    "obs_dim": cfg.obs_dim,
                    "structure": structure,
                    "has_action": loaded.action.is_some(),
                }),
                triple: loaded.triple,
                structure,
                action: loaded.action,
                aklt: None,
            })
        }
    }
}

fn need_action(model: &ResolvedModel, check: CheckKind) -> Result<&SymmetryAction, CliError> {
    model
        .action
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("check '{check}' needs a model with an \"action\" entry")))
}

fn cocycle_deviation(action: &SymmetryAction, samples: usize, seed: u64) -> f64 {
    let pi = action.pi();
    let cocycle = pi.cocycle();
    let elements = haar_sample(seed, 3 * samples);
    let mut worst = 0.0f64;
    for t in elements.chunks(3) {
        worst = worst
            .max(pi.composition_residual(&t[0], &t[1]))
            .max(cocycle.identity_defect(&t[0], &t[1], &t[2]))
            .max(action.rho().composition_residual(&t[0], &t[1]));
    }
    worst.max(tensor_rep_cocycle_check(pi, action.rho(), samples, seed))
}

fn oracle_deviation(model: &ResolvedModel, seed: u64) -> Result<f64, CliError> {
    let (d, m) = (model.triple.hidden_dim(), model.triple.obs_dim());
    let mut worst = 0.0f64;
    for i in 0..ORACLE_WORDS {
        let mut rng = sample_rng(seed, i as u64);
        let len = 1 + i % ORACLE_WORD_LEN;
        let word = ObservableWord::random(&mut rng, len, d, m);
        let fold = finite_volume_state(&model.triple, model.structure, &word)?;
        let dense = dense_contraction(&model.triple, model.structure, &word)?;
        worst = worst.max((fold - dense).norm());
    }
    Ok(worst)
}

fn detection(action: &SymmetryAction) -> Option<ClassDetection> {
    detect_nontrivial_class_with(action.pi().cocycle(), &z2_x_z2()).ok()
}

/// Runs the requested checks in request order; repeats are dropped.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let model = resolve_model(&config.model, config.structure)?;
    let mut records = Vec::new();
    let mut details = serde_json::Map::new();
    let seed = config.seed;
    let params = CheckParams::haar(config.samples, seed);
    let mut checks = Vec::new();
    for &c in &config.checks {
        if !checks.contains(&c) {
            checks.push(c);
        }
    }
    for check in checks {
        let tol = config.tolerance(check);
        let (samples, deviation) = match check {
            CheckKind::Cpu => {
                let (h, o) = model.triple.certify(tol)?;
                details.insert("cpu".into(), json!({ "transition": h, "emission": o }));
                (0, h.defect().max(o.defect()))
            }
            CheckKind::Cocycle => {
                let action = need_action(&model, check)?;
                if let Some(det) = detection(action) {
                    details.insert("cohomology".into(), serde_json::to_value(det).expect("serializes"));
                }
                (config.samples, cocycle_deviation(action, config.samples, seed))
            }
            CheckKind::Initial => {
                let action = need_action(&model, check)?;
                (
                    config.samples,
                    check_initial_invariance(model.triple.phi0(), action, &params)?,
                )
            }
            CheckKind::Transition => {
                let action = need_action(&model, check)?;
                (
                    config.samples,
                    check_transition_equivariance(model.triple.transition(), action, &params)?,
                )
            }
            CheckKind::Emission => {
                let action = need_action(&model, check)?;
                (
                    config.samples,
                    check_emission_covariance(model.triple.emission(), action, &params)?,
                )
            }
            CheckKind::Sliced => {
                let action = need_action(&model, check)?;
                (
                    config.samples,
                    check_sliced_covariance(&model.triple, model.structure, action, &params)?,
                )
            }
            CheckKind::Global => {
                let action = need_action(&model, check)?;
                let gp = CheckParams::haar(config.global_samples, seed);
                let per_length = check_global_invariance(&model.triple, model.structure, action, config.n_max, &gp)?;
                let worst = per_length.iter().copied().fold(0.0, f64::max);
                details.insert("global_per_length".into(), json!(per_length));
                (config.global_samples, worst)
            }
            CheckKind::Kolmogorov => {
                let depth = config.n_max.max(1);
                (
                    config.samples,
                    kolmogorov_check(&model.triple, model.structure, depth, config.samples, seed)?,
                )
            }
            CheckKind::Intertwining => {
                let aklt = model.aklt.as_ref().ok_or_else(|| {
                    CliError::Usage("check 'intertwining' is only defined for the built-in model".into())
                })?;
                (
                    config.samples,
                    verify_intertwining(aklt.tensors(), aklt.action(), &params),
                )
            }
            CheckKind::Oracle => (ORACLE_WORDS, oracle_deviation(&model, seed)?),
        };
        records.push(CheckRecord::new(check.as_str(), samples, seed, deviation, tol));
    }
    let pass = records.iter().all(|r| r.pass);
    Ok(Report {
        model: model.metadata,
        config: config.clone(),
        records,
        details: Value::Object(details),
        pass,
    })
}
