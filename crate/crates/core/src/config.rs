//! JSON model configs and word files.
//!
//! A model config names the dimensions, the initial state, both maps and
//! the causal structure:
//!
//! ```json
//! { "hidden_dim": 2, "obs_dim": 3, "phi0": "maximally_mixed",
//!   "E_H": { "kind": "normalized_partial_trace" },
//!   "E_HO": { "kind": "aklt_emission", "variant": "normalized-cartesian" },
//!   "structure": "causal" }
//! ```
//!
//! A word file is a JSON list of `{"X": operator | "I", "Y": operator | "I"}`.

use serde::{Deserialize, Serialize};

use crate::aklt::{action_for, build_tensors_searched, emission_map_with_order, AkltVariant, EmissionOrder};
use crate::error::{Error, Result};
use crate::grouprep::{LinearRep, ProjectiveRep, SpinBasis};
use crate::hqmm::{normalized_partial_trace, CausalStructure, GenerativeTriple, ObservableWord};
use crate::opalg::{BipartiteMap, ComplexOperator, KrausOperator};
use crate::symmetry::SymmetryAction;

/// An operator given explicitly or by name (`"I"`, `"maximally_mixed"`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Named(String),
    Explicit(ComplexOperator),
}

impl OperatorSpec {
    pub fn resolve(&self, dim: usize, field: &str) -> Result<ComplexOperator> {
        let op = match self {
            OperatorSpec::Named(name) => match name.as_str() {
                "I" | "identity" => ComplexOperator::identity(dim),
                "maximally_mixed" => ComplexOperator::identity(dim).scale_real(1.0 / dim as f64),
                other => {
                    return Err(Error::Config {
                        path: field.to_string(),
                        message: format!("unknown operator name '{other}'"),
                    })
                }
            },
            OperatorSpec::Explicit(op) => op.clone(),
        };
        if op.dim() != dim {
            return Err(Error::Config {
                path: field.to_string(),
                message: format!("expected dimension {dim}, found {}", op.dim()),
            });
        }
        Ok(op)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TransitionSpec {
    NormalizedPartialTrace,
    Kraus { kraus: Vec<KrausOperator> },
}

fn default_order() -> EmissionOrder {
    EmissionOrder::CpConsistent
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EmissionSpec {
    AkltEmission {
        variant: AkltVariant,
        #[serde(default = "default_order")]
        order: EmissionOrder,
    },
    Kraus {
        kraus: Vec<KrausOperator>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HiddenRepSpec {
    SpinHalf,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObservableRepSpec {
    SpinOneCartesian,
    SpinOneSpherical,
    Trivial,
}

/// Representations acting on the hidden and observable factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub hidden: HiddenRepSpec,
    pub observable: ObservableRepSpec,
}

impl ActionSpec {
    pub fn build(&self, hidden_dim: usize, obs_dim: usize) -> Result<SymmetryAction> {
        let pi = match self.hidden {
            HiddenRepSpec::SpinHalf => ProjectiveRep::spin_half(),
            HiddenRepSpec::Trivial => ProjectiveRep::trivial(hidden_dim),
        };
        let rho = match self.observable {
            ObservableRepSpec::SpinOneCartesian => LinearRep::spin_one(SpinBasis::Cartesian),
            ObservableRepSpec::SpinOneSpherical => LinearRep::spin_one(SpinBasis::Spherical),
            ObservableRepSpec::Trivial => LinearRep::trivial(obs_dim),
        };
        if pi.dim() != hidden_dim {
            return Err(Error::Config {
                path: "action.hidden".into(),
                message: format!("representation has dimension {}, model has {hidden_dim}", pi.dim()),
            });
        }
        if rho.dim() != obs_dim {
            return Err(Error::Config {
                path: "action.observable".into(),
                message: format!("representation has dimension {}, model has {obs_dim}", rho.dim()),
            });
        }
        Ok(SymmetryAction::new(pi, rho))
    }
}

/// Serialized form of a generative triple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub hidden_dim: usize,
    pub obs_dim: usize,
    pub phi0: OperatorSpec,
    #[serde(rename = "E_H")]
    pub e_h: TransitionSpec,
    #[serde(rename = "E_HO")]
    pub e_ho: EmissionSpec,
    pub structure: CausalStructure,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
}

/// A triple built from a config, with its structure and action if known.
#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub triple: GenerativeTriple,
    pub structure: CausalStructure,
    pub action: Option<SymmetryAction>,
}

fn json_error(source: &str, e: serde_json::Error) -> Error {
    Error::Config {
        path: format!("{source}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    }
}

fn kraus_map(kraus: &[KrausOperator], d1: usize, d2: usize, field: &str) -> Result<BipartiteMap> {
    for (i, k) in kraus.iter().enumerate() {
        if k.rows() != d1 || k.cols() != d1 * d2 {
            return Err(Error::Config {
                path: format!("{field}.kraus[{i}]"),
                message: format!("expected shape {d1}x{}, found {}x{}", d1 * d2, k.rows(), k.cols()),
            });
        }
    }
    BipartiteMap::from_kraus(d1, d2, kraus).map_err(|e| Error::Config {
        path: format!("{field}.kraus"),
        message: e.to_string(),
    })
}

impl ModelConfig {
    /// Parses a config; `source` names the input in error locations.
    pub fn from_json_str(text: &str, source: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error(source, e))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn build(&self) -> Result<LoadedModel> {
        let (d, m) = (self.hidden_dim, self.obs_dim);
        if d == 0 || m == 0 {
            return Err(Error::Config {
                path: "hidden_dim/obs_dim".into(),
                message: "dimensions must be positive".into(),
            });
        }
        let phi0 = self.phi0.resolve(d, "phi0")?;
        let e_h = match &self.e_h {
            TransitionSpec::NormalizedPartialTrace => normalized_partial_trace(d),
            TransitionSpec::Kraus { kraus } => kraus_map(kraus, d, d, "E_H")?,
        };
        let mut inferred_action = None;
        let e_ho = match &self.e_ho {
            EmissionSpec::AkltEmission { variant, order } => {
                if d != 2 || m != 3 {
                    return Err(Error::Config {
                        path: "E_HO".into(),
                        message: format!("aklt_emission needs hidden_dim 2 and obs_dim 3, found {d} and {m}"),
                    });
                }
                let action = action_for(variant.basis());
                let (tensors, _) = build_tensors_searched(*variant, &action);
                inferred_action = Some(action);
                emission_map_with_order(&tensors, *order)
            }
            EmissionSpec::Kraus { kraus } => kraus_map(kraus, d, m, "E_HO")?,
        };
        let triple = GenerativeTriple::new(phi0, e_h, e_ho).map_err(|e| match e {
            Error::DimensionMismatch { axis, expected, found } => Error::Config {
                path: axis,
                message: format!("expected dimension {expected}, found {found}"),
            },
            other => other,
        })?;
        let action = match &self.action {
            Some(spec) => Some(spec.build(d, m)?),
            None => inferred_action,
        };
        Ok(LoadedModel {
            triple,
            structure: self.structure,
            action,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteSpec {
    #[serde(rename = "X")]
    pub x: OperatorSpec,
    #[serde(rename = "Y")]
    pub y: OperatorSpec,
}

/// Parses a word file for the given dimensions.
pub fn parse_word_json(text: &str, source: &str, hidden_dim: usize, obs_dim: usize) -> Result<ObservableWord> {
    let sites: Vec<SiteSpec> = serde_json::from_str(text).map_err(|e| json_error(source, e))?;
    sites
        .iter()
        .enumerate()
        .map(|(k, s)| {
            Ok((
                s.x.resolve(hidden_dim, &format!("[{k}].X"))?,
                s.y.resolve(obs_dim, &format!("[{k}].Y"))?,
            ))
        })
        .collect()
}
