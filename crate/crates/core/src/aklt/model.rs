use serde::{Deserialize, Serialize};

use super::tensors::{
    build_tensors, build_tensors_with_signs, emission_map_with_order, intertwining_residual, physical_rep,
    spherical_basis_change, AkltTensors, AkltVariant, EmissionOrder, IntertwiningConvention,
};
use crate::error::Result;
use crate::grouprep::{ProjectiveRep, SpinBasis};
use crate::hqmm::{
    finite_volume_state, normalized_partial_trace, unnormalized_partial_trace, CausalStructure, GenerativeTriple,
    ObservableWord,
};
use crate::opalg::{ComplexOperator, DEFAULT_TOLERANCE};
use crate::symmetry::{
    check_emission_covariance, check_initial_invariance, check_transition_equivariance, CheckParams, SymmetryAction,
};

/// Samples and seed used for the build-time convention search and
/// condition screening.
const BUILD_SAMPLES: usize = 64;
const BUILD_SEED: u64 = 0x00A1_C7E5;

/// Residual threshold for accepting an intertwining convention.
pub const CONVENTION_TOLERANCE: f64 = 1e-10;

/// Hidden transition used by a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransitionKind {
    /// `Z₁ ⊗ Z₂ ↦ Z₁ Tr(Z₂)/2`.
    NormalizedPartialTrace,
    /// `Z₁ ⊗ Z₂ ↦ Z₁ Tr(Z₂)`, not unital.
    UnnormalizedPartialTrace,
}

/// Construction options beyond variant and structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelOptions {
    pub emission_order: EmissionOrder,
    pub transition: TransitionKind,
}

impl Default for ModelOptions {
    fn default() -> Self {
        Self {
            emission_order: EmissionOrder::CpConsistent,
            transition: TransitionKind::NormalizedPartialTrace,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConventionResidual {
    pub convention: IntertwiningConvention,
    pub residual: f64,
}

/// Outcome of the intertwining-convention search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConventionSelection {
    /// First convention in search order with residual below tolerance.
    pub selected: Option<IntertwiningConvention>,
    pub residuals: Vec<ConventionResidual>,
}

impl ConventionSelection {
    /// Residual of the selected convention, or the smallest one if none
    /// was accepted.
    pub fn residual(&self) -> f64 {
        match self.selected {
            Some(c) => self
                .residuals
                .iter()
                .find(|r| r.convention == c)
                .map_or(f64::NAN, |r| r.residual),
            None => self.residuals.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min),
        }
    }
}

/// A condition that failed when the model was built.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionWarning {
    pub condition: String,
    pub max_deviation: f64,
    pub tolerance: f64,
}

/// Conventions and residuals fixed during construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelMetadata {
    pub model: String,
    pub variant: AkltVariant,
    pub structure: CausalStructure,
    pub basis: SpinBasis,
    pub labels: [String; 3],
    pub emission_order: EmissionOrder,
    pub transition: TransitionKind,
    pub hidden_section: String,
    pub convention: ConventionSelection,
    pub sign_set: [i8; 3],
    pub gram_diagonal: [f64; 3],
    pub warnings: Vec<ConditionWarning>,
}

/// An assembled instance: tensors, triple and symmetry action.
#[derive(Clone, Debug)]
pub struct AkltModel {
    tensors: AkltTensors,
    triple: GenerativeTriple,
    action: SymmetryAction,
    structure: CausalStructure,
    metadata: ModelMetadata,
}

/// Max residual per convention over the sample set, in search order.
pub fn select_convention(tensors: &AkltTensors, action: &SymmetryAction, params: &CheckParams) -> ConventionSelection {
    let residuals: Vec<ConventionResidual> = IntertwiningConvention::SEARCH_ORDER
        .iter()
        .map(|&convention| {
            let residual = (0..params.samples)
                .map(|i| {
                    let s = params.sample(i, 2, 3);
                    intertwining_residual(tensors, action.pi(), action.rho(), convention, &s.g)
                })
                .fold(0.0, f64::max);
            ConventionResidual { convention, residual }
        })
        .collect();
    let selected = residuals
        .iter()
        .find(|r| r.residual < CONVENTION_TOLERANCE)
        .map(|r| r.convention);
    ConventionSelection { selected, residuals }
}

/// Intertwining residual under the matched convention (or the best one if
/// none matches).
pub fn verify_intertwining(tensors: &AkltTensors, action: &SymmetryAction, params: &CheckParams) -> f64 {
    select_convention(tensors, action, params).residual()
}

/// Tensors for a variant, with the spherical signs chosen from `{±1}³` to
/// minimize the intertwining residual; ties keep the earliest sign set in
/// the order starting from `(+, +, +)`.
pub fn build_tensors_searched(variant: AkltVariant, action: &SymmetryAction) -> (AkltTensors, ConventionSelection) {
    let params = CheckParams::haar(BUILD_SAMPLES, BUILD_SEED);
    if variant != AkltVariant::NormalizedSpherical {
        let t = build_tensors(variant);
        let sel = select_convention(&t, action, &params);
        return (t, sel);
    }
    let mut best: Option<(AkltTensors, ConventionSelection)> = None;
    for bits in 0..8u8 {
        let signs = [0, 1, 2].map(|k| if bits & (1 << k) == 0 { 1 } else { -1 });
        let t = build_tensors_with_signs(variant, signs);
        let sel = select_convention(&t, action, &params);
        let better = match &best {
            None => true,
            Some((_, b)) => sel.residual() < b.residual() && b.residual() >= CONVENTION_TOLERANCE,
        };
        if better {
            best = Some((t, sel));
        }
    }
    best.expect("eight sign sets")
}

pub fn action_for(basis: SpinBasis) -> SymmetryAction {
    SymmetryAction::new(ProjectiveRep::spin_half(), physical_rep(basis))
}

/// Builds the default model: `φ₀ = I/2`, normalized partial-trace
/// transition, CP-order emission.
pub fn build_model(variant: AkltVariant, structure: CausalStructure) -> Result<AkltModel> {
    build_model_with(variant, structure, ModelOptions::default())
}

pub fn build_model_with(variant: AkltVariant, structure: CausalStructure, options: ModelOptions) -> Result<AkltModel> {
    let basis = variant.basis();
    let action = action_for(basis);
    let (tensors, convention) = build_tensors_searched(variant, &action);
    let phi0 = ComplexOperator::identity(2).scale_real(0.5);
    let e_ho = emission_map_with_order(&tensors, options.emission_order);
    let e_h = match options.transition {
        TransitionKind::NormalizedPartialTrace => normalized_partial_trace(2),
        TransitionKind::UnnormalizedPartialTrace => unnormalized_partial_trace(2),
    };
    let defective = options != ModelOptions::default();
    let triple = if defective {
        GenerativeTriple::new_diagnostic(phi0, e_h, e_ho)?
    } else {
        GenerativeTriple::new(phi0, e_h, e_ho)?
    };

    let params = CheckParams::haar(BUILD_SAMPLES, BUILD_SEED);
    let mut warnings = Vec::new();
    let mut screen = |condition: &str, dev: f64| {
        if dev.is_nan() || dev > DEFAULT_TOLERANCE {
            warnings.push(ConditionWarning {
                condition: condition.to_string(),
                max_deviation: dev,
                tolerance: DEFAULT_TOLERANCE,
            });
        }
    };
    screen("intertwining", convention.residual());
    screen("initial", check_initial_invariance(triple.phi0(), &action, &params)?);
    screen(
        "transition",
        check_transition_equivariance(triple.transition(), &action, &params)?,
    );
    screen(
        "emission",
        check_emission_covariance(triple.emission(), &action, &params)?,
    );
    if defective {
        let (h, o) = triple.certify(DEFAULT_TOLERANCE)?;
        screen("cpu-transition", h.defect());
        screen("cpu-emission", o.defect());
    }

    let gram = tensors.gram();
    let metadata = ModelMetadata {
        model: "aklt".to_string(),
        variant,
        structure,
        basis,
        labels: basis.labels().map(String::from),
        emission_order: options.emission_order,
        transition: options.transition,
        hidden_section: action.pi().section_tag().to_string(),
        convention,
        sign_set: tensors.signs(),
        gram_diagonal: [0, 1, 2].map(|k| gram.get(k, k).re),
        warnings,
    };
    Ok(AkltModel {
        tensors,
        triple,
        action,
        structure,
        metadata,
    })
}

/// Single-site probabilities of the physical basis states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiteDistribution {
    pub labels: [String; 3],
    pub probabilities: [f64; 3],
    /// Set when the distribution is not uniform or the model was built
    /// with failing symmetry conditions.
    pub symmetry_violation: bool,
}

impl AkltModel {
    pub fn tensors(&self) -> &AkltTensors {
        &self.tensors
    }

    pub fn triple(&self) -> &GenerativeTriple {
        &self.triple
    }

    pub fn action(&self) -> &SymmetryAction {
        &self.action
    }

    pub fn structure(&self) -> CausalStructure {
        self.structure
    }

    pub fn metadata(&self) -> &ModelMetadata {
        &self.metadata
    }

    pub fn warnings(&self) -> &[ConditionWarning] {
        &self.metadata.warnings
    }

    /// Same tensors and triple under the other causal structure.
    pub fn with_structure(&self, structure: CausalStructure) -> Self {
        let mut out = self.clone();
        out.structure = structure;
        out.metadata.structure = structure;
        out
    }

    /// Projector onto physical basis state `k`.
    pub fn basis_projector(&self, k: usize) -> ComplexOperator {
        ComplexOperator::matrix_unit(3, k, k)
    }

    /// Expresses a Cartesian-basis observable in the model's basis.
    pub fn observable_from_cartesian(&self, y: &ComplexOperator) -> ComplexOperator {
        match self.tensors.basis() {
            SpinBasis::Cartesian => y.clone(),
            SpinBasis::Spherical => {
                let c = spherical_basis_change();
                c.adjoint().matmul(y).matmul(&c)
            }
        }
    }

    pub fn state(&self, word: &ObservableWord) -> Result<num_complex::Complex64> {
        finite_volume_state(&self.triple, self.structure, word)
    }

    pub fn single_site_distribution(&self) -> Result<SiteDistribution> {
        let mut probabilities = [0.0; 3];
        for (k, p) in probabilities.iter_mut().enumerate() {
            let word = ObservableWord::observable(2, &[self.basis_projector(k)]);
            *p = self.state(&word)?.re;
        }
        let uniform = probabilities.iter().all(|p| (p - 1.0 / 3.0).abs() <= DEFAULT_TOLERANCE);
        Ok(SiteDistribution {
            labels: self.metadata.labels.clone(),
            probabilities,
            symmetry_violation: !uniform || !self.metadata.warnings.is_empty(),
        })
    }
}
