//! Symmetry-protected phase certificate: nontrivial hidden class, trivial
//! observable class and passing covariance checks, all at once.

use serde::{Deserialize, Serialize};

use super::model::{verify_intertwining, AkltModel};
use crate::error::Result;
use crate::grouprep::{detect_nontrivial_class_with, z2_x_z2, ProjectiveRep, RotationElement};
use crate::opalg::{ComplexOperator, DEFAULT_TOLERANCE};
use crate::symmetry::{
    check_emission_covariance, check_initial_invariance, check_sliced_covariance, check_transition_equivariance,
    CheckParams, CheckRecord, CovarianceReport,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SptCertificate {
    /// Pairing of the hidden cocycle on the π-rotation subgroup is not ≡ 1.
    pub hidden_nontrivial: bool,
    /// Group commutators `π(g)π(h)π(g)⁻¹π(h)⁻¹` measured on the same
    /// subgroup, as scalars.
    pub hidden_commutators: Vec<f64>,
    /// Observable representation commutes on the subgroup.
    pub observable_trivial: bool,
    pub covariance: CovarianceReport,
    pub certified: bool,
}

/// Scalar value of the group commutator; NaN if it is not a multiple of
/// the identity.
fn group_commutator(rep: &ProjectiveRep, g: &RotationElement, h: &RotationElement) -> f64 {
    let (a, b) = (rep.evaluate(g), rep.evaluate(h));
    let c = a.matmul(&b).matmul(&a.adjoint()).matmul(&b.adjoint());
    let scalar = c.trace() / c.dim() as f64;
    let residual = (&c - &ComplexOperator::identity(c.dim()).scale(scalar)).max_abs();
    if residual > DEFAULT_TOLERANCE || scalar.im.abs() > DEFAULT_TOLERANCE {
        f64::NAN
    } else {
        scalar.re
    }
}

pub fn spt_certificate(model: &AkltModel, params: &CheckParams) -> Result<SptCertificate> {
    let subgroup = z2_x_z2();
    let action = model.action();
    let triple = model.triple();
    let detection = detect_nontrivial_class_with(action.pi().cocycle(), &subgroup)?;

    let mut hidden_commutators = Vec::new();
    let mut observable_trivial = true;
    for g in &subgroup {
        for h in &subgroup {
            hidden_commutators.push(group_commutator(action.pi(), g, h));
            let c = group_commutator(action.rho().as_projective(), g, h);
            observable_trivial &= (c - 1.0).abs() <= DEFAULT_TOLERANCE;
        }
    }
    let measured_nontrivial = hidden_commutators.iter().any(|&c| (c + 1.0).abs() <= DEFAULT_TOLERANCE)
        && hidden_commutators.iter().all(|c| c.is_finite());

    let (n, seed, tol) = (params.samples, params.seed, DEFAULT_TOLERANCE);
    let mut covariance = CovarianceReport::default();
    let checks = [
        ("initial", check_initial_invariance(triple.phi0(), action, params)?),
        (
            "transition",
            check_transition_equivariance(triple.transition(), action, params)?,
        ),
        (
            "emission",
            check_emission_covariance(triple.emission(), action, params)?,
        ),
        (
            "sliced",
            check_sliced_covariance(triple, model.structure(), action, params)?,
        ),
        ("intertwining", verify_intertwining(model.tensors(), action, params)),
    ];
    for (name, dev) in checks {
        covariance.push(CheckRecord::new(name, n, seed, dev, tol));
    }

    let hidden_nontrivial = detection.nontrivial && measured_nontrivial;
    let certified = hidden_nontrivial && observable_trivial && covariance.pass();
    Ok(SptCertificate {
        hidden_nontrivial,
        hidden_commutators,
        observable_trivial,
        covariance,
        certified,
    })
}
