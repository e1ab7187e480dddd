//! The spin-1 valence-bond instance: bond tensors, emission and transition
//! maps, the intertwining verifier with its convention search, model
//! assembly with diagnostics, and a dense contraction oracle.

mod certificate;
mod model;
mod oracle;
mod tensors;

pub use certificate::{spt_certificate, SptCertificate};
pub use model::{
    action_for, build_model, build_model_with, build_tensors_searched, select_convention, verify_intertwining,
    AkltModel, ConditionWarning, ConventionResidual, ConventionSelection, ModelMetadata, ModelOptions,
    SiteDistribution, TransitionKind, CONVENTION_TOLERANCE,
};
pub use oracle::{dense_contraction, dense_contraction_oracle, ORACLE_MAX_LEN};
pub use tensors::{
    build_tensors, build_tensors_with_signs, emission_map, emission_map_with_order, intertwining_residual,
    partial_transpose_second, physical_rep, rotated_tensors, spherical_basis_change, AkltTensors, AkltVariant,
    EmissionOrder, IntertwiningConvention,
};

use crate::hqmm::{normalized_partial_trace, unnormalized_partial_trace};
use crate::opalg::BipartiteMap;

/// `Z₁ ⊗ Z₂ ↦ Z₁ Tr(Z₂)/d`.
pub fn transition_map(hidden_dim: usize) -> BipartiteMap {
    normalized_partial_trace(hidden_dim)
}

/// `Z₁ ⊗ Z₂ ↦ Z₁ Tr(Z₂)`, the non-unital form, for diagnostics.
pub fn literal_transition_map(hidden_dim: usize) -> BipartiteMap {
    unnormalized_partial_trace(hidden_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::{haar_sample, SpinBasis};
    use crate::hqmm::{CausalStructure, ObservableWord};
    use crate::opalg::{ComplexOperator, ONE};
    use crate::symmetry::CheckParams;

    #[test]
    fn conventions_selected() {
        let cart = build_model(AkltVariant::NormalizedCartesian, CausalStructure::Conventional).unwrap();
        assert_eq!(
            cart.metadata().convention.selected,
            Some(IntertwiningConvention::Inverse)
        );
        assert!(cart.warnings().is_empty(), "{:?}", cart.warnings());
        let sph = build_model(AkltVariant::NormalizedSpherical, CausalStructure::Causal).unwrap();
        assert_eq!(
            sph.metadata().convention.selected,
            Some(IntertwiningConvention::Transposed)
        );
        assert_eq!(sph.metadata().sign_set, [1, 1, 1]);
        assert!(sph.warnings().is_empty(), "{:?}", sph.warnings());
    }

    #[test]
    fn literal_model_warns() {
        let lit = build_model(AkltVariant::PaperLiteral, CausalStructure::Conventional).unwrap();
        assert_eq!(lit.metadata().convention.selected, None);
        let emission = lit.warnings().iter().find(|w| w.condition == "emission").unwrap();
        assert!(emission.max_deviation > 0.05);
        let params = CheckParams::haar(200, 42);
        assert!(verify_intertwining(lit.tensors(), lit.action(), &params) > 0.05);
    }

    #[test]
    fn identity_element_intertwines_exactly() {
        let t = build_tensors(AkltVariant::PaperLiteral);
        let a = action_for(SpinBasis::Spherical);
        let e = crate::grouprep::RotationElement::identity();
        for c in IntertwiningConvention::SEARCH_ORDER {
            assert!(intertwining_residual(&t, a.pi(), a.rho(), c, &e) < 1e-15);
        }
    }

    #[test]
    fn spherical_rep_is_rotated_cartesian() {
        let c = spherical_basis_change();
        let sph = physical_rep(SpinBasis::Spherical);
        let cart = physical_rep(SpinBasis::Cartesian);
        for g in haar_sample(21, 30) {
            let via_c = c.adjoint().matmul(&cart.evaluate(&g)).matmul(&c);
            assert!((&via_c - &sph.evaluate(&g)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn single_site_distributions() {
        for v in [AkltVariant::NormalizedCartesian, AkltVariant::NormalizedSpherical] {
            let d = build_model(v, CausalStructure::Conventional)
                .unwrap()
                .single_site_distribution()
                .unwrap();
            for p in d.probabilities {
                assert!((p - 1.0 / 3.0).abs() < 1e-12);
            }
            assert!(!d.symmetry_violation);
        }
        let d = build_model(AkltVariant::PaperLiteral, CausalStructure::Causal)
            .unwrap()
            .single_site_distribution()
            .unwrap();
        let want = [0.25, 0.5, 0.25];
        for (p, w) in d.probabilities.iter().zip(want) {
            assert!((p - w).abs() < 1e-12);
        }
        assert!(d.symmetry_violation);
    }

    #[test]
    fn oracle_refuses_long_words() {
        let m = build_model(AkltVariant::NormalizedCartesian, CausalStructure::Causal).unwrap();
        let err = dense_contraction_oracle(&m, &ObservableWord::all_identity(9, 2, 3)).unwrap_err();
        assert!(matches!(err, crate::Error::WordTooLong { len: 9, max: 8 }));
        let v = dense_contraction_oracle(&m, &ObservableWord::all_identity(4, 2, 3)).unwrap();
        assert!((v - ONE).norm() < 1e-12);
    }

    #[test]
    fn transition_maps() {
        let e = transition_map(2);
        let id = ComplexOperator::identity(2);
        assert!((&e.apply_product(&id, &id).unwrap() - &id).max_abs() < 1e-15);
        let lit = literal_transition_map(2);
        assert!((&lit.apply_product(&id, &id).unwrap() - &id.scale_real(2.0)).max_abs() < 1e-15);
    }
    #[test]
    fn spt_certificate_separates_variants() {
        let params = CheckParams::haar(40, 3);
        for v in [AkltVariant::NormalizedCartesian, AkltVariant::NormalizedSpherical] {
            for s in CausalStructure::ALL {
                let cert = spt_certificate(&build_model(v, s).unwrap(), &params).unwrap();
                assert!(cert.certified, "{v:?} {s:?}");
                assert!(cert.hidden_commutators.iter().any(|&c| (c + 1.0).abs() < 1e-12));
            }
        }
        let lit = build_model(AkltVariant::PaperLiteral, CausalStructure::Conventional).unwrap();
        let cert = spt_certificate(&lit, &params).unwrap();
        assert!(cert.hidden_nontrivial && cert.observable_trivial);
        assert!(!cert.certified);
        assert!(cert.covariance.failures().any(|r| r.condition == "emission"));
    }

    /// Emission covariance factors through the coefficients `c_kj(g)` of
    /// `π(g)† A_k π(g)` in the tensor basis: the double sum
    /// `S_jj' = Σ_kk' ⟨k|β_g(Y)|k'⟩ c_kj conj(c_k'j')` must reproduce `Y`.
    #[test]
    fn emission_double_sum_factorization() {
        for v in [AkltVariant::NormalizedCartesian, AkltVariant::NormalizedSpherical] {
            let m = build_model(v, CausalStructure::Conventional).unwrap();
            let a = m.tensors().tensors();
            let action = m.action();
            let params = CheckParams::haar(20, 11);
            for i in 0..20 {
                let sample = params.sample(i, 2, 3);
                let u = action.pi().evaluate(&sample.g);
                let c = ComplexOperator::from_fn(3, |k, j| {
                    let rotated = u.adjoint().matmul(&a[k]).matmul(&u);
                    a[j].adjoint().trace_product(&rotated) / a[j].adjoint().trace_product(&a[j])
                });
                let by = action.beta(&sample.g, &sample.y);
                let s = c.transpose().matmul(&by).matmul(&c.conj());
                assert!((&s - &sample.y).max_abs() < 1e-12, "{v:?} sample {i}");
            }
        }
    }
}
