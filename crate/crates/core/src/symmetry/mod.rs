//! Sampling verifiers for the symmetry conditions of a generative triple
//! (initial invariance, transition equivariance, emission covariance,
//! sliced-map covariance, global invariance) and the commutant solver for
//! invariant states.
//!
//! Every check is a pure function of its inputs and seed. Sample `i`
//! draws `(g, X, Y, Z)` from its own stream, so different checks see
//! matched samples.

mod action;
mod checks;
mod commutant;
mod report;

pub use action::{CheckParams, GroupSamples, Sample, SymmetryAction};
pub use checks::{
    check_emission_covariance, check_global_invariance, check_initial_invariance, check_sliced_covariance,
    check_transition_equivariance, emission_deviation, global_deviation, initial_invariance_deviation,
    sliced_deviation, transition_deviation,
};
pub use commutant::{
    commutant_basis, densities_from_basis, invariant_states, project_onto, projector_distance, twirled_commutant_basis,
    twirled_invariant_states,
};
pub use report::{CheckRecord, CovarianceReport};

/// Default sample count for single-site checks.
pub const DEFAULT_SAMPLES: usize = 200;
/// Default sample count for global checks.
pub const DEFAULT_GLOBAL_SAMPLES: usize = 50;
