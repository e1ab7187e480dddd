//! SO(3) group elements, spin representations, the quaternion section into
//! SU(2) and its 2-cocycle, and gauge-invariant detection of the
//! nontrivial cohomology class.

mod cocycle;
mod rep;
mod rotation;

pub use cocycle::{
    cocycle_eval, commutator_pairing, detect_nontrivial_class, detect_nontrivial_class_with, gauge_transform,
    pairing_table, validate_abelian_subgroup, z2_x_z2, ClassDetection, PhaseFn, TwoCocycle, GROUP_TOLERANCE,
};
pub use rep::{
    pauli, spin_one_matrix, spin_rep, su2_matrix, tensor_rep_cocycle_check, LinearRep, ProjectiveRep, Spin, SpinBasis,
};
pub use rotation::{haar_sample, RotationElement};
