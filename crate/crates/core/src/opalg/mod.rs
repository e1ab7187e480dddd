//! Dense complex operator algebra: matrices, tensor products, Hermitian
//! spectra and complete-positivity certificates for maps between matrix
//! algebras.
//!
//! All dimensions are finite. Values are immutable once built and every
//! operation is a pure function.

mod map;
mod operator;
mod random;
mod spectrum;

pub use map::{certify_cpu, BipartiteMap, ChoiMatrix, CpuCertificate, KrausOperator};
pub use operator::{tensor, tensor_all, ComplexOperator};
pub use random::{
    random_density, random_operator, random_psd, random_unit_vector, random_unital_channel, random_unitary,
};
pub use spectrum::{
    hermitian_eigen, hermitian_eigenvalues, hermitian_function, min_eigenvalue, trace_norm, HermitianEigen,
    HERMITIAN_TOLERANCE,
};

/// Pass/fail tolerance for numerical checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Tolerance for algebraic identities evaluated on exact inputs.
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-12;

pub(crate) use operator::{ONE, ZERO};
