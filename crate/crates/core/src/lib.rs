//! Hidden quantum Markov models on operator algebras, with projective
//! SO(3) symmetry actions and the spin-1 valence-bond instance.

pub mod aklt;
pub mod config;
pub mod error;
pub mod grouprep;
pub mod hqmm;
pub mod opalg;
pub mod sampling;
pub mod symmetry;

pub use error::{Error, Result};
pub use grouprep::{LinearRep, ProjectiveRep, RotationElement, SpinBasis, TwoCocycle};
pub use hqmm::{CausalStructure, GenerativeTriple, ObservableWord};
pub use num_complex::Complex64;
pub use opalg::{BipartiteMap, ComplexOperator, KrausOperator};
