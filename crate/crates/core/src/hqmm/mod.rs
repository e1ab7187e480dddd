//! Generative triples, the conventional and causal structures, sliced maps,
//! finite-volume states and Kolmogorov compatibility.
//!
//! Sites are ordered left to right; a word's state is evaluated by folding
//! sliced maps from the last site back to the first, so no tensor product
//! over sites is ever formed.

mod state;
mod triple;
mod word;

pub use state::{
    composite_apply, composite_map, finite_volume_state, hidden_marginal, kolmogorov_check, kolmogorov_defect,
    kolmogorov_profile, observable_marginal, sliced_apply, sliced_map,
};
pub use triple::{normalized_partial_trace, unnormalized_partial_trace, CausalStructure, GenerativeTriple};
pub use word::ObservableWord;
