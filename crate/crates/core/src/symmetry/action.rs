use crate::error::{Error, Result};
use crate::grouprep::{LinearRep, PhaseFn, ProjectiveRep, RotationElement};
use crate::hqmm::GenerativeTriple;
use crate::opalg::{random_operator, ComplexOperator};
use crate::sampling::{sample_rng, SampleRng};

/// `α_g(X) = π(g) X π(g)†` on the hidden side and `β_g(Y) = ρ(g) Y ρ(g)†`
/// on the observable side.
#[derive(Clone, Debug)]
pub struct SymmetryAction {
    pi: ProjectiveRep,
    rho: LinearRep,
}

impl SymmetryAction {
    pub fn new(pi: ProjectiveRep, rho: LinearRep) -> Self {
        Self { pi, rho }
    }

    pub fn pi(&self) -> &ProjectiveRep {
        &self.pi
    }

    pub fn rho(&self) -> &LinearRep {
        &self.rho
    }

    pub fn hidden_dim(&self) -> usize {
        self.pi.dim()
    }

    pub fn obs_dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn alpha(&self, g: &RotationElement, x: &ComplexOperator) -> ComplexOperator {
        self.pi.adjoint_action(g, x)
    }

    pub fn beta(&self, g: &RotationElement, y: &ComplexOperator) -> ComplexOperator {
        self.rho.adjoint_action(g, y)
    }

    /// Rephases the hidden representation by `λ(g)`.
    pub fn with_hidden_phase(&self, lambda: PhaseFn) -> Self {
        Self::new(self.pi.with_phase(lambda), self.rho.clone())
    }

    pub fn validate(&self, triple: &GenerativeTriple) -> Result<()> {
        if self.hidden_dim() != triple.hidden_dim() {
            return Err(Error::mismatch("action.pi", triple.hidden_dim(), self.hidden_dim()));
        }
        if self.obs_dim() != triple.obs_dim() {
            return Err(Error::mismatch("action.rho", triple.obs_dim(), self.obs_dim()));
        }
        Ok(())
    }

    /// `‖α_g(α_h(X)) − α_{gh}(X)‖`; the multiplier conjugates away.
    pub fn adjoint_composition_deviation(&self, g: &RotationElement, h: &RotationElement, x: &ComplexOperator) -> f64 {
        let lhs = self.alpha(g, &self.alpha(h, x));
        let rhs = self.alpha(&g.compose(h), x);
        (&lhs - &rhs).op_norm()
    }
}

/// Where the group elements of a check come from.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupSamples {
    Haar,
    /// Sample `i` uses element `i mod len`.
    Fixed(Vec<RotationElement>),
}

/// Sample count, seed and group source shared by all sampling checks.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckParams {
    pub samples: usize,
    pub seed: u64,
    pub group: GroupSamples,
}

/// One matched draw `(g, X, Y, Z)`: `X`, `Z` on the hidden space, `Y` on
/// the observable space, all of unit operator norm.
#[derive(Clone, Debug)]
pub struct Sample {
    pub g: RotationElement,
    pub x: ComplexOperator,
    pub y: ComplexOperator,
    pub z: ComplexOperator,
}

impl CheckParams {
    pub fn haar(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            group: GroupSamples::Haar,
        }
    }

    pub fn fixed(samples: usize, seed: u64, elements: Vec<RotationElement>) -> Self {
        Self {
            samples,
            seed,
            group: GroupSamples::Fixed(elements),
        }
    }

    pub(crate) fn element(&self, rng: &mut SampleRng, index: usize) -> RotationElement {
        let drawn = RotationElement::random(rng);
        match &self.group {
            GroupSamples::Haar => drawn,
            GroupSamples::Fixed(list) if list.is_empty() => RotationElement::identity(),
            GroupSamples::Fixed(list) => list[index % list.len()],
        }
    }

    /// Draw `index`, identical for every check using the same parameters.
    pub fn sample(&self, index: usize, hidden_dim: usize, obs_dim: usize) -> Sample {
        let mut rng = sample_rng(self.seed, index as u64);
        let g = self.element(&mut rng, index);
        let x = random_operator(&mut rng, hidden_dim);
        let y = random_operator(&mut rng, obs_dim);
        let z = random_operator(&mut rng, hidden_dim);
        Sample { g, x, y, z }
    }
}
