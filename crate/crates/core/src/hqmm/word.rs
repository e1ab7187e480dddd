use rand::Rng;

use crate::error::{Error, Result};
use crate::opalg::{random_operator, random_psd, ComplexOperator};

/// A local observable `⊗_k (X_k ⊗ Y_k)` on sites `0..len`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableWord {
    sites: Vec<(ComplexOperator, ComplexOperator)>,
}

impl ObservableWord {
    pub fn new(sites: Vec<(ComplexOperator, ComplexOperator)>) -> Self {
        Self { sites }
    }

    pub fn empty() -> Self {
        Self { sites: Vec::new() }
    }

    pub fn all_identity(len: usize, hidden_dim: usize, obs_dim: usize) -> Self {
        let site = (
            ComplexOperator::identity(hidden_dim),
            ComplexOperator::identity(obs_dim),
        );
        Self { sites: vec![site; len] }
    }

    /// Identity hidden operators with the given observables.
    pub fn observable(hidden_dim: usize, ys: &[ComplexOperator]) -> Self {
        Self::new(
            ys.iter()
                .map(|y| (ComplexOperator::identity(hidden_dim), y.clone()))
                .collect(),
        )
    }

    /// Identity observables with the given hidden operators.
    pub fn hidden(obs_dim: usize, xs: &[ComplexOperator]) -> Self {
        Self::new(
            xs.iter()
                .map(|x| (x.clone(), ComplexOperator::identity(obs_dim)))
                .collect(),
        )
    }

    /// Unit-norm Gaussian operators at every site.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize, hidden_dim: usize, obs_dim: usize) -> Self {
        Self::new(
            (0..len)
                .map(|_| (random_operator(rng, hidden_dim), random_operator(rng, obs_dim)))
                .collect(),
        )
    }

    /// Positive semidefinite operators at every site.
    pub fn random_positive<R: Rng + ?Sized>(rng: &mut R, len: usize, hidden_dim: usize, obs_dim: usize) -> Self {
        Self::new(
            (0..len)
                .map(|_| (random_psd(rng, hidden_dim), random_psd(rng, obs_dim)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn sites(&self) -> &[(ComplexOperator, ComplexOperator)] {
        &self.sites
    }

    pub fn push(&mut self, x: ComplexOperator, y: ComplexOperator) {
        self.sites.push((x, y));
    }

    /// The word followed by one identity site.
    pub fn extended_by_identity(&self, hidden_dim: usize, obs_dim: usize) -> Self {
        let mut out = self.clone();
        out.push(
            ComplexOperator::identity(hidden_dim),
            ComplexOperator::identity(obs_dim),
        );
        out
    }

    /// Applies `X ↦ f(X)`, `Y ↦ h(Y)` sitewise.
    pub fn map_sites(
        &self,
        mut f: impl FnMut(&ComplexOperator) -> ComplexOperator,
        mut h: impl FnMut(&ComplexOperator) -> ComplexOperator,
    ) -> Self {
        Self::new(self.sites.iter().map(|(x, y)| (f(x), h(y))).collect())
    }

    pub fn validate(&self, hidden_dim: usize, obs_dim: usize) -> Result<()> {
        for (k, (x, y)) in self.sites.iter().enumerate() {
            if x.dim() != hidden_dim {
                return Err(Error::mismatch(format!("word[{k}].X"), hidden_dim, x.dim()));
            }
            if y.dim() != obs_dim {
                return Err(Error::mismatch(format!("word[{k}].Y"), obs_dim, y.dim()));
            }
        }
        Ok(())
    }
}

impl FromIterator<(ComplexOperator, ComplexOperator)> for ObservableWord {
    fn from_iter<T: IntoIterator<Item = (ComplexOperator, ComplexOperator)>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}
