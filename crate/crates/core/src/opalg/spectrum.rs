//! Hermitian spectra.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::operator::ComplexOperator;
use crate::error::{Error, Result};

/// Asymmetry above which an operator is rejected as non-Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Eigenpairs of a Hermitian operator, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

pub fn hermitian_eigen(a: &ComplexOperator) -> Result<HermitianEigen> {
    let asymmetry = a.hermitian_asymmetry();
    if asymmetry > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { asymmetry });
    }
    let eig = SymmetricEigen::new(a.hermitian_part().to_nalgebra());
    let mut order: Vec<usize> = (0..a.dim()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues of a Hermitian operator in ascending order.
pub fn hermitian_eigenvalues(a: &ComplexOperator) -> Result<Vec<f64>> {
    hermitian_eigen(a).map(|e| e.values)
}

pub fn min_eigenvalue(a: &ComplexOperator) -> Result<f64> {
    Ok(hermitian_eigenvalues(a)?[0])
}

/// Applies a real function to the spectrum of a Hermitian operator.
pub fn hermitian_function(a: &ComplexOperator, f: impl Fn(f64) -> f64) -> Result<ComplexOperator> {
    let eig = hermitian_eigen(a)?;
    let d = a.dim();
    let mut out = ComplexOperator::zeros(d);
    for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
        let w = Complex64::new(f(*lambda), 0.0);
        for i in 0..d {
            for j in 0..d {
                let z = out.get(i, j) + w * v[i] * v[j].conj();
                out.set(i, j, z);
            }
        }
    }
    Ok(out)
}

/// Trace norm `‖A‖₁` of a Hermitian operator.
pub fn trace_norm(a: &ComplexOperator) -> Result<f64> {
    Ok(hermitian_eigenvalues(a)?.iter().map(|x| x.abs()).sum())
}
