//! Seeded random operators for sampling-based checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::map::{BipartiteMap, KrausOperator};
use super::operator::ComplexOperator;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexOperator {
    ComplexOperator::from_fn(dim, |_, _| gaussian(rng))
}

/// Gaussian matrix rescaled to unit operator norm.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexOperator {
    let g = ginibre(rng, dim);
    let norm = g.op_norm();
    g.scale_real(1.0 / norm)
}

/// Positive semidefinite `G G†` rescaled to unit operator norm.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexOperator {
    let g = ginibre(rng, dim);
    let p = g.matmul(&g.adjoint()).hermitian_part();
    let norm = p.op_norm();
    p.scale_real(1.0 / norm)
}

/// Density operator `G G† / Tr(G G†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexOperator {
    let g = ginibre(rng, dim);
    let p = g.matmul(&g.adjoint()).hermitian_part();
    let tr = p.trace().re;
    p.scale_real(1.0 / tr)
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Unitary from Gram–Schmidt on the columns of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexOperator {
    let g = ginibre(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|i| g.get(i, j)).collect();
        for q in &cols {
            let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= overlap * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexOperator::from_fn(dim, |i, j| cols[j][i])
}

/// Unital channel `M_{d1} ⊗ M_{d2} → M_{d1}` with Kraus operators
/// `(I ⊗ ⟨j|) U / √d2` for a random unitary `U`.
pub fn random_unital_channel<R: Rng + ?Sized>(rng: &mut R, d1: usize, d2: usize) -> BipartiteMap {
    let u = random_unitary(rng, d1 * d2);
    let scale = 1.0 / (d2 as f64).sqrt();
    let kraus: Vec<KrausOperator> = (0..d2)
        .map(|j| KrausOperator::from_fn(d1, d1 * d2, |a, c| u.get(a * d2 + j, c) * scale))
        .collect();
    BipartiteMap::from_kraus(d1, d2, &kraus).expect("kraus shapes match")
}
