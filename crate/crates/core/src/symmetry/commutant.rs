//! Invariant states from the commutant of a representation.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grouprep::{ProjectiveRep, RotationElement};
use crate::opalg::{min_eigenvalue, ComplexOperator};
use crate::sampling::sample_rng;

/// Relative singular-value threshold separating the nullspace.
const NULL_THRESHOLD: f64 = 1e-8;
/// Relative band in which the rank decision is considered unreliable.
const AMBIGUOUS_BAND: (f64, f64) = (1e-10, 1e-6);
const ORTHO_TOLERANCE: f64 = 1e-9;

fn group_elements(count: usize, seed: u64) -> Vec<RotationElement> {
    (0..count as u64)
        .map(|i| RotationElement::random(&mut sample_rng(seed, i)))
        .collect()
}

/// Hermitian orthonormal (Hilbert–Schmidt) basis of the commutant of
/// `{π(g)}` over `group_samples` Haar elements, with `I/√d` first.
pub fn commutant_basis(pi: &ProjectiveRep, group_samples: usize, seed: u64) -> Result<Vec<ComplexOperator>> {
    let d = pi.dim();
    let n = d * d;
    let elements = group_elements(group_samples.max(1), seed);
    // row-major vec: vec(UX − XU) = (U ⊗ I − I ⊗ Uᵀ) vec(X)
    let mut stacked = DMatrix::<Complex64>::zeros(elements.len() * n, n);
    for (b, g) in elements.iter().enumerate() {
        let u = pi.evaluate(g);
        for i in 0..d {
            for j in 0..d {
                let row = b * n + i * d + j;
                for k in 0..d {
                    stacked[(row, k * d + j)] += u.get(i, k);
                    stacked[(row, i * d + k)] -= u.get(k, j);
                }
            }
        }
    }
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    let mut null = Vec::new();
    if smax == 0.0 {
        null.extend(0..n);
    } else {
        for (k, &s) in sigma.iter().enumerate() {
            let rel = s / smax;
            if rel >= AMBIGUOUS_BAND.0 && rel <= AMBIGUOUS_BAND.1 {
                return Err(Error::RankEstimation { singular_values: sigma });
            }
            if rel < NULL_THRESHOLD {
                null.push(k);
            }
        }
    }
    let mut spanning = Vec::new();
    for &k in &null {
        let x = ComplexOperator::from_fn(d, |i, j| v_t[(k, i * d + j)].conj());
        spanning.push(x.hermitian_part());
        spanning.push((&x - &x.adjoint()).scale(Complex64::new(0.0, -0.5)));
    }
    Ok(orthonormalize_with_identity(d, spanning, null.len()))
}

/// Gram–Schmidt in the Hilbert–Schmidt inner product, seeded with `I/√d`,
/// keeping at most `limit` elements.
fn orthonormalize_with_identity(d: usize, candidates: Vec<ComplexOperator>, limit: usize) -> Vec<ComplexOperator> {
    let mut basis = vec![ComplexOperator::identity(d).scale_real(1.0 / (d as f64).sqrt())];
    for c in candidates {
        if basis.len() >= limit {
            break;
        }
        let mut v = c;
        for b in &basis {
            let coeff = b.hs_inner(&v);
            v = &v - &b.scale(coeff);
        }
        let norm = v.frobenius_norm();
        if norm > ORTHO_TOLERANCE {
            basis.push(v.scale_real(1.0 / norm).hermitian_part());
        }
    }
    basis
}

/// Orthogonal projection onto the span of an orthonormal basis.
pub fn project_onto(basis: &[ComplexOperator], x: &ComplexOperator) -> ComplexOperator {
    let mut out = ComplexOperator::zeros(x.dim());
    for b in basis {
        out += &b.scale(b.hs_inner(x));
    }
    out
}

/// Density operators spanning the invariant states: the normalized
/// projection `ρ₀` of the identity, then `ρ₀ + t·H` for each further
/// basis element with `t = λ_min(ρ₀) / (2‖H‖)`.
pub fn densities_from_basis(basis: &[ComplexOperator]) -> Result<Vec<ComplexOperator>> {
    let first = basis
        .first()
        .ok_or_else(|| Error::Invalid("empty commutant basis".into()))?;
    let d = first.dim();
    let proj = project_onto(basis, &ComplexOperator::identity(d));
    let tr = proj.trace().re;
    let rho0 = proj.scale_real(1.0 / tr).hermitian_part();
    let lmin = min_eigenvalue(&rho0)?;
    let mut states = vec![rho0.clone()];
    for h in &basis[1..] {
        // remove any trace component so the densities stay normalized
        let traceless = &h.clone() - &rho0.scale(h.trace() / rho0.trace());
        let t = lmin / (2.0 * traceless.op_norm());
        states.push((&rho0 + &traceless.scale_real(t)).hermitian_part());
    }
    Ok(states)
}

/// Invariant densities of `π` from the commutant nullspace. Irreducible
/// representations give the single state `I/d`.
pub fn invariant_states(pi: &ProjectiveRep, group_samples: usize, seed: u64) -> Result<Vec<ComplexOperator>> {
    densities_from_basis(&commutant_basis(pi, group_samples, seed)?)
}

/// The twirl superoperator `(id + Φ)/2`, `Φ(X)` the average of
/// `π(g)Xπ(g)†` over the samples and their inverses, as a `d² × d²`
/// matrix on row-major vectors.
fn lazy_twirl(pi: &ProjectiveRep, group_samples: usize, seed: u64) -> DMatrix<Complex64> {
    let d = pi.dim();
    let n = d * d;
    let elements = group_elements(group_samples.max(1), seed);
    let mut phi = DMatrix::<Complex64>::zeros(n, n);
    let weight = 1.0 / (2 * elements.len()) as f64;
    for g in &elements {
        for h in [*g, g.inverse()] {
            let u = pi.evaluate(&h);
            // vec(U X U†) = (U ⊗ conj(U)) vec(X)
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        for l in 0..d {
                            phi[(i * d + j, k * d + l)] += u.get(i, k) * u.get(j, l).conj() * weight;
                        }
                    }
                }
            }
        }
    }
    (DMatrix::identity(n, n) + phi) * Complex64::new(0.5, 0.0)
}

/// Commutant basis obtained by iterating the lazy twirl to its fixed-point
/// projector and orthonormalizing its range.
pub fn twirled_commutant_basis(pi: &ProjectiveRep, group_samples: usize, seed: u64) -> Result<Vec<ComplexOperator>> {
    let d = pi.dim();
    let n = d * d;
    let mut p = lazy_twirl(pi, group_samples, seed);
    let mut converged = false;
    for _ in 0..200 {
        let sq = &p * &p;
        let next = (&sq + sq.adjoint()) * Complex64::new(0.5, 0.0);
        let delta = (&next - &p).iter().map(|z| z.norm()).fold(0.0, f64::max);
        p = next;
        if delta < 1e-13 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Invalid("twirl iteration did not converge".into()));
    }
    let rank = p.trace().re.round().max(1.0) as usize;
    let mut images = Vec::new();
    for c in 0..n {
        let x = ComplexOperator::from_fn(d, |i, j| p[(i * d + j, c)]);
        images.push(x.hermitian_part());
        images.push((&x - &x.adjoint()).scale(Complex64::new(0.0, -0.5)));
    }
    let basis = orthonormalize_with_identity(d, images, rank);
    if basis.len() != rank {
        return Err(Error::RankEstimation {
            singular_values: vec![rank as f64, basis.len() as f64],
        });
    }
    Ok(basis)
}

/// Invariant densities by twirling.
pub fn twirled_invariant_states(pi: &ProjectiveRep, group_samples: usize, seed: u64) -> Result<Vec<ComplexOperator>> {
    densities_from_basis(&twirled_commutant_basis(pi, group_samples, seed)?)
}

/// `max_{E_ij} ‖P_a(E_ij) − P_b(E_ij)‖` over matrix units, comparing the
/// projectors onto two orthonormal bases.
pub fn projector_distance(a: &[ComplexOperator], b: &[ComplexOperator]) -> f64 {
    let Some(first) = a.first().or(b.first()) else {
        return 0.0;
    };
    let d = first.dim();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let e = ComplexOperator::matrix_unit(d, i, j);
            worst = worst.max((&project_onto(a, &e) - &project_onto(b, &e)).max_abs());
        }
    }
    worst
}
