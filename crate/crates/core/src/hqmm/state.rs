use num_complex::Complex64;

use super::triple::{CausalStructure, GenerativeTriple};
use super::word::ObservableWord;
use crate::error::{Error, Result};
use crate::opalg::{BipartiteMap, ComplexOperator, ZERO};
use crate::sampling::sample_rng;

/// `T(X ⊗ X' ⊗ Y)` for one elementary tensor.
pub fn composite_apply(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    x: &ComplexOperator,
    x_next: &ComplexOperator,
    y: &ComplexOperator,
) -> Result<ComplexOperator> {
    match structure {
        CausalStructure::Conventional => {
            let emitted = triple.emission().apply_product(x, y)?;
            triple.transition().apply_product(&emitted, x_next)
        }
        CausalStructure::Causal => {
            let moved = triple.transition().apply_product(x, x_next)?;
            triple.emission().apply_product(&moved, y)
        }
    }
}

/// The composite map on `B(H ⊗ H ⊗ O)`, as a bipartite map with first
/// factor `H ⊗ H` and second factor `O`.
pub fn composite_map(triple: &GenerativeTriple, structure: CausalStructure) -> Result<BipartiteMap> {
    let d = triple.hidden_dim();
    let m = triple.obs_dim();
    let din = d * d * m;
    let split = |r: usize| (r / (d * m), (r / m) % d, r % m);
    let mut coeffs = vec![ZERO; d * d * din * din];
    for r in 0..din {
        let (a, b, c) = split(r);
        for s in 0..din {
            let (a2, b2, c2) = split(s);
            let image = composite_apply(
                triple,
                structure,
                &ComplexOperator::matrix_unit(d, a, a2),
                &ComplexOperator::matrix_unit(d, b, b2),
                &ComplexOperator::matrix_unit(m, c, c2),
            )?;
            for p in 0..d {
                for q in 0..d {
                    coeffs[((p * d + q) * din + r) * din + s] = image.get(p, q);
                }
            }
        }
    }
    BipartiteMap::from_coefficients(d * d, m, d, coeffs)
}

/// `T_{X,Y}(Z) = T(X ⊗ Z ⊗ Y)` at one operator.
pub fn sliced_apply(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    x: &ComplexOperator,
    y: &ComplexOperator,
    z: &ComplexOperator,
) -> Result<ComplexOperator> {
    composite_apply(triple, structure, x, z, y)
}

/// The sliced map `Z ↦ T_{X,Y}(Z)` as a map on the hidden algebra (second
/// input factor of dimension 1).
pub fn sliced_map(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    x: &ComplexOperator,
    y: &ComplexOperator,
) -> Result<BipartiteMap> {
    let d = triple.hidden_dim();
    if x.dim() != d {
        return Err(Error::mismatch("X", d, x.dim()));
    }
    if y.dim() != triple.obs_dim() {
        return Err(Error::mismatch("Y", triple.obs_dim(), y.dim()));
    }
    let mut failure = None;
    let map = BipartiteMap::from_fn(d, 1, d, |z| match sliced_apply(triple, structure, x, y, z) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            ComplexOperator::zeros(d)
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(map),
    }
}

/// `T_{X_0,Y_0} ∘ … ∘ T_{X_n,Y_n}(I)`, folded from the last site.
fn fold(triple: &GenerativeTriple, structure: CausalStructure, word: &ObservableWord) -> Result<ComplexOperator> {
    let mut acc = ComplexOperator::identity(triple.hidden_dim());
    for (x, y) in word.sites().iter().rev() {
        acc = sliced_apply(triple, structure, x, y, &acc)?;
    }
    Ok(acc)
}

/// `φ_n(w) = φ₀(T_{X_0,Y_0} ∘ … ∘ T_{X_n,Y_n}(I))`.
pub fn finite_volume_state(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    word: &ObservableWord,
) -> Result<Complex64> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    word.validate(triple.hidden_dim(), triple.obs_dim())?;
    Ok(triple.initial_value(&fold(triple, structure, word)?))
}

/// Value on the word with every observable set to the identity.
pub fn hidden_marginal(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    xs: &[ComplexOperator],
) -> Result<Complex64> {
    finite_volume_state(triple, structure, &ObservableWord::hidden(triple.obs_dim(), xs))
}

/// Value on the word with every hidden operator set to the identity.
pub fn observable_marginal(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    ys: &[ComplexOperator],
) -> Result<Complex64> {
    finite_volume_state(triple, structure, &ObservableWord::observable(triple.hidden_dim(), ys))
}

/// `|φ_{m+1}(w ⊗ (I ⊗ I)) − φ_m(w)|`, with `φ_0 = φ₀(I)` for the empty word.
pub fn kolmogorov_defect(triple: &GenerativeTriple, structure: CausalStructure, word: &ObservableWord) -> Result<f64> {
    let (d, m) = (triple.hidden_dim(), triple.obs_dim());
    word.validate(d, m)?;
    let shorter = triple.initial_value(&fold(triple, structure, word)?);
    let longer = triple.initial_value(&fold(triple, structure, &word.extended_by_identity(d, m))?);
    Ok((longer - shorter).norm())
}

/// Max Kolmogorov defect per word length `m ∈ 0..depth`. Sample 0 at
/// every length is the all-identity word; the rest are Gaussian words.
pub fn kolmogorov_profile(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if depth == 0 {
        return Err(Error::Invalid("kolmogorov depth must be at least 1".into()));
    }
    let (d, obs) = (triple.hidden_dim(), triple.obs_dim());
    (0..depth)
        .map(|m| {
            let mut worst = 0.0f64;
            for i in 0..samples.max(1) {
                let word = if i == 0 {
                    ObservableWord::all_identity(m, d, obs)
                } else {
                    let mut rng = sample_rng(seed, (m * samples + i) as u64);
                    ObservableWord::random(&mut rng, m, d, obs)
                };
                worst = worst.max(kolmogorov_defect(triple, structure, &word)?);
            }
            Ok(worst)
        })
        .collect()
}

/// Max over sampled words of length `< depth` of the Kolmogorov defect.
pub fn kolmogorov_check(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    Ok(kolmogorov_profile(triple, structure, depth, samples, seed)?
        .into_iter()
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hqmm::normalized_partial_trace;
    use crate::opalg::{certify_cpu, KrausOperator, ONE};

    fn toy() -> GenerativeTriple {
        // hidden qubit, observable qubit, emission = normalized partial trace too
        GenerativeTriple::new(
            ComplexOperator::real_diagonal(&[0.5, 0.5]),
            normalized_partial_trace(2),
            normalized_partial_trace(2),
        )
        .unwrap()
    }

    #[test]
    fn empty_word_rejected() {
        let err = finite_volume_state(&toy(), CausalStructure::Causal, &ObservableWord::empty()).unwrap_err();
        assert!(matches!(err, Error::EmptyWord));
    }

    #[test]
    fn word_dimension_checked() {
        let word = ObservableWord::new(vec![(ComplexOperator::identity(3), ComplexOperator::identity(2))]);
        let err = finite_volume_state(&toy(), CausalStructure::Causal, &word).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { ref axis, .. } if axis == "word[0].X"));
    }

    #[test]
    fn identity_words_are_one() {
        for s in CausalStructure::ALL {
            for n in 1..=8 {
                let v = finite_volume_state(&toy(), s, &ObservableWord::all_identity(n, 2, 2)).unwrap();
                assert!((v - ONE).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn toy_structures_agree() {
        let t = toy();
        let a = composite_map(&t, CausalStructure::Conventional).unwrap();
        let b = composite_map(&t, CausalStructure::Causal).unwrap();
        let diff = a
            .coefficients()
            .iter()
            .zip(b.coefficients())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-15);
        assert!(certify_cpu(&a, 1e-12).unwrap().passed());
    }

    #[test]
    fn sliced_map_matches_composite() {
        let t = toy();
        let mut rng = crate::sampling::stream_rng(5);
        let x = crate::opalg::random_operator(&mut rng, 2);
        let y = crate::opalg::random_operator(&mut rng, 2);
        let z = crate::opalg::random_operator(&mut rng, 2);
        for s in CausalStructure::ALL {
            let sliced = sliced_map(&t, s, &x, &y).unwrap().apply(&z).unwrap();
            let full = composite_map(&t, s).unwrap().apply(&x.tensor(&z).tensor(&y)).unwrap();
            assert!((&sliced - &full).max_abs() < 1e-14);
        }
    }

    #[test]
    fn kolmogorov_depth_one_empty_word() {
        let t = toy();
        let dev = kolmogorov_defect(&t, CausalStructure::Conventional, &ObservableWord::empty()).unwrap();
        assert!(dev < 1e-15);
        assert!(kolmogorov_check(&t, CausalStructure::Causal, 0, 5, 1).is_err());
    }

    #[test]
    fn bad_kraus_triple_fails_validation() {
        let k = KrausOperator::from_fn(2, 4, |r, c| if r == 0 && c == 0 { ONE } else { ZERO });
        let e = BipartiteMap::from_kraus(2, 2, &[k]).unwrap();
        let err = GenerativeTriple::new(
            ComplexOperator::real_diagonal(&[0.5, 0.5]),
            e,
            normalized_partial_trace(2),
        );
        assert!(matches!(err, Err(Error::InvalidTriple(_))));
    }
}
