use super::action::{CheckParams, SymmetryAction};
use crate::error::{Error, Result};
use crate::grouprep::RotationElement;
use crate::hqmm::{finite_volume_state, sliced_apply, CausalStructure, GenerativeTriple, ObservableWord};
use crate::opalg::{BipartiteMap, ComplexOperator};
use crate::sampling::sample_rng;

/// `|φ₀(α_g(Z)) − φ₀(Z)|` with `φ₀(Z) = Tr(ρ₀ Z)`.
pub fn initial_invariance_deviation(
    phi0: &ComplexOperator,
    action: &SymmetryAction,
    g: &RotationElement,
    z: &ComplexOperator,
) -> f64 {
    (phi0.trace_product(&action.alpha(g, z)) - phi0.trace_product(z)).norm()
}

/// `‖E_H(α_g Z₁ ⊗ α_g Z₂) − α_g E_H(Z₁ ⊗ Z₂)‖`.
pub fn transition_deviation(
    e_h: &BipartiteMap,
    action: &SymmetryAction,
    g: &RotationElement,
    z1: &ComplexOperator,
    z2: &ComplexOperator,
) -> Result<f64> {
    let lhs = e_h.apply_product(&action.alpha(g, z1), &action.alpha(g, z2))?;
    let rhs = action.alpha(g, &e_h.apply_product(z1, z2)?);
    Ok((&lhs - &rhs).op_norm())
}

/// `‖E_HO(α_g X ⊗ β_g Y) − α_g E_HO(X ⊗ Y)‖`.
pub fn emission_deviation(
    e_ho: &BipartiteMap,
    action: &SymmetryAction,
    g: &RotationElement,
    x: &ComplexOperator,
    y: &ComplexOperator,
) -> Result<f64> {
    let lhs = e_ho.apply_product(&action.alpha(g, x), &action.beta(g, y))?;
    let rhs = action.alpha(g, &e_ho.apply_product(x, y)?);
    Ok((&lhs - &rhs).op_norm())
}

/// `‖T_{α_g X, β_g Y}(α_g Z) − α_g T_{X,Y}(Z)‖`.
pub fn sliced_deviation(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    action: &SymmetryAction,
    g: &RotationElement,
    x: &ComplexOperator,
    y: &ComplexOperator,
    z: &ComplexOperator,
) -> Result<f64> {
    let lhs = sliced_apply(
        triple,
        structure,
        &action.alpha(g, x),
        &action.beta(g, y),
        &action.alpha(g, z),
    )?;
    let rhs = action.alpha(g, &sliced_apply(triple, structure, x, y, z)?);
    Ok((&lhs - &rhs).op_norm())
}

fn max_over<F>(params: &CheckParams, hidden: usize, obs: usize, mut f: F) -> Result<f64>
where
    F: FnMut(&super::action::Sample) -> Result<f64>,
{
    let mut worst = 0.0f64;
    for i in 0..params.samples {
        let s = params.sample(i, hidden, obs);
        let dev = f(&s)?;
        // NaN must not hide behind max
        if dev.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(dev);
    }
    Ok(worst)
}

fn check_dim(axis: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::mismatch(axis, expected, found));
    }
    Ok(())
}

/// Max over samples of the initial-state invariance defect.
pub fn check_initial_invariance(phi0: &ComplexOperator, action: &SymmetryAction, params: &CheckParams) -> Result<f64> {
    check_dim("phi0", action.hidden_dim(), phi0.dim())?;
    max_over(params, action.hidden_dim(), action.obs_dim(), |s| {
        Ok(initial_invariance_deviation(phi0, action, &s.g, &s.z))
    })
}

/// Max over samples of the transition equivariance defect, using the
/// sample's `(X, Z)` as `(Z₁, Z₂)`.
pub fn check_transition_equivariance(e_h: &BipartiteMap, action: &SymmetryAction, params: &CheckParams) -> Result<f64> {
    check_dim("E_H.dim_in1", action.hidden_dim(), e_h.dim_in1())?;
    max_over(params, action.hidden_dim(), action.obs_dim(), |s| {
        transition_deviation(e_h, action, &s.g, &s.x, &s.z)
    })
}

/// Max over samples of the emission covariance defect.
pub fn check_emission_covariance(e_ho: &BipartiteMap, action: &SymmetryAction, params: &CheckParams) -> Result<f64> {
    check_dim("E_HO.dim_in1", action.hidden_dim(), e_ho.dim_in1())?;
    check_dim("E_HO.dim_in2", action.obs_dim(), e_ho.dim_in2())?;
    max_over(params, action.hidden_dim(), action.obs_dim(), |s| {
        emission_deviation(e_ho, action, &s.g, &s.x, &s.y)
    })
}

/// Max over samples of the sliced-map covariance defect.
pub fn check_sliced_covariance(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    action: &SymmetryAction,
    params: &CheckParams,
) -> Result<f64> {
    action.validate(triple)?;
    max_over(params, action.hidden_dim(), action.obs_dim(), |s| {
        sliced_deviation(triple, structure, action, &s.g, &s.x, &s.y, &s.z)
    })
}

/// `|φ_n(α_g ⊗ β_g applied sitewise to w) − φ_n(w)|`.
pub fn global_deviation(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    action: &SymmetryAction,
    g: &RotationElement,
    word: &ObservableWord,
) -> Result<f64> {
    let rotated = word.map_sites(|x| action.alpha(g, x), |y| action.beta(g, y));
    let a = finite_volume_state(triple, structure, &rotated)?;
    let b = finite_volume_state(triple, structure, word)?;
    Ok((a - b).norm())
}

/// Max global-invariance defect for each `n ∈ 0..=n_max`, on random words
/// over sites `0..=n`.
pub fn check_global_invariance(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    action: &SymmetryAction,
    n_max: usize,
    params: &CheckParams,
) -> Result<Vec<f64>> {
    action.validate(triple)?;
    let (d, m) = (triple.hidden_dim(), triple.obs_dim());
    (0..=n_max)
        .map(|n| {
            let mut worst = 0.0f64;
            for i in 0..params.samples {
                let mut rng = sample_rng(params.seed, ((n as u64) << 32) | i as u64);
                let g = params.element(&mut rng, i);
                let word = ObservableWord::random(&mut rng, n + 1, d, m);
                let dev = global_deviation(triple, structure, action, &g, &word)?;
                if dev.is_nan() {
                    return Ok(f64::NAN);
                }
                worst = worst.max(dev);
            }
            Ok(worst)
        })
        .collect()
}
