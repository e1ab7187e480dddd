//! Property tests over seeded random inputs. Each case derives its
//! operators from a proptest-drawn seed so failures replay exactly.

use std::f64::consts::PI;
use std::sync::Arc;

use hqmm_core::aklt::{build_model, emission_map, AkltVariant};
use hqmm_core::grouprep::{cocycle_eval, gauge_transform, pairing_table, pauli, z2_x_z2, PhaseFn, RotationElement};
use hqmm_core::hqmm::{
    composite_map, finite_volume_state, kolmogorov_check, normalized_partial_trace, sliced_apply, CausalStructure,
    GenerativeTriple, ObservableWord,
};
use hqmm_core::opalg::{
    certify_cpu, hermitian_eigen, min_eigenvalue, random_density, random_operator, random_psd, random_unit_vector,
    random_unital_channel, tensor, BipartiteMap, ComplexOperator, KrausOperator,
};
use hqmm_core::sampling::{sample_rng, SampleRng};
use hqmm_core::symmetry::{
    check_emission_covariance, check_global_invariance, check_initial_invariance, check_sliced_covariance,
    check_transition_equivariance, global_deviation, initial_invariance_deviation, sliced_deviation, CheckParams,
    SymmetryAction,
};
use hqmm_core::{Complex64, LinearRep, ProjectiveRep, SpinBasis, TwoCocycle};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;

fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(0x5eed),
        ..Config::default()
    }
}

fn rng(seed: u64) -> SampleRng {
    sample_rng(seed, 0)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random (generally not CP) map with uniform complex coefficients.
fn random_map(rng: &mut SampleRng, d1: usize, d2: usize, dout: usize) -> BipartiteMap {
    let din = d1 * d2;
    let coeffs = (0..dout * dout * din * din)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    BipartiteMap::from_coefficients(d1, d2, dout, coeffs).unwrap()
}

fn random_kraus_map(rng: &mut SampleRng, din: usize, dout: usize, count: usize) -> BipartiteMap {
    let kraus: Vec<KrausOperator> = (0..count)
        .map(|_| {
            KrausOperator::from_fn(dout, din, |_, _| {
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            })
        })
        .collect();
    BipartiteMap::from_kraus(din, 1, &kraus).unwrap()
}

fn transpose_map(d: usize) -> BipartiteMap {
    BipartiteMap::from_fn(d, 1, d, |w| w.transpose())
}

/// Random CPU triple with a dilation-type transition and emission.
fn random_triple(rng: &mut SampleRng, d: usize, m: usize) -> GenerativeTriple {
    let phi0 = random_density(rng, d);
    let e_h = random_unital_channel(rng, d, d);
    let e_ho = random_unital_channel(rng, d, m);
    GenerativeTriple::new(phi0, e_h, e_ho).unwrap()
}

fn aklt_action() -> SymmetryAction {
    hqmm_core::aklt::action_for(SpinBasis::Cartesian)
}

/// Normalized Cartesian model with emission mixed toward a random channel
/// by weight `eps`, so the symmetry conditions fail at a controlled level.
fn perturbed_aklt(seed: u64, eps: f64) -> GenerativeTriple {
    let base = emission_map(&hqmm_core::aklt::build_tensors(AkltVariant::NormalizedCartesian));
    let noise = random_unital_channel(&mut rng(seed), 2, 3);
    let mixed: Vec<Complex64> = base
        .coefficients()
        .iter()
        .zip(noise.coefficients())
        .map(|(a, b)| a * (1.0 - eps) + b * eps)
        .collect();
    let e_ho = BipartiteMap::from_coefficients(2, 3, 2, mixed).unwrap();
    GenerativeTriple::new(
        ComplexOperator::identity(2).scale_real(0.5),
        normalized_partial_trace(2),
        e_ho,
    )
    .unwrap()
}

// ---------------------------------------------------------------- opalg

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn trace_is_cyclic(seed in any::<u64>(), dim in 1usize..7) {
        let mut r = rng(seed);
        let (a, b) = (random_operator(&mut r, dim), random_operator(&mut r, dim));
        let lhs = a.matmul(&b).trace();
        let rhs = b.matmul(&a).trace();
        prop_assert!((lhs - rhs).norm() < 1e-12);
        prop_assert!((a.trace_product(&b) - lhs).norm() < 1e-12);
    }

    #[test]
    fn tensor_is_associative(seed in any::<u64>(), da in 1usize..4, db in 1usize..4, dc in 1usize..4) {
        let mut r = rng(seed);
        let a = random_operator(&mut r, da);
        let b = random_operator(&mut r, db);
        let cc = random_operator(&mut r, dc);
        let (lhs, rhs) = (tensor(&tensor(&a, &b), &cc), tensor(&a, &tensor(&b, &cc)));
        // only floating-point reassociation separates the two
        prop_assert!((&lhs - &rhs).max_abs() <= 4.0 * f64::EPSILON * lhs.max_abs());
        // integer entries multiply exactly, so index bookkeeping must match bit for bit
        let int = |r: &mut SampleRng, d: usize| ComplexOperator::from_fn(d, |_, _| c(r.random_range(-9..=9) as f64, r.random_range(-9..=9) as f64));
        let (a, b, cc) = (int(&mut r, da), int(&mut r, db), int(&mut r, dc));
        prop_assert_eq!(tensor(&tensor(&a, &b), &cc), tensor(&a, &tensor(&b, &cc)));
    }

    #[test]
    fn tensor_mixed_product(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut r = rng(seed);
        let (a, cc) = (random_operator(&mut r, da), random_operator(&mut r, da));
        let (b, d) = (random_operator(&mut r, db), random_operator(&mut r, db));
        let lhs = tensor(&a, &b).matmul(&tensor(&cc, &d));
        let rhs = tensor(&a.matmul(&cc), &b.matmul(&d));
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
    }

    #[test]
    fn maps_are_linear(seed in any::<u64>(), d1 in 1usize..4, d2 in 1usize..3, dout in 1usize..4) {
        let mut r = rng(seed);
        let map = random_map(&mut r, d1, d2, dout);
        let din = d1 * d2;
        let (w1, w2) = (random_operator(&mut r, din), random_operator(&mut r, din));
        let (a, b) = (c(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)), c(r.random_range(-2.0..2.0), 0.3));
        let combo = &w1.scale(a) + &w2.scale(b);
        let lhs = map.apply(&combo).unwrap();
        let rhs = &map.apply(&w1).unwrap().scale(a) + &map.apply(&w2).unwrap().scale(b);
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
        // product inputs agree with the tensor form
        let (x, y) = (random_operator(&mut r, d1), random_operator(&mut r, d2));
        let p = map.apply_product(&x, &y).unwrap();
        let t = map.apply(&tensor(&x, &y)).unwrap();
        prop_assert!((&p - &t).max_abs() < 1e-12);
    }

    #[test]
    fn choi_matches_matrix_units(seed in any::<u64>(), din in 1usize..4, dout in 1usize..4) {
        let mut r = rng(seed);
        let map = random_map(&mut r, din, 1, dout);
        let choi = map.choi().matrix;
        for rr in 0..din {
            for s in 0..din {
                let image = map.apply(&ComplexOperator::matrix_unit(din, rr, s)).unwrap();
                for p in 0..dout {
                    for q in 0..dout {
                        prop_assert!((choi.get(rr * dout + p, s * dout + q) - image.get(p, q)).norm() < 1e-14);
                    }
                }
            }
        }
    }

    /// Choi positivity against the necessary condition: the map tensored
    /// with the identity keeps sampled PSD inputs of the doubled system PSD.
    #[test]
    fn choi_certificate_agrees_with_brute_force(seed in any::<u64>(), kraus in 1usize..4) {
        let mut r = rng(seed);
        let cp = random_kraus_map(&mut r, 2, 2, kraus);
        let cert = certify_cpu(&cp, 1e-10).unwrap();
        prop_assert!(cert.cp);
        let t = transpose_map(2);
        prop_assert!(!certify_cpu(&t, 1e-10).unwrap().cp);
        let mut worst_cp = f64::INFINITY;
        let mut worst_t = f64::INFINITY;
        for i in 0..200u64 {
            let mut ri = sample_rng(seed, i + 1);
            // alternate pure and mixed samples; pure ones witness non-CP maps
            let w = if i % 2 == 0 {
                let v = random_unit_vector(&mut ri, 4);
                ComplexOperator::outer(&v, &v).unwrap()
            } else {
                random_psd(&mut ri, 4)
            };
            worst_cp = worst_cp.min(min_eigenvalue(&cp.apply_with_ancilla(2, &w).unwrap().hermitian_part()).unwrap());
            worst_t = worst_t.min(min_eigenvalue(&t.apply_with_ancilla(2, &w).unwrap().hermitian_part()).unwrap());
        }
        prop_assert!(worst_cp >= -1e-10);
        prop_assert!(worst_t < -1e-3);
    }

    #[test]
    fn operator_json_round_trip(seed in any::<u64>(), dim in 1usize..5) {
        let a = random_operator(&mut rng(seed), dim).scale_real(1e-3 * (seed % 1000) as f64 + 1e-300);
        let text = serde_json::to_string(&a).unwrap();
        let back: ComplexOperator = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn eigen_residual_is_small(seed in any::<u64>(), dim in 1usize..7) {
        let a = random_operator(&mut rng(seed), dim).hermitian_part();
        let eig = hermitian_eigen(&a).unwrap();
        let norm = a.op_norm().max(1e-300);
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            let av: Vec<Complex64> = (0..dim).map(|i| (0..dim).map(|j| a.get(i, j) * v[j]).sum()).collect();
            let residual = av.iter().zip(v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(residual <= 1e-9 * norm);
        }
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

// ------------------------------------------------------------- grouprep

fn rotation() -> impl Strategy<Value = RotationElement> {
    any::<u64>().prop_map(|s| hqmm_core::grouprep::haar_sample(s, 1)[0])
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn spin_half_multiplier_law(g in rotation(), h in rotation()) {
        let pi = ProjectiveRep::spin_half();
        prop_assert!(pi.composition_residual(&g, &h) < 1e-10);
        let w = cocycle_eval(&g, &h);
        prop_assert!(w == 1.0 || w == -1.0);
        let lhs = pi.evaluate(&g).matmul(&pi.evaluate(&h));
        let rhs = pi.evaluate(&g.compose(&h)).scale_real(w);
        prop_assert!((&lhs - &rhs).max_abs() < 1e-10);
    }

    #[test]
    fn cocycle_identity_is_exact(g in rotation(), h in rotation(), k in rotation()) {
        let lhs = cocycle_eval(&g, &h) * cocycle_eval(&g.compose(&h), &k);
        let rhs = cocycle_eval(&h, &k) * cocycle_eval(&g, &h.compose(&k));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(TwoCocycle::spin_half().identity_defect(&g, &h, &k), 0.0);
        prop_assert_eq!(cocycle_eval(&RotationElement::identity(), &g), 1.0);
        prop_assert_eq!(cocycle_eval(&g, &RotationElement::identity()), 1.0);
    }

    #[test]
    fn spin_one_is_linear(basis in prop_oneof![Just(SpinBasis::Cartesian), Just(SpinBasis::Spherical)],
                          g in rotation(), h in rotation()) {
        prop_assert!(LinearRep::spin_one(basis).composition_residual(&g, &h) < 1e-10);
    }

    /// Conjugating the Pauli basis by the spin-½ matrix is the rotation
    /// matrix on coefficient vectors.
    #[test]
    fn double_cover_reproduces_rotation(g in rotation()) {
        let u = ProjectiveRep::spin_half().evaluate(&g);
        let r = g.rotation_matrix();
        let s = pauli();
        for a in 0..3 {
            let lhs = u.conjugate(&s[a]);
            let mut rhs = ComplexOperator::zeros(2);
            for b in 0..3 {
                rhs += &s[b].scale_real(r[b][a]);
            }
            prop_assert!((&lhs - &rhs).max_abs() < 1e-10);
        }
    }

    /// Adjoint actions compose exactly even though the matrices only do
    /// so up to the multiplier.
    #[test]
    fn adjoint_action_hides_the_multiplier(g in rotation(), h in rotation(), seed in any::<u64>()) {
        let x = random_operator(&mut rng(seed), 2);
        prop_assert!(aklt_action().adjoint_composition_deviation(&g, &h, &x) < 1e-12);
    }

    #[test]
    fn rotation_text_round_trip(g in rotation()) {
        let back: RotationElement = g.to_string().parse().unwrap();
        prop_assert!(back.approx_eq(&g, 1e-12));
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn pairing_is_gauge_invariant(a in prop::array::uniform4(-3.0f64..3.0), b in -3.0f64..3.0) {
        let lambda: PhaseFn = Arc::new(move |g: &RotationElement| {
            let q = g.quat();
            let angle = b + a[0] * q[0] + a[1] * q[1] + a[2] * q[2] + a[3] * q[3];
            Complex64::from_polar(1.0, angle)
        });
        let group = z2_x_z2();
        let gauged = gauge_transform(&TwoCocycle::spin_half(), lambda, &group).unwrap();
        let before = pairing_table(&TwoCocycle::spin_half(), &group).unwrap();
        let after = pairing_table(&gauged, &group).unwrap();
        for (x, y) in before.iter().flatten().zip(after.iter().flatten()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }
}

// ------------------------------------------------------------------ hqmm

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn all_identity_words_are_normalized(seed in any::<u64>(), d in 1usize..4, m in 1usize..4) {
        let t = random_triple(&mut rng(seed), d, m);
        for s in CausalStructure::ALL {
            for len in 1..=8 {
                let v = finite_volume_state(&t, s, &ObservableWord::all_identity(len, d, m)).unwrap();
                prop_assert!((v - c(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn positive_words_have_nonnegative_values(seed in any::<u64>(), len in 1usize..7) {
        let mut r = rng(seed);
        let t = random_triple(&mut r, 2, 3);
        let word = ObservableWord::random_positive(&mut r, len, 2, 3);
        for s in CausalStructure::ALL {
            let v = finite_volume_state(&t, s, &word).unwrap();
            prop_assert!(v.re >= -1e-12);
            prop_assert!(v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn unital_triples_are_kolmogorov(seed in any::<u64>()) {
        let t = random_triple(&mut rng(seed), 2, 2);
        let (h, o) = t.certify(1e-12).unwrap();
        prop_assume!(h.unitality_deviation < 1e-12 && o.unitality_deviation < 1e-12);
        for s in CausalStructure::ALL {
            prop_assert!(kolmogorov_check(&t, s, 6, 4, seed).unwrap() < 1e-12);
        }
    }

    #[test]
    fn classical_models_follow_the_forward_recursion(seed in any::<u64>(), len in 1usize..6) {
        let mut r = rng(seed);
        let (d, m) = (3, 2);
        let row = |r: &mut SampleRng, n: usize| {
            let v: Vec<f64> = (0..n).map(|_| r.random_range(0.05..1.0)).collect();
            let total: f64 = v.iter().sum();
            v.into_iter().map(|x| x / total).collect::<Vec<f64>>()
        };
        let p0 = row(&mut r, d);
        let p: Vec<Vec<f64>> = (0..d).map(|_| row(&mut r, d)).collect();
        let q: Vec<Vec<f64>> = (0..d).map(|_| row(&mut r, m)).collect();
        let t = GenerativeTriple::classical(&p0, &p, &q).unwrap();
        let ys: Vec<usize> = (0..len).map(|_| r.random_range(0..m)).collect();
        // scalar forward pass over observation indices
        let mut alpha: Vec<f64> = (0..d).map(|i| p0[i] * q[i][ys[0]]).collect();
        for &y in &ys[1..] {
            alpha = (0..d).map(|j| (0..d).map(|i| alpha[i] * p[i][j]).sum::<f64>() * q[j][y]).collect();
        }
        let want: f64 = alpha.iter().sum();
        let word = ObservableWord::observable(d, &ys.iter().map(|&y| ComplexOperator::matrix_unit(m, y, y)).collect::<Vec<_>>());
        for s in CausalStructure::ALL {
            prop_assert!((finite_volume_state(&t, s, &word).unwrap() - c(want, 0.0)).norm() < 1e-12);
        }
        // diagonal maps commute, so the two structures coincide as maps
        let a = composite_map(&t, CausalStructure::Conventional).unwrap();
        let b = composite_map(&t, CausalStructure::Causal).unwrap();
        let gap = a.coefficients().iter().zip(b.coefficients()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        prop_assert!(gap < 1e-14);
    }

    /// Multiplying the hidden representation by any phase leaves every
    /// deviation unchanged.
    #[test]
    fn hidden_phases_cancel(seed in any::<u64>(), a in prop::array::uniform3(-4.0f64..4.0)) {
        let triple = perturbed_aklt(seed, 1e-3);
        let action = aklt_action();
        let lambda: PhaseFn = Arc::new(move |g: &RotationElement| {
            let q = g.quat();
            Complex64::from_polar(1.0, a[0] * q[1] + a[1] * q[2] + a[2] * q[3])
        });
        let phased = action.with_hidden_phase(lambda);
        let params = CheckParams::haar(8, seed);
        let s = CausalStructure::Conventional;
        let pairs = [
            (check_initial_invariance(triple.phi0(), &action, &params).unwrap(),
             check_initial_invariance(triple.phi0(), &phased, &params).unwrap()),
            (check_transition_equivariance(triple.transition(), &action, &params).unwrap(),
             check_transition_equivariance(triple.transition(), &phased, &params).unwrap()),
            (check_emission_covariance(triple.emission(), &action, &params).unwrap(),
             check_emission_covariance(triple.emission(), &phased, &params).unwrap()),
            (check_sliced_covariance(&triple, s, &action, &params).unwrap(),
             check_sliced_covariance(&triple, s, &phased, &params).unwrap()),
        ];
        for (x, y) in pairs {
            prop_assert!((x - y).abs() < 1e-14);
        }
        let gx = check_global_invariance(&triple, s, &action, 2, &params).unwrap();
        let gy = check_global_invariance(&triple, s, &phased, 2, &params).unwrap();
        for (x, y) in gx.iter().zip(&gy) {
            prop_assert!((x - y).abs() < 1e-14);
        }
    }

    /// At one site the global defect splits into a sliced defect and an
    /// initial-state defect by the triangle inequality.
    #[test]
    fn one_site_global_defect_is_bounded(seed in any::<u64>()) {
        let triple = perturbed_aklt(seed, 1e-2);
        let action = aklt_action();
        let params = CheckParams::haar(16, seed);
        let id = ComplexOperator::identity(2);
        for s in CausalStructure::ALL {
            for i in 0..params.samples {
                let sample = params.sample(i, 2, 3);
                let word = ObservableWord::new(vec![(sample.x.clone(), sample.y.clone())]);
                let global = global_deviation(&triple, s, &action, &sample.g, &word).unwrap();
                let sliced = sliced_deviation(&triple, s, &action, &sample.g, &sample.x, &sample.y, &id).unwrap();
                let pushed = sliced_apply(&triple, s, &sample.x, &sample.y, &id).unwrap();
                let initial = initial_invariance_deviation(triple.phi0(), &action, &sample.g, &pushed);
                prop_assert!(global <= sliced + initial + 1e-14, "{global} > {sliced} + {initial}");
            }
        }
    }
}

/// Regression bound: with single-site conditions passing at level `t`, the
/// global defect over `n + 1` sites stays below `10·(n + 1)·t`.
#[test]
fn global_defect_grows_at_most_linearly() {
    for (seed, eps) in [(1u64, 1e-4), (2, 1e-6), (3, 1e-3)] {
        let triple = perturbed_aklt(seed, eps);
        let action = aklt_action();
        let params = CheckParams::haar(50, seed);
        let t = check_initial_invariance(triple.phi0(), &action, &params)
            .unwrap()
            .max(check_transition_equivariance(triple.transition(), &action, &params).unwrap())
            .max(check_emission_covariance(triple.emission(), &action, &params).unwrap());
        assert!(t > 0.0);
        for s in CausalStructure::ALL {
            let per = check_global_invariance(&triple, s, &action, 8, &params).unwrap();
            for (n, dev) in per.iter().enumerate() {
                let ratio = dev / ((n + 1) as f64 * t);
                assert!(ratio <= 10.0, "{s} n={n}: ratio {ratio}");
            }
        }
    }
}

/// For the valence-bond model the normalized partial trace makes the two
/// orderings coincide; a generic dilation triple separates them.
#[test]
fn structures_differ_only_for_generic_triples() {
    let gap = |t: &GenerativeTriple| {
        let a = composite_map(t, CausalStructure::Conventional).unwrap().choi().matrix;
        let b = composite_map(t, CausalStructure::Causal).unwrap().choi().matrix;
        (&a - &b).op_norm()
    };
    for v in [AkltVariant::NormalizedCartesian, AkltVariant::NormalizedSpherical] {
        let m = build_model(v, CausalStructure::Conventional).unwrap();
        assert!(gap(m.triple()) < 1e-14);
    }
    for seed in 0..5 {
        assert!(gap(&random_triple(&mut rng(seed), 2, 3)) > 0.1);
    }
}

/// The spherical and Cartesian models agree on words related by the basis
/// change.
#[test]
fn basis_change_consistency() {
    for s in CausalStructure::ALL {
        let cart = build_model(AkltVariant::NormalizedCartesian, s).unwrap();
        let sph = build_model(AkltVariant::NormalizedSpherical, s).unwrap();
        for i in 0..30u64 {
            let mut r = sample_rng(99, i);
            let word = ObservableWord::random(&mut r, 1 + i as usize % 6, 2, 3);
            let rotated = word.map_sites(|x| x.clone(), |y| sph.observable_from_cartesian(y));
            let a = cart.state(&word).unwrap();
            let b = sph.state(&rotated).unwrap();
            assert!((a - b).norm() < 1e-11, "{s} word {i}: {a} vs {b}");
        }
    }
}

#[test]
fn pi_rotations_pair_to_minus_one() {
    let (x, y) = (RotationElement::rx(PI), RotationElement::ry(PI));
    let pi = ProjectiveRep::spin_half();
    let c = pi
        .evaluate(&x)
        .matmul(&pi.evaluate(&y))
        .matmul(&pi.evaluate(&x).adjoint())
        .matmul(&pi.evaluate(&y).adjoint());
    assert!((&c - &ComplexOperator::identity(2).scale_real(-1.0)).max_abs() < 1e-12);
}
