//! Unitary representations of SO(3): the spin-½ section, spin-1 in two
//! physical bases, and combinators.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cocycle::{PhaseFn, TwoCocycle};
use super::rotation::RotationElement;
use crate::error::{Error, Result};
use crate::opalg::{ComplexOperator, ONE, ZERO};
use crate::sampling::sample_rng;

/// Physical basis of the spin-1 space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpinBasis {
    /// Real basis `(x, y, z)`; the representation is the rotation matrix.
    Cartesian,
    /// `S^z` eigenbasis ordered `(+, 0, −)` with Condon–Shortley phases.
    Spherical,
}

impl SpinBasis {
    pub fn labels(self) -> [&'static str; 3] {
        match self {
            SpinBasis::Cartesian => ["x", "y", "z"],
            SpinBasis::Spherical => ["+", "0", "-"],
        }
    }
}

/// Spin label stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Spin(pub u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);
    pub const HALF: Spin = Spin(1);
    pub const ONE: Spin = Spin(2);

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }
}

/// SU(2) matrix of the canonical quaternion: `w·I − i(x σx + y σy + z σz)`.
pub fn su2_matrix(g: &RotationElement) -> ComplexOperator {
    let [w, x, y, z] = g.quat();
    let c = Complex64::new;
    ComplexOperator::from_entries(2, vec![c(w, -z), c(-y, -x), c(y, -x), c(w, z)]).expect("2x2")
}

/// Spin-1 matrix in the requested physical basis.
pub fn spin_one_matrix(basis: SpinBasis, g: &RotationElement) -> ComplexOperator {
    match basis {
        SpinBasis::Cartesian => {
            let r = g.rotation_matrix();
            ComplexOperator::from_fn(3, |i, j| Complex64::new(r[i][j], 0.0))
        }
        SpinBasis::Spherical => symmetric_square(&su2_matrix(g)),
    }
}

/// Restriction of `U ⊗ U` to the symmetric subspace spanned by
/// `|↑↑⟩, (|↑↓⟩ + |↓↑⟩)/√2, |↓↓⟩`.
fn symmetric_square(u: &ComplexOperator) -> ComplexOperator {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // columns of the isometry, indexed into C^2 ⊗ C^2
    let iso: [[f64; 4]; 3] = [[1.0, 0.0, 0.0, 0.0], [0.0, r, r, 0.0], [0.0, 0.0, 0.0, 1.0]];
    let uu = u.tensor(u);
    ComplexOperator::from_fn(3, |i, j| {
        let mut acc = ZERO;
        for a in 0..4 {
            for b in 0..4 {
                acc += iso[i][a] * uu.get(a, b) * iso[j][b];
            }
        }
        acc
    })
}

/// Spin-`j` matrix for `j ∈ {0, ½, 1}`; spin 1 uses the Cartesian basis.
pub fn spin_rep(spin: Spin, g: &RotationElement) -> Result<ComplexOperator> {
    match spin {
        Spin::ZERO => Ok(ComplexOperator::identity(1)),
        Spin::HALF => Ok(su2_matrix(g)),
        Spin::ONE => Ok(spin_one_matrix(SpinBasis::Cartesian, g)),
        Spin(two_j) => Err(Error::UnsupportedSpin { two_j }),
    }
}

type RepFn = Arc<dyn Fn(&RotationElement) -> ComplexOperator + Send + Sync>;

/// A projective unitary representation `π(g)π(h) = ω(g,h)·π(gh)`.
#[derive(Clone)]
pub struct ProjectiveRep {
    dim: usize,
    section_tag: String,
    eval: RepFn,
    cocycle: TwoCocycle,
}

impl ProjectiveRep {
    pub fn new(
        dim: usize,
        section_tag: impl Into<String>,
        eval: impl Fn(&RotationElement) -> ComplexOperator + Send + Sync + 'static,
        cocycle: TwoCocycle,
    ) -> Self {
        Self {
            dim,
            section_tag: section_tag.into(),
            eval: Arc::new(eval),
            cocycle,
        }
    }

    /// The defining spin-½ representation through the canonical section.
    pub fn spin_half() -> Self {
        Self::new(2, "canonical-quaternion", su2_matrix, TwoCocycle::spin_half())
    }

    /// `g ↦ I_dim`.
    pub fn trivial(dim: usize) -> Self {
        Self::new(
            dim,
            "trivial",
            move |_| ComplexOperator::identity(dim),
            TwoCocycle::trivial(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn section_tag(&self) -> &str {
        &self.section_tag
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    pub fn evaluate(&self, g: &RotationElement) -> ComplexOperator {
        (self.eval)(g)
    }

    /// `π(g) X π(g)†`.
    pub fn adjoint_action(&self, g: &RotationElement, x: &ComplexOperator) -> ComplexOperator {
        self.evaluate(g).conjugate(x)
    }

    /// `‖π(g)π(h) − ω(g,h)π(gh)‖` in operator norm.
    pub fn composition_residual(&self, g: &RotationElement, h: &RotationElement) -> f64 {
        let lhs = self.evaluate(g).matmul(&self.evaluate(h));
        let rhs = self.evaluate(&g.compose(h)).scale(self.cocycle.evaluate(g, h));
        (&lhs - &rhs).op_norm()
    }

    /// Scalar `c` with `π(g)π(h) = c·π(gh)`, read off from the operators.
    pub fn measured_multiplier(&self, g: &RotationElement, h: &RotationElement) -> Complex64 {
        let lhs = self.evaluate(g).matmul(&self.evaluate(h));
        let gh = self.evaluate(&g.compose(h));
        gh.hs_inner(&lhs) / gh.hs_inner(&gh)
    }

    /// `g ↦ π(g) ⊕ σ(g)`. Both summands must share the multiplier; this is
    /// checked on a few sampled pairs.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let mut rng = sample_rng(0xD5, 0);
        for _ in 0..16 {
            let g = RotationElement::random(&mut rng);
            let h = RotationElement::random(&mut rng);
            let (a, b) = (self.cocycle.evaluate(&g, &h), other.cocycle.evaluate(&g, &h));
            if (a - b).norm() > 1e-12 {
                return Err(Error::Invalid(format!(
                    "direct sum of representations with different multipliers ({} vs {})",
                    self.cocycle.tag(),
                    other.cocycle.tag()
                )));
            }
        }
        let (p, q) = (self.clone(), other.clone());
        let (da, db) = (self.dim, other.dim);
        Ok(Self::new(
            da + db,
            format!("{}+{}", self.section_tag, other.section_tag),
            move |g| {
                let (a, b) = (p.evaluate(g), q.evaluate(g));
                ComplexOperator::from_fn(da + db, |i, j| match (i < da, j < da) {
                    (true, true) => a.get(i, j),
                    (false, false) => b.get(i - da, j - da),
                    _ => ZERO,
                })
            },
            self.cocycle.clone(),
        ))
    }

    /// `g ↦ π(g) ⊗ σ(g)` with the pointwise product multiplier.
    pub fn tensor(&self, other: &Self) -> Self {
        let (p, q) = (self.clone(), other.clone());
        Self::new(
            self.dim * other.dim,
            format!("{}x{}", self.section_tag, other.section_tag),
            move |g| p.evaluate(g).tensor(&q.evaluate(g)),
            self.cocycle.product(&other.cocycle),
        )
    }

    /// `g ↦ λ(g)·π(g)`, a lift through the central extension. The
    /// multiplier changes by the coboundary of `λ`.
    pub fn with_phase(&self, lambda: PhaseFn) -> Self {
        let base = self.clone();
        let l = lambda.clone();
        let base_cocycle = self.cocycle.clone();
        let cocycle = TwoCocycle::from_fn(format!("{}~phased", self.cocycle.tag()), move |g, h| {
            lambda(g) * lambda(h) * lambda(&g.compose(h)).conj() * base_cocycle.evaluate(g, h)
        });
        Self::new(
            self.dim,
            format!("{}~phased", self.section_tag),
            move |g| base.evaluate(g).scale(l(g)),
            cocycle,
        )
    }
}

impl fmt::Debug for ProjectiveRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjectiveRep")
            .field("dim", &self.dim)
            .field("section_tag", &self.section_tag)
            .finish()
    }
}

/// An ordinary unitary representation, multiplier identically 1.
#[derive(Clone, Debug)]
pub struct LinearRep(ProjectiveRep);

impl LinearRep {
    pub fn new(
        dim: usize,
        tag: impl Into<String>,
        eval: impl Fn(&RotationElement) -> ComplexOperator + Send + Sync + 'static,
    ) -> Self {
        Self(ProjectiveRep::new(dim, tag, eval, TwoCocycle::trivial()))
    }

    pub fn spin_one(basis: SpinBasis) -> Self {
        let tag = match basis {
            SpinBasis::Cartesian => "spin-1-cartesian",
            SpinBasis::Spherical => "spin-1-spherical",
        };
        Self::new(3, tag, move |g| spin_one_matrix(basis, g))
    }

    pub fn trivial(dim: usize) -> Self {
        Self(ProjectiveRep::trivial(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn tag(&self) -> &str {
        &self.0.section_tag
    }

    pub fn evaluate(&self, g: &RotationElement) -> ComplexOperator {
        self.0.evaluate(g)
    }

    pub fn adjoint_action(&self, g: &RotationElement, y: &ComplexOperator) -> ComplexOperator {
        self.0.adjoint_action(g, y)
    }

    /// `‖ρ(g)ρ(h) − ρ(gh)‖`.
    pub fn composition_residual(&self, g: &RotationElement, h: &RotationElement) -> f64 {
        self.0.composition_residual(g, h)
    }

    pub fn as_projective(&self) -> &ProjectiveRep {
        &self.0
    }
}

/// Max over sampled pairs of `‖(π⊗ρ)(g)(π⊗ρ)(h) − ω(g,h)(π⊗ρ)(gh)‖`, with
/// `ω` the multiplier of `π`.
pub fn tensor_rep_cocycle_check(pi: &ProjectiveRep, rho: &LinearRep, samples: usize, seed: u64) -> f64 {
    let joint = pi.tensor(rho.as_projective());
    (0..samples as u64)
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let g = RotationElement::random(&mut rng);
            let h = RotationElement::random(&mut rng);
            let lhs = joint.evaluate(&g).matmul(&joint.evaluate(&h));
            let rhs = joint.evaluate(&g.compose(&h)).scale(pi.cocycle().evaluate(&g, &h));
            (&lhs - &rhs).op_norm()
        })
        .fold(0.0, f64::max)
}

/// Pauli matrices `(σx, σy, σz)`.
pub fn pauli() -> [ComplexOperator; 3] {
    let i = Complex64::new(0.0, 1.0);
    [
        ComplexOperator::from_entries(2, vec![ZERO, ONE, ONE, ZERO]).expect("2x2"),
        ComplexOperator::from_entries(2, vec![ZERO, -i, i, ZERO]).expect("2x2"),
        ComplexOperator::from_entries(2, vec![ONE, ZERO, ZERO, -ONE]).expect("2x2"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::haar_sample;
    use std::f64::consts::PI;

    #[test]
    fn spin_half_identity() {
        let u = spin_rep(Spin::HALF, &RotationElement::identity()).unwrap();
        assert_eq!(u, ComplexOperator::identity(2));
    }

    /// Partial sums of exp(−i(β/2)σy), independent of the quaternion path.
    fn exp_series(beta: f64) -> ComplexOperator {
        let gen = pauli()[1].scale(Complex64::new(0.0, -beta / 2.0));
        let mut term = ComplexOperator::identity(2);
        let mut sum = ComplexOperator::identity(2);
        for n in 1..40 {
            term = term.matmul(&gen).scale_real(1.0 / n as f64);
            sum += &term;
        }
        sum
    }

    #[test]
    fn spin_half_about_y_matches_series() {
        for beta in [0.3, 1.1, 2.9, -2.0] {
            let u = spin_rep(Spin::HALF, &RotationElement::ry(beta)).unwrap();
            let series = exp_series(beta);
            assert!((&u - &series).max_abs() < 1e-14, "beta = {beta}");
            let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
            let want = ComplexOperator::from_real_rows(&[&[c, -s], &[s, c]]).unwrap();
            assert!((&u - &want).max_abs() < 1e-15);
        }
    }

    #[test]
    fn spin_one_cartesian_rz_pi() {
        let r = spin_rep(Spin::ONE, &RotationElement::rz(PI)).unwrap();
        assert!((&r - &ComplexOperator::real_diagonal(&[-1.0, -1.0, 1.0])).max_abs() < 1e-15);
    }

    #[test]
    fn unsupported_spin() {
        let err = spin_rep(Spin(3), &RotationElement::identity()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedSpin { two_j: 3 }));
    }

    #[test]
    fn spherical_rz_is_diagonal_phases() {
        let theta = 0.7;
        let d = spin_one_matrix(SpinBasis::Spherical, &RotationElement::rz(theta));
        let want = ComplexOperator::diagonal(&[
            Complex64::from_polar(1.0, -theta),
            ONE,
            Complex64::from_polar(1.0, theta),
        ]);
        assert!((&d - &want).max_abs() < 1e-15);
    }

    #[test]
    fn spins_are_unitary() {
        for g in haar_sample(9, 50) {
            assert!(su2_matrix(&g).unitarity_defect() < 1e-12);
            for basis in [SpinBasis::Cartesian, SpinBasis::Spherical] {
                assert!(spin_one_matrix(basis, &g).unitarity_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn measured_multiplier_of_double_spin_half() {
        let pp = ProjectiveRep::spin_half().tensor(&ProjectiveRep::spin_half());
        let s = haar_sample(13, 200);
        for pair in s.chunks(2) {
            let m = pp.measured_multiplier(&pair[0], &pair[1]);
            assert!((m - ONE).norm() < 1e-12);
            assert_eq!(pp.cocycle().evaluate(&pair[0], &pair[1]), ONE);
        }
    }

    #[test]
    fn direct_sum_rejects_mismatched_multipliers() {
        let lin = LinearRep::spin_one(SpinBasis::Cartesian);
        assert!(ProjectiveRep::spin_half().direct_sum(lin.as_projective()).is_err());
        let ok = ProjectiveRep::spin_half()
            .direct_sum(&ProjectiveRep::spin_half())
            .unwrap();
        assert_eq!(ok.dim(), 4);
    }
}
