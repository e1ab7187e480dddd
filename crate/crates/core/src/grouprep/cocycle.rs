//! Two-cocycles, gauge transforms and the commutator pairing.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::rotation::RotationElement;
use crate::error::{Error, Result};

/// Tolerance for deciding that two rotations commute or coincide.
pub const GROUP_TOLERANCE: f64 = 1e-10;

pub type PhaseFn = Arc<dyn Fn(&RotationElement) -> Complex64 + Send + Sync>;
type CocycleFn = Arc<dyn Fn(&RotationElement, &RotationElement) -> Complex64 + Send + Sync>;

/// A U(1)-valued multiplier `ω(g, h)`.
#[derive(Clone)]
pub struct TwoCocycle {
    tag: String,
    eval: CocycleFn,
}

impl TwoCocycle {
    pub fn from_fn(
        tag: impl Into<String>,
        f: impl Fn(&RotationElement, &RotationElement) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            tag: tag.into(),
            eval: Arc::new(f),
        }
    }

    pub fn trivial() -> Self {
        Self::from_fn("trivial", |_, _| Complex64::new(1.0, 0.0))
    }

    /// The ±1 cocycle of the canonical-sign quaternion section.
    pub fn spin_half() -> Self {
        Self::from_fn("canonical-quaternion", |g, h| Complex64::new(cocycle_eval(g, h), 0.0))
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn evaluate(&self, g: &RotationElement, h: &RotationElement) -> Complex64 {
        (self.eval)(g, h)
    }

    /// Pointwise product, the multiplier of a tensor product representation.
    pub fn product(&self, other: &Self) -> Self {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        Self::from_fn(format!("{}*{}", self.tag, other.tag), move |g, h| a(g, h) * b(g, h))
    }

    /// `|ω(g,h)ω(gh,k) − ω(g,hk)ω(h,k)|`.
    pub fn identity_defect(&self, g: &RotationElement, h: &RotationElement, k: &RotationElement) -> f64 {
        let gh = g.compose(h);
        let hk = h.compose(k);
        let lhs = self.evaluate(g, h) * self.evaluate(&gh, k);
        let rhs = self.evaluate(g, &hk) * self.evaluate(h, k);
        (lhs - rhs).norm()
    }

    /// `ω(g,h) / ω(h,g)` for a commuting pair.
    pub fn pairing(&self, g: &RotationElement, h: &RotationElement) -> Result<Complex64> {
        ensure_commuting(g, h)?;
        Ok(self.evaluate(g, h) / self.evaluate(h, g))
    }
}

impl fmt::Debug for TwoCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoCocycle").field("tag", &self.tag).finish()
    }
}

/// `ω(g, h)` for the canonical section: `s(g)s(h) = ω(g,h)·s(gh)`.
pub fn cocycle_eval(g: &RotationElement, h: &RotationElement) -> f64 {
    g.compose_signed(h).1
}

fn commutator_norm(g: &RotationElement, h: &RotationElement) -> f64 {
    let (a, b) = (g.rotation_matrix(), h.rotation_matrix());
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let ab: f64 = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            let ba: f64 = (0..3).map(|k| b[i][k] * a[k][j]).sum();
            acc += (ab - ba).powi(2);
        }
    }
    acc.sqrt()
}

fn ensure_commuting(g: &RotationElement, h: &RotationElement) -> Result<()> {
    if g.compose(h).approx_eq(&h.compose(g), GROUP_TOLERANCE) {
        Ok(())
    } else {
        Err(Error::NonCommuting {
            norm: commutator_norm(g, h),
        })
    }
}

/// Commutator pairing of the spin-½ cocycle.
pub fn commutator_pairing(g: &RotationElement, h: &RotationElement) -> Result<Complex64> {
    TwoCocycle::spin_half().pairing(g, h)
}

/// `ω'(g,h) = λ(g)λ(h)·conj(λ(gh))·ω(g,h)`.
///
/// `probe` lists the elements on which `λ` is required to be unimodular.
pub fn gauge_transform(cocycle: &TwoCocycle, lambda: PhaseFn, probe: &[RotationElement]) -> Result<TwoCocycle> {
    for g in probe {
        let modulus = lambda(g).norm();
        if (modulus - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular { modulus });
        }
    }
    let base = cocycle.eval.clone();
    Ok(TwoCocycle::from_fn(format!("{}~gauged", cocycle.tag), move |g, h| {
        let gh = g.compose(h);
        lambda(g) * lambda(h) * lambda(&gh).conj() * base(g, h)
    }))
}

/// Result of [`detect_nontrivial_class`].
#[derive(Clone, Debug, Serialize)]
pub struct ClassDetection {
    pub nontrivial: bool,
    /// First commuting pair with a nontrivial pairing.
    pub witness: Option<(RotationElement, RotationElement)>,
    pub witness_pairing: Option<Complex64>,
}

fn find_index(elements: &[RotationElement], g: &RotationElement) -> Option<usize> {
    elements.iter().position(|e| e.approx_eq(g, GROUP_TOLERANCE))
}

/// Checks that `subgroup` is closed and abelian.
pub fn validate_abelian_subgroup(subgroup: &[RotationElement]) -> Result<()> {
    if subgroup.is_empty() {
        return Err(Error::Invalid("subgroup must contain at least one element".into()));
    }
    for (i, g) in subgroup.iter().enumerate() {
        for (j, h) in subgroup.iter().enumerate() {
            if find_index(subgroup, &g.compose(h)).is_none() {
                return Err(Error::NotClosed { left: i, right: j });
            }
            if !g.compose(h).approx_eq(&h.compose(g), GROUP_TOLERANCE) {
                return Err(Error::NotAbelian { left: i, right: j });
            }
        }
    }
    Ok(())
}

/// Table `pairing[i][j] = ω(g_i, g_j) / ω(g_j, g_i)` over an abelian subgroup.
pub fn pairing_table(cocycle: &TwoCocycle, subgroup: &[RotationElement]) -> Result<Vec<Vec<Complex64>>> {
    validate_abelian_subgroup(subgroup)?;
    subgroup
        .iter()
        .map(|g| subgroup.iter().map(|h| cocycle.pairing(g, h)).collect())
        .collect()
}

/// Detects a nontrivial class through the gauge-invariant pairing on an
/// abelian subgroup.
pub fn detect_nontrivial_class_with(cocycle: &TwoCocycle, subgroup: &[RotationElement]) -> Result<ClassDetection> {
    let table = pairing_table(cocycle, subgroup)?;
    for (i, row) in table.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if (p - Complex64::new(1.0, 0.0)).norm() > GROUP_TOLERANCE {
                return Ok(ClassDetection {
                    nontrivial: true,
                    witness: Some((subgroup[i], subgroup[j])),
                    witness_pairing: Some(*p),
                });
            }
        }
    }
    Ok(ClassDetection {
        nontrivial: false,
        witness: None,
        witness_pairing: None,
    })
}

/// [`detect_nontrivial_class_with`] for the spin-½ section cocycle.
pub fn detect_nontrivial_class(subgroup: &[RotationElement]) -> Result<ClassDetection> {
    detect_nontrivial_class_with(&TwoCocycle::spin_half(), subgroup)
}

/// The π-rotation subgroup `{e, Rx(π), Ry(π), Rz(π)}`.
pub fn z2_x_z2() -> Vec<RotationElement> {
    use std::f64::consts::PI;
    vec![
        RotationElement::identity(),
        RotationElement::rx(PI),
        RotationElement::ry(PI),
        RotationElement::rz(PI),
    ]
}
