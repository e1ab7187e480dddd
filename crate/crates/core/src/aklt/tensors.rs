use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouprep::{pauli, LinearRep, ProjectiveRep, RotationElement, SpinBasis};
use crate::opalg::{BipartiteMap, ComplexOperator, KrausOperator, ONE, ZERO};

/// Which set of bond tensors to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AkltVariant {
    /// `A_a = σ_a/√3` in the Cartesian basis.
    NormalizedCartesian,
    /// The Cartesian set rotated into `(+, 0, −)`.
    NormalizedSpherical,
    /// `A_± = ±(1/√2)` ladder entries and `A_0 = σz/√2`; non-scalar Gram
    /// matrix, kept for diagnostics.
    PaperLiteral,
}

impl AkltVariant {
    pub const ALL: [AkltVariant; 3] = [
        AkltVariant::NormalizedCartesian,
        AkltVariant::NormalizedSpherical,
        AkltVariant::PaperLiteral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AkltVariant::NormalizedCartesian => "normalized-cartesian",
            AkltVariant::NormalizedSpherical => "normalized-spherical",
            AkltVariant::PaperLiteral => "paper-literal",
        }
    }

    pub fn basis(self) -> SpinBasis {
        match self {
            AkltVariant::NormalizedCartesian => SpinBasis::Cartesian,
            AkltVariant::NormalizedSpherical | AkltVariant::PaperLiteral => SpinBasis::Spherical,
        }
    }

    pub fn is_normalized(self) -> bool {
        self != AkltVariant::PaperLiteral
    }
}

impl fmt::Display for AkltVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AkltVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('_', "-");
        AkltVariant::ALL.into_iter().find(|v| v.as_str() == key).ok_or_else(|| {
            Error::Invalid(format!(
                "unknown variant '{s}' (expected normalized-cartesian, normalized-spherical or paper-literal)"
            ))
        })
    }
}

/// Index order of the emission map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmissionOrder {
    /// `Σ ⟨k|Y|k'⟩ A_k X A_{k'}†`, the Kraus form with `B = Σ_k A_k ⊗ ⟨k|`.
    CpConsistent,
    /// `Σ ⟨k'|Y|k⟩ A_k X A_{k'}†`, which transposes `Y` and is not CP.
    Literal,
}

impl EmissionOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            EmissionOrder::CpConsistent => "cp-consistent",
            EmissionOrder::Literal => "literal",
        }
    }
}

/// Three `2 × 2` bond tensors indexed by the physical basis labels.
#[derive(Clone, Debug, PartialEq)]
pub struct AkltTensors {
    variant: AkltVariant,
    tensors: [ComplexOperator; 3],
    signs: [i8; 3],
}

impl AkltTensors {
    pub fn variant(&self) -> AkltVariant {
        self.variant
    }

    pub fn basis(&self) -> SpinBasis {
        self.variant.basis()
    }

    pub fn labels(&self) -> [&'static str; 3] {
        self.basis().labels()
    }

    pub fn tensors(&self) -> &[ComplexOperator; 3] {
        &self.tensors
    }

    pub fn get(&self, k: usize) -> &ComplexOperator {
        &self.tensors[k]
    }

    /// Signs applied to the rotated Cartesian tensors (all `+1` unless a
    /// sign search picked otherwise).
    pub fn signs(&self) -> [i8; 3] {
        self.signs
    }

    /// `G[k,k'] = Tr(A_k A_{k'}†)`.
    pub fn gram(&self) -> ComplexOperator {
        ComplexOperator::from_fn(3, |k, l| self.tensors[k].matmul(&self.tensors[l].adjoint()).trace())
    }

    /// `max(‖Σ A_k A_k† − I‖, ‖Σ A_k† A_k − I‖)`.
    pub fn completeness_defect(&self) -> f64 {
        let mut left = ComplexOperator::zeros(2);
        let mut right = ComplexOperator::zeros(2);
        for a in &self.tensors {
            left += &a.matmul(&a.adjoint());
            right += &a.adjoint().matmul(a);
        }
        let id = ComplexOperator::identity(2);
        (&left - &id).op_norm().max((&right - &id).op_norm())
    }

    /// `B = Σ_k A_k ⊗ ⟨k|` as a `2 × 6` operator on hidden ⊗ physical.
    pub fn kraus(&self) -> KrausOperator {
        KrausOperator::from_fn(2, 6, |i, col| self.tensors[col % 3].get(i, col / 3))
    }
}

/// Columns `e₊ = −(x + iy)/√2`, `e₀ = z`, `e₋ = (x − iy)/√2`: Cartesian
/// coordinates of the spherical basis vectors.
pub fn spherical_basis_change() -> ComplexOperator {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = Complex64::new;
    ComplexOperator::from_entries(
        3,
        vec![
            c(-r, 0.0),
            ZERO,
            c(r, 0.0),
            c(0.0, -r),
            ZERO,
            c(0.0, -r),
            ZERO,
            ONE,
            ZERO,
        ],
    )
    .expect("3x3")
}

fn cartesian_tensors() -> [ComplexOperator; 3] {
    let s = 1.0 / 3f64.sqrt();
    pauli().map(|p| p.scale_real(s))
}

/// `B_k = s_k Σ_a C[a,k] σ_a/√3` for the spherical basis change `C`.
pub fn rotated_tensors(signs: [i8; 3]) -> [ComplexOperator; 3] {
    let c = spherical_basis_change();
    let cart = cartesian_tensors();
    std::array::from_fn(|k| {
        let mut acc = ComplexOperator::zeros(2);
        for (a, t) in cart.iter().enumerate() {
            acc += &t.scale(c.get(a, k));
        }
        acc.scale_real(signs[k] as f64)
    })
}

fn literal_tensors() -> [ComplexOperator; 3] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [
        ComplexOperator::from_real_rows(&[&[0.0, r], &[0.0, 0.0]]).expect("2x2"),
        ComplexOperator::from_real_rows(&[&[r, 0.0], &[0.0, -r]]).expect("2x2"),
        ComplexOperator::from_real_rows(&[&[0.0, 0.0], &[-r, 0.0]]).expect("2x2"),
    ]
}

/// Tensors of a variant. The spherical variant's signs are chosen by
/// [`build_tensors_searched`]; this uses `(+, +, +)`.
pub fn build_tensors(variant: AkltVariant) -> AkltTensors {
    build_tensors_with_signs(variant, [1, 1, 1])
}

/// Tensors with explicit signs on the rotated set; signs are ignored for
/// the other variants.
pub fn build_tensors_with_signs(variant: AkltVariant, signs: [i8; 3]) -> AkltTensors {
    let (tensors, signs) = match variant {
        AkltVariant::NormalizedCartesian => (cartesian_tensors(), [1, 1, 1]),
        AkltVariant::NormalizedSpherical => (rotated_tensors(signs), signs),
        AkltVariant::PaperLiteral => (literal_tensors(), [1, 1, 1]),
    };
    AkltTensors {
        variant,
        tensors,
        signs,
    }
}

/// The spin-1 representation in a physical basis.
pub fn physical_rep(basis: SpinBasis) -> LinearRep {
    LinearRep::spin_one(basis)
}

/// The emission map in the CP-consistent order.
pub fn emission_map(tensors: &AkltTensors) -> BipartiteMap {
    emission_map_with_order(tensors, EmissionOrder::CpConsistent)
}

pub fn emission_map_with_order(tensors: &AkltTensors, order: EmissionOrder) -> BipartiteMap {
    let cp = BipartiteMap::from_kraus(2, 3, &[tensors.kraus()]).expect("kraus shape 2x6");
    match order {
        EmissionOrder::CpConsistent => cp,
        EmissionOrder::Literal => BipartiteMap::from_fn(2, 3, 2, |w| {
            cp.apply(&partial_transpose_second(w, 2, 3)).expect("joint input 6x6")
        }),
    }
}

/// Transpose on the second tensor factor of `W ∈ B(C^d1 ⊗ C^d2)`.
pub fn partial_transpose_second(w: &ComplexOperator, d1: usize, d2: usize) -> ComplexOperator {
    ComplexOperator::from_fn(d1 * d2, |r, s| {
        let (a, c) = (r / d2, r % d2);
        let (b, e) = (s / d2, s % d2);
        w.get(a * d2 + e, b * d2 + c)
    })
}

/// How the spin-1 matrix elements enter the intertwining relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntertwiningConvention {
    /// `Σ_{k'} ρ(g)_{kk'} A_{k'}`
    Direct,
    /// `Σ_{k'} ρ(g⁻¹)_{kk'} A_{k'}`
    Inverse,
    /// `Σ_{k'} ρ(g)_{k'k} A_{k'}`
    Transposed,
}

impl IntertwiningConvention {
    pub const SEARCH_ORDER: [IntertwiningConvention; 3] = [
        IntertwiningConvention::Direct,
        IntertwiningConvention::Inverse,
        IntertwiningConvention::Transposed,
    ];
}

/// `max_k ‖Σ_{k'} M(g)_{kk'} A_{k'} − π(g) A_k π(g)†‖`, with `M(g)` the
/// convention's reading of `ρ(g)`.
pub fn intertwining_residual(
    tensors: &AkltTensors,
    pi: &ProjectiveRep,
    rho: &LinearRep,
    convention: IntertwiningConvention,
    g: &RotationElement,
) -> f64 {
    let m = match convention {
        IntertwiningConvention::Direct => rho.evaluate(g),
        IntertwiningConvention::Inverse => rho.evaluate(&g.inverse()),
        IntertwiningConvention::Transposed => rho.evaluate(g).transpose(),
    };
    let u = pi.evaluate(g);
    (0..3)
        .map(|k| {
            let mut lhs = ComplexOperator::zeros(2);
            for (l, a) in tensors.tensors.iter().enumerate() {
                lhs += &a.scale(m.get(k, l));
            }
            (&lhs - &u.conjugate(&tensors.tensors[k])).op_norm()
        })
        .fold(0.0, f64::max)
}
