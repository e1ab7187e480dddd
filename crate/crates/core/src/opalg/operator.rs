//! Dense square complex matrices.
//!
//! Entries are stored row-major. Tensor products use lexicographic site
//! order: the left factor carries the slow index, so
//! `tensor(A, B)[(i*dB + k, j*dB + l)] = A[i, j] * B[k, l]`. Every module in
//! the crate relies on this single convention.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense `dim × dim` complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexOperator {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out.entries[i * dim + i] = ONE;
        }
        out
    }

    /// Builds an operator from row-major entries.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("operator dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::mismatch("entries", dim * dim, entries.len()));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::mismatch(format!("row {i}"), dim, row.len()));
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_entries(dim, entries)
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut out = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            out.entries[i * values.len() + i] = v;
        }
        out
    }

    pub fn real_diagonal(values: &[f64]) -> Self {
        let values: Vec<_> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&values)
    }

    /// The matrix unit `|i><j|`.
    pub fn matrix_unit(dim: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zeros(dim);
        out.entries[i * dim + j] = ONE;
        out
    }

    /// The rank-one operator `|v><w|`.
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Result<Self> {
        if v.len() != w.len() {
            return Err(Error::mismatch("outer product", v.len(), w.len()));
        }
        Ok(Self::from_fn(v.len(), |i, j| v[i] * w[j].conj()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Matrix product; panics on mismatched dimensions.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.entries[k * d..(k + 1) * d];
                let dst = &mut out[i * d..(i + 1) * d];
                for (o, &b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: d, entries: out }
    }

    pub fn try_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::mismatch("matmul", self.dim, rhs.dim));
        }
        Ok(self.matmul(rhs))
    }

    /// `U X U†` with `U = self`.
    pub fn conjugate(&self, x: &Self) -> Self {
        self.matmul(x).matmul(&self.adjoint())
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Kronecker product in lexicographic site order.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let (da, db) = (self.dim, rhs.dim);
        let d = da * db;
        let mut entries = vec![ZERO; d * d];
        for i in 0..da {
            for j in 0..da {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        entries[(i * db + k) * d + (j * db + l)] = a * rhs.get(k, l);
                    }
                }
            }
        }
        Self { dim: d, entries }
    }

    /// `Tr(self · rhs)`, computed without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.dim, rhs.dim, "trace_product dimension mismatch");
        let d = self.dim;
        let mut acc = ZERO;
        for i in 0..d {
            for k in 0..d {
                acc += self.entries[i * d + k] * rhs.entries[k * d + i];
            }
        }
        acc
    }

    /// Hilbert–Schmidt inner product `Tr(self† · rhs)`.
    pub fn hs_inner(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.dim, rhs.dim, "hs_inner dimension mismatch");
        self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Operator (spectral) norm: the largest singular value.
    pub fn op_norm(&self) -> f64 {
        let m = self.to_nalgebra();
        m.singular_values().iter().copied().fold(0.0, f64::max)
    }

    /// Frobenius norm of `self - self†`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let d = self.dim;
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    /// Operator norm of `U†U − I`.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint().matmul(self) - &Self::identity(self.dim)).op_norm()
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.entries)
    }
}

/// Free-function form of [`ComplexOperator::tensor`].
pub fn tensor(a: &ComplexOperator, b: &ComplexOperator) -> ComplexOperator {
    a.tensor(b)
}

/// Tensor product of a nonempty list, left to right.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a ComplexOperator>) -> ComplexOperator {
    let mut iter = factors.into_iter();
    let first = iter.next().expect("tensor_all needs at least one factor").clone();
    iter.fold(first, |acc, f| acc.tensor(f))
}

impl fmt::Debug for ComplexOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexOperator(dim = {})", self.dim)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl Add for &ComplexOperator {
    type Output = ComplexOperator;
    fn add(self, rhs: Self) -> ComplexOperator {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexOperator {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexOperator {
    type Output = ComplexOperator;
    fn sub(self, rhs: Self) -> ComplexOperator {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexOperator {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexOperator {
    type Output = ComplexOperator;
    fn neg(self) -> ComplexOperator {
        self.scale_real(-1.0)
    }
}

impl Mul for &ComplexOperator {
    type Output = ComplexOperator;
    fn mul(self, rhs: Self) -> ComplexOperator {
        self.matmul(rhs)
    }
}

impl AddAssign<&ComplexOperator> for ComplexOperator {
    fn add_assign(&mut self, rhs: &ComplexOperator) {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for ComplexOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorRepr {
            dim: self.dim,
            re: self.entries.iter().map(|z| z.re).collect(),
            im: self.entries.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = OperatorRepr::deserialize(deserializer)?;
        if repr.re.len() != repr.im.len() {
            return Err(D::Error::custom(format!(
                "re has {} entries but im has {}",
                repr.re.len(),
                repr.im.len()
            )));
        }
        let entries = repr
            .re
            .iter()
            .zip(&repr.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        ComplexOperator::from_entries(repr.dim, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let t = tensor(&ComplexOperator::identity(2), &ComplexOperator::identity(3));
        assert_eq!(t, ComplexOperator::identity(6));
    }

    #[test]
    fn tensor_of_projectors() {
        let p = ComplexOperator::real_diagonal(&[1.0, 0.0]);
        let q = ComplexOperator::real_diagonal(&[0.0, 1.0]);
        assert_eq!(tensor(&p, &q), ComplexOperator::real_diagonal(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn tensor_index_layout() {
        let a = ComplexOperator::from_fn(2, |i, j| c((i * 2 + j) as f64 + 1.0, 0.0));
        let b = ComplexOperator::from_fn(3, |k, l| c(0.0, (k * 3 + l) as f64 + 1.0));
        let t = a.tensor(&b);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert_eq!(t.get(i * 3 + k, j * 3 + l), a.get(i, j) * b.get(k, l));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_wrong_entry_count() {
        let err = ComplexOperator::from_entries(2, vec![ZERO; 3]).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 4,
                found: 3,
                ..
            }
        ));
    }

    #[test]
    fn op_norm_of_diagonal() {
        let a = ComplexOperator::diagonal(&[c(0.0, -3.0), c(1.0, 0.0)]);
        assert!((a.op_norm() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn json_shape() {
        let a = ComplexOperator::from_fn(2, |i, j| c(i as f64, j as f64 * 0.5));
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["re"], serde_json::json!([0.0, 0.0, 1.0, 1.0]));
        assert_eq!(v["im"], serde_json::json!([0.0, 0.5, 0.0, 0.5]));
    }

    #[test]
    fn json_rejects_bad_lengths() {
        let bad = r#"{"dim": 2, "re": [1,0,0,1], "im": [0,0,0]}"#;
        assert!(serde_json::from_str::<ComplexOperator>(bad).is_err());
        let bad = r#"{"dim": 2, "re": [1,0,0], "im": [0,0,0]}"#;
        assert!(serde_json::from_str::<ComplexOperator>(bad).is_err());
    }
}
