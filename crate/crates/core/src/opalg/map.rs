//! Linear maps between matrix algebras and their complete-positivity
//! certificates.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::operator::{ComplexOperator, ZERO};
use super::spectrum::min_eigenvalue;
use crate::error::{Error, Result};

/// A rectangular `rows × cols` complex matrix, used for Kraus operators
/// that change dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausOperator {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl KrausOperator {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Invalid("Kraus operator dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::mismatch("kraus entries", rows * cols, entries.len()));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_square(op: &ComplexOperator) -> Self {
        Self {
            rows: op.dim(),
            cols: op.dim(),
            entries: op.entries().to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    /// `K W K†` for a `cols × cols` operator `W`.
    pub fn sandwich(&self, w: &ComplexOperator) -> Result<ComplexOperator> {
        if w.dim() != self.cols {
            return Err(Error::mismatch("kraus input", self.cols, w.dim()));
        }
        let kw: Vec<Complex64> = (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (0..self.cols).map(|k| self.get(i, k) * w.get(k, j)).sum()))
            .collect();
        Ok(ComplexOperator::from_fn(self.rows, |i, j| {
            (0..self.cols)
                .map(|k| kw[i * self.cols + k] * self.get(j, k).conj())
                .sum()
        }))
    }

    /// `K K†`.
    pub fn gram_rows(&self) -> ComplexOperator {
        ComplexOperator::from_fn(self.rows, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * self.get(j, k).conj()).sum()
        })
    }
}

#[derive(Serialize, Deserialize)]
struct KrausRepr {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for KrausOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        KrausRepr {
            rows: self.rows,
            cols: self.cols,
            re: self.entries.iter().map(|z| z.re).collect(),
            im: self.entries.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KrausOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = KrausRepr::deserialize(deserializer)?;
        if repr.re.len() != repr.im.len() {
            return Err(D::Error::custom("re and im lengths differ"));
        }
        let entries = repr
            .re
            .iter()
            .zip(&repr.im)
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        KrausOperator::from_entries(repr.rows, repr.cols, entries).map_err(D::Error::custom)
    }
}

/// A linear map `B(H₁ ⊗ H₂) → B(H_out)` stored as its coefficient tensor
/// over matrix units: `map(W)[p,q] = Σ_{r,s} C[p,q,r,s] · W[r,s]`, where
/// `r`, `s` index the joint input space in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteMap {
    dim_in1: usize,
    dim_in2: usize,
    dim_out: usize,
    coeffs: Vec<Complex64>,
}

impl BipartiteMap {
    pub fn from_coefficients(dim_in1: usize, dim_in2: usize, dim_out: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let din = dim_in1 * dim_in2;
        let expected = dim_out * dim_out * din * din;
        if dim_in1 == 0 || dim_in2 == 0 || dim_out == 0 {
            return Err(Error::Invalid("map dimensions must be positive".into()));
        }
        if coeffs.len() != expected {
            return Err(Error::mismatch("coefficients", expected, coeffs.len()));
        }
        Ok(Self {
            dim_in1,
            dim_in2,
            dim_out,
            coeffs,
        })
    }

    /// Tabulates `f` on the matrix units of the joint input space.
    pub fn from_fn(
        dim_in1: usize,
        dim_in2: usize,
        dim_out: usize,
        mut f: impl FnMut(&ComplexOperator) -> ComplexOperator,
    ) -> Self {
        let din = dim_in1 * dim_in2;
        let mut coeffs = vec![ZERO; dim_out * dim_out * din * din];
        for r in 0..din {
            for s in 0..din {
                let image = f(&ComplexOperator::matrix_unit(din, r, s));
                assert_eq!(image.dim(), dim_out, "map output has wrong dimension");
                for p in 0..dim_out {
                    for q in 0..dim_out {
                        coeffs[((p * dim_out + q) * din + r) * din + s] = image.get(p, q);
                    }
                }
            }
        }
        Self {
            dim_in1,
            dim_in2,
            dim_out,
            coeffs,
        }
    }

    /// `W ↦ Σ_i K_i W K_i†`, each `K_i` of shape `dim_out × (dim_in1·dim_in2)`.
    pub fn from_kraus(dim_in1: usize, dim_in2: usize, kraus: &[KrausOperator]) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::Invalid("at least one Kraus operator is required".into()))?;
        let din = dim_in1 * dim_in2;
        let dout = first.rows();
        for k in kraus {
            if k.cols() != din {
                return Err(Error::mismatch("kraus columns", din, k.cols()));
            }
            if k.rows() != dout {
                return Err(Error::mismatch("kraus rows", dout, k.rows()));
            }
        }
        let mut coeffs = vec![ZERO; dout * dout * din * din];
        for p in 0..dout {
            for q in 0..dout {
                for r in 0..din {
                    for s in 0..din {
                        coeffs[((p * dout + q) * din + r) * din + s] =
                            kraus.iter().map(|k| k.get(p, r) * k.get(q, s).conj()).sum();
                    }
                }
            }
        }
        Self::from_coefficients(dim_in1, dim_in2, dout, coeffs)
    }

    /// The identity map on `B(C^dim)`, viewed as bipartite with a trivial
    /// second factor.
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, 1, dim, |w| w.clone())
    }

    pub fn dim_in1(&self) -> usize {
        self.dim_in1
    }

    pub fn dim_in2(&self) -> usize {
        self.dim_in2
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in1 * self.dim_in2
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    #[inline]
    pub fn coefficient(&self, p: usize, q: usize, r: usize, s: usize) -> Complex64 {
        let din = self.dim_in();
        self.coeffs[((p * self.dim_out + q) * din + r) * din + s]
    }

    pub fn apply(&self, w: &ComplexOperator) -> Result<ComplexOperator> {
        let din = self.dim_in();
        if w.dim() != din {
            return Err(Error::mismatch("map input", din, w.dim()));
        }
        let dout = self.dim_out;
        let src = w.entries();
        Ok(ComplexOperator::from_fn(dout, |p, q| {
            let block = &self.coeffs[(p * dout + q) * din * din..(p * dout + q + 1) * din * din];
            block.iter().zip(src).map(|(c, x)| c * x).sum()
        }))
    }

    /// Evaluates the map on an elementary tensor `X ⊗ Y`.
    pub fn apply_product(&self, x: &ComplexOperator, y: &ComplexOperator) -> Result<ComplexOperator> {
        if x.dim() != self.dim_in1 {
            return Err(Error::mismatch("first input factor", self.dim_in1, x.dim()));
        }
        if y.dim() != self.dim_in2 {
            return Err(Error::mismatch("second input factor", self.dim_in2, y.dim()));
        }
        self.apply(&x.tensor(y))
    }

    /// `(id_ancilla ⊗ map)(W)` for `W` on `C^ancilla ⊗ C^{dim_in}`.
    pub fn apply_with_ancilla(&self, ancilla: usize, w: &ComplexOperator) -> Result<ComplexOperator> {
        let din = self.dim_in();
        let dout = self.dim_out;
        if w.dim() != ancilla * din {
            return Err(Error::mismatch("extended map input", ancilla * din, w.dim()));
        }
        Ok(ComplexOperator::from_fn(ancilla * dout, |row, col| {
            let (a, p) = (row / dout, row % dout);
            let (b, q) = (col / dout, col % dout);
            let mut acc = ZERO;
            for r in 0..din {
                for s in 0..din {
                    acc += self.coefficient(p, q, r, s) * w.get(a * din + r, b * din + s);
                }
            }
            acc
        }))
    }

    /// Choi matrix `Σ_{r,s} E_{rs} ⊗ map(E_{rs})`.
    pub fn choi(&self) -> ChoiMatrix {
        let din = self.dim_in();
        let dout = self.dim_out;
        let matrix = ComplexOperator::from_fn(din * dout, |row, col| {
            let (r, p) = (row / dout, row % dout);
            let (s, q) = (col / dout, col % dout);
            self.coefficient(p, q, r, s)
        });
        ChoiMatrix {
            dim_in: din,
            dim_out: dout,
            matrix,
        }
    }
}

/// Choi matrix of a map, blocked as input ⊗ output.
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    pub dim_in: usize,
    pub dim_out: usize,
    pub matrix: ComplexOperator,
}

impl ChoiMatrix {
    pub fn min_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue(&self.matrix)
    }
}

/// Outcome of [`certify_cpu`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CpuCertificate {
    pub cp: bool,
    pub unital: bool,
    pub min_eigenvalue: f64,
    pub unitality_deviation: f64,
}

impl CpuCertificate {
    pub fn passed(&self) -> bool {
        self.cp && self.unital
    }

    /// A single nonnegative defect: `max(−λ_min, ‖map(I) − I‖)`.
    pub fn defect(&self) -> f64 {
        f64::max(-self.min_eigenvalue, 0.0).max(self.unitality_deviation)
    }
}

/// Certifies complete positivity (Choi spectrum) and unitality
/// (`‖map(I⊗I) − I‖` in operator norm).
pub fn certify_cpu(map: &BipartiteMap, tol: f64) -> Result<CpuCertificate> {
    let din = map.dim_in();
    let expected = map.dim_out * map.dim_out * din * din;
    if map.coeffs.len() != expected {
        return Err(Error::mismatch("coefficients", expected, map.coeffs.len()));
    }
    let min_eigenvalue = map.choi().min_eigenvalue()?;
    let image = map.apply(&ComplexOperator::identity(din))?;
    if image.dim() != map.dim_out {
        return Err(Error::mismatch("output", map.dim_out, image.dim()));
    }
    let unitality_deviation = (&image - &ComplexOperator::identity(map.dim_out)).op_norm();
    Ok(CpuCertificate {
        cp: min_eigenvalue >= -tol,
        unital: unitality_deviation <= tol,
        min_eigenvalue,
        unitality_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transpose_map() -> BipartiteMap {
        BipartiteMap::from_fn(2, 1, 2, |w| w.transpose())
    }

    #[test]
    fn identity_is_cpu() {
        let cert = certify_cpu(&BipartiteMap::identity(2), 1e-12).unwrap();
        assert!(cert.cp && cert.unital);
        assert!(cert.min_eigenvalue >= 0.0 - 1e-15);
        assert!(cert.unitality_deviation < 1e-15);
    }

    #[test]
    fn transpose_is_not_cp() {
        let cert = certify_cpu(&transpose_map(), 1e-12).unwrap();
        assert!(!cert.cp);
        assert!(cert.unital);
        assert!((cert.min_eigenvalue + 1.0).abs() < 1e-12);
    }

    #[test]
    fn kraus_and_fn_agree() {
        let k = KrausOperator::from_fn(2, 4, |i, j| Complex64::new((i + 2 * j) as f64, i as f64 - j as f64));
        let via_kraus = BipartiteMap::from_kraus(2, 2, std::slice::from_ref(&k)).unwrap();
        let via_fn = BipartiteMap::from_fn(2, 2, 2, |w| k.sandwich(w).unwrap());
        for (a, b) in via_kraus.coefficients().iter().zip(via_fn.coefficients()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn kraus_rejects_bad_columns() {
        let k = KrausOperator::from_fn(2, 3, |_, _| ZERO);
        let err = BipartiteMap::from_kraus(2, 2, &[k]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { ref axis, expected: 4, found: 3 } if axis == "kraus columns"));
    }

    #[test]
    fn apply_rejects_wrong_factor() {
        let m = BipartiteMap::from_fn(2, 3, 2, |w| ComplexOperator::from_fn(2, |i, j| w.get(i * 3, j * 3)));
        let err = m
            .apply_product(&ComplexOperator::identity(2), &ComplexOperator::identity(2))
            .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { ref axis, .. } if axis == "second input factor"));
    }

    #[test]
    fn coefficients_length_checked() {
        let err = BipartiteMap::from_coefficients(2, 2, 2, vec![ZERO; 10]).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 64,
                found: 10,
                ..
            }
        ));
    }
}
