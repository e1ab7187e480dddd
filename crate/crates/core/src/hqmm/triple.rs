use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opalg::{
    certify_cpu, min_eigenvalue, BipartiteMap, ComplexOperator, CpuCertificate, KrausOperator, DEFAULT_TOLERANCE, ONE,
    ZERO,
};

const STATE_TOLERANCE: f64 = 1e-12;

/// Order in which emission and hidden transition are composed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalStructure {
    /// `T(X ⊗ X' ⊗ Y) = E_H(E_HO(X ⊗ Y) ⊗ X')`
    Conventional,
    /// `T(X ⊗ X' ⊗ Y) = E_HO(E_H(X ⊗ X') ⊗ Y)`
    Causal,
}

impl CausalStructure {
    pub const ALL: [CausalStructure; 2] = [CausalStructure::Conventional, CausalStructure::Causal];

    pub fn as_str(self) -> &'static str {
        match self {
            CausalStructure::Conventional => "conventional",
            CausalStructure::Causal => "causal",
        }
    }
}

impl fmt::Display for CausalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CausalStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conventional" => Ok(CausalStructure::Conventional),
            "causal" => Ok(CausalStructure::Causal),
            other => Err(Error::Invalid(format!(
                "unknown structure '{other}' (expected conventional or causal)"
            ))),
        }
    }
}

/// `(φ₀, E_H, E_HO)`: initial hidden density, hidden transition
/// `B(H ⊗ H) → B(H)` and emission `B(H ⊗ O) → B(H)`.
#[derive(Clone, Debug)]
pub struct GenerativeTriple {
    hidden_dim: usize,
    obs_dim: usize,
    phi0: ComplexOperator,
    e_h: BipartiteMap,
    e_ho: BipartiteMap,
}

impl GenerativeTriple {
    /// Validates dimensions, that `φ₀` is a density operator and that both
    /// maps are CPU at the default tolerance.
    pub fn new(phi0: ComplexOperator, e_h: BipartiteMap, e_ho: BipartiteMap) -> Result<Self> {
        let triple = Self::new_diagnostic(phi0, e_h, e_ho)?;
        let asym = triple.phi0.hermitian_asymmetry();
        if asym > STATE_TOLERANCE {
            return Err(Error::InvalidTriple(format!(
                "phi0 is not Hermitian (asymmetry {asym:.3e})"
            )));
        }
        let trace = triple.phi0.trace();
        if (trace - ONE).norm() > STATE_TOLERANCE {
            return Err(Error::InvalidTriple(format!("phi0 has trace {trace}, expected 1")));
        }
        let lmin = min_eigenvalue(&triple.phi0)?;
        if lmin < -STATE_TOLERANCE {
            return Err(Error::InvalidTriple(format!("phi0 has negative eigenvalue {lmin:.3e}")));
        }
        for (name, map) in [("E_H", &triple.e_h), ("E_HO", &triple.e_ho)] {
            let cert = certify_cpu(map, DEFAULT_TOLERANCE)?;
            if !cert.passed() {
                return Err(Error::InvalidTriple(format!(
                    "{name} is not CPU (min Choi eigenvalue {:.3e}, unitality deviation {:.3e})",
                    cert.min_eigenvalue, cert.unitality_deviation
                )));
            }
        }
        Ok(triple)
    }

    /// Checks dimensions only. Used for deliberately defective variants
    /// that diagnostics need to evaluate.
    pub fn new_diagnostic(phi0: ComplexOperator, e_h: BipartiteMap, e_ho: BipartiteMap) -> Result<Self> {
        let d = phi0.dim();
        let checks = [
            ("E_H.dim_in1", e_h.dim_in1()),
            ("E_H.dim_in2", e_h.dim_in2()),
            ("E_H.dim_out", e_h.dim_out()),
            ("E_HO.dim_in1", e_ho.dim_in1()),
            ("E_HO.dim_out", e_ho.dim_out()),
        ];
        for (axis, found) in checks {
            if found != d {
                return Err(Error::mismatch(axis, d, found));
            }
        }
        Ok(Self {
            hidden_dim: d,
            obs_dim: e_ho.dim_in2(),
            phi0,
            e_h,
            e_ho,
        })
    }

    pub fn hidden_dim(&self) -> usize {
        self.hidden_dim
    }

    pub fn obs_dim(&self) -> usize {
        self.obs_dim
    }

    pub fn phi0(&self) -> &ComplexOperator {
        &self.phi0
    }

    pub fn transition(&self) -> &BipartiteMap {
        &self.e_h
    }

    pub fn emission(&self) -> &BipartiteMap {
        &self.e_ho
    }

    /// `φ₀(Z) = Tr(φ₀ Z)`.
    pub fn initial_value(&self, z: &ComplexOperator) -> num_complex::Complex64 {
        self.phi0.trace_product(z)
    }

    pub fn with_transition(&self, e_h: BipartiteMap) -> Result<Self> {
        Self::new_diagnostic(self.phi0.clone(), e_h, self.e_ho.clone())
    }

    pub fn with_emission(&self, e_ho: BipartiteMap) -> Result<Self> {
        Self::new_diagnostic(self.phi0.clone(), self.e_h.clone(), e_ho)
    }

    pub fn with_initial(&self, phi0: ComplexOperator) -> Result<Self> {
        Self::new_diagnostic(phi0, self.e_h.clone(), self.e_ho.clone())
    }

    /// CPU certificates of `(E_H, E_HO)`.
    pub fn certify(&self, tol: f64) -> Result<(CpuCertificate, CpuCertificate)> {
        Ok((certify_cpu(&self.e_h, tol)?, certify_cpu(&self.e_ho, tol)?))
    }

    /// Diagonal triple realizing a classical hidden Markov model with
    /// initial law `p0`, transition matrix `P[i][j]` and emission matrix
    /// `Q[i][y]`.
    pub fn classical(p0: &[f64], transition: &[Vec<f64>], emission: &[Vec<f64>]) -> Result<Self> {
        let d = p0.len();
        if transition.len() != d {
            return Err(Error::mismatch("transition rows", d, transition.len()));
        }
        if emission.len() != d {
            return Err(Error::mismatch("emission rows", d, emission.len()));
        }
        let m = emission.first().map_or(0, Vec::len);
        for (i, row) in transition.iter().enumerate() {
            if row.len() != d {
                return Err(Error::mismatch(format!("transition row {i}"), d, row.len()));
            }
        }
        for (i, row) in emission.iter().enumerate() {
            if row.len() != m {
                return Err(Error::mismatch(format!("emission row {i}"), m, row.len()));
            }
        }
        let stochastic = |rows: &[Vec<f64>]| {
            rows.iter()
                .all(|r| r.iter().all(|&p| p >= 0.0) && (r.iter().sum::<f64>() - 1.0).abs() < STATE_TOLERANCE)
        };
        if !stochastic(transition) || !stochastic(emission) {
            return Err(Error::InvalidTriple("classical matrices must be row stochastic".into()));
        }
        let diag_kraus = |probs: &[Vec<f64>], width: usize| -> Vec<KrausOperator> {
            let mut ops = Vec::new();
            for (i, row) in probs.iter().enumerate() {
                for (j, &p) in row.iter().enumerate() {
                    if p > 0.0 {
                        let col = i * width + j;
                        ops.push(KrausOperator::from_fn(d, d * width, |r, c| {
                            if r == i && c == col {
                                ONE * p.sqrt()
                            } else {
                                ZERO
                            }
                        }));
                    }
                }
            }
            ops
        };
        let e_h = BipartiteMap::from_kraus(d, d, &diag_kraus(transition, d))?;
        let e_ho = BipartiteMap::from_kraus(d, m, &diag_kraus(emission, m))?;
        Self::new(ComplexOperator::real_diagonal(p0), e_h, e_ho)
    }
}

/// `Z₁ ⊗ Z₂ ↦ Z₁ · Tr(Z₂) / d`, the unital partial trace.
pub fn normalized_partial_trace(dim: usize) -> BipartiteMap {
    partial_trace_with_weight(dim, 1.0 / dim as f64)
}

/// `Z₁ ⊗ Z₂ ↦ Z₁ · Tr(Z₂)`. Not unital; kept for diagnostics.
pub fn unnormalized_partial_trace(dim: usize) -> BipartiteMap {
    partial_trace_with_weight(dim, 1.0)
}

fn partial_trace_with_weight(dim: usize, weight: f64) -> BipartiteMap {
    let s = weight.sqrt();
    let kraus: Vec<KrausOperator> = (0..dim)
        .map(|j| KrausOperator::from_fn(dim, dim * dim, |r, c| if c == r * dim + j { ONE * s } else { ZERO }))
        .collect();
    BipartiteMap::from_kraus(dim, dim, &kraus).expect("partial trace kraus shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::random_operator;
    use crate::sampling::stream_rng;

    #[test]
    fn partial_trace_values() {
        let mut rng = stream_rng(3);
        let e = normalized_partial_trace(2);
        let z1 = random_operator(&mut rng, 2);
        let z2 = random_operator(&mut rng, 2);
        let got = e.apply_product(&z1, &z2).unwrap();
        let want = z1.scale(z2.trace() / 2.0);
        assert!((&got - &want).max_abs() < 1e-15);
        let traceless = ComplexOperator::real_diagonal(&[1.0, -1.0]);
        assert!(e.apply_product(&z1, &traceless).unwrap().max_abs() < 1e-15);
        let cert = certify_cpu(&e, 1e-12).unwrap();
        assert!(cert.passed());
        let literal = certify_cpu(&unnormalized_partial_trace(2), 1e-12).unwrap();
        assert!(literal.cp && !literal.unital);
        assert!((literal.unitality_deviation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triple_rejects_bad_state() {
        let e = normalized_partial_trace(2);
        let emission = BipartiteMap::from_fn(2, 1, 2, |w| w.clone());
        let bad = ComplexOperator::real_diagonal(&[0.7, 0.7]);
        assert!(matches!(
            GenerativeTriple::new(bad, e.clone(), emission.clone()),
            Err(Error::InvalidTriple(_))
        ));
        let neg = ComplexOperator::real_diagonal(&[1.5, -0.5]);
        assert!(GenerativeTriple::new(neg, e, emission).is_err());
    }

    #[test]
    fn triple_rejects_dimension_mismatch() {
        let err = GenerativeTriple::new(
            ComplexOperator::real_diagonal(&[0.5, 0.5]),
            normalized_partial_trace(3),
            BipartiteMap::from_fn(2, 2, 2, |_| ComplexOperator::zeros(2)),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { ref axis, .. } if axis == "E_H.dim_in1"));
    }

    #[test]
    fn classical_rejects_non_stochastic() {
        let err = GenerativeTriple::classical(&[0.5, 0.5], &[vec![0.5, 0.6], vec![1.0, 0.0]], &[vec![1.0], vec![1.0]]);
        assert!(err.is_err());
    }

    #[test]
    fn structure_parse() {
        assert_eq!("causal".parse::<CausalStructure>().unwrap(), CausalStructure::Causal);
        assert!("both".parse::<CausalStructure>().is_err());
        assert_eq!(
            serde_json::to_string(&CausalStructure::Conventional).unwrap(),
            "\"conventional\""
        );
    }
}
