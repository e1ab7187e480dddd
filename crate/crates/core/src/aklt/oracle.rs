//! Dense multilinear contraction of a word through the coefficient tensors
//! of a triple, by explicit nested sums.

use num_complex::Complex64;

use super::model::AkltModel;
use crate::error::{Error, Result};
use crate::hqmm::{CausalStructure, GenerativeTriple, ObservableWord};
use crate::opalg::ZERO;

/// Longest word the oracle accepts.
pub const ORACLE_MAX_LEN: usize = 8;

/// Site tensor `M[(p,q),(b,b')] = Σ T[p,q,(a,b,c),(a',b',c')] X[a,a'] Y[c,c']`
/// with the composite coefficients summed directly from `E_H` and `E_HO`.
fn site_tensor(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    x: &crate::opalg::ComplexOperator,
    y: &crate::opalg::ComplexOperator,
) -> Vec<Complex64> {
    let d = triple.hidden_dim();
    let m = triple.obs_dim();
    let h = triple.transition();
    let o = triple.emission();
    let mut out = vec![ZERO; d * d * d * d];
    for p in 0..d {
        for q in 0..d {
            for b in 0..d {
                for b2 in 0..d {
                    let mut acc = ZERO;
                    for a in 0..d {
                        for a2 in 0..d {
                            for c in 0..m {
                                for c2 in 0..m {
                                    let w = x.get(a, a2) * y.get(c, c2);
                                    if w == ZERO {
                                        continue;
                                    }
                                    let mut t = ZERO;
                                    for u in 0..d {
                                        for v in 0..d {
                                            t += match structure {
                                                CausalStructure::Conventional => {
                                                    h.coefficient(p, q, u * d + b, v * d + b2)
                                                        * o.coefficient(u, v, a * m + c, a2 * m + c2)
                                                }
                                                CausalStructure::Causal => {
                                                    o.coefficient(p, q, u * m + c, v * m + c2)
                                                        * h.coefficient(u, v, a * d + b, a2 * d + b2)
                                                }
                                            };
                                        }
                                    }
                                    acc += t * w;
                                }
                            }
                        }
                    }
                    out[((p * d + q) * d + b) * d + b2] = acc;
                }
            }
        }
    }
    out
}

fn contract(sites: &[Vec<Complex64>], d: usize, k: usize, p: usize, q: usize) -> Complex64 {
    let mut acc = ZERO;
    for b in 0..d {
        for b2 in 0..d {
            let coeff = sites[k][((p * d + q) * d + b) * d + b2];
            let tail = if k + 1 == sites.len() {
                if b == b2 {
                    Complex64::new(1.0, 0.0)
                } else {
                    ZERO
                }
            } else {
                contract(sites, d, k + 1, b, b2)
            };
            acc += coeff * tail;
        }
    }
    acc
}

/// `Σ_{p,q} φ₀[q,p] · (nested sum over every bond index)` for any triple.
pub fn dense_contraction(
    triple: &GenerativeTriple,
    structure: CausalStructure,
    word: &ObservableWord,
) -> Result<Complex64> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    if word.len() > ORACLE_MAX_LEN {
        return Err(Error::WordTooLong {
            len: word.len(),
            max: ORACLE_MAX_LEN,
        });
    }
    word.validate(triple.hidden_dim(), triple.obs_dim())?;
    let d = triple.hidden_dim();
    let sites: Vec<Vec<Complex64>> = word
        .sites()
        .iter()
        .map(|(x, y)| site_tensor(triple, structure, x, y))
        .collect();
    let rho = triple.phi0();
    let mut total = ZERO;
    for p in 0..d {
        for q in 0..d {
            total += rho.get(q, p) * contract(&sites, d, 0, p, q);
        }
    }
    Ok(total)
}

/// [`dense_contraction`] on a model's triple and structure.
pub fn dense_contraction_oracle(model: &AkltModel, word: &ObservableWord) -> Result<Complex64> {
    dense_contraction(model.triple(), model.structure(), word)
}
