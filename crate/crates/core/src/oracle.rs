//! Brute-force reference path: schoolbook convolution and triangular basis
//! expansion. Nothing here evaluates a polynomial at a matrix; the only input
//! taken from a [`SequencePair`] is its list of polynomials.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linearization::LinTensor;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::sequences::SequencePair;

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    let (a, b) = (f.coeffs(), g.coeffs());
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Polynomial::new(out)
}

/// `target = sum_k coeffs[k] * basis[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    pub target: Polynomial,
    pub basis: Vec<Polynomial>,
    pub coeffs: Vec<Rational>,
}

impl BasisExpansion {
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn reconstruct(&self) -> Polynomial {
        combine(&self.coeffs, &self.basis)
    }
}

/// `sum_k coeffs[k] * basis[k]`
pub fn combine(coeffs: &[Rational], basis: &[Polynomial]) -> Polynomial {
    coeffs
        .iter()
        .zip(basis)
        .fold(Polynomial::zero(), |acc, (c, p)| &acc + &p.scale(c))
}

fn check_basis(basis: &[Polynomial]) -> Result<()> {
    for (k, p) in basis.iter().enumerate() {
        if p.degree() != Some(k) || !p.is_monic() {
            return Err(Error::InvalidBasis(format!(
                "basis element {k} must be monic of degree {k}, got {p}"
            )));
        }
    }
    Ok(())
}

/// Expands `target` in a monic graded basis by peeling off the top coefficient.
pub fn expand_in_basis(target: &Polynomial, basis: &[Polynomial]) -> Result<BasisExpansion> {
    check_basis(basis)?;
    let deg = match target.degree() {
        None => {
            return Ok(BasisExpansion {
                target: target.clone(),
                basis: basis.to_vec(),
                coeffs: Vec::new(),
            })
        }
        Some(d) => d,
    };
    if basis.len() <= deg {
        return Err(Error::InvalidBasis(format!(
            "basis has {} elements, target has degree {deg}",
            basis.len()
        )));
    }
    let mut rest = target.clone();
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rest.coeff(k);
        if !c.is_zero() {
            rest = &rest - &basis[k].scale(&c);
        }
        coeffs[k] = c;
    }
    debug_assert!(rest.is_zero());
    Ok(BasisExpansion {
        target: target.clone(),
        basis: basis.to_vec(),
        coeffs,
    })
}

/// Linearization coefficients by definition: expand every product `p_n * p_m`
/// back in the `p` basis.
pub fn lin_tensor_oracle(pair: &SequencePair, n_max: usize) -> Result<LinTensor> {
    mixed_tensor_oracle(pair, pair, n_max)
}

/// Mixed coefficients by definition: expand `p_n * p_m` in the `u` basis.
pub fn mixed_tensor_oracle(p: &SequencePair, u: &SequencePair, n_max: usize) -> Result<LinTensor> {
    let required = 2 * n_max + 1;
    for pair in [p, u] {
        if pair.size() < required {
            return Err(Error::window("oracle linearization", required, pair.size()));
        }
    }
    let basis = &u.polys()[..required];
    let mut tensor = LinTensor::zeros(n_max, 2 * n_max);
    for n in 0..=n_max {
        for m in n..=n_max {
            let prod = poly_mul(&p.polys()[n], &p.polys()[m]);
            let exp = expand_in_basis(&prod, basis)?;
            for k in 0..=2 * n_max {
                let c = exp.coeff(k);
                tensor.set(n, m, k, c.clone());
                tensor.set(m, n, k, c);
            }
        }
    }
    Ok(tensor)
}

/// Coefficients of `p_m` in the `u` basis, computed by basis expansion.
pub fn connection_oracle(p: &SequencePair, u: &SequencePair, m_max: usize) -> Result<Vec<Vec<Rational>>> {
    let basis = &u.polys()[..(m_max + 1).min(u.polys().len())];
    (0..=m_max)
        .map(|m| {
            let target = p
                .polys()
                .get(m)
                .ok_or_else(|| Error::window("connection oracle", m_max + 1, p.size()))?;
            let exp = expand_in_basis(target, basis)?;
            Ok((0..=m_max).map(|k| exp.coeff(k)).collect())
        })
        .collect()
}

/// Checks `sum_k d(n,m,k) p_k == p_n * p_m` for every stored `(n, m)`.
pub fn reconstructs_products(tensor: &LinTensor, p: &[Polynomial], basis: &[Polynomial]) -> Option<(usize, usize)> {
    for n in 0..=tensor.n_max() {
        for m in 0..=tensor.n_max() {
            let coeffs: Vec<Rational> = (0..=tensor.k_max()).map(|k| tensor.get(n, m, k).clone()).collect();
            if combine(&coeffs, basis) != poly_mul(&p[n], &p[m]) {
                return Some((n, m));
            }
        }
    }
    None
}
