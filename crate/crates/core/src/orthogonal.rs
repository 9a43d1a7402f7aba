//! Tridiagonal `H`: orthogonal polynomial sequences.
//!
//! With `H[k][k] = beta_k`, `H[k+1][k] = alpha_{k+1}` and every `alpha_k`
//! nonzero, the sequence satisfies `p_{n+1} = (t - beta_n) p_n - alpha_n p_{n-1}`
//! and is orthogonal for the moment functional `tau(t^k) = P^{-1}[k][0]`,
//! with `tau(p_n p_m) = delta(n,m) alpha_1 ... alpha_n`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linearization::{required_size, LinTensor};
use crate::matrix::TruncMatrix;
use crate::oracle::poly_mul;
use crate::rational::Rational;
use crate::sequences::{
    build_p_recurrence, check_monic_hessenberg, realize_h, tau_apply, tau_moments, HSpec, SequencePair,
};

/// `beta[k] = beta_k` for `k >= 0`, `alpha[k-1] = alpha_k` for `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTermRecurrence {
    beta: Vec<Rational>,
    alpha: Vec<Rational>,
}

impl ThreeTermRecurrence {
    pub fn new(beta: Vec<Rational>, alpha: Vec<Rational>) -> Result<Self> {
        if let Some(i) = alpha.iter().position(Zero::is_zero) {
            return Err(Error::ZeroAlpha { index: i + 1 });
        }
        Ok(ThreeTermRecurrence { beta, alpha })
    }

    /// Accepts tridiagonal specs and the three named families.
    pub fn from_spec(spec: &HSpec, len: usize) -> Result<Self> {
        match spec {
            HSpec::Tridiagonal { beta, alpha } => Self::new(beta.clone(), alpha.clone()),
            HSpec::Rows { .. } => Err(Error::Structure(
                "explicit rows are not a three-term recurrence; use a tridiagonal spec".into(),
            )),
            family => {
                let p = family.family_params().expect("family variant")?;
                Self::new((0..len).map(|k| p.beta(k)).collect(), (1..len).map(|k| p.alpha(k)).collect())
            }
        }
    }

    pub fn beta(&self, k: usize) -> &Rational {
        &self.beta[k]
    }

    /// `alpha_k`, for `k >= 1`.
    pub fn alpha(&self, k: usize) -> &Rational {
        &self.alpha[k - 1]
    }

    pub fn spec(&self) -> HSpec {
        HSpec::Tridiagonal {
            beta: self.beta.clone(),
            alpha: self.alpha.clone(),
        }
    }

    /// `alpha_1 alpha_2 ... alpha_n`
    pub fn alpha_product(&self, n: usize) -> Rational {
        (1..=n).fold(Rational::one(), |acc, k| acc * self.alpha(k))
    }

    fn require_len(&self, beta: usize, alpha: usize) -> Result<()> {
        if self.beta.len() < beta {
            return Err(Error::SpecTooShort {
                what: "beta",
                required: beta,
                got: self.beta.len(),
            });
        }
        if self.alpha.len() < alpha {
            return Err(Error::SpecTooShort {
                what: "alpha",
                required: alpha,
                got: self.alpha.len(),
            });
        }
        Ok(())
    }
}

pub fn op_sequence(r: &ThreeTermRecurrence, size: usize) -> Result<SequencePair> {
    build_p_recurrence(&realize_h(&r.spec(), size)?)
}

/// One slice by the four-term recurrence
/// `d(n+1,m,k) = d(n,m+1,k) + (beta_m - beta_n) d(n,m,k) + alpha_m d(n,m-1,k) - alpha_n d(n-1,m,k)`.
pub fn op_lin_recurrence(r: &ThreeTermRecurrence, n_max: usize, k: usize) -> Result<Vec<Vec<Rational>>> {
    let width = 2 * n_max;
    r.require_len(width.max(1), width.saturating_sub(1))?;
    if k > width {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds 2*n_max = {width}")));
    }
    let mut rows: Vec<Vec<Rational>> = vec![(0..=width)
        .map(|m| if m == k { Rational::one() } else { Rational::zero() })
        .collect()];
    for n in 0..n_max {
        let cur = &rows[n];
        let next: Vec<Rational> = (0..width - n)
            .map(|m| {
                let mut v = cur[m + 1].clone();
                let db = r.beta(m) - r.beta(n);
                if !db.is_zero() {
                    v += db * &cur[m];
                }
                if m > 0 {
                    v += r.alpha(m) * &cur[m - 1];
                }
                if n > 0 {
                    v -= r.alpha(n) * &rows[n - 1][m];
                }
                v
            })
            .collect();
        rows.push(next);
    }
    Ok(rows.iter().map(|row| row[..=n_max].to_vec()).collect())
}

/// `G[n][m] = tau(p_n p_m)` with products formed by convolution.
pub fn orthogonality_table(pair: &SequencePair, n_max: usize) -> Result<Vec<Vec<Rational>>> {
    let required = required_size(n_max);
    if pair.size() < required {
        return Err(Error::WindowExceeded {
            what: "orthogonality table".into(),
            required,
            have: pair.size(),
        });
    }
    let moments = tau_moments(pair);
    let p = pair.polys();
    (0..=n_max)
        .map(|n| (0..=n_max).map(|m| tau_apply(&moments, &poly_mul(&p[n], &p[m]))).collect())
        .collect()
}

/// First index `(n, m, k)` with `k < |n - m|` and `d(n,m,k) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub first_violation: Option<(usize, usize, usize)>,
}

impl SupportReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

pub fn support_check(tensor: &LinTensor) -> SupportReport {
    let n_max = tensor.n_max();
    for n in 0..=n_max {
        for m in 0..=n_max {
            for k in 0..n.abs_diff(m).min(tensor.k_max() + 1) {
                if !tensor.get(n, m, k).is_zero() {
                    return SupportReport {
                        first_violation: Some((n, m, k)),
                    };
                }
            }
        }
    }
    SupportReport { first_violation: None }
}

/// First `(n, m)` with `tau(p_n p_m) != 0` although `m` is past the threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrthogonality {
    pub band: usize,
    pub pairs_checked: usize,
    pub first_violation: Option<(usize, usize)>,
}

impl PartialOrthogonality {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Smallest `m` for which `p_m` must be orthogonal to `p_n` when `H` has
/// nonzero entries only on diagonals `-1..=band-2`: `(band - 2) n + 1`.
pub fn orthogonality_threshold(band: usize, n: usize) -> usize {
    (band - 2) * n + 1
}

/// Checks `tau(p_n p_m) = 0` for `n <= n_max` and
/// `orthogonality_threshold(band, n) <= m <= m_max`.
pub fn partial_orthogonality_check(h: &TruncMatrix, band: usize, n_max: usize, m_max: usize) -> Result<PartialOrthogonality> {
    if band < 3 {
        return Err(Error::InvalidArgument(format!("band must be at least 3, got {band}")));
    }
    check_monic_hessenberg(h)?;
    let size = h.size();
    for i in 0..size {
        if let Some(k) = (0..i).find(|&k| i - k > band - 2 && !h.get(i, k).is_zero()) {
            return Err(Error::Structure(format!(
                "entry ({i},{k}) lies on diagonal {} outside the declared band {band}",
                i - k
            )));
        }
    }
    let required = n_max + m_max + 1;
    if size < required {
        return Err(Error::WindowExceeded {
            what: "partial orthogonality check".into(),
            required,
            have: size,
        });
    }
    let pair = build_p_recurrence(h)?;
    let moments = tau_moments(&pair);
    let p = pair.polys();
    let mut checked = 0;
    for n in 0..=n_max {
        for m in orthogonality_threshold(band, n)..=m_max {
            checked += 1;
            if !tau_apply(&moments, &poly_mul(&p[n], &p[m]))?.is_zero() {
                return Ok(PartialOrthogonality {
                    band,
                    pairs_checked: checked,
                    first_violation: Some((n, m)),
                });
            }
        }
    }
    Ok(PartialOrthogonality {
        band,
        pairs_checked: checked,
        first_violation: None,
    })
}
