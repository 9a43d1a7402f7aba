//! Linearization, mixed linearization and connection coefficients.
//!
//! With `p_n` the sequence of a monic Hessenberg `H`, the coefficients of
//! `p_n p_m = sum_k d(n,m,k) p_k` are read off the matrices `p_m(H)`:
//! `d(n,m,k) = p_m(H)[n][k]`. The same numbers also satisfy a recurrence in
//! `n` driven only by the entries of `H`; both routes are implemented.
//!
//! Truncation: `p_m(H)` is exact on rows `0..T-m`, so a tensor with indices
//! up to `n_max` needs `T >= 2 n_max + 1`. Every entry point here requires
//! `T >= 2 n_max + 2`, one row of margin, and reports the required size when
//! the input is too small.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{SliceJson, TableJson, TensorJson};
use crate::matrix::{row_of_poly_of_matrix, TruncMatrix};
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::sequences::{check_monic_hessenberg, SequencePair};

/// Size needed for tensors with indices up to `n_max`.
pub fn required_size(n_max: usize) -> usize {
    2 * n_max + 2
}

fn require_window(what: &str, have: usize, required: usize) -> Result<()> {
    if have < required {
        return Err(Error::window(what, required, have));
    }
    Ok(())
}

/// `d(n,m,k)` (or `e(n,m,k)`) stored as one `(n_max+1) x (n_max+1)` slice per `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TensorJson", try_from = "TensorJson")]
pub struct LinTensor {
    n_max: usize,
    slices: Vec<Vec<Vec<Rational>>>,
}

impl LinTensor {
    pub fn zeros(n_max: usize, k_max: usize) -> Self {
        LinTensor {
            n_max,
            slices: vec![vec![vec![Rational::zero(); n_max + 1]; n_max + 1]; k_max + 1],
        }
    }

    /// Assembles a tensor from per-`k` slices; every slice must be square of the same size.
    pub fn from_slices(slices: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = slices.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::InvalidArgument("tensor needs at least one non-empty slice".into()));
        }
        for (k, s) in slices.iter().enumerate() {
            if s.len() != dim || s.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidArgument(format!("slice {k} is not {dim}x{dim}")));
            }
        }
        Ok(LinTensor {
            n_max: dim - 1,
            slices,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn k_max(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn get(&self, n: usize, m: usize, k: usize) -> &Rational {
        &self.slices[k][n][m]
    }

    pub(crate) fn set(&mut self, n: usize, m: usize, k: usize, v: Rational) {
        self.slices[k][n][m] = v;
    }

    pub fn slice(&self, k: usize) -> &[Vec<Rational>] {
        &self.slices[k]
    }

    pub fn slices(&self) -> &[Vec<Vec<Rational>>] {
        &self.slices
    }

    fn indices(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.n_max;
        (0..=self.k_max()).flat_map(move |k| (0..=n).flat_map(move |a| (0..=n).map(move |b| (a, b, k))))
    }

    /// First `(n, m, k)` where the two tensors differ, including a shape mismatch
    /// reported at the first index outside the smaller one.
    pub fn first_difference(&self, other: &LinTensor) -> Option<(usize, usize, usize)> {
        if self.n_max != other.n_max || self.k_max() != other.k_max() {
            let n = self.n_max.min(other.n_max) + 1;
            return Some((n, n, self.k_max().min(other.k_max()) + 1));
        }
        self.indices().find(|&(n, m, k)| self.get(n, m, k) != other.get(n, m, k))
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize, usize)> {
        self.indices().find(|&(n, m, k)| self.get(n, m, k) != self.get(m, n, k))
    }

    /// Symmetry, `d = 0` for `n+m < k`, `d = 1` for `n+m = k`, `d(0,m,k) = delta(m,k)`.
    pub fn validate_linearization(&self) -> Result<()> {
        if let Some((n, m, k)) = self.first_asymmetry() {
            return Err(Error::PropertyViolation(format!("d({n},{m},{k}) != d({m},{n},{k})")));
        }
        for (n, m, k) in self.indices() {
            let v = self.get(n, m, k);
            if n + m < k && !v.is_zero() {
                return Err(Error::PropertyViolation(format!("d({n},{m},{k}) = {v} but n+m < k")));
            }
            if n + m == k && !v.is_one() {
                return Err(Error::PropertyViolation(format!("d({n},{m},{k}) = {v} but n+m = k")));
            }
            if n == 0 && (*v != if m == k { Rational::one() } else { Rational::zero() }) {
                return Err(Error::PropertyViolation(format!("d(0,{m},{k}) = {v}, expected delta")));
            }
        }
        Ok(())
    }
}

impl From<LinTensor> for TensorJson {
    fn from(t: LinTensor) -> Self {
        TensorJson {
            n_max: t.n_max,
            slices: t
                .slices
                .into_iter()
                .enumerate()
                .map(|(k, matrix)| SliceJson { k, matrix })
                .collect(),
        }
    }
}

impl TryFrom<TensorJson> for LinTensor {
    type Error = Error;

    fn try_from(j: TensorJson) -> Result<Self> {
        if let Some((pos, s)) = j.slices.iter().enumerate().find(|(i, s)| s.k != *i) {
            return Err(Error::Parse(format!("slice at position {pos} has k = {}", s.k)));
        }
        let t = LinTensor::from_slices(j.slices.into_iter().map(|s| s.matrix).collect())
            .map_err(|e| Error::Parse(e.to_string()))?;
        if t.n_max != j.n_max {
            return Err(Error::Parse(format!("n_max {} does not match slice size", j.n_max)));
        }
        Ok(t)
    }
}

/// Square table with its largest index, serialized as `{"m_max", "matrix"}`.
pub fn table_json(matrix: Vec<Vec<Rational>>) -> TableJson {
    TableJson {
        m_max: matrix.len().saturating_sub(1),
        matrix,
    }
}

/// `p_0(H), ..., p_{n_max}(H)` from `p_{n+1}(H) = H p_n(H) - sum_{j<=n} h[n][j] p_j(H)`.
pub fn pn_matrices(h: &TruncMatrix, n_max: usize) -> Result<Vec<TruncMatrix>> {
    check_monic_hessenberg(h)?;
    let size = h.size();
    let mut mats = vec![TruncMatrix::identity(size)];
    for n in 0..n_max {
        let mut next = h * &mats[n];
        for (j, pj) in mats.iter().enumerate() {
            let hnj = h.get(n, j);
            if !hnj.is_zero() {
                next = &next - &pj.scale(hnj);
            }
        }
        mats.push(next.with_index(-(n as i64) - 1));
    }
    Ok(mats)
}

/// Coefficients of `p_n w` in the `p` basis: row `n` of `w(H)`, of length `n + deg(w) + 1`.
pub fn linearize_with_w(pair: &SequencePair, w: &Polynomial, n: usize) -> Result<Vec<Rational>> {
    let mut row = row_of_poly_of_matrix(w, pair.h(), n)?;
    row.truncate(n + w.degree().unwrap_or(0) + 1);
    Ok(row)
}

/// `d(n,m,k) = p_m(H)[n][k]` for `n, m <= n_max`, `k <= 2 n_max`.
pub fn lin_tensor_direct(pair: &SequencePair, n_max: usize) -> Result<LinTensor> {
    require_window("linearization tensor", pair.size(), required_size(n_max))?;
    let mats = pn_matrices(pair.h(), n_max)?;
    let mut t = LinTensor::zeros(n_max, 2 * n_max);
    for (m, pm) in mats.iter().enumerate() {
        debug_assert!(pm.exact_rows() > n_max);
        for n in 0..=n_max {
            for k in 0..=2 * n_max {
                t.set(n, m, k, pm.get(n, k).clone());
            }
        }
    }
    t.validate_linearization()?;
    Ok(t)
}

/// One slice `d(., ., k)` filled row by row in `n` from `d(0,m,k) = delta(m,k)`:
///
/// `d(n+1,m,k) = d(n,m+1,k) + (h[m][m] - h[n][n]) d(n,m,k)
///              + sum_{j<m} h[m][j] d(n,j,k) - sum_{j<n} h[n][j] d(j,m,k)`.
///
/// Row `n` is kept for `m <= 2 n_max - n`, which is what later rows consume.
pub fn lin_tensor_recurrence(h: &TruncMatrix, n_max: usize, k: usize) -> Result<Vec<Vec<Rational>>> {
    require_window("linearization recurrence", h.size(), required_size(n_max))?;
    check_monic_hessenberg(h)?;
    if k > 2 * n_max {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds 2*n_max = {}", 2 * n_max)));
    }
    let width = 2 * n_max;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n_max + 1);
    rows.push(
        (0..=width)
            .map(|m| if m == k { Rational::one() } else { Rational::zero() })
            .collect(),
    );
    for n in 0..n_max {
        let cur = &rows[n];
        let next: Vec<Rational> = (0..width - n)
            .map(|m| {
                let mut v = cur[m + 1].clone();
                let diag = h.get(m, m) - h.get(n, n);
                if !diag.is_zero() {
                    v += diag * &cur[m];
                }
                for (j, c) in cur.iter().enumerate().take(m) {
                    let hmj = h.get(m, j);
                    if !hmj.is_zero() && !c.is_zero() {
                        v += hmj * c;
                    }
                }
                for (j, row_j) in rows.iter().enumerate().take(n) {
                    let hnj = h.get(n, j);
                    if !hnj.is_zero() && !row_j[m].is_zero() {
                        v -= hnj * &row_j[m];
                    }
                }
                v
            })
            .collect();
        rows.push(next);
    }
    let slice: Vec<Vec<Rational>> = rows.iter().map(|r| r[..=n_max].to_vec()).collect();
    for n in 0..=n_max {
        for m in 0..n {
            if slice[n][m] != slice[m][n] {
                return Err(Error::PropertyViolation(format!(
                    "recurrence slice k={k} is not symmetric at ({n},{m})"
                )));
            }
        }
    }
    Ok(slice)
}

/// All slices `k = 0..=2 n_max` by the recurrence.
pub fn lin_tensor_recurrence_all(h: &TruncMatrix, n_max: usize) -> Result<LinTensor> {
    let slices = (0..=2 * n_max)
        .map(|k| lin_tensor_recurrence(h, n_max, k))
        .collect::<Result<Vec<_>>>()?;
    let t = LinTensor::from_slices(slices)?;
    t.validate_linearization()?;
    Ok(t)
}

fn require_same_size(p: &SequencePair, u: &SequencePair) -> Result<()> {
    if p.size() != u.size() {
        return Err(Error::InvalidArgument(format!(
            "mismatched truncation sizes: {} vs {}",
            p.size(),
            u.size()
        )));
    }
    Ok(())
}

/// Row 0 of `p_m(K)` for `m = 0..=m_max`, truncated to `cols` columns.
fn connection_rows(p: &SequencePair, u: &SequencePair, m_max: usize, cols: usize) -> Result<Vec<Vec<Rational>>> {
    (0..=m_max)
        .map(|m| {
            let mut row = row_of_poly_of_matrix(&p.polys()[m], u.h(), 0)?;
            row.truncate(cols);
            Ok(row)
        })
        .collect()
}

/// `e(n,m,k) = sum_j p_n(H)[m][j] p_j(K)[0][k]`, the coefficients of `p_n p_m`
/// in the basis `u_k` of `pair_u`.
pub fn mixed_tensor(pair_p: &SequencePair, pair_u: &SequencePair, n_max: usize) -> Result<LinTensor> {
    require_same_size(pair_p, pair_u)?;
    require_window("mixed linearization tensor", pair_p.size(), required_size(n_max))?;
    let mats = pn_matrices(pair_p.h(), n_max)?;
    let conn = connection_rows(pair_p, pair_u, 2 * n_max, 2 * n_max + 1)?;
    let mut t = LinTensor::zeros(n_max, 2 * n_max);
    for n in 0..=n_max {
        for m in 0..=n_max {
            for (j, cj) in conn.iter().enumerate().take(n + m + 1) {
                let w = mats[n].get(m, j);
                if w.is_zero() {
                    continue;
                }
                for (k, c) in cj.iter().enumerate() {
                    if !c.is_zero() {
                        t.slices[k][n][m] += w * c;
                    }
                }
            }
        }
    }
    if let Some((n, m, k)) = t.first_asymmetry() {
        return Err(Error::PropertyViolation(format!("e({n},{m},{k}) != e({m},{n},{k})")));
    }
    Ok(t)
}

/// `C[m][k] = p_m(K)[0][k]`: `p_m = sum_k C[m][k] u_k`. Unit lower triangular.
pub fn connection_matrix(pair_p: &SequencePair, pair_u: &SequencePair, m_max: usize) -> Result<Vec<Vec<Rational>>> {
    let required = m_max + 2;
    require_window("connection matrix", pair_p.size(), required)?;
    require_window("connection matrix", pair_u.size(), required)?;
    connection_rows(pair_p, pair_u, m_max, m_max + 1)
}

/// Outcome of the inverse-relation check; `first_violation` is `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseCheck {
    pub first_violation: Option<(usize, usize)>,
}

impl InverseCheck {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks `sum_k forward[m][k] backward[k][n] = delta(m,n)`.
pub fn check_inverse_pair(forward: &[Vec<Rational>], backward: &[Vec<Rational>]) -> InverseCheck {
    let dim = forward.len();
    for m in 0..dim {
        for n in 0..dim {
            let s = (0..dim).fold(Rational::zero(), |acc, k| acc + &forward[m][k] * &backward[k][n]);
            let want = if m == n { Rational::one() } else { Rational::zero() };
            if s != want {
                return InverseCheck {
                    first_violation: Some((m, n)),
                };
            }
        }
    }
    InverseCheck { first_violation: None }
}

/// Connection matrices in both directions multiply to the identity.
pub fn verify_inverse_connection(pair_p: &SequencePair, pair_u: &SequencePair, m_max: usize) -> Result<InverseCheck> {
    let forward = connection_matrix(pair_p, pair_u, m_max)?;
    let backward = connection_matrix(pair_u, pair_p, m_max)?;
    Ok(check_inverse_pair(&forward, &backward))
}

/// `Row_m(p_n(H)) = Row_n(p_m(H))` over the first `cols` columns; returns `(n, m)`.
pub fn check_row_identity(mats: &[TruncMatrix], cols: usize) -> Option<(usize, usize)> {
    let n_max = mats.len() - 1;
    for n in 0..=n_max {
        for m in 0..n {
            if mats[n].row(m)[..cols] != mats[m].row(n)[..cols] {
                return Some((n, m));
            }
        }
    }
    None
}

/// `Row_m(p_{n+1}(H)) = sum_{j<=m+1} h[m][j] Row_j(p_n(H)) - sum_{j<=n} h[n][j] Row_m(p_j(H))`
/// for `n + 1, m <= n_max`; returns `(n, m)`.
pub fn check_row_recurrence(h: &TruncMatrix, mats: &[TruncMatrix], cols: usize) -> Option<(usize, usize)> {
    let n_max = mats.len() - 1;
    for n in 0..n_max {
        for m in 0..=n_max {
            let mut rhs = vec![Rational::zero(); cols];
            for j in 0..=m + 1 {
                let hmj = h.get(m, j);
                if hmj.is_zero() {
                    continue;
                }
                for (c, r) in rhs.iter_mut().enumerate() {
                    *r += hmj * mats[n].get(j, c);
                }
            }
            for (j, pj) in mats.iter().enumerate().take(n + 1) {
                let hnj = h.get(n, j);
                if hnj.is_zero() {
                    continue;
                }
                for (c, r) in rhs.iter_mut().enumerate() {
                    *r -= hnj * pj.get(m, c);
                }
            }
            if mats[n + 1].row(m)[..cols] != rhs[..] {
                return Some((n, m));
            }
        }
    }
    None
}
