//! Truncated generalized lower Hessenberg matrices.
//!
//! An infinite matrix `A` has index `m` when `a[j][k] = 0` for every `j - k < m`.
//! A [`TruncMatrix`] stores the leading `T x T` block of such a matrix together
//! with a declared index and the number of leading rows that are known to agree
//! with the untruncated matrix.
//!
//! Exactness propagates through products: row `i` of `A * B` only reads rows
//! `j <= i - index(A)` of `B`, so when `A` has negative index the product loses
//! `-index(A)` exact rows. Every arithmetic routine here updates `exact_rows`
//! with that rule, so callers can ask a result which part of it is trustworthy.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::MatrixJson;
use crate::polynomial::Polynomial;
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatrixJson", try_from = "MatrixJson")]
pub struct TruncMatrix {
    size: usize,
    index: i64,
    exact_rows: usize,
    entries: Vec<Rational>,
}

impl TruncMatrix {
    pub fn zeros(size: usize, index: i64) -> Self {
        TruncMatrix {
            size,
            index,
            exact_rows: size,
            entries: vec![Rational::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, 0);
        for i in 0..size {
            m.entries[i * size + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), 0);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds a matrix from square row data, checking the declared index.
    pub fn from_rows(rows: Vec<Vec<Rational>>, index: i64) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidArgument("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            for (k, v) in row.iter().enumerate() {
                if (i as i64 - k as i64) < index && !v.is_zero() {
                    return Err(Error::Structure(format!(
                        "entry ({i},{k}) is nonzero but lies above diagonal {index}"
                    )));
                }
            }
            entries.extend(row);
        }
        Ok(TruncMatrix {
            size,
            index,
            exact_rows: size,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Declared index: a lower bound on the first nonzero diagonal.
    pub fn index(&self) -> i64 {
        self.index
    }

    /// Rows `0..exact_rows` coincide with the untruncated matrix.
    pub fn exact_rows(&self) -> usize {
        self.exact_rows
    }

    pub(crate) fn with_exact_rows(mut self, rows: usize) -> Self {
        self.exact_rows = rows.min(self.size);
        self
    }

    pub(crate) fn with_index(mut self, index: i64) -> Self {
        self.index = index;
        self
    }

    pub fn get(&self, i: usize, k: usize) -> &Rational {
        &self.entries[i * self.size + k]
    }

    pub(crate) fn set(&mut self, i: usize, k: usize, v: Rational) {
        self.entries[i * self.size + k] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn column(&self, k: usize) -> Vec<Rational> {
        (0..self.size).map(|i| self.get(i, k).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    /// Leading `rows x cols` block.
    pub fn block(&self, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        (0..rows.min(self.size))
            .map(|i| self.row(i)[..cols.min(self.size)].to_vec())
            .collect()
    }

    /// First nonzero diagonal found by scanning, `None` for the zero matrix.
    pub fn true_index(&self) -> Option<i64> {
        let n = self.size as i64;
        (-(n - 1)..n).find(|&d| {
            (0..self.size).any(|i| {
                let k = i as i64 - d;
                (0..n).contains(&k) && !self.get(i, k as usize).is_zero()
            })
        })
    }

    /// True when every stored entry on the declared index diagonal equals one.
    pub fn is_monic(&self) -> bool {
        let m = self.index;
        (0..self.size).all(|i| {
            let k = i as i64 - m;
            !(0..self.size as i64).contains(&k) || self.get(i, k as usize).is_one()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Compares the leading `rows x cols` blocks; returns the first differing position.
    pub fn first_difference(&self, other: &TruncMatrix, rows: usize, cols: usize) -> Option<(usize, usize)> {
        let rows = rows.min(self.size).min(other.size);
        let cols = cols.min(self.size).min(other.size);
        (0..rows)
            .flat_map(|i| (0..cols).map(move |k| (i, k)))
            .find(|&(i, k)| self.get(i, k) != other.get(i, k))
    }

    pub fn agrees_on(&self, other: &TruncMatrix, rows: usize, cols: usize) -> bool {
        self.first_difference(other, rows, cols).is_none()
    }

    pub fn scale(&self, c: &Rational) -> TruncMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e *= c;
        }
        out
    }

    /// Integer power by repeated multiplication; `pow(0)` is the identity.
    pub fn pow(&self, e: usize) -> TruncMatrix {
        (0..e).fold(TruncMatrix::identity(self.size), |acc, _| &acc * self)
    }

    fn check_same_size(&self, other: &TruncMatrix) -> Result<()> {
        if self.size != other.size {
            return Err(Error::InvalidArgument(format!(
                "size mismatch: {} vs {}",
                self.size, other.size
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &TruncMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> TruncMatrix {
        TruncMatrix {
            size: self.size,
            index: self.index.min(other.index),
            exact_rows: self.exact_rows.min(other.exact_rows),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Display for TruncMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The structural operators used throughout: shift, its transpose, the
/// differentiation matrix and its transpose, identity and `J0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    X,
    Xhat,
    D,
    Dhat,
    I,
    J0,
}

impl Operator {
    pub fn index(self) -> i64 {
        match self {
            Operator::X | Operator::Dhat => -1,
            Operator::Xhat | Operator::D => 1,
            Operator::I | Operator::J0 => 0,
        }
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" => Ok(Operator::X),
            "Xhat" => Ok(Operator::Xhat),
            "D" => Ok(Operator::D),
            "Dhat" => Ok(Operator::Dhat),
            "I" => Ok(Operator::I),
            "J0" => Ok(Operator::J0),
            other => Err(Error::InvalidArgument(format!("unknown operator kind {other:?}"))),
        }
    }
}

pub fn make_operator(kind: Operator, size: usize) -> Result<TruncMatrix> {
    if size == 0 {
        return Err(Error::InvalidArgument("truncation size must be at least 1".into()));
    }
    let mut m = TruncMatrix::zeros(size, kind.index());
    for j in 0..size {
        match kind {
            Operator::X if j + 1 < size => m.set(j, j + 1, Rational::one()),
            Operator::Xhat if j + 1 < size => m.set(j + 1, j, Rational::one()),
            Operator::D if j + 1 < size => m.set(j + 1, j, int(j as i64 + 1)),
            Operator::Dhat if j + 1 < size => m.set(j, j + 1, int(j as i64 + 1)),
            Operator::I => m.set(j, j, Rational::one()),
            Operator::J0 if j > 0 => m.set(j, j, Rational::one()),
            _ => {}
        }
    }
    Ok(m)
}

/// Shorthand for operators at sizes already known to be positive.
pub(crate) fn op(kind: Operator, size: usize) -> TruncMatrix {
    make_operator(kind, size).expect("operator size is positive")
}

pub fn mat_mul(a: &TruncMatrix, b: &TruncMatrix) -> Result<TruncMatrix> {
    a.check_same_size(b)?;
    let n = a.size;
    let mut c = TruncMatrix::zeros(n, a.index + b.index);
    for i in 0..n {
        // a[i][j] can only be nonzero for j <= i - index(a)
        let j_hi = (i as i64 - a.index).min(n as i64 - 1);
        if j_hi < 0 {
            continue;
        }
        for j in 0..=j_hi as usize {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            let k_hi = (j as i64 - b.index).min(n as i64 - 1);
            if k_hi < 0 {
                continue;
            }
            for k in 0..=k_hi as usize {
                let bjk = b.get(j, k);
                if bjk.is_zero() {
                    continue;
                }
                let idx = i * n + k;
                c.entries[idx] += aij * bjk;
            }
        }
    }
    // Row i of the product reads rows up to i - index(a) of b; those beyond the
    // truncation or beyond b's exact rows make row i inexact.
    let loss = (-a.index).max(0) as usize;
    c.exact_rows = a.exact_rows.min(b.exact_rows.saturating_sub(loss));
    Ok(c)
}

pub fn transpose(a: &TruncMatrix) -> TruncMatrix {
    let n = a.size;
    let mut t = TruncMatrix::zeros(n, -a.index);
    for i in 0..n {
        for k in 0..n {
            t.set(k, i, a.get(i, k).clone());
        }
    }
    // Row i of the transpose is column i of `a`, which is exact only if every row is.
    t.exact_rows = if a.exact_rows == n { n } else { 0 };
    t
}

/// Forward substitution for a lower triangular matrix with nonzero diagonal.
/// The inverse of the truncation equals the truncation of the inverse.
pub fn lower_tri_inverse(a: &TruncMatrix) -> Result<TruncMatrix> {
    if a.index < 0 {
        return Err(Error::Structure(format!(
            "triangular inversion needs index >= 0, got {}",
            a.index
        )));
    }
    let n = a.size;
    if let Some(row) = (0..n).find(|&k| a.get(k, k).is_zero()) {
        return Err(Error::NotInvertible { row });
    }
    let mut b = TruncMatrix::zeros(n, 0);
    for col in 0..n {
        b.set(col, col, a.get(col, col).recip());
        for i in col + 1..n {
            let mut s = Rational::zero();
            for j in col..i {
                let aij = a.get(i, j);
                if !aij.is_zero() {
                    s += aij * b.get(j, col);
                }
            }
            b.set(i, col, -s / a.get(i, i));
        }
    }
    b.exact_rows = a.exact_rows;
    Ok(b)
}

/// Declared index of `w(M)`: the smallest `j * index(M)` over nonzero coefficients.
fn poly_index(w: &Polynomial, m: &TruncMatrix) -> i64 {
    w.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, _)| j as i64 * m.index)
        .min()
        .unwrap_or(0)
}

/// Evaluates `w(M)` with Horner's scheme on the truncation.
///
/// For `M` of index `-1` the result is exact on rows `0..=T-1-deg(w)`; the
/// returned matrix carries that in [`TruncMatrix::exact_rows`].
pub fn poly_of_matrix(w: &Polynomial, m: &TruncMatrix) -> TruncMatrix {
    let n = m.size;
    let id = TruncMatrix::identity(n);
    let mut acc = match w.degree() {
        None => return TruncMatrix::zeros(n, 0),
        Some(d) => id.scale(&w.coeffs()[d]),
    };
    for c in w.coeffs().iter().rev().skip(1) {
        acc = &(&acc * m) + &id.scale(c);
    }
    let idx = poly_index(w, m);
    acc.with_index(idx)
}

/// Row `row` of `w(M)`, computed by Horner's scheme on a row vector.
///
/// Needs `row + deg(w) <= T - 1` when `M` has index `-1`; the result has
/// length `T`.
pub fn row_of_poly_of_matrix(w: &Polynomial, m: &TruncMatrix, row: usize) -> Result<Vec<Rational>> {
    let n = m.size;
    let deg = w.degree().unwrap_or(0);
    let reach = (-m.index).max(0) as usize;
    let required = row + deg * reach + 1;
    if required > n {
        return Err(Error::window(
            format!("row {row} of a degree-{deg} polynomial in the matrix"),
            required,
            n,
        ));
    }
    if deg > 0 && row + (deg - 1) * reach >= m.exact_rows {
        return Err(Error::Structure(format!(
            "row {row} of a degree-{deg} polynomial reads past the {} exact rows of the matrix",
            m.exact_rows
        )));
    }
    let unit = |c: &Rational| {
        let mut v = vec![Rational::zero(); n];
        v[row] = c.clone();
        v
    };
    let Some(d) = w.degree() else {
        return Ok(vec![Rational::zero(); n]);
    };
    let mut acc = unit(&w.coeffs()[d]);
    for c in w.coeffs().iter().rev().skip(1) {
        let mut next = vec![Rational::zero(); n];
        for (j, v) in acc.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (k, out) in next.iter_mut().enumerate() {
                let mjk = m.get(j, k);
                if !mjk.is_zero() {
                    *out += v * mjk;
                }
            }
        }
        next[row] += c;
        acc = next;
    }
    Ok(acc)
}

impl Mul for &TruncMatrix {
    type Output = TruncMatrix;

    /// Panics on a size mismatch; use [`mat_mul`] for the checked form.
    fn mul(self, rhs: &TruncMatrix) -> TruncMatrix {
        mat_mul(self, rhs).expect("matrix sizes must agree")
    }
}

impl Add for &TruncMatrix {
    type Output = TruncMatrix;

    fn add(self, rhs: &TruncMatrix) -> TruncMatrix {
        self.check_same_size(rhs).expect("matrix sizes must agree");
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncMatrix {
    type Output = TruncMatrix;

    fn sub(self, rhs: &TruncMatrix) -> TruncMatrix {
        self.check_same_size(rhs).expect("matrix sizes must agree");
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncMatrix {
    type Output = TruncMatrix;

    fn neg(self) -> TruncMatrix {
        self.scale(&-Rational::one())
    }
}
