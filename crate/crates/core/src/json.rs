//! Wire formats.
//!
//! Every struct declares its fields in alphabetical order so that serde emits
//! keys sorted; together with lowest-terms rational strings this makes
//! serialization canonical and byte-for-byte reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::TruncMatrix;
use crate::polynomial::Polynomial;
use crate::rational::{self, Rational};

/// `{"index": m, "rows": [[...]], "size": T}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub index: i64,
    #[serde(with = "rational::serde_rows")]
    pub rows: Vec<Vec<Rational>>,
    pub size: usize,
}

impl From<TruncMatrix> for MatrixJson {
    fn from(m: TruncMatrix) -> Self {
        MatrixJson {
            index: m.index(),
            rows: m.rows(),
            size: m.size(),
        }
    }
}

impl TryFrom<MatrixJson> for TruncMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.rows.len() != j.size {
            return Err(Error::Parse(format!(
                "matrix declares size {} but has {} rows",
                j.size,
                j.rows.len()
            )));
        }
        TruncMatrix::from_rows(j.rows, j.index)
    }
}

/// `{"coeffs": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    #[serde(with = "rational::serde_vec")]
    pub coeffs: Vec<Rational>,
}

impl From<Polynomial> for PolynomialJson {
    fn from(p: Polynomial) -> Self {
        PolynomialJson {
            coeffs: p.coeffs().to_vec(),
        }
    }
}

impl From<PolynomialJson> for Polynomial {
    fn from(j: PolynomialJson) -> Self {
        Polynomial::new(j.coeffs)
    }
}

/// One slice of a coefficient tensor: `{"k": k, "matrix": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceJson {
    pub k: usize,
    #[serde(with = "rational::serde_rows")]
    pub matrix: Vec<Vec<Rational>>,
}

/// `{"n_max": N, "slices": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorJson {
    pub n_max: usize,
    pub slices: Vec<SliceJson>,
}

/// `{"m_max": M, "matrix": [[...]]}`, used for connection matrices and
/// orthogonality tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub m_max: usize,
    #[serde(with = "rational::serde_rows")]
    pub matrix: Vec<Vec<Rational>>,
}

/// Canonical text form: pretty-printed, sorted keys, trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("wire types always serialize");
    s.push('\n');
    s
}

pub fn from_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}
