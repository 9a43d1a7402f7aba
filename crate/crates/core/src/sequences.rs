//! Polynomial sequences attached to a monic lower Hessenberg matrix `H`.
//!
//! For monic `H` of index `-1` there is a unique monic lower triangular `A`
//! with `A H = X A`; its inverse `P` satisfies `H P = P X`, and row `k` of `P`
//! holds the coefficients of the monic polynomial `p_k`. Three constructions
//! are provided: `A` row by row, `P` by the polynomial recurrence, and `P`
//! column by column through a right inverse of `H`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{self, FamilyParams};
use crate::matrix::{lower_tri_inverse, op, Operator, TruncMatrix};
use crate::polynomial::Polynomial;
use crate::rational::{self, Rational};

/// Declarative description of a monic index `-1` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum HSpec {
    /// `H[k][k] = beta[k]`, `H[k+1][k] = alpha[k]` (that is, `alpha_{k+1}`).
    Tridiagonal {
        #[serde(with = "rational::serde_vec")]
        beta: Vec<Rational>,
        #[serde(with = "rational::serde_vec")]
        alpha: Vec<Rational>,
    },
    /// Explicit rows. Entries right of the superdiagonal must be zero and the
    /// superdiagonal entry, when present, must be 1; when absent it is implied.
    Rows {
        #[serde(with = "rational::serde_rows")]
        rows: Vec<Vec<Rational>>,
    },
    Chebyshev {
        #[serde(with = "rational::serde_str")]
        a: Rational,
        #[serde(with = "rational::serde_str", default = "rational::zero")]
        b: Rational,
    },
    Hermite {
        #[serde(with = "rational::serde_str")]
        a: Rational,
        #[serde(with = "rational::serde_str", default = "rational::zero")]
        b: Rational,
    },
    Charlier {
        #[serde(with = "rational::serde_str")]
        a: Rational,
    },
}

impl HSpec {
    pub fn family_params(&self) -> Option<Result<FamilyParams>> {
        match self {
            HSpec::Chebyshev { a, b } => Some(FamilyParams::chebyshev(a.clone(), b.clone())),
            HSpec::Hermite { a, b } => Some(FamilyParams::hermite(a.clone(), b.clone())),
            HSpec::Charlier { a } => Some(FamilyParams::charlier(a.clone())),
            _ => None,
        }
    }

    /// Largest truncation this spec can fill, `None` when unbounded.
    pub fn max_size(&self) -> Option<usize> {
        match self {
            HSpec::Tridiagonal { beta, alpha } => Some(beta.len().min(alpha.len() + 1)),
            HSpec::Rows { rows } => Some(rows.len()),
            _ => None,
        }
    }
}

pub fn realize_h(spec: &HSpec, size: usize) -> Result<TruncMatrix> {
    if size == 0 {
        return Err(Error::InvalidArgument("truncation size must be at least 1".into()));
    }
    match spec {
        HSpec::Tridiagonal { beta, alpha } => {
            if beta.len() < size {
                return Err(Error::SpecTooShort {
                    what: "beta",
                    required: size,
                    got: beta.len(),
                });
            }
            if alpha.len() + 1 < size {
                return Err(Error::SpecTooShort {
                    what: "alpha",
                    required: size - 1,
                    got: alpha.len(),
                });
            }
            let mut h = TruncMatrix::zeros(size, -1);
            for k in 0..size {
                h.set(k, k, beta[k].clone());
                if k + 1 < size {
                    h.set(k, k + 1, Rational::one());
                    h.set(k + 1, k, alpha[k].clone());
                }
            }
            Ok(h)
        }
        HSpec::Rows { rows } => {
            if rows.len() < size {
                return Err(Error::SpecTooShort {
                    what: "rows",
                    required: size,
                    got: rows.len(),
                });
            }
            let mut h = TruncMatrix::zeros(size, -1);
            for (k, row) in rows.iter().take(size).enumerate() {
                if let Some(j) = (k + 2..row.len()).find(|&j| !row[j].is_zero()) {
                    return Err(Error::Structure(format!(
                        "row {k} has a nonzero entry in column {j}, right of the superdiagonal"
                    )));
                }
                if row.get(k + 1).is_some_and(|v| !v.is_one()) {
                    return Err(Error::Structure(format!(
                        "row {k} must have 1 in column {}, the matrix is not monic",
                        k + 1
                    )));
                }
                for (j, v) in row.iter().enumerate().take(k + 1) {
                    h.set(k, j, v.clone());
                }
                if k + 1 < size {
                    h.set(k, k + 1, Rational::one());
                }
            }
            Ok(h)
        }
        _ => {
            let params = spec.family_params().expect("family variant")?;
            Ok(families::family_hessenberg(&params, size))
        }
    }
}

/// Structure check shared by every builder: zero right of the superdiagonal,
/// ones on it.
pub fn check_monic_hessenberg(h: &TruncMatrix) -> Result<()> {
    let n = h.size();
    for i in 0..n {
        if let Some(k) = (i + 2..n).find(|&k| !h.get(i, k).is_zero()) {
            return Err(Error::Structure(format!(
                "entry ({i},{k}) lies right of the superdiagonal; H must have index -1"
            )));
        }
        if i + 1 < n && !h.get(i, i + 1).is_one() {
            return Err(Error::Structure(format!(
                "superdiagonal entry ({i},{}) is {}, H must be monic",
                i + 1,
                h.get(i, i + 1)
            )));
        }
    }
    Ok(())
}

/// Row `k` of `m` read as the coefficient list of a polynomial.
pub fn row_polynomials(m: &TruncMatrix) -> Vec<Polynomial> {
    (0..m.size()).map(|k| Polynomial::new(m.row(k).to_vec())).collect()
}

/// Builds `A` from `A H = X A`: row 0 is `e_0` and each next row is the
/// previous one times `H`.
pub fn build_a_rows(h: &TruncMatrix) -> Result<TruncMatrix> {
    check_monic_hessenberg(h)?;
    let n = h.size();
    let mut a = TruncMatrix::zeros(n, 0);
    a.set(0, 0, Rational::one());
    for j in 0..n - 1 {
        for c in 0..=j + 1 {
            let mut s = Rational::zero();
            for l in c.saturating_sub(1)..=j {
                let (x, y) = (a.get(j, l), h.get(l, c));
                if !x.is_zero() && !y.is_zero() {
                    s += x * y;
                }
            }
            a.set(j + 1, c, s);
        }
    }
    // Row j + 1 reads rows 0..=j of H.
    Ok(a.with_exact_rows(h.exact_rows() + 1))
}

/// `H`, `A`, `P = A^{-1}` and the polynomials `p_k` (rows of `P`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePair {
    h: TruncMatrix,
    a: TruncMatrix,
    p: TruncMatrix,
    polys: Vec<Polynomial>,
}

impl SequencePair {
    pub fn from_spec(spec: &HSpec, size: usize) -> Result<Self> {
        build_p_recurrence(&realize_h(spec, size)?)
    }

    pub fn size(&self) -> usize {
        self.h.size()
    }

    pub fn h(&self) -> &TruncMatrix {
        &self.h
    }

    pub fn a(&self) -> &TruncMatrix {
        &self.a
    }

    pub fn p(&self) -> &TruncMatrix {
        &self.p
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// Checks `A P = P A = I`, and `A H = X A`, `H P = P X` on rows `0..T-1`.
    pub fn verify(&self) -> Result<()> {
        let n = self.size();
        let id = TruncMatrix::identity(n);
        if let Some((i, k)) = (&self.a * &self.p).first_difference(&id, n, n) {
            return Err(Error::PropertyViolation(format!("A*P differs from I at ({i},{k})")));
        }
        if let Some((i, k)) = (&self.p * &self.a).first_difference(&id, n, n) {
            return Err(Error::PropertyViolation(format!("P*A differs from I at ({i},{k})")));
        }
        let x = op(Operator::X, n);
        let rows = n - 1;
        if let Some((i, k)) = (&self.a * &self.h).first_difference(&(&x * &self.a), rows, n) {
            return Err(Error::PropertyViolation(format!("A*H differs from X*A at ({i},{k})")));
        }
        if let Some((i, k)) = (&self.h * &self.p).first_difference(&(&self.p * &x), rows, n) {
            return Err(Error::PropertyViolation(format!("H*P differs from P*X at ({i},{k})")));
        }
        for (k, p) in self.polys.iter().enumerate() {
            if p.degree() != Some(k) || !p.is_monic() {
                return Err(Error::PropertyViolation(format!("p_{k} is not monic of degree {k}")));
            }
        }
        Ok(())
    }
}

/// `p_{k+1} = t p_k - sum_{j<=k} h[k][j] p_j`, starting from `p_0 = 1`.
pub fn build_p_recurrence(h: &TruncMatrix) -> Result<SequencePair> {
    check_monic_hessenberg(h)?;
    let n = h.size();
    let mut polys = vec![Polynomial::one()];
    for k in 0..n - 1 {
        let mut next = polys[k].shift();
        for (j, pj) in polys.iter().enumerate() {
            let hkj = h.get(k, j);
            if !hkj.is_zero() {
                next = &next - &pj.scale(hkj);
            }
        }
        polys.push(next);
    }
    let rows = polys
        .iter()
        .map(|p| (0..n).map(|j| p.coeff(j)).collect())
        .collect();
    let p = TruncMatrix::from_rows(rows, 0)?;
    let a = lower_tri_inverse(&p)?;
    let pair = SequencePair {
        h: h.clone(),
        a,
        p,
        polys,
    };
    pair.verify()?;
    Ok(pair)
}

/// `Y = H Xhat` is monic lower triangular and `Hhat = Xhat Y^{-1}` is a right
/// inverse of `H`.
pub fn build_hhat(h: &TruncMatrix) -> Result<TruncMatrix> {
    check_monic_hessenberg(h)?;
    let n = h.size();
    let xhat = op(Operator::Xhat, n);
    // The truncation drops H[T-1][T], the last superdiagonal one; Y is monic so
    // its last diagonal entry is restored directly.
    let mut y = h * &xhat;
    y.set(n - 1, n - 1, Rational::one());
    let y = y.with_index(0).with_exact_rows(h.exact_rows());
    let y_inv = lower_tri_inverse(&y)?;
    Ok(&xhat * &y_inv)
}

/// Builds `P` column by column from `P Xhat = Hhat P`. Column 0 is column 0 of
/// `-Hhat H` with its top entry replaced by 1.
pub fn build_p_columns(h: &TruncMatrix) -> Result<TruncMatrix> {
    let hhat = build_hhat(h)?;
    let n = h.size();
    let g = &hhat * h;
    let mut col: Vec<Rational> = g.column(0).into_iter().map(|v| -v).collect();
    col[0] = Rational::one();
    let mut p = TruncMatrix::zeros(n, 0);
    for k in 0..n {
        for (i, v) in col.iter().enumerate() {
            p.set(i, k, v.clone());
        }
        col = (0..n)
            .map(|i| {
                let mut s = Rational::zero();
                for (j, v) in col.iter().enumerate().take(i) {
                    let e = hhat.get(i, j);
                    if !e.is_zero() && !v.is_zero() {
                        s += e * v;
                    }
                }
                s
            })
            .collect();
    }
    Ok(p.with_exact_rows(g.exact_rows()))
}

/// Moments `tau(t^k)`: column 0 of `A = P^{-1}`.
pub fn tau_moments(pair: &SequencePair) -> Vec<Rational> {
    pair.a.column(0)
}

/// `tau(q) = sum_j q_j tau(t^j)`.
pub fn tau_apply(moments: &[Rational], q: &Polynomial) -> Result<Rational> {
    if let Some(d) = q.degree() {
        if d >= moments.len() {
            return Err(Error::InsufficientMoments {
                degree: d,
                required: d + 1,
                available: moments.len(),
            });
        }
    }
    Ok(q.coeffs()
        .iter()
        .zip(moments)
        .fold(Rational::zero(), |acc, (c, m)| acc + c * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn poly(c: &[Rational]) -> Polynomial {
        Polynomial::new(c.to_vec())
    }

    fn cheb(a: Rational, b: Rational) -> HSpec {
        HSpec::Chebyshev { a, b }
    }

    fn hermite1() -> HSpec {
        HSpec::Hermite { a: int(1), b: int(0) }
    }

    #[test]
    fn tridiagonal_realization() {
        let spec = HSpec::Tridiagonal {
            beta: vec![int(0); 3],
            alpha: vec![ratio(1, 4); 2],
        };
        let h = realize_h(&spec, 3).unwrap();
        let q = ratio(1, 4);
        let want = vec![
            vec![int(0), int(1), int(0)],
            vec![q.clone(), int(0), int(1)],
            vec![int(0), q, int(0)],
        ];
        assert_eq!(h.rows(), want);
        assert_eq!(h.index(), -1);
    }

    #[test]
    fn short_specs_report_required_length() {
        let spec = HSpec::Tridiagonal {
            beta: vec![int(0); 3],
            alpha: vec![int(1); 2],
        };
        assert_eq!(
            realize_h(&spec, 4).unwrap_err(),
            Error::SpecTooShort { what: "beta", required: 4, got: 3 }
        );
        let rows = HSpec::Rows { rows: vec![vec![int(0)]] };
        assert!(matches!(
            realize_h(&rows, 2),
            Err(Error::SpecTooShort { what: "rows", required: 2, got: 1 })
        ));
    }

    #[test]
    fn charlier_realization() {
        let h = realize_h(&HSpec::Charlier { a: int(1) }, 3).unwrap();
        let want: Vec<Vec<Rational>> = [[1, 1, 0], [1, 2, 1], [0, 2, 3]]
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        assert_eq!(h.rows(), want);
    }

    #[test]
    fn rows_spec_echoes_matrix() {
        let h = realize_h(&HSpec::Hermite { a: ratio(2, 3), b: int(5) }, 6).unwrap();
        let spec = HSpec::Rows { rows: h.rows() };
        assert_eq!(realize_h(&spec, 6).unwrap(), h);
    }

    #[test]
    fn rows_spec_validates_structure() {
        let bad = HSpec::Rows {
            rows: vec![vec![int(0), int(2)], vec![int(0), int(0)]],
        };
        assert!(matches!(realize_h(&bad, 2), Err(Error::Structure(_))));
        let wide = HSpec::Rows {
            rows: vec![vec![int(0), int(1), int(3)], vec![int(0), int(0)]],
        };
        assert!(matches!(realize_h(&wide, 2), Err(Error::Structure(_))));
    }

    #[test]
    fn a_rows_for_shift_is_identity() {
        let x = op(Operator::X, 5);
        assert_eq!(build_a_rows(&x).unwrap(), TruncMatrix::identity(5));
    }

    #[test]
    fn a_rows_chebyshev() {
        let h = realize_h(&cheb(int(1), int(0)), 4).unwrap();
        let a = build_a_rows(&h).unwrap();
        let want: Vec<Vec<Rational>> = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 2, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        assert_eq!(a.rows(), want);
    }

    #[test]
    fn a_rows_rejects_non_monic() {
        let mut h = op(Operator::X, 3);
        h.set(0, 1, int(2));
        assert!(matches!(build_a_rows(&h), Err(Error::Structure(_))));
        assert!(matches!(build_a_rows(&op(Operator::D, 3)), Err(Error::Structure(_))));
    }

    #[test]
    fn recurrence_examples() {
        let pair = build_p_recurrence(&op(Operator::X, 5)).unwrap();
        for (k, p) in pair.polys().iter().enumerate() {
            assert_eq!(p, &Polynomial::monomial(k));
        }
        let pair = SequencePair::from_spec(&cheb(ratio(1, 4), int(0)), 4).unwrap();
        assert_eq!(pair.polys()[2], poly(&[ratio(-1, 4), int(0), int(1)]));
        let pair = SequencePair::from_spec(&hermite1(), 4).unwrap();
        assert_eq!(pair.polys()[3], poly(&[int(0), int(-3), int(0), int(1)]));
    }

    #[test]
    fn recurrence_a_matches_row_construction() {
        let pair = SequencePair::from_spec(&HSpec::Charlier { a: ratio(3, 2) }, 8).unwrap();
        assert_eq!(build_a_rows(pair.h()).unwrap(), *pair.a());
    }

    #[test]
    fn hhat_examples() {
        assert_eq!(build_hhat(&op(Operator::X, 5)).unwrap(), op(Operator::Xhat, 5));
        let h = realize_h(&HSpec::Charlier { a: ratio(-2, 5) }, 7).unwrap();
        let hhat = build_hhat(&h).unwrap();
        let hh = &h * &hhat;
        assert!(hh.agrees_on(&TruncMatrix::identity(7), hh.exact_rows(), 7));
        assert_eq!(hh.exact_rows(), 6);
        let left = &(&hhat * &h) - &TruncMatrix::identity(7);
        for i in 0..7 {
            for k in 1..7 {
                assert!(left.get(i, k).is_zero(), "Hhat*H - I nonzero at ({i},{k})");
            }
        }
    }

    #[test]
    fn p_columns_chebyshev_column_zero() {
        let h = realize_h(&cheb(ratio(1, 4), int(0)), 6).unwrap();
        let p = build_p_columns(&h).unwrap();
        assert_eq!(
            p.column(0)[..5].to_vec(),
            vec![int(1), int(0), ratio(-1, 4), int(0), ratio(1, 16)]
        );
        assert_eq!(p, *build_p_recurrence(&h).unwrap().p());
    }

    #[test]
    fn p_columns_for_shift() {
        assert_eq!(build_p_columns(&op(Operator::X, 4)).unwrap(), TruncMatrix::identity(4));
    }

    #[test]
    fn moments() {
        let pair = build_p_recurrence(&op(Operator::X, 4)).unwrap();
        assert_eq!(tau_moments(&pair), vec![int(1), int(0), int(0), int(0)]);
        let pair = SequencePair::from_spec(&cheb(ratio(1, 4), int(0)), 6).unwrap();
        assert_eq!(tau_moments(&pair)[..5].to_vec(), vec![int(1), int(0), ratio(1, 4), int(0), ratio(1, 8)]);
        let pair = SequencePair::from_spec(&hermite1(), 7).unwrap();
        let want: Vec<Rational> = [1, 0, 1, 0, 3, 0, 15].iter().map(|&v| int(v)).collect();
        assert_eq!(tau_moments(&pair), want);
    }

    #[test]
    fn tau_application() {
        let pair = SequencePair::from_spec(&hermite1(), 8).unwrap();
        let mom = tau_moments(&pair);
        assert_eq!(tau_apply(&mom, &Polynomial::one()).unwrap(), int(1));
        let p = pair.polys();
        assert_eq!(tau_apply(&mom, &(&p[1] * &p[1])).unwrap(), int(1));
        assert_eq!(tau_apply(&mom, &(&p[2] * &p[3])).unwrap(), int(0));
        assert_eq!(
            tau_apply(&mom[..3], &Polynomial::monomial(3)).unwrap_err(),
            Error::InsufficientMoments { degree: 3, required: 4, available: 3 }
        );
    }

    #[test]
    fn shifted_and_multiplied_sequences() {
        let pair = SequencePair::from_spec(&HSpec::Hermite { a: ratio(1, 3), b: int(2) }, 6).unwrap();
        let n = pair.size();
        let x = op(Operator::X, n);
        let u = row_polynomials(pair.a());
        let v = row_polynomials(&(&x * pair.a()));
        for k in 0..n - 1 {
            assert_eq!(v[k], u[k + 1]);
        }
        let w = row_polynomials(&(pair.a() * &x));
        for k in 0..n - 1 {
            assert_eq!(w[k], u[k].shift());
        }
    }

    #[test]
    fn hspec_json_variants() {
        let s = r#"{"type":"chebyshev","a":"1/4","b":"0"}"#;
        assert_eq!(crate::json::from_str::<HSpec>(s).unwrap(), cheb(ratio(1, 4), int(0)));
        let s = r#"{"type":"charlier","a":"1"}"#;
        assert_eq!(crate::json::from_str::<HSpec>(s).unwrap(), HSpec::Charlier { a: int(1) });
        let s = r#"{"type":"tridiagonal","beta":["0","1"],"alpha":["2"]}"#;
        assert!(matches!(crate::json::from_str::<HSpec>(s).unwrap(), HSpec::Tridiagonal { .. }));
        let s = r#"{"type":"rows","rows":[["0","1"],["1","0"]]}"#;
        assert!(matches!(crate::json::from_str::<HSpec>(s).unwrap(), HSpec::Rows { .. }));
        assert!(crate::json::from_str::<HSpec>(r#"{"type":"laguerre","a":"1"}"#).is_err());
    }
}
