//! Chebyshev, Hermite and Charlier families.
//!
//! Each family is a monic tridiagonal `H` written with the structural operators:
//!
//! | family    | `H`                           | `beta_k` | `alpha_{k+1}` |
//! |-----------|-------------------------------|----------|---------------|
//! | Chebyshev | `a Xhat + b I + X`            | `b`      | `a`           |
//! | Hermite   | `X + b I + a D`               | `b`      | `a (k+1)`     |
//! | Charlier  | `X + X D + (a-1) I + a D`     | `k + a`  | `a (k+1)`     |
//!
//! The closed forms for `p_n(H)`, for the slices `A^(k)` of the linearization
//! tensor and for the series of `P` are evaluated here with the operators
//! alone, so they give an independent route to compare against the generic
//! machinery in [`crate::linearization`] and [`crate::sequences`].

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{op, transpose, Operator, TruncMatrix};
use crate::rational::{binomial, factorial, int, one, pow, zero, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Chebyshev,
    Hermite,
    Charlier,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Chebyshev => "chebyshev",
            Family::Hermite => "hermite",
            Family::Charlier => "charlier",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Family parameters; `b` is unused for Charlier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    family: Family,
    a: Rational,
    b: Rational,
}

impl FamilyParams {
    pub fn new(family: Family, a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroA);
        }
        let b = if family == Family::Charlier { zero() } else { b };
        Ok(FamilyParams { family, a, b })
    }

    pub fn chebyshev(a: Rational, b: Rational) -> Result<Self> {
        Self::new(Family::Chebyshev, a, b)
    }

    pub fn hermite(a: Rational, b: Rational) -> Result<Self> {
        Self::new(Family::Hermite, a, b)
    }

    pub fn charlier(a: Rational) -> Result<Self> {
        Self::new(Family::Charlier, a, zero())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Diagonal entry `beta_k` of `H`.
    pub fn beta(&self, k: usize) -> Rational {
        match self.family {
            Family::Chebyshev | Family::Hermite => self.b.clone(),
            Family::Charlier => int(k as i64) + &self.a,
        }
    }

    /// Subdiagonal entry `alpha_k = H[k][k-1]`, for `k >= 1`.
    pub fn alpha(&self, k: usize) -> Rational {
        match self.family {
            Family::Chebyshev => self.a.clone(),
            Family::Hermite | Family::Charlier => &self.a * int(k as i64),
        }
    }

    /// `d(n,n,0)` as a diagonal: `a^n` for Chebyshev, `n! a^n` otherwise.
    pub fn weight(&self, n: usize) -> Rational {
        match self.family {
            Family::Chebyshev => pow(&self.a, n),
            Family::Hermite | Family::Charlier => factorial(n) * pow(&self.a, n),
        }
    }

    fn require(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(Error::WrongFamily {
                expected: family.name(),
                got: self.family.name(),
            });
        }
        Ok(())
    }
}

/// `H` filled entrywise from `beta_k` and `alpha_k`; exact on the whole truncation.
pub fn family_hessenberg(p: &FamilyParams, size: usize) -> TruncMatrix {
    let mut h = TruncMatrix::zeros(size, -1);
    for k in 0..size {
        h.set(k, k, p.beta(k));
        if k + 1 < size {
            h.set(k, k + 1, one());
            h.set(k + 1, k, p.alpha(k + 1));
        }
    }
    h
}

/// `H` assembled from the operator formula. `X D` loses its last diagonal
/// entry to truncation, so for Charlier only rows `0..T-1` are exact.
pub fn operator_form_h(p: &FamilyParams, size: usize) -> TruncMatrix {
    let x = op(Operator::X, size);
    let id = TruncMatrix::identity(size);
    let d = op(Operator::D, size);
    let a = p.a();
    match p.family {
        Family::Chebyshev => &(&op(Operator::Xhat, size).scale(a) + &id.scale(p.b())) + &x,
        Family::Hermite => &(&x + &id.scale(p.b())) + &d.scale(a),
        Family::Charlier => {
            let xd = &x * &d;
            &(&(&x + &xd) + &id.scale(&(a - one()))) + &d.scale(a)
        }
    }
}

/// `p_n(H)` from its closed form:
///
/// * Chebyshev: `sum_k a^k Xhat^k X^(n-k)`
/// * Hermite: `sum_k C(n,k) a^k D^k X^(n-k)`
/// * Charlier: `sum_k C(n,k) a^k D^k (I + D)^(n-k) X^(n-k)`
///
/// Every factor left of the shift powers is lower triangular, so the result
/// is exact on the whole truncation.
pub fn family_pnh_closed(p: &FamilyParams, n: usize, size: usize) -> Result<TruncMatrix> {
    if p.a.is_zero() {
        return Err(Error::ZeroA);
    }
    if size == 0 {
        return Err(Error::InvalidArgument("truncation size must be at least 1".into()));
    }
    let x = op(Operator::X, size);
    let lower = match p.family {
        Family::Chebyshev => op(Operator::Xhat, size),
        Family::Hermite | Family::Charlier => op(Operator::D, size),
    };
    let i_plus_d = &TruncMatrix::identity(size) + &op(Operator::D, size);
    let mut sum = TruncMatrix::zeros(size, -(n as i64));
    for k in 0..=n {
        let coef = match p.family {
            Family::Chebyshev => pow(&p.a, k),
            _ => binomial(n, k) * pow(&p.a, k),
        };
        let mut term = lower.pow(k);
        if p.family == Family::Charlier {
            term = &term * &i_plus_d.pow(n - k);
        }
        term = &term * &x.pow(n - k);
        sum = &sum + &term.scale(&coef);
    }
    Ok(sum.with_exact_rows(size).with_index(-(n as i64)))
}

/// Slice `A^(k)` of the linearization tensor from its closed form, as an
/// `(n_max+1) x (n_max+1)` table:
///
/// * Chebyshev: `sum_j Xhat^j A X^(k-j)` with `A = Diag(a^n)`
/// * Hermite: `(1/k!) sum_j C(k,j) D^j A Dhat^(k-j)` with `A = Diag(n! a^n)`
/// * Charlier: `(1/k!) sum_j C(k,j) D^j (I+D)^(k-j) A Dhat^(k-j)`
pub fn family_ak_closed(p: &FamilyParams, k: usize, n_max: usize) -> Result<Vec<Vec<Rational>>> {
    if p.a.is_zero() {
        return Err(Error::ZeroA);
    }
    let size = n_max + 1;
    let weights: Vec<Rational> = (0..size).map(|n| p.weight(n)).collect();
    let diag = TruncMatrix::diagonal(&weights);
    let mut sum = TruncMatrix::zeros(size, -(k as i64));
    match p.family {
        Family::Chebyshev => {
            let xhat = op(Operator::Xhat, size);
            let x = op(Operator::X, size);
            for j in 0..=k {
                let term = &(&xhat.pow(j) * &diag) * &x.pow(k - j);
                sum = &sum + &term;
            }
        }
        Family::Hermite | Family::Charlier => {
            let d = op(Operator::D, size);
            let dhat = transpose(&d);
            let i_plus_d = &TruncMatrix::identity(size) + &d;
            for j in 0..=k {
                let mut left = d.pow(j);
                if p.family == Family::Charlier {
                    left = &left * &i_plus_d.pow(k - j);
                }
                let term = &(&left * &diag) * &dhat.pow(k - j);
                sum = &sum + &term.scale(&binomial(k, j));
            }
            sum = sum.scale(&factorial(k).recip());
        }
    }
    Ok(sum.rows())
}

/// `P = sum_k (X - H)^k D^k / k!` for the Chebyshev family, summed until the
/// terms vanish on the truncation (term `k` has index at least `k`).
pub fn cheby_series_p(p: &FamilyParams, size: usize) -> Result<TruncMatrix> {
    p.require(Family::Chebyshev)?;
    let h = family_hessenberg(p, size);
    let x = op(Operator::X, size);
    let d = op(Operator::D, size);
    // X - H = -a Xhat - b I is lower triangular, so its truncated powers are exact.
    let x_minus_h = (&x - &h).with_index(0).with_exact_rows(size);
    let mut sum = TruncMatrix::zeros(size, 0);
    let mut left = TruncMatrix::identity(size);
    let mut right = TruncMatrix::identity(size);
    for k in 0..=size {
        let term = (&left * &right).scale(&factorial(k).recip());
        sum = &sum + &term;
        left = &left * &x_minus_h;
        right = &right * &d;
    }
    Ok(sum.with_index(0))
}

/// Exponential series for the Hermite family:
/// `P = sum_k (1/k!) (-b D - a D^2/2)^k` and `P^{-1}` with the signs flipped.
pub fn hermite_exp_p(p: &FamilyParams, size: usize, inverse: bool) -> Result<TruncMatrix> {
    p.require(Family::Hermite)?;
    let sign = if inverse { one() } else { -one() };
    let d = op(Operator::D, size);
    let gen = &d.scale(&(&sign * p.b())) + &(&d * &d).scale(&(&sign * p.a() / int(2)));
    let mut sum = TruncMatrix::identity(size);
    let mut power = TruncMatrix::identity(size);
    for k in 1..=size {
        power = &power * &gen;
        if power.is_zero() {
            break;
        }
        sum = &sum + &power.scale(&factorial(k).recip());
    }
    Ok(sum.with_index(0))
}
