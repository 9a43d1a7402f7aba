//! Exact polynomial sequences from infinite lower Hessenberg matrices.
//!
//! A monic lower Hessenberg matrix `H` (ones on the superdiagonal) determines a
//! unique monic polynomial sequence `p_0, p_1, ...` through `H P = P X`, where
//! `X` is the shift and row `k` of `P` holds the coefficients of `p_k`. This
//! crate builds that sequence over the rationals and computes:
//!
//! * linearization coefficients `p_n p_m = sum_k d(n,m,k) p_k`, both from the
//!   matrices `p_m(H)` and from a recurrence in the entries of `H`;
//! * mixed coefficients of `p_n p_m` in a second basis `u_k`, and connection
//!   coefficients between two sequences;
//! * the moment functional that orthogonalizes tridiagonal sequences;
//! * closed forms for the Chebyshev, Hermite and Charlier families.
//!
//! Infinite matrices are handled through finite truncations that track how
//! many leading rows are exact; see [`matrix`]. The [`oracle`] module expands
//! products by plain polynomial arithmetic and serves as an independent check.

pub mod error;
pub mod families;
pub mod json;
pub mod linearization;
pub mod matrix;
pub mod oracle;
pub mod orthogonal;
pub mod polynomial;
pub mod rational;
pub mod sequences;

pub use error::{Error, Result};
pub use families::{Family, FamilyParams};
pub use linearization::LinTensor;
pub use matrix::{Operator, TruncMatrix};
pub use orthogonal::ThreeTermRecurrence;
pub use polynomial::Polynomial;
pub use rational::Rational;
pub use sequences::{HSpec, SequencePair};
