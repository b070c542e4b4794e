//! Exact symbolic computation for quantum tori and generalized quantum
//! cluster algebras.
//!
//! The crate provides, bottom up:
//!
//! - [`qcoeff`]: the coefficient ring of integer Laurent polynomials in
//!   `q^(1/2)`, with the bar involution and the `q = 1` specialization;
//! - [`qtorus`]: quantum torus arithmetic over a skew-symmetric form,
//!   normal ordering, and exact one-sided division;
//! - [`qseed`]: compatible pairs, exchange-matrix and form mutation,
//!   quantum seeds with palindromic coefficient strings, and seed mutation
//!   in any rank;
//! - [`ranktwo`]: the rank-two algebra generated by a bidirectional cluster
//!   recurrence, with Laurent, quasi-commutation, bar-invariance and
//!   standard-monomial-basis verification;
//! - [`random`]: reproducible generators for compatible seeds and rank-two
//!   instances, used by the verification suites.
//!
//! All arithmetic is exact: integer coefficients are arbitrary precision and
//! every operation returns canonical forms, so structural equality is
//! semantic equality.

pub mod error;
pub mod qcoeff;
pub mod qtorus;
pub mod random;
pub mod ranktwo;
pub mod report;
pub mod qseed;

pub use error::{Error, Result};
pub use qcoeff::QLaurent;
pub use qtorus::{ExpVec, SkewMatrix, ToricFrame, TorusElement};
