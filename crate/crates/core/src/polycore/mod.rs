//! Sparse multivariate polynomials over the rationals.
//!
//! Lex and grlex orders, multivariate division, S-polynomials and a small
//! reference Buchberger used to cross-check the structured algorithms.

mod buchberger;
mod division;
mod monomial;
mod order;
mod parse;
mod polynomial;

pub use buchberger::{
    buchberger, buchberger_with_limits, is_groebner_basis, reduce_basis, BuchbergerLimits,
};
pub use division::{divide, remainder, s_polynomial, Division};
pub use monomial::{monomials_of_degree, Monomial};
pub use order::{compare, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::{int, rat, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("divisor list contains the zero polynomial")]
    ZeroDivisorInBasis,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("polynomial parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
}
