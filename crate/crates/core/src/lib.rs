//! Degree-bounded ideal membership for Boolean constraint problems whose
//! relations are closed under the minority operation (equivalently, affine
//! subspaces of GF(2)^k).
//!
//! The pipeline is `gf2` (constraints to a reduced linear system), `lexgb`
//! (the lex Gröbner basis read off that system), `grlexconv` (conversion to
//! the degree-`d` truncated grlex basis) and `imp` (division of the query).
//! `oracle` holds brute-force checks for small instances.

pub mod gf2;
pub mod grlexconv;
pub mod imp;
pub mod lexgb;
pub mod oracle;
pub mod polycore;

pub use gf2::{parse_instance, Gf2Error, Instance};
pub use grlexconv::{convert, ConvError, TruncatedBasis};
pub use imp::{decide, ImpError, ImpVerdict, MembershipEngine};
pub use lexgb::{build_g1, LexError, StructuredBasisG1};
pub use oracle::OracleError;
pub use polycore::{parse_polynomial, Monomial, MonomialOrder, PolyError, Polynomial, Rational};

/// Any error the library can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Conv(#[from] ConvError),
    #[error(transparent)]
    Imp(#[from] ImpError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
