//! Minority-closed constraints as affine systems over GF(2).

mod bits;
mod instance;
mod relation;
mod system;

pub use bits::BitRow;
pub use instance::{assemble, parse_instance, Constraint, Instance};
pub use relation::{
    affine_closure, check_minority_closed, relation_to_affine, triple_closure, AffineEquation,
    Relation,
};
pub use system::{rref, Gf2Row, Gf2System, RrefOutcome, RrefSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("relation has no tuples")]
    EmptyRelation,
    #[error("relation is not closed under the minority operation")]
    NotMinorityClosed,
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("variable x{var} is outside 1..={n}")]
    ScopeOutOfRange { var: u32, n: usize },
    #[error("instance parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
