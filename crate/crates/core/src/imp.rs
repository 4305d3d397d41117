//! Degree-bounded ideal membership: instance -> GF(2) system -> G1 -> G2,
//! then division of the query by G2.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::gf2::{assemble, rref, Gf2Error, Instance, RrefOutcome, RrefSystem};
use crate::grlexconv::{convert, ConvError, TruncatedBasis};
use crate::lexgb::build_g1;
use crate::polycore::{remainder, MonomialOrder, Polynomial, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ImpError {
    #[error("query has degree {degree}, above the bound {d}")]
    DegreeTooHigh { degree: u32, d: u32 },
    #[error("degree bound must be at least 1")]
    InvalidDegree,
    #[error(transparent)]
    Instance(#[from] Gf2Error),
    #[error(transparent)]
    Conversion(#[from] ConvError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpVerdict {
    pub member: bool,
    pub remainder: Polynomial,
    pub basis_size: usize,
    pub infeasible_instance: bool,
}

/// Truncated basis of the ideal of an already-eliminated system.
pub fn basis_for_outcome(outcome: &RrefOutcome, d: u32) -> Result<TruncatedBasis, ImpError> {
    if d == 0 {
        return Err(ImpError::InvalidDegree);
    }
    match outcome {
        RrefOutcome::Infeasible => Ok(TruncatedBasis::unit(d)),
        RrefOutcome::Feasible(sys) => Ok(convert(&build_g1(sys), d)?),
    }
}

pub fn truncated_basis(instance: &Instance, d: u32) -> Result<TruncatedBasis, ImpError> {
    basis_for_outcome(&rref(&assemble(instance)?), d)
}

/// Reduces `f` by an existing basis. The basis elements are already sorted
/// ascending by leading monomial.
pub fn decide_with_basis(basis: &TruncatedBasis, f: &Polynomial) -> Result<ImpVerdict, ImpError> {
    let degree = f.degree();
    if degree > basis.d {
        return Err(ImpError::DegreeTooHigh { degree, d: basis.d });
    }
    let infeasible = basis.is_unit();
    let rem = if infeasible {
        Polynomial::zero()
    } else {
        remainder(f, &basis.elements, MonomialOrder::Grlex)?
    };
    Ok(ImpVerdict {
        member: rem.is_zero(),
        remainder: rem,
        basis_size: basis.elements.len(),
        infeasible_instance: infeasible,
    })
}

pub fn decide(instance: &Instance, f: &Polynomial, d: u32) -> Result<ImpVerdict, ImpError> {
    if d == 0 {
        return Err(ImpError::InvalidDegree);
    }
    let degree = f.degree();
    if degree > d {
        return Err(ImpError::DegreeTooHigh { degree, d });
    }
    decide_with_basis(&truncated_basis(instance, d)?, f)
}

/// Answers repeated queries, converting each `(system, d)` only once.
/// Instances with the same reduced row echelon form share an entry.
/// `None` stands for an infeasible system.
type CacheKey = (Option<RrefSystem>, u32);

#[derive(Debug, Default)]
pub struct MembershipEngine {
    cache: Mutex<HashMap<CacheKey, Arc<TruncatedBasis>>>,
}

impl MembershipEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(&self, instance: &Instance, d: u32) -> Result<Arc<TruncatedBasis>, ImpError> {
        let outcome = rref(&assemble(instance)?);
        let key = (outcome.clone().feasible(), d);
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        // Convert outside the lock; a racing duplicate computes the same value.
        let basis = Arc::new(basis_for_outcome(&outcome, d)?);
        let mut cache = self.cache.lock().expect("cache poisoned");
        Ok(Arc::clone(cache.entry(key).or_insert(basis)))
    }

    pub fn decide(&self, instance: &Instance, f: &Polynomial, d: u32) -> Result<ImpVerdict, ImpError> {
        let degree = f.degree();
        if d > 0 && degree > d {
            return Err(ImpError::DegreeTooHigh { degree, d });
        }
        decide_with_basis(&*self.basis(instance, d)?, f)
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.lock().expect("cache poisoned").len()
    }
}
