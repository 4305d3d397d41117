//! Ground truth for small instances: brute-force solution sets, vanishing
//! tests, a Buchberger cross-check of the conversion, and a seeded generator
//! of random feasible XOR instances.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gf2::{assemble, rref, Gf2Error, Instance, RrefOutcome};
use crate::grlexconv::{convert, ConvError};
use crate::lexgb::{build_g1, expand_m, g1_polynomials, BooleanTerm, LexError, DEFAULT_EXPANSION_CAP};
use crate::polycore::{
    buchberger_with_limits, reduce_basis, BuchbergerLimits, Monomial, MonomialOrder, PolyError,
    Polynomial,
};

pub const DEFAULT_ENUMERATION_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} variables exceed the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Instance(#[from] Gf2Error),
    #[error(transparent)]
    Conversion(#[from] ConvError),
    #[error(transparent)]
    Expansion(#[from] LexError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Satisfying assignments; bit `v - 1` of a point is the value of `x_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    n: usize,
    points: Vec<u64>,
}

impl SolutionSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ascending.
    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: u64) -> bool {
        self.points.binary_search(&point).is_ok()
    }

    pub fn value(point: u64, var: u32) -> bool {
        point >> (var - 1) & 1 == 1
    }
}

pub fn enumerate_solutions(instance: &Instance) -> Result<SolutionSet, OracleError> {
    enumerate_solutions_with_cap(instance, DEFAULT_ENUMERATION_CAP)
}

/// Checks every assignment against the constraints directly (tuple tables
/// included), without going through the affine conversion.
pub fn enumerate_solutions_with_cap(instance: &Instance, cap: usize) -> Result<SolutionSet, OracleError> {
    let n = instance.n;
    if n > cap.min(63) {
        return Err(OracleError::TooLarge { n, cap });
    }
    let points: Vec<u64> = (0..1u64 << n)
        .into_par_iter()
        .filter(|&m| instance.is_satisfied_by(|v| SolutionSet::value(m, v)))
        .collect();
    Ok(SolutionSet { n, points })
}

pub fn vanishes(f: &Polynomial, solutions: &SolutionSet) -> bool {
    solutions
        .points
        .iter()
        .all(|&m| f.eval_boolean(|v| SolutionSet::value(m, v)).is_zero())
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub convert_ms: f64,
    pub buchberger_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheckReport {
    #[serde(rename = "match")]
    pub matched: bool,
    /// In the Buchberger truncation but not in the conversion output.
    pub missing: Vec<String>,
    /// In the conversion output but not in the Buchberger truncation.
    pub extra: Vec<String>,
    pub seed: Option<u64>,
    pub timings: Timings,
}

/// Generators whose common 0/1 zeros are the solutions of the instance:
/// one multilinear polynomial per row plus the domain polynomials.
fn row_generators(instance: &Instance, cap: usize) -> Result<Vec<Polynomial>, OracleError> {
    let system = assemble(instance)?;
    let mut out = Vec::new();
    for row in &system.rows {
        out.push(expand_m(&BooleanTerm::new(row.vars(), row.rhs), cap)?);
    }
    for v in 1..=instance.n as u32 {
        out.push(&Polynomial::from(Monomial::from_exponents([(v, 2)])) - &Polynomial::var(v));
    }
    Ok(out)
}

/// Reduced grlex Buchberger basis of the expanded lex basis (or of the row
/// generators when the system is infeasible), truncated at degree `d`.
pub fn reference_basis(instance: &Instance, d: u32, limits: BuchbergerLimits) -> Result<Vec<Polynomial>, OracleError> {
    let generators = match rref(&assemble(instance)?) {
        RrefOutcome::Feasible(sys) => g1_polynomials(&build_g1(&sys), DEFAULT_EXPANSION_CAP)?,
        RrefOutcome::Infeasible => row_generators(instance, DEFAULT_EXPANSION_CAP)?,
    };
    let gb = buchberger_with_limits(&generators, MonomialOrder::Grlex, limits)?;
    Ok(reduce_basis(&gb, MonomialOrder::Grlex)
        .into_iter()
        .filter(|g| g.degree() <= d)
        .collect())
}

pub fn cross_check(instance: &Instance, d: u32) -> Result<CrossCheckReport, OracleError> {
    cross_check_with_limits(instance, d, BuchbergerLimits::default())
}

pub fn cross_check_with_limits(
    instance: &Instance,
    d: u32,
    limits: BuchbergerLimits,
) -> Result<CrossCheckReport, OracleError> {
    let start = Instant::now();
    let converted = match rref(&assemble(instance)?) {
        RrefOutcome::Feasible(sys) => convert(&build_g1(&sys), d)?.elements,
        RrefOutcome::Infeasible => vec![Polynomial::one()],
    };
    let convert_ms = start.elapsed().as_secs_f64() * 1e3;

    let start = Instant::now();
    let reference = reference_basis(instance, d, limits)?;
    let buchberger_ms = start.elapsed().as_secs_f64() * 1e3;

    let missing: Vec<String> = reference
        .iter()
        .filter(|g| !converted.contains(g))
        .map(|g| g.to_string())
        .collect();
    let extra: Vec<String> = converted
        .iter()
        .filter(|g| !reference.contains(g))
        .map(|g| g.to_string())
        .collect();
    Ok(CrossCheckReport {
        matched: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
        seed: None,
        timings: Timings {
            convert_ms,
            buchberger_ms,
        },
    })
}

/// Shape of random XOR instances: `rows` equations over `n` variables, each
/// touching between 1 and `max_support` distinct variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RandomParams {
    pub n: usize,
    pub rows: usize,
    pub max_support: usize,
}

fn random_xor(rng: &mut ChaCha8Rng, params: RandomParams) -> Instance {
    let mut inst = Instance::new(params.n);
    for _ in 0..params.rows {
        let size = rng.gen_range(1..=params.max_support.clamp(1, params.n));
        let vars: Vec<u32> = rand::seq::index::sample(rng, params.n, size)
            .into_iter()
            .map(|i| i as u32 + 1)
            .collect();
        inst = inst.with_xor(&vars, rng.gen());
    }
    inst
}

/// Draws instances until one is feasible. Deterministic in `rng`.
pub fn random_feasible_instance(rng: &mut ChaCha8Rng, params: RandomParams) -> Instance {
    loop {
        let inst = random_xor(rng, params);
        let system = assemble(&inst).expect("generated scopes are in range");
        if rref(&system).is_feasible() {
            return inst;
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{parse_instance, BitRow, Relation};

    fn example() -> Instance {
        Instance::new(5).with_xor(&[1, 3, 4], false).with_xor(&[2, 3, 5], true)
    }

    #[test]
    fn example_solutions() {
        let s = enumerate_solutions(&example()).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.points().iter().all(|&m| example().is_satisfied_by(|v| SolutionSet::value(m, v))));
        assert!(vanishes(&"x5^2 - x5".parse().unwrap(), &s));
        assert!(vanishes(&"x1 - x3 - x4 + 2*x3*x4".parse().unwrap(), &s));
        assert!(!vanishes(&"x1".parse().unwrap(), &s));
    }

    #[test]
    fn infeasible_and_cap() {
        let inst = Instance::new(2).with_xor(&[1], true).with_xor(&[1], false);
        assert!(enumerate_solutions(&inst).unwrap().is_empty());
        assert_eq!(
            enumerate_solutions_with_cap(&Instance::new(5), 4),
            Err(OracleError::TooLarge { n: 5, cap: 4 })
        );
    }

    #[test]
    fn relation_instance_contains_stated_solution() {
        let r1 = Relation::new(
            vec![1, 2, 3],
            ["001", "100", "011", "110"].iter().map(|s| BitRow::from_bitstring(s).unwrap()),
        )
        .unwrap();
        let r2 = Relation::new(vec![1, 3], ["01", "11"].iter().map(|s| BitRow::from_bitstring(s).unwrap())).unwrap();
        let inst = Instance::new(3).with_relation(r1).with_relation(r2);
        let s = enumerate_solutions(&inst).unwrap();
        assert!(s.contains(0b100));
        let parsed = parse_instance(&inst.to_string()).unwrap();
        assert_eq!(enumerate_solutions(&parsed).unwrap(), s);
    }

    #[test]
    fn cross_checks() {
        let rep = cross_check(&example(), 2).unwrap();
        assert!(rep.matched, "{rep:?}");
        assert!(cross_check(&Instance::new(3), 2).unwrap().matched);
        let bad = Instance::new(2).with_xor(&[1, 2], true).with_xor(&[1, 2], false);
        assert!(cross_check(&bad, 2).unwrap().matched);
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["match"], true);
        assert!(json["timings"]["convert_ms"].is_number());
    }

    #[test]
    fn generator_is_deterministic_and_feasible() {
        let params = RandomParams {
            n: 8,
            rows: 6,
            max_support: 4,
        };
        let a = random_feasible_instance(&mut seeded_rng(7), params);
        let b = random_feasible_instance(&mut seeded_rng(7), params);
        assert_eq!(a, b);
        assert!(!enumerate_solutions(&a).unwrap().is_empty());
    }
}
