//! Conversion of the structured lex basis into the degree-`d` truncated
//! reduced grlex basis.
//!
//! Candidate monomials `q` of degree `1..=d` are visited in ascending grlex.
//! The normal form of `q` modulo G1 is a product of XOR functions, expanded as
//! a signed sum of subset XORs ("Boolean terms"). Every term except the
//! longest one (the XOR of all factors) is already the longest term of some
//! earlier record, so it can be rewritten over earlier standard monomials. If
//! the longest term is also known, `q` minus that rewrite lies in the ideal and
//! becomes a basis element; otherwise `q` is a new standard monomial.
//!
//! Each record keeps the solved form of its longest term over standard
//! monomial indices, so rewriting never recurses.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::lexgb::{reduce_monomial, BooleanTerm, StructuredBasisG1};
use crate::polycore::{monomials_of_degree, Monomial, MonomialOrder, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvError {
    #[error("truncation degree must be at least 1")]
    InvalidDegree,
    #[error("Boolean term {0} is not owned by any record")]
    UnownedTerm(BooleanTerm),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// Linear combination of `b_j|G1` over standard-monomial indices. Index 0 is
/// `b_1 = 1`, so its coefficient is the constant part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisCombination {
    coeffs: BTreeMap<usize, Rational>,
}

impl BasisCombination {
    pub fn constant(c: Rational) -> Self {
        let mut out = Self::default();
        out.add(0, c);
        out
    }

    pub fn add(&mut self, index: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(index) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &BasisCombination, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (&j, c) in &other.coeffs {
            self.add(j, c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> BasisCombination {
        let mut out = BasisCombination::default();
        out.add_scaled(self, factor);
        out
    }

    pub fn scalar(&self) -> Rational {
        self.coeff(0)
    }

    pub fn coeff(&self, index: usize) -> Rational {
        self.coeffs.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(index, coefficient)` pairs ascending by index.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&j, c)| (j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `sum(coeff_j * b_j)` as an ordinary polynomial.
    pub fn to_polynomial(&self, standard: &[Monomial]) -> Polynomial {
        Polynomial::from_terms(self.coeffs.iter().map(|(&j, c)| (standard[j].clone(), c.clone())))
    }
}

/// One element `c_i` of the record set:
/// `b_i|G1 = sum_{j<i} linear_part[j] * b_j|G1 + longest_coeff * longest_term`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComboRecord {
    pub index: usize,
    pub b_monomial: Monomial,
    pub linear_part: BasisCombination,
    pub longest_coeff: Rational,
    pub longest_term: BooleanTerm,
    /// The parity-0 form of `longest_term` over indices `<= index`.
    solved: BasisCombination,
}

impl ComboRecord {
    /// Renders the record with `b_j` written as its monomial.
    pub fn describe(&self, standard: &[Monomial]) -> String {
        let linear = self.linear_part.to_polynomial(standard);
        let mut out = if linear.is_zero() {
            String::new()
        } else {
            linear.to_string()
        };
        let c = &self.longest_coeff;
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        let sign = match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out.push_str(sign);
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&self.longest_term.to_string());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `q` became standard monomial number `index` (0-based; `b_1 = 1` is 0).
    AddedToB { index: usize },
    /// `q` is the leading monomial of basis element number `element`.
    AddedToG2 { element: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    /// 1-based count of processed candidates.
    pub iteration: usize,
    pub q: Monomial,
    pub branch: Branch,
}

/// The degree-`d` truncated reduced grlex Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBasis {
    pub d: u32,
    /// Monic, ascending by grlex leading monomial.
    pub elements: Vec<Polynomial>,
    /// Standard monomials of degree `<= d`, ascending, starting with `1`.
    pub standard_monomials: Vec<Monomial>,
}

impl TruncatedBasis {
    /// Basis of the unit ideal (empty solution set).
    pub fn unit(d: u32) -> Self {
        Self {
            d,
            elements: vec![Polynomial::one()],
            standard_monomials: Vec::new(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0] == Polynomial::one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial(MonomialOrder::Grlex).expect("nonzero").clone())
            .collect()
    }
}

pub struct ConversionState {
    d: u32,
    queue: Vec<Monomial>,
    cursor: usize,
    standard: Vec<Monomial>,
    records: Vec<ComboRecord>,
    g2: Vec<Polynomial>,
    lm_g2: HashSet<Monomial>,
    /// Parity-normalized variable set of each longest term -> owning record.
    longest_index: HashMap<Vec<u32>, usize>,
    iterations: usize,
}

/// All monomials of degree `1..=d` in `n` variables, ascending grlex.
pub fn candidate_monomials(n: usize, d: u32) -> Vec<Monomial> {
    (1..=d)
        .flat_map(|k| monomials_of_degree(n as u32, k, MonomialOrder::Grlex))
        .collect()
}

impl ConversionState {
    pub fn new(g1: &StructuredBasisG1, d: u32) -> Result<Self, ConvError> {
        if d == 0 {
            return Err(ConvError::InvalidDegree);
        }
        let one = ComboRecord {
            index: 0,
            b_monomial: Monomial::one(),
            linear_part: BasisCombination::default(),
            longest_coeff: Rational::one(),
            longest_term: BooleanTerm::constant(true),
            // (0) is identically zero.
            solved: BasisCombination::default(),
        };
        let mut longest_index = HashMap::new();
        longest_index.insert(Vec::new(), 0);
        Ok(Self {
            d,
            queue: candidate_monomials(g1.n(), d),
            cursor: 0,
            standard: vec![Monomial::one()],
            records: vec![one],
            g2: Vec::new(),
            lm_g2: HashSet::new(),
            longest_index,
            iterations: 0,
        })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Candidates not yet visited (including ones that will be skipped as
    /// multiples of a leading monomial).
    pub fn remaining(&self) -> &[Monomial] {
        &self.queue[self.cursor..]
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn records(&self) -> &[ComboRecord] {
        &self.records
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.g2
    }

    fn is_multiple_of_leading(&self, q: &Monomial) -> bool {
        !self.lm_g2.is_empty() && q.proper_divisors().iter().any(|m| self.lm_g2.contains(m))
    }

    /// Expresses a Boolean term over the standard monomials via the record
    /// owning it (directly or as its complement).
    pub fn rewrite_term(&self, t: &BooleanTerm) -> Result<BasisCombination, ConvError> {
        let owner = self
            .longest_index
            .get(t.vars())
            .ok_or_else(|| ConvError::UnownedTerm(t.clone()))?;
        let solved = &self.records[*owner].solved;
        if t.parity() {
            let mut out = BasisCombination::constant(Rational::one());
            out.add_scaled(solved, &-Rational::one());
            Ok(out)
        } else {
            Ok(solved.clone())
        }
    }

    /// Processes the next candidate; `None` once the queue is exhausted.
    pub fn step(&mut self, g1: &StructuredBasisG1) -> Result<Option<StepOutcome>, ConvError> {
        let q = loop {
            let Some(q) = self.queue.get(self.cursor).cloned() else {
                return Ok(None);
            };
            self.cursor += 1;
            if !self.is_multiple_of_leading(&q) {
                break q;
            }
        };
        self.iterations += 1;

        let combo = reduce_monomial(&q, g1);
        let longest = g1.longest_term(&q);
        // Work with parity-0 terms: c * (S ^ 1) = c - c * S.
        let mut acc = BasisCombination::constant(combo.scalar);
        let mut longest_coeff = Rational::zero();
        for (t, c) in combo.terms {
            let c = if t.parity() {
                acc.add(0, c.clone());
                -c
            } else {
                c
            };
            if t.vars() == longest.vars() {
                longest_coeff += c;
            } else {
                let owner = self.longest_index.get(t.vars()).ok_or_else(|| {
                    ConvError::InternalInvariantViolation(format!(
                        "non-longest term {t} of {q} has no owning record"
                    ))
                })?;
                acc.add_scaled(&self.records[*owner].solved, &c);
            }
        }

        let owner = self.longest_index.get(longest.vars()).copied();
        let branch = match owner {
            Some(l) => {
                acc.add_scaled(&self.records[l].solved, &longest_coeff);
                self.push_element(&q, &acc)
            }
            None if longest_coeff.is_zero() => self.push_element(&q, &acc),
            None => {
                let index = self.standard.len();
                self.standard.push(q.clone());
                // b_k = lin + a0 * S                       (parity 0)
                // b_k = (lin + a0) - a0 * (S ^ 1)          (parity 1)
                let (mut linear, stored_coeff) = (acc, longest_coeff.clone());
                let stored_coeff = if longest.parity() {
                    linear.add(0, stored_coeff.clone());
                    -stored_coeff
                } else {
                    stored_coeff
                };
                // Solve for the parity-0 term: S = (b_k - acc) / longest_coeff.
                let mut solved = BasisCombination::default();
                solved.add(index, Rational::one());
                let mut base = linear.clone();
                if longest.parity() {
                    base.add(0, -longest_coeff.clone());
                }
                solved.add_scaled(&base, &-Rational::one());
                let solved = solved.scale(&longest_coeff.recip());
                self.longest_index.insert(longest.vars().to_vec(), index);
                self.records.push(ComboRecord {
                    index,
                    b_monomial: q.clone(),
                    linear_part: linear,
                    longest_coeff: stored_coeff,
                    longest_term: longest,
                    solved,
                });
                Branch::AddedToB { index }
            }
        };
        Ok(Some(StepOutcome {
            iteration: self.iterations,
            q,
            branch,
        }))
    }

    fn push_element(&mut self, q: &Monomial, rewrite: &BasisCombination) -> Branch {
        let mut g = Polynomial::from(q.clone());
        for (j, c) in rewrite.iter() {
            g.add_term(self.standard[j].clone(), -c.clone());
        }
        self.g2.push(g);
        self.lm_g2.insert(q.clone());
        Branch::AddedToG2 {
            element: self.g2.len() - 1,
        }
    }

    pub fn finish(self) -> TruncatedBasis {
        TruncatedBasis {
            d: self.d,
            elements: self.g2,
            standard_monomials: self.standard,
        }
    }

    /// One trace line: iteration, candidate, branch, and the new record or
    /// basis element, tab separated.
    pub fn describe(&self, outcome: &StepOutcome) -> String {
        match outcome.branch {
            Branch::AddedToB { index } => format!(
                "{}\t{}\tB\tc{} = {}",
                outcome.iteration,
                outcome.q,
                index + 1,
                self.records[index].describe(&self.standard)
            ),
            Branch::AddedToG2 { element } => format!(
                "{}\t{}\tG2\t{}",
                outcome.iteration, outcome.q, self.g2[element]
            ),
        }
    }
}

impl fmt::Debug for ConversionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConversionState")
            .field("d", &self.d)
            .field("remaining", &(self.queue.len() - self.cursor))
            .field("standard", &self.standard)
            .field("elements", &self.g2)
            .finish()
    }
}

pub fn convert(g1: &StructuredBasisG1, d: u32) -> Result<TruncatedBasis, ConvError> {
    let mut state = ConversionState::new(g1, d)?;
    while state.step(g1)?.is_some() {}
    Ok(state.finish())
}

/// Runs the conversion and returns the trace lines alongside the basis.
pub fn convert_with_trace(
    g1: &StructuredBasisG1,
    d: u32,
) -> Result<(TruncatedBasis, Vec<String>), ConvError> {
    let mut state = ConversionState::new(g1, d)?;
    let mut lines = Vec::new();
    while let Some(outcome) = state.step(g1)? {
        lines.push(state.describe(&outcome));
    }
    Ok((state.finish(), lines))
}
