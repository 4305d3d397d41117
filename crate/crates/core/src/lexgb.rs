//! The reduced lex Gröbner basis of an affine Boolean system, held lazily.
//!
//! After row reduction every pivot satisfies `x_p = f_p` where `f_p` is an XOR
//! of free variables plus a constant. The lex basis is
//! `{x_p - M(f_p)} ∪ {x_j^2 - x_j : j free}`, where `M(f)` is the multilinear
//! polynomial agreeing with `f` on 0/1 points. `M(f)` has `2^|f| - 1` terms, so
//! it is only expanded on request; everything else works on the XOR sets.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::gf2::RrefSystem;
use crate::polycore::{Monomial, Polynomial, Rational};

/// Default cap on `|vars|` for explicit expansion.
pub const DEFAULT_EXPANSION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexError {
    #[error("expanding a {size}-variable XOR exceeds the cap of {cap}")]
    ExpansionTooLarge { size: usize, cap: usize },
}

/// `(XOR of vars) ^ parity`, canonical: `vars` sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanTerm {
    vars: Vec<u32>,
    parity: bool,
}

impl BooleanTerm {
    /// Repeated variables cancel pairwise.
    pub fn new(vars: impl IntoIterator<Item = u32>, parity: bool) -> Self {
        let mut vs: Vec<u32> = vars.into_iter().collect();
        vs.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(vs.len());
        for v in vs {
            if out.last() == Some(&v) {
                out.pop();
            } else {
                out.push(v);
            }
        }
        Self { vars: out, parity }
    }

    pub fn constant(parity: bool) -> Self {
        Self {
            vars: Vec::new(),
            parity,
        }
    }

    pub fn variable(v: u32) -> Self {
        Self {
            vars: vec![v],
            parity: false,
        }
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn parity(&self) -> bool {
        self.parity
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// `self ^ 1`.
    pub fn complement(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            parity: !self.parity,
        }
    }

    pub fn xor(&self, other: &BooleanTerm) -> BooleanTerm {
        let (a, b) = (&self.vars, &other.vars);
        let mut vars = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    vars.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&a[i..]);
        vars.extend_from_slice(&b[j..]);
        BooleanTerm {
            vars,
            parity: self.parity ^ other.parity,
        }
    }

    pub fn evaluate(&self, is_set: impl Fn(u32) -> bool) -> bool {
        (self.vars.iter().filter(|&&v| is_set(v)).count() % 2 == 1) ^ self.parity
    }
}

impl fmt::Display for BooleanTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.vars.iter().map(|v| format!("x{v}")).collect();
        if self.parity || parts.is_empty() {
            parts.push(u8::from(self.parity).to_string());
        }
        write!(f, "({})", parts.join(" ^ "))
    }
}

impl fmt::Debug for BooleanTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reduced lex basis in structured form: `f_i` for every variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredBasisG1 {
    n: usize,
    /// `functions[i - 1]` is `f_i`; for free variables this is `x_i` itself.
    functions: Vec<BooleanTerm>,
    pivots: Vec<u32>,
    free_vars: Vec<u32>,
}

pub fn build_g1(system: &RrefSystem) -> StructuredBasisG1 {
    let mut functions: Vec<BooleanTerm> = (1..=system.n as u32).map(BooleanTerm::variable).collect();
    for (row, &p) in system.rows.iter().zip(&system.pivots) {
        let support = row.vars().filter(|&v| v != p);
        functions[p as usize - 1] = BooleanTerm::new(support, row.rhs);
    }
    StructuredBasisG1 {
        n: system.n,
        functions,
        pivots: system.pivots.clone(),
        free_vars: system.free_vars.clone(),
    }
}

impl StructuredBasisG1 {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn free_vars(&self) -> &[u32] {
        &self.free_vars
    }

    /// `f_v`: the pivot row's XOR for pivots, `x_v` for free variables.
    pub fn function(&self, v: u32) -> &BooleanTerm {
        &self.functions[v as usize - 1]
    }

    /// `(pivot, f_pivot)` pairs in pivot order.
    pub fn pivot_rows(&self) -> impl Iterator<Item = (u32, &BooleanTerm)> {
        self.pivots.iter().map(|&p| (p, self.function(p)))
    }

    /// XOR of `f_v` over the factors of `q`, with multiplicity.
    pub fn longest_term(&self, q: &Monomial) -> BooleanTerm {
        let mut acc = BooleanTerm::constant(false);
        for &(v, e) in q.factors() {
            if e % 2 == 1 {
                acc = acc.xor(self.function(v));
            }
        }
        acc
    }
}

/// The multilinear polynomial equal to `t` on every 0/1 point.
pub fn expand_m(t: &BooleanTerm, cap: usize) -> Result<Polynomial, LexError> {
    let k = t.vars.len();
    if k > cap {
        return Err(LexError::ExpansionTooLarge { size: k, cap });
    }
    let mut out = Polynomial::zero();
    if t.parity {
        out.add_term(Monomial::one(), Rational::one());
    }
    for mask in 1u64..(1u64 << k) {
        let size = mask.count_ones();
        // |S| = size: (-1)^(size-1) 2^(size-1), negated when parity is 1.
        let mut c = Rational::from_integer(num_bigint::BigInt::one() << (size - 1));
        if (size % 2 == 0) ^ t.parity {
            c = -c;
        }
        let vars: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| t.vars[i]).collect();
        out.add_term(Monomial::from_vars(&vars), c);
    }
    Ok(out)
}

/// The explicit basis `{x_p - M(f_p)} ∪ {x_j^2 - x_j}`: pivots first, then
/// free variables, each ascending.
pub fn g1_polynomials(basis: &StructuredBasisG1, cap: usize) -> Result<Vec<Polynomial>, LexError> {
    let mut out = Vec::with_capacity(basis.n);
    for (p, f) in basis.pivot_rows() {
        out.push(&Polynomial::var(p) - &expand_m(f, cap)?);
    }
    for &j in &basis.free_vars {
        let sq = Monomial::from_exponents([(j, 2)]);
        out.push(&Polynomial::from(sq) - &Polynomial::var(j));
    }
    Ok(out)
}

/// `scalar + sum(coeff * term)` with non-constant Boolean terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BooleanCombo {
    pub scalar: Rational,
    pub terms: BTreeMap<BooleanTerm, Rational>,
}

impl BooleanCombo {
    pub fn add(&mut self, t: BooleanTerm, c: Rational) {
        if c.is_zero() {
            return;
        }
        if t.is_constant() {
            if t.parity {
                self.scalar += c;
            }
            return;
        }
        match self.terms.entry(t) {
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

    pub fn evaluate(&self, is_set: impl Fn(u32) -> bool + Copy) -> Rational {
        let mut acc = self.scalar.clone();
        for (t, c) in &self.terms {
            if t.evaluate(is_set) {
                acc += c;
            }
        }
        acc
    }

    /// Sum of `c * M(t)` plus the scalar.
    pub fn to_polynomial(&self, cap: usize) -> Result<Polynomial, LexError> {
        let mut out = Polynomial::constant(self.scalar.clone());
        for (t, c) in &self.terms {
            out.add_scaled(&expand_m(t, cap)?, c, &Monomial::one());
        }
        Ok(out)
    }
}

/// Expands `f_{i1} * ... * f_{im}` (the normal form of `q` modulo G1) as
/// `2^-(m-1) * sum over nonempty subsets S of (-1)^(|S|-1) * XOR_{S} f`.
pub fn reduce_monomial(q: &Monomial, basis: &StructuredBasisG1) -> BooleanCombo {
    let factors: Vec<&BooleanTerm> = q
        .vars_with_multiplicity()
        .into_iter()
        .map(|v| basis.function(v))
        .collect();
    let m = factors.len();
    let mut combo = BooleanCombo::default();
    if m == 0 {
        combo.scalar = Rational::one();
        return combo;
    }
    let unit = Rational::new(
        num_bigint::BigInt::one(),
        num_bigint::BigInt::one() << (m - 1),
    );
    for mask in 1u64..(1u64 << m) {
        let mut t = BooleanTerm::constant(false);
        for (i, f) in factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                t = t.xor(f);
            }
        }
        let c = if mask.count_ones() % 2 == 1 {
            unit.clone()
        } else {
            -unit.clone()
        };
        combo.add(t, c);
    }
    combo
}
