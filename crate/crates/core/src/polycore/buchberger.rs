//! Reference Buchberger completion and basis inter-reduction.
//!
//! Meant as an oracle for small ideals: pairs are processed with the normal
//! strategy (smallest lcm first), S-polynomials are reduced by the current
//! basis in insertion order, and pairs with coprime leading monomials are
//! skipped. Nothing else is pruned.

use super::division::{remainder, s_polynomial};
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::Polynomial;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerLimits {
    /// Largest admissible term count of any basis element.
    pub max_terms: usize,
    /// Largest admissible number of basis elements.
    pub max_basis: usize,
}

impl Default for BuchbergerLimits {
    fn default() -> Self {
        Self {
            max_terms: 1_000_000,
            max_basis: 10_000,
        }
    }
}

pub fn buchberger(
    generators: &[Polynomial],
    ord: MonomialOrder,
) -> Result<Vec<Polynomial>, PolyError> {
    buchberger_with_limits(generators, ord, BuchbergerLimits::default())
}

pub fn buchberger_with_limits(
    generators: &[Polynomial],
    ord: MonomialOrder,
    limits: BuchbergerLimits,
) -> Result<Vec<Polynomial>, PolyError> {
    let mut basis: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic(ord))
        .collect();
    if basis.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(ord).expect("nonzero").clone())
        .collect();
    if leads.iter().any(Monomial::is_one) {
        return Ok(vec![Polynomial::one()]);
    }
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j, leads[i].lcm(&leads[j])));
        }
    }
    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                ord.compare(&pairs[a].2, &pairs[b].2)
                    .then((pairs[a].0, pairs[a].1).cmp(&(pairs[b].0, pairs[b].1)))
            })
            .expect("nonempty");
        let (i, j, _) = pairs.swap_remove(pick);
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord)?;
        let h = remainder(&s, &basis, ord)?;
        if h.is_zero() {
            continue;
        }
        let h = h.monic(ord);
        let hm = h.leading_monomial(ord).expect("nonzero").clone();
        if hm.is_one() {
            return Ok(vec![Polynomial::one()]);
        }
        if h.len() > limits.max_terms {
            return Err(PolyError::ResourceLimit(format!(
                "basis element with {} terms exceeds cap {}",
                h.len(),
                limits.max_terms
            )));
        }
        if basis.len() + 1 > limits.max_basis {
            return Err(PolyError::ResourceLimit(format!(
                "basis size exceeds cap {}",
                limits.max_basis
            )));
        }
        let k = basis.len();
        for (i, lead) in leads.iter().enumerate() {
            pairs.push((i, k, lead.lcm(&hm)));
        }
        basis.push(h);
        leads.push(hm);
    }
    Ok(basis)
}

/// Turns a Gröbner basis into the reduced one: monic, minimal, and
/// inter-reduced. Output is sorted ascending by leading monomial.
pub fn reduce_basis(basis: &[Polynomial], ord: MonomialOrder) -> Vec<Polynomial> {
    let mut items: Vec<Polynomial> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic(ord))
        .collect();
    items.sort_by(|a, b| {
        ord.compare(
            a.leading_monomial(ord).expect("nonzero"),
            b.leading_monomial(ord).expect("nonzero"),
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in items {
        let lm = g.leading_monomial(ord).expect("nonzero");
        let covered = minimal
            .iter()
            .any(|k| k.leading_monomial(ord).expect("nonzero").divides(lm));
        if !covered {
            minimal.push(g);
        }
    }
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g.clone())
            .collect();
        minimal[k] = remainder(&minimal[k], &others, ord).expect("nonzero divisors");
    }
    minimal
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial], ord: MonomialOrder) -> Result<bool, PolyError> {
    for j in 0..basis.len() {
        for i in 0..j {
            let s = s_polynomial(&basis[i], &basis[j], ord)?;
            if !remainder(&s, basis, ord)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(items: &[&str]) -> Vec<Polynomial> {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn linear_chain() {
        let g = buchberger(&ps(&["x1 - x2", "x2 - x3"]), MonomialOrder::Lex).unwrap();
        assert!(is_groebner_basis(&g, MonomialOrder::Lex).unwrap());
        assert_eq!(reduce_basis(&g, MonomialOrder::Lex), ps(&["x2 - x3", "x1 - x3"]));
    }

    #[test]
    fn unit_ideal() {
        assert_eq!(buchberger(&ps(&["1"]), MonomialOrder::Grlex).unwrap(), ps(&["1"]));
        let g = buchberger(&ps(&["x1 - 1", "x1"]), MonomialOrder::Grlex).unwrap();
        assert_eq!(reduce_basis(&g, MonomialOrder::Grlex), ps(&["1"]));
        assert_eq!(
            buchberger(&[Polynomial::zero()], MonomialOrder::Lex),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn reduction_is_independent_of_listing() {
        let a = ps(&["x1 - x3", "x2 - x3", "x1 - x2"]);
        let expected = ps(&["x2 - x3", "x1 - x3"]);
        let mut perm = a.clone();
        for _ in 0..3 {
            perm.rotate_left(1);
            assert_eq!(reduce_basis(&perm, MonomialOrder::Lex), expected);
        }
        assert_eq!(reduce_basis(&ps(&["2*x1 - 2"]), MonomialOrder::Lex), ps(&["x1 - 1"]));
    }

    #[test]
    fn circle_and_line_grlex() {
        let g = buchberger(&ps(&["x1^2 + x2^2 - 1", "x1 - x2"]), MonomialOrder::Grlex).unwrap();
        assert!(is_groebner_basis(&g, MonomialOrder::Grlex).unwrap());
        let r = reduce_basis(&g, MonomialOrder::Grlex);
        assert_eq!(r, ps(&["x1 - x2", "x2^2 - 1/2"]));
    }

    #[test]
    fn limits_are_enforced() {
        let limits = BuchbergerLimits {
            max_terms: 1_000_000,
            max_basis: 2,
        };
        let err = buchberger_with_limits(&ps(&["x1^2 - x2", "x1*x2 - x1"]), MonomialOrder::Grlex, limits);
        assert!(matches!(err, Err(PolyError::ResourceLimit(_))));
    }
}
