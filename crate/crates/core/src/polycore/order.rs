use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

/// Monomial orders with variable precedence `x1 > x2 > ... > xn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Pure lexicographic.
    Lex,
    /// Total degree first, ties broken lexicographically.
    Grlex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::Grlex => a.cmp_grlex(b),
        }
    }
}

pub fn compare(a: &Monomial, b: &Monomial, ord: MonomialOrder) -> Ordering {
    ord.compare(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec((1u32..6, 0u32..4), 0..5).prop_map(Monomial::from_exponents)
    }

    #[test]
    fn worked_comparisons() {
        let x1 = Monomial::var(1);
        let x2sq = Monomial::from_exponents([(2, 2)]);
        assert_eq!(compare(&x1, &x2sq, MonomialOrder::Lex), Ordering::Greater);
        assert_eq!(compare(&x1, &x2sq, MonomialOrder::Grlex), Ordering::Less);
        let x3x5 = Monomial::from_vars(&[3, 5]);
        let x2x4 = Monomial::from_vars(&[2, 4]);
        assert_eq!(compare(&x3x5, &x2x4, MonomialOrder::Grlex), Ordering::Less);
        assert_eq!(
            compare(&Monomial::var(2), &Monomial::var(2), MonomialOrder::Lex),
            Ordering::Equal
        );
    }

    proptest! {
        #[test]
        fn orders_are_total_multiplicative_with_one_minimal(a in mono(), b in mono(), c in mono()) {
            for ord in [MonomialOrder::Lex, MonomialOrder::Grlex] {
                let ab = ord.compare(&a, &b);
                prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(ord.compare(&Monomial::one(), &a), Ordering::Greater);
                if ab == Ordering::Less && ord.compare(&b, &c) == Ordering::Less {
                    prop_assert_eq!(ord.compare(&a, &c), Ordering::Less);
                }
            }
        }

        #[test]
        fn lex_matches_dense_vector_comparison(a in mono(), b in mono()) {
            let dense = |m: &Monomial| (1..6).map(|v| m.exponent(v)).collect::<Vec<_>>();
            prop_assert_eq!(MonomialOrder::Lex.compare(&a, &b), dense(&a).cmp(&dense(&b)));
        }
    }
}
