use num_traits::Zero;

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::{Polynomial, Rational};
use super::PolyError;

/// Result of multivariate division: `f = sum(quotients[i] * g[i]) + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

fn leading_terms(
    divisors: &[Polynomial],
    ord: MonomialOrder,
) -> Result<Vec<(Monomial, Rational)>, PolyError> {
    divisors
        .iter()
        .map(|g| {
            g.leading_term(ord)
                .map_err(|_| PolyError::ZeroDivisorInBasis)
        })
        .collect()
}

/// Division core. At every step the first divisor (in sequence order) whose
/// leading term divides the current leading term is used.
fn run_division(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: MonomialOrder,
    mut quotients: Option<&mut Vec<Polynomial>>,
) -> Result<Polynomial, PolyError> {
    let leads = leading_terms(divisors, ord)?;
    let mut work = f.clone();
    let mut remainder = Polynomial::zero();
    while let Some((lm, lc)) = work.lead(ord).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (gm, gc))| lm.div(gm).map(|shift| (i, shift, gc)));
        match hit {
            Some((i, shift, gc)) => {
                let factor = &lc / gc;
                work.add_scaled(&divisors[i], &-factor.clone(), &shift);
                if let Some(q) = quotients.as_deref_mut() {
                    q[i].add_term(shift, factor);
                }
            }
            None => {
                work.add_term(lm.clone(), -lc.clone());
                remainder.add_term(lm, lc);
            }
        }
    }
    Ok(remainder)
}

pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: MonomialOrder,
) -> Result<Division, PolyError> {
    let mut quotients = vec![Polynomial::zero(); divisors.len()];
    let remainder = run_division(f, divisors, ord, Some(&mut quotients))?;
    Ok(Division {
        quotients,
        remainder,
    })
}

/// Remainder only; skips quotient bookkeeping.
pub fn remainder(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: MonomialOrder,
) -> Result<Polynomial, PolyError> {
    run_division(f, divisors, ord, None)
}

pub fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    ord: MonomialOrder,
) -> Result<Polynomial, PolyError> {
    let (fm, fc) = f.leading_term(ord)?;
    let (gm, gc) = g.leading_term(ord)?;
    let lcm = fm.lcm(&gm);
    let mut out = Polynomial::zero();
    out.add_scaled(f, &fc.recip(), &lcm.div(&fm).expect("lcm is a multiple"));
    out.add_scaled(g, &-gc.recip(), &lcm.div(&gm).expect("lcm is a multiple"));
    debug_assert!(out.coeff(&lcm).is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::polynomial::rat;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn textbook_example_depends_on_divisor_listing() {
        // x = x1, y = x2
        let f = p("x1*x2^2 - x2^3");
        let g1 = p("x1*x2 - 1");
        let g2 = p("x2^2 - 1");
        let d = divide(&f, &[g1.clone(), g2.clone()], MonomialOrder::Grlex).unwrap();
        assert_eq!(d.quotients, vec![p("x2"), p("-x2")]);
        assert!(d.remainder.is_zero());
        let d = divide(&f, &[g2.clone(), g1.clone()], MonomialOrder::Grlex).unwrap();
        assert_eq!(d.quotients, vec![p("x1 - x2"), Polynomial::zero()]);
        assert_eq!(d.remainder, p("x1 - x2"));
    }

    #[test]
    fn trivial_and_domain_divisions() {
        let d = divide(&Polynomial::zero(), &[p("x1")], MonomialOrder::Lex).unwrap();
        assert!(d.remainder.is_zero() && d.quotients[0].is_zero());
        let d = divide(&p("x5^2"), &[p("x5^2 - x5")], MonomialOrder::Grlex).unwrap();
        assert_eq!(d.remainder, p("x5"));
        assert_eq!(
            divide(&p("x1"), &[p("x1"), Polynomial::zero()], MonomialOrder::Lex),
            Err(PolyError::ZeroDivisorInBasis)
        );
    }

    #[test]
    fn s_polynomials() {
        let s = s_polynomial(&p("x1 - x2"), &p("x3^2 - x3"), MonomialOrder::Lex).unwrap();
        assert_eq!(s, p("-x2*x3^2 + x1*x3"));
        let f = p("x1*x2 + 3*x2 - 1/2");
        assert!(s_polynomial(&f, &f, MonomialOrder::Grlex).unwrap().is_zero());
        assert_eq!(
            s_polynomial(&f, &Polynomial::zero(), MonomialOrder::Grlex),
            Err(PolyError::ZeroPolynomial)
        );
        let g1 = [p("x1 - x2 - x3 + 2*x2*x3"), p("x2^2 - x2"), p("x3^2 - x3")];
        let s = s_polynomial(&g1[0], &g1[1], MonomialOrder::Lex).unwrap();
        assert!(remainder(&s, &g1, MonomialOrder::Lex).unwrap().is_zero());
    }

    fn poly(max_var: u32) -> impl Strategy<Value = Polynomial> {
        let term = (
            proptest::collection::vec((1..=max_var, 0u32..3), 0..3),
            -5i64..6,
            1i64..4,
        );
        proptest::collection::vec(term, 0..6).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter()
                    .map(|(e, n, d)| (Monomial::from_exponents(e), rat(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn division_identity_holds(
            f in poly(4),
            gs in proptest::collection::vec(poly(4), 1..4),
            lex in any::<bool>(),
        ) {
            let ord = if lex { MonomialOrder::Lex } else { MonomialOrder::Grlex };
            let gs: Vec<Polynomial> = gs.into_iter().filter(|g| !g.is_zero()).collect();
            prop_assume!(!gs.is_empty());
            let d = divide(&f, &gs, ord).unwrap();
            let mut rebuilt = d.remainder.clone();
            for (q, g) in d.quotients.iter().zip(&gs) {
                rebuilt = &rebuilt + &(q * g);
            }
            prop_assert_eq!(rebuilt, f.clone());
            let leads: Vec<Monomial> = gs.iter().map(|g| g.leading_monomial(ord).unwrap().clone()).collect();
            for m in d.remainder.monomials() {
                prop_assert!(leads.iter().all(|l| !l.divides(m)));
            }
            if let Some(fm) = f.leading_monomial(ord) {
                for (q, g) in d.quotients.iter().zip(&gs) {
                    let prod = q * g;
                    if let Some(pm) = prod.leading_monomial(ord) {
                        prop_assert_ne!(ord.compare(pm, fm), std::cmp::Ordering::Greater);
                    }
                }
            }
            prop_assert_eq!(remainder(&f, &gs, ord).unwrap(), d.remainder);
        }
    }
}
