use std::cmp::Ordering;
use std::fmt;

use super::order::MonomialOrder;

/// A power product `x_{i1}^{e1} * ... * x_{ik}^{ek}`.
///
/// Stored sparsely as `(variable, exponent)` pairs sorted by variable index.
/// Variables are 1-based and zero exponents are never stored, so the empty
/// monomial is the constant `1`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// The monomial `x_var`.
    ///
    /// Panics if `var == 0`.
    pub fn var(var: u32) -> Self {
        assert!(var > 0, "variables are 1-based");
        Self {
            factors: vec![(var, 1)],
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order.
    /// Repeated variables have their exponents summed; zero exponents vanish.
    pub fn from_exponents<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut factors: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        for &(v, _) in &factors {
            assert!(v > 0, "variables are 1-based");
        }
        factors.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Self { factors: merged }
    }

    /// Product of the listed variables, repeats allowed: `[1, 1, 3]` is `x1^2*x3`.
    pub fn from_vars(vars: &[u32]) -> Self {
        Self::from_exponents(vars.iter().map(|&v| (v, 1)))
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: u32) -> u32 {
        match self.factors.binary_search_by_key(&var, |&(v, _)| v) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    /// Largest variable index occurring in the monomial.
    pub fn max_var(&self) -> Option<u32> {
        self.factors.last().map(|&(v, _)| v)
    }

    /// The variables with multiplicity, ascending: `x1^2*x3` gives `[1, 1, 3]`.
    pub fn vars_with_multiplicity(&self) -> Vec<u32> {
        self.factors
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
            .collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        let b = &other.factors;
        for &(v, e) in &self.factors {
            while j < b.len() && b[j].0 < v {
                j += 1;
            }
            if j == b.len() || b[j].0 != v || b[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / divisor`, or `None` when the division is not exact.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|&(v, e)| {
                let rest = e - divisor.exponent(v);
                (rest > 0).then_some((v, rest))
            })
            .collect();
        Some(Monomial { factors })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1.max(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// No variable in common.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Every divisor of `self` other than `self` itself (including `1`).
    pub fn proper_divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        for &(v, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for m in &out {
                for k in 0..=e {
                    let mut f = m.factors.clone();
                    if k > 0 {
                        f.push((v, k));
                    }
                    next.push(Monomial { factors: f });
                }
            }
            out = next;
        }
        out.pop();
        out
    }

    /// Lex comparison with `x1 > x2 > ... > xn`: the leftmost nonzero entry of
    /// the exponent difference decides.
    pub(crate) fn cmp_lex(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, ea) = a[i];
            let (vb, eb) = b[j];
            match va.cmp(&vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        match (i < a.len(), j < b.len()) {
            (true, _) => Ordering::Greater,
            (_, true) => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    pub(crate) fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.cmp_lex(other))
    }
}

/// Monomials sort by grlex; this is the order used for polynomial term storage.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials in the given variables of exactly total degree `degree`,
/// in ascending order under `ord`.
pub fn monomials_of_degree(num_vars: u32, degree: u32, ord: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(degree as usize);
    fn rec(start: u32, n: u32, left: u32, stack: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_vars(stack));
            return;
        }
        for v in start..=n {
            stack.push(v);
            rec(v, n, left - 1, stack, out);
            stack.pop();
        }
    }
    if degree == 0 {
        return vec![Monomial::one()];
    }
    if num_vars > 0 {
        rec(1, num_vars, degree, &mut stack, &mut out);
    }
    out.sort_by(|a, b| ord.compare(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_exponents(pairs.iter().copied())
    }

    #[test]
    fn construction_drops_zero_exponents_and_merges() {
        let a = Monomial::from_exponents([(3, 1), (1, 0), (3, 2), (2, 1)]);
        assert_eq!(a.factors(), &[(2, 1), (3, 3)]);
        assert_eq!(a.degree(), 4);
        assert!(Monomial::from_exponents([(4, 0)]).is_one());
        assert_eq!(Monomial::from_vars(&[5, 1, 5]).to_string(), "x1*x5^2");
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[(1, 1), (3, 2)]);
        let b = m(&[(1, 2), (2, 1), (3, 2)]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a).unwrap(), m(&[(1, 1), (2, 1)]));
        assert_eq!(a.lcm(&m(&[(2, 3)])), m(&[(1, 1), (2, 3), (3, 2)]));
        assert!(a.is_coprime(&m(&[(2, 1), (4, 1)])));
        assert!(!a.is_coprime(&m(&[(3, 1)])));
        assert!(Monomial::one().divides(&a));
    }

    #[test]
    fn proper_divisors_of_square_free_and_powers() {
        let q = m(&[(1, 1), (2, 1)]);
        let mut d = q.proper_divisors();
        d.sort();
        assert_eq!(d, vec![Monomial::one(), Monomial::var(2), Monomial::var(1)]);
        assert_eq!(m(&[(1, 2), (2, 1)]).proper_divisors().len(), 5);
        assert!(Monomial::one().proper_divisors().is_empty());
    }

    #[test]
    fn degree_two_monomials_in_ascending_grlex() {
        let q = monomials_of_degree(5, 2, MonomialOrder::Grlex);
        let names: Vec<String> = q.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            names,
            [
                "x5^2", "x4*x5", "x4^2", "x3*x5", "x3*x4", "x3^2", "x2*x5", "x2*x4", "x2*x3",
                "x2^2", "x1*x5", "x1*x4", "x1*x3", "x1*x2", "x1^2"
            ]
        );
    }
}
