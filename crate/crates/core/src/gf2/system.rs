use super::bits::BitRow;

/// One equation `sum(coeffs[i] * x_{i+1}) = rhs (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Row {
    pub coeffs: BitRow,
    pub rhs: bool,
}

impl Gf2Row {
    /// Builds a row over `n` variables from 1-based indices; repeated indices cancel.
    pub fn from_vars(n: usize, vars: &[u32], rhs: bool) -> Self {
        let mut coeffs = BitRow::zeros(n);
        for &v in vars {
            coeffs.flip(v as usize - 1);
        }
        Self { coeffs, rhs }
    }

    /// 1-based variables with nonzero coefficient.
    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.ones().map(|i| i as u32 + 1)
    }

    pub fn is_satisfied_by(&self, is_set: impl Fn(u32) -> bool) -> bool {
        self.vars().filter(|&v| is_set(v)).count() % 2 == usize::from(self.rhs)
    }
}

/// Affine system over GF(2) in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2System {
    pub n: usize,
    pub rows: Vec<Gf2Row>,
}

/// Reduced row echelon form. The pivot of each row is its lex-greatest
/// (lowest-index) variable; rows are ordered by pivot, `x1` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RrefSystem {
    pub n: usize,
    pub pivots: Vec<u32>,
    pub rows: Vec<Gf2Row>,
    pub free_vars: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RrefOutcome {
    Feasible(RrefSystem),
    /// Some combination of rows reads `0 = 1`.
    Infeasible,
}

impl RrefOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, RrefOutcome::Feasible(_))
    }

    pub fn feasible(self) -> Option<RrefSystem> {
        match self {
            RrefOutcome::Feasible(s) => Some(s),
            RrefOutcome::Infeasible => None,
        }
    }
}

impl Gf2System {
    pub fn new(n: usize) -> Self {
        Self { n, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Gf2Row) {
        debug_assert_eq!(row.coeffs.len(), self.n);
        self.rows.push(row);
    }

    pub fn is_satisfied_by(&self, is_set: impl Fn(u32) -> bool + Copy) -> bool {
        self.rows.iter().all(|r| r.is_satisfied_by(is_set))
    }
}

/// Gauss-Jordan elimination, columns taken in variable order.
pub fn rref(system: &Gf2System) -> RrefOutcome {
    let n = system.n;
    let mut rows = system.rows.clone();
    let mut pivots: Vec<u32> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i].coeffs.get(col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.coeffs.get(col) {
                row.coeffs.xor_assign(&pivot.coeffs);
                row.rhs ^= pivot.rhs;
            }
        }
        pivots.push(col as u32 + 1);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if rows[rank..].iter().any(|r| r.rhs) {
        return RrefOutcome::Infeasible;
    }
    rows.truncate(rank);
    let free_vars = (1..=n as u32)
        .filter(|v| pivots.binary_search(v).is_err())
        .collect();
    RrefOutcome::Feasible(RrefSystem {
        n,
        pivots,
        rows,
        free_vars,
    })
}

impl RrefSystem {
    pub fn to_system(&self) -> Gf2System {
        Gf2System {
            n: self.n,
            rows: self.rows.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn system(n: usize, rows: &[(&[u32], bool)]) -> Gf2System {
        Gf2System {
            n,
            rows: rows.iter().map(|(v, r)| Gf2Row::from_vars(n, v, *r)).collect(),
        }
    }

    fn solution_set(s: &Gf2System) -> Vec<u32> {
        (0u32..1 << s.n)
            .filter(|m| s.is_satisfied_by(|v| m >> (v - 1) & 1 == 1))
            .collect()
    }

    #[test]
    fn worked_example_pivots() {
        let s = system(5, &[(&[1, 3, 4], false), (&[2, 3, 5], true)]);
        let r = rref(&s).feasible().unwrap();
        assert_eq!(r.pivots, vec![1, 2]);
        assert_eq!(r.free_vars, vec![3, 4, 5]);
        assert_eq!(r.rows[0].vars().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert!(!r.rows[0].rhs);
        assert_eq!(r.rows[1].vars().collect::<Vec<_>>(), vec![2, 3, 5]);
        assert!(r.rows[1].rhs);
    }

    #[test]
    fn contradiction_is_infeasible() {
        let s = system(2, &[(&[1, 2], false), (&[1, 2], true)]);
        assert_eq!(rref(&s), RrefOutcome::Infeasible);
        assert_eq!(rref(&system(1, &[(&[], true)])), RrefOutcome::Infeasible);
    }

    #[test]
    fn back_substitution() {
        let s = system(3, &[(&[1, 2], false), (&[2, 3], false)]);
        let r = rref(&s).feasible().unwrap();
        assert_eq!(r.pivots, vec![1, 2]);
        assert_eq!(r.rows[0].vars().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(r.rows[1].vars().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(solution_set(&r.to_system()), solution_set(&s));
    }

    #[test]
    fn empty_and_redundant_rows() {
        let r = rref(&system(3, &[])).feasible().unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.free_vars, vec![1, 2, 3]);
        let r = rref(&system(2, &[(&[1], true), (&[1], true), (&[], false)])).feasible().unwrap();
        assert_eq!(r.pivots, vec![1]);
    }

    fn random_system() -> impl Strategy<Value = Gf2System> {
        (1usize..=12).prop_flat_map(|n| {
            proptest::collection::vec(
                (proptest::collection::vec(1..=n as u32, 0..5), any::<bool>()),
                0..8,
            )
            .prop_map(move |rows| Gf2System {
                n,
                rows: rows.iter().map(|(v, r)| Gf2Row::from_vars(n, v, *r)).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn rref_preserves_solutions_and_is_idempotent(s in random_system()) {
            match rref(&s) {
                RrefOutcome::Infeasible => prop_assert!(solution_set(&s).is_empty()),
                RrefOutcome::Feasible(r) => {
                    prop_assert_eq!(solution_set(&r.to_system()), solution_set(&s));
                    for (row, &p) in r.rows.iter().zip(&r.pivots) {
                        prop_assert_eq!(row.vars().next(), Some(p));
                        for q in &r.pivots {
                            prop_assert_eq!(row.coeffs.get(*q as usize - 1), *q == p);
                        }
                    }
                    prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
                    prop_assert_eq!(rref(&r.to_system()), RrefOutcome::Feasible(r));
                }
            }
        }
    }
}
