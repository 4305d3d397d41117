//! Boolean relations and their affine (GF(2)) descriptions.
//!
//! Over `{0,1}` the minority operation is the coordinate-wise XOR of three
//! tuples, so a relation is minority-closed exactly when it is an affine
//! subspace. That gives the conversion to linear equations below.

use std::collections::BTreeSet;

use super::bits::BitRow;
use super::Gf2Error;

/// `triple_closure` is used up to this many tuples; larger relations use the
/// affine-hull test.
const TRIPLE_LOOP_MAX: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<BitRow>,
    scope: Vec<u32>,
}

/// One affine equation over scope positions: `<coeffs, x> = rhs (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineEquation {
    pub coeffs: BitRow,
    pub rhs: bool,
}

impl Relation {
    /// `scope[i]` is the (1-based) variable bound to tuple position `i`.
    pub fn new(scope: Vec<u32>, tuples: impl IntoIterator<Item = BitRow>) -> Result<Self, Gf2Error> {
        let arity = scope.len();
        if arity == 0 {
            return Err(Gf2Error::InvalidRelation("arity must be positive".into()));
        }
        let distinct: BTreeSet<u32> = scope.iter().copied().collect();
        if distinct.len() != arity {
            return Err(Gf2Error::InvalidRelation(format!(
                "scope variables must be distinct: {scope:?}"
            )));
        }
        let tuples: BTreeSet<BitRow> = tuples.into_iter().collect();
        if let Some(t) = tuples.iter().find(|t| t.len() != arity) {
            return Err(Gf2Error::InvalidRelation(format!(
                "tuple {t} has length {} but arity is {arity}",
                t.len()
            )));
        }
        Ok(Self {
            arity,
            tuples,
            scope,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn scope(&self) -> &[u32] {
        &self.scope
    }

    pub fn tuples(&self) -> &BTreeSet<BitRow> {
        &self.tuples
    }

    pub fn contains(&self, tuple: &BitRow) -> bool {
        self.tuples.contains(tuple)
    }
}

/// Closure under `(a, b, c) -> a ^ b ^ c` by checking every triple.
pub fn triple_closure(tuples: &BTreeSet<BitRow>) -> bool {
    for a in tuples {
        for b in tuples {
            let mut ab = a.clone();
            ab.xor_assign(b);
            for c in tuples {
                let mut abc = ab.clone();
                abc.xor_assign(c);
                if !tuples.contains(&abc) {
                    return false;
                }
            }
        }
    }
    true
}

/// Row-reduces `vectors` in place (pivot = lowest set position), returning
/// the independent rows with their pivot columns.
fn echelon(vectors: impl IntoIterator<Item = BitRow>) -> Vec<(usize, BitRow)> {
    let mut basis: Vec<(usize, BitRow)> = Vec::new();
    for mut v in vectors {
        for (p, b) in &basis {
            if v.get(*p) {
                v.xor_assign(b);
            }
        }
        if let Some(p) = v.first_one() {
            for (_, b) in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&v);
                }
            }
            basis.push((p, v));
        }
    }
    basis
}

/// Closure via the affine hull: `{v ^ v0}` must be a linear subspace, i.e.
/// `|R| = 2^rank`.
pub fn affine_closure(tuples: &BTreeSet<BitRow>) -> bool {
    let Some(v0) = tuples.iter().next() else {
        return true;
    };
    let diffs = tuples.iter().map(|v| {
        let mut d = v.clone();
        d.xor_assign(v0);
        d
    });
    let rank = echelon(diffs).len();
    rank < usize::BITS as usize && tuples.len() == 1usize << rank
}

pub fn check_minority_closed(relation: &Relation) -> Result<bool, Gf2Error> {
    if relation.tuples.is_empty() {
        return Err(Gf2Error::EmptyRelation);
    }
    Ok(if relation.tuples.len() <= TRIPLE_LOOP_MAX {
        triple_closure(&relation.tuples)
    } else {
        affine_closure(&relation.tuples)
    })
}

/// Affine equations over the relation's scope positions whose 0/1 solution
/// set is exactly the relation.
pub fn relation_to_affine(relation: &Relation) -> Result<Vec<AffineEquation>, Gf2Error> {
    if !check_minority_closed(relation)? {
        return Err(Gf2Error::NotMinorityClosed);
    }
    let v0 = relation.tuples.iter().next().expect("nonempty");
    let span = echelon(relation.tuples.iter().map(|v| {
        let mut d = v.clone();
        d.xor_assign(v0);
        d
    }));
    let pivots: BTreeSet<usize> = span.iter().map(|(p, _)| *p).collect();
    let mut equations = Vec::new();
    for free in (0..relation.arity).filter(|c| !pivots.contains(c)) {
        let mut y = BitRow::zeros(relation.arity);
        y.set(free, true);
        for (p, row) in &span {
            if row.get(free) {
                y.set(*p, true);
            }
        }
        let rhs = y.dot(v0);
        equations.push(AffineEquation { coeffs: y, rhs });
    }
    Ok(equations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(scope: &[u32], tuples: &[&str]) -> Relation {
        Relation::new(
            scope.to_vec(),
            tuples.iter().map(|t| BitRow::from_bitstring(t).unwrap()),
        )
        .unwrap()
    }

    fn all_points(k: usize) -> impl Iterator<Item = BitRow> {
        (0u32..1 << k).map(move |m| {
            BitRow::from_bools(&(0..k).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        })
    }

    fn solutions(eqs: &[AffineEquation], k: usize) -> BTreeSet<BitRow> {
        all_points(k)
            .filter(|x| eqs.iter().all(|e| e.coeffs.dot(x) == e.rhs))
            .collect()
    }

    #[test]
    fn worked_relations() {
        let r1 = rel(&[1, 2, 3], &["001", "100", "011", "110"]);
        let r2 = rel(&[1, 3], &["11", "01"]);
        assert!(check_minority_closed(&r1).unwrap());
        assert!(check_minority_closed(&r2).unwrap());
        assert!(!check_minority_closed(&rel(&[1, 2], &["00", "11", "01"])).unwrap());

        let e1 = relation_to_affine(&r1).unwrap();
        assert_eq!(e1.len(), 1);
        assert_eq!(e1[0].coeffs.to_string(), "101");
        assert!(e1[0].rhs);
        assert_eq!(solutions(&e1, 3), *r1.tuples());

        let e2 = relation_to_affine(&r2).unwrap();
        assert_eq!(e2, vec![AffineEquation { coeffs: BitRow::from_bitstring("01").unwrap(), rhs: true }]);

        let full = Relation::new(vec![1, 2, 3], all_points(3)).unwrap();
        assert!(relation_to_affine(&full).unwrap().is_empty());
    }

    #[test]
    fn error_paths() {
        let empty = Relation::new(vec![1], std::iter::empty()).unwrap();
        assert_eq!(check_minority_closed(&empty), Err(Gf2Error::EmptyRelation));
        assert_eq!(
            relation_to_affine(&rel(&[1, 2], &["00", "11", "01"])),
            Err(Gf2Error::NotMinorityClosed)
        );
        assert!(Relation::new(vec![1, 1], std::iter::empty()).is_err());
        assert!(Relation::new(vec![1, 2], [BitRow::from_bitstring("1").unwrap()]).is_err());
    }

    #[test]
    fn closure_tests_agree_exhaustively_for_small_arity() {
        // Every nonempty subset of {0,1}^k for k <= 3, plus a sample for k = 4.
        for k in 1..=3usize {
            let pts: Vec<BitRow> = all_points(k).collect();
            let n = pts.len();
            for mask in 1u32..(1 << n) {
                let set: BTreeSet<BitRow> =
                    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
                assert_eq!(triple_closure(&set), affine_closure(&set));
            }
        }
    }

    /// A random affine subspace of `{0,1}^k` given by a shift and generators.
    fn affine_subspace() -> impl Strategy<Value = (usize, BTreeSet<BitRow>)> {
        (1usize..=6).prop_flat_map(|k| {
            (
                Just(k),
                proptest::collection::vec(any::<bool>(), k),
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), k), 0..=k),
            )
                .prop_map(|(k, shift, gens)| {
                    let gens: Vec<BitRow> = gens.iter().map(|g| BitRow::from_bools(g)).collect();
                    let mut set = BTreeSet::new();
                    for mask in 0u32..(1 << gens.len()) {
                        let mut v = BitRow::from_bools(&shift);
                        for (i, g) in gens.iter().enumerate() {
                            if mask >> i & 1 == 1 {
                                v.xor_assign(g);
                            }
                        }
                        set.insert(v);
                    }
                    (k, set)
                })
        })
    }

    proptest! {
        #[test]
        fn affine_round_trip((k, set) in affine_subspace()) {
            let scope: Vec<u32> = (1..=k as u32).collect();
            let r = Relation::new(scope, set.clone()).unwrap();
            prop_assert!(check_minority_closed(&r).unwrap());
            let eqs = relation_to_affine(&r).unwrap();
            prop_assert_eq!(solutions(&eqs, k), set);
        }

        #[test]
        fn random_subsets_closure_agrees(k in 1usize..=4, picks in proptest::collection::vec(any::<u8>(), 1..12)) {
            let pts: Vec<BitRow> = all_points(k).collect();
            let set: BTreeSet<BitRow> = picks.iter().map(|&p| pts[p as usize % pts.len()].clone()).collect();
            prop_assert_eq!(triple_closure(&set), affine_closure(&set));
        }
    }
}
