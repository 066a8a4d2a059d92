use std::collections::BTreeMap;

use num_traits::Zero;

use super::partitions::{rects_on, Rect};
use super::perm::{all_permutations, cycle_type, representative, Perm};
use super::structure::{atoms, enumerate, transport, Bijection};
use super::{OracleError, MAX_RECT_LABELS};
use crate::numkit::{as_integer, aut, int_partitions, rat_int, IntPartition, Integer, Rational};
use crate::species::SpeciesExpr;
use crate::zindex::CycleIndex;

/// Number of structures on `{1..n}` fixed by transport along `sigma`
/// (a permutation of `0..n`).
pub fn fix_count(expr: &SpeciesExpr, sigma: &[usize]) -> Result<Integer, OracleError> {
    let all = enumerate(expr, &atoms(sigma.len()))?;
    count_fixed(expr, &all, sigma)
}

fn count_fixed(
    expr: &SpeciesExpr,
    all: &[super::Structure],
    sigma: &[usize],
) -> Result<Integer, OracleError> {
    let f = Bijection::from_perm(sigma);
    let mut fixed = 0u64;
    for s in all {
        if transport(expr, s, &f)? == *s {
            fixed += 1;
        }
    }
    Ok(Integer::from(fixed))
}

/// `fix_count` at a representative permutation of type `lambda`.
pub fn fix_by_type(expr: &SpeciesExpr, lambda: &IntPartition) -> Result<Integer, OracleError> {
    fix_count(expr, &representative(lambda))
}

/// `fix_by_type` for every cycle type of weight `n`, enumerating once.
pub fn fix_by_types(expr: &SpeciesExpr, n: usize) -> Result<BTreeMap<IntPartition, Integer>, OracleError> {
    let all = enumerate(expr, &atoms(n))?;
    int_partitions(n as u64)
        .into_iter()
        .map(|lambda| {
            let c = count_fixed(expr, &all, &representative(&lambda))?;
            Ok((lambda, c))
        })
        .collect()
}

/// Cycle index assembled from brute-force fix counts, weights `0..=bound`.
pub fn oracle_cycle_index(expr: &SpeciesExpr, bound: usize) -> Result<CycleIndex, OracleError> {
    let mut entries = Vec::new();
    for n in 0..=bound {
        for (lambda, c) in fix_by_types(expr, n)? {
            entries.push((lambda, rat_int(c)));
        }
    }
    Ok(CycleIndex::from_fix(bound as u64, entries))
}

/// Isomorphism classes on an `n`-set, by Burnside's lemma grouped by
/// cycle type: `Σ_λ fix[λ] / aut(λ)`.
pub fn orbit_type_count(expr: &SpeciesExpr, n: usize) -> Result<Integer, OracleError> {
    let total: Rational = fix_by_types(expr, n)?
        .into_iter()
        .map(|(lambda, c)| Rational::new(c, aut(&lambda)))
        .sum();
    Ok(as_integer(&total).expect("a Burnside average is an integer"))
}

/// A rectangle `(π, τ)` on `0..n` with permutations of its blocks
/// (indices into `π.blocks()` and `τ.blocks()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleDecomposition {
    pub rect: Rect,
    pub sigma1: Perm,
    pub sigma2: Perm,
}

impl TupleDecomposition {
    pub fn types(&self) -> (IntPartition, IntPartition) {
        (cycle_type(&self.sigma1), cycle_type(&self.sigma2))
    }
}

/// `σ_1 ⊠ σ_2`: the point in blocks `(i, j)` goes to the point in blocks
/// `(σ_1 i, σ_2 j)`.
pub fn box_permutation(rect: &Rect, sigma1: &[usize], sigma2: &[usize]) -> Perm {
    let n: usize = rect.pi.blocks().iter().map(|b| b.len()).sum();
    let mut cell = vec![vec![0usize; rect.tau.num_blocks()]; rect.pi.num_blocks()];
    let mut coords = vec![(0, 0); n];
    for (x, c) in coords.iter_mut().enumerate() {
        let i = rect.pi.block_of(&x).expect("covers");
        let j = rect.tau.block_of(&x).expect("covers");
        cell[i][j] = x;
        *c = (i, j);
    }
    coords.iter().map(|&(i, j)| cell[sigma1[i]][sigma2[j]]).collect()
}

/// All `(π, τ, σ_1, σ_2)` with `σ_1 ⊠ σ_2 = σ`.
pub fn tuple_decompositions(sigma: &[usize]) -> Result<Vec<TupleDecomposition>, OracleError> {
    let n = sigma.len();
    if n > MAX_RECT_LABELS {
        return Err(OracleError::ScaleLimit { what: "tuple decompositions", limit: MAX_RECT_LABELS, got: n });
    }
    let mut out = Vec::new();
    for rect in rects_on(&(0..n).collect::<Vec<_>>()) {
        let p1 = all_permutations(rect.pi.num_blocks());
        let p2 = all_permutations(rect.tau.num_blocks());
        for s1 in &p1 {
            for s2 in &p2 {
                if box_permutation(&rect, s1, s2) == sigma {
                    out.push(TupleDecomposition { rect: rect.clone(), sigma1: s1.clone(), sigma2: s2.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// Decompositions of `σ` grouped by the types of `σ_1` and `σ_2`.
pub fn decomposition_counts(sigma: &[usize]) -> Result<BTreeMap<(IntPartition, IntPartition), Integer>, OracleError> {
    let mut out: BTreeMap<_, Integer> = BTreeMap::new();
    for d in tuple_decompositions(sigma)? {
        *out.entry(d.types()).or_insert_with(Integer::zero) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::SpeciesExpr as Sp;
    use super::*;
    use crate::numkit::int;
    use crate::oracle::perm::identity;
    use crate::zindex::{box_coefficient, box_type};

    fn part(p: &[u64]) -> IntPartition {
        IntPartition::from_parts(p).unwrap()
    }

    #[test]
    fn fix_examples() {
        let r = Sp::aprod(Sp::Eplus, Sp::Eplus);
        assert_eq!(fix_by_type(&r, &IntPartition::ones(4)).unwrap(), int(8));
        assert_eq!(fix_by_type(&Sp::Splus, &part(&[2])).unwrap(), int(2));
        let e = Sp::aprod(Sp::C, Sp::Lplus);
        assert_eq!(fix_count(&e, &identity(4)).unwrap(), int(42));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_type_count(&Sp::E, 4).unwrap(), int(1));
        assert_eq!(orbit_type_count(&Sp::aprod(Sp::Lplus, Sp::Lplus), 4).unwrap(), int(3));
        assert_eq!(orbit_type_count(&Sp::aprod(Sp::Eplus, Sp::Eplus), 4).unwrap(), int(3));
    }

    #[test]
    fn decompositions() {
        assert_eq!(tuple_decompositions(&identity(1)).unwrap().len(), 1);
        let sigma = representative(&part(&[2, 2]));
        let counts = decomposition_counts(&sigma).unwrap();
        assert_eq!(counts[&(part(&[2]), part(&[2]))], int(2));
    }

    #[test]
    fn decompositions_match_coefficients() {
        for n in 1..=5u64 {
            for alpha in int_partitions(n) {
                let counts = decomposition_counts(&representative(&alpha)).unwrap();
                for ((beta, gamma), c) in counts {
                    assert_eq!(box_type(&beta, &gamma), alpha);
                    assert_eq!(rat_int(c), box_coefficient(&alpha, &beta, &gamma));
                }
            }
        }
    }
}
