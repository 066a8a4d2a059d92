use num_traits::{One, Signed, Zero};

use super::hct::hct_recursion;
use super::{CountSeq, EvalError, NodePath, SpeciesExpr};
use crate::numkit::{
    as_integer, factorial, falling, lyndon_count, rat_int, IntPartition, Integer,
    Rational,
};
use crate::series::{aprod_egf, compose, hadamard, maprod_egf, TruncSeries};
use crate::zindex::{
    cycle_fix, zi_add, zi_aprod, zi_hadamard, zi_index_atom, zi_mul, zi_plethysm, zi_point,
    zi_to_ogf, CycleIndex, IndexAtom,
};

fn violation(expr: &SpeciesExpr, path: &NodePath, reason: &str) -> EvalError {
    EvalError::PreconditionViolated {
        path: path.clone(),
        node: expr.to_string(),
        reason: reason.to_string(),
    }
}

/// Checks every emptiness precondition in the tree without computing
/// anything beyond constant terms.
pub fn validate(expr: &SpeciesExpr) -> Result<(), EvalError> {
    egf(expr, 0, &NodePath::root()).map(|_| ())
}

/// Exponential generating series of `expr` to order `n`.
pub fn eval_egf(expr: &SpeciesExpr, n: usize) -> Result<TruncSeries, EvalError> {
    validate(expr)?;
    egf(expr, n, &NodePath::root())
}

pub fn eval_counts(expr: &SpeciesExpr, n: usize) -> Result<CountSeq, EvalError> {
    let f = eval_egf(expr, n)?;
    counts_of(&f).map(CountSeq::new)
}

fn counts_of(f: &TruncSeries) -> Result<Vec<Integer>, EvalError> {
    f.counts()
        .iter()
        .enumerate()
        .map(|(n, c)| match as_integer(c) {
            Some(v) if !v.is_negative() => Ok(v),
            _ => Err(EvalError::Domain(format!("count at n={n} is not a nonnegative integer: {c}"))),
        })
        .collect()
}

fn egf(expr: &SpeciesExpr, order: usize, path: &NodePath) -> Result<TruncSeries, EvalError> {
    use SpeciesExpr::*;
    let child = |e: &SpeciesExpr, i: usize, ord: usize| egf(e, ord, &path.child(i));
    let ratn = |n: usize| Rational::from_integer(Integer::from(n));
    Ok(match expr {
        One => TruncSeries::one(order),
        X => TruncSeries::x(order),
        E => TruncSeries::exp_x(order),
        Eplus => TruncSeries::exp_x(order).without_constant(),
        Ek(k) => TruncSeries::exp_x(order).restrict(*k as usize),
        L => TruncSeries::geometric(order),
        Lplus => TruncSeries::geometric(order).without_constant(),
        C => TruncSeries::from_fn(order, |n| {
            if n == 0 { Rational::zero() } else { ratn(n).recip() }
        }),
        // S[n] has n! structures, same EGF as L
        S => TruncSeries::geometric(order),
        Splus => TruncSeries::geometric(order).without_constant(),
        XPow(k) => TruncSeries::monomial(*k as usize, Rational::one(), order),
        OnePlusXPow(k) => TruncSeries::from_fn(order, |n| {
            rat_int(falling(&Integer::from(*k), n as u64)) / rat_int(factorial(n as u64))
        }),
        Necklace(a) => TruncSeries::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                rat_int(num_traits::pow(Integer::from(*a), n)) / ratn(n)
            }
        }),
        AperiodicNecklace(a) => TruncSeries::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                rat_int(lyndon_count(n as u64, *a).expect("n >= 1"))
            }
        }),
        Derivative(a) => child(a, 0, order + 1)?.derivative(),
        Point(a) => child(a, 0, order)?.point(),
        NonEmpty(a) => child(a, 0, order)?.without_constant(),
        Restrict(a, k) => child(a, 0, order)?.restrict(*k as usize),
        Sum(a, b) => &child(a, 0, order)? + &child(b, 1, order)?,
        Prod(a, b) => &child(a, 0, order)? * &child(b, 1, order)?,
        Cartesian(a, b) => hadamard(&child(a, 0, order)?, &child(b, 1, order)?),
        Subst(a, b) => {
            let outer = child(a, 0, order)?;
            let inner = child(b, 1, order)?;
            if !inner.constant().is_zero() {
                return Err(violation(expr, path, "inner species has structures on the empty set"));
            }
            compose(&outer, &inner).expect("constant checked")
        }
        AProd(a, b) => {
            let f = child(a, 0, order)?;
            let g = child(b, 1, order)?;
            if !f.constant().is_zero() || !g.constant().is_zero() {
                return Err(violation(expr, path, "operands must have no structures on the empty set"));
            }
            aprod_egf(&f, &g).expect("constants checked")
        }
        MAProd(a, b) => maprod_egf(&child(a, 0, order)?, &child(b, 1, order)?, order),
        Hct(r) => {
            let rc = counts_of(&child(r, 0, order)?)?;
            TruncSeries::from_counts(&hct_recursion(&rc, order))
        }
    })
}

/// Cycle index series of `expr` up to total weight `n`. `maprod` and `hct`
/// nodes have no index-level evaluator.
pub fn eval_zi(expr: &SpeciesExpr, n: u64) -> Result<CycleIndex, EvalError> {
    validate(expr)?;
    zi(expr, n, &NodePath::root())
}

/// Isomorphism-type generating series, through the cycle index.
pub fn eval_ogf(expr: &SpeciesExpr, n: usize) -> Result<TruncSeries, EvalError> {
    Ok(zi_to_ogf(&eval_zi(expr, n as u64)?, n))
}

fn identity_type_index(bound: u64, value: impl Fn(u64) -> Integer) -> CycleIndex {
    CycleIndex::from_fix(bound, (0..=bound).map(|k| (IntPartition::ones(k), rat_int(value(k)))))
}

fn zi(expr: &SpeciesExpr, bound: u64, path: &NodePath) -> Result<CycleIndex, EvalError> {
    use SpeciesExpr::*;
    let child = |e: &SpeciesExpr, i: usize, b: u64| zi(e, b, &path.child(i));
    let atom = |a: IndexAtom| zi_index_atom(a, bound);
    Ok(match expr {
        One => atom(IndexAtom::One),
        X => atom(IndexAtom::X),
        E => atom(IndexAtom::E),
        Eplus => atom(IndexAtom::Eplus),
        Ek(k) => atom(IndexAtom::Ek(*k)),
        L => atom(IndexAtom::L),
        Lplus => atom(IndexAtom::Lplus),
        C => atom(IndexAtom::C),
        S => atom(IndexAtom::S),
        Splus => atom(IndexAtom::Splus),
        XPow(k) => CycleIndex::from_fix(bound, [(IntPartition::ones(*k), rat_int(factorial(*k)))]),
        OnePlusXPow(k) => identity_type_index(bound, |j| falling(&Integer::from(*k), j)),
        // colorings constant on the cycles of σ
        Necklace(a) => CycleIndex::from_fn(bound, |l| {
            rat_int(cycle_fix(l) * num_traits::pow(Integer::from(*a), l.num_parts() as usize))
        }),
        // a nontrivial automorphism would make the coloring periodic
        AperiodicNecklace(a) => identity_type_index(bound, |j| {
            if j == 0 {
                Integer::zero()
            } else {
                lyndon_count(j, *a).expect("j >= 1") * factorial(j)
            }
        }),
        Derivative(a) => child(a, 0, bound + 1)?.derivative(),
        Point(a) => zi_point(&child(a, 0, bound)?),
        NonEmpty(a) => child(a, 0, bound)?.nonempty(),
        Restrict(a, k) => child(a, 0, bound)?.restrict(*k),
        Sum(a, b) => zi_add(&child(a, 0, bound)?, &child(b, 1, bound)?),
        Prod(a, b) => zi_mul(&child(a, 0, bound)?, &child(b, 1, bound)?),
        Cartesian(a, b) => zi_hadamard(&child(a, 0, bound)?, &child(b, 1, bound)?),
        Subst(a, b) => zi_plethysm(&child(a, 0, bound)?, &child(b, 1, bound)?)
            .map_err(|_| violation(expr, path, "inner species has structures on the empty set"))?,
        AProd(a, b) => zi_aprod(&child(a, 0, bound)?, &child(b, 1, bound)?)
            .map_err(|_| violation(expr, path, "operands must have no structures on the empty set"))?,
        MAProd(..) | Hct(_) => {
            return Err(EvalError::UnsupportedForCycleIndex {
                path: path.clone(),
                node: expr.to_string(),
            })
        }
    })
}
