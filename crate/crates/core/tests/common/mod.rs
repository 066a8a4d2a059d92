//! Random expressions and series shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use specalc_core::numkit::{rat, Integer, Rational};
use specalc_core::series::TruncSeries;
use specalc_core::species::SpeciesExpr as S;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Any node type with arbitrary small parameters; not necessarily valid.
pub fn any_expr(rng: &mut impl Rng, depth: usize) -> S {
    if depth <= 1 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..14) {
            0 => S::One,
            1 => S::X,
            2 => S::E,
            3 => S::Eplus,
            4 => S::Ek(rng.gen_range(0..6)),
            5 => S::L,
            6 => S::Lplus,
            7 => S::C,
            8 => S::S,
            9 => S::Splus,
            10 => S::XPow(rng.gen_range(0..6)),
            11 => S::OnePlusXPow(rng.gen_range(0..6)),
            12 => S::Necklace(rng.gen_range(1..4)),
            _ => S::AperiodicNecklace(rng.gen_range(1..4)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..11) {
        0 => S::sum(any_expr(rng, d), any_expr(rng, d)),
        1 => S::prod(any_expr(rng, d), any_expr(rng, d)),
        2 => S::cart(any_expr(rng, d), any_expr(rng, d)),
        3 => S::subst(any_expr(rng, d), any_expr(rng, d)),
        4 => S::aprod(any_expr(rng, d), any_expr(rng, d)),
        5 => S::maprod(any_expr(rng, d), any_expr(rng, d)),
        6 => S::deriv(any_expr(rng, d)),
        7 => S::point(any_expr(rng, d)),
        8 => S::nonempty(any_expr(rng, d)),
        9 => S::restrict(any_expr(rng, d), rng.gen_range(0..6)),
        _ => S::hct(any_expr(rng, d)),
    }
}

fn atom(rng: &mut impl Rng) -> S {
    match rng.gen_range(0..13) {
        0 => S::One,
        1 => S::X,
        2 => S::E,
        3 => S::Eplus,
        4 => S::Ek(rng.gen_range(0..4)),
        5 => S::L,
        6 => S::Lplus,
        7 => S::C,
        8 => S::S,
        9 => S::Splus,
        10 => S::XPow(rng.gen_range(1..4)),
        11 => S::OnePlusXPow(rng.gen_range(0..4)),
        _ => S::Necklace(rng.gen_range(1..3)),
    }
}

/// A well-formed expression: substitution and arithmetic-product operands
/// are made empty-free.
pub fn valid_expr(rng: &mut impl Rng, depth: usize) -> S {
    valid_expr_with(rng, depth, true)
}

/// As `valid_expr`, optionally leaving out the nodes that have no
/// cycle-index evaluator.
pub fn valid_expr_with(rng: &mut impl Rng, depth: usize, allow_counts_only: bool) -> S {
    if depth <= 1 || rng.gen_bool(0.3) {
        return atom(rng);
    }
    let d = depth - 1;
    let sub = |rng: &mut _| valid_expr_with(rng, d, allow_counts_only);
    let ops = if allow_counts_only { 11 } else { 9 };
    match rng.gen_range(0..ops) {
        0 => S::sum(sub(rng), sub(rng)),
        1 => S::prod(sub(rng), sub(rng)),
        2 => S::cart(sub(rng), sub(rng)),
        3 => S::subst(sub(rng), S::nonempty(sub(rng))),
        4 => S::aprod(S::nonempty(sub(rng)), S::nonempty(sub(rng))),
        5 => S::deriv(sub(rng)),
        6 => S::point(sub(rng)),
        7 => S::nonempty(sub(rng)),
        8 => S::restrict(sub(rng), rng.gen_range(0..4)),
        9 => S::maprod(sub(rng), sub(rng)),
        _ => S::hct(sub(rng)),
    }
}

/// A valid expression with no structure on the empty set.
pub fn empty_free_expr(rng: &mut impl Rng, depth: usize) -> S {
    S::nonempty(valid_expr(rng, depth))
}

/// Rational with numerator and denominator bounded by 50 in absolute value.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-50..=50), rng.gen_range(1..=50))
}

pub fn random_series(rng: &mut impl Rng, order: usize, zero_constant: bool) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        if n == 0 && zero_constant {
            Rational::from_integer(Integer::from(0))
        } else {
            small_rational(rng)
        }
    })
}

/// A uniformly random permutation of `0..n`.
pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
