use num_traits::Zero;

use super::{eval_counts, eval_egf, EvalError, SpeciesExpr};
use crate::numkit::{lyndon_count, rat_int, rational_binomial, Integer, Rational};
use crate::series::{aprod_egf, exp_series, TruncSeries};

/// `Π_{n=1}^{N} (1 - x^n)^{-λ_n(α)}`, each factor expanded as a binomial
/// series.
pub fn cyclotomic_product(alpha: u64, order: usize) -> TruncSeries {
    let mut acc = TruncSeries::one(order);
    for n in 1..=order {
        let exponent = -rat_int(lyndon_count(n as u64, alpha).expect("n >= 1"));
        if exponent.is_zero() {
            continue;
        }
        let factor = TruncSeries::from_fn(order, |i| {
            if i % n != 0 {
                return Rational::zero();
            }
            let j = (i / n) as u64;
            let c = rational_binomial(&exponent, j);
            if j.is_multiple_of(2) { c } else { -c }
        });
        acc = &acc * &factor;
    }
    acc
}

/// Checks `C^{(α)} = C ⊡ C̄^{(α)}` on counts, and that `E(C ⊡ C̄^{(α)})`
/// and the product form both equal `1/(1 - αx)`, to order `N`.
pub fn cyclotomic_check(alpha: u64, order: usize) -> Result<bool, EvalError> {
    if alpha == 0 {
        return Err(EvalError::Domain("alphabet size must be at least 1".into()));
    }
    let lhs = eval_counts(&SpeciesExpr::aprod(SpeciesExpr::C, SpeciesExpr::AperiodicNecklace(alpha)), order)?;
    let rhs = eval_counts(&SpeciesExpr::Necklace(alpha), order)?;
    if lhs != rhs {
        return Ok(false);
    }
    let geometric = TruncSeries::from_fn(order, |n| rat_int(num_traits::pow(Integer::from(alpha), n)));
    let c = eval_egf(&SpeciesExpr::C, order)?;
    let aperiodic = eval_egf(&SpeciesExpr::AperiodicNecklace(alpha), order)?;
    let inner = aprod_egf(&c, &aperiodic).expect("both vanish at zero");
    let exp = exp_series(&inner).expect("zero constant");
    Ok(exp == geometric && cyclotomic_product(alpha, order) == geometric)
}
