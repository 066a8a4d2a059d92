use num_traits::{One, Zero};

use super::{eval_counts, CountSeq, EvalError, SpeciesExpr};
use crate::numkit::{divisors_of, rect_coeff, Integer};

/// `|H[1]| = 1`, `|H[n+1]| = Σ_{d|n} {n d} |R[d]| |H[n/d]|`, for `n` up to
/// `order`; `r_counts` must cover `0..order`.
pub fn hct_recursion(r_counts: &[Integer], order: usize) -> Vec<Integer> {
    let mut h = vec![Integer::zero(); order + 1];
    if order >= 1 {
        h[1] = Integer::one();
    }
    for m in 1..order {
        h[m + 1] = divisors_of(m as u64)
            .into_iter()
            .map(|d| {
                let (d, e) = (d as usize, m / d as usize);
                rect_coeff(m as u64, d as u64).expect("d divides m") * &r_counts[d] * &h[e]
            })
            .sum();
    }
    h
}

/// Counts of hyper-cloned rooted trees enriched by `r`.
pub fn hct_counts(r: &SpeciesExpr, n: usize) -> Result<CountSeq, EvalError> {
    let rc = eval_counts(r, n)?;
    Ok(CountSeq::new(hct_recursion(rc.counts(), n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::int;

    #[test]
    fn first_values_for_sets() {
        let h = hct_counts(&SpeciesExpr::E, 10).unwrap();
        // n = 10: 3554 + 10080 * |H[3]| + 1
        let want = [0, 1, 1, 2, 3, 10, 11, 192, 193, 3554, 23715];
        assert_eq!(h.counts(), &want.map(int)[..]);
    }

    #[test]
    fn linear_orders() {
        let h = hct_counts(&SpeciesExpr::L, 8).unwrap();
        assert_eq!(h.counts(), &[0, 1, 1, 3, 9, 45, 165, 1605, 6645].map(int)[..]);
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(hct_recursion(&[int(1)], 0), vec![int(0)]);
        assert_eq!(hct_recursion(&[int(1), int(1)], 1), vec![int(0), int(1)]);
    }
}
