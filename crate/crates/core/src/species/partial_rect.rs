use num_traits::Zero;

use super::CountSeq;
use crate::numkit::{as_integer, binomial, divisors_of, factorial, Integer};
use crate::series::{compose, hadamard, log1p_series, TruncSeries};

fn sign(e: i64) -> Integer {
    if e.rem_euclid(2) == 0 {
        Integer::from(1)
    } else {
        Integer::from(-1)
    }
}

/// Number of `m × n` (0,1)-matrices with exactly `r` ones and no zero row
/// or column:
/// `Σ_{l>=r} Σ_{d|l} (-1)^{m+n-d-l/d} C(m,d) C(n,l/d) C(l,r)`.
/// The `l = 0` term (present only when `r = 0`) collects the choices of
/// an empty row or column set.
pub fn mnr_formula(m: u64, n: u64, r: u64) -> Integer {
    let mut total = Integer::zero();
    if r == 0 {
        // Σ over (j, k) with jk = 0
        for j in 0..=m {
            for k in 0..=n {
                if j * k == 0 {
                    total += sign((m + n) as i64 - (j + k) as i64) * binomial(m, j) * binomial(n, k);
                }
            }
        }
    }
    for l in r.max(1)..=m * n {
        for d in divisors_of(l) {
            let e = l / d;
            if d > m || e > n {
                continue;
            }
            total += sign((m + n) as i64 - (d + e) as i64)
                * binomial(m, d)
                * binomial(n, e)
                * binomial(l, r);
        }
    }
    total
}

/// Partial rectangles on `r` labels whose partitions have `m` and `n`
/// blocks: `r! M(m,n,r) / (m! n!)`.
pub fn partial_rect_mnr(m: u64, n: u64, r: u64) -> Integer {
    let num = factorial(r) * mnr_formula(m, n, r);
    let den = factorial(m) * factorial(n);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `|P_R^{(k)}[n]|` for `n <= order`: counts of `E ⊡̃ ... ⊡̃ E` (`k` factors),
/// i.e. the `k`-th Hadamard power of the Bell series composed with
/// `ln(1+x)`.
pub fn pr_k_exact(k: u32, order: usize) -> CountSeq {
    assert!(k >= 1, "k-partial rectangles need k >= 1");
    let bell = compose(&TruncSeries::exp_x(order), &TruncSeries::exp_x(order).without_constant())
        .expect("e^x - 1 has zero constant");
    let mut power = bell.clone();
    for _ in 1..k {
        power = hadamard(&power, &bell);
    }
    let series = compose(&power, &log1p_series(order)).expect("ln(1+x) has zero constant");
    CountSeq::new(
        series
            .counts()
            .iter()
            .map(|c| as_integer(c).expect("counts of a species"))
            .collect(),
    )
}
