use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{CountSeq, EvalError};
use crate::numkit::{factorial, factorize, gcd, Integer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicativity {
    Holds,
    /// First coprime pair `r < s` (ordered by `rs`, then `r`) where
    /// `|M[rs]| != (rs)!/(r! s!) |M[r]| |M[s]|`.
    Fails { r: u64, s: u64, expected: Integer, actual: Integer },
}

impl Multiplicativity {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Holds)
    }
}

/// Checks the count-level consequence of `M_{rs} = M_r ⊡ M_s` for all
/// coprime `r, s >= 2` with `rs` within the sequence.
pub fn is_multiplicative(counts: &CountSeq) -> Result<Multiplicativity, EvalError> {
    if counts.get(1).is_none_or(|c| !c.is_one()) {
        return Err(EvalError::Domain("a multiplicative species has exactly one structure on a singleton".into()));
    }
    let c = counts.counts();
    for n in 6..=counts.order() as u64 {
        for r in 2..n {
            let s = n / r;
            if r >= s {
                break;
            }
            if n % r != 0 || gcd(r, s) != 1 {
                continue;
            }
            let expected = factorial(n) / (factorial(r) * factorial(s)) * &c[r as usize] * &c[s as usize];
            let actual = c[n as usize].clone();
            if expected != actual {
                return Ok(Multiplicativity::Fails { r, s, expected, actual });
            }
        }
    }
    Ok(Multiplicativity::Holds)
}

/// Counts at prime powers `p^a`, keyed by `(p, a)`, for `2 <= p^a <= N`.
pub fn prime_power_counts(counts: &CountSeq) -> BTreeMap<(u64, u32), Integer> {
    (2..=counts.order() as u64)
        .filter_map(|n| match factorize(n).expect("n >= 2")[..] {
            [(p, a)] => Some(((p, a), counts[n as usize].clone())),
            _ => None,
        })
        .collect()
}

/// Rebuilds `|M[0]|, ..., |M[N]|` of a multiplicative species from its
/// prime-power counts: `|M[n]| = n!/Π(p^a)! · Π|M[p^a]|`.
pub fn euler_reconstruct(
    prime_powers: &BTreeMap<(u64, u32), Integer>,
    n: usize,
) -> Result<CountSeq, EvalError> {
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n as u64 {
        if m == 0 {
            out.push(Integer::zero());
            continue;
        }
        let mut value = factorial(m);
        for (p, a) in factorize(m).expect("m >= 1") {
            let q = p.pow(a);
            let c = prime_powers
                .get(&(p, a))
                .ok_or_else(|| EvalError::IncompleteData(format!("no count given for {p}^{a} = {q}")))?;
            value = value / factorial(q) * c;
        }
        out.push(value);
    }
    Ok(CountSeq::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::int;

    fn seq(n: usize, f: impl Fn(u64) -> Integer) -> CountSeq {
        CountSeq::new((0..=n as u64).map(|k| if k == 0 { int(0) } else { f(k) }).collect())
    }

    #[test]
    fn cycles_and_lists() {
        let c = seq(30, |k| factorial(k - 1));
        assert!(is_multiplicative(&c).unwrap().holds());
        assert_eq!(c[6], int(120));
        let l = seq(30, factorial);
        assert!(is_multiplicative(&l).unwrap().holds());
    }

    #[test]
    fn sets_fail_first_at_six() {
        let e = seq(30, |_| int(1));
        assert_eq!(
            is_multiplicative(&e).unwrap(),
            Multiplicativity::Fails { r: 2, s: 3, expected: int(60), actual: int(1) }
        );
    }

    #[test]
    fn reconstruct_round_trip() {
        let c = seq(30, |k| factorial(k - 1));
        let pp = prime_power_counts(&c);
        assert_eq!(euler_reconstruct(&pp, 30).unwrap(), c);
        let l = seq(12, factorial);
        assert_eq!(euler_reconstruct(&prime_power_counts(&l), 12).unwrap()[12], factorial(12));
    }

    #[test]
    fn missing_prime_power() {
        let mut pp = prime_power_counts(&seq(10, factorial));
        pp.remove(&(2, 3));
        assert!(matches!(euler_reconstruct(&pp, 10), Err(EvalError::IncompleteData(_))));
        assert!(euler_reconstruct(&pp, 7).is_ok());
    }

    #[test]
    fn singleton_precondition() {
        assert!(is_multiplicative(&seq(5, |_| int(2))).is_err());
    }
}
