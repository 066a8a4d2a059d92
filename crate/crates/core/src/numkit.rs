//! Exact integer and rational arithmetic, plus the number-theoretic
//! functions used throughout the crate: divisor sums, Möbius, Bell numbers,
//! rectangle coefficients, Lyndon counts and integer partitions.
//!
//! Sizes (`n`, `d`, `k`) are machine integers; every value that can grow is
//! an arbitrary-precision [`Integer`] or [`Rational`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("domain error: {0}")]
    Domain(String),
}

fn domain(msg: impl Into<String>) -> NumError {
    NumError::Domain(msg.into())
}

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

/// `n!`.
pub fn factorial(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Falling factorial `(m)_n = m (m-1) ... (m-n+1)`; `(m)_0 = 1`.
pub fn falling(m: &Integer, n: u64) -> Integer {
    let mut acc = Integer::one();
    let mut term = m.clone();
    for _ in 0..n {
        acc *= &term;
        term -= 1;
    }
    acc
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>, NumError> {
    if n == 0 {
        return Err(domain("divisors of 0 are undefined"));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Divisors of a known-positive `n`. Internal callers guarantee `n >= 1`.
pub(crate) fn divisors_of(n: u64) -> Vec<u64> {
    debug_assert!(n >= 1);
    divisors(n).unwrap_or_default()
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>, NumError> {
    if n == 0 {
        return Err(domain("cannot factor 0"));
    }
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.len() == 1 && f[0].1 == 1).unwrap_or(false)
}

/// Sum of divisors.
pub fn sigma(n: u64) -> Result<Integer, NumError> {
    Ok(divisors(n)?.into_iter().map(Integer::from).sum())
}

/// Number of divisors.
pub fn tau(n: u64) -> Result<Integer, NumError> {
    Ok(Integer::from(divisors(n)?.len()))
}

pub fn mobius(n: u64) -> Result<Integer, NumError> {
    let f = factorize(n)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(Integer::zero());
    }
    Ok(if f.len() % 2 == 0 { int(1) } else { int(-1) })
}

pub fn euler_phi(n: u64) -> Result<Integer, NumError> {
    let f = factorize(n)?;
    let mut phi = n;
    for (p, _) in f {
        phi = phi / p * (p - 1);
    }
    Ok(Integer::from(phi))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: u64) -> Integer {
    let mut row = vec![Integer::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap_or_else(Integer::one));
        for v in &row {
            let x = next.last().cloned().unwrap_or_default() + v;
            next.push(x);
        }
        row = next;
    }
    row[0].clone()
}

/// Number of rectangles of height `d` on an `n`-set: `n! / (d! (n/d)!)`.
pub fn rect_coeff(n: u64, d: u64) -> Result<Integer, NumError> {
    if n == 0 || d == 0 || !n.is_multiple_of(d) {
        return Err(domain(format!("{d} does not divide {n}")));
    }
    Ok(factorial(n) / (factorial(d) * factorial(n / d)))
}

/// `n! / (d_1! ... d_k!)` for `d_1 ... d_k = n`.
pub fn multi_rect_coeff(n: u64, ds: &[u64]) -> Result<Integer, NumError> {
    let prod = ds.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d));
    if prod != Some(n) {
        return Err(domain(format!("product of {ds:?} is not {n}")));
    }
    let den: Integer = ds.iter().map(|&d| factorial(d)).product();
    Ok(factorial(n) / den)
}

/// All ordered factorizations `n = d_1 ... d_k` with every `d_i >= 1`.
pub fn ordered_factorizations(n: u64, k: usize) -> Vec<Vec<u64>> {
    if k == 0 {
        return if n == 1 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for d in divisors_of(n) {
        for mut rest in ordered_factorizations(n / d, k - 1) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

/// `|R^(k)[n]| = sum over d_1 ... d_k = n of n!/(d_1! ... d_k!)`.
pub fn k_rect_count(n: u64, k: usize) -> Result<Integer, NumError> {
    if n == 0 {
        return Err(domain("k-rectangles are counted on nonempty sets"));
    }
    ordered_factorizations(n, k)
        .iter()
        .map(|ds| multi_rect_coeff(n, ds))
        .sum()
}

/// Number of Lyndon words of length `n` over an `alpha`-letter alphabet.
pub fn lyndon_count(n: u64, alpha: u64) -> Result<Integer, NumError> {
    if n == 0 {
        return Err(domain("Lyndon words have positive length"));
    }
    let a = Integer::from(alpha);
    let mut total = Integer::zero();
    for d in divisors(n)? {
        let mu = mobius(d)?;
        if !mu.is_zero() {
            total += mu * num_traits::pow(a.clone(), (n / d) as usize);
        }
    }
    debug_assert!((&total % n).is_zero());
    Ok(total / n)
}

/// An integer partition stored by multiplicities: `mult[i - 1]` is the
/// number of parts equal to `i`. Trailing zeros are never stored.
///
/// The ordering groups partitions by weight, then lists larger parts first
/// (reverse lexicographic on the descending part list), so weight 3 reads
/// `(3), (2,1), (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPartition {
    mult: Vec<u64>,
}

impl IntPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_multiplicities(mut mult: Vec<u64>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Self { mult }
    }

    /// Parts in any order; zero parts are rejected.
    pub fn from_parts(parts: &[u64]) -> Result<Self, NumError> {
        let mut mult = Vec::new();
        for &p in parts {
            if p == 0 {
                return Err(domain("partition parts must be positive"));
            }
            let i = p as usize;
            if mult.len() < i {
                mult.resize(i, 0);
            }
            mult[i - 1] += 1;
        }
        Ok(Self::from_multiplicities(mult))
    }

    /// `(1^k)`, the cycle type of the identity on `k` points.
    pub fn ones(k: u64) -> Self {
        Self::from_multiplicities(vec![k])
    }

    /// `m_i`, the number of parts equal to `i` (`i >= 1`).
    pub fn multiplicity(&self, i: u64) -> u64 {
        if i == 0 {
            return 0;
        }
        self.mult.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    /// `(i, m_i)` for every `m_i > 0`, ascending `i`.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i as u64 + 1, m))
    }

    pub fn weight(&self) -> u64 {
        self.nonzero().map(|(i, m)| i * m).sum()
    }

    pub fn num_parts(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Parts in descending order.
    pub fn parts(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, &m) in self.mult.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i as u64 + 1, m as usize));
        }
        out
    }

    /// Multiplicity-wise sum (the cycle type of a disjoint union).
    pub fn union(&self, other: &Self) -> Self {
        let len = self.mult.len().max(other.mult.len());
        let mult = (0..len)
            .map(|i| self.mult.get(i).unwrap_or(&0) + other.mult.get(i).unwrap_or(&0))
            .collect();
        Self::from_multiplicities(mult)
    }

    /// The partition with every part multiplied by `k` (cycle type of `σ^k`
    /// style substitutions `x_i -> x_{ki}`).
    pub fn dilate(&self, k: u64) -> Self {
        let mut mult = vec![0; self.mult.len() * k as usize];
        for (i, m) in self.nonzero() {
            mult[(i * k) as usize - 1] += m;
        }
        Self::from_multiplicities(mult)
    }

    /// `self` with one part equal to 1 added.
    pub fn with_extra_fixed_point(&self) -> Self {
        let mut mult = self.mult.clone();
        if mult.is_empty() {
            mult.push(0);
        }
        mult[0] += 1;
        Self { mult }
    }
}

impl Ord for IntPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts().cmp(&self.parts()))
    }
}

impl PartialOrd for IntPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts())
    }
}

/// Renders as `1^a 2^b ...`, omitting zero multiplicities; the empty
/// partition renders as `[]`.
impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "[]");
        }
        let rendered: Vec<String> = self.nonzero().map(|(i, m)| format!("{i}^{m}")).collect();
        write!(f, "{}", rendered.join(" "))
    }
}

/// All partitions of `n`, in the canonical order of [`IntPartition`].
pub fn int_partitions(n: u64) -> Vec<IntPartition> {
    fn rec(remaining: u64, max_part: u64, prefix: &mut Vec<u64>, out: &mut Vec<IntPartition>) {
        if remaining == 0 {
            out.push(IntPartition::from_parts(prefix).expect("positive parts"));
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of every weight `0..=n`, canonical order.
pub fn int_partitions_up_to(n: u64) -> Vec<IntPartition> {
    (0..=n).flat_map(int_partitions).collect()
}

/// `aut(λ) = Π i^{m_i} m_i!`, the centralizer order of a permutation of
/// cycle type `λ`.
pub fn aut(lambda: &IntPartition) -> Integer {
    lambda
        .nonzero()
        .map(|(i, m)| num_traits::pow(Integer::from(i), m as usize) * factorial(m))
        .product()
}

/// Generalized binomial coefficient `C(a, j)` for rational `a`.
pub fn rational_binomial(a: &Rational, j: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (a - rat_int(i)) / rat_int(i + 1);
    }
    acc
}

/// True when the rational is an integer; returns it.
pub fn as_integer(q: &Rational) -> Option<Integer> {
    q.is_integer().then(|| q.to_integer())
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}
