//! Exact truncated power series in one variable.
//!
//! A [`TruncSeries`] stores raw coefficients `c_0 ..= c_N` (the coefficient
//! of `x^j` is `c_j`). When the series is read as an exponential generating
//! function, [`TruncSeries::count`] gives `n! c_n`. Binary operations on
//! series of different orders truncate to the smaller order.

mod dirichlet;
mod shift;

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::numkit::{divisors_of, factorial, rat_int, rect_coeff, Integer, Rational};

pub use dirichlet::{dirichlet_mul, dirichlet_of, DirichletCoeffs};
pub use shift::{
    from_shifted, from_shifted_truncated, maprod_egf_via_shift, maprod_shifted, to_shifted,
    ShiftedSeries,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("composition requires an inner series with zero constant term")]
    Composition,
    #[error("operation requires operands with zero constant term")]
    ZeroConstantRequired,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Panics if `coeffs` is empty; a series of order `N` has `N + 1` entries.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::from_coeffs((0..=order).map(f).collect())
    }

    /// Exponential generating function with the given counts `|F[n]|`.
    pub fn from_counts(counts: &[Integer]) -> Self {
        Self::from_coeffs(
            counts
                .iter()
                .enumerate()
                .map(|(n, c)| Rational::new(c.clone(), factorial(n as u64)))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, Rational::one(), order)
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(1, Rational::one(), order)
    }

    /// `c x^k`, truncated (so it is zero when `k > order`).
    pub fn monomial(k: usize, c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        Self { coeffs }
    }

    /// `1 / (1 - x)`.
    pub fn geometric(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::one())
    }

    /// `e^x`.
    pub fn exp_x(order: usize) -> Self {
        Self::from_fn(order, |n| Rational::new(Integer::one(), factorial(n as u64)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Raw coefficient of `x^n`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// `n! c_n`, the number of labelled structures when read as an EGF.
    pub fn count(&self, n: usize) -> Rational {
        self.coeff(n) * rat_int(factorial(n as u64))
    }

    pub fn counts(&self) -> Vec<Rational> {
        (0..=self.order()).map(|n| self.count(n)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_fn(order, |n| self.coeff(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// `F - F(0)`.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = Rational::zero();
        out
    }

    /// `F'(x)`; the result has order one less (order 0 stays at order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |n| self.coeff(n + 1) * rat_int(n as u64 + 1))
    }

    /// `x F'(x)`, the pointing operator on EGFs.
    pub fn point(&self) -> Self {
        Self::from_fn(self.order(), |n| self.coeff(n) * rat_int(n as u64))
    }

    /// Keeps only the coefficient of `x^k`.
    pub fn restrict(&self, k: usize) -> Self {
        Self::monomial(k, self.coeff(k), self.order())
    }

    /// `F(x^k)`.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1);
        Self::from_fn(self.order(), |n| {
            if n % k == 0 {
                self.coeff(n / k)
            } else {
                Rational::zero()
            }
        })
    }

    fn require_zero_constant(&self) -> Result<(), SeriesError> {
        if self.constant().is_zero() {
            Ok(())
        } else {
            Err(SeriesError::ZeroConstantRequired)
        }
    }

    /// `F^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries::from_fn(order, |n| &self.coeffs[n] + &rhs.coeffs[n])
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries::from_fn(order, |n| &self.coeffs[n] - &rhs.coeffs[n])
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Cauchy product.
impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }
}

pub fn add(f: &TruncSeries, g: &TruncSeries) -> TruncSeries {
    f + g
}

pub fn scale(f: &TruncSeries, q: &Rational) -> TruncSeries {
    f.scale(q)
}

pub fn mul(f: &TruncSeries, g: &TruncSeries) -> TruncSeries {
    f * g
}

/// `F(G(x))`, requiring `G(0) = 0`. Horner evaluation at order `min`.
pub fn compose(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    if !g.constant().is_zero() {
        return Err(SeriesError::Composition);
    }
    let order = f.order().min(g.order());
    let g = g.truncate(order);
    let mut acc = TruncSeries::monomial(0, f.coeff(order), order);
    for k in (0..order).rev() {
        acc = &acc * &g;
        acc.coeffs[0] += f.coeff(k);
    }
    Ok(acc)
}

/// Hadamard product in the EGF convention: counts multiply,
/// `c_n = a_n b_n n!` on raw coefficients.
pub fn hadamard(f: &TruncSeries, g: &TruncSeries) -> TruncSeries {
    let order = f.order().min(g.order());
    TruncSeries::from_fn(order, |n| f.coeff(n) * g.coeff(n) * rat_int(factorial(n as u64)))
}

/// Plain coefficientwise product `c_n = a_n b_n`.
pub fn hadamard_raw(f: &TruncSeries, g: &TruncSeries) -> TruncSeries {
    let order = f.order().min(g.order());
    TruncSeries::from_fn(order, |n| f.coeff(n) * g.coeff(n))
}

/// `exp(F)` for `F(0) = 0`, via `E' = F' E`.
pub fn exp_series(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    if !f.constant().is_zero() {
        return Err(SeriesError::Composition);
    }
    let order = f.order();
    let mut e = vec![Rational::zero(); order + 1];
    e[0] = Rational::one();
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=n {
            let fk = f.coeff(k);
            if !fk.is_zero() {
                acc += fk * rat_int(k as u64) * &e[n - k];
            }
        }
        e[n] = acc / rat_int(n as u64);
    }
    Ok(TruncSeries::from_coeffs(e))
}

/// `ln(1 + x)`.
pub fn log1p_series(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        if n == 0 {
            Rational::zero()
        } else if n % 2 == 1 {
            Rational::new(Integer::one(), Integer::from(n))
        } else {
            Rational::new(-Integer::one(), Integer::from(n))
        }
    })
}

/// `e^x - 1`.
pub fn expm1_series(order: usize) -> TruncSeries {
    TruncSeries::exp_x(order).without_constant()
}

/// `ln(F)` for `F(0) = 1`.
pub fn log_series(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    if !f.constant().is_one() {
        return Err(SeriesError::Composition);
    }
    compose(&log1p_series(f.order()), &f.without_constant())
}

/// Arithmetic product of EGFs: on counts,
/// `c_n = Σ_{d|n} n!/(d!(n/d)!) a_d b_{n/d}`.
pub fn aprod_egf(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    f.require_zero_constant()?;
    g.require_zero_constant()?;
    let order = f.order().min(g.order());
    let a = f.counts();
    let b = g.counts();
    Ok(TruncSeries::from_fn(order, |n| {
        if n == 0 {
            return Rational::zero();
        }
        let count: Rational = divisors_of(n as u64)
            .into_iter()
            .map(|d| {
                let e = n as u64 / d;
                rat_int(rect_coeff(n as u64, d).expect("d divides n"))
                    * &a[d as usize]
                    * &b[e as usize]
            })
            .sum();
        count / rat_int(factorial(n as u64))
    }))
}

/// Arithmetic product of ordinary series: bilinear extension of
/// `x^i ⊡ x^j = x^{ij}`.
pub fn aprod_ogf(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    f.require_zero_constant()?;
    g.require_zero_constant()?;
    let order = f.order().min(g.order());
    let mut out = vec![Rational::zero(); order + 1];
    for i in 1..=order {
        let a = f.coeff(i);
        if a.is_zero() {
            continue;
        }
        for j in 1..=order / i {
            out[i * j] += &a * g.coeff(j);
        }
    }
    Ok(TruncSeries::from_coeffs(out))
}

/// Lambert transform `Σ_n c_n x^n / (1 - x^n)` by divisor sums.
pub fn lambert(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    f.require_zero_constant()?;
    Ok(TruncSeries::from_fn(f.order(), |m| {
        if m == 0 {
            return Rational::zero();
        }
        divisors_of(m as u64).into_iter().map(|d| f.coeff(d as usize)).sum()
    }))
}

/// Modified arithmetic product, by definition:
/// `(F(e^x - 1) × G(e^x - 1)) ∘ ln(1 + x)`, computed to order
/// `min(order, F.order, G.order)`.
pub fn maprod_egf(f: &TruncSeries, g: &TruncSeries, order: usize) -> TruncSeries {
    let order = order.min(f.order()).min(g.order());
    let e = expm1_series(order);
    let fe = compose(&f.truncate(order), &e).expect("e^x - 1 has zero constant");
    let ge = compose(&g.truncate(order), &e).expect("e^x - 1 has zero constant");
    compose(&hadamard(&fe, &ge), &log1p_series(order)).expect("ln(1+x) has zero constant")
}
