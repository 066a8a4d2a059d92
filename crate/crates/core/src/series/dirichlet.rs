use num_traits::{One, Zero};

use super::{SeriesError, TruncSeries};
use crate::numkit::{divisors_of, Rational};

/// Coefficients of a modified Dirichlet series `Σ_{n>=1} t_n n^{-s}`, where
/// for a species `t_n = |M[n]| / n!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCoeffs {
    terms: Vec<Rational>,
}

impl DirichletCoeffs {
    /// `terms[0]` is the coefficient of `1^{-s}`.
    pub fn new(terms: Vec<Rational>) -> Self {
        Self { terms }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `n^{-s}`, `n >= 1`; zero beyond the order.
    pub fn term(&self, n: usize) -> Rational {
        if n == 0 {
            return Rational::zero();
        }
        self.terms.get(n - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    /// The unit `δ_1`.
    pub fn unit(order: usize) -> Self {
        Self::new((1..=order).map(|n| if n == 1 { Rational::one() } else { Rational::zero() }).collect())
    }
}

impl std::ops::Add for &DirichletCoeffs {
    type Output = DirichletCoeffs;
    fn add(self, rhs: &DirichletCoeffs) -> DirichletCoeffs {
        let order = self.order().min(rhs.order());
        DirichletCoeffs::new((1..=order).map(|n| self.term(n) + rhs.term(n)).collect())
    }
}

/// Dirichlet coefficients of an EGF with zero constant term: `t_n = c_n`.
pub fn dirichlet_of(f: &TruncSeries) -> Result<DirichletCoeffs, SeriesError> {
    if !f.constant().is_zero() {
        return Err(SeriesError::ZeroConstantRequired);
    }
    Ok(DirichletCoeffs::new(f.coeffs()[1..].to_vec()))
}

/// Dirichlet convolution `(A·B)_n = Σ_{d|n} A_d B_{n/d}`.
pub fn dirichlet_mul(a: &DirichletCoeffs, b: &DirichletCoeffs) -> DirichletCoeffs {
    let order = a.order().min(b.order());
    DirichletCoeffs::new(
        (1..=order)
            .map(|n| {
                divisors_of(n as u64)
                    .into_iter()
                    .map(|d| a.term(d as usize) * b.term(n / d as usize))
                    .sum()
            })
            .collect(),
    )
}
